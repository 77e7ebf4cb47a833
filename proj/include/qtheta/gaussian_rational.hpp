#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

namespace qtheta {

/// Exact element of Q(i). Components are GMP rationals, kept canonical
/// (positive denominators, reduced) by construction.
struct GaussianRational {
    mpq_class re;
    mpq_class im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();
        im.canonicalize();
    }

    static GaussianRational integer(long n) { return {mpq_class(n), mpq_class(0)}; }

    static GaussianRational ratio(long num, long den) {
        mpq_class r(num, den);
        r.canonicalize();
        return {std::move(r), mpq_class(0)};
    }

    /// i^n for any integer n.
    static GaussianRational i_pow(long n) {
        switch (((n % 4) + 4) % 4) {
            case 0: return {mpq_class(1), mpq_class(0)};
            case 1: return {mpq_class(0), mpq_class(1)};
            case 2: return {mpq_class(-1), mpq_class(0)};
            default: return {mpq_class(0), mpq_class(-1)};
        }
    }

    bool is_zero() const { return re == 0 && im == 0; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    std::string str() const {
        if (im == 0) return re.get_str();
        std::string s = re.get_str();
        s += (im < 0) ? "-" : "+";
        mpq_class ai = abs(im);
        s += ai.get_str();
        s += "i";
        return s;
    }
};

} // namespace qtheta
