#pragma once

#include <complex>
#include <string>
#include <utility>

#include "qtheta/real.hpp"

namespace qtheta {

/// Complex number over Real. Rectangular form; precision follows components.
struct Cplx {
    Real re;
    Real im;

    explicit Cplx(mpfr_prec_t bits) : re{bits}, im{bits} {}
    Cplx(Real r, Real i) : re{std::move(r)}, im{std::move(i)} {}

    static Cplx of(double r, double i, mpfr_prec_t bits) {
        return {Real::of(r, bits), Real::of(i, bits)};
    }
    static Cplx of(long n, mpfr_prec_t bits) {
        return {Real::of(n, bits), Real::of(0L, bits)};
    }
    static Cplx of(const std::complex<double>& z, mpfr_prec_t bits) {
        return of(z.real(), z.imag(), bits);
    }
    static Cplx real_axis(Real r) {
        Real z{r.precision()};
        return {std::move(r), std::move(z)};
    }

    mpfr_prec_t precision() const {
        return re.precision() > im.precision() ? re.precision() : im.precision();
    }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }

    std::complex<double> to_complex_double() const {
        return {re.to_double(), im.to_double()};
    }

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }

    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator*(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Cplx operator*(const Real& s, const Cplx& a) { return a * s; }
    friend Cplx operator*(const Cplx& a, long n) { return {a.re * n, a.im * n}; }

    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }
    friend Cplx operator/(const Cplx& a, long n) { return {a.re / n, a.im / n}; }

    Cplx& operator+=(const Cplx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cplx& operator*=(const Cplx& o) { return *this = *this * o; }

    friend Cplx conj(const Cplx& a) { return {a.re, -a.im}; }

    /// Multiplication by i, exact (no rounding).
    friend Cplx mul_i(const Cplx& a) { return {-a.im, a.re}; }
    friend Cplx div_i(const Cplx& a) { return {a.im, -a.re}; }

    friend Real abs(const Cplx& a) { return hypot(a.re, a.im); }
    friend Real norm(const Cplx& a) { return a.re * a.re + a.im * a.im; }

    friend Cplx exp(const Cplx& a) {
        Real m = exp(a.re);
        auto [s, c] = sin_cos(a.im);
        return {m * c, m * s};
    }

    friend Cplx sin(const Cplx& a) {
        auto [s, c] = sin_cos(a.re);
        auto [sh, ch] = sinh_cosh(a.im);
        return {s * ch, c * sh};
    }

    friend Cplx cos(const Cplx& a) {
        auto [s, c] = sin_cos(a.re);
        auto [sh, ch] = sinh_cosh(a.im);
        return {c * ch, -(s * sh)};
    }

    /// Integer power by binary exponentiation; negative exponents via 1/z^|k|.
    friend Cplx pow_int(const Cplx& a, long k) {
        mpfr_prec_t bits = a.precision();
        if (k == 0) return Cplx::of(1L, bits);
        bool inv = k < 0;
        unsigned long n = inv ? static_cast<unsigned long>(-(k + 1)) + 1UL
                              : static_cast<unsigned long>(k);
        Cplx base = a;
        Cplx acc = Cplx::of(1L, bits);
        while (n > 0) {
            if (n & 1UL) acc = acc * base;
            n >>= 1UL;
            if (n > 0) base = base * base;
        }
        if (inv) acc = Cplx::of(1L, bits) / acc;
        return acc;
    }

    std::string str(int digits) const {
        std::string s = re.str(digits);
        s += im.is_negative() ? " - " : " + ";
        s += abs(im).str(digits);
        s += "i";
        return s;
    }
};

} // namespace qtheta
