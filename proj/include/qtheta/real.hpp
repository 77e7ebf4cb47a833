#pragma once

#include <mpfr.h>

#include <cstdio>
#include <memory>
#include <string>
#include <utility>

#include "qtheta/errors.hpp"

namespace qtheta {

/// Arbitrary-precision real number backed by MPFR.
///
/// Every value carries its own mantissa precision in bits; binary operations
/// produce results at the larger of the two operand precisions. There is no
/// global precision state anywhere in the library: callers choose bits when
/// they create leaves and precision propagates from there.
class Real {
public:
    explicit Real(mpfr_prec_t bits) {
        mpfr_init2(v_, bits);
        mpfr_set_zero(v_, 1);
    }

    Real(const Real& o) {
        mpfr_init2(v_, o.precision());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }

    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, o.precision()); // drops the old value
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    ~Real() { mpfr_clear(v_); }

    static Real of(long n, mpfr_prec_t bits) {
        Real r{bits};
        mpfr_set_si(r.v_, n, MPFR_RNDN);
        return r;
    }

    static Real of(double d, mpfr_prec_t bits) {
        Real r{bits};
        mpfr_set_d(r.v_, d, MPFR_RNDN);
        return r;
    }

    static Real from_string(const std::string& s, mpfr_prec_t bits) {
        Real r{bits};
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
            throw DomainError("unparsable decimal literal: " + s);
        }
        return r;
    }

    static Real pi(mpfr_prec_t bits) {
        Real r{bits};
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    /// 2^e, exact at any precision.
    static Real two_pow(long e, mpfr_prec_t bits) {
        Real r{bits};
        mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_negative() const { return mpfr_sgn(v_) < 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Decimal string in scientific form with `digits` significant digits.
    std::string str(int digits) const {
        if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (mpfr_sgn(v_) > 0 ? "inf" : "-inf");
        char fmt[32];
        std::snprintf(fmt, sizeof fmt, "%%.%dRe", digits - 1);
        char* out = nullptr;
        if (mpfr_asprintf(&out, fmt, v_) < 0) throw IoError("mpfr_asprintf failed");
        std::string s{out};
        mpfr_free_str(out);
        return s;
    }

    friend Real operator+(const Real& a, const Real& b) {
        Real r{join(a, b)};
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r{join(a, b)};
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r{join(a, b)};
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r{join(a, b)};
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a) {
        Real r{a.precision()};
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, long n) {
        Real r{a.precision()};
        mpfr_mul_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, long n) {
        Real r{a.precision()};
        mpfr_div_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

    friend Real abs(const Real& a) {
        Real r{a.precision()};
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real sqrt(const Real& a) {
        Real r{a.precision()};
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real exp(const Real& a) {
        Real r{a.precision()};
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real log(const Real& a) {
        Real r{a.precision()};
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real hypot(const Real& a, const Real& b) {
        Real r{join(a, b)};
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend std::pair<Real, Real> sin_cos(const Real& a) {
        Real s{a.precision()}, c{a.precision()};
        mpfr_sin_cos(s.v_, c.v_, a.v_, MPFR_RNDN);
        return {std::move(s), std::move(c)};
    }
    friend std::pair<Real, Real> sinh_cosh(const Real& a) {
        Real s{a.precision()}, c{a.precision()};
        mpfr_sinh_cosh(s.v_, c.v_, a.v_, MPFR_RNDN);
        return {std::move(s), std::move(c)};
    }
    /// a * 2^e, exact.
    friend Real ldexp2(const Real& a, long e) {
        Real r{a.precision()};
        mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }

private:
    static mpfr_prec_t join(const Real& a, const Real& b) {
        return a.precision() > b.precision() ? a.precision() : b.precision();
    }

    mpfr_t v_;
};

/// Working precision plus the acceptance tolerance tied to it.
///
/// eps defaults to 2^(16-bits): sixteen guard bits over the last mantissa
/// place, so honest accumulated rounding passes and real defects do not.
struct Precision {
    int bits;
    Real eps;

    static Precision make(int bits) {
        if (bits < 53) throw DomainError("Precision.bits must be >= 53");
        return Precision{bits, Real::two_pow(16 - bits, bits)};
    }

    static Precision make(int bits, Real custom_eps) {
        if (bits < 53) throw DomainError("Precision.bits must be >= 53");
        if (!(custom_eps > Real::of(0L, 53)) || !(custom_eps < Real::of(1L, 53))) {
            throw DomainError("Precision.eps must lie in (0,1)");
        }
        return Precision{bits, std::move(custom_eps)};
    }
};

} // namespace qtheta
