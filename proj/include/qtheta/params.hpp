#pragma once

#include <utility>

#include "qtheta/complex.hpp"

namespace qtheta {

/// Half-period ratio tau (Im tau > 0) together with its nome q = exp(i*pi*tau).
struct ModularParam {
    Cplx tau;
    Cplx q;
};

enum class Transform { S, Double, Half };

/// exp(i*pi*tau*w). This is the single definition of q^w used everywhere:
/// exponents compose in tau, so fractional powers like q^{1/4} and complex
/// powers like q^{(z-1/2)^2} carry no branch ambiguity.
inline Cplx q_pow(const ModularParam& p, const Cplx& w) {
    mpfr_prec_t bits = p.tau.precision() > w.precision() ? p.tau.precision() : w.precision();
    Real pi = Real::pi(bits);
    return exp(mul_i(p.tau * w * pi));
}

inline Cplx q_pow(const ModularParam& p, long num, long den = 1) {
    mpfr_prec_t bits = p.tau.precision();
    return q_pow(p, Cplx{Real::of(num, bits) / den, Real::of(0L, bits)});
}

inline ModularParam make_param(Cplx tau, const Precision& prec) {
    if (!tau.im.is_finite() || !(tau.im > Real::of(0L, 53))) {
        throw DomainError("make_param: Im(tau) must be positive");
    }
    Real pi = Real::pi(prec.bits);
    Cplx q = exp(mul_i(tau * pi));
    return ModularParam{std::move(tau), std::move(q)};
}

/// Purely imaginary tau from a real nome q in (0,1): tau = log(1/q)/pi * i.
inline ModularParam from_real_nome(const Real& q, const Precision& prec) {
    Real zero = Real::of(0L, prec.bits);
    Real one = Real::of(1L, prec.bits);
    if (!(q > zero) || !(q < one)) {
        throw DomainError("from_real_nome: q must lie in (0,1)");
    }
    Real t = -log(q) / Real::pi(prec.bits);
    return make_param(Cplx{std::move(zero), std::move(t)}, prec);
}

inline ModularParam transform(const ModularParam& p, Transform kind, const Precision& prec) {
    switch (kind) {
        case Transform::S: {
            Cplx minus_one = Cplx::of(-1L, prec.bits);
            return make_param(minus_one / p.tau, prec);
        }
        case Transform::Double:
            return make_param(p.tau * 2L, prec);
        case Transform::Half:
            return make_param(p.tau / 2L, prec);
    }
    throw DomainError("transform: unknown kind");
}

} // namespace qtheta
