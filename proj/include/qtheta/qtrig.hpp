#pragma once

#include <utility>

#include "qtheta/theta.hpp"

namespace qtheta {

/// Base-exponent view of the q-trigonometric family: base_exp = m means the
/// function is taken at nome q^m (m = 2 gives sin_{q^2} and so on).
struct QTrigBase {
    int base_exp;
    ModularParam param;
};

inline QTrigBase make_qtrig_base(int m, ModularParam param) {
    if (m < 1) throw DomainError("QTrigBase: base exponent must be >= 1");
    return QTrigBase{m, std::move(param)};
}

/// ProductForm evaluates the defining Pochhammer quotients; ThetaForm the
/// theta-quotient relations at tau' = -1/(m tau). They agree wherever both
/// converge; near |q^m| -> 1 only ThetaForm converges quickly, and at zeros
/// of the denominators only ThetaForm is defined.
enum class EvalForm { Product, Theta };

namespace detail {

inline ModularParam effective_param(const QTrigBase& b, const Precision& prec) {
    return make_param(b.param.tau * static_cast<long>(b.base_exp), prec);
}

inline ModularParam s_transformed_param(const QTrigBase& b, const Precision& prec) {
    return transform(effective_param(b, prec), Transform::S, prec);
}

} // namespace detail

inline Cplx sin_q(const Cplx& w, const QTrigBase& b, EvalForm form, const Precision& prec) {
    const mpfr_prec_t bits = prec.bits;
    if (form == EvalForm::Theta) {
        ModularParam sp = detail::s_transformed_param(b, prec);
        return theta_series(ThetaIndex{1}, w, sp, prec) / theta_null(ThetaIndex{2}, sp, prec);
    }
    ModularParam eff = detail::effective_param(b, prec);
    Cplx z = w / Real::pi(bits);
    Cplx q2 = q_pow(eff, 2);
    Cplx two = Cplx::of(2L, bits);
    Cplx num = q_pochhammer(q_pow(eff, two - z * 2L), q2, prec) *
               q_pochhammer(q_pow(eff, z * 2L), q2, prec);
    Cplx den = q_pochhammer(eff.q, q2, prec);
    Cplx half{Real::of(1L, bits) / 2, Real::of(0L, bits)};
    Cplx zh = z - half;
    return num / (den * den) * q_pow(eff, zh * zh);
}

inline Cplx cos_q(const Cplx& w, const QTrigBase& b, EvalForm form, const Precision& prec) {
    const mpfr_prec_t bits = prec.bits;
    if (form == EvalForm::Theta) {
        ModularParam sp = detail::s_transformed_param(b, prec);
        return theta_series(ThetaIndex{2}, w, sp, prec) / theta_null(ThetaIndex{2}, sp, prec);
    }
    ModularParam eff = detail::effective_param(b, prec);
    Cplx z = w / Real::pi(bits);
    Cplx q2 = q_pow(eff, 2);
    Cplx one = Cplx::of(1L, bits);
    Cplx num = q_pochhammer(q_pow(eff, one - z * 2L), q2, prec) *
               q_pochhammer(q_pow(eff, one + z * 2L), q2, prec);
    Cplx den = q_pochhammer(eff.q, q2, prec);
    return num / (den * den) * q_pow(eff, z * z);
}

/// ccs_q = cos_{q^2} / cos_q. ThetaForm (theta_3(w|tau')/theta_3_null(tau'))
/// is entire and canonical at the removable points; ProductForm certifies the
/// quotient definition away from zeros of cos_q.
inline Cplx ccs_q(const Cplx& w, const QTrigBase& b, EvalForm form, const Precision& prec) {
    if (form == EvalForm::Theta) {
        ModularParam sp = detail::s_transformed_param(b, prec);
        return theta_series(ThetaIndex{3}, w, sp, prec) / theta_null(ThetaIndex{3}, sp, prec);
    }
    Cplx den = cos_q(w, b, EvalForm::Product, prec);
    if (abs(den) < sqrt(prec.eps)) {
        throw PoleError("ccs_q: cos_q vanishes here; use ThetaForm");
    }
    QTrigBase doubled = make_qtrig_base(2 * b.base_exp, b.param);
    return cos_q(w, doubled, EvalForm::Product, prec) / den;
}

/// ssn_q = sin_{q^2} / sin_q; ThetaForm is theta_4(w|tau')/theta_3_null(tau').
inline Cplx ssn_q(const Cplx& w, const QTrigBase& b, EvalForm form, const Precision& prec) {
    if (form == EvalForm::Theta) {
        ModularParam sp = detail::s_transformed_param(b, prec);
        return theta_series(ThetaIndex{4}, w, sp, prec) / theta_null(ThetaIndex{3}, sp, prec);
    }
    Cplx den = sin_q(w, b, EvalForm::Product, prec);
    if (abs(den) < sqrt(prec.eps)) {
        throw PoleError("ssn_q: sin_q vanishes here; use ThetaForm");
    }
    QTrigBase doubled = make_qtrig_base(2 * b.base_exp, b.param);
    return sin_q(w, doubled, EvalForm::Product, prec) / den;
}

/// Pi_q = q^{1/4} (q^2;q^2)^2 / (q;q^2)^2 at nome q^m.
inline Cplx pi_q(const QTrigBase& b, const Precision& prec) {
    ModularParam eff = detail::effective_param(b, prec);
    Cplx q2 = q_pow(eff, 2);
    Cplx num = q_pochhammer(q2, q2, prec);
    Cplx den = q_pochhammer(eff.q, q2, prec);
    return q_pow(eff, 1, 4) * (num * num) / (den * den);
}

} // namespace qtheta
