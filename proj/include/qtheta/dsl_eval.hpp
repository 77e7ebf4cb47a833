#pragma once

#include <map>
#include <string>

#include "qtheta/dsl.hpp"
#include "qtheta/qtrig.hpp"

namespace qtheta::dsl {

struct EvalOptions {
    /// ccs_q / ssn_q evaluation form. ThetaForm is the default so corpus
    /// sampling never trips their removable singularities; Product exists to
    /// cross-check the quotient definitions away from poles.
    EvalForm ccs_ssn_form = EvalForm::Theta;
};

using Env = std::map<std::string, Cplx>;

namespace eval_detail {

inline ModularParam param_for(TauArg t, const ModularParam& p, const Precision& prec) {
    switch (t) {
        case TauArg::One: return p;
        case TauArg::Double: return transform(p, Transform::Double, prec);
        case TauArg::Half: return transform(p, Transform::Half, prec);
        case TauArg::S: return transform(p, Transform::S, prec);
    }
    throw DomainError("unknown tau argument");
}

} // namespace eval_detail

inline Cplx eval_expr(const ExprPtr& e, const Env& env, const ModularParam& p,
                      const Precision& prec, const EvalOptions& opts = {}) {
    const mpfr_prec_t bits = prec.bits;
    switch (e->kind) {
        case ExprKind::Add: return eval_expr(e->a, env, p, prec, opts) +
                                   eval_expr(e->b, env, p, prec, opts);
        case ExprKind::Sub: return eval_expr(e->a, env, p, prec, opts) -
                                   eval_expr(e->b, env, p, prec, opts);
        case ExprKind::Mul: return eval_expr(e->a, env, p, prec, opts) *
                                   eval_expr(e->b, env, p, prec, opts);
        case ExprKind::Div: {
            Cplx num = eval_expr(e->a, env, p, prec, opts);
            Cplx den = eval_expr(e->b, env, p, prec, opts);
            if (abs(den) < sqrt(prec.eps)) {
                throw PoleError("division by a near-zero denominator (" + at(e->span) + ")");
            }
            return num / den;
        }
        case ExprKind::Neg: return -eval_expr(e->a, env, p, prec, opts);
        case ExprKind::Pow: {
            Cplx base = eval_expr(e->a, env, p, prec, opts);
            if (e->pow_exp < 0 && abs(base) < sqrt(prec.eps)) {
                throw PoleError("negative power of a near-zero value (" + at(e->span) + ")");
            }
            return pow_int(base, e->pow_exp);
        }
        case ExprKind::Var: {
            auto it = env.find(e->var_name);
            if (it == env.end()) {
                throw UnboundVariable("unbound variable '" + e->var_name + "' (" +
                                      at(e->span) + ")");
            }
            return it->second;
        }
        case ExprKind::Pi: return Cplx{Real::pi(bits), Real::of(0L, bits)};
        case ExprKind::Tau: return p.tau;
        case ExprKind::Rational: {
            Real r{bits};
            mpfr_set_q(r.raw(), e->rational.get_mpq_t(), MPFR_RNDN);
            return Cplx::real_axis(std::move(r));
        }
        case ExprKind::Call: break;
    }

    // Call dispatch, with the call site attached to propagated math errors.
    try {
        Cplx arg{bits};
        if (e->a) arg = eval_expr(e->a, env, p, prec, opts);
        switch (e->func) {
            case FuncName::SinQ:
                return sin_q(arg, make_qtrig_base(e->base_exp, p), EvalForm::Product, prec);
            case FuncName::CosQ:
                return cos_q(arg, make_qtrig_base(e->base_exp, p), EvalForm::Product, prec);
            case FuncName::CcsQ:
                return ccs_q(arg, make_qtrig_base(e->base_exp, p), opts.ccs_ssn_form, prec);
            case FuncName::SsnQ:
                return ssn_q(arg, make_qtrig_base(e->base_exp, p), opts.ccs_ssn_form, prec);
            case FuncName::Sin: return sin(arg);
            case FuncName::Cos: return cos(arg);
            case FuncName::ExpI: return exp(mul_i(arg));
            case FuncName::Theta1:
            case FuncName::Theta2:
            case FuncName::Theta3:
            case FuncName::Theta4: {
                int j = 1 + static_cast<int>(e->func) - static_cast<int>(FuncName::Theta1);
                return theta_series(ThetaIndex{j}, arg,
                                    eval_detail::param_for(e->tau_arg, p, prec), prec);
            }
            case FuncName::Theta1P:
            case FuncName::Theta2P:
            case FuncName::Theta3P:
            case FuncName::Theta4P: {
                int j = 1 + static_cast<int>(e->func) - static_cast<int>(FuncName::Theta1P);
                return theta_product(ThetaIndex{j}, arg,
                                     eval_detail::param_for(e->tau_arg, p, prec), prec);
            }
            case FuncName::ThetaNull1:
            case FuncName::ThetaNull2:
            case FuncName::ThetaNull3:
            case FuncName::ThetaNull4: {
                int j = 1 + static_cast<int>(e->func) - static_cast<int>(FuncName::ThetaNull1);
                return theta_null(ThetaIndex{j},
                                  eval_detail::param_for(e->tau_arg, p, prec), prec);
            }
            case FuncName::PiQ:
                return pi_q(make_qtrig_base(e->base_exp, p), prec);
        }
        throw DomainError("unknown function");
    } catch (const PoleError& err) {
        throw PoleError(std::string(err.what()) + " via call at " + at(e->span));
    } catch (const ConvergenceError& err) {
        throw ConvergenceError(std::string(err.what()) + " via call at " + at(e->span));
    } catch (const DomainError& err) {
        throw DomainError(std::string(err.what()) + " via call at " + at(e->span));
    }
}

/// Extend a free-variable environment with the declaration's where-bindings,
/// evaluated in order.
inline Env bind_environment(const IdentityDecl& d, Env env, const ModularParam& p,
                            const Precision& prec, const EvalOptions& opts = {}) {
    for (const auto& [name, expr] : d.where_bindings) {
        Cplx v = eval_expr(expr, env, p, prec, opts);
        env.erase(name);
        env.emplace(name, std::move(v));
    }
    return env;
}

/// True if any expression in the declaration depends on q (or tau).
inline bool uses_q_functions(const IdentityDecl& d) {
    auto walk = [](const ExprPtr& e, auto&& self) -> bool {
        if (!e) return false;
        if (e->kind == ExprKind::Tau) return true;
        if (e->kind == ExprKind::Call && is_q_dependent(e->func)) return true;
        return self(e->a, self) || self(e->b, self);
    };
    for (const auto& [name, expr] : d.where_bindings) {
        if (walk(expr, walk)) return true;
    }
    return walk(d.lhs, walk) || walk(d.rhs, walk);
}

} // namespace qtheta::dsl
