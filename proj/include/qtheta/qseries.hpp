#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "qtheta/laurent.hpp"
#include "qtheta/params.hpp"
#include "qtheta/theta.hpp"

namespace qtheta {

/// Argument offset of t * pi/2; each quarter turn contributes exact Gaussian
/// units i^{...t} to the coefficients.
struct HalfPiShift {
    int quarter_turns = 0;
};

/// Rescaling of tau in a formal theta series. Half requires every exponent on
/// the Q-grid to stay integral, otherwise GridError.
enum class TauScale { One, Double, Half };

/// Truncated series in Q = q^{1/4} with LaurentPoly coefficients. Exponents
/// run from min_exp (negative allowed) up to order; arithmetic truncates so
/// that every retained coefficient is exactly the coefficient of the infinite
/// computation.
class QSeries {
public:
    QSeries(AngleSymbols symbols, int order, int min_exp)
        : symbols_(std::move(symbols)), order_(order), min_exp_(min_exp) {
        if (order_ < min_exp_) order_ = min_exp_ - 1; // empty range: the zero series
        coeffs_.resize(static_cast<size_t>(order_ - min_exp_ + 1));
    }

    static QSeries zero(AngleSymbols symbols, int order) {
        return QSeries{std::move(symbols), order, 0};
    }

    static QSeries one(AngleSymbols symbols, int order) {
        QSeries s{std::move(symbols), order, 0};
        s.set(0, LaurentPoly::constant(s.symbols_.count(), GaussianRational::integer(1)));
        return s;
    }

    /// c * mono * Q^{q_exp}, known up to `order`.
    static QSeries monomial(AngleSymbols symbols, int order, int q_exp, LaurentPoly coeff) {
        QSeries s{std::move(symbols), order, std::min(q_exp, 0)};
        if (q_exp <= order) s.set(q_exp, std::move(coeff));
        return s;
    }

    const AngleSymbols& symbols() const { return symbols_; }
    int order() const { return order_; }
    int min_exp() const { return min_exp_; }

    const LaurentPoly& coeff(int q_exp) const {
        static const LaurentPoly kZero{};
        if (q_exp < min_exp_ || q_exp > order_) return kZero;
        return coeffs_[static_cast<size_t>(q_exp - min_exp_)];
    }

    void set(int q_exp, LaurentPoly p) {
        coeffs_.at(static_cast<size_t>(q_exp - min_exp_)) = std::move(p);
    }

    void add_at(int q_exp, const LaurentPoly& p) {
        if (q_exp < min_exp_ || q_exp > order_) return;
        auto& slot = coeffs_[static_cast<size_t>(q_exp - min_exp_)];
        slot = slot + p;
    }

    bool is_zero() const {
        for (const auto& c : coeffs_) {
            if (!c.is_zero()) return false;
        }
        return true;
    }

    std::optional<std::pair<int, LaurentPoly>> first_nonzero() const {
        for (int e = min_exp_; e <= order_; ++e) {
            const auto& c = coeff(e);
            if (!c.is_zero()) return std::make_pair(e, c);
        }
        return std::nullopt;
    }

    friend QSeries qs_add(const QSeries& a, const QSeries& b) {
        check_symbols(a, b);
        QSeries r{a.symbols_, std::min(a.order_, b.order_), std::min(a.min_exp_, b.min_exp_)};
        for (int e = r.min_exp_; e <= r.order_; ++e) r.set(e, a.coeff(e) + b.coeff(e));
        return r;
    }

    friend QSeries qs_sub(const QSeries& a, const QSeries& b) {
        check_symbols(a, b);
        QSeries r{a.symbols_, std::min(a.order_, b.order_), std::min(a.min_exp_, b.min_exp_)};
        for (int e = r.min_exp_; e <= r.order_; ++e) r.set(e, a.coeff(e) - b.coeff(e));
        return r;
    }

    friend QSeries qs_neg(const QSeries& a) {
        QSeries r{a.symbols_, a.order_, a.min_exp_};
        for (int e = r.min_exp_; e <= r.order_; ++e) r.set(e, -a.coeff(e));
        return r;
    }

    friend QSeries qs_scale(const QSeries& a, const GaussianRational& s) {
        QSeries r{a.symbols_, a.order_, a.min_exp_};
        for (int e = r.min_exp_; e <= r.order_; ++e) r.set(e, a.coeff(e).scaled(s));
        return r;
    }

    /// Convolution. The reliable order is min(o1, o2) shrunk further when an
    /// operand has negative exponents (pairs above one operand's order could
    /// otherwise land inside the window).
    friend QSeries qs_mul(const QSeries& a, const QSeries& b) {
        check_symbols(a, b);
        int order = std::min(a.order_, b.order_);
        order = std::min(order, a.order_ + std::min(b.min_exp_, 0));
        order = std::min(order, b.order_ + std::min(a.min_exp_, 0));
        QSeries r{a.symbols_, order, a.min_exp_ + b.min_exp_};
        for (int ea = a.min_exp_; ea <= a.order_; ++ea) {
            const auto& ca = a.coeff(ea);
            if (ca.is_zero()) continue;
            for (int eb = b.min_exp_; eb <= b.order_; ++eb) {
                if (ea + eb > r.order_) break;
                const auto& cb = b.coeff(eb);
                if (cb.is_zero()) continue;
                r.add_at(ea + eb, ca * cb);
            }
        }
        return r;
    }

    /// Structural equality after trimming zero coefficients at the edges.
    friend bool operator==(const QSeries& a, const QSeries& b) {
        if (!(a.symbols_ == b.symbols_) || a.order_ != b.order_) return false;
        int lo = std::min(a.min_exp_, b.min_exp_);
        for (int e = lo; e <= a.order_; ++e) {
            if (!(a.coeff(e) == b.coeff(e))) return false;
        }
        return true;
    }

private:
    static void check_symbols(const QSeries& a, const QSeries& b) {
        if (!(a.symbols_ == b.symbols_)) {
            throw SymbolMismatch("QSeries arithmetic over different symbol tables");
        }
    }

    AngleSymbols symbols_;
    int order_;
    int min_exp_;
    std::vector<LaurentPoly> coeffs_;
};

namespace formal_detail {

inline int scale_exponent(int e, TauScale scale) {
    switch (scale) {
        case TauScale::One: return e;
        case TauScale::Double: return 2 * e;
        case TauScale::Half:
            if (e % 2 != 0) throw GridError("tau/2 leaves the integer Q-grid here");
            return e / 2;
    }
    throw GridError("unknown tau scale");
}

} // namespace formal_detail

/// Formal expansion of theta_j(sum_s c_s*s + t*pi/2 + r*pi*tau/2 | scale*tau)
/// on the Q = q^{1/4} grid, complete through Q^order. The pi*tau/2 offsets
/// (r = half_period_shifts) move terms along the Q-grid and can push the
/// series to negative exponents.
inline QSeries theta_qseries(ThetaIndex j, const std::vector<int>& arg_coeffs,
                             HalfPiShift shift, TauScale tau_scale, int order,
                             const AngleSymbols& symbols, int half_period_shifts = 0) {
    if (arg_coeffs.size() != symbols.count()) {
        throw SymbolMismatch("theta_qseries: arg_coeffs length != symbol count");
    }
    const int jj = j.value();
    const int t = shift.quarter_turns;
    const int r = half_period_shifts;

    // Collect raw (exponent, k) pairs first to learn the true Laurent window.
    const int guard = order + std::abs(r) + 4;
    std::vector<std::pair<int, long>> grid;
    int min_e = 0;
    for (long k = -guard; k <= guard; ++k) {
        long e_base = (jj <= 2) ? 4 * k * (k + 1) + 1 + 2L * r * (2 * k + 1)
                                : 4 * k * k + 4L * r * k;
        if (e_base > order * 2L + 64L) continue; // cheap pre-filter before scaling
        int e = formal_detail::scale_exponent(static_cast<int>(e_base), tau_scale);
        if (e > order) continue;
        grid.emplace_back(e, k);
        min_e = std::min(min_e, e);
    }

    QSeries s{symbols, order, min_e};
    for (auto [e, k] : grid) {
        GaussianRational c;
        if (jj == 1) {
            c = GaussianRational::i_pow((2 * k + 1) * t - 1); // (-i) * i^{(2k+1)t}
            if (k & 1) c = -c;
        } else if (jj == 2) {
            c = GaussianRational::i_pow((2 * k + 1) * t);
        } else {
            c = GaussianRational::i_pow(2 * k * t);
            if (jj == 4 && (k & 1)) c = -c;
        }
        LaurentPoly::Monomial mono(symbols.count());
        long unit = (jj <= 2) ? 2 * k + 1 : 2 * k;
        for (size_t i = 0; i < mono.size(); ++i) {
            mono[i] = static_cast<int>(unit * arg_coeffs[i]);
        }
        s.add_at(e, LaurentPoly::monomial(std::move(mono), c));
    }
    return s;
}

/// The standard Pochhammer families on the Q-grid.
enum class PochKind { q2_q2, neg_q4_q4, q_q2, neg_q2_q2, neg_q_q2 };

/// (a; r)_inf as an exact truncated product; factors beyond Q^order are
/// congruent to 1 and are skipped.
inline QSeries pochhammer_qseries(PochKind kind, int order, const AngleSymbols& symbols) {
    int a_exp = 0, step = 0;
    bool negated = false;
    switch (kind) {
        case PochKind::q2_q2: a_exp = 8; step = 8; break;
        case PochKind::neg_q4_q4: a_exp = 16; step = 16; negated = true; break;
        case PochKind::q_q2: a_exp = 4; step = 8; break;
        case PochKind::neg_q2_q2: a_exp = 8; step = 8; negated = true; break;
        case PochKind::neg_q_q2: a_exp = 4; step = 8; negated = true; break;
    }
    QSeries prod = QSeries::one(symbols, order);
    GaussianRational factor_c = GaussianRational::integer(negated ? 1 : -1);
    for (int e = a_exp; e <= order; e += step) {
        QSeries f = QSeries::one(symbols, order);
        f.add_at(e, LaurentPoly::constant(symbols.count(), factor_c));
        prod = qs_mul(prod, f);
    }
    return prod;
}

/// Numerical substitution: concrete tau and symbol angles into a QSeries.
/// Bridges the exact engine to the floating evaluators for consistency tests.
inline Cplx evaluate_qseries(const QSeries& s, const ModularParam& p,
                             const std::vector<Cplx>& symbol_values, const Precision& prec) {
    if (symbol_values.size() != s.symbols().count()) {
        throw SymbolMismatch("evaluate_qseries: wrong number of symbol values");
    }
    Cplx total{prec.bits};
    for (int e = s.min_exp(); e <= s.order(); ++e) {
        const auto& poly = s.coeff(e);
        if (poly.is_zero()) continue;
        Cplx coeff_val{prec.bits};
        for (const auto& [mono, c] : poly.terms()) {
            Cplx angle{prec.bits};
            for (size_t i = 0; i < mono.size(); ++i) {
                if (mono[i] != 0) angle += symbol_values[i] * static_cast<long>(mono[i]);
            }
            Real cr{prec.bits}, ci{prec.bits};
            mpfr_set_q(cr.raw(), c.re.get_mpq_t(), MPFR_RNDN);
            mpfr_set_q(ci.raw(), c.im.get_mpq_t(), MPFR_RNDN);
            coeff_val += Cplx{std::move(cr), std::move(ci)} * exp(mul_i(angle));
        }
        total += coeff_val * q_pow(p, e, 4);
    }
    return total;
}

} // namespace qtheta
