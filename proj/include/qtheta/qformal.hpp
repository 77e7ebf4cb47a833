#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtheta/qseries.hpp"

namespace qtheta {

/// Location and value of the lowest surviving coefficient of a check that
/// should have produced the zero series: lowest Q-exponent first, then the
/// lexicographically first monomial at that exponent.
struct ExactWitness {
    int q_exp;
    std::string monomial;
    std::string value;
};

struct ExactReport {
    std::string name;
    bool pass = false;
    int order = 0;
    std::optional<ExactWitness> witness;
};

/// Turn a difference series into a report: pass iff it is the zero series.
inline ExactReport report_from_series(std::string name, int order, const QSeries& diff) {
    ExactReport r;
    r.name = std::move(name);
    r.order = order;
    auto fail = diff.first_nonzero();
    r.pass = !fail.has_value();
    if (fail) {
        auto [mono, value] = fail->second.first_term();
        std::string mono_str;
        for (size_t i = 0; i < mono.size(); ++i) {
            if (mono[i] == 0) continue;
            if (!mono_str.empty()) mono_str += "*";
            mono_str += diff.symbols().names[i];
            if (mono[i] != 1) mono_str += "^" + std::to_string(mono[i]);
        }
        if (mono_str.empty()) mono_str = "1";
        r.witness = ExactWitness{fail->first, mono_str, value.str()};
    }
    return r;
}

namespace formal_detail {

inline QSeries theta1_prod4(const AngleSymbols& sym, int order,
                            const std::vector<std::vector<int>>& args) {
    QSeries acc = theta_qseries(ThetaIndex{1}, args[0], HalfPiShift{}, TauScale::One, order, sym);
    for (size_t i = 1; i < args.size(); ++i) {
        acc = qs_mul(acc, theta_qseries(ThetaIndex{1}, args[i], HalfPiShift{}, TauScale::One,
                                        order, sym));
    }
    return acc;
}

} // namespace formal_detail

/// The three-term vanishing sum of products of four theta_1 factors over
/// symbols (u, u1, u2, u3).
inline ExactReport verify_riemann_L(int order) {
    if (order < 4) throw DomainError("verify_riemann_L: order must be >= 4");
    auto sym = AngleSymbols::of({"u", "u1", "u2", "u3"});
    using V = std::vector<std::vector<int>>;
    QSeries t1 = formal_detail::theta1_prod4(
        sym, order, V{{1, 1, 0, 0}, {1, -1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, -1}});
    QSeries t2 = formal_detail::theta1_prod4(
        sym, order, V{{1, 0, 1, 0}, {1, 0, -1, 0}, {0, 1, 0, 1}, {0, -1, 0, 1}});
    QSeries t3 = formal_detail::theta1_prod4(
        sym, order, V{{1, 0, 0, 1}, {1, 0, 0, -1}, {0, 1, 1, 0}, {0, 1, -1, 0}});
    return report_from_series("riemann_L", order, qs_add(qs_add(t1, t2), t3));
}

namespace formal_detail {

/// Common shape of the two propositions: for j in {2,3},
/// theta_j_null * theta_j(x-y) * theta_1(a+b+x+y) * theta_1(a-b)
///   - th1(a+x) th1(a+y) th_j(b+x) th_j(b+y) + th1(b+x) th1(b+y) th_j(a+x) th_j(a+y) = 0
/// over symbols (a, b, x, y).
inline ExactReport verify_prop_with(int j, const char* name, int order) {
    if (order < 4) throw DomainError(std::string(name) + ": order must be >= 4");
    auto sym = AngleSymbols::of({"a", "b", "x", "y"});
    auto th = [&](int idx, std::vector<int> c) {
        return theta_qseries(ThetaIndex{idx}, c, HalfPiShift{}, TauScale::One, order, sym);
    };
    QSeries lhs = qs_mul(qs_mul(th(j, {0, 0, 0, 0}), th(j, {0, 0, 1, -1})),
                         qs_mul(th(1, {1, 1, 1, 1}), th(1, {1, -1, 0, 0})));
    QSeries pos = qs_mul(qs_mul(th(1, {1, 0, 1, 0}), th(1, {1, 0, 0, 1})),
                         qs_mul(th(j, {0, 1, 1, 0}), th(j, {0, 1, 0, 1})));
    QSeries neg = qs_mul(qs_mul(th(1, {0, 1, 1, 0}), th(1, {0, 1, 0, 1})),
                         qs_mul(th(j, {1, 0, 1, 0}), th(j, {1, 0, 0, 1})));
    return report_from_series(name, order, qs_add(qs_sub(lhs, pos), neg));
}

} // namespace formal_detail

inline ExactReport verify_prop_t3(int order) {
    return formal_detail::verify_prop_with(3, "t3", order);
}

inline ExactReport verify_prop_t2(int order) {
    return formal_detail::verify_prop_with(2, "t2", order);
}

/// 2 th2(z|2tau) th3(z|2tau) = th2_null(tau) th2(z|tau), and at z = 0 the
/// null form th2_null(tau)^2 = 2 th2_null(2tau) th3_null(2tau).
inline ExactReport verify_doubling(int order) {
    if (order < 2 || order % 2 != 0) {
        throw GridError("verify_doubling: order must be even (the 2tau grid is even)");
    }
    auto sym = AngleSymbols::of({"z"});
    QSeries lhs1 = qs_scale(
        qs_mul(theta_qseries(ThetaIndex{2}, {1}, HalfPiShift{}, TauScale::Double, order, sym),
               theta_qseries(ThetaIndex{3}, {1}, HalfPiShift{}, TauScale::Double, order, sym)),
        GaussianRational::integer(2));
    QSeries rhs1 =
        qs_mul(theta_qseries(ThetaIndex{2}, {0}, HalfPiShift{}, TauScale::One, order, sym),
               theta_qseries(ThetaIndex{2}, {1}, HalfPiShift{}, TauScale::One, order, sym));
    ExactReport first = report_from_series("doubling", order, qs_sub(lhs1, rhs1));
    if (!first.pass) return first;

    QSeries n2 = theta_qseries(ThetaIndex{2}, {0}, HalfPiShift{}, TauScale::One, order, sym);
    QSeries lhs2 = qs_mul(n2, n2);
    QSeries rhs2 = qs_scale(
        qs_mul(theta_qseries(ThetaIndex{2}, {0}, HalfPiShift{}, TauScale::Double, order, sym),
               theta_qseries(ThetaIndex{3}, {0}, HalfPiShift{}, TauScale::Double, order, sym)),
        GaussianRational::integer(2));
    ExactReport second = report_from_series("doubling", order, qs_sub(lhs2, rhs2));
    return second;
}

/// Bilateral sum vs triple product, on the integer grid of the nome itself
/// with one Laurent symbol z (monomial exponents are plain powers of z here).
inline ExactReport verify_triple_product(int order) {
    if (order < 1) throw DomainError("verify_triple_product: order must be >= 1");
    auto sym = AngleSymbols::of({"z"});
    QSeries lhs = QSeries::zero(sym, order);
    for (long n = 1 - order * 2L - 4; n <= order * 2L + 4; ++n) {
        long e = n * (n - 1) / 2;
        if (e > order) continue;
        GaussianRational c = GaussianRational::integer((n % 2 == 0) ? 1 : -1);
        lhs.add_at(static_cast<int>(e),
                   LaurentPoly::monomial({static_cast<int>(n)}, c));
    }

    auto poch = [&](int z_exp, int a_exp, int step) {
        QSeries prod = QSeries::one(sym, order);
        for (int e = a_exp; e <= order; e += step) {
            QSeries f = QSeries::one(sym, order);
            f.add_at(e, LaurentPoly::monomial({z_exp}, GaussianRational::integer(-1)));
            prod = qs_mul(prod, f);
        }
        return prod;
    };
    // (nome;nome) (z;nome) (nome/z;nome); the z-free first factor and the
    // z^{+1}/z^{-1} ladders all live on the integer nome grid.
    QSeries rhs = qs_mul(poch(0, 1, 1), poch(1, 0, 1));
    rhs = qs_mul(rhs, poch(-1, 1, 1));
    // poch(1, 0, 1) starts at factor (1 - z) with nome-exponent 0.
    return report_from_series("triple", order, qs_sub(lhs, rhs));
}

/// Squared quarter-pi value: theta_1(pi/4|tau)^2 vs
/// 2 q^{1/2} (q^2;q^2)^2 (-q^4;q^4)^2, entirely inside the Gaussian rationals.
inline ExactReport verify_quarter_pi_squared(int order) {
    if (order < 2) throw DomainError("verify_quarter_pi_squared: order must be >= 2");
    auto sym = AngleSymbols::of({"z"});
    QSeries lhs = QSeries::zero(sym, order);
    // theta_1(pi/4)^2 = -q^{1/2} sum_{k,m} (-1)^{k+m} q^{k(k+1)+m(m+1)} i^{k+m+1}
    for (long k = -order; k <= order; ++k) {
        long ek = 4 * k * (k + 1);
        if (ek + 2 > order) continue;
        for (long m = -order; m <= order; ++m) {
            long e = 2 + ek + 4 * m * (m + 1);
            if (e > order) continue;
            GaussianRational c = -GaussianRational::i_pow(k + m + 1);
            if ((k + m) & 1) c = -c;
            lhs.add_at(static_cast<int>(e), LaurentPoly::constant(1, c));
        }
    }
    QSeries p1 = pochhammer_qseries(PochKind::q2_q2, order, sym);
    QSeries p2 = pochhammer_qseries(PochKind::neg_q4_q4, order, sym);
    QSeries rhs = qs_mul(qs_mul(p1, p1), qs_mul(p2, p2));
    rhs = qs_mul(rhs, QSeries::monomial(sym, order, 2,
                                        LaurentPoly::constant(1, GaussianRational::integer(2))));
    return report_from_series("quarter_pi2", order, qs_sub(lhs, rhs));
}

} // namespace qtheta
