#include "qtheta/qseries.hpp"

#include "test_support.hpp"

using namespace qtheta;
using qt_test::bits;

namespace {

AngleSymbols one_sym() { return AngleSymbols::of({"z"}); }

LaurentPoly cpoly(long n) { return LaurentPoly::constant(1, GaussianRational::integer(n)); }

QSeries random_series(qt_test::Rng& rng, const AngleSymbols& sym, int order) {
    QSeries s = QSeries::zero(sym, order);
    for (int e = 0; e <= order; ++e) {
        LaurentPoly p;
        int terms = static_cast<int>(rng.raw() % 3);
        for (int t = 0; t < terms; ++t) {
            LaurentPoly::Monomial m(sym.count());
            for (auto& x : m) x = static_cast<int>(rng.raw() % 7) - 3;
            long num = static_cast<long>(rng.raw() % 9) - 4;
            long den = 1 + static_cast<long>(rng.raw() % 4);
            p.add_term(m, GaussianRational{mpq_class(num, den),
                                           mpq_class(static_cast<long>(rng.raw() % 5) - 2)});
        }
        s.set(e, std::move(p));
    }
    return s;
}

} // namespace

TEST_CASE("exact ring laws on random series") {
    auto sym = AngleSymbols::of({"x", "y"});
    qt_test::Rng rng{910001};
    for (int trial = 0; trial < 12; ++trial) {
        QSeries a = random_series(rng, sym, 8);
        QSeries b = random_series(rng, sym, 8);
        QSeries c = random_series(rng, sym, 8);
        REQUIRE(qs_add(qs_add(a, b), c) == qs_add(a, qs_add(b, c)));
        REQUIRE(qs_add(a, b) == qs_add(b, a));
        REQUIRE(qs_mul(a, b) == qs_mul(b, a));
        REQUIRE(qs_mul(a, qs_add(b, c)) == qs_add(qs_mul(a, b), qs_mul(a, c)));
        REQUIRE(qs_mul(qs_mul(a, b), c) == qs_mul(a, qs_mul(b, c)));
        REQUIRE(qs_sub(a, a).is_zero());
        REQUIRE(qs_mul(a, QSeries::one(sym, 8)) == a);
        REQUIRE(qs_add(a, qs_neg(a)).is_zero());
    }
}

TEST_CASE("truncation semantics") {
    auto sym = one_sym();
    SECTION("Q*m1 times Q*m2 at order 1 is the zero series") {
        QSeries a = QSeries::monomial(sym, 1, 1, cpoly(3));
        QSeries b = QSeries::monomial(sym, 1, 1, cpoly(5));
        REQUIRE(qs_mul(a, b).is_zero());
    }
    SECTION("symbol tables must match") {
        QSeries a = QSeries::one(sym, 4);
        QSeries b = QSeries::one(AngleSymbols::of({"w"}), 4);
        REQUIRE_THROWS_AS(qs_add(a, b), SymbolMismatch);
        REQUIRE_THROWS_AS(
            theta_qseries(ThetaIndex{3}, {1, 2}, HalfPiShift{}, TauScale::One, 4, sym),
            SymbolMismatch);
    }
}

TEST_CASE("formal theta series basics") {
    auto sym = one_sym();
    SECTION("theta_1 at zero argument cancels exactly") {
        QSeries s = theta_qseries(ThetaIndex{1}, {0}, HalfPiShift{}, TauScale::One, 20, sym);
        REQUIRE(s.is_zero());
    }
    SECTION("theta_3 null through order 16 is 1 + 2Q^4 + 2Q^16") {
        QSeries s = theta_qseries(ThetaIndex{3}, {0}, HalfPiShift{}, TauScale::One, 16, sym);
        REQUIRE(s.coeff(0) == cpoly(1));
        REQUIRE(s.coeff(4) == cpoly(2));
        REQUIRE(s.coeff(16) == cpoly(2));
        for (int e : {1, 2, 3, 5, 8, 9, 15}) REQUIRE(s.coeff(e).is_zero());
    }
    SECTION("a quarter turn maps theta_1 onto theta_2 exactly") {
        for (int t = 0; t <= 3; ++t) {
            QSeries lhs = theta_qseries(ThetaIndex{1}, {2}, HalfPiShift{t + 1},
                                        TauScale::One, 24, sym);
            QSeries rhs = theta_qseries(ThetaIndex{2}, {2}, HalfPiShift{t},
                                        TauScale::One, 24, sym);
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("formal theta parity") {
    auto sym = AngleSymbols::of({"x", "y"});
    for (auto coeffs : {std::vector<int>{1, 0}, {2, -1}, {1, 3}}) {
        std::vector<int> negated;
        for (int c : coeffs) negated.push_back(-c);
        for (int j = 1; j <= 4; ++j) {
            QSeries plus = theta_qseries(ThetaIndex{j}, coeffs, HalfPiShift{},
                                         TauScale::One, 24, sym);
            QSeries minus = theta_qseries(ThetaIndex{j}, negated, HalfPiShift{},
                                          TauScale::One, 24, sym);
            if (j == 1) {
                REQUIRE(minus == qs_neg(plus));
            } else {
                REQUIRE(minus == plus);
            }
        }
    }
}

TEST_CASE("tau rescaling on the grid") {
    auto sym = one_sym();
    SECTION("Double maps exponent e to 2e") {
        QSeries s = theta_qseries(ThetaIndex{3}, {0}, HalfPiShift{}, TauScale::Double, 16, sym);
        REQUIRE(s.coeff(0) == cpoly(1));
        REQUIRE(s.coeff(8) == cpoly(2));
        REQUIRE(s.coeff(4).is_zero());
    }
    SECTION("Half keeps theta_3 integral but rejects theta_2") {
        QSeries s = theta_qseries(ThetaIndex{3}, {0}, HalfPiShift{}, TauScale::Half, 8, sym);
        REQUIRE(s.coeff(2) == cpoly(2));
        REQUIRE_THROWS_AS(
            theta_qseries(ThetaIndex{2}, {0}, HalfPiShift{}, TauScale::Half, 8, sym),
            GridError);
    }
}

TEST_CASE("half-period shift bookkeeping") {
    // theta_1(z + pi/2 + pi tau/2) = Q^{-1} e^{-iz} theta_3(z), exactly.
    auto sym = one_sym();
    const int order = 30;
    QSeries lhs = theta_qseries(ThetaIndex{1}, {1}, HalfPiShift{1}, TauScale::One, order,
                                sym, 1);
    QSeries rhs = qs_mul(
        QSeries::monomial(sym, order, -1,
                          LaurentPoly::monomial({-1}, GaussianRational::integer(1))),
        theta_qseries(ThetaIndex{3}, {1}, HalfPiShift{}, TauScale::One, order, sym));
    REQUIRE(qs_sub(lhs, rhs).is_zero());
    REQUIRE(lhs.min_exp() < 0); // the shift genuinely reaches Laurent territory
}

TEST_CASE("pochhammer ladders") {
    auto sym = one_sym();
    SECTION("(q^2;q^2) truncations") {
        REQUIRE(pochhammer_qseries(PochKind::q2_q2, 3, sym) == QSeries::one(sym, 3));
        QSeries o8 = pochhammer_qseries(PochKind::q2_q2, 8, sym);
        REQUIRE(o8.coeff(0) == cpoly(1));
        REQUIRE(o8.coeff(8) == cpoly(-1));
        QSeries o16 = pochhammer_qseries(PochKind::q2_q2, 16, sym);
        REQUIRE(o16.coeff(8) == cpoly(-1));
        REQUIRE(o16.coeff(16) == cpoly(-1)); // -Q^8 - Q^16; the +Q^24 cross term is cut
    }
    SECTION("(-q^4;q^4) has positive signs") {
        QSeries s = pochhammer_qseries(PochKind::neg_q4_q4, 16, sym);
        REQUIRE(s.coeff(16) == cpoly(1));
    }
}

TEST_CASE("truncation coherence between orders") {
    auto sym = AngleSymbols::of({"x", "y"});
    QSeries lo = theta_qseries(ThetaIndex{2}, {1, -1}, HalfPiShift{}, TauScale::One, 12, sym);
    QSeries hi = theta_qseries(ThetaIndex{2}, {1, -1}, HalfPiShift{}, TauScale::One, 28, sym);
    QSeries plo = qs_mul(lo, lo);
    QSeries phi = qs_mul(hi, hi);
    for (int e = 0; e <= plo.order(); ++e) REQUIRE(plo.coeff(e) == phi.coeff(e));
}

TEST_CASE("numeric substitution matches the floating evaluator") {
    auto prec = bits(128);
    const int order = 160;
    auto sym = one_sym();
    SECTION("value count must match the symbol table") {
        QSeries s = QSeries::one(sym, 4);
        auto p = from_real_nome(qt_test::frozen("0.2", 128), prec);
        REQUIRE_THROWS_AS(evaluate_qseries(s, p, {}, prec), SymbolMismatch);
    }
    for (auto q_str : {"0.2", "0.3"}) {
        auto p = from_real_nome(qt_test::frozen(q_str, 128), prec);
        Cplx z = Cplx::of(0.3, 0.1, 128);
        for (int j = 1; j <= 4; ++j) {
            QSeries s = theta_qseries(ThetaIndex{j}, {1}, HalfPiShift{}, TauScale::One,
                                      order, sym);
            Cplx formal = evaluate_qseries(s, p, {z}, prec);
            Cplx direct = theta_series(ThetaIndex{j}, z, p, prec);
            // tolerance: eps plus the size of the first dropped shell
            Real tail = abs(q_pow(p, order + 1, 4)) * Real::of(8L, 128);
            REQUIRE(abs(formal - direct) <= prec.eps + tail);
        }
    }
}
