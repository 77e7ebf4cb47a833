#include "qtheta/corpus.hpp"
#include "qtheta/dsl_eval.hpp"

#include <fstream>
#include <sstream>

#include "test_support.hpp"

using namespace qtheta;
using namespace qtheta::dsl;
using qt_test::bits;

TEST_CASE("tokenizer") {
    SECTION("call with base exponent") {
        auto toks = tokenize("sinq[2](x+y)");
        std::vector<TokKind> kinds;
        for (const auto& t : toks) kinds.push_back(t.kind);
        REQUIRE(kinds == std::vector<TokKind>{TokKind::Ident, TokKind::LBracket, TokKind::Int,
                                              TokKind::RBracket, TokKind::LParen, TokKind::Ident,
                                              TokKind::Plus, TokKind::Ident, TokKind::RParen,
                                              TokKind::End});
        REQUIRE(toks[0].text == "sinq");
        REQUIRE(toks[2].value == 2);
    }
    SECTION("comments are skipped") {
        auto toks = tokenize("# comment\npi");
        REQUIRE(toks.size() == 2);
        REQUIRE(toks[0].kind == TokKind::KwPi);
        REQUIRE(toks[0].span.line == 2);
    }
    SECTION("adjacent p/q is one rational") {
        auto toks = tokenize("3/4");
        REQUIRE(toks[0].kind == TokKind::Rational);
        REQUIRE(toks[0].value == mpq_class(3, 4));
    }
    SECTION("spaced division stays three tokens") {
        auto toks = tokenize("3 / 4");
        REQUIRE(toks.size() == 4);
        REQUIRE(toks[1].kind == TokKind::Slash);
    }
    SECTION("spans point into the source") {
        auto toks = tokenize("a +\n  bb");
        REQUIRE(toks[2].span.line == 2);
        REQUIRE(toks[2].span.column == 3);
        REQUIRE(toks[2].text == "bb");
    }
    SECTION("illegal character") {
        try {
            tokenize("x + @y");
            FAIL("expected LexError");
        } catch (const LexError& e) {
            REQUIRE(e.span().column == 5);
        }
    }
}

TEST_CASE("parser structure and errors") {
    SECTION("precedence and associativity") {
        ExprPtr e = parse_expression("a - b - c");
        REQUIRE(e->kind == ExprKind::Sub);
        REQUIRE(e->a->kind == ExprKind::Sub);
        ExprPtr f = parse_expression("a + b * c^2");
        REQUIRE(f->kind == ExprKind::Add);
        REQUIRE(f->b->kind == ExprKind::Mul);
        REQUIRE(f->b->b->kind == ExprKind::Pow);
        ExprPtr g = parse_expression("-a^2");
        REQUIRE(g->kind == ExprKind::Neg);
        REQUIRE(g->a->kind == ExprKind::Pow);
    }
    SECTION("missing rhs clause") {
        REQUIRE_THROWS_AS(parse("identity \"x\" { vars: a; lhs: a; }"), ParseError);
    }
    SECTION("unknown variable is rejected at parse time") {
        REQUIRE_THROWS_AS(parse("identity \"x\" { vars: a; lhs: a; rhs: b; }"), ParseError);
    }
    SECTION("where-bindings see only earlier names") {
        REQUIRE_THROWS_AS(
            parse("identity \"x\" { vars: a; where: u = v; v = a; lhs: u; rhs: a; }"),
            ParseError);
        auto ok = parse("identity \"x\" { vars: a; where: u = a; v = u; lhs: v; rhs: a; }");
        REQUIRE(ok.size() == 1);
        REQUIRE(ok[0].where_bindings.size() == 2);
    }
    SECTION("tau argument forms") {
        REQUIRE(parse_expression("theta1(z, tau)")->tau_arg == TauArg::One);
        REQUIRE(parse_expression("theta1(z, 2*tau)")->tau_arg == TauArg::Double);
        REQUIRE(parse_expression("theta1(z, tau/2)")->tau_arg == TauArg::Half);
        REQUIRE(parse_expression("theta1(z, -1/tau)")->tau_arg == TauArg::S);
        REQUIRE_THROWS_AS(parse_expression("theta1(z, 3*tau)"), ParseError);
        REQUIRE_THROWS_AS(parse_expression("sinq(z, tau)"), ParseError);
    }
    SECTION("base exponent bracket placement") {
        REQUIRE(parse_expression("sinq[3](z)")->base_exp == 3);
        REQUIRE_THROWS_AS(parse_expression("sin[2](z)"), ParseError);
        REQUIRE_THROWS_AS(parse_expression("sinq[0](z)"), ParseError);
    }
    SECTION("zero power is rejected") {
        REQUIRE_THROWS_AS(parse_expression("a^0"), ParseError);
    }
}

TEST_CASE("pretty-print round trip") {
    SECTION("fixed expressions") {
        for (const char* text : {
                 "a + b * c", "(a + b) * c", "a - (b - c)", "-(a + b)", "-a^2",
                 "sinq[2](x)^2 * cosq(y)^2", "theta1(z + pi/2, -1/tau)",
                 "piq() / piq[2]()", "thetanull2(2*tau)", "3/4 * x", "a / (b / c)",
                 "expi(-(pi * tau/4 + z)) * theta3(z)",
             }) {
            ExprPtr e = parse_expression(text);
            ExprPtr again = parse_expression(pretty_print(e));
            INFO(text << "  ->  " << pretty_print(e));
            REQUIRE(equal(e, again));
        }
    }
    SECTION("randomized ASTs") {
        qt_test::Rng rng{420017};
        const std::vector<std::string> vars = {"a", "b", "x", "y"};
        const std::vector<FuncName> unary_funcs = {
            FuncName::SinQ, FuncName::CosQ, FuncName::CcsQ, FuncName::SsnQ,
            FuncName::Sin,  FuncName::Cos,  FuncName::ExpI, FuncName::Theta1,
            FuncName::Theta2, FuncName::Theta3, FuncName::Theta4,
            FuncName::Theta1P, FuncName::Theta4P};
        auto gen = [&](int depth, auto&& self) -> ExprPtr {
            SourceSpan sp{};
            if (depth <= 0 || rng.raw() % 5 == 0) {
                switch (rng.raw() % 4) {
                    case 0: return Expr::var(vars[rng.raw() % vars.size()], sp);
                    case 1: return Expr::pi(sp);
                    case 2: return Expr::lit(mpq_class(1 + static_cast<long>(rng.raw() % 9)), sp);
                    default: {
                        mpq_class v(1 + static_cast<long>(rng.raw() % 7),
                                    2 + static_cast<long>(rng.raw() % 5));
                        v.canonicalize();
                        return Expr::lit(v, sp);
                    }
                }
            }
            switch (rng.raw() % 8) {
                case 0: return Expr::binary(ExprKind::Add, self(depth - 1, self),
                                            self(depth - 1, self), sp);
                case 1: return Expr::binary(ExprKind::Sub, self(depth - 1, self),
                                            self(depth - 1, self), sp);
                case 2: return Expr::binary(ExprKind::Mul, self(depth - 1, self),
                                            self(depth - 1, self), sp);
                case 3: return Expr::binary(ExprKind::Div, self(depth - 1, self),
                                            self(depth - 1, self), sp);
                case 4: return Expr::neg(self(depth - 1, self), sp);
                case 5: {
                    long k = 1 + static_cast<long>(rng.raw() % 3);
                    if (rng.raw() % 3 == 0) k = -k;
                    return Expr::pow(self(depth - 1, self), k, sp);
                }
                case 6: {
                    FuncName f = unary_funcs[rng.raw() % unary_funcs.size()];
                    bool qtrig = f == FuncName::SinQ || f == FuncName::CosQ ||
                                 f == FuncName::CcsQ || f == FuncName::SsnQ;
                    bool theta = !qtrig && f != FuncName::Sin && f != FuncName::Cos &&
                                 f != FuncName::ExpI;
                    int base = qtrig ? 1 + static_cast<int>(rng.raw() % 4) : 1;
                    TauArg ta = theta ? static_cast<TauArg>(rng.raw() % 4) : TauArg::One;
                    return Expr::call(f, base, self(depth - 1, self), ta, sp);
                }
                default: {
                    if (rng.raw() % 2 == 0) {
                        return Expr::call(FuncName::PiQ, 1 + static_cast<int>(rng.raw() % 3),
                                          nullptr, TauArg::One, sp);
                    }
                    TauArg ta = static_cast<TauArg>(rng.raw() % 4);
                    FuncName f = static_cast<FuncName>(
                        static_cast<int>(FuncName::ThetaNull1) + rng.raw() % 4);
                    return Expr::call(f, 1, nullptr, ta, sp);
                }
            }
        };
        for (int i = 0; i < 100; ++i) {
            ExprPtr e = gen(4, gen);
            std::string text = pretty_print(e);
            INFO(text);
            ExprPtr again = parse_expression(text);
            REQUIRE(equal(e, again));
        }
    }
    SECTION("full declarations") {
        for (const auto& d : builtin_corpus()) {
            auto reparsed = parse(pretty_print(d));
            REQUIRE(reparsed.size() == 1);
            REQUIRE(equal(d, reparsed[0]));
        }
    }
}

TEST_CASE("builtin corpus shape") {
    const auto& corpus = builtin_corpus();
    REQUIRE(corpus.size() >= 24);

    auto find = [&](const std::string& n) -> const IdentityDecl* {
        for (const auto& d : corpus) {
            if (d.name == n) return &d;
        }
        return nullptr;
    };
    for (const char* name :
         {"gosper_1_15", "thm_7_2", "thm_7_5", "rel_1_3", "rel_1_20", "rel_2_8", "rel_7_4",
          "rel_10_1", "rel_10_2", "rel_6_4", "rel_6_5", "rel_4_1", "triple_product",
          "q_double_2", "q_double_3", "abo_touk_q4", "abo_touk_q3", "ptolemy_ccs",
          "ptolemy_ssn", "cons_7_6", "cons_7_6_cos", "cons_7_3", "cons_ssn_sin",
          "cons_ssn_cos", "prod_sin_diff", "prod_cos_diff", "classical_ptolemy",
          "classical_sum_diff"}) {
        INFO(name);
        REQUIRE(find(name) != nullptr);
    }

    REQUIRE(find("gosper_1_15")->vars == std::vector<std::string>{"a", "b", "x", "y"});
    const auto* ptolemy = find("ptolemy_ccs");
    REQUIRE(ptolemy->where_bindings.size() == 1);
    REQUIRE(ptolemy->where_bindings[0].first == "delta");
    REQUIRE(ptolemy->has_tag("constrained"));
    REQUIRE(find("classical_ptolemy")->has_tag("limit-q1"));
    REQUIRE(find("rel_6_5")->vars.empty());
}

TEST_CASE("shipped corpus file parses to the builtin declarations") {
    std::ifstream in(std::string(QTHETA_SOURCE_DIR) + "/data/builtin.qid");
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    REQUIRE(ss.str() == std::string(kBuiltinCorpusText));
    auto decls = parse(ss.str());
    const auto& corpus = builtin_corpus();
    REQUIRE(decls.size() == corpus.size());
    for (size_t i = 0; i < decls.size(); ++i) {
        INFO(corpus[i].name);
        REQUIRE(equal(decls[i], corpus[i]));
    }
}

TEST_CASE("evaluator") {
    auto prec = bits(128);
    auto p = from_real_nome(qt_test::frozen("0.2", 128), prec);

    SECTION("sinq(pi/2) = 1") {
        Cplx v = eval_expr(parse_expression("sinq(pi/2)"), {}, p, prec);
        REQUIRE(qt_test::close(v, Cplx::of(1L, 128), prec.eps));
    }
    SECTION("cosq at a bound variable") {
        Env env;
        env.emplace("x", Cplx::of(0L, 128));
        Cplx v = eval_expr(parse_expression("cosq(x)"), env, p, prec);
        REQUIRE(qt_test::close(v, Cplx::of(1L, 128), prec.eps));
    }
    SECTION("a product identity residual vanishes at random points") {
        qt_test::Rng rng{83125};
        ExprPtr e = parse_expression(
            "sinq(x+y)*sinq(x-y) - (sinq(x)^2*cosq(y)^2 - cosq(x)^2*sinq(y)^2)");
        for (int i = 0; i < 5; ++i) {
            Env env;
            env.emplace("x", Cplx::of(rng.box(-2, 2, -0.2, 0.2), 128));
            env.emplace("y", Cplx::of(rng.box(-2, 2, -0.2, 0.2), 128));
            Cplx v = eval_expr(e, env, p, prec);
            REQUIRE(abs(v) < prec.eps);
        }
    }
    SECTION("unbound variable") {
        REQUIRE_THROWS_AS(eval_expr(parse_expression("cosq(x)"), {}, p, prec),
                          UnboundVariable);
    }
    SECTION("pole errors carry the call location") {
        Env env;
        env.emplace("z", Cplx{Real::pi(128) / 2, Real::of(0L, 128)});
        try {
            eval_expr(parse_expression("cosq[2](z) / cosq(z)"), env, p, prec);
            FAIL("expected PoleError");
        } catch (const PoleError& e) {
            REQUIRE(std::string(e.what()).find("line") != std::string::npos);
        }
    }
    SECTION("evaluation is referentially transparent") {
        ExprPtr e = parse_expression("ssnq(x) * theta3(x, -1/tau) + piq[2]()");
        Env env;
        env.emplace("x", Cplx::of(0.4, 0.05, 128));
        Cplx v1 = eval_expr(e, env, p, prec);
        Cplx v2 = eval_expr(e, env, p, prec);
        REQUIRE(v1.re == v2.re);
        REQUIRE(v1.im == v2.im);
    }
    SECTION("where-bindings evaluate in order") {
        auto decls = parse(
            "identity \"t\" { vars: a; where: u = a + pi; v = 2 * u; lhs: v; rhs: a; }");
        Env env;
        env.emplace("a", Cplx::of(1L, 128));
        Env full = bind_environment(decls[0], env, p, prec);
        Cplx expected = (Cplx::of(1L, 128) + Cplx{Real::pi(128), Real::of(0L, 128)}) * 2L;
        REQUIRE(qt_test::close(full.at("v"), expected, prec.eps));
    }
}

TEST_CASE("limit-q1 entries use no q-dependent function and hold over the reals") {
    auto prec = bits(128);
    auto p = from_real_nome(qt_test::frozen("0.2", 128), prec);
    qt_test::Rng rng{5150};
    int seen = 0;
    for (const auto& d : builtin_corpus()) {
        if (!d.has_tag("limit-q1")) {
            REQUIRE(uses_q_functions(d));
            continue;
        }
        ++seen;
        REQUIRE_FALSE(uses_q_functions(d));
        for (int i = 0; i < 6; ++i) {
            Env env;
            for (const auto& v : d.vars) {
                env.emplace(v, Cplx::of(rng.uniform(-3, 3), 0.0, 128));
            }
            Env full = bind_environment(d, env, p, prec);
            Cplx diff = eval_expr(d.lhs, full, p, prec) - eval_expr(d.rhs, full, p, prec);
            REQUIRE(abs(diff).to_double() < 1e-12);
        }
    }
    REQUIRE(seen >= 2);
}
