#include "qtheta/harness.hpp"

#include <sstream>

#include "test_support.hpp"

using namespace qtheta;
using namespace qtheta::harness;
using qt_test::bits;

namespace {

const dsl::IdentityDecl& find_decl(const std::string& name) {
    for (const auto& d : dsl::builtin_corpus()) {
        if (d.name == name) return d;
    }
    throw std::runtime_error("no such builtin: " + name);
}

std::string json_of(const VerificationReport& r) {
    std::ostringstream os;
    emit_report(r, ReportFormat::Json, os);
    return os.str();
}

} // namespace

TEST_CASE("run_identity samples deterministically and passes") {
    auto prec = bits(128);
    SampleStrategy s;
    auto res = run_identity(find_decl("gosper_1_15"), s, prec, 1e-25);
    REQUIRE(res.size() == 2); // one summary per tau
    for (const auto& sum : res) {
        REQUIRE(sum.pass);
        REQUIRE(sum.evaluated == 20);
        REQUIRE(sum.skipped == 0);
        REQUIRE(sum.max_rel_residual.to_double() < 1e-25);
        REQUIRE(sum.records.size() == 20);
    }
    auto res2 = run_identity(find_decl("gosper_1_15"), s, prec, 1e-25);
    REQUIRE(res[0].max_rel_residual == res2[0].max_rel_residual);
    REQUIRE(res[0].records[7].env == res2[0].records[7].env);
}

TEST_CASE("classical identities sample over real angles") {
    auto prec = bits(128);
    SampleStrategy s;
    auto res = run_identity(find_decl("classical_ptolemy"), s, prec, 1e-25);
    for (const auto& sum : res) {
        REQUIRE(sum.pass);
        for (const auto& rec : sum.records) {
            for (const auto& [name, v] : rec.env) REQUIRE(v.imag() == 0.0);
        }
    }
}

TEST_CASE("a mutated identity fails loudly") {
    auto prec = bits(128);
    SampleStrategy s;
    auto decls = dsl::parse(
        "identity \"mutated\" { vars: x, y;"
        " lhs: sinq(x + y) * sinq(x - y);"
        " rhs: sinq(x)^2 * cosq(y)^2 + cosq(x)^2 * sinq(y)^2; }");
    auto res = run_identity(decls[0], s, prec, 1e-25);
    REQUIRE_FALSE(res[0].pass);
    REQUIRE(res[0].max_rel_residual.to_double() > 1e-3);
    REQUIRE(res[0].diagnosis == "max relative residual exceeds tolerance");
}

TEST_CASE("skip accounting on a pinned pole") {
    auto prec = bits(128);
    SampleStrategy s;
    s.count = 6;
    auto decls = dsl::parse(
        "identity \"pinned_pole\" { vars: z;"
        " lhs: cosq[2](pi/2) / cosq(pi/2);"
        " rhs: ccsq(pi/2); }");
    auto res = run_identity(decls[0], s, prec, 1e-25);
    const auto& sum = res[0];
    REQUIRE_FALSE(sum.pass);
    REQUIRE(sum.diagnosis == "more than half of the samples were skipped");
    REQUIRE(sum.skipped == 6);
    REQUIRE(sum.evaluated + sum.skipped == sum.requested);
    REQUIRE(sum.skip_reasons.at("pole") == 6);
}

TEST_CASE("run_corpus passes everything and reports per tau") {
    auto prec = bits(128);
    SampleStrategy s;
    s.count = 6; // keep the unit test quick; acceptance runs the full 20
    auto rep = run_corpus(s, prec, 1e-25);
    REQUIRE(rep.all_passed());
    REQUIRE(rep.numeric.size() == dsl::builtin_corpus().size() * 2);
    REQUIRE(rep.exact.size() == 6);
    for (const auto& e : rep.exact) REQUIRE(e.pass);

    SECTION("user corpus entries are appended") {
        auto extra = dsl::parse(
            "identity \"user_shift\" { vars: z; lhs: theta1(z + pi/2); rhs: theta2(z); }");
        auto rep2 = run_corpus(s, prec, 1e-25, extra);
        REQUIRE(rep2.numeric.size() == rep.numeric.size() + 2);
        REQUIRE(rep2.all_passed());
    }
}

TEST_CASE("byte-identical reports for identical inputs") {
    auto prec = bits(128);
    SampleStrategy s;
    s.count = 4;
    std::string a = json_of(run_corpus(s, prec, 1e-25));
    std::string b = json_of(run_corpus(s, prec, 1e-25));
    REQUIRE(a == b);

    SECTION("and a different seed changes the samples") {
        SampleStrategy s2 = s;
        s2.seed = 43;
        REQUIRE(json_of(run_corpus(s2, prec, 1e-25)) != a);
    }
}

TEST_CASE("tolerance scaling: double precision, tolerance eps(2 bits)") {
    auto prec = bits(256);
    SampleStrategy s;
    s.count = 4;
    double tol = Real::two_pow(16 - 256, 64).to_double();
    auto rep = run_corpus(s, prec, tol);
    for (const auto& sum : rep.numeric) {
        INFO(sum.name << " residual " << sum.max_rel_residual.to_double());
        REQUIRE(sum.pass);
    }
}

TEST_CASE("exact runner") {
    SECTION("defaults all pass") {
        auto reports = run_exact(default_exact_orders());
        REQUIRE(reports.size() == 6);
        for (const auto& r : reports) {
            INFO(r.name);
            REQUIRE(r.pass);
        }
    }
    SECTION("riemann_L at minimum order") {
        auto reports = run_exact({{"riemann_L", 4}});
        for (const auto& r : reports) {
            if (r.name == "riemann_L") REQUIRE((r.pass && r.order == 4));
        }
    }
    SECTION("odd doubling order propagates GridError") {
        REQUIRE_THROWS_AS(run_exact({{"doubling", 61}}), GridError);
    }
    SECTION("unknown check name rejected") {
        REQUIRE_THROWS_AS(run_exact({{"nonsense", 10}}), DomainError);
    }
}

TEST_CASE("limit sweeps") {
    auto prec = bits(256);
    SECTION("deviations strictly decrease toward q = 1") {
        auto rows = limit_sweep_trig({0.5, 0.8, 0.9}, 0.37, prec);
        REQUIRE(rows.size() == 3);
        REQUIRE(strictly_decreasing(rows));
    }
    SECTION("at w = 0 all deviations vanish exactly") {
        auto rows = limit_sweep_trig({0.5, 0.8}, 0.0, prec);
        for (const auto& r : rows) {
            REQUIRE(r.sin_deviation.is_zero());
            REQUIRE(r.cos_deviation.is_zero());
        }
    }
    SECTION("identities hold at each q, not only in the limit") {
        SampleStrategy s;
        s.count = 5;
        auto rows = limit_sweep_identity(find_decl("gosper_1_15"), {0.5, 0.8}, s, bits(128));
        for (const auto& r : rows) REQUIRE(r.max_rel_residual.to_double() < 1e-25);
    }
    SECTION("invalid q lists are rejected") {
        REQUIRE_THROWS_AS(limit_sweep_trig({0.8, 0.5}, 0.37, prec), DomainError);
        REQUIRE_THROWS_AS(limit_sweep_trig({0.5, 1.0}, 0.37, prec), DomainError);
        REQUIRE_THROWS_AS(limit_sweep_trig({}, 0.37, prec), DomainError);
    }
}

TEST_CASE("json report round-trips") {
    auto prec = bits(128);
    SampleStrategy s;
    s.count = 3;
    auto rep = run_corpus(s, prec, 1e-25);
    std::string emitted = json_of(rep);
    VerificationReport parsed = parse_report(emitted);
    REQUIRE(json_of(parsed) == emitted);
    REQUIRE(parsed.seed == rep.seed);
    REQUIRE(parsed.bits == rep.bits);
    REQUIRE(parsed.numeric.size() == rep.numeric.size());
}

TEST_CASE("text report shape") {
    auto prec = bits(128);
    SampleStrategy s;
    s.count = 2;
    auto rep = run_corpus(s, prec, 1e-25);
    std::ostringstream os;
    emit_report(rep, ReportFormat::Text, os);
    std::string text = os.str();
    REQUIRE(text.find("seed=42") != std::string::npos);
    REQUIRE(text.find("bits=128") != std::string::npos);
    for (const auto& d : dsl::builtin_corpus()) {
        REQUIRE(text.find(d.name) != std::string::npos);
    }
    REQUIRE(text.find("PASS") != std::string::npos);
    REQUIRE(text.find("result: PASS") != std::string::npos);
}

TEST_CASE("report file output") {
    auto prec = bits(128);
    SampleStrategy s;
    s.count = 2;
    auto rep = run_corpus(s, prec, 1e-25);
    SECTION("writes and re-reads through a file") {
        std::string path = "/tmp/qtheta_report_test.json";
        emit_report(rep, ReportFormat::Json, path);
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        REQUIRE(json_of(parse_report(ss.str())) == ss.str());
    }
    SECTION("unwritable destination raises IoError") {
        REQUIRE_THROWS_AS(emit_report(rep, ReportFormat::Json, "/nonexistent-dir/r.json"),
                          IoError);
    }
}

TEST_CASE("complex literal parsing") {
    using harness::detail::parse_complex_double;
    REQUIRE(parse_complex_double("1.2i") == std::complex<double>{0.0, 1.2});
    REQUIRE(parse_complex_double("0.3+1.1i") == std::complex<double>{0.3, 1.1});
    REQUIRE(parse_complex_double("-0.3-1.1i") == std::complex<double>{-0.3, -1.1});
    REQUIRE(parse_complex_double("2") == std::complex<double>{2.0, 0.0});
    REQUIRE(parse_complex_double("1e-05+2e-06i") == std::complex<double>{1e-05, 2e-06});
    REQUIRE(parse_complex_double("-i") == std::complex<double>{0.0, -1.0});
    REQUIRE(parse_complex_double("0.5 + 0.25i") == std::complex<double>{0.5, 0.25});
    REQUIRE_THROWS_AS(parse_complex_double("wat"), DomainError);
}
