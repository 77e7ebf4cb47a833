#pragma once

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qtheta/corpus.hpp"
#include "qtheta/dsl_eval.hpp"
#include "qtheta/qformal.hpp"
#include "qtheta/version.hpp"

namespace qtheta::harness {

using dsl::IdentityDecl;

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

struct SampleStrategy {
    int count = 20;
    std::pair<double, double> real_box{-2.0, 2.0};
    std::pair<double, double> imag_box{-0.2, 0.2};
    std::uint64_t seed = 42;
    std::vector<std::complex<double>> tau_set{{0.0, 1.2}, {0.3, 1.1}};

    void validate() const {
        if (count < 1) throw DomainError("SampleStrategy: count must be >= 1");
        if (!(real_box.first < real_box.second) || !(imag_box.first < imag_box.second)) {
            throw DomainError("SampleStrategy: boxes need lo < hi");
        }
        if (tau_set.empty()) throw DomainError("SampleStrategy: tau_set is empty");
        for (const auto& t : tau_set) {
            if (!(t.imag() > 0)) throw DomainError("SampleStrategy: every tau needs Im > 0");
        }
    }
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

/// Deterministic per-(identity, tau) stream; insensitive to evaluation order.
inline std::mt19937_64 stream_for(std::uint64_t seed, std::string_view name, size_t tau_index) {
    std::uint64_t x = seed ^ fnv1a(name) ^ (0x9E3779B97F4A7C15ULL * (tau_index + 1));
    // splitmix64 scramble so neighbouring seeds decorrelate
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    x = x ^ (x >> 31);
    return std::mt19937_64{x};
}

inline double draw_uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(g() >> 11) * 0x1.0p-53);
}

inline std::string fmt_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

inline std::string fmt_complex(const std::complex<double>& z) {
    std::string s = fmt_double(z.real());
    s += (z.imag() < 0 ? "-" : "+");
    s += fmt_double(std::fabs(z.imag()));
    s += "i";
    return s;
}

inline int full_digits(int bits) {
    return static_cast<int>(std::ceil(bits * 0.30102999566398115)) + 2;
}

inline bool read_double(std::string_view& s, double& out) {
    double sign = 1.0;
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') sign = -1.0;
        ++i;
    }
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
    if (ec != std::errc{} || p == s.data() + i) return false;
    out = sign * v;
    s.remove_prefix(static_cast<size_t>(p - s.data()));
    return true;
}

/// "a+bi", "a-bi", "bi", "a", "i", "-i"; exponent forms like 1e-05 included.
inline std::complex<double> parse_complex_double(std::string_view s) {
    std::string compact;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    }
    std::string_view v{compact};
    if (v == "i" || v == "+i") return {0.0, 1.0};
    if (v == "-i") return {0.0, -1.0};
    double first = 0.0;
    if (!read_double(v, first)) throw DomainError("unparsable complex number: " + compact);
    if (v.empty()) return {first, 0.0};
    if (v == "i") return {0.0, first};
    double second = 0.0;
    if ((v == "+i" || v == "-i")) {
        return {first, v[0] == '-' ? -1.0 : 1.0};
    }
    if (!read_double(v, second) || v != "i") {
        throw DomainError("unparsable complex number: " + compact);
    }
    return {first, second};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

struct ResidualRecord {
    std::string identity;
    std::complex<double> tau;
    std::map<std::string, std::complex<double>> env;
    Real lhs_mag{53};
    Real rhs_mag{53};
    Real abs_residual{53};
    Real rel_residual{53};
};

struct IdentitySummary {
    std::string name;
    std::complex<double> tau;
    int requested = 0;
    int evaluated = 0;
    int skipped = 0;
    std::map<std::string, int> skip_reasons;
    bool pass = false;
    std::string diagnosis; // set when pass == false
    Real max_abs_residual{53};
    Real max_rel_residual{53};
    std::vector<ResidualRecord> records;
    double elapsed_ms = 0.0; // reported in text output only, never in JSON
};

struct VerificationReport {
    std::uint64_t seed = 0;
    int bits = 0;
    double tol = 0.0;
    std::string version{kVersion};
    std::vector<IdentitySummary> numeric;
    std::vector<ExactReport> exact;

    bool all_passed() const {
        for (const auto& s : numeric) {
            if (!s.pass) return false;
        }
        for (const auto& e : exact) {
            if (!e.pass) return false;
        }
        return true;
    }
};

// ---------------------------------------------------------------------------
// Numeric corpus runner
// ---------------------------------------------------------------------------

/// Sample one identity at one tau. Draws come from a stream keyed by (seed,
/// identity, tau index); a sample that trips a pole or a convergence failure
/// is redrawn up to ten times from the same stream and otherwise counted as
/// skipped, so the procedure is reproducible and unbiased.
inline IdentitySummary run_identity_at_tau(const IdentityDecl& d, const SampleStrategy& s,
                                           size_t tau_index, const Precision& prec, double tol,
                                           const dsl::EvalOptions& opts = {}) {
    const auto t_start = std::chrono::steady_clock::now();
    const std::complex<double> tau_d = s.tau_set.at(tau_index);
    const mpfr_prec_t bits = prec.bits;
    const bool real_only = d.has_tag("limit-q1");

    IdentitySummary out;
    out.name = d.name;
    out.tau = tau_d;
    out.requested = s.count;
    out.max_abs_residual = Real::of(0L, bits);
    out.max_rel_residual = Real::of(0L, bits);

    ModularParam p = make_param(Cplx::of(tau_d, bits), prec);
    auto rng = detail::stream_for(s.seed, d.name, tau_index);

    for (int sample = 0; sample < s.count; ++sample) {
        bool done = false;
        std::string last_reason = "none";
        for (int attempt = 0; attempt < 10 && !done; ++attempt) {
            std::map<std::string, std::complex<double>> env_d;
            dsl::Env env;
            for (const auto& v : d.vars) {
                double re = detail::draw_uniform(rng, s.real_box.first, s.real_box.second);
                double im =
                    real_only ? 0.0
                              : detail::draw_uniform(rng, s.imag_box.first, s.imag_box.second);
                env_d.emplace(v, std::complex<double>{re, im});
                env.emplace(v, Cplx::of(re, im, bits));
            }
            try {
                dsl::Env full = dsl::bind_environment(d, env, p, prec, opts);
                Cplx lhs = dsl::eval_expr(d.lhs, full, p, prec, opts);
                Cplx rhs = dsl::eval_expr(d.rhs, full, p, prec, opts);
                if (!lhs.is_finite() || !rhs.is_finite()) {
                    last_reason = "non-finite";
                    continue;
                }
                ResidualRecord rec;
                rec.identity = d.name;
                rec.tau = tau_d;
                rec.env = std::move(env_d);
                rec.lhs_mag = abs(lhs);
                rec.rhs_mag = abs(rhs);
                rec.abs_residual = abs(lhs - rhs);
                Real scale = Real::of(1L, bits);
                if (rec.lhs_mag > scale) scale = rec.lhs_mag;
                if (rec.rhs_mag > scale) scale = rec.rhs_mag;
                rec.rel_residual = rec.abs_residual / scale;
                if (rec.abs_residual > out.max_abs_residual) {
                    out.max_abs_residual = rec.abs_residual;
                }
                if (rec.rel_residual > out.max_rel_residual) {
                    out.max_rel_residual = rec.rel_residual;
                }
                out.records.push_back(std::move(rec));
                ++out.evaluated;
                done = true;
            } catch (const PoleError&) {
                last_reason = "pole";
            } catch (const ConvergenceError&) {
                last_reason = "convergence";
            }
        }
        if (!done) {
            ++out.skipped;
            ++out.skip_reasons[last_reason];
        }
    }

    Real tol_r = Real::of(tol, bits);
    if (out.skipped * 2 > out.requested) {
        out.pass = false;
        out.diagnosis = "more than half of the samples were skipped";
    } else if (out.evaluated == 0) {
        out.pass = false;
        out.diagnosis = "no sample could be evaluated";
    } else if (!(out.max_rel_residual <= tol_r)) {
        out.pass = false;
        out.diagnosis = "max relative residual exceeds tolerance";
    } else {
        out.pass = true;
    }
    out.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t_start)
                         .count();
    return out;
}

/// One summary per tau in the strategy, in tau order.
inline std::vector<IdentitySummary> run_identity(const IdentityDecl& d, const SampleStrategy& s,
                                                 const Precision& prec, double tol,
                                                 const dsl::EvalOptions& opts = {}) {
    s.validate();
    std::vector<IdentitySummary> out;
    for (size_t ti = 0; ti < s.tau_set.size(); ++ti) {
        out.push_back(run_identity_at_tau(d, s, ti, prec, tol, opts));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact section
// ---------------------------------------------------------------------------

inline std::map<std::string, int> default_exact_orders() {
    return {{"riemann_L", 40}, {"t3", 40},          {"t2", 40},
            {"doubling", 60},  {"quarter_pi2", 80}, {"triple", 25}};
}

inline std::vector<ExactReport> run_exact(const std::map<std::string, int>& orders) {
    std::vector<ExactReport> out;
    auto order_of = [&](const std::string& name, int fallback) {
        auto it = orders.find(name);
        return it == orders.end() ? fallback : it->second;
    };
    for (const auto& [name, n] : orders) {
        if (name != "riemann_L" && name != "t3" && name != "t2" && name != "doubling" &&
            name != "quarter_pi2" && name != "triple") {
            throw DomainError("run_exact: unknown check '" + name + "'");
        }
        (void)n;
    }
    out.push_back(verify_riemann_L(order_of("riemann_L", 40)));
    out.push_back(verify_prop_t3(order_of("t3", 40)));
    out.push_back(verify_prop_t2(order_of("t2", 40)));
    out.push_back(verify_doubling(order_of("doubling", 60)));
    out.push_back(verify_quarter_pi_squared(order_of("quarter_pi2", 80)));
    out.push_back(verify_triple_product(order_of("triple", 25)));
    return out;
}

// ---------------------------------------------------------------------------
// Corpus runner
// ---------------------------------------------------------------------------

/// Run the built-in corpus (plus any user declarations) numerically and the
/// exact checks at their default orders. The report lists results in a
/// canonical (declaration order, tau order), independent of evaluation order.
inline VerificationReport run_corpus(const SampleStrategy& s, const Precision& prec, double tol,
                                     const std::vector<IdentityDecl>& extra = {},
                                     const dsl::EvalOptions& opts = {}) {
    s.validate();
    VerificationReport rep;
    rep.seed = s.seed;
    rep.bits = prec.bits;
    rep.tol = tol;
    std::vector<const IdentityDecl*> decls;
    for (const auto& d : dsl::builtin_corpus()) decls.push_back(&d);
    for (const auto& d : extra) decls.push_back(&d);
    for (const auto* d : decls) {
        for (size_t ti = 0; ti < s.tau_set.size(); ++ti) {
            rep.numeric.push_back(run_identity_at_tau(*d, s, ti, prec, tol, opts));
        }
    }
    rep.exact = run_exact(default_exact_orders());
    return rep;
}

// ---------------------------------------------------------------------------
// Limit sweeps
// ---------------------------------------------------------------------------

struct LimitRow {
    double q;
    Real sin_deviation;
    Real cos_deviation;
};

inline void check_qs_increasing(const std::vector<double>& qs) {
    if (qs.empty()) throw DomainError("limit_sweep: need at least one q");
    double prev = 0.0;
    for (double q : qs) {
        if (!(q > prev && q < 1.0)) {
            throw DomainError("limit_sweep: qs must be increasing inside (0,1)");
        }
        prev = q;
    }
}

/// |sin_q(w) - sin w| and |cos_q(w) - cos w| per real nome q.
inline std::vector<LimitRow> limit_sweep_trig(const std::vector<double>& qs, double angle,
                                              const Precision& prec) {
    check_qs_increasing(qs);
    std::vector<LimitRow> rows;
    Cplx w = Cplx::of(angle, 0.0, prec.bits);
    Cplx sw = sin(w), cw = cos(w);
    for (double q : qs) {
        auto b = make_qtrig_base(1, from_real_nome(Real::of(q, prec.bits), prec));
        rows.push_back(LimitRow{q, abs(sin_q(w, b, EvalForm::Product, prec) - sw),
                                abs(cos_q(w, b, EvalForm::Product, prec) - cw)});
    }
    return rows;
}

inline bool strictly_decreasing(const std::vector<LimitRow>& rows) {
    for (size_t i = 1; i < rows.size(); ++i) {
        if (!(rows[i].sin_deviation < rows[i - 1].sin_deviation)) return false;
        if (!(rows[i].cos_deviation < rows[i - 1].cos_deviation)) return false;
    }
    return true;
}

struct IdentityLimitRow {
    double q;
    Real max_rel_residual;
};

/// Residual of an identity at each real nome; the identity must hold at every
/// q, not only in the limit.
inline std::vector<IdentityLimitRow> limit_sweep_identity(const IdentityDecl& d,
                                                          const std::vector<double>& qs,
                                                          const SampleStrategy& s,
                                                          const Precision& prec,
                                                          const dsl::EvalOptions& opts = {}) {
    check_qs_increasing(qs);
    std::vector<IdentityLimitRow> rows;
    for (double q : qs) {
        auto p = from_real_nome(Real::of(q, prec.bits), prec);
        auto rng = detail::stream_for(s.seed, d.name, 9000 + rows.size());
        Real worst = Real::of(0L, prec.bits);
        for (int i = 0; i < s.count; ++i) {
            dsl::Env env;
            for (const auto& v : d.vars) {
                env.emplace(v, Cplx::of(detail::draw_uniform(rng, s.real_box.first,
                                                             s.real_box.second),
                                        0.0, prec.bits));
            }
            dsl::Env full = dsl::bind_environment(d, env, p, prec, opts);
            Cplx lhs = dsl::eval_expr(d.lhs, full, p, prec, opts);
            Cplx rhs = dsl::eval_expr(d.rhs, full, p, prec, opts);
            Real scale = Real::of(1L, prec.bits);
            Real ml = abs(lhs), mr = abs(rhs);
            if (ml > scale) scale = ml;
            if (mr > scale) scale = mr;
            Real rel = abs(lhs - rhs) / scale;
            if (rel > worst) worst = rel;
        }
        rows.push_back(IdentityLimitRow{q, std::move(worst)});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Report emission
// ---------------------------------------------------------------------------

enum class ReportFormat { Json, Text };

inline nlohmann::ordered_json report_to_json(const VerificationReport& r) {
    using json = nlohmann::ordered_json;
    const int digits = detail::full_digits(r.bits);
    json meta;
    meta["seed"] = r.seed;
    meta["bits"] = r.bits;
    meta["tol"] = r.tol;
    meta["version"] = r.version;

    json numeric = json::array();
    for (const auto& s : r.numeric) {
        json e;
        e["name"] = s.name;
        e["tau"] = detail::fmt_complex(s.tau);
        e["pass"] = s.pass;
        if (!s.pass) e["diagnosis"] = s.diagnosis;
        e["samples"] = s.requested;
        e["evaluated"] = s.evaluated;
        e["skipped"] = s.skipped;
        json reasons = json::array();
        for (const auto& [reason, count] : s.skip_reasons) {
            reasons.push_back(json{{"reason", reason}, {"count", count}});
        }
        e["skip_reasons"] = std::move(reasons);
        e["max_abs_residual"] = s.max_abs_residual.str(digits);
        e["max_abs_residual_double"] = s.max_abs_residual.to_double();
        e["max_rel_residual"] = s.max_rel_residual.str(digits);
        e["max_rel_residual_double"] = s.max_rel_residual.to_double();
        numeric.push_back(std::move(e));
    }

    json exact = json::array();
    for (const auto& x : r.exact) {
        json e;
        e["name"] = x.name;
        e["order"] = x.order;
        e["pass"] = x.pass;
        if (x.witness) {
            e["witness"] = json{{"q_exp", x.witness->q_exp},
                                {"monomial", x.witness->monomial},
                                {"value", x.witness->value}};
        } else {
            e["witness"] = nullptr;
        }
        exact.push_back(std::move(e));
    }

    json top;
    top["meta"] = std::move(meta);
    top["numeric"] = std::move(numeric);
    top["exact"] = std::move(exact);
    return top;
}

inline void emit_report(const VerificationReport& r, ReportFormat fmt, std::ostream& os) {
    if (fmt == ReportFormat::Json) {
        os << report_to_json(r).dump(2) << "\n";
        return;
    }
    os << "seed=" << r.seed << " bits=" << r.bits << " tol=" << detail::fmt_double(r.tol)
       << " version=" << r.version << "\n\n";
    os << "numeric checks:\n";
    for (const auto& s : r.numeric) {
        char line[256];
        std::snprintf(line, sizeof line, "  %-24s tau=%-12s %-4s rel=%-12.3e n=%d/%d skip=%d %.0fms",
                      s.name.c_str(), detail::fmt_complex(s.tau).c_str(),
                      s.pass ? "PASS" : "FAIL", s.max_rel_residual.to_double(), s.evaluated,
                      s.requested, s.skipped, s.elapsed_ms);
        os << line;
        if (!s.pass) os << "  [" << s.diagnosis << "]";
        os << "\n";
    }
    os << "\nexact checks:\n";
    for (const auto& x : r.exact) {
        os << "  " << x.name << " (order " << x.order << "): " << (x.pass ? "PASS" : "FAIL");
        if (x.witness) {
            os << "  first nonzero: Q^" << x.witness->q_exp << " * " << x.witness->monomial
               << " = " << x.witness->value;
        }
        os << "\n";
    }
    os << "\nresult: " << (r.all_passed() ? "PASS" : "FAIL") << "\n";
}

inline void emit_report(const VerificationReport& r, ReportFormat fmt, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_report: cannot open " + path);
    emit_report(r, fmt, out);
    if (!out.good()) throw IoError("emit_report: write failed for " + path);
}

/// Inverse of the JSON emission (summaries; per-sample records and timing are
/// not part of the wire format).
inline VerificationReport parse_report(const std::string& text) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(text);
    VerificationReport r;
    r.seed = j.at("meta").at("seed").get<std::uint64_t>();
    r.bits = j.at("meta").at("bits").get<int>();
    r.tol = j.at("meta").at("tol").get<double>();
    r.version = j.at("meta").at("version").get<std::string>();
    for (const auto& e : j.at("numeric")) {
        IdentitySummary s;
        s.name = e.at("name").get<std::string>();
        s.tau = detail::parse_complex_double(e.at("tau").get<std::string>());
        s.pass = e.at("pass").get<bool>();
        if (e.contains("diagnosis")) s.diagnosis = e.at("diagnosis").get<std::string>();
        s.requested = e.at("samples").get<int>();
        s.evaluated = e.at("evaluated").get<int>();
        s.skipped = e.at("skipped").get<int>();
        for (const auto& sr : e.at("skip_reasons")) {
            s.skip_reasons[sr.at("reason").get<std::string>()] = sr.at("count").get<int>();
        }
        s.max_abs_residual = Real::from_string(e.at("max_abs_residual").get<std::string>(), r.bits);
        s.max_rel_residual = Real::from_string(e.at("max_rel_residual").get<std::string>(), r.bits);
        r.numeric.push_back(std::move(s));
    }
    for (const auto& e : j.at("exact")) {
        ExactReport x;
        x.name = e.at("name").get<std::string>();
        x.order = e.at("order").get<int>();
        x.pass = e.at("pass").get<bool>();
        if (!e.at("witness").is_null()) {
            x.witness = ExactWitness{e.at("witness").at("q_exp").get<int>(),
                                     e.at("witness").at("monomial").get<std::string>(),
                                     e.at("witness").at("value").get<std::string>()};
        }
        r.exact.push_back(std::move(x));
    }
    return r;
}

} // namespace qtheta::harness
