// Command-line front end: expression evaluation, corpus verification, exact
// series checks, and q->1 limit sweeps. Exit code 0 when every requested
// check passes, 1 on any FAIL, 2 on usage or parse errors.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qtheta/harness.hpp"

namespace {

using namespace qtheta;

std::complex<double> cplx_arg(const std::string& text) {
    return harness::detail::parse_complex_double(text);
}

// Decimal complex literal promoted at full working precision: "--q 0.35
// --bits 200" must mean the decimal 0.35, not the nearest double.
Cplx cplx_decimal(const std::string& text, int bits) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    auto fail = [&] { return DomainError("unparsable complex number: " + s); };
    auto num_end = [&](size_t from) {
        double probe = 0.0;
        size_t start = from;
        if (start < s.size() && (s[start] == '+' || s[start] == '-')) ++start;
        auto [p, ec] = std::from_chars(s.data() + start, s.data() + s.size(), probe);
        if (ec != std::errc{} || p == s.data() + start) throw fail();
        return static_cast<size_t>(p - s.data());
    };
    Real zero = Real::of(0L, bits);
    if (s == "i" || s == "+i") return Cplx{zero, Real::of(1L, bits)};
    if (s == "-i") return Cplx{std::move(zero), Real::of(-1L, bits)};
    size_t end1 = num_end(0);
    std::string first = s.substr(0, end1);
    if (end1 == s.size()) return Cplx{Real::from_string(first, bits), std::move(zero)};
    if (s.substr(end1) == "i") return Cplx{std::move(zero), Real::from_string(first, bits)};
    if (s[end1] != '+' && s[end1] != '-') throw fail();
    if (s.substr(end1) == "+i" || s.substr(end1) == "-i") {
        return Cplx{Real::from_string(first, bits), Real::of(s[end1] == '-' ? -1L : 1L, bits)};
    }
    size_t end2 = num_end(end1);
    if (s.substr(end2) != "i") throw fail();
    return Cplx{Real::from_string(first, bits),
                Real::from_string(s.substr(end1, end2 - end1), bits)};
}

dsl::Env parse_env(const std::string& text, int bits) {
    dsl::Env env;
    if (text.empty()) return env;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw DomainError("--env entries look like name=value; got '" + item + "'");
        }
        std::string name = item.substr(0, eq);
        Cplx v = cplx_decimal(item.substr(eq + 1), bits);
        env.erase(name);
        env.emplace(std::move(name), std::move(v));
    }
    return env;
}

ModularParam param_from_options(const std::string& tau_text, const std::string& q_text,
                                int bits, const Precision& prec) {
    if (!tau_text.empty()) {
        return make_param(cplx_decimal(tau_text, bits), prec);
    }
    return from_real_nome(Real::from_string(q_text, bits), prec);
}

int run_eval(const std::string& expr_text, const std::string& tau_text,
             const std::string& q_text, const std::string& env_text, int bits,
             bool product_form) {
    auto prec = Precision::make(bits);
    dsl::ExprPtr e = dsl::parse_expression(expr_text);
    ModularParam p = param_from_options(tau_text, q_text, bits, prec);
    dsl::Env env = parse_env(env_text, bits);
    dsl::EvalOptions opts;
    if (product_form) opts.ccs_ssn_form = EvalForm::Product;
    Cplx v = dsl::eval_expr(e, env, p, prec, opts);
    std::cout << v.str(harness::detail::full_digits(bits)) << "\n";
    return 0;
}

int run_verify(const std::vector<std::string>& corpus_files,
               const std::vector<std::string>& tau_texts, int bits, double tol, int samples,
               std::uint64_t seed, const std::string& format, const std::string& out_path,
               bool product_form) {
    auto prec = Precision::make(bits);
    harness::SampleStrategy strat;
    strat.count = samples;
    strat.seed = seed;
    if (!tau_texts.empty()) {
        strat.tau_set.clear();
        for (const auto& t : tau_texts) strat.tau_set.push_back(cplx_arg(t));
    }
    std::vector<dsl::IdentityDecl> extra;
    for (const auto& path : corpus_files) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open corpus file " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        for (auto& d : dsl::parse(ss.str())) extra.push_back(std::move(d));
    }
    dsl::EvalOptions opts;
    if (product_form) opts.ccs_ssn_form = EvalForm::Product;

    harness::VerificationReport rep = harness::run_corpus(strat, prec, tol, extra, opts);
    harness::ReportFormat fmt =
        format == "json" ? harness::ReportFormat::Json : harness::ReportFormat::Text;
    if (out_path.empty()) {
        harness::emit_report(rep, fmt, std::cout);
    } else {
        harness::emit_report(rep, fmt, out_path);
    }
    return rep.all_passed() ? 0 : 1;
}

int run_exact_cmd(const std::vector<std::string>& order_args, const std::string& format) {
    auto orders = harness::default_exact_orders();
    for (const auto& entry : order_args) {
        auto eq = entry.find('=');
        if (eq == std::string::npos) {
            throw DomainError("--order entries look like name=N; got '" + entry + "'");
        }
        std::string name = entry.substr(0, eq);
        int n = 0;
        try {
            n = std::stoi(entry.substr(eq + 1));
        } catch (const std::exception&) {
            throw DomainError("--order value is not an integer in '" + entry + "'");
        }
        if (orders.find(name) == orders.end()) {
            throw DomainError("unknown exact check '" + name + "'");
        }
        orders[name] = n;
    }
    harness::VerificationReport rep;
    rep.exact = harness::run_exact(orders);
    if (format == "json") {
        harness::emit_report(rep, harness::ReportFormat::Json, std::cout);
    } else {
        for (const auto& x : rep.exact) {
            std::cout << x.name << " (order " << x.order << "): "
                      << (x.pass ? "PASS" : "FAIL");
            if (x.witness) {
                std::cout << "  first nonzero: Q^" << x.witness->q_exp << " * "
                          << x.witness->monomial << " = " << x.witness->value;
            }
            std::cout << "\n";
        }
    }
    return rep.all_passed() ? 0 : 1;
}

int run_limits(std::vector<double> qs, double angle, int bits) {
    auto prec = Precision::make(bits);
    if (qs.empty()) qs = {0.5, 0.8, 0.9};
    auto rows = harness::limit_sweep_trig(qs, angle, prec);
    std::printf("%-8s %-24s %-24s\n", "q", "|sinq - sin|", "|cosq - cos|");
    for (const auto& r : rows) {
        std::printf("%-8g %-24s %-24s\n", r.q, r.sin_deviation.str(6).c_str(),
                    r.cos_deviation.str(6).c_str());
    }
    bool ok = true;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].sin_deviation > rows[i - 1].sin_deviation) ok = false;
        if (rows[i].cos_deviation > rows[i - 1].cos_deviation) ok = false;
    }
    std::cout << (ok ? "non-increasing: yes" : "non-increasing: NO") << "\n";
    return ok ? 0 : 1;
}

int run_corpus_list() {
    for (const auto& d : dsl::builtin_corpus()) {
        std::string vars;
        for (size_t i = 0; i < d.vars.size(); ++i) vars += (i ? "," : "") + d.vars[i];
        std::string tags;
        for (size_t i = 0; i < d.tags.size(); ++i) tags += (i ? "," : "") + d.tags[i];
        std::printf("%-24s vars=%-20s %s\n", d.name.c_str(), vars.c_str(), tags.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolkit for Jacobi theta functions and q-trigonometry"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qtheta::kVersion));

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate a single expression");
    std::string expr_text, tau_text, q_text, env_text;
    int eval_bits = 128;
    bool eval_product = false;
    eval->add_option("--expr", expr_text, "expression text")->required();
    auto* tau_opt = eval->add_option("--tau", tau_text, "tau as re+imi (Im > 0)");
    auto* q_opt = eval->add_option("--q", q_text, "real nome in (0,1), read as a decimal");
    eval->add_option("--env", env_text, "comma-separated name=value bindings");
    eval->add_option("--bits", eval_bits, "working precision in bits")->check(CLI::Range(53, 100000));
    eval->add_flag("--product-form", eval_product, "evaluate ccsq/ssnq in product form");
    tau_opt->excludes(q_opt);

    // verify
    auto* verify = app.add_subcommand("verify", "run the identity corpus numerically");
    std::vector<std::string> corpus_files, verify_taus;
    int verify_bits = 128, samples = 20;
    double tol = 1e-25;
    std::uint64_t seed = 42;
    std::string verify_format = "text", out_path;
    bool verify_product = false;
    verify->add_option("--corpus", corpus_files, "additional .qid corpus files");
    verify->add_option("--bits", verify_bits, "working precision in bits")->check(CLI::Range(53, 100000));
    verify->add_option("--tol", tol, "relative residual tolerance");
    verify->add_option("--samples", samples, "samples per identity per tau")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "sampling seed");
    verify->add_option("--tau", verify_taus, "tau values (repeatable)");
    verify->add_option("--format", verify_format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    verify->add_option("--out", out_path, "write the report to this path");
    verify->add_flag("--product-form", verify_product,
                     "cross-check ccsq/ssnq in product form (poles are resampled)");

    // exact
    auto* exact = app.add_subcommand("exact", "run the exact series verifications");
    std::vector<std::string> order_args;
    std::string exact_format = "text";
    exact->add_option("--order", order_args, "per-check truncation order, name=N (repeatable)");
    exact->add_option("--format", exact_format, "output format")
        ->check(CLI::IsMember({"json", "text"}));

    // limits
    auto* limits = app.add_subcommand("limits", "q -> 1 deviation sweep for sinq/cosq");
    std::vector<double> limit_qs;
    double angle = 0.37;
    int limit_bits = 256;
    limits->add_option("--q", limit_qs, "real nomes, increasing (repeatable)");
    limits->add_option("--angle", angle, "real angle w");
    limits->add_option("--bits", limit_bits, "working precision in bits")->check(CLI::Range(53, 100000));

    // corpus
    auto* corpus = app.add_subcommand("corpus", "corpus utilities");
    auto* corpus_list = corpus->add_subcommand("list", "list built-in identities");
    corpus->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) {
            if (tau_text.empty() && q_text.empty()) {
                std::cerr << "eval: provide --tau or --q\n";
                return 2;
            }
            return run_eval(expr_text, tau_text, q_text, env_text, eval_bits, eval_product);
        }
        if (verify->parsed()) {
            return run_verify(corpus_files, verify_taus, verify_bits, tol, samples, seed,
                              verify_format, out_path, verify_product);
        }
        if (exact->parsed()) {
            return run_exact_cmd(order_args, exact_format);
        }
        if (limits->parsed()) {
            return run_limits(limit_qs, angle, limit_bits);
        }
        if (corpus->parsed() && corpus_list->parsed()) {
            return run_corpus_list();
        }
    } catch (const qtheta::dsl::LexError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const qtheta::dsl::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const qtheta::DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const qtheta::GridError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const qtheta::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
