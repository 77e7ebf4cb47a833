#pragma once

#include <map>
#include <string>
#include <vector>

#include "qtheta/errors.hpp"
#include "qtheta/gaussian_rational.hpp"

namespace qtheta {

/// Ordered table of angle symbols; a monomial's exponent vector is indexed
/// against this.
struct AngleSymbols {
    std::vector<std::string> names;

    static AngleSymbols of(std::vector<std::string> names) {
        if (names.empty()) throw DomainError("AngleSymbols: need at least one symbol");
        for (size_t i = 0; i < names.size(); ++i) {
            for (size_t k = i + 1; k < names.size(); ++k) {
                if (names[i] == names[k]) {
                    throw DomainError("AngleSymbols: duplicate symbol " + names[i]);
                }
            }
        }
        return AngleSymbols{std::move(names)};
    }

    size_t count() const { return names.size(); }

    friend bool operator==(const AngleSymbols& a, const AngleSymbols& b) {
        return a.names == b.names;
    }
};

/// Laurent polynomial over Gaussian rationals: finitely many monomials
/// e^{i(c_1 s_1 + ... + c_n s_n)} keyed by their integer exponent vectors.
/// Zero coefficients are never stored, and the map's lexicographic key order
/// makes "first monomial" deterministic.
class LaurentPoly {
public:
    using Monomial = std::vector<int>;

    LaurentPoly() = default;

    static LaurentPoly monomial(Monomial exps, GaussianRational c) {
        LaurentPoly p;
        if (!c.is_zero()) p.terms_.emplace(std::move(exps), std::move(c));
        return p;
    }

    static LaurentPoly constant(size_t symbol_count, GaussianRational c) {
        return monomial(Monomial(symbol_count, 0), std::move(c));
    }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    const std::map<Monomial, GaussianRational>& terms() const { return terms_; }

    void add_term(const Monomial& exps, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(exps);
        if (it == terms_.end()) {
            terms_.emplace(exps, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma;
                for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    LaurentPoly scaled(const GaussianRational& s) const {
        LaurentPoly r;
        if (s.is_zero()) return r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }

    /// Lexicographically first monomial; meaningful only when nonzero.
    std::pair<Monomial, GaussianRational> first_term() const {
        return *terms_.begin();
    }

    std::string str(const AngleSymbols& symbols) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) out += " + ";
            first = false;
            out += "(" + c.str() + ")";
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                out += "*" + symbols.names[i];
                if (m[i] != 1) out += "^" + std::to_string(m[i]);
            }
        }
        return out;
    }

private:
    std::map<Monomial, GaussianRational> terms_;
};

} // namespace qtheta
