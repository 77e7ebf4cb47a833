#pragma once

#include <cmath>
#include <utility>

#include "qtheta/params.hpp"

namespace qtheta {

/// Which of the four Jacobi theta functions.
class ThetaIndex {
public:
    explicit ThetaIndex(int j) : j_{j} {
        if (j < 1 || j > 4) throw DomainError("ThetaIndex: j must be in {1,2,3,4}");
    }
    int value() const { return j_; }

private:
    int j_;
};

struct SeriesControl {
    int max_terms = 10000;
};

namespace detail {

// ln|x| overestimated from the binary exponents of the components; used only
// to drive truncation rules, so a one-bit overestimate merely stops later.
inline double log_abs_upper(const Cplx& x) {
    constexpr double kLn2 = 0.6931471805599453;
    if (x.is_zero()) return -1e300;
    mpfr_exp_t e = -1000000;
    if (!x.re.is_zero()) e = mpfr_get_exp(x.re.raw());
    if (!x.im.is_zero()) {
        mpfr_exp_t ei = mpfr_get_exp(x.im.raw());
        if (ei > e) e = ei;
    }
    return (static_cast<double>(e) + 1.0) * kLn2;
}

// Truncation rules cut at the working precision itself (one ulp at `bits`,
// with two bits to spare); the looser acceptance tolerance prec.eps is then
// free to absorb accumulated rounding, as its sixteen guard bits intend.
inline double log_cutoff(const Precision& prec) {
    constexpr double kLn2 = 0.6931471805599453;
    return -(static_cast<double>(prec.bits) + 2.0) * kLn2;
}

// ln of the nome magnitude: |q| = exp(-pi * Im tau).
inline double log_nome_mag(const ModularParam& p) {
    return -3.141592653589793 * p.tau.im.to_double();
}

} // namespace detail

/// Bilateral theta series, summed in symmetric blocks (k paired with -k for
/// even indices, k with -k-1 for the half-integer ones) so that parity-forced
/// cancellations are exact. The block at distance k is bounded by
/// 2|q|^{e(k)} exp(c_k |Im z|); summation stops once that bound falls below
/// eps times the largest partial-sum magnitude seen (floored at 1) and the
/// blocks are decaying. Failure to reach that point within max_terms blocks
/// means |q| is too close to 1 or |Im z| too large for this precision.
inline Cplx theta_series(ThetaIndex j, const Cplx& z, const ModularParam& p,
                         const Precision& prec, const SeriesControl& ctl = {}) {
    constexpr double kLn2 = 0.6931471805599453;
    const mpfr_prec_t bits = prec.bits;
    const int jj = j.value();
    const bool half_grid = jj <= 2; // exponents k(k+1), phases e^{(2k+1)zi}
    const double ln_q = detail::log_nome_mag(p);
    const double aimz = std::fabs(z.im.to_double());
    const double ln_eps = detail::log_cutoff(prec);

    Cplx sum{bits};
    double log_runmax = 0.0;
    double prev_bound = 1e300;
    for (int k = 0;; ++k) {
        if (k > ctl.max_terms) {
            throw ConvergenceError(
                "theta_series: truncation rule did not fire within max_terms "
                "(|q| too close to 1 or |Im z| too large for this precision)");
        }
        Cplx block{bits};
        if (half_grid) {
            Cplx e = exp(mul_i(z * (2L * k + 1L)));
            Cplx e_inv = Cplx::of(1L, bits) / e;
            Cplx osc = (jj == 1) ? e - e_inv : e + e_inv;
            block = q_pow(p, static_cast<long>(k) * (k + 1)) * osc;
            if (jj == 1 && (k & 1)) block = -block;
        } else {
            if (k == 0) {
                block = Cplx::of(1L, bits);
            } else {
                Cplx e = exp(mul_i(z * (2L * k)));
                Cplx e_inv = Cplx::of(1L, bits) / e;
                block = q_pow(p, static_cast<long>(k) * k) * (e + e_inv);
                if (jj == 4 && (k & 1)) block = -block;
            }
        }
        sum += block;
        double lm = detail::log_abs_upper(sum);
        if (lm > log_runmax) log_runmax = lm;

        const long kn = k + 1;
        const double next_bound =
            half_grid ? kn * (kn + 1) * ln_q + (2 * kn + 1) * aimz + kLn2
                      : kn * kn * ln_q + 2 * kn * aimz + kLn2;
        if (next_bound < ln_eps + log_runmax && next_bound < prev_bound - kLn2) break;
        prev_bound = next_bound;
    }

    if (jj == 1) return div_i(sum * q_pow(p, 1, 4)); // prefactor -i q^{1/4}
    if (jj == 2) return sum * q_pow(p, 1, 4);
    return sum;
}

/// (a; nome)_inf = prod_{n>=0} (1 - a nome^n), truncated at the first n where
/// the geometric tail bound |a||nome|^n / (1 - |nome|) drops below eps.
inline Cplx q_pochhammer(const Cplx& a, const Cplx& nome, const Precision& prec,
                         const SeriesControl& ctl = {}) {
    const mpfr_prec_t bits = prec.bits;
    Real nome_mag = abs(nome);
    if (!(nome_mag < Real::of(1L, bits))) {
        throw DomainError("q_pochhammer: |nome| must be < 1");
    }
    const double ln_eps = detail::log_cutoff(prec);
    const double la = detail::log_abs_upper(a);
    const double nome_mag_d = std::min(nome_mag.to_double(), 1.0 - 1e-16);
    const double lq = std::log(nome_mag_d); // ratio of the tail bound, taken exactly
    const double l1q = std::log1p(-nome_mag_d);

    Cplx prod = Cplx::of(1L, bits);
    Cplx aq = a; // a * nome^n
    for (int n = 0;; ++n) {
        if (la + n * lq - l1q < ln_eps) break;
        if (n > ctl.max_terms) {
            throw ConvergenceError("q_pochhammer: tail bound did not fire within max_terms");
        }
        Cplx factor = Cplx::of(1L, bits) - aq;
        if (factor.is_zero()) return factor; // an exact zero factor kills the product
        prod = prod * factor;
        aq = aq * nome;
    }
    return prod;
}

/// Jacobi product expansions. The table covers j in {1,2,3}; theta_4 is
/// evaluated as theta_3(z + pi/2 | tau), which matches the series term by
/// term.
inline Cplx theta_product(ThetaIndex j, const Cplx& z, const ModularParam& p,
                          const Precision& prec, const SeriesControl& ctl = {}) {
    const mpfr_prec_t bits = prec.bits;
    const int jj = j.value();
    if (jj == 4) {
        Cplx half_pi{Real::pi(bits) / 2, Real::of(0L, bits)};
        return theta_product(ThetaIndex{3}, z + half_pi, p, prec, ctl);
    }
    Cplx q2 = q_pow(p, 2);
    Cplx e2 = exp(mul_i(z * 2L));
    Cplx e2_inv = Cplx::of(1L, bits) / e2;
    Cplx base = q_pochhammer(q2, q2, prec, ctl);
    if (jj == 3) {
        return base * q_pochhammer(-(p.q * e2), q2, prec, ctl) *
               q_pochhammer(-(p.q * e2_inv), q2, prec, ctl);
    }
    Cplx lead = q_pow(p, 1, 4) * 2L;
    if (jj == 1) {
        return lead * sin(z) * base * q_pochhammer(q2 * e2, q2, prec, ctl) *
               q_pochhammer(q2 * e2_inv, q2, prec, ctl);
    }
    return lead * cos(z) * base * q_pochhammer(-(q2 * e2), q2, prec, ctl) *
           q_pochhammer(-(q2 * e2_inv), q2, prec, ctl);
}

inline Cplx theta_null(ThetaIndex j, const ModularParam& p, const Precision& prec,
                       const SeriesControl& ctl = {}) {
    return theta_series(j, Cplx{Real::of(0L, prec.bits), Real::of(0L, prec.bits)}, p, prec, ctl);
}

/// theta_1(z + pi/2 | tau) and theta_2(z | tau); equal within eps.
inline std::pair<Cplx, Cplx> shift_half_pi(const Cplx& z, const ModularParam& p,
                                           const Precision& prec) {
    Cplx half_pi{Real::pi(prec.bits) / 2, Real::of(0L, prec.bits)};
    return {theta_series(ThetaIndex{1}, z + half_pi, p, prec),
            theta_series(ThetaIndex{2}, z, p, prec)};
}

/// theta_1(z + (pi + pi tau)/2 | tau) and q^{-1/4} e^{-iz} theta_3(z | tau).
/// The q^{-1/4} factor can be large, so callers should compare the pair with
/// a tolerance relative to the larger magnitude.
inline std::pair<Cplx, Cplx> shift_half_period(const Cplx& z, const ModularParam& p,
                                               const Precision& prec) {
    const mpfr_prec_t bits = prec.bits;
    Cplx pi_c{Real::pi(bits), Real::of(0L, bits)};
    Cplx offset = (pi_c + pi_c * p.tau) / 2L;
    Cplx lhs = theta_series(ThetaIndex{1}, z + offset, p, prec);
    Cplx rhs = q_pow(p, -1, 4) * exp(div_i(z)) * theta_series(ThetaIndex{3}, z, p, prec);
    return {std::move(lhs), std::move(rhs)};
}

/// theta_1(pi/4 | tau) by series against sqrt(2) q^{1/4} (q^2;q^2) (-q^4;q^4).
inline std::pair<Cplx, Cplx> theta1_quarter_pi(const ModularParam& p, const Precision& prec) {
    const mpfr_prec_t bits = prec.bits;
    Cplx quarter_pi{Real::pi(bits) / 4, Real::of(0L, bits)};
    Cplx lhs = theta_series(ThetaIndex{1}, quarter_pi, p, prec);
    Cplx q2 = q_pow(p, 2);
    Cplx q4 = q_pow(p, 4);
    Cplx rhs = Cplx::real_axis(sqrt(Real::of(2L, bits))) * q_pow(p, 1, 4) *
               q_pochhammer(q2, q2, prec) * q_pochhammer(-q4, q4, prec);
    return {std::move(lhs), std::move(rhs)};
}

struct DoublingPairs {
    std::pair<Cplx, Cplx> at_z;   // 2 th2(z|2tau) th3(z|2tau)  vs  th2_null(tau) th2(z|tau)
    std::pair<Cplx, Cplx> nulls;  // th2_null(tau)^2            vs  2 th2_null(2tau) th3_null(2tau)
};

inline DoublingPairs doubling_identities(const Cplx& z, const ModularParam& p,
                                         const Precision& prec) {
    ModularParam p2 = transform(p, Transform::Double, prec);
    Cplx lhs1 = theta_series(ThetaIndex{2}, z, p2, prec) *
                theta_series(ThetaIndex{3}, z, p2, prec) * 2L;
    Cplx n2 = theta_null(ThetaIndex{2}, p, prec);
    Cplx rhs1 = n2 * theta_series(ThetaIndex{2}, z, p, prec);
    Cplx lhs2 = n2 * n2;
    Cplx rhs2 = theta_null(ThetaIndex{2}, p2, prec) * theta_null(ThetaIndex{3}, p2, prec) * 2L;
    return DoublingPairs{{std::move(lhs1), std::move(rhs1)}, {std::move(lhs2), std::move(rhs2)}};
}

/// Both sides of the Jacobi triple product at a point:
/// sum_n (-1)^n nome^{n(n-1)/2} z^n  vs  (nome;nome) (z;nome) (nome/z;nome).
inline std::pair<Cplx, Cplx> triple_product_check(const Cplx& z, const Cplx& nome,
                                                  const Precision& prec,
                                                  const SeriesControl& ctl = {}) {
    constexpr double kLn2 = 0.6931471805599453;
    const mpfr_prec_t bits = prec.bits;
    if (z.is_zero()) throw DomainError("triple_product_check: z must be nonzero");
    if (!(abs(nome) < Real::of(1L, bits))) {
        throw DomainError("triple_product_check: |nome| must be < 1");
    }
    const double ln_eps = detail::log_cutoff(prec);

    Cplx sum = Cplx::of(1L, bits); // n = 0 term
    double log_runmax = 0.0;
    // Walk n = 1, 2, ... and n = -1, -2, ... with incremental ratios
    // t(n+1)/t(n) = -z nome^n and t(-m-1)/t(-m) = -nome^{m+1}/z. A term's
    // log-magnitude is concave in the index, so "small and shrinking" is a
    // sound stop signal on each side.
    Cplx term_pos = Cplx::of(1L, bits);
    Cplx term_neg = Cplx::of(1L, bits);
    Cplx nome_pow_pos = Cplx::of(1L, bits); // nome^n at step n
    Cplx nome_pow_neg = nome;               // nome^{m+1} at step m
    Cplx z_inv = Cplx::of(1L, bits) / z;
    double prev_pos = 1e300, prev_neg = 1e300;
    bool pos_done = false, neg_done = false;
    for (int step = 0; !(pos_done && neg_done); ++step) {
        if (step > ctl.max_terms) {
            throw ConvergenceError("triple_product_check: series truncation did not fire");
        }
        if (!pos_done) {
            term_pos = -(term_pos * z * nome_pow_pos);
            nome_pow_pos = nome_pow_pos * nome;
            sum += term_pos;
            double lb = detail::log_abs_upper(term_pos);
            if (lb < ln_eps + log_runmax - kLn2 && lb < prev_pos - kLn2) pos_done = true;
            prev_pos = lb;
        }
        if (!neg_done) {
            term_neg = -(term_neg * z_inv * nome_pow_neg);
            nome_pow_neg = nome_pow_neg * nome;
            sum += term_neg;
            double lb = detail::log_abs_upper(term_neg);
            if (lb < ln_eps + log_runmax - kLn2 && lb < prev_neg - kLn2) neg_done = true;
            prev_neg = lb;
        }
        double lm = detail::log_abs_upper(sum);
        if (lm > log_runmax) log_runmax = lm;
    }

    Cplx rhs = q_pochhammer(nome, nome, prec, ctl) * q_pochhammer(z, nome, prec, ctl) *
               q_pochhammer(nome * z_inv, nome, prec, ctl);
    return {std::move(sum), std::move(rhs)};
}

} // namespace qtheta
