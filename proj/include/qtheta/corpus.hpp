#pragma once

#include <string_view>
#include <vector>

#include "qtheta/dsl.hpp"

namespace qtheta::dsl {

/// The corpus text embedded verbatim; data/builtin.qid ships the same bytes.
inline constexpr std::string_view kBuiltinCorpusText = R"qid(# Built-in identity corpus for the q-trigonometric / theta verification
# harness. Every declaration here is checked numerically at random sample
# points by `qtheta verify`; names are stable API.
#
# Conventions: sinq/cosq evaluate Gosper's product definitions; ccsq/ssnq
# evaluate as theta quotients at -1/(m*tau), which are entire, so sampling
# cannot hit their removable singularities. The bracket suffix selects the
# base: sinq[2] means the function taken at nome q^2. The constant ssnq(0)
# equals thetanull4(-1/tau)/thetanull3(-1/tau); it is not 1, and the
# three-term ssn identities below do not hold without it.

identity "gosper_1_15" {
  vars: a, b, x, y;
  lhs: sinq(a + b + x + y) * ccsq(x - y) * sinq(a - b);
  rhs: sinq(a + x) * sinq(a + y) * ccsq(b + x) * ccsq(b + y) - sinq(b + x) * sinq(b + y) * ccsq(a + x) * ccsq(a + y);
  tags: theorem;
}

identity "thm_7_2" {
  vars: x, y, a, b;
  lhs: cosq(x - y) * sinq(x + y + a + b) * sinq(a - b);
  rhs: sinq(x + a) * sinq(y + a) * cosq(x + b) * cosq(y + b) - cosq(x + a) * cosq(y + a) * sinq(x + b) * sinq(y + b);
  tags: theorem;
}

identity "thm_7_5" {
  vars: x, y, a, b;
  lhs: ssnq(0) * ssnq(x - y) * sinq(x + y + a + b) * sinq(a - b);
  rhs: sinq(x + a) * sinq(y + a) * ssnq(x + b) * ssnq(y + b) - ssnq(x + a) * ssnq(y + a) * sinq(x + b) * sinq(y + b);
  tags: theorem;
}

# Dual-form bridges: the product definitions against theta quotients at the
# inverted parameter.

identity "rel_1_3" {
  vars: z;
  lhs: sinq(z);
  rhs: theta1(z, -1/tau) / thetanull2(-1/tau);
}

identity "rel_1_20" {
  vars: z;
  lhs: cosq(z);
  rhs: theta2(z, -1/tau) / thetanull2(-1/tau);
}

identity "rel_2_8" {
  vars: z;
  lhs: cosq[2](z) / cosq(z);
  rhs: theta3(z, -1/tau) / thetanull3(-1/tau);
}

identity "rel_7_4" {
  vars: z;
  lhs: sinq[2](z) / sinq(z);
  rhs: theta4(z, -1/tau) / thetanull3(-1/tau);
}

# Shift relations of the theta functions themselves.

identity "rel_10_1" {
  vars: z;
  lhs: theta1(z + pi/2);
  rhs: theta2(z);
}

identity "rel_10_2" {
  vars: z;
  lhs: theta1(z + (pi + pi * tau)/2);
  rhs: expi(-(pi * tau/4 + z)) * theta3(z);
}

identity "rel_6_4" {
  vars: z;
  lhs: 2 * theta2(z, 2*tau) * theta3(z, 2*tau);
  rhs: thetanull2(tau) * theta2(z);
}

identity "rel_6_5" {
  vars: ;
  lhs: thetanull2(tau)^2;
  rhs: 2 * thetanull2(2*tau) * thetanull3(2*tau);
}

# Squared quarter-pi special value, in null form.

identity "rel_4_1" {
  vars: ;
  lhs: theta1(pi/4)^2;
  rhs: thetanull2(2*tau) * thetanull4(2*tau);
}

# Series form against Jacobi product form; over complex z this restates the
# triple product with general Laurent argument.

identity "triple_product" {
  vars: z;
  lhs: theta4(z);
  rhs: theta4p(z);
}

identity "q_double_2" {
  vars: z;
  lhs: sinq(2 * z);
  rhs: piq() / piq[2]() * sinq[2](z) * cosq[2](z);
}

identity "q_double_3" {
  vars: z;
  lhs: cosq(2 * z);
  rhs: cosq[2](z)^2 - sinq[2](z)^2;
}

identity "abo_touk_q4" {
  vars: x, y;
  lhs: sinq[4](x) / sinq[2](x) * cosq(y)^2 + cosq[4](x) / cosq[2](x) * sinq(y)^2;
  rhs: sinq[4](y) / sinq[2](y) * cosq(x)^2 + cosq[4](y) / cosq[2](y) * sinq(x)^2;
}

identity "abo_touk_q3" {
  vars: x, y;
  lhs: sinq[3](x) / sinq(x) * cosq(y)^2 + cosq[3](x) / cosq(x) * sinq(y)^2;
  rhs: sinq[3](y) / sinq(y) * cosq(x)^2 + cosq[3](y) / cosq(y) * sinq(x)^2;
}

# Four-angle constrained identities (alpha + beta + gamma + delta = pi).

identity "ptolemy_ccs" {
  vars: alpha, beta, gamma;
  where:
    delta = pi - alpha - beta - gamma;
  lhs: sinq(alpha + beta) * sinq(beta + gamma) * ccsq(alpha) * ccsq(gamma);
  rhs: sinq(alpha) * sinq(gamma) * ccsq(alpha + beta) * ccsq(beta + gamma) + sinq(beta) * sinq(delta) * ccsq(alpha - gamma);
  tags: constrained;
}

identity "ptolemy_ssn" {
  vars: alpha, beta, gamma;
  where:
    delta = pi - alpha - beta - gamma;
  lhs: sinq(alpha + beta) * sinq(beta + gamma) * ssnq(alpha) * ssnq(gamma);
  rhs: sinq(alpha) * sinq(gamma) * ssnq(alpha + beta) * ssnq(beta + gamma) + ssnq(0) * sinq(beta) * sinq(delta) * ssnq(alpha - gamma);
  tags: constrained;
}

# Half-pi substitution consequences.

identity "cons_7_6" {
  vars: a, b, x, y;
  lhs: sinq(a + b + x + y) * ccsq(x - y) * sinq(a - b);
  rhs: cosq(b + x) * cosq(b + y) * ssnq(a + x) * ssnq(a + y) - cosq(a + x) * cosq(a + y) * ssnq(b + x) * ssnq(b + y);
}

identity "cons_7_6_cos" {
  vars: a, b, x, y;
  lhs: cosq(a + b + x + y) * ccsq(x - y) * cosq(a - b);
  rhs: cosq(a + x) * cosq(a + y) * ccsq(b + x) * ccsq(b + y) - sinq(b + x) * sinq(b + y) * ssnq(a + x) * ssnq(a + y);
}

identity "cons_7_3" {
  vars: a, b, x, y;
  lhs: cosq(x - y) * cosq(x + y + a + b) * cosq(a - b);
  rhs: cosq(x + a) * cosq(y + a) * cosq(x + b) * cosq(y + b) - sinq(x + a) * sinq(y + a) * sinq(x + b) * sinq(y + b);
}

identity "cons_ssn_sin" {
  vars: a, b, x, y;
  lhs: ssnq(0) * ssnq(x - y) * sinq(x + y + a + b) * sinq(a - b);
  rhs: ccsq(x + a) * ccsq(y + a) * cosq(x + b) * cosq(y + b) - cosq(x + a) * cosq(y + a) * ccsq(x + b) * ccsq(y + b);
}

identity "cons_ssn_cos" {
  vars: a, b, x, y;
  lhs: ssnq(0) * ssnq(x - y) * cosq(x + y + a + b) * cosq(a - b);
  rhs: cosq(x + a) * cosq(y + a) * ssnq(x + b) * ssnq(y + b) - ccsq(x + a) * ccsq(y + a) * sinq(x + b) * sinq(y + b);
}

identity "prod_sin_diff" {
  vars: x, y;
  lhs: sinq(x + y) * sinq(x - y);
  rhs: sinq(x)^2 * cosq(y)^2 - cosq(x)^2 * sinq(y)^2;
}

identity "prod_cos_diff" {
  vars: x, y;
  lhs: cosq(x + y) * cosq(x - y);
  rhs: cosq(x)^2 * cosq(y)^2 - sinq(x)^2 * sinq(y)^2;
}

# Classical limits: no q-dependent function appears; these hold for ordinary
# sin/cos and are sampled over real angles.

identity "classical_ptolemy" {
  vars: alpha, beta, gamma;
  where:
    delta = pi - alpha - beta - gamma;
  lhs: sin(alpha + beta) * sin(beta + gamma);
  rhs: sin(alpha) * sin(gamma) + sin(beta) * sin(delta);
  tags: limit-q1, constrained;
}

identity "classical_sum_diff" {
  vars: a, b, x, y;
  lhs: sin(a + b + x + y) * sin(a - b);
  rhs: sin(a + x) * sin(a + y) - sin(b + x) * sin(b + y);
  tags: limit-q1;
}

identity "classical_sum_diff_cos" {
  vars: a, b, x, y;
  lhs: sin(a + b + x + y) * sin(a - b);
  rhs: cos(b + x) * cos(b + y) - cos(a + x) * cos(a + y);
  tags: limit-q1;
}
)qid";

/// Parsed built-in corpus. Parsing is cheap and the result immutable, so a
/// function-local static is fine.
inline const std::vector<IdentityDecl>& builtin_corpus() {
    static const std::vector<IdentityDecl> decls = parse(std::string(kBuiltinCorpusText));
    return decls;
}

} // namespace qtheta::dsl
