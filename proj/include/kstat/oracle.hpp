#pragma once

// Exact expectations of power-sum polynomials over n i.i.d. observations, and
// certification of estimators against products of cumulants. Works only in
// the forward direction (power sums -> moments), never through the
// estimators' inversion.

#include <kstat/expr.hpp>

#include <string>
#include <vector>

namespace kstat {

/// E[p] in raw moments (a_r for one variable, m_{t1..td} otherwise), exact in n.
/// `dimension` 0 takes it from p. Filter or moment symbols in p are rejected.
MomentPolynomial expectation_power_sum_poly(const PolynomialRF& p, unsigned dimension = 0,
                                            bool parallel = false);

/// The same expectation by expanding every power sum over sample indices
/// 1..n_value and multiplying out. Coefficients are constants.
MomentPolynomial brute_force_expectation(const PolynomialRF& p, unsigned n_value,
                                         unsigned dimension = 0);

/// Coefficients evaluated at a concrete sample size.
MomentPolynomial specialize(const MomentPolynomial& p, unsigned n_value);

/// kappa_i as a polynomial in a_1, a_2, ...
MomentPolynomial cumulant_in_moments(unsigned i);
/// Joint cumulant kappa_M in m_{t1..td}.
MomentPolynomial cumulant_in_moments(const Multiset& m);

struct Certification {
  std::string label;
  bool pass = false;
  MomentPolynomial difference;  // E[estimator] - target; zero iff pass
  double elapsed_ms = 0.0;
};

Certification check_unbiased(const EstimatorExpr& e, bool parallel = false);

/// {"estimator": label, "pass": bool, "difference": text-or-null, "elapsed_ms": number}
std::string certification_json(const Certification& c);
/// A JSON array of certification records.
std::string certification_json(const std::vector<Certification>& all);

}  // namespace kstat
