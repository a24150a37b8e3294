#pragma once

// Generators for k-statistics, polykays and their multivariate versions, as
// polynomials in power sums with coefficients rational in the sample size.
//
// k-statistics (univariate and multivariate) use the compound Poisson route:
// expand the moment polynomial of n.(chi.y.beta.alpha) in power sums, with
// block-size factors p_j(y) = sum_k (-1)^(k-1) (k-1)! S(j,k) y^k, then replace
// y^m by E[(chi.chi)^m] / E[(n.chi)^m] = (-1)^(m-1) (m-1)! / (n)_m.
//
// Products of cumulants go through exact pair-level coefficients: each group
// contributes its cumulant-in-moments expansion, the expansions are merged
// per moment monomial, and every surviving monomial a_xi is replaced by its
// unbiased power-sum estimator. Only merges that split group by group ever
// appear, which is exactly the set the filter umbrae keep.

#include <kstat/combinatorics.hpp>
#include <kstat/expr.hpp>
#include <kstat/polyring.hpp>

#include <map>
#include <span>
#include <vector>

namespace kstat {

struct GenerationOptions {
  unsigned max_univariate_order = 32;
  unsigned max_multivariate_order = 12;
  /// Spread independent index terms over worker threads.
  bool parallel = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// p_j(y), an integer polynomial of degree j in the filter symbol y.
RationalPolynomial p_polynomial(unsigned j);

/// (-1)^(m-1) (m-1)! / (n)_m.
RationalFunctionOfN y_substitution_constant(unsigned m);

EstimatorExpr k_statistic(unsigned i, const GenerationOptions& options = {});
EstimatorExpr multivariate_k_statistic(const Multiset& m, const GenerationOptions& options = {});

/// Multiset of moment multi-indices, sorted descending; a univariate
/// partition xi = (3,1,1) is {[3],[1],[1]}.
using MomentIndex = std::vector<std::vector<unsigned>>;

MomentIndex moment_index(const IntegerPartition& xi);

/// kappa_r * ... * kappa_t = sum_xi c_xi a_xi, with c_xi summed over every
/// tuple (lambda |- r, ..., eta |- t) merging to xi.
std::map<IntegerPartition, Integer> cumulant_product_coefficients(std::span<const unsigned> orders);
/// Multivariate analogue over tuples of subdivisions, one per group.
std::map<MomentIndex, Integer> cumulant_product_coefficients(std::span<const Multiset> groups);

/// The unbiased power-sum estimator of the moment product a_xi.
PolynomialRF augmented_estimator(const IntegerPartition& xi);
/// The unbiased power-sum estimator of prod_j m_{index_j}.
PolynomialRF augmented_estimator(const MomentIndex& parts);

EstimatorExpr polykay(std::vector<unsigned> orders, const GenerationOptions& options = {});
EstimatorExpr multivariate_polykay(std::vector<Multiset> groups,
                                   const GenerationOptions& options = {});

/// Pair-level route for any number of groups, including one. A single group
/// yields the k-statistic through augmented estimators instead of the
/// compound Poisson substitution.
PolynomialRF cumulant_product_estimator(std::span<const Multiset> groups,
                                        const GenerationOptions& options = {});

/// Dispatches on the family and records the wall time of generation.
EstimatorExpr generate(const EstimatorSpec& spec, const GenerationOptions& options = {});

}  // namespace kstat
