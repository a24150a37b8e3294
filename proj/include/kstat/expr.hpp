#pragma once

#include <kstat/polyring.hpp>
#include <kstat/spec.hpp>

namespace kstat {

/// A generated estimator: a polynomial in power sums whose coefficients are
/// rational functions of the sample size n.
struct EstimatorExpr {
  EstimatorSpec spec;
  PolynomialRF body;
  double generation_seconds = 0.0;

  std::size_t term_count() const { return body.size(); }
  /// Largest falling-factorial depth among the coefficient denominators.
  unsigned required_sample_size() const;
};

}  // namespace kstat
