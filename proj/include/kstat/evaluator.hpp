#pragma once

// Applying estimators to data: CSV ingestion, power sums, evaluation.

#include <kstat/expr.hpp>

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace kstat {

/// n x d sample held as exact rationals; immutable once built.
class Dataset {
 public:
  Dataset(std::vector<std::vector<Rational>> rows, std::vector<std::string> names = {});

  std::size_t n() const { return rows_.size(); }
  unsigned d() const { return d_; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::string> names_;
  unsigned d_ = 0;
};

/// Comma-separated numbers, one observation per line; blank lines are
/// skipped. Ragged rows, non-numeric cells and empty input are kParse errors
/// naming the line.
Dataset ingest_csv(std::istream& in, bool header = false);
Dataset ingest_csv_file(const std::string& path, bool header = false);

using MultiIndex = std::vector<unsigned>;
using PowerSumTable = std::map<MultiIndex, Rational>;
using FloatPowerSumTable = std::map<MultiIndex, double>;

/// Power-sum indices referenced by an estimator body.
std::set<MultiIndex> referenced_indices(const PolynomialRF& p);

/// S_r = sum_i prod_j x_ij^(r_j) for every requested index, one pass over the rows.
PowerSumTable compute_power_sums(const Dataset& ds, const std::set<MultiIndex>& needed);
FloatPowerSumTable compute_power_sums_float(const Dataset& ds, const std::set<MultiIndex>& needed);

Rational evaluate_exact(const EstimatorExpr& e, const Dataset& ds);
double evaluate_float(const EstimatorExpr& e, const Dataset& ds);

}  // namespace kstat
