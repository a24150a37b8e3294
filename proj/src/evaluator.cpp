#include <kstat/evaluator.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

namespace kstat {

namespace {

std::string trim(std::string s) {
  const auto blank = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), blank));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), blank).base(), s.end());
  return s;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

void check_shape(const Dataset& ds, const EstimatorExpr& e) {
  if (ds.d() != e.spec.dimension())
    fail(ErrorCode::kDimension, e.spec.label() + " needs " + std::to_string(e.spec.dimension()) +
                                    " variable(s) but the data has " + std::to_string(ds.d()) + " column(s)");
  const unsigned needed = e.required_sample_size();
  if (ds.n() < needed)
    fail(ErrorCode::kSampleSize, "insufficient sample size: " + e.spec.label() + " needs n >= " +
                                     std::to_string(needed) + ", got " + std::to_string(ds.n()));
}

template <class T>
T power(const T& base, unsigned e) {
  T out = 1;
  for (unsigned k = 0; k < e; ++k) out *= base;
  return out;
}

}  // namespace

Dataset::Dataset(std::vector<std::vector<Rational>> rows, std::vector<std::string> names)
    : rows_(std::move(rows)), names_(std::move(names)) {
  if (rows_.empty()) fail(ErrorCode::kParse, "dataset has no rows");
  d_ = static_cast<unsigned>(rows_.front().size());
  if (d_ == 0) fail(ErrorCode::kParse, "dataset has no columns");
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i].size() != d_)
      fail(ErrorCode::kParse, "row " + std::to_string(i + 1) + " has " + std::to_string(rows_[i].size()) +
                                  " values, expected " + std::to_string(d_));
  if (!names_.empty() && names_.size() != d_) fail(ErrorCode::kParse, "header width differs from the data");
}

Dataset ingest_csv(std::istream& in, bool header) {
  std::vector<std::vector<Rational>> rows;
  std::vector<std::string> names;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_pending = header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split_cells(line);
    if (header_pending) {
      names = std::move(cells);
      width = names.size();
      header_pending = false;
      continue;
    }
    if (width == 0) width = cells.size();
    if (cells.size() != width)
      fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                                  " values, found " + std::to_string(cells.size()));
    std::vector<Rational> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      try {
        row.push_back(parse_decimal(cell));
      } catch (const Error&) {
        fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorCode::kParse, "no data rows in input");
  return Dataset(std::move(rows), std::move(names));
}

Dataset ingest_csv_file(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  return ingest_csv(in, header);
}

std::set<MultiIndex> referenced_indices(const PolynomialRF& p) {
  std::set<MultiIndex> out;
  for (const auto& [m, c] : p.terms())
    for (const auto& [sym, e] : m.factors())
      if (sym.kind == Symbol::Kind::kPowerSum) out.insert(sym.index);
  return out;
}

PowerSumTable compute_power_sums(const Dataset& ds, const std::set<MultiIndex>& needed) {
  PowerSumTable out;
  for (const auto& idx : needed) {
    if (idx.size() != ds.d())
      fail(ErrorCode::kDimension, "power-sum index has " + std::to_string(idx.size()) + " entries for " +
                                      std::to_string(ds.d()) + " column(s)");
    out.emplace(idx, Rational(0));
  }
  for (const auto& row : ds.rows())
    for (auto& [idx, sum] : out) {
      Rational term = 1;
      for (unsigned j = 0; j < ds.d(); ++j)
        if (idx[j] != 0) term *= power(row[j], idx[j]);
      sum += term;
    }
  return out;
}

FloatPowerSumTable compute_power_sums_float(const Dataset& ds, const std::set<MultiIndex>& needed) {
  FloatPowerSumTable out;
  for (const auto& idx : needed) {
    if (idx.size() != ds.d())
      fail(ErrorCode::kDimension, "power-sum index has " + std::to_string(idx.size()) + " entries for " +
                                      std::to_string(ds.d()) + " column(s)");
    out.emplace(idx, 0.0);
  }
  std::vector<double> x(ds.d());
  for (const auto& row : ds.rows()) {
    for (unsigned j = 0; j < ds.d(); ++j) x[j] = row[j].get_d();
    for (auto& [idx, sum] : out) {
      double term = 1.0;
      for (unsigned j = 0; j < ds.d(); ++j)
        if (idx[j] != 0) term *= power(x[j], idx[j]);
      sum += term;
    }
  }
  return out;
}

Rational evaluate_exact(const EstimatorExpr& e, const Dataset& ds) {
  check_shape(ds, e);
  const auto sums = compute_power_sums(ds, referenced_indices(e.body));
  const Integer n(static_cast<unsigned long>(ds.n()));
  Rational total = 0;
  for (const auto& [m, c] : e.body.terms()) {
    Rational term = c(n);
    for (const auto& [sym, k] : m.factors()) term *= power(sums.at(sym.index), k);
    total += term;
  }
  total.canonicalize();
  return total;
}

double evaluate_float(const EstimatorExpr& e, const Dataset& ds) {
  check_shape(ds, e);
  const auto sums = compute_power_sums_float(ds, referenced_indices(e.body));
  const double n = static_cast<double>(ds.n());
  double total = 0.0;
  for (const auto& [m, c] : e.body.terms()) {
    double term = c(n);
    for (const auto& [sym, k] : m.factors()) term *= power(sums.at(sym.index), k);
    total += term;
  }
  return total;
}

}  // namespace kstat
