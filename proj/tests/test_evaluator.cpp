#include <doctest.h>

#include <kstat/estimators.hpp>
#include <kstat/evaluator.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "support.hpp"

using namespace kstat;
using kstat::testing::rng;

namespace {

Dataset csv(const std::string& text, bool header = false) {
  std::istringstream in(text);
  return ingest_csv(in, header);
}

ErrorCode failure(const std::function<void()>& fn, std::string* message = nullptr) {
  try {
    fn();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  return ErrorCode::kInternal;
}

Dataset random_rational(std::size_t n, unsigned d) {
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(d));
  for (auto& row : rows)
    for (auto& x : row) {
      x = Rational(num(rng()), den(rng()));
      x.canonicalize();
    }
  return Dataset(rows);
}

Dataset transformed(const Dataset& ds, const Rational& scale, const Rational& shift) {
  auto rows = ds.rows();
  for (auto& row : rows)
    for (auto& x : row) x = scale * x + shift;
  return Dataset(rows);
}

}  // namespace

TEST_CASE("csv ingestion") {
  const auto one = csv("1\n2\n3");
  CHECK(one.n() == 3);
  CHECK(one.d() == 1);
  const auto two = csv("1.5,2\n2.5,4\n");
  CHECK(two.d() == 2);
  CHECK(two.rows()[0][0] == Rational(3, 2));
  CHECK(two.rows()[1][0] == Rational(5, 2));
  const auto named = csv("x, y\n\n1,2\r\n-3e1,0.25\n", true);
  CHECK(named.names() == std::vector<std::string>{"x", "y"});
  CHECK(named.rows()[1][0] == -30);
  CHECK(named.rows()[1][1] == Rational(1, 4));

  std::string why;
  CHECK(failure([] { csv("1,2\n3\n"); }, &why) == ErrorCode::kParse);
  CHECK(why.find("line 2") != std::string::npos);
  CHECK(failure([] { csv("1\nabc\n"); }, &why) == ErrorCode::kParse);
  CHECK(why.find("line 2") != std::string::npos);
  CHECK(failure([] { csv(""); }) == ErrorCode::kParse);
  CHECK(failure([] { csv("1,\n"); }) == ErrorCode::kParse);
  CHECK(failure([] { ingest_csv_file("/nonexistent/data.csv"); }) == ErrorCode::kIo);
}

TEST_CASE("power sums") {
  const auto ds = csv("1\n2\n3");
  const auto sums = compute_power_sums(ds, {{1}, {2}});
  CHECK(sums.at({1}) == 6);
  CHECK(sums.at({2}) == 14);
  const auto pairs = csv("1,1\n2,2\n3,3");
  CHECK(compute_power_sums(pairs, {{1, 1}}).at({1, 1}) == 14);
  CHECK(compute_power_sums(pairs, {{0, 2}}).at({0, 2}) == 14);
  const auto zeros = csv("0,0\n0,0");
  CHECK(compute_power_sums(zeros, {{1, 0}, {2, 1}}).at({2, 1}) == 0);
  CHECK(compute_power_sums_float(ds, {{3}}).at({3}) == 36.0);
  CHECK(failure([&] { compute_power_sums(ds, {{1, 1}}); }) == ErrorCode::kDimension);
}

TEST_CASE("evaluation on small samples") {
  const auto ds = csv("1\n2\n3");
  CHECK(evaluate_exact(k_statistic(2), ds) == 1);
  CHECK(evaluate_exact(k_statistic(1), ds) == 2);
  CHECK(evaluate_exact(k_statistic(3), ds) == 0);
  CHECK(evaluate_float(k_statistic(2), ds) == doctest::Approx(1.0));
  std::string why;
  CHECK(failure([] { evaluate_exact(k_statistic(3), csv("1\n2")); }, &why) == ErrorCode::kSampleSize);
  CHECK(why.find("n >= 3") != std::string::npos);
  CHECK(failure([&] { evaluate_exact(multivariate_k_statistic(Multiset({1, 1})), ds); }) == ErrorCode::kDimension);
  CHECK(failure([] { evaluate_float(k_statistic(2), csv("1,2\n3,4\n5,6")); }) == ErrorCode::kDimension);
  // Sample covariance of perfectly correlated columns.
  CHECK(evaluate_exact(multivariate_k_statistic(Multiset({1, 1})), csv("1,2\n2,4\n3,6")) == 2);
}

TEST_CASE("shift invariance and homogeneity") {
  std::uniform_int_distribution<int> small(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ds = random_rational(20, 1);
    int top = small(rng());
    if (top == 0) top = 4;
    Rational scale(top, 2 + trial % 3);
    scale.canonicalize();
    Rational shift(small(rng()), 7);
    shift.canonicalize();
    const auto moved = transformed(ds, scale, shift);
    for (unsigned i = 2; i <= 6; ++i) {
      const auto k = k_statistic(i);
      Rational factor = 1;
      for (unsigned j = 0; j < i; ++j) factor *= scale;
      CHECK(evaluate_exact(k, moved) == factor * evaluate_exact(k, ds));
    }
    CHECK(evaluate_exact(k_statistic(1), moved) == scale * evaluate_exact(k_statistic(1), ds) + shift);
  }
}

TEST_CASE("floating point agrees with exact") {
  std::uniform_real_distribution<double> entry(-10.0, 10.0);
  for (std::size_t n : {12u, 100u, 1000u}) {
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(1));
    for (auto& row : rows) row[0] = Rational(entry(rng()));
    const Dataset ds(rows);
    for (const auto& spec : expand_suite("k:1..8,pk 2 2,pk 3 1,pk 2 1 1")) {
      const auto e = generate(spec);
      const double exact = evaluate_exact(e, ds).get_d();
      const double approx = evaluate_float(e, ds);
      INFO(spec.label(), " n=", n);
      CHECK(std::abs(approx - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("row order does not matter") {
  auto ds = random_rational(15, 2);
  auto rows = ds.rows();
  std::shuffle(rows.begin(), rows.end(), rng());
  const Dataset shuffled(rows);
  for (const auto& spec : expand_suite("mk 2 1,mk 1 1,mpk 1 1 ; 1 0")) {
    const auto e = generate(spec);
    CHECK(evaluate_exact(e, ds) == evaluate_exact(e, shuffled));
  }
}
