#include <doctest.h>

#include <kstat/estimators.hpp>
#include <kstat/oracle.hpp>

#include <json.hpp>

#include "support.hpp"

using namespace kstat;
using kstat::testing::for_each_set_partition;
using kstat::testing::power_sum_monomials;
using kstat::testing::rng;

namespace {

PolynomialRF S(std::vector<unsigned> idx, unsigned e = 1) { return PolynomialRF(Monomial(Symbol::power_sum(idx), e)); }

MomentPolynomial a(unsigned r, unsigned e = 1) { return MomentPolynomial(Monomial(Symbol::moment({r}), e)); }

RationalFunctionOfN poly_n(std::vector<long> c) {
  std::vector<Integer> z;
  for (long v : c) z.emplace_back(v);
  return RationalFunctionOfN(IntPoly(z), 0);
}

}  // namespace

TEST_CASE("expectations in closed form") {
  const auto n = poly_n({0, 1});
  CHECK(expectation_power_sum_poly(S({1})) == a(1).scaled(n));
  // E[S1^2] = n a2 + n(n-1) a1^2
  CHECK(expectation_power_sum_poly(S({1}, 2)) == a(2).scaled(n) + a(1, 2).scaled(poly_n({0, -1, 1})));
  // E[S2 S1] = n a3 + n(n-1) a1 a2
  CHECK(expectation_power_sum_poly(S({2}) * S({1})) == a(3).scaled(n) + (a(1) * a(2)).scaled(poly_n({0, -1, 1})));
  CHECK(expectation_power_sum_poly(PolynomialRF(RationalFunctionOfN(Rational(5)))) ==
        MomentPolynomial(RationalFunctionOfN(Rational(5))));
}

TEST_CASE("brute force agrees with the symbolic expectation") {
  // S1 at n=3 is 3 a1; S1^2 at n=2 is 2 a2 + 2 a1^2.
  CHECK(brute_force_expectation(S({1}), 3) == a(1).scaled(Rational(3)));
  CHECK(brute_force_expectation(S({1}, 2), 2) == a(2).scaled(Rational(2)) + a(1, 2).scaled(Rational(2)));
  for (unsigned d = 1; d <= 2; ++d)
    for (const auto& m : power_sum_monomials(d, 4)) {
      const PolynomialRF p(m);
      const auto symbolic = expectation_power_sum_poly(p);
      for (unsigned n = 2; n <= 4; ++n) {
        INFO(to_string(m), " n=", n);
        CHECK(specialize(symbolic, n) == brute_force_expectation(p, n));
      }
    }
  // A few estimators, end to end.
  for (const auto& spec : expand_suite("k:2..4,pk 2 1,mk 1 1,mk 2 1")) {
    const auto e = generate(spec);
    const auto symbolic = expectation_power_sum_poly(e.body);
    for (unsigned n = e.required_sample_size(); n <= 5; ++n) {
      if (std::pow(double(n), double(spec.total_order())) > 2e6) continue;
      CHECK(specialize(symbolic, n) == brute_force_expectation(e.body, n));
    }
  }
}

TEST_CASE("expectation is linear") {
  std::uniform_int_distribution<int> coeff(-9, 9);
  const auto monos = power_sum_monomials(1, 5);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  for (int trial = 0; trial < 30; ++trial) {
    PolynomialRF p, q;
    for (int k = 0; k < 3; ++k) {
      p.add_term(monos[pick(rng())], poly_n({coeff(rng()), coeff(rng())}));
      q.add_term(monos[pick(rng())], RationalFunctionOfN(Rational(coeff(rng()))));
    }
    const RationalFunctionOfN alpha(Rational(coeff(rng()), 7));
    CHECK(expectation_power_sum_poly(p.scaled(alpha) + q) ==
          expectation_power_sum_poly(p).scaled(alpha) + expectation_power_sum_poly(q));
  }
}

TEST_CASE("cumulants in moments") {
  CHECK(cumulant_in_moments(1u) == a(1));
  CHECK(cumulant_in_moments(2u) == a(2) - a(1, 2));
  CHECK(cumulant_in_moments(3u) == a(3) - (a(1) * a(2)).scaled(Rational(3)) + a(1, 3).scaled(Rational(2)));
  // Round trip: summing products of cumulants over set partitions gives back the moment.
  for (unsigned i = 1; i <= 8; ++i) {
    MomentPolynomial total;
    for_each_set_partition(i, [&](const std::vector<unsigned>& label) {
      std::map<unsigned, unsigned> size;
      for (unsigned b : label) ++size[b];
      MomentPolynomial term(RationalFunctionOfN(Rational(1)));
      for (const auto& [b, s] : size) term *= cumulant_in_moments(s);
      total += term;
    });
    CHECK(total == a(i));
  }
  // Joint: kappa_{11} is the covariance.
  const auto m = [](std::vector<unsigned> idx) { return MomentPolynomial(Monomial(Symbol::moment(idx))); };
  CHECK(cumulant_in_moments(Multiset({1, 1})) == m({1, 1}) - m({1, 0}) * m({0, 1}));
  CHECK(cumulant_in_moments(Multiset({3})) == cumulant_in_moments(3u));
}

TEST_CASE("certification") {
  for (const auto& spec : expand_suite("k 2,pk 1 1,pk 2 2,mk 2 1,mpk 1 ; 1")) {
    const auto c = check_unbiased(generate(spec));
    CHECK(c.pass);
    CHECK(c.difference.is_zero());
  }
  // Negative control: nudge one coefficient.
  auto e = generate(parse_spec(Family::kPolykay, "2 2"));
  const auto& [mono, coeff] = *e.body.terms().begin();
  e.body.add_term(mono, RationalFunctionOfN::inverse_falling(1));
  const auto bad = check_unbiased(e);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.difference.is_zero());

  const auto record = nlohmann::json::parse(certification_json(bad));
  CHECK(record["estimator"] == "pk[2,2]");
  CHECK(record["pass"] == false);
  CHECK(record["difference"].is_string());
  const auto good = nlohmann::json::parse(certification_json(std::vector{check_unbiased(k_statistic(3))}));
  REQUIRE(good.size() == 1);
  CHECK(good[0]["difference"].is_null());
  CHECK(good[0]["pass"] == true);
}

TEST_CASE("oracle rejects what it cannot handle") {
  const PolynomialRF stray(Monomial(Symbol::y()));
  CHECK_THROWS_AS(expectation_power_sum_poly(stray), Error);
  try {
    brute_force_expectation(S({1}), 7);
    FAIL("expected a capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCapacity);
  }
  try {
    brute_force_expectation(S({1}, 9), 6);
    FAIL("expected a capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCapacity);
  }
  CHECK_THROWS_AS(expectation_power_sum_poly(S({1, 0}), 3), Error);
}
