#include <doctest.h>

#include <kstat/estimators.hpp>
#include <kstat/polyring.hpp>

#include "support.hpp"

using namespace kstat;

namespace {

Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

RationalPolynomial y_poly(std::vector<long> coeffs) {
  RationalPolynomial p;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    p.add_term(k == 0 ? Monomial() : Monomial(Symbol::y(), static_cast<unsigned>(k)), Rational(coeffs[k]));
  return p;
}

RationalPolynomial random_poly(unsigned d) {
  auto& g = testing::rng();
  std::uniform_int_distribution<int> coeff(-5, 5), den(1, 4), terms(0, 4), exp(0, 2), idx(0, 2);
  RationalPolynomial p;
  const int count = terms(g);
  for (int t = 0; t < count; ++t) {
    std::vector<Monomial::Factor> factors;
    for (int f = exp(g); f > 0; --f) {
      std::vector<unsigned> index(d, 0);
      index[0] = static_cast<unsigned>(idx(g)) + 1;
      for (unsigned v = 1; v < d; ++v) index[v] = static_cast<unsigned>(idx(g));
      factors.emplace_back(Symbol::power_sum(index), static_cast<unsigned>(exp(g)) + 1);
    }
    if (exp(g) == 0) factors.emplace_back(Symbol::y(), 1);
    std::sort(factors.begin(), factors.end());
    // Merge equal symbols.
    std::vector<Monomial::Factor> merged;
    for (auto& f : factors) {
      if (!merged.empty() && merged.back().first == f.first)
        merged.back().second += f.second;
      else
        merged.push_back(f);
    }
    p.add_term(Monomial(merged), frac(coeff(g), den(g)));
  }
  return p;
}

/// Schoolbook y-polynomial product, the reference for p_lambda expansions.
std::vector<Integer> naive_product(const std::vector<std::vector<Integer>>& factors) {
  std::vector<Integer> acc{1};
  for (const auto& f : factors) {
    std::vector<Integer> next(acc.size() + f.size() - 1, 0);
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) next[i + j] += acc[i] * f[j];
    acc = next;
  }
  return acc;
}

}  // namespace

TEST_CASE("symbols and monomials") {
  CHECK(to_string(Symbol::power_sum({2})) == "S[2]");
  CHECK(to_string(Symbol::power_sum({1, 1})) == "S[1,1]");
  CHECK_THROWS_AS(Symbol::power_sum({0, 0}), Error);
  CHECK_THROWS_AS(Symbol::moment({0}), Error);
  const Monomial m({{Symbol::power_sum({1}), 2}, {Symbol::power_sum({2}), 1}});
  CHECK(to_string(m) == "S[1]^2*S[2]");
  CHECK(m.weight() == 4);
  CHECK(m.total_degree() == 3);
  const Monomial mixed({{Symbol::power_sum({1}), 1}, {Symbol::power_sum({1, 0}), 1}});
  CHECK_THROWS_AS(mixed.dimension(), Error);
}

TEST_CASE("polynomial arithmetic") {
  const auto y = y_poly({0, 1});
  CHECK((y + y.scaled(Rational(-1))).is_zero());
  CHECK(y_poly({0, 1, -1}) * y == y_poly({0, 0, 1, -1}));
  CHECK(y.pow(3) == y_poly({0, 0, 0, 1}));
  CHECK(to_string(p_polynomial(2)) == "y - y^2");

  RationalPolynomial one_var(Monomial(Symbol::power_sum({1})));
  RationalPolynomial two_var(Monomial(Symbol::power_sum({1, 0})));
  try {
    (void)(one_var + two_var);
    FAIL("mixed dimensions accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimension);
  }
}

TEST_CASE("p_2 * p_1^2 matches a schoolbook product") {
  const auto fast = p_polynomial(2) * p_polynomial(1).pow(2);
  const auto naive = naive_product({{0, 1, -1}, {0, 1}, {0, 1}});
  for (std::size_t k = 0; k < naive.size(); ++k)
    CHECK(fast.coefficient(k == 0 ? Monomial() : Monomial(Symbol::y(), static_cast<unsigned>(k))) == Rational(naive[k]));
  // Larger case against the Stirling definition directly.
  std::vector<std::vector<Integer>> factors;
  for (unsigned j : {4u, 3u, 3u, 1u}) {
    std::vector<Integer> c(j + 1, 0);
    for (unsigned k = 1; k <= j; ++k) c[k] = (k % 2 ? 1 : -1) * factorial(k - 1) * stirling2(j, k);
    factors.push_back(c);
  }
  const auto big = p_polynomial(4) * p_polynomial(3).pow(2) * p_polynomial(1);
  const auto ref = naive_product(factors);
  for (std::size_t k = 1; k < ref.size(); ++k)
    CHECK(big.coefficient(Monomial(Symbol::y(), static_cast<unsigned>(k))) == Rational(ref[k]));
}

TEST_CASE("ring axioms on random polynomials") {
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned d = trial % 2 ? 2 : 1;
    const auto a = random_poly(d), b = random_poly(d), c = random_poly(d);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a.pow(2) == a * a);
  }
}

TEST_CASE("integer polynomials in n") {
  CHECK(to_string(IntPoly::falling(2)) == "n^2 - n");
  CHECK(IntPoly::falling(3)(Integer(5)) == 60);
  CHECK(IntPoly::falling(3)(Integer(2)) == 0);
  IntPoly p = IntPoly::falling(3);
  CHECK(p.divide_by_root(2));
  CHECK(p == IntPoly::falling(2));
  CHECK_FALSE(p.divide_by_root(5));
  CHECK(p == IntPoly::falling(2));
  CHECK(IntPoly::falling_range(2, 4) * IntPoly::falling(2) == IntPoly::falling(4));
}

TEST_CASE("rational functions of n reduce canonically") {
  // (n-1)/(n(n-1)) == 1/n
  const RationalFunctionOfN a(IntPoly({Integer(-1), Integer(1)}), 2);
  CHECK(a == RationalFunctionOfN::inverse_falling(1));
  CHECK(a.den_falling() == 1);
  // 6/(4 (n)_1) == 3/(2 n)
  const RationalFunctionOfN b(IntPoly(Integer(6)), 1, Integer(4));
  CHECK(b.den_scalar() == 2);
  CHECK(b.numerator() == IntPoly(Integer(3)));
  // Negative scalar moves into the numerator.
  const RationalFunctionOfN c(IntPoly(Integer(1)), 0, Integer(-2));
  CHECK(c == RationalFunctionOfN(frac(-1, 2)));
  CHECK((a - a).is_zero());
  CHECK((a - a).den_falling() == 0);
  CHECK(a(Integer(4)) == frac(1, 4));
  CHECK_THROWS_AS(RationalFunctionOfN::inverse_falling(3)(Integer(2)), Error);
  try {
    RationalFunctionOfN::inverse_falling(3)(2.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSampleSize);
  }
  // 1/n + 1/(n(n-1)) = 1/(n-1) = n/(n)_2
  const auto sum = RationalFunctionOfN::inverse_falling(1) + RationalFunctionOfN::inverse_falling(2);
  CHECK(sum == RationalFunctionOfN(IntPoly::n(), 2));
  // A polynomial times 1/(n)_m stays in the representation.
  const auto prod = RationalFunctionOfN(IntPoly::falling(2), 0) * RationalFunctionOfN::inverse_falling(3);
  CHECK(prod == RationalFunctionOfN(IntPoly(Integer(1)), 3, 1) * RationalFunctionOfN(IntPoly::falling(2), 0));
  CHECK(prod(Integer(5)) == frac(1, 3));
  CHECK_THROWS_AS(RationalFunctionOfN::inverse_falling(2) * RationalFunctionOfN::inverse_falling(2), Error);
}

TEST_CASE("substituting y powers") {
  const std::map<unsigned, RationalFunctionOfN> rule{{1, y_substitution_constant(1)}, {2, y_substitution_constant(2)}};
  // y -> 1/n
  const auto one = substitute_y_powers(y_poly({0, 1}), rule);
  CHECK(one.coefficient(Monomial()) == RationalFunctionOfN::inverse_falling(1));
  // y - y^2 -> 1/(n-1): the k_2 coefficient path.
  const auto k2 = substitute_y_powers(p_polynomial(2), rule);
  CHECK(k2.coefficient(Monomial()) == RationalFunctionOfN(IntPoly::n(), 2));
  CHECK(k2.coefficient(Monomial())(Integer(5)) == frac(1, 4));
  // Degree-0 terms pass through.
  const auto constant = substitute_y_powers(y_poly({7}), rule);
  CHECK(constant.coefficient(Monomial()) == RationalFunctionOfN(Rational(7)));
  CHECK_THROWS_AS(substitute_y_powers(y_poly({0, 0, 0, 1}), rule), Error);
  // Commutes with addition.
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_poly(1), q = random_poly(1);
    p = p * y_poly({0, 1});
    q = q * y_poly({1, 0, -1});
    const std::map<unsigned, RationalFunctionOfN> full{
        {1, y_substitution_constant(1)}, {2, y_substitution_constant(2)}, {3, y_substitution_constant(3)}};
    CHECK(substitute_y_powers(p + q, full) == substitute_y_powers(p, full) + substitute_y_powers(q, full));
  }
}

TEST_CASE("substitution constants") {
  CHECK(y_substitution_constant(1) == RationalFunctionOfN::inverse_falling(1));
  CHECK(y_substitution_constant(2) == RationalFunctionOfN(IntPoly(Integer(-1)), 2));
  CHECK(y_substitution_constant(3) == RationalFunctionOfN(IntPoly(Integer(2)), 3));
}
