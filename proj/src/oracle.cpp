#include <kstat/oracle.hpp>

#include "parallel.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>

namespace kstat {

namespace {

constexpr unsigned kMaxBruteForceN = 6;
constexpr double kMaxBruteForceAssignments = 2e6;

unsigned resolve_dimension(const PolynomialRF& p, unsigned dimension) {
  if (dimension != 0 && p.dimension() != 0 && p.dimension() != dimension)
    fail(ErrorCode::kDimension, "polynomial indexes " + std::to_string(p.dimension()) +
                                    " variables, expected " + std::to_string(dimension));
  return dimension != 0 ? dimension : p.dimension();
}

/// Power-sum indices of a monomial, each repeated by its exponent.
std::vector<std::vector<unsigned>> power_sum_factors(const Monomial& m) {
  std::vector<std::vector<unsigned>> out;
  for (const auto& [sym, e] : m.factors()) {
    if (sym.kind != Symbol::Kind::kPowerSum)
      fail(ErrorCode::kUsage, "expectation needs a polynomial in power sums only, found " + to_string(sym));
    out.insert(out.end(), e, sym.index);
  }
  return out;
}

Monomial moment_monomial(std::vector<std::pair<std::vector<unsigned>, unsigned>> parts) {
  std::vector<Monomial::Factor> factors;
  for (auto& [index, e] : parts) factors.emplace_back(Symbol::moment(std::move(index)), e);
  return Monomial(std::move(factors));
}

/// E[prod of the factors of m] as moment monomial -> integer polynomial in n.
std::map<Monomial, IntPoly> monomial_expectation(const Monomial& m) {
  std::map<Monomial, IntPoly> out;
  // Items of the factor multiset are the distinct power-sum indices.
  std::vector<std::vector<unsigned>> items;
  std::vector<unsigned> counts;
  for (const auto& [sym, e] : m.factors()) {
    if (sym.kind != Symbol::Kind::kPowerSum)
      fail(ErrorCode::kUsage, "expectation needs a polynomial in power sums only, found " + to_string(sym));
    items.push_back(sym.index);
    counts.push_back(e);
  }
  if (items.empty()) {
    out[Monomial()] = IntPoly(Integer(1));
    return out;
  }
  const std::size_t dim = items.front().size();
  for_each_subdivision(Multiset(counts), [&](std::span<const Block> blocks, const Integer& n_sigma) {
    std::vector<std::pair<std::vector<unsigned>, unsigned>> parts;
    unsigned size = 0;
    for (const Block& b : blocks) {
      std::vector<unsigned> index(dim, 0);
      for (std::size_t j = 0; j < items.size(); ++j)
        for (std::size_t v = 0; v < dim; ++v) index[v] += b.part[j] * items[j][v];
      parts.emplace_back(std::move(index), b.multiplicity);
      size += b.multiplicity;
    }
    IntPoly term = IntPoly::falling(size);
    term *= n_sigma;
    out[moment_monomial(std::move(parts))] += term;
  });
  return out;
}

MomentPolynomial lift(const std::map<Monomial, Integer>& terms) {
  MomentPolynomial out;
  for (const auto& [m, c] : terms) out.add_term(m, RationalFunctionOfN(Rational(c)));
  return out;
}

}  // namespace

MomentPolynomial expectation_power_sum_poly(const PolynomialRF& p, unsigned dimension, bool parallel) {
  resolve_dimension(p, dimension);
  const std::vector<std::pair<Monomial, RationalFunctionOfN>> terms(p.terms().begin(), p.terms().end());
  auto parts = detail::run_chunks<MomentPolynomial>(
      terms.size(), detail::worker_count(parallel, 0),
      [&](std::size_t begin, std::size_t end, MomentPolynomial& acc) {
        for (std::size_t t = begin; t < end; ++t) {
          const auto& [mono, coeff] = terms[t];
          for (const auto& [moments, q] : monomial_expectation(mono))
            acc.add_term(moments, coeff * RationalFunctionOfN(q, 0));
        }
      });
  MomentPolynomial out;
  for (const auto& part : parts) out += part;
  return out;
}

MomentPolynomial brute_force_expectation(const PolynomialRF& p, unsigned n_value, unsigned dimension) {
  const unsigned dim = resolve_dimension(p, dimension);
  if (n_value == 0) fail(ErrorCode::kUsage, "brute force needs at least one observation");
  if (n_value > kMaxBruteForceN)
    fail(ErrorCode::kCapacity, "brute force supports n <= " + std::to_string(kMaxBruteForceN));

  std::map<Monomial, Rational> acc;
  for (const auto& [mono, coeff] : p.terms()) {
    const auto factors = power_sum_factors(mono);
    const std::size_t f = factors.size();
    if (std::pow(static_cast<double>(n_value), static_cast<double>(f)) > kMaxBruteForceAssignments)
      fail(ErrorCode::kCapacity, "brute force over " + std::to_string(f) + " factors at n = " +
                                     std::to_string(n_value) + " is too large");
    const Rational c = coeff(Integer(n_value));
    // Walk every assignment of factors to sample indices, odometer style.
    std::vector<unsigned> who(f, 0);
    while (true) {
      std::vector<std::vector<unsigned>> exponent(n_value, std::vector<unsigned>(dim, 0));
      for (std::size_t k = 0; k < f; ++k)
        for (unsigned v = 0; v < dim; ++v) exponent[who[k]][v] += factors[k][v];
      // Distinct observations are independent: one moment per used index.
      std::map<std::vector<unsigned>, unsigned> moments;
      for (const auto& e : exponent)
        if (std::any_of(e.begin(), e.end(), [](unsigned x) { return x != 0; })) ++moments[e];
      std::vector<std::pair<std::vector<unsigned>, unsigned>> parts(moments.begin(), moments.end());
      acc[moment_monomial(std::move(parts))] += c;

      std::size_t k = 0;
      while (k < f && ++who[k] == n_value) who[k++] = 0;
      if (k == f) break;
    }
  }
  MomentPolynomial out;
  for (const auto& [m, c] : acc) out.add_term(m, RationalFunctionOfN(c));
  return out;
}

MomentPolynomial specialize(const MomentPolynomial& p, unsigned n_value) {
  MomentPolynomial out;
  for (const auto& [m, c] : p.terms()) out.add_term(m, RationalFunctionOfN(c(Integer(n_value))));
  return out;
}

MomentPolynomial cumulant_in_moments(unsigned i) {
  if (i == 0) fail(ErrorCode::kUsage, "cumulant order must be at least 1");
  std::map<Monomial, Integer> terms;
  for (const auto& lambda : enumerate_partitions(static_cast<int>(i))) {
    const unsigned nu = lambda.length();
    Integer c = factorial(nu - 1) * d_coefficient(lambda);
    if (nu % 2 == 0) c = -c;
    const auto r = lambda.multiplicities();
    std::vector<std::pair<std::vector<unsigned>, unsigned>> parts;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (r[j] != 0) parts.push_back({{static_cast<unsigned>(j + 1)}, r[j]});
    terms[moment_monomial(std::move(parts))] += c;
  }
  return lift(terms);
}

MomentPolynomial cumulant_in_moments(const Multiset& m) {
  if (m.empty()) fail(ErrorCode::kUsage, "joint cumulant of an empty multiset");
  std::map<Monomial, Integer> terms;
  for_each_subdivision(m, [&](std::span<const Block> blocks, const Integer& n_pi) {
    unsigned size = 0;
    std::vector<std::pair<std::vector<unsigned>, unsigned>> parts;
    for (const Block& b : blocks) {
      parts.emplace_back(b.part.counts(), b.multiplicity);
      size += b.multiplicity;
    }
    Integer c = n_pi * factorial(size - 1);
    if (size % 2 == 0) c = -c;
    terms[moment_monomial(std::move(parts))] += c;
  });
  return lift(terms);
}

Certification check_unbiased(const EstimatorExpr& e, bool parallel) {
  const auto start = std::chrono::steady_clock::now();
  MomentPolynomial target(RationalFunctionOfN(Rational(1)));
  if (e.spec.univariate()) {
    for (unsigned r : e.spec.orders()) target *= cumulant_in_moments(r);
  } else {
    for (const auto& g : e.spec.groups()) target *= cumulant_in_moments(g);
  }
  Certification out;
  out.label = e.spec.label();
  out.difference = expectation_power_sum_poly(e.body, e.spec.dimension(), parallel) - target;
  out.pass = out.difference.is_zero();
  out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

namespace {

nlohmann::ordered_json record(const Certification& c) {
  nlohmann::ordered_json j;
  j["estimator"] = c.label;
  j["pass"] = c.pass;
  j["difference"] = c.pass ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(to_string(c.difference));
  j["elapsed_ms"] = c.elapsed_ms;
  return j;
}

}  // namespace

std::string certification_json(const Certification& c) { return record(c).dump(); }

std::string certification_json(const std::vector<Certification>& all) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : all) arr.push_back(record(c));
  return arr.dump(2);
}

}  // namespace kstat
