#include <kstat/estimators.hpp>

#include "parallel.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <mutex>

namespace kstat {

namespace {

using DenseY = std::vector<Integer>;  // coefficient of y^k at [k]

/// Per-monomial accumulator: series[m] multiplies 1 / (n)_m.
using SeriesMap = std::map<Monomial, std::vector<Integer>>;

const DenseY& p_coeffs(unsigned j) {
  static std::mutex mutex;
  static std::vector<std::unique_ptr<DenseY>> cache;
  std::lock_guard lock(mutex);
  if (cache.size() <= j) cache.resize(j + 1);
  if (!cache[j]) {
    auto p = std::make_unique<DenseY>(j + 1, 0);
    for (unsigned k = 1; k <= j; ++k) {
      Integer c = factorial(k - 1) * stirling2(j, k);
      (*p)[k] = (k % 2 == 1) ? c : Integer(-c);
    }
    cache[j] = std::move(p);
  }
  return *cache[j];
}

/// Numerator of (-1)^(m-1) (m-1)! / (n)_m.
Integer substitution_numerator(unsigned m) {
  Integer c = factorial(m - 1);
  return m % 2 == 1 ? c : Integer(-c);
}

DenseY multiply(const DenseY& a, const DenseY& b) {
  DenseY out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t k = 0; k < b.size(); ++k)
      if (b[k] != 0) out[i + k] += a[i] * b[k];
  }
  return out;
}

void add_series(std::vector<Integer>& into, const std::vector<Integer>& from) {
  if (into.size() < from.size()) into.resize(from.size(), 0);
  for (std::size_t m = 0; m < from.size(); ++m) into[m] += from[m];
}

/// sum_m a_m / (n)_m as one fraction over (n)_M.
RationalFunctionOfN series_to_rf(const std::vector<Integer>& a) {
  std::size_t top = a.size();
  while (top > 0 && a[top - 1] == 0) --top;
  if (top == 0) return {};
  // P_0 = a_0; P_k = P_{k-1} * (n - (k-1)) + a_k.
  IntPoly acc(a[0]);
  for (std::size_t k = 1; k < top; ++k) {
    acc = acc * IntPoly({Integer(-static_cast<long>(k - 1)), Integer(1)});
    acc += IntPoly(a[k]);
  }
  return RationalFunctionOfN(std::move(acc), static_cast<unsigned>(top - 1));
}

/// y-polynomial -> substituted series, scaled by `weight`.
std::vector<Integer> substituted_series(const DenseY& ypoly, const Integer& weight) {
  std::vector<Integer> series(ypoly.size(), 0);
  for (std::size_t m = 1; m < ypoly.size(); ++m)
    if (ypoly[m] != 0) series[m] = weight * ypoly[m] * substitution_numerator(static_cast<unsigned>(m));
  return series;
}

PolynomialRF finish(std::vector<SeriesMap>&& parts) {
  SeriesMap total = std::move(parts.front());
  for (std::size_t j = 1; j < parts.size(); ++j)
    for (auto& [mono, series] : parts[j]) add_series(total[mono], series);
  PolynomialRF out;
  for (const auto& [mono, series] : total) out.add_term(mono, series_to_rf(series));
  return out;
}

void check_capacity(unsigned order, unsigned limit, const char* what) {
  if (order > limit)
    fail(ErrorCode::kCapacity, std::string(what) + " of total order " + std::to_string(order) +
                                   " exceeds the configured limit " + std::to_string(limit));
}

Monomial power_sum_monomial(std::span<const Block> blocks) {
  std::vector<Monomial::Factor> factors;
  factors.reserve(blocks.size());
  for (const Block& b : blocks) factors.emplace_back(Symbol::power_sum(b.part.counts()), b.multiplicity);
  return Monomial(std::move(factors));
}

// ---------------------------------------------------------------------------
// Augmented estimators, memoized by moment index.

struct AugmentedTerms {
  unsigned nu = 0;  // denominator (n)_nu
  std::vector<std::pair<Monomial, Integer>> terms;
};

std::shared_ptr<const AugmentedTerms> compute_augmented(const MomentIndex& parts) {
  auto out = std::make_shared<AugmentedTerms>();
  out->nu = static_cast<unsigned>(parts.size());
  // Distinct part vectors become items of a multiset.
  std::vector<std::vector<unsigned>> items;
  std::vector<unsigned> counts;
  for (const auto& p : parts) {
    if (!items.empty() && items.back() == p)
      ++counts.back();
    else {
      items.push_back(p);
      counts.push_back(1);
    }
  }
  const std::size_t dim = parts.front().size();
  std::map<Monomial, Integer> acc;
  for_each_subdivision(Multiset(counts), [&](std::span<const Block> blocks, const Integer& n_sigma) {
    Integer coeff = n_sigma;
    std::vector<Monomial::Factor> factors;
    factors.reserve(blocks.size());
    for (const Block& b : blocks) {
      std::vector<unsigned> index(dim, 0);
      for (std::size_t j = 0; j < items.size(); ++j)
        for (std::size_t v = 0; v < dim; ++v) index[v] += b.part[j] * items[j][v];
      const unsigned size = b.part.length();
      // Moebius weight (-1)^(|B|-1) (|B|-1)! per block.
      Integer mu = factorial(size - 1);
      if (size % 2 == 0) mu = -mu;
      Integer power;
      mpz_pow_ui(power.get_mpz_t(), mu.get_mpz_t(), b.multiplicity);
      coeff *= power;
      factors.emplace_back(Symbol::power_sum(std::move(index)), b.multiplicity);
    }
    acc[Monomial(std::move(factors))] += coeff;
  });
  for (auto& [mono, c] : acc)
    if (c != 0) out->terms.emplace_back(mono, c);
  return out;
}

std::shared_ptr<const AugmentedTerms> augmented_terms(const MomentIndex& parts) {
  static std::mutex mutex;
  static std::map<MomentIndex, std::shared_ptr<const AugmentedTerms>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(parts); it != cache.end()) return it->second;
  }
  auto computed = compute_augmented(parts);
  std::lock_guard lock(mutex);
  return cache.try_emplace(parts, std::move(computed)).first->second;
}

MomentIndex merge_index(const MomentIndex& a, const MomentIndex& b) {
  MomentIndex out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), std::greater<>());
  return out;
}

/// Cumulant of one group as (moment index, integer weight) pairs.
std::vector<std::pair<MomentIndex, Integer>> cumulant_expansion(const Multiset& group) {
  std::vector<std::pair<MomentIndex, Integer>> out;
  for_each_subdivision(group, [&](std::span<const Block> blocks, const Integer& n_pi) {
    MomentIndex index;
    unsigned size = 0;
    for (const Block& b : blocks) {
      index.insert(index.end(), b.multiplicity, b.part.counts());
      size += b.multiplicity;
    }
    std::sort(index.begin(), index.end(), std::greater<>());
    Integer w = n_pi * factorial(size - 1);
    if (size % 2 == 0) w = -w;
    out.emplace_back(std::move(index), std::move(w));
  });
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

RationalPolynomial p_polynomial(unsigned j) {
  if (j == 0) fail(ErrorCode::kUsage, "p_j is defined for j >= 1");
  const DenseY& c = p_coeffs(j);
  RationalPolynomial out;
  for (unsigned k = 1; k <= j; ++k) out.add_term(Monomial(Symbol::y(), k), Rational(c[k]));
  return out;
}

RationalFunctionOfN y_substitution_constant(unsigned m) {
  if (m == 0) fail(ErrorCode::kUsage, "substitution constants start at y^1");
  return RationalFunctionOfN(IntPoly(substitution_numerator(m)), m);
}

EstimatorExpr k_statistic(unsigned i, const GenerationOptions& options) {
  if (i == 0) fail(ErrorCode::kUsage, "k-statistic order must be at least 1");
  check_capacity(i, options.max_univariate_order, "k-statistic");
  const auto partitions = enumerate_partitions(static_cast<int>(i));

  auto parts = detail::run_chunks<SeriesMap>(
      partitions.size(), detail::worker_count(options.parallel, options.threads),
      [&](std::size_t begin, std::size_t end, SeriesMap& acc) {
        for (std::size_t t = begin; t < end; ++t) {
          const IntegerPartition& lambda = partitions[t];
          const auto r = lambda.multiplicities();
          DenseY ypoly{Integer(1)};
          std::vector<Monomial::Factor> factors;
          for (std::size_t j = 0; j < r.size(); ++j) {
            if (r[j] == 0) continue;
            const auto part = static_cast<unsigned>(j + 1);
            for (unsigned e = 0; e < r[j]; ++e) ypoly = multiply(ypoly, p_coeffs(part));
            factors.emplace_back(Symbol::power_sum({part}), r[j]);
          }
          acc[Monomial(std::move(factors))] = substituted_series(ypoly, d_coefficient(lambda));
        }
      });
  return EstimatorExpr{EstimatorSpec::k(i), finish(std::move(parts))};
}

EstimatorExpr multivariate_k_statistic(const Multiset& m, const GenerationOptions& options) {
  if (m.empty()) fail(ErrorCode::kUsage, "multivariate k-statistic needs a nonempty multiset");
  check_capacity(m.length(), options.max_multivariate_order, "multivariate k-statistic");

  struct Item {
    std::vector<Block> blocks;
    Integer count;
  };
  std::vector<Item> subdivisions;
  for_each_subdivision(m, [&](std::span<const Block> blocks, const Integer& n_pi) {
    subdivisions.push_back({std::vector<Block>(blocks.begin(), blocks.end()), n_pi});
  });

  auto parts = detail::run_chunks<SeriesMap>(
      subdivisions.size(), detail::worker_count(options.parallel, options.threads),
      [&](std::size_t begin, std::size_t end, SeriesMap& acc) {
        for (std::size_t t = begin; t < end; ++t) {
          const Item& item = subdivisions[t];
          DenseY ypoly{Integer(1)};
          for (const Block& b : item.blocks)
            for (unsigned e = 0; e < b.multiplicity; ++e) ypoly = multiply(ypoly, p_coeffs(b.part.length()));
          add_series(acc[power_sum_monomial(item.blocks)], substituted_series(ypoly, item.count));
        }
      });
  return EstimatorExpr{EstimatorSpec::multi_k(m), finish(std::move(parts))};
}

MomentIndex moment_index(const IntegerPartition& xi) {
  MomentIndex out;
  for (unsigned p : xi.parts()) out.push_back({p});
  return out;
}

std::map<IntegerPartition, Integer> cumulant_product_coefficients(std::span<const unsigned> orders) {
  if (orders.empty()) fail(ErrorCode::kUsage, "need at least one cumulant order");
  std::map<IntegerPartition, Integer> acc{{IntegerPartition(), Integer(1)}};
  for (unsigned r : orders) {
    if (r == 0) fail(ErrorCode::kUsage, "cumulant orders must be at least 1");
    std::map<IntegerPartition, Integer> next;
    for (const auto& lambda : enumerate_partitions(static_cast<int>(r))) {
      const unsigned nu = lambda.length();
      Integer w = factorial(nu - 1) * d_coefficient(lambda);
      if (nu % 2 == 0) w = -w;
      for (const auto& [xi, c] : acc) next[xi + lambda] += c * w;
    }
    acc = std::move(next);
  }
  std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
  return acc;
}

std::map<MomentIndex, Integer> cumulant_product_coefficients(std::span<const Multiset> groups) {
  if (groups.empty()) fail(ErrorCode::kUsage, "need at least one cumulant group");
  std::map<MomentIndex, Integer> acc{{MomentIndex(), Integer(1)}};
  for (const auto& group : groups) {
    if (group.empty()) fail(ErrorCode::kUsage, "cumulant groups must be nonempty");
    if (group.items() != groups.front().items())
      fail(ErrorCode::kDimension, "cumulant groups index different variable counts");
    std::map<MomentIndex, Integer> next;
    for (const auto& [index, w] : cumulant_expansion(group))
      for (const auto& [prefix, c] : acc) next[merge_index(prefix, index)] += c * w;
    acc = std::move(next);
  }
  std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
  return acc;
}

PolynomialRF augmented_estimator(const MomentIndex& parts) {
  if (parts.empty()) fail(ErrorCode::kUsage, "augmented estimator needs at least one part");
  MomentIndex sorted = parts;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const auto terms = augmented_terms(sorted);
  PolynomialRF out;
  for (const auto& [mono, c] : terms->terms)
    out.add_term(mono, RationalFunctionOfN(IntPoly(c), terms->nu));
  return out;
}

PolynomialRF augmented_estimator(const IntegerPartition& xi) {
  return augmented_estimator(moment_index(xi));
}

PolynomialRF cumulant_product_estimator(std::span<const Multiset> groups,
                                        const GenerationOptions& options) {
  const auto coefficients = cumulant_product_coefficients(groups);
  std::vector<std::pair<MomentIndex, Integer>> work(coefficients.begin(), coefficients.end());

  auto parts = detail::run_chunks<SeriesMap>(
      work.size(), detail::worker_count(options.parallel, options.threads),
      [&](std::size_t begin, std::size_t end, SeriesMap& acc) {
        for (std::size_t t = begin; t < end; ++t) {
          const auto& [xi, c] = work[t];
          const auto aug = augmented_terms(xi);
          for (const auto& [mono, a] : aug->terms) {
            auto& series = acc[mono];
            if (series.size() <= aug->nu) series.resize(aug->nu + 1, 0);
            series[aug->nu] += c * a;
          }
        }
      });
  return finish(std::move(parts));
}

EstimatorExpr polykay(std::vector<unsigned> orders, const GenerationOptions& options) {
  auto spec = EstimatorSpec::polykay(orders);
  check_capacity(spec.total_order(), options.max_univariate_order, "polykay");
  if (orders.size() == 1) {
    EstimatorExpr k = k_statistic(orders.front(), options);
    return EstimatorExpr{std::move(spec), std::move(k.body)};
  }
  return EstimatorExpr{spec, cumulant_product_estimator(spec.groups(), options)};
}

EstimatorExpr multivariate_polykay(std::vector<Multiset> groups, const GenerationOptions& options) {
  auto spec = EstimatorSpec::multi_polykay(std::move(groups));
  check_capacity(spec.total_order(), options.max_multivariate_order, "multivariate polykay");
  if (spec.groups().size() == 1) {
    EstimatorExpr k = multivariate_k_statistic(spec.groups().front(), options);
    return EstimatorExpr{std::move(spec), std::move(k.body)};
  }
  return EstimatorExpr{spec, cumulant_product_estimator(spec.groups(), options)};
}

EstimatorExpr generate(const EstimatorSpec& spec, const GenerationOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  EstimatorExpr out = [&] {
    switch (spec.family()) {
      case Family::kK:
        return k_statistic(spec.orders().front(), options);
      case Family::kPolykay:
        return polykay(spec.orders(), options);
      case Family::kMultiK:
        return multivariate_k_statistic(spec.groups().front(), options);
      case Family::kMultiPolykay:
        return multivariate_polykay(spec.groups(), options);
    }
    fail(ErrorCode::kInternal, "unhandled estimator family");
  }();
  out.spec = spec;
  out.generation_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

unsigned EstimatorExpr::required_sample_size() const {
  unsigned deepest = 0;
  for (const auto& [mono, c] : body.terms()) deepest = std::max(deepest, c.den_falling());
  return deepest;
}

}  // namespace kstat
