// Acceptance gate: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <kstat/bench.hpp>
#include <kstat/estimators.hpp>
#include <kstat/evaluator.hpp>
#include <kstat/oracle.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace kstat;

namespace {

// Pinned limits, seconds.
constexpr double kUnivariateSuiteLimit = 120.0;
constexpr double kK16Limit = 5.0;
constexpr double kK20Limit = 60.0;
constexpr double kK24Limit = 600.0;

constexpr unsigned kRandomDatasets = 50;
constexpr std::size_t kDatasetRows = 20;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Certifies every spec of a suite; detail counts them.
Outcome certify_suite(const std::string& suite) {
  Outcome out;
  std::size_t count = 0;
  for (const auto& spec : expand_suite(suite)) {
    const auto c = check_unbiased(generate(spec));
    out.require(c.pass, spec.label() + " has nonzero difference " + to_string(c.difference));
    ++count;
  }
  if (out.pass) out.detail = std::to_string(count) + " estimators certified";
  return out;
}

PolynomialRF term(std::vector<std::vector<unsigned>> factors, std::vector<long> num, unsigned falling) {
  std::vector<Monomial::Factor> f;
  std::map<std::vector<unsigned>, unsigned> count;
  for (auto& idx : factors) ++count[idx];
  Monomial m;
  for (const auto& [idx, e] : count) m = m * Monomial(Symbol::power_sum(idx), e);
  std::vector<Integer> c;
  for (long v : num) c.emplace_back(v);
  return PolynomialRF(m, RationalFunctionOfN(IntPoly(c), falling));
}

Outcome closed_forms() {
  Outcome out;
  const PolynomialRF k1 = term({{1}}, {1}, 1);
  const PolynomialRF k2 = term({{2}}, {0, 1}, 2) + term({{1}, {1}}, {-1}, 2);
  const PolynomialRF k3 = term({{1}, {1}, {1}}, {2}, 3) + term({{1}, {2}}, {0, -3}, 3) + term({{3}}, {0, 0, 1}, 3);
  out.require(k_statistic(1).body == k1, "k_1 differs from S_1/n");
  out.require(k_statistic(2).body == k2, "k_2 differs from (nS_2 - S_1^2)/(n(n-1))");
  out.require(k_statistic(3).body == k3, "k_3 differs from (2S_1^3 - 3nS_1S_2 + n^2S_3)/(n(n-1)(n-2))");
  if (out.pass) out.detail = "k_1, k_2, k_3 match term by term";
  return out;
}

Outcome oracle_independence() {
  Outcome out;
  std::size_t checked = 0;
  for (unsigned d = 1; d <= 2; ++d)
    for (const auto& m : kstat::testing::power_sum_monomials(d, 4)) {
      const PolynomialRF p(m);
      const auto symbolic = expectation_power_sum_poly(p);
      for (unsigned n = 2; n <= 4; ++n) {
        out.require(specialize(symbolic, n) == brute_force_expectation(p, n),
                    to_string(m) + " disagrees at n = " + std::to_string(n));
        ++checked;
      }
    }
  if (out.pass) out.detail = std::to_string(checked) + " monomial/n pairs agree";
  return out;
}

Outcome reductions() {
  Outcome out;
  for (unsigned i = 1; i <= 10; ++i) {
    const auto k = k_statistic(i);
    out.require(polykay({i}).body == k.body, "polykay([" + std::to_string(i) + "]) differs from k_" + std::to_string(i));
    const Multiset single({i});
    // The pair-level route reaches the same polynomial without the y substitution.
    out.require(cumulant_product_estimator(std::span(&single, 1)) == k.body,
                "pair-level route differs from k_" + std::to_string(i));
    out.require(multivariate_k_statistic(single).body == k.body, "mk[" + std::to_string(i) + "] differs from k_" + std::to_string(i));
  }
  for (const auto& spec : expand_suite("pk:total<=8/groups=2,pk:total<=6/groups=3")) {
    std::vector<Multiset> groups;
    for (unsigned r : spec.orders()) groups.emplace_back(std::vector<unsigned>{r});
    out.require(multivariate_polykay(groups).body == polykay(spec.orders()).body,
                "single-variable form of " + spec.label() + " differs");
  }
  if (out.pass) out.detail = "i <= 10 and single-variable polykays reduce exactly";
  return out;
}

Outcome evaluation() {
  Outcome out;
  const Dataset small({{Rational(1)}, {Rational(2)}, {Rational(3)}});
  out.require(evaluate_exact(k_statistic(1), small) == 2, "k_1 on {1,2,3} is not 2");
  out.require(evaluate_exact(k_statistic(2), small) == 1, "k_2 on {1,2,3} is not 1");

  auto& rng = kstat::testing::rng();
  std::uniform_int_distribution<int> num(-50, 50), den(1, 12), tweak(-6, 6);
  for (unsigned trial = 0; trial < kRandomDatasets; ++trial) {
    std::vector<std::vector<Rational>> rows(kDatasetRows, std::vector<Rational>(1));
    for (auto& row : rows) {
      row[0] = Rational(num(rng), den(rng));
      row[0].canonicalize();
    }
    int top = tweak(rng);
    if (top == 0) top = 5;
    Rational scale(top, 1 + trial % 4), shift(tweak(rng), 11);
    scale.canonicalize();
    shift.canonicalize();
    auto moved = rows;
    for (auto& row : moved) row[0] = scale * row[0] + shift;
    const Dataset a(rows), b(moved);
    out.require(evaluate_exact(k_statistic(1), b) == scale * evaluate_exact(k_statistic(1), a) + shift,
                "k_1 is not equivariant");
    Rational factor = scale;
    for (unsigned i = 2; i <= 6; ++i) {
      factor *= scale;
      out.require(evaluate_exact(k_statistic(i), b) == factor * evaluate_exact(k_statistic(i), a),
                  "k_" + std::to_string(i) + " fails shift invariance or homogeneity");
    }
  }
  if (out.pass) out.detail = "exact values and " + std::to_string(kRandomDatasets) + " random datasets";
  return out;
}

Outcome timings() {
  Outcome out;
  std::ostringstream detail;
  for (auto [order, limit] : {std::pair{16u, kK16Limit}, {20u, kK20Limit}, {24u, kK24Limit}}) {
    const auto start = std::chrono::steady_clock::now();
    const auto e = k_statistic(order);
    const double took = seconds_since(start);
    out.require(e.term_count() > 0 && took <= limit, "k_" + std::to_string(order) + " took " + std::to_string(took) + " s");
    char buf[64];
    std::snprintf(buf, sizeof buf, "k_%u %.3fs ", order, took);
    detail << buf;
  }
  const auto rows = run_bench(default_bench_grid());
  std::size_t notes = 0;
  for (const auto& row : rows) {
    if (!row.note.empty()) {
      out.require(row.note.find("capacity") != std::string::npos || row.note.find("limit") != std::string::npos,
                  row.spec + " failed without a capacity note: " + row.note);
      ++notes;
    } else {
      out.require(row.terms > 0, row.spec + " produced no terms");
    }
  }
  const auto tsv = bench_tsv(rows);
  out.require(static_cast<std::size_t>(std::count(tsv.begin(), tsv.end(), '\n')) == rows.size() + 1,
              "bench table has the wrong number of lines");
  detail << "grid " << rows.size() << " rows (" << notes << " capacity notes)";
  if (out.pass) out.detail = detail.str();
  return out;
}

Outcome negative_controls() {
  Outcome out;
  std::size_t flipped = 0;
  const RationalFunctionOfN nudge(Rational(1, 1000));
  for (const auto& spec : expand_suite("k:1..6,pk 2 1,pk 2 2,pk 2 1 1,mk 1 1,mk 2 1,mpk 1 1;1 1,mpk 2 1;1 1")) {
    const auto e = generate(spec);
    for (const auto& [mono, coeff] : e.body.terms()) {
      for (const auto& delta : {coeff, nudge}) {
        auto bad = e;
        bad.body.add_term(mono, delta);
        out.require(!check_unbiased(bad).pass, spec.label() + " still certifies after perturbing " + to_string(mono));
        ++flipped;
      }
    }
  }
  if (out.pass) out.detail = std::to_string(flipped) + " perturbations all FAIL";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"univariate k-statistics k_1..k_12 unbiased",
       [] {
         const auto start = std::chrono::steady_clock::now();
         auto out = certify_suite("k:1..12");
         const double took = seconds_since(start);
         out.require(took <= kUnivariateSuiteLimit, "suite took " + std::to_string(took) + " s");
         return out;
       }},
      {"closed forms of k_1, k_2, k_3", closed_forms},
      {"polykays r+t <= 8, r+t+u <= 6 and table indices unbiased",
       [] { return certify_suite("pk:total<=8/groups=2,pk:total<=6/groups=3,pk 3 2,pk 4 4,pk 5 3,pk 4 4 4"); }},
      {"multivariate k-statistics |M| <= 6, d <= 3 and table indices unbiased",
       [] { return certify_suite("mk:size<=6/vars<=3,mk 3 2,mk 4 4,mk 3 3 3,mk 1 1"); }},
      {"multivariate polykays of the reference table unbiased", [] { return certify_suite("mpk:table2"); }},
      {"brute-force and symbolic expectations agree", oracle_independence},
      {"consistency reductions", reductions},
      {"numeric evaluation", evaluation},
      {"feasibility timings and bench grid", timings},
      {"negative controls", negative_controls},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("threw: ") + e.what();
    }
    all = all && out.pass;
    std::printf("criterion %zu: %s  %s (%s)\n", i + 1, out.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                out.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
