#pragma once

// Test-only oracles that do not go through the library's own enumerators.

#include <kstat/combinatorics.hpp>
#include <kstat/polyring.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <vector>

namespace kstat::testing {

/// Every set partition of {0..size-1} as a restricted growth string.
inline void for_each_set_partition(unsigned size, const std::function<void(const std::vector<unsigned>&)>& fn) {
  std::vector<unsigned> label(size, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned used) {
    if (pos == size) {
      fn(label);
      return;
    }
    for (unsigned b = 0; b <= used && b < size; ++b) {
      label[pos] = b;
      rec(pos + 1, std::max(used, b + 1));
    }
  };
  if (size == 0) {
    fn(label);
    return;
  }
  rec(0, 0);
}

/// Labels the elements of m (item of element e is items[e]).
inline std::vector<unsigned> element_items(const Multiset& m) {
  std::vector<unsigned> items;
  for (unsigned j = 0; j < m.items(); ++j) items.insert(items.end(), m[j], j);
  return items;
}

/// Collapses every set partition of the labeled elements onto its block
/// multiset; returns canonical block lists with their counts.
inline std::map<std::vector<Block>, Integer> brute_force_subdivisions(const Multiset& m) {
  const auto items = element_items(m);
  std::map<std::vector<Block>, Integer> out;
  for_each_set_partition(static_cast<unsigned>(items.size()), [&](const std::vector<unsigned>& label) {
    const unsigned blocks = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
    std::vector<std::vector<unsigned>> counts(blocks, std::vector<unsigned>(m.items(), 0));
    for (std::size_t e = 0; e < items.size(); ++e) ++counts[label[e]][items[e]];
    std::vector<Block> list;
    for (auto& c : counts) list.push_back(Block{Multiset(c), 1});
    out[Subdivision(m, list).blocks()] += 1;
  });
  return out;
}

/// All multisets over `items` items with total length in [1, max_length].
inline std::vector<Multiset> small_multisets(unsigned items, unsigned max_length) {
  std::vector<Multiset> out;
  std::vector<unsigned> c(items, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned j, unsigned left) {
    if (j == items) {
      if (left < max_length) out.emplace_back(c);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      c[j] = v;
      rec(j + 1, left - v);
    }
    c[j] = 0;
  };
  rec(0, max_length);
  return out;
}

/// Every power-sum monomial of weight <= max_weight over d variables.
inline std::vector<Monomial> power_sum_monomials(unsigned d, unsigned max_weight) {
  std::vector<std::vector<unsigned>> indices;
  for (const auto& m : small_multisets(d, max_weight)) {
    std::vector<unsigned> idx(d);
    for (unsigned j = 0; j < d; ++j) idx[j] = m[j];
    indices.push_back(idx);
  }
  std::vector<Monomial> out;
  std::function<void(std::size_t, unsigned, Monomial)> rec = [&](std::size_t from, unsigned left, Monomial m) {
    if (!m.is_one()) out.push_back(m);
    for (std::size_t k = from; k < indices.size(); ++k) {
      unsigned w = 0;
      for (unsigned v : indices[k]) w += v;
      if (w <= left) rec(k, left - w, m * Monomial(Symbol::power_sum(indices[k])));
    }
  };
  rec(0, max_weight, Monomial());
  return out;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

}  // namespace kstat::testing
