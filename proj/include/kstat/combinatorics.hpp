#pragma once

// Integer partitions, multisets and multiset subdivisions.
//
// A multiset is stored densely: item j of the ambient item space has
// multiplicity counts[j]. For multivariate cumulants the items are the
// variables; the oracle and the augmented estimators reuse the same type with
// items standing for distinct power sums or distinct moment indices.

#include <kstat/numeric.hpp>

#include <compare>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace kstat {

class IntegerPartition {
 public:
  IntegerPartition() = default;

  /// Parts in any order; zero parts are rejected.
  static IntegerPartition from_parts(std::vector<unsigned> parts);
  /// multiplicities[j-1] = r_j, the number of parts equal to j.
  static IntegerPartition from_multiplicities(std::span<const unsigned> r);

  const std::vector<unsigned>& parts() const { return parts_; }
  unsigned total() const { return total_; }
  unsigned length() const { return static_cast<unsigned>(parts_.size()); }
  unsigned largest() const { return parts_.empty() ? 0 : parts_.front(); }

  /// r_1, r_2, ..., r_largest.
  std::vector<unsigned> multiplicities() const;

  /// lambda + eta: the parts of both, merged.
  IntegerPartition operator+(const IntegerPartition& other) const;

  auto operator<=>(const IntegerPartition& other) const {
    return parts_ <=> other.parts_;
  }
  bool operator==(const IntegerPartition& other) const = default;

 private:
  std::vector<unsigned> parts_;  // weakly decreasing
  unsigned total_ = 0;
};

/// All partitions of i in reverse-lexicographic order of their parts:
/// (4), (3,1), (2,2), (2,1,1), (1,1,1,1). i == 0 yields the empty partition;
/// negative i is a usage error.
std::vector<IntegerPartition> enumerate_partitions(int i);

/// Visits the partitions of i with every part <= max_part, in the same order.
void for_each_partition(unsigned i, unsigned max_part,
                        const std::function<void(const IntegerPartition&)>& fn);

/// i! / (r_1! r_2! ... (1!)^{r_1} (2!)^{r_2} ...): the number of set partitions
/// of an i-set whose block sizes are the parts of lambda.
Integer d_coefficient(const IntegerPartition& lambda);

/// Stirling number of the second kind; 0 when k > n. Memoized, thread safe.
Integer stirling2(unsigned n, unsigned k);

Integer bell_number(unsigned n);

class Multiset {
 public:
  Multiset() = default;
  explicit Multiset(std::vector<unsigned> counts);

  /// The multiset {item^(k)} inside an ambient space of `items` items.
  static Multiset single(unsigned items, unsigned item, unsigned k);

  const std::vector<unsigned>& counts() const { return counts_; }
  unsigned items() const { return static_cast<unsigned>(counts_.size()); }
  unsigned length() const { return length_; }
  bool empty() const { return length_ == 0; }
  unsigned operator[](std::size_t j) const { return counts_[j]; }

  /// Item ids with positive multiplicity, ascending.
  std::vector<unsigned> support() const;

  /// Disjoint union; both operands must live in the same item space.
  Multiset operator+(const Multiset& other) const;
  bool contains(const Multiset& other) const;

  auto operator<=>(const Multiset& other) const {
    return counts_ <=> other.counts_;
  }
  bool operator==(const Multiset& other) const = default;

 private:
  std::vector<unsigned> counts_;
  unsigned length_ = 0;
};

struct Block {
  Multiset part;
  unsigned multiplicity = 1;  // g(M_i)

  auto operator<=>(const Block&) const = default;
};

/// A subdivision of a multiset together with n_pi, the number of set
/// partitions of the labeled elements of the source that collapse onto it.
class Subdivision {
 public:
  Subdivision() = default;
  /// Blocks in any order; equal blocks are combined. n_pi is computed.
  Subdivision(Multiset source, std::vector<Block> blocks);

  const Multiset& source() const { return source_; }
  /// Canonical order: length descending, then counts descending.
  const std::vector<Block>& blocks() const { return blocks_; }
  /// |S| = total number of blocks counted with multiplicity.
  unsigned size() const { return size_; }
  const Integer& set_partition_count() const { return count_; }

  /// Block sizes as an integer partition (the p_pi(y) shape).
  IntegerPartition shape() const;

  bool operator==(const Subdivision& other) const {
    return source_ == other.source_ && blocks_ == other.blocks_;
  }
  auto operator<=>(const Subdivision& other) const {
    if (auto c = source_ <=> other.source_; c != 0) return c;
    return blocks_ <=> other.blocks_;
  }

 private:
  Multiset source_;
  std::vector<Block> blocks_;
  unsigned size_ = 0;
  Integer count_ = 1;
};

/// n_pi for a block list: prod_j f_j! / prod_B ((prod_j b_j!)^g g!).
Integer subdivision_count(const Multiset& source, std::span<const Block> blocks);

/// Streams every distinct subdivision of m exactly once; the callback receives
/// blocks in generation order (not canonical) and n_pi. Nothing is
/// materialized beyond the current block stack, so Bell(|m|)-sized loops are
/// avoided.
void for_each_subdivision(
    const Multiset& m,
    const std::function<void(std::span<const Block>, const Integer&)>& fn);

std::vector<Subdivision> enumerate_subdivisions(const Multiset& m);

struct MergedSubdivision {
  Subdivision merged;        // as a subdivision of T + L, with its own n_pi
  Integer left_count;        // n_pi of the left operand
  Integer right_count;       // n_tau of the right operand
  /// n_{pi+tau}: ways to hand the merged blocks, taken as distinguishable,
  /// back to the two operands so that each recovers its own subdivision.
  Integer block_assignments;
};

/// Disjoint union S_pi + S_tau. An empty subdivision (no blocks, empty source)
/// is the identity. Operands must share the item space.
MergedSubdivision merge_subdivisions(const Subdivision& a, const Subdivision& b);

struct PartitionPair {
  IntegerPartition left;
  IntegerPartition right;
  IntegerPartition merged;
};

/// Every (lambda |- r, eta |- t) with lambda + eta; p(r) * p(t) entries.
std::vector<PartitionPair> partition_pairs(unsigned r, unsigned t);

}  // namespace kstat
