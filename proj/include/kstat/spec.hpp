#pragma once

#include <kstat/combinatorics.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace kstat {

enum class Family { kK, kPolykay, kMultiK, kMultiPolykay };

/// Short family name used on the command line: k, pk, mk, mpk.
std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/// What to estimate. Univariate families keep their orders; every family also
/// exposes its groups as multisets over the variables (a univariate order i is
/// the one-variable multiset {x^(i)}), which is what the oracle consumes.
class EstimatorSpec {
 public:
  static EstimatorSpec k(unsigned order);
  static EstimatorSpec polykay(std::vector<unsigned> orders);
  static EstimatorSpec multi_k(Multiset m);
  static EstimatorSpec multi_polykay(std::vector<Multiset> groups);

  Family family() const { return family_; }
  bool univariate() const { return family_ == Family::kK || family_ == Family::kPolykay; }
  const std::vector<unsigned>& orders() const { return orders_; }
  const std::vector<Multiset>& groups() const { return groups_; }
  unsigned dimension() const { return groups_.front().items(); }
  unsigned total_order() const;

  /// k[5], pk[3,2], mk[2 1], mpk[2 1;1 1].
  std::string label() const;

  bool operator==(const EstimatorSpec&) const = default;

 private:
  EstimatorSpec() = default;
  Family family_ = Family::kK;
  std::vector<unsigned> orders_;
  std::vector<Multiset> groups_;
};

/// Parses command-line spec text: "5" for k, "3 2" for pk, "2 1" for mk,
/// "2 1 ; 1 1" for mpk. Throws kUsage (or kDimension for ragged mpk groups).
EstimatorSpec parse_spec(Family family, std::string_view text);

/// Expands a verification suite such as
/// "k:1..10,pk:total<=8/groups=2,mk:size<=6/vars<=3,mpk:table2".
std::vector<EstimatorSpec> expand_suite(std::string_view suite);

/// The suite run by `verify` when no spec is given.
std::string_view default_suite();

}  // namespace kstat
