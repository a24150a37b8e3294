#include <kstat/combinatorics.hpp>
#include <kstat/error.hpp>

#include <algorithm>
#include <mutex>
#include <numeric>

namespace kstat {

// ---------------------------------------------------------------------------
// IntegerPartition

IntegerPartition IntegerPartition::from_parts(std::vector<unsigned> parts) {
  IntegerPartition out;
  for (unsigned p : parts) {
    if (p == 0) fail(ErrorCode::kUsage, "partition parts must be positive");
    out.total_ += p;
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  out.parts_ = std::move(parts);
  return out;
}

IntegerPartition IntegerPartition::from_multiplicities(std::span<const unsigned> r) {
  std::vector<unsigned> parts;
  for (std::size_t j = r.size(); j-- > 0;)
    parts.insert(parts.end(), r[j], static_cast<unsigned>(j + 1));
  return from_parts(std::move(parts));
}

std::vector<unsigned> IntegerPartition::multiplicities() const {
  std::vector<unsigned> r(largest(), 0);
  for (unsigned p : parts_) ++r[p - 1];
  return r;
}

IntegerPartition IntegerPartition::operator+(const IntegerPartition& other) const {
  IntegerPartition out;
  out.parts_.resize(parts_.size() + other.parts_.size());
  std::merge(parts_.begin(), parts_.end(), other.parts_.begin(), other.parts_.end(),
             out.parts_.begin(), std::greater<>());
  out.total_ = total_ + other.total_;
  return out;
}

namespace {

void partitions_rec(unsigned remaining, unsigned max_part, std::vector<unsigned>& stack,
                    const std::function<void(const IntegerPartition&)>& fn) {
  if (remaining == 0) {
    fn(IntegerPartition::from_parts(stack));
    return;
  }
  for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
    stack.push_back(p);
    partitions_rec(remaining - p, p, stack, fn);
    stack.pop_back();
  }
}

}  // namespace

void for_each_partition(unsigned i, unsigned max_part,
                        const std::function<void(const IntegerPartition&)>& fn) {
  std::vector<unsigned> stack;
  stack.reserve(i);
  if (i > 0 && max_part == 0) return;
  partitions_rec(i, max_part, stack, fn);
}

std::vector<IntegerPartition> enumerate_partitions(int i) {
  if (i < 0) fail(ErrorCode::kUsage, "cannot partition a negative integer");
  std::vector<IntegerPartition> out;
  for_each_partition(static_cast<unsigned>(i), static_cast<unsigned>(i),
                     [&](const IntegerPartition& p) { out.push_back(p); });
  return out;
}

Integer d_coefficient(const IntegerPartition& lambda) {
  Integer denominator = 1;
  const auto r = lambda.multiplicities();
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j] == 0) continue;
    Integer jf = factorial(static_cast<unsigned>(j + 1));
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), jf.get_mpz_t(), r[j]);
    denominator *= power * factorial(r[j]);
  }
  return factorial(lambda.total()) / denominator;
}

Integer stirling2(unsigned n, unsigned k) {
  static std::mutex mutex;
  static std::vector<std::vector<Integer>> table{{Integer(1)}};
  if (k > n) return 0;
  std::lock_guard lock(mutex);
  while (table.size() <= n) {
    const auto& prev = table.back();
    const std::size_t m = table.size();
    std::vector<Integer> row(m + 1, 0);
    for (std::size_t j = 1; j <= m; ++j) {
      Integer carry = j < prev.size() ? prev[j] * static_cast<unsigned long>(j) : Integer(0);
      row[j] = carry + prev[j - 1];
    }
    table.push_back(std::move(row));
  }
  return table[n][k];
}

Integer bell_number(unsigned n) {
  Integer sum = 0;
  for (unsigned k = 0; k <= n; ++k) sum += stirling2(n, k);
  return sum;
}

// ---------------------------------------------------------------------------
// Multiset

Multiset::Multiset(std::vector<unsigned> counts) : counts_(std::move(counts)) {
  length_ = std::accumulate(counts_.begin(), counts_.end(), 0u);
}

Multiset Multiset::single(unsigned items, unsigned item, unsigned k) {
  std::vector<unsigned> counts(items, 0);
  counts.at(item) = k;
  return Multiset(std::move(counts));
}

std::vector<unsigned> Multiset::support() const {
  std::vector<unsigned> out;
  for (unsigned j = 0; j < items(); ++j)
    if (counts_[j] > 0) out.push_back(j);
  return out;
}

Multiset Multiset::operator+(const Multiset& other) const {
  if (items() != other.items())
    fail(ErrorCode::kDimension, "multisets live in different item spaces");
  std::vector<unsigned> counts(counts_);
  for (unsigned j = 0; j < items(); ++j) counts[j] += other.counts_[j];
  return Multiset(std::move(counts));
}

bool Multiset::contains(const Multiset& other) const {
  if (items() != other.items()) return false;
  for (unsigned j = 0; j < items(); ++j)
    if (other.counts_[j] > counts_[j]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subdivision

namespace {

bool canonical_less(const Block& a, const Block& b) {
  if (a.part.length() != b.part.length()) return a.part.length() > b.part.length();
  return a.part.counts() > b.part.counts();
}

}  // namespace

Integer subdivision_count(const Multiset& source, std::span<const Block> blocks) {
  Integer numerator = 1;
  for (unsigned f : source.counts()) numerator *= factorial(f);
  Integer denominator = 1;
  for (const Block& block : blocks) {
    Integer inner = 1;
    for (unsigned b : block.part.counts()) inner *= factorial(b);
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), inner.get_mpz_t(), block.multiplicity);
    denominator *= power * factorial(block.multiplicity);
  }
  return numerator / denominator;
}

Subdivision::Subdivision(Multiset source, std::vector<Block> blocks)
    : source_(std::move(source)) {
  std::sort(blocks.begin(), blocks.end(), canonical_less);
  std::vector<unsigned> covered(source_.items(), 0);
  for (auto& block : blocks) {
    const unsigned g = block.multiplicity;
    if (block.part.items() != source_.items())
      fail(ErrorCode::kDimension, "subdivision block lives in a different item space");
    if (block.part.empty() || block.multiplicity == 0)
      fail(ErrorCode::kUsage, "subdivision blocks must be nonempty");
    for (unsigned j = 0; j < source_.items(); ++j)
      covered[j] += block.part[j] * block.multiplicity;
    if (!blocks_.empty() && blocks_.back().part == block.part)
      blocks_.back().multiplicity += block.multiplicity;
    else
      blocks_.push_back(std::move(block));
    size_ += g;
  }
  if (covered != source_.counts())
    fail(ErrorCode::kUsage, "blocks do not reconstruct the source multiset");
  count_ = subdivision_count(source_, blocks_);
}

IntegerPartition Subdivision::shape() const {
  std::vector<unsigned> parts;
  for (const auto& block : blocks_)
    parts.insert(parts.end(), block.multiplicity, block.part.length());
  return IntegerPartition::from_parts(std::move(parts));
}

namespace {

// Blocks are produced in non-increasing lexicographic order of their count
// vectors. A block must contain the first remaining item; otherwise that item
// could never be covered by a later (lexicographically smaller) block.
class SubdivisionWalker {
 public:
  SubdivisionWalker(const Multiset& m,
                    const std::function<void(std::span<const Block>, const Integer&)>& fn)
      : source_(m), fn_(fn), items_(m.items()) {}

  void run() {
    if (source_.empty()) {
      fn_({}, Integer(1));
      return;
    }
    std::vector<unsigned> remaining = source_.counts();
    const std::vector<unsigned> bound = remaining;
    split(remaining, bound);
  }

 private:
  void split(std::vector<unsigned>& remaining, const std::vector<unsigned>& bound) {
    unsigned lead = 0;
    while (lead < items_ && remaining[lead] == 0) ++lead;
    if (lead == items_) {
      fn_(stack_, subdivision_count(source_, stack_));
      return;
    }
    std::vector<unsigned> block(items_, 0);
    // Zeros before lead already put the block strictly below a bound that is
    // positive there.
    const bool tight = std::all_of(bound.begin(), bound.begin() + lead, [](unsigned b) { return b == 0; });
    choose(remaining, bound, block, lead, lead, tight);
  }

  void choose(std::vector<unsigned>& remaining, const std::vector<unsigned>& bound,
              std::vector<unsigned>& block, unsigned lead, unsigned pos, bool tight) {
    if (pos == items_) {
      take(remaining, block);
      return;
    }
    unsigned hi = remaining[pos];
    if (tight) hi = std::min(hi, bound[pos]);
    const unsigned lo = pos == lead ? 1 : 0;
    for (unsigned v = hi + 1; v-- > lo;) {
      block[pos] = v;
      choose(remaining, bound, block, lead, pos + 1, tight && v == bound[pos]);
    }
    block[pos] = 0;
  }

  void take(std::vector<unsigned>& remaining, const std::vector<unsigned>& block) {
    for (unsigned j = 0; j < items_; ++j) remaining[j] -= block[j];
    const bool repeat = !stack_.empty() && stack_.back().part.counts() == block;
    if (repeat)
      ++stack_.back().multiplicity;
    else
      stack_.push_back(Block{Multiset(block), 1});
    split(remaining, block);
    if (repeat)
      --stack_.back().multiplicity;
    else
      stack_.pop_back();
    for (unsigned j = 0; j < items_; ++j) remaining[j] += block[j];
  }

  const Multiset& source_;
  const std::function<void(std::span<const Block>, const Integer&)>& fn_;
  unsigned items_;
  std::vector<Block> stack_;
};

}  // namespace

void for_each_subdivision(
    const Multiset& m,
    const std::function<void(std::span<const Block>, const Integer&)>& fn) {
  SubdivisionWalker(m, fn).run();
}

std::vector<Subdivision> enumerate_subdivisions(const Multiset& m) {
  if (m.empty()) fail(ErrorCode::kUsage, "cannot subdivide an empty multiset");
  std::vector<Subdivision> out;
  for_each_subdivision(m, [&](std::span<const Block> blocks, const Integer&) {
    out.emplace_back(m, std::vector<Block>(blocks.begin(), blocks.end()));
  });
  return out;
}

MergedSubdivision merge_subdivisions(const Subdivision& a, const Subdivision& b) {
  const bool a_empty = a.blocks().empty() && a.source().empty();
  const bool b_empty = b.blocks().empty() && b.source().empty();
  if (a_empty || b_empty) {
    const Subdivision& kept = a_empty ? b : a;
    return {kept, a.set_partition_count(), b.set_partition_count(), Integer(1)};
  }
  std::vector<Block> blocks(a.blocks());
  blocks.insert(blocks.end(), b.blocks().begin(), b.blocks().end());
  MergedSubdivision out{Subdivision(a.source() + b.source(), std::move(blocks)),
                        a.set_partition_count(), b.set_partition_count(), Integer(1)};
  for (const Block& block : out.merged.blocks()) {
    unsigned from_a = 0;
    for (const Block& x : a.blocks())
      if (x.part == block.part) from_a = x.multiplicity;
    out.block_assignments *= binomial(block.multiplicity, from_a);
  }
  return out;
}

std::vector<PartitionPair> partition_pairs(unsigned r, unsigned t) {
  const auto lefts = enumerate_partitions(static_cast<int>(r));
  const auto rights = enumerate_partitions(static_cast<int>(t));
  std::vector<PartitionPair> out;
  out.reserve(lefts.size() * rights.size());
  for (const auto& lambda : lefts)
    for (const auto& eta : rights) out.push_back({lambda, eta, lambda + eta});
  return out;
}

}  // namespace kstat
