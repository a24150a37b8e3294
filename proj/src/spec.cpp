#include <kstat/error.hpp>
#include <kstat/spec.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace kstat {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kK:
      return "k";
    case Family::kPolykay:
      return "pk";
    case Family::kMultiK:
      return "mk";
    case Family::kMultiPolykay:
      return "mpk";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "k") return Family::kK;
  if (name == "pk" || name == "polykay") return Family::kPolykay;
  if (name == "mk" || name == "multi_k") return Family::kMultiK;
  if (name == "mpk" || name == "multi_polykay") return Family::kMultiPolykay;
  fail(ErrorCode::kUsage, "unknown estimator family '" + std::string(name) + "'");
}

EstimatorSpec EstimatorSpec::k(unsigned order) {
  if (order == 0) fail(ErrorCode::kUsage, "k-statistic order must be at least 1");
  EstimatorSpec s;
  s.family_ = Family::kK;
  s.orders_ = {order};
  s.groups_ = {Multiset({order})};
  return s;
}

EstimatorSpec EstimatorSpec::polykay(std::vector<unsigned> orders) {
  if (orders.empty()) fail(ErrorCode::kUsage, "polykay needs at least one order");
  EstimatorSpec s;
  s.family_ = Family::kPolykay;
  for (unsigned r : orders) {
    if (r == 0) fail(ErrorCode::kUsage, "polykay orders must be at least 1");
    s.groups_.push_back(Multiset({r}));
  }
  s.orders_ = std::move(orders);
  return s;
}

EstimatorSpec EstimatorSpec::multi_k(Multiset m) {
  if (m.empty()) fail(ErrorCode::kUsage, "multivariate k-statistic needs a nonempty multiset");
  EstimatorSpec s;
  s.family_ = Family::kMultiK;
  s.groups_ = {std::move(m)};
  return s;
}

EstimatorSpec EstimatorSpec::multi_polykay(std::vector<Multiset> groups) {
  if (groups.empty()) fail(ErrorCode::kUsage, "multivariate polykay needs at least one group");
  for (const auto& g : groups) {
    if (g.empty()) fail(ErrorCode::kUsage, "multivariate polykay groups must be nonempty");
    if (g.items() != groups.front().items())
      fail(ErrorCode::kDimension, "multivariate polykay groups index different variable counts");
  }
  EstimatorSpec s;
  s.family_ = Family::kMultiPolykay;
  s.groups_ = std::move(groups);
  return s;
}

unsigned EstimatorSpec::total_order() const {
  unsigned total = 0;
  for (const auto& g : groups_) total += g.length();
  return total;
}

std::string EstimatorSpec::label() const {
  std::string out(family_name(family_));
  out += '[';
  if (univariate()) {
    for (std::size_t j = 0; j < orders_.size(); ++j)
      out += (j ? "," : "") + std::to_string(orders_[j]);
  } else {
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      if (g) out += ';';
      const auto& counts = groups_[g].counts();
      for (std::size_t j = 0; j < counts.size(); ++j)
        out += (j ? " " : "") + std::to_string(counts[j]);
    }
  }
  return out + ']';
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t pos; (pos = s.find(sep, start)) != std::string_view::npos; start = pos + 1)
    out.push_back(s.substr(start, pos - start));
  out.push_back(s.substr(start));
  return out;
}

unsigned parse_unsigned(std::string_view token) {
  token = trim(token);
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
    fail(ErrorCode::kUsage, "expected a nonnegative integer, got '" + std::string(token) + "'");
  return value;
}

std::vector<unsigned> parse_numbers(std::string_view text) {
  std::vector<unsigned> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    // Commas are accepted as separators too: "3,2" == "3 2".
    for (auto piece : split(token, ','))
      if (!trim(piece).empty()) out.push_back(parse_unsigned(piece));
  }
  if (out.empty()) fail(ErrorCode::kUsage, "empty estimator index");
  return out;
}

}  // namespace

EstimatorSpec parse_spec(Family family, std::string_view text) {
  switch (family) {
    case Family::kK: {
      auto numbers = parse_numbers(text);
      if (numbers.size() != 1)
        fail(ErrorCode::kUsage, "k takes exactly one order, e.g. 'k 5'");
      return EstimatorSpec::k(numbers[0]);
    }
    case Family::kPolykay:
      return EstimatorSpec::polykay(parse_numbers(text));
    case Family::kMultiK:
      return EstimatorSpec::multi_k(Multiset(parse_numbers(text)));
    case Family::kMultiPolykay: {
      std::vector<Multiset> groups;
      for (auto part : split(text, ';')) groups.emplace_back(parse_numbers(part));
      if (groups.size() == 1) return EstimatorSpec::multi_k(std::move(groups.front()));
      return EstimatorSpec::multi_polykay(std::move(groups));
    }
  }
  fail(ErrorCode::kUsage, "unknown estimator family");
}

// ---------------------------------------------------------------------------
// Suites

namespace {

struct Constraints {
  unsigned total = 0;
  unsigned groups_min = 2;
  unsigned groups_max = 0;  // 0: unbounded
  unsigned vars_min = 1;
  unsigned vars_max = 1;
};

Constraints parse_constraints(std::string_view family, std::string_view body) {
  Constraints c;
  bool have_total = false;
  for (auto clause : split(body, '/')) {
    clause = trim(clause);
    auto take = [&](std::string_view prefix) -> bool {
      if (clause.substr(0, prefix.size()) != prefix) return false;
      clause.remove_prefix(prefix.size());
      return true;
    };
    if (take("total<=") || take("size<=")) {
      c.total = parse_unsigned(clause);
      have_total = true;
    } else if (take("groups<=")) {
      c.groups_max = parse_unsigned(clause);
    } else if (take("groups=")) {
      c.groups_min = c.groups_max = parse_unsigned(clause);
    } else if (take("vars<=")) {
      c.vars_max = parse_unsigned(clause);
    } else if (take("vars=")) {
      c.vars_min = c.vars_max = parse_unsigned(clause);
    } else {
      fail(ErrorCode::kUsage, "unknown suite clause '" + std::string(clause) + "' for " +
                                  std::string(family));
    }
  }
  if (!have_total) fail(ErrorCode::kUsage, "suite item for " + std::string(family) + " needs total<=N");
  return c;
}

// Non-increasing sequences of positive integers with sum <= total.
void orders_rec(unsigned remaining, unsigned max_part, std::vector<unsigned>& stack,
                const Constraints& c, std::vector<EstimatorSpec>& out) {
  const auto len = static_cast<unsigned>(stack.size());
  if (len >= c.groups_min && (c.groups_max == 0 || len <= c.groups_max))
    out.push_back(EstimatorSpec::polykay(stack));
  if (c.groups_max != 0 && len >= c.groups_max) return;
  for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
    stack.push_back(p);
    orders_rec(remaining - p, p, stack, c, out);
    stack.pop_back();
  }
}

// All vectors of `dim` entries in [lo, ..] with sum in [1, total].
void vectors_rec(unsigned dim, unsigned lo, unsigned remaining, std::vector<unsigned>& stack,
                 std::vector<std::vector<unsigned>>& out) {
  if (stack.size() == dim) {
    if (std::accumulate(stack.begin(), stack.end(), 0u) > 0) out.push_back(stack);
    return;
  }
  for (unsigned v = lo; v <= remaining; ++v) {
    stack.push_back(v);
    vectors_rec(dim, lo, remaining - v, stack, out);
    stack.pop_back();
  }
}

void group_lists_rec(const std::vector<std::vector<unsigned>>& candidates, std::size_t from,
                     unsigned remaining, std::vector<Multiset>& stack, const Constraints& c,
                     std::vector<EstimatorSpec>& out) {
  const auto len = static_cast<unsigned>(stack.size());
  if (len >= c.groups_min && (c.groups_max == 0 || len <= c.groups_max))
    out.push_back(EstimatorSpec::multi_polykay(stack));
  if (c.groups_max != 0 && len >= c.groups_max) return;
  for (std::size_t j = from; j < candidates.size(); ++j) {
    Multiset m(candidates[j]);
    if (m.length() > remaining) continue;
    stack.push_back(m);
    group_lists_rec(candidates, j, remaining - m.length(), stack, c, out);
    stack.pop_back();
  }
}

void expand_item(std::string_view item, std::vector<EstimatorSpec>& out) {
  const auto colon = item.find(':');
  if (colon == std::string_view::npos) {
    // A literal spec: "k 5", "mpk 2 1 ; 1 1".
    const auto space = item.find(' ');
    if (space == std::string_view::npos) fail(ErrorCode::kUsage, "bad suite item '" + std::string(item) + "'");
    out.push_back(parse_spec(parse_family(item.substr(0, space)), item.substr(space + 1)));
    return;
  }
  const auto family_text = trim(item.substr(0, colon));
  const auto body = trim(item.substr(colon + 1));
  const Family family = parse_family(family_text);

  if (family == Family::kK) {
    const auto dots = body.find("..");
    const unsigned lo = parse_unsigned(body.substr(0, dots));
    const unsigned hi = dots == std::string_view::npos ? lo : parse_unsigned(body.substr(dots + 2));
    for (unsigned i = lo; i <= hi; ++i) out.push_back(EstimatorSpec::k(i));
    return;
  }
  if (family == Family::kMultiPolykay && body == "table2") {
    for (const char* text : {"1 1;1 1", "2 1;1 1", "2 2;1 1", "2 2;2 1", "2 2;2 2", "2 1;2 1;2 1",
                             "2 2;1 1;1 1", "2 2;2 1;1 1", "2 2;2 1;2 1", "2 2;2 2;1 1",
                             "2 2;2 2;2 1", "2 2;2 2;2 2"})
      out.push_back(parse_spec(Family::kMultiPolykay, text));
    return;
  }
  Constraints c = parse_constraints(family_text, body);
  std::vector<unsigned> stack;
  switch (family) {
    case Family::kPolykay:
      orders_rec(c.total, c.total, stack, c, out);
      break;
    case Family::kMultiK:
      for (unsigned d = c.vars_min; d <= c.vars_max; ++d) {
        std::vector<std::vector<unsigned>> vectors;
        vectors_rec(d, 1, c.total, stack, vectors);
        for (auto& v : vectors) out.push_back(EstimatorSpec::multi_k(Multiset(std::move(v))));
      }
      break;
    case Family::kMultiPolykay:
      for (unsigned d = c.vars_min; d <= c.vars_max; ++d) {
        std::vector<std::vector<unsigned>> vectors;
        vectors_rec(d, 0, c.total, stack, vectors);
        std::sort(vectors.begin(), vectors.end(), std::greater<>());
        std::vector<Multiset> groups;
        group_lists_rec(vectors, 0, c.total, groups, c, out);
      }
      break;
    case Family::kK:
      break;
  }
}

}  // namespace

std::vector<EstimatorSpec> expand_suite(std::string_view suite) {
  std::vector<EstimatorSpec> out;
  for (auto item : split(suite, ',')) {
    item = trim(item);
    if (!item.empty()) expand_item(item, out);
  }
  if (out.empty()) fail(ErrorCode::kUsage, "suite '" + std::string(suite) + "' selects nothing");
  return out;
}

std::string_view default_suite() {
  return "k:1..12,pk:total<=8/groups=2,pk:total<=6/groups=3,mk:size<=6/vars<=3,mpk:table2";
}

}  // namespace kstat
