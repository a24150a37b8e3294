#include <kstat/polyring.hpp>

#include <algorithm>
#include <sstream>

namespace kstat {

// ---------------------------------------------------------------------------
// Symbol / Monomial

namespace {

void require_nonzero_index(const std::vector<unsigned>& index) {
  if (index.empty() || std::all_of(index.begin(), index.end(), [](unsigned v) { return v == 0; }))
    fail(ErrorCode::kUsage, "power-sum and moment indices need a positive entry");
}

std::string join_index(const std::vector<unsigned>& index) {
  std::string out;
  for (std::size_t j = 0; j < index.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(index[j]);
  }
  return out;
}

}  // namespace

Symbol Symbol::power_sum(std::vector<unsigned> index) {
  require_nonzero_index(index);
  return {Kind::kPowerSum, std::move(index)};
}

Symbol Symbol::moment(std::vector<unsigned> index) {
  require_nonzero_index(index);
  return {Kind::kMoment, std::move(index)};
}

unsigned Symbol::weight() const {
  unsigned w = 0;
  for (unsigned v : index) w += v;
  return w;
}

std::string to_string(const Symbol& s) {
  switch (s.kind) {
    case Symbol::Kind::kFilterY:
      return "y";
    case Symbol::Kind::kSampleSize:
      return "n";
    case Symbol::Kind::kPowerSum:
      return "S[" + join_index(s.index) + "]";
    case Symbol::Kind::kMoment:
      return (s.index.size() == 1 ? "a[" : "m[") + join_index(s.index) + "]";
  }
  return "?";
}

Monomial::Monomial(const Symbol& s, unsigned exponent) {
  if (exponent > 0) factors_.emplace_back(s, exponent);
}

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  for (auto& f : factors) {
    if (f.second == 0) continue;
    if (!factors_.empty() && factors_.back().first == f.first)
      factors_.back().second += f.second;
    else
      factors_.push_back(std::move(f));
  }
}

unsigned Monomial::degree_of(const Symbol& s) const {
  for (const auto& [sym, e] : factors_)
    if (sym == s) return e;
  return 0;
}

unsigned Monomial::degree_of(Symbol::Kind kind) const {
  unsigned d = 0;
  for (const auto& [sym, e] : factors_)
    if (sym.kind == kind) d += e;
  return d;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

unsigned Monomial::weight() const {
  unsigned w = 0;
  for (const auto& [sym, e] : factors_) w += sym.weight() * e;
  return w;
}

unsigned Monomial::dimension() const {
  unsigned d = 0;
  for (const auto& f : factors_) {
    if (!f.first.indexed()) continue;
    const auto len = static_cast<unsigned>(f.first.index.size());
    if (d != 0 && d != len) fail(ErrorCode::kDimension, "monomial mixes index dimensions");
    d = len;
  }
  return d;
}

Monomial Monomial::without(Symbol::Kind kind) const {
  Monomial out;
  for (const auto& f : factors_)
    if (f.first.kind != kind) out.factors_.push_back(f);
  return out;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

std::string to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  for (const auto& [sym, e] : m.factors()) {
    if (!out.empty()) out += '*';
    out += to_string(sym);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(Integer constant) {
  if (constant != 0) coeffs_.push_back(std::move(constant));
}

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::falling_range(unsigned from, unsigned to) {
  IntPoly out(Integer(1));
  for (unsigned j = from; j < to; ++j) out = out * IntPoly({Integer(-static_cast<long>(j)), Integer(1)});
  return out;
}

IntPoly IntPoly::falling(unsigned m) { return falling_range(0, m); }

Integer IntPoly::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

Integer IntPoly::operator()(const Integer& n) const {
  Integer acc = 0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * n + coeffs_[k];
  return acc;
}

double IntPoly::operator()(double n) const {
  double acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * n + coeffs_[k].get_d();
  return acc;
}

bool IntPoly::divide_by_root(long root) {
  if (coeffs_.empty()) return true;
  // Synthetic division from the top coefficient down.
  std::vector<Integer> quotient(coeffs_.size() - 1);
  Integer carry = 0;
  for (std::size_t k = coeffs_.size(); k-- > 1;) {
    carry = carry * root + coeffs_[k];
    quotient[k - 1] = carry;
  }
  if (carry * root + coeffs_[0] != 0) return false;
  coeffs_ = std::move(quotient);
  trim();
  return true;
}

IntPoly& IntPoly::operator+=(const IntPoly& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const Integer& k) {
  if (k == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= k;
  return *this;
}

IntPoly& IntPoly::divide_exact(const Integer& k) {
  for (auto& c : coeffs_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), k.get_mpz_t());
  return *this;
}

IntPoly IntPoly::operator*(const IntPoly& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<Integer> out(coeffs_.size() + other.coeffs_.size() - 1, 0);
  for (std::size_t a = 0; a < coeffs_.size(); ++a)
    for (std::size_t b = 0; b < other.coeffs_.size(); ++b) out[a + b] += coeffs_[a] * other.coeffs_[b];
  return IntPoly(std::move(out));
}

IntPoly IntPoly::operator-() const {
  IntPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

std::string to_string(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    const Integer& c = p.coeffs()[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Integer magnitude = abs(c);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    const bool unit = magnitude == 1 && k > 0;
    if (!unit) out += magnitude.get_str();
    if (k > 0) {
      if (!unit) out += '*';
      out += 'n';
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// RationalFunctionOfN

RationalFunctionOfN::RationalFunctionOfN(const Rational& q)
    : num_(q.get_num()), falling_(0), scalar_(q.get_den()) {
  normalize();
}

RationalFunctionOfN::RationalFunctionOfN(IntPoly numerator, unsigned falling, Integer scalar)
    : num_(std::move(numerator)), falling_(falling), scalar_(std::move(scalar)) {
  if (scalar_ == 0) fail(ErrorCode::kInternal, "rational function with zero denominator");
  normalize();
}

RationalFunctionOfN RationalFunctionOfN::inverse_falling(unsigned m) {
  return RationalFunctionOfN(IntPoly(Integer(1)), m);
}

void RationalFunctionOfN::normalize() {
  if (num_.is_zero()) {
    falling_ = 0;
    scalar_ = 1;
    return;
  }
  if (scalar_ < 0) {
    scalar_ = -scalar_;
    num_ = -num_;
  }
  while (falling_ > 0 && num_.divide_by_root(static_cast<long>(falling_) - 1)) --falling_;
  Integer g = num_.content();
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scalar_.get_mpz_t());
  if (g != 1) {
    num_.divide_exact(g);
    mpz_divexact(scalar_.get_mpz_t(), scalar_.get_mpz_t(), g.get_mpz_t());
  }
}

Rational RationalFunctionOfN::operator()(const Integer& n) const {
  const Integer den = scalar_ * falling_factorial(n, falling_);
  if (den == 0)
    fail(ErrorCode::kSampleSize, "insufficient sample size: n = " + n.get_str() +
                                     " makes (n)_" + std::to_string(falling_) + " vanish");
  Rational out(num_(n), den);
  out.canonicalize();
  return out;
}

double RationalFunctionOfN::operator()(double n) const {
  double den = scalar_.get_d();
  for (unsigned j = 0; j < falling_; ++j) den *= n - j;
  if (den == 0.0)
    fail(ErrorCode::kSampleSize, "insufficient sample size for (n)_" + std::to_string(falling_));
  return num_(n) / den;
}

RationalFunctionOfN& RationalFunctionOfN::operator+=(const RationalFunctionOfN& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  const unsigned top = std::max(falling_, other.falling_);
  Integer lcm;
  mpz_lcm(lcm.get_mpz_t(), scalar_.get_mpz_t(), other.scalar_.get_mpz_t());
  IntPoly lhs = num_ * IntPoly::falling_range(falling_, top);
  lhs *= Integer(lcm / scalar_);
  IntPoly rhs = other.num_ * IntPoly::falling_range(other.falling_, top);
  rhs *= Integer(lcm / other.scalar_);
  num_ = lhs + rhs;
  falling_ = top;
  scalar_ = lcm;
  normalize();
  return *this;
}

RationalFunctionOfN& RationalFunctionOfN::operator-=(const RationalFunctionOfN& other) {
  return *this += -other;
}

RationalFunctionOfN& RationalFunctionOfN::operator*=(const RationalFunctionOfN& other) {
  num_ = num_ * other.num_;
  scalar_ *= other.scalar_;
  // (n)_a (n)_b has a repeated factor for every root below min(a, b); it must
  // cancel against the numerator or the product leaves this representation.
  const unsigned repeated = std::min(falling_, other.falling_);
  for (unsigned root = 0; root < repeated; ++root) {
    if (!num_.divide_by_root(static_cast<long>(root)))
      fail(ErrorCode::kInternal, "product has a repeated pole at n = " + std::to_string(root));
  }
  falling_ = std::max(falling_, other.falling_);
  normalize();
  return *this;
}

RationalFunctionOfN RationalFunctionOfN::operator-() const {
  RationalFunctionOfN out = *this;
  out.num_ = -out.num_;
  return out;
}

std::string to_string(const RationalFunctionOfN& f) {
  std::string num = to_string(f.numerator());
  std::vector<std::string> den;
  if (f.den_scalar() != 1) den.push_back(f.den_scalar().get_str());
  for (unsigned j = 0; j < f.den_falling(); ++j)
    den.push_back(j == 0 ? "n" : "(n-" + std::to_string(j) + ")");
  if (den.empty()) return num;
  if (f.numerator().coeffs().size() > 1 &&
      std::count_if(f.numerator().coeffs().begin(), f.numerator().coeffs().end(),
                    [](const Integer& c) { return c != 0; }) > 1)
    num = "(" + num + ")";
  std::string d;
  for (const auto& s : den) d += (d.empty() ? "" : "*") + s;
  return num + "/" + (den.size() > 1 ? "(" + d + ")" : d);
}

// ---------------------------------------------------------------------------
// Polynomial helpers

PolynomialRF substitute_y_powers(const RationalPolynomial& p,
                                 const std::map<unsigned, RationalFunctionOfN>& rule) {
  PolynomialRF out;
  for (const auto& [m, c] : p.terms()) {
    const unsigned e = m.degree_of(Symbol::Kind::kFilterY);
    const Monomial rest = m.without(Symbol::Kind::kFilterY);
    if (e == 0) {
      out.add_term(rest, RationalFunctionOfN(c));
      continue;
    }
    auto it = rule.find(e);
    if (it == rule.end())
      fail(ErrorCode::kInternal, "no substitution rule for y^" + std::to_string(e));
    out.add_term(rest, RationalFunctionOfN(c) * it->second);
  }
  return out;
}

PolynomialRF to_rf(const RationalPolynomial& p) {
  PolynomialRF out;
  for (const auto& [m, c] : p.terms()) out.add_term(m, RationalFunctionOfN(c));
  return out;
}

namespace {

struct SignedText {
  bool negative;
  std::string magnitude;  // empty when the coefficient is a unit
};

SignedText coefficient_text(const Rational& c, bool constant_monomial) {
  const bool negative = sgn(c) < 0;
  Rational magnitude = abs(c);
  if (magnitude == 1 && !constant_monomial) return {negative, ""};
  return {negative, magnitude.get_str()};
}

SignedText coefficient_text(const RationalFunctionOfN& c, bool constant_monomial) {
  if (c.is_constant()) {
    Rational q(c.numerator().is_zero() ? Integer(0) : c.numerator().coeffs()[0], c.den_scalar());
    q.canonicalize();
    return coefficient_text(q, constant_monomial);
  }
  return {false, "(" + to_string(c) + ")"};
}

}  // namespace

template <class Coeff>
std::string to_string(const Polynomial<Coeff>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    const SignedText t = coefficient_text(c, m.is_one());
    if (out.empty())
      out += t.negative ? "-" : "";
    else
      out += t.negative ? " - " : " + ";
    out += t.magnitude;
    if (!m.is_one()) out += (t.magnitude.empty() ? "" : "*") + to_string(m);
  }
  return out;
}

template std::string to_string(const Polynomial<Rational>&);
template std::string to_string(const Polynomial<RationalFunctionOfN>&);

}  // namespace kstat
