#pragma once

// Sparse multivariate polynomials over exact coefficients, in the formal
// symbols used by the generators and the oracle: the filter indeterminate y,
// power sums S_r, moments a_r / m_{t1...td}, and the sample size n.

#include <kstat/error.hpp>
#include <kstat/numeric.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace kstat {

struct Symbol {
  enum class Kind : std::uint8_t { kFilterY, kPowerSum, kMoment, kSampleSize };

  Kind kind = Kind::kFilterY;
  std::vector<unsigned> index;  // power sums and moments only

  static Symbol y() { return {Kind::kFilterY, {}}; }
  static Symbol n() { return {Kind::kSampleSize, {}}; }
  static Symbol power_sum(std::vector<unsigned> index);
  static Symbol moment(std::vector<unsigned> index);

  bool indexed() const { return kind == Kind::kPowerSum || kind == Kind::kMoment; }
  /// Sum of the index entries (the order r of S_r).
  unsigned weight() const;

  auto operator<=>(const Symbol&) const = default;
};

std::string to_string(const Symbol& s);

/// Product of symbol powers; factors sorted by symbol, exponents positive.
class Monomial {
 public:
  using Factor = std::pair<Symbol, unsigned>;

  Monomial() = default;
  explicit Monomial(const Symbol& s, unsigned exponent = 1);
  explicit Monomial(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned degree_of(const Symbol& s) const;
  unsigned degree_of(Symbol::Kind kind) const;
  /// Number of factors counted with exponent.
  unsigned total_degree() const;
  /// Sum over indexed factors of weight * exponent.
  unsigned weight() const;
  /// Common index length of indexed factors, 0 if none. Throws kDimension on mix.
  unsigned dimension() const;

  Monomial without(Symbol::Kind kind) const;
  Monomial operator*(const Monomial& other) const;

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<Factor> factors_;
};

std::string to_string(const Monomial& m);

/// Dense univariate polynomial in the sample size n, integer coefficients,
/// coeffs[k] multiplies n^k. Trailing zeros trimmed.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(Integer constant);  // NOLINT(google-explicit-constructor)
  explicit IntPoly(std::vector<Integer> coeffs);

  static IntPoly n() { return IntPoly({Integer(0), Integer(1)}); }
  /// (n)_m = n(n-1)...(n-m+1).
  static IntPoly falling(unsigned m);
  /// (n-from)(n-from-1)...(n-to+1); 1 if from >= to.
  static IntPoly falling_range(unsigned from, unsigned to);

  const std::vector<Integer>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Integer& leading() const { return coeffs_.back(); }
  Integer content() const;
  Integer operator()(const Integer& n) const;
  double operator()(double n) const;

  /// Exact division by (n - root); returns false and leaves *this alone if
  /// root is not a zero.
  bool divide_by_root(long root);

  IntPoly& operator+=(const IntPoly& other);
  IntPoly& operator-=(const IntPoly& other);
  IntPoly& operator*=(const Integer& k);
  IntPoly& divide_exact(const Integer& k);
  IntPoly operator*(const IntPoly& other) const;
  IntPoly operator-() const;
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  bool operator==(const IntPoly&) const = default;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

std::string to_string(const IntPoly& p);

/// numerator(n) / (scalar * (n)_falling), gcd-reduced: the scalar is positive
/// and coprime to the numerator content, and the falling factorial is as short
/// as possible (numerator has no root at falling - 1). Zero is 0 / 1.
class RationalFunctionOfN {
 public:
  RationalFunctionOfN() = default;
  RationalFunctionOfN(const Rational& q);  // NOLINT(google-explicit-constructor)
  RationalFunctionOfN(IntPoly numerator, unsigned falling, Integer scalar = 1);

  /// 1 / (n)_m.
  static RationalFunctionOfN inverse_falling(unsigned m);

  const IntPoly& numerator() const { return num_; }
  unsigned den_falling() const { return falling_; }
  const Integer& den_scalar() const { return scalar_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return falling_ == 0 && num_.degree() <= 0; }

  /// Value at an integer sample size. Throws kSampleSize when (n)_m vanishes.
  Rational operator()(const Integer& n) const;
  double operator()(double n) const;

  RationalFunctionOfN& operator+=(const RationalFunctionOfN& other);
  RationalFunctionOfN& operator-=(const RationalFunctionOfN& other);
  RationalFunctionOfN& operator*=(const RationalFunctionOfN& other);
  RationalFunctionOfN operator-() const;
  friend RationalFunctionOfN operator+(RationalFunctionOfN a, const RationalFunctionOfN& b) {
    return a += b;
  }
  friend RationalFunctionOfN operator-(RationalFunctionOfN a, const RationalFunctionOfN& b) {
    return a -= b;
  }
  friend RationalFunctionOfN operator*(RationalFunctionOfN a, const RationalFunctionOfN& b) {
    return a *= b;
  }
  bool operator==(const RationalFunctionOfN&) const = default;

 private:
  void normalize();
  IntPoly num_;
  unsigned falling_ = 0;
  Integer scalar_ = 1;
};

std::string to_string(const RationalFunctionOfN& f);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const RationalFunctionOfN& f) { return f.is_zero(); }
inline std::string coefficient_string(const Rational& q) { return to_string(q); }
inline std::string coefficient_string(const RationalFunctionOfN& f) { return to_string(f); }

template <class Coeff>
class Polynomial {
 public:
  using Terms = std::map<Monomial, Coeff>;

  Polynomial() = default;
  Polynomial(const Coeff& c) { add_term(Monomial(), c); }  // NOLINT
  Polynomial(const Monomial& m, const Coeff& c = Coeff(1)) { add_term(m, c); }  // NOLINT

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  unsigned dimension() const { return dim_; }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff() : it->second;
  }

  void add_term(const Monomial& m, const Coeff& c) {
    if (kstat::is_zero(c)) return;
    absorb_dimension(m.dimension());
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (kstat::is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& other) {
    absorb_dimension(other.dim_);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& other) {
    absorb_dimension(other.dim_);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial operator-() const {
    Polynomial out;
    out.dim_ = dim_;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }
  Polynomial operator*(const Polynomial& other) const {
    Polynomial out;
    out.absorb_dimension(dim_);
    out.absorb_dimension(other.dim_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : other.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  Polynomial& operator*=(const Polynomial& other) { return *this = *this * other; }
  Polynomial scaled(const Coeff& k) const {
    Polynomial out;
    out.dim_ = dim_;
    if (kstat::is_zero(k)) return out;
    for (const auto& [m, c] : terms_) out.add_term(m, c * k);
    return out;
  }
  Polynomial pow(unsigned e) const {
    Polynomial out{Coeff(1)};
    out.absorb_dimension(dim_);
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1u) out = out * base;
      e >>= 1u;
      if (e > 0) base = base * base;
    }
    return out;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  bool operator==(const Polynomial& other) const { return terms_ == other.terms_; }

 private:
  void absorb_dimension(unsigned d) {
    if (d == 0) return;
    if (dim_ != 0 && dim_ != d)
      fail(ErrorCode::kDimension, "operands index " + std::to_string(dim_) + " and " +
                                      std::to_string(d) + " variables");
    dim_ = d;
  }

  Terms terms_;
  unsigned dim_ = 0;
};

using RationalPolynomial = Polynomial<Rational>;
using PolynomialRF = Polynomial<RationalFunctionOfN>;
/// Oracle-side polynomial in moment symbols.
using MomentPolynomial = Polynomial<RationalFunctionOfN>;

/// Replaces every c * y^m * R by c * rule(m) * R. Degree-0 terms pass through;
/// an occurring degree without a rule is an internal error.
PolynomialRF substitute_y_powers(const RationalPolynomial& p,
                                 const std::map<unsigned, RationalFunctionOfN>& rule);

/// Lifts constant coefficients.
PolynomialRF to_rf(const RationalPolynomial& p);

/// Human-readable "c*mono + ..." form, monomials in ascending order.
template <class Coeff>
std::string to_string(const Polynomial<Coeff>& p);

}  // namespace kstat
