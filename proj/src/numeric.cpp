#include <kstat/error.hpp>
#include <kstat/numeric.hpp>

#include <cctype>

namespace kstat {

Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Integer binomial(unsigned n, unsigned k) {
  Integer out;
  if (k > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Integer falling_factorial(const Integer& n, unsigned m) {
  Integer out = 1;
  for (unsigned j = 0; j < m; ++j) out *= n - j;
  return out;
}

Rational parse_decimal(const std::string& text) {
  std::size_t pos = 0;
  const std::size_t len = text.size();
  auto bad = [&] { fail(ErrorCode::kParse, "not a number: '" + text + "'"); };
  if (len == 0) bad();

  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';

  std::string digits;
  long scale = 0;
  bool any_digit = false;
  while (pos < len && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits += text[pos++];
    any_digit = true;
  }
  if (pos < len && text[pos] == '.') {
    ++pos;
    while (pos < len && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits += text[pos++];
      --scale;
      any_digit = true;
    }
  }
  if (!any_digit) bad();
  if (pos < len && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < len && (text[pos] == '+' || text[pos] == '-'))
      exp_negative = text[pos++] == '-';
    long exponent = 0;
    bool exp_digit = false;
    while (pos < len && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      exponent = exponent * 10 + (text[pos++] - '0');
      exp_digit = true;
      if (exponent > 100000) bad();
    }
    if (!exp_digit) bad();
    scale += exp_negative ? -exponent : exponent;
  }
  if (pos != len) bad();

  Integer mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  Integer power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational out = scale < 0 ? Rational(mantissa, power) : Rational(mantissa * power);
  out.canonicalize();
  return out;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace kstat
