#pragma once

// Serialization of estimators: a compact text form over a common
// denominator, a lossless JSON form, and LaTeX.
//
// JSON schema:
//   {"kind": "estimator", "family": "k"|"pk"|"mk"|"mpk",
//    "indices": [[counts of group 1], ...], "variables": d,
//    "terms": [{"coeff": {"num": [c_0, c_1, ...], "den_falling": m, "den_scalar": s},
//               "powersums": [{"index": [r_1, ..., r_d], "exp": e}, ...]}, ...]}
// A term's coefficient is (c_0 + c_1 n + ...) / (s * (n)_m). Integers that do
// not fit in 64 bits are written as decimal strings; the parser accepts both.
// A bare polynomial uses "kind": "polynomial" without family and indices.

#include <kstat/expr.hpp>

#include <string>
#include <string_view>

namespace kstat {

enum class Format { kText, kJson, kLatex };

Format parse_format(std::string_view name);

std::string emit(const EstimatorExpr& e, Format format);
std::string emit(const PolynomialRF& p, Format format);

/// Inverse of emit(e, Format::kJson). Throws kParse on malformed input.
EstimatorExpr parse_estimator_json(std::string_view text);
PolynomialRF parse_polynomial_json(std::string_view text);

}  // namespace kstat
