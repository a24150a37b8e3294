#include <kstat/emit.hpp>

#include <json.hpp>

#include <algorithm>
#include <climits>

namespace kstat {

namespace {

using Json = nlohmann::ordered_json;

/// Every term over one denominator scalar * (n)_falling.
struct CommonForm {
  Integer scalar = 1;
  unsigned falling = 0;
  std::vector<std::pair<Monomial, IntPoly>> terms;
};

CommonForm common_form(const PolynomialRF& p) {
  CommonForm out;
  for (const auto& [m, c] : p.terms()) {
    out.falling = std::max(out.falling, c.den_falling());
    mpz_lcm(out.scalar.get_mpz_t(), out.scalar.get_mpz_t(), c.den_scalar().get_mpz_t());
  }
  for (const auto& [m, c] : p.terms()) {
    IntPoly num = c.numerator() * IntPoly::falling_range(c.den_falling(), out.falling);
    num *= Integer(out.scalar / c.den_scalar());
    out.terms.emplace_back(m, std::move(num));
  }
  // Cancel what all numerators share with the denominator.
  while (out.falling > 0) {
    const long root = static_cast<long>(out.falling) - 1;
    const bool shared = std::all_of(out.terms.begin(), out.terms.end(), [&](const auto& t) {
      return t.second(Integer(root)) == 0;
    });
    if (!shared) break;
    for (auto& t : out.terms) t.second.divide_by_root(root);
    --out.falling;
  }
  Integer g = out.scalar;
  for (const auto& t : out.terms) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.content().get_mpz_t());
  if (g > 1) {
    out.scalar /= g;
    for (auto& t : out.terms) t.second.divide_exact(g);
  }
  // Highest power of n first, then more factors, then reverse-lexicographic.
  std::sort(out.terms.begin(), out.terms.end(), [](const auto& a, const auto& b) {
    if (a.second.degree() != b.second.degree()) return a.second.degree() > b.second.degree();
    const unsigned fa = a.first.total_degree(), fb = b.first.total_degree();
    if (fa != fb) return fa > fb;
    return a.first > b.first;
  });
  return out;
}

std::size_t nonzero_count(const IntPoly& p) {
  return static_cast<std::size_t>(
      std::count_if(p.coeffs().begin(), p.coeffs().end(), [](const Integer& c) { return c != 0; }));
}

// ---------------------------------------------------------------------------
// text

std::string symbol_text(const Symbol& s) { return to_string(s); }

std::string symbol_latex(const Symbol& s) {
  if (s.kind == Symbol::Kind::kFilterY) return "y";
  if (s.kind == Symbol::Kind::kSampleSize) return "n";
  const char* base = s.kind == Symbol::Kind::kPowerSum ? "S" : (s.index.size() == 1 ? "a" : "m");
  std::string idx;
  for (std::size_t j = 0; j < s.index.size(); ++j) idx += (j ? "," : "") + std::to_string(s.index[j]);
  if (s.index.size() > 1) idx = "(" + idx + ")";
  return std::string(base) + "_{" + idx + "}";
}

struct Style {
  bool latex;
  std::string times() const { return latex ? " " : "*"; }
  std::string power(const std::string& base, unsigned e) const {
    if (e == 1) return base;
    return latex ? base + "^{" + std::to_string(e) + "}" : base + "^" + std::to_string(e);
  }
  std::string monomial(const Monomial& m) const {
    std::string out;
    for (const auto& [sym, e] : m.factors()) {
      if (!out.empty()) out += times();
      out += power(latex ? symbol_latex(sym) : symbol_text(sym), e);
    }
    return out;
  }
  std::string n_power(unsigned k) const { return power("n", k); }
  /// Polynomial in n with nonnegative-leading sign handled by the caller.
  std::string poly(const IntPoly& p) const {
    std::string out;
    for (std::size_t k = p.coeffs().size(); k-- > 0;) {
      const Integer& c = p.coeffs()[k];
      if (c == 0) continue;
      const Integer mag = abs(c);
      if (out.empty())
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      if (k == 0) {
        out += mag.get_str();
      } else {
        if (mag != 1) out += mag.get_str() + times();
        out += n_power(static_cast<unsigned>(k));
      }
    }
    return out;
  }
  std::string falling(const Integer& scalar, unsigned m, bool& compound) const {
    std::vector<std::string> parts;
    if (scalar != 1) parts.push_back(scalar.get_str());
    for (unsigned j = 0; j < m; ++j)
      parts.push_back(j == 0 ? "n" : "(n-" + std::to_string(j) + ")");
    compound = parts.size() > 1;
    std::string out;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (j > 0 && !latex) out += "*";
      out += parts[j];
    }
    return out;
  }
};

std::string render(const PolynomialRF& p, bool latex) {
  if (p.is_zero()) return "0";
  const CommonForm form = common_form(p);
  const Style style{latex};
  std::string num;
  for (const auto& [m, c] : form.terms) {
    const bool negative = c.leading() < 0;
    const IntPoly mag = negative ? -c : c;
    if (num.empty())
      num += negative ? "-" : "";
    else
      num += negative ? " - " : " + ";
    std::string coeff;
    if (mag.degree() == 0) {
      if (mag.leading() != 1 || m.is_one()) coeff = mag.leading().get_str();
    } else if (nonzero_count(mag) == 1) {
      coeff = style.poly(mag);
    } else {
      coeff = "(" + style.poly(mag) + ")";
    }
    const std::string mono = style.monomial(m);
    num += coeff;
    if (!coeff.empty() && !mono.empty()) num += style.times();
    num += mono;
  }
  bool compound = false;
  const std::string den = style.falling(form.scalar, form.falling, compound);
  if (den.empty()) return num;
  if (latex) return "\\frac{" + num + "}{" + den + "}";
  if (form.terms.size() > 1) num = "(" + num + ")";
  return num + " / " + (compound ? "(" + den + ")" : den);
}

// ---------------------------------------------------------------------------
// json

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(static_cast<long long>(z.get_si()));
  return Json(z.get_str());
}

Integer integer_from_json(const Json& j, const char* what) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0) fail(ErrorCode::kParse, std::string("bad integer in ") + what);
    return z;
  }
  fail(ErrorCode::kParse, std::string("expected an integer for ") + what);
}

unsigned unsigned_from_json(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(ErrorCode::kParse, std::string("expected a nonnegative integer for ") + what);
  const auto v = j.get<unsigned long long>();
  if (v > UINT_MAX) fail(ErrorCode::kParse, std::string("value out of range for ") + what);
  return static_cast<unsigned>(v);
}

std::vector<unsigned> counts_from_json(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::kParse, std::string("expected an array for ") + what);
  std::vector<unsigned> out;
  for (const auto& v : j) out.push_back(unsigned_from_json(v, what));
  return out;
}

Json terms_json(const PolynomialRF& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json num = Json::array();
    for (const auto& z : c.numerator().coeffs()) num.push_back(integer_json(z));
    Json sums = Json::array();
    for (const auto& [sym, e] : m.factors()) {
      if (sym.kind != Symbol::Kind::kPowerSum)
        fail(ErrorCode::kInternal, "only power-sum polynomials serialize to JSON");
      sums.push_back(Json{{"index", sym.index}, {"exp", e}});
    }
    terms.push_back(Json{{"coeff", Json{{"num", num},
                                        {"den_falling", c.den_falling()},
                                        {"den_scalar", integer_json(c.den_scalar())}}},
                         {"powersums", sums}});
  }
  return terms;
}

PolynomialRF terms_from_json(const Json& doc, unsigned variables) {
  const auto it = doc.find("terms");
  if (it == doc.end() || !it->is_array()) fail(ErrorCode::kParse, "missing \"terms\" array");
  PolynomialRF out;
  for (const auto& term : *it) {
    if (!term.is_object() || !term.contains("coeff") || !term.contains("powersums"))
      fail(ErrorCode::kParse, "term needs \"coeff\" and \"powersums\"");
    const Json& coeff = term["coeff"];
    if (!coeff.is_object() || !coeff.contains("num") || !coeff["num"].is_array())
      fail(ErrorCode::kParse, "coefficient needs a \"num\" array");
    std::vector<Integer> num;
    for (const auto& z : coeff["num"]) num.push_back(integer_from_json(z, "num"));
    const unsigned falling = coeff.contains("den_falling") ? unsigned_from_json(coeff["den_falling"], "den_falling") : 0;
    const Integer scalar = coeff.contains("den_scalar") ? integer_from_json(coeff["den_scalar"], "den_scalar") : Integer(1);
    if (scalar == 0) fail(ErrorCode::kParse, "den_scalar must be nonzero");

    const Json& sums = term["powersums"];
    if (!sums.is_array()) fail(ErrorCode::kParse, "\"powersums\" must be an array");
    std::vector<Monomial::Factor> factors;
    for (const auto& ps : sums) {
      if (!ps.is_object() || !ps.contains("index") || !ps.contains("exp"))
        fail(ErrorCode::kParse, "power sum needs \"index\" and \"exp\"");
      auto index = counts_from_json(ps["index"], "index");
      if (variables != 0 && index.size() != variables)
        fail(ErrorCode::kParse, "power-sum index length differs from \"variables\"");
      if (std::all_of(index.begin(), index.end(), [](unsigned v) { return v == 0; }))
        fail(ErrorCode::kParse, "power-sum index must have a positive entry");
      const unsigned e = unsigned_from_json(ps["exp"], "exp");
      if (e == 0) fail(ErrorCode::kParse, "power-sum exponent must be positive");
      factors.emplace_back(Symbol::power_sum(std::move(index)), e);
    }
    out.add_term(Monomial(std::move(factors)), RationalFunctionOfN(IntPoly(std::move(num)), falling, scalar));
  }
  return out;
}

Json parse_document(std::string_view text) {
  try {
    Json doc = Json::parse(text.begin(), text.end());
    if (!doc.is_object()) fail(ErrorCode::kParse, "expected a JSON object");
    return doc;
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

unsigned variables_of(const Json& doc) {
  return doc.contains("variables") ? unsigned_from_json(doc["variables"], "variables") : 0;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "text") return Format::kText;
  if (name == "json") return Format::kJson;
  if (name == "latex") return Format::kLatex;
  fail(ErrorCode::kUsage, "unknown format '" + std::string(name) + "' (text, json, latex)");
}

std::string emit(const PolynomialRF& p, Format format) {
  switch (format) {
    case Format::kText:
      return render(p, false);
    case Format::kLatex:
      return render(p, true);
    case Format::kJson: {
      Json doc{{"kind", "polynomial"}, {"variables", p.dimension()}, {"terms", terms_json(p)}};
      return doc.dump();
    }
  }
  fail(ErrorCode::kInternal, "unhandled format");
}

std::string emit(const EstimatorExpr& e, Format format) {
  if (format != Format::kJson) return emit(e.body, format);
  Json indices = Json::array();
  for (const auto& g : e.spec.groups()) indices.push_back(g.counts());
  Json doc{{"kind", "estimator"},
           {"family", family_name(e.spec.family())},
           {"indices", indices},
           {"variables", e.spec.dimension()},
           {"terms", terms_json(e.body)}};
  return doc.dump();
}

PolynomialRF parse_polynomial_json(std::string_view text) {
  const Json doc = parse_document(text);
  return terms_from_json(doc, variables_of(doc));
}

EstimatorExpr parse_estimator_json(std::string_view text) {
  const Json doc = parse_document(text);
  if (doc.value("kind", "") != "estimator") fail(ErrorCode::kParse, "\"kind\" must be \"estimator\"");
  if (!doc.contains("family") || !doc["family"].is_string()) fail(ErrorCode::kParse, "missing \"family\"");
  if (!doc.contains("indices") || !doc["indices"].is_array() || doc["indices"].empty())
    fail(ErrorCode::kParse, "missing \"indices\"");

  Family family;
  try {
    family = parse_family(doc["family"].get<std::string>());
  } catch (const Error& e) {
    fail(ErrorCode::kParse, e.what());
  }
  std::vector<std::vector<unsigned>> groups;
  for (const auto& g : doc["indices"]) groups.push_back(counts_from_json(g, "indices"));

  auto spec = [&]() -> EstimatorSpec {
    try {
      switch (family) {
        case Family::kK:
          if (groups.size() != 1 || groups[0].size() != 1) break;
          return EstimatorSpec::k(groups[0][0]);
        case Family::kPolykay: {
          std::vector<unsigned> orders;
          for (const auto& g : groups) {
            if (g.size() != 1) fail(ErrorCode::kParse, "polykay indices are single orders");
            orders.push_back(g[0]);
          }
          return EstimatorSpec::polykay(std::move(orders));
        }
        case Family::kMultiK:
          if (groups.size() != 1) break;
          return EstimatorSpec::multi_k(Multiset(groups[0]));
        case Family::kMultiPolykay: {
          std::vector<Multiset> ms;
          for (auto& g : groups) ms.emplace_back(std::move(g));
          return EstimatorSpec::multi_polykay(std::move(ms));
        }
      }
    } catch (const Error& e) {
      fail(ErrorCode::kParse, std::string("bad indices: ") + e.what());
    }
    fail(ErrorCode::kParse, "indices do not match the family");
  }();

  const unsigned variables = variables_of(doc);
  if (variables != 0 && variables != spec.dimension())
    fail(ErrorCode::kParse, "\"variables\" does not match the indices");
  return EstimatorExpr{spec, terms_from_json(doc, spec.dimension())};
}

}  // namespace kstat
