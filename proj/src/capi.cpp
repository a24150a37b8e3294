#include <kstat/kstat.h>

#include <kstat/bench.hpp>
#include <kstat/emit.hpp>
#include <kstat/estimators.hpp>
#include <kstat/evaluator.hpp>
#include <kstat/oracle.hpp>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>

struct kstat_estimator {
  kstat::EstimatorExpr expr;
};

struct kstat_dataset {
  kstat::Dataset data;
};

struct kstat_report {
  std::vector<kstat::Certification> entries;
  std::vector<std::string> differences;
};

namespace {

thread_local std::string last_error;

kstat_status set_error(kstat_status status, const std::string& what) {
  last_error = what;
  return status;
}

/// Runs fn, mapping exceptions onto status codes.
template <class Fn>
kstat_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return KSTAT_OK;
  } catch (const kstat::Error& e) {
    return set_error(static_cast<kstat_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(KSTAT_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return set_error(KSTAT_INTERNAL, e.what());
  } catch (...) {
    return set_error(KSTAT_INTERNAL, "unknown failure");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) kstat::fail(kstat::ErrorCode::kUsage, std::string(what) + " must not be null");
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

kstat::GenerationOptions convert(const kstat_options* options) {
  kstat::GenerationOptions out;
  if (options != nullptr) {
    out.max_univariate_order = options->max_univariate_order;
    out.max_multivariate_order = options->max_multivariate_order;
    out.parallel = options->parallel != 0;
    out.threads = options->threads;
  }
  return out;
}

/// Terminating decimals print exactly; others to 20 significant digits.
std::string decimal(const kstat::Rational& q) {
  kstat::Integer den = q.get_den();
  unsigned twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) den /= 2, ++twos;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) den /= 5, ++fives;
  if (den == 1) {
    const unsigned digits = std::max(twos, fives);
    kstat::Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    const kstat::Integer scaled = q.get_num() * scale / q.get_den();
    std::string mag = kstat::Integer(abs(scaled)).get_str();
    if (digits > 0) {
      if (mag.size() <= digits) mag.insert(0, digits + 1 - mag.size(), '0');
      mag.insert(mag.size() - digits, ".");
      while (mag.back() == '0') mag.pop_back();
      if (mag.back() == '.') mag.pop_back();
    }
    return (scaled < 0 ? "-" : "") + mag;
  }
  mpf_class f(q, 256);
  char* buf = nullptr;
  gmp_asprintf(&buf, "%.20Fg", f.get_mpf_t());
  std::string out(buf);
  void (*release)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &release);
  release(buf, std::strlen(buf) + 1);
  return out;
}

}  // namespace

extern "C" {

void kstat_options_default(kstat_options* options) {
  if (options == nullptr) return;
  const kstat::GenerationOptions d;
  options->max_univariate_order = d.max_univariate_order;
  options->max_multivariate_order = d.max_multivariate_order;
  options->parallel = d.parallel ? 1 : 0;
  options->threads = d.threads;
}

const char* kstat_last_error(void) { return last_error.c_str(); }

void kstat_string_free(char* s) { std::free(s); }

kstat_status kstat_generate(const char* family, const char* spec, const kstat_options* options,
                            kstat_estimator** out) {
  return guarded([&] {
    require(family, "family");
    require(spec, "spec");
    require(out, "out");
    *out = nullptr;
    const auto parsed = kstat::parse_spec(kstat::parse_family(family), spec);
    *out = new kstat_estimator{kstat::generate(parsed, convert(options))};
  });
}

kstat_status kstat_estimator_from_json(const char* json, kstat_estimator** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = nullptr;
    *out = new kstat_estimator{kstat::parse_estimator_json(json)};
  });
}

void kstat_estimator_free(kstat_estimator* e) { delete e; }

kstat_status kstat_estimator_emit(const kstat_estimator* e, kstat_format format, char** out) {
  return guarded([&] {
    require(e, "estimator");
    require(out, "out");
    kstat::Format f;
    switch (format) {
      case KSTAT_FORMAT_TEXT: f = kstat::Format::kText; break;
      case KSTAT_FORMAT_JSON: f = kstat::Format::kJson; break;
      case KSTAT_FORMAT_LATEX: f = kstat::Format::kLatex; break;
      default: kstat::fail(kstat::ErrorCode::kUsage, "unknown format");
    }
    *out = duplicate(kstat::emit(e->expr, f));
  });
}

kstat_status kstat_estimator_label(const kstat_estimator* e, char** out) {
  return guarded([&] {
    require(e, "estimator");
    require(out, "out");
    *out = duplicate(e->expr.spec.label());
  });
}

size_t kstat_estimator_term_count(const kstat_estimator* e) { return e ? e->expr.term_count() : 0; }

double kstat_estimator_seconds(const kstat_estimator* e) { return e ? e->expr.generation_seconds : 0.0; }

kstat_status kstat_verify(const kstat_estimator* e, int parallel, kstat_report** out) {
  return guarded([&] {
    require(e, "estimator");
    require(out, "out");
    *out = nullptr;
    auto report = std::make_unique<kstat_report>();
    report->entries.push_back(kstat::check_unbiased(e->expr, parallel != 0));
    for (const auto& c : report->entries) report->differences.push_back(kstat::to_string(c.difference));
    *out = report.release();
  });
}

kstat_status kstat_verify_suite(const char* suite, const kstat_options* options, kstat_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    const auto opts = convert(options);
    auto report = std::make_unique<kstat_report>();
    for (const auto& spec : kstat::expand_suite(suite ? suite : kstat::default_suite())) {
      report->entries.push_back(kstat::check_unbiased(kstat::generate(spec, opts), opts.parallel));
      report->differences.push_back(kstat::to_string(report->entries.back().difference));
    }
    *out = report.release();
  });
}

const char* kstat_default_suite(void) { return kstat::default_suite().data(); }

size_t kstat_report_size(const kstat_report* r) { return r ? r->entries.size() : 0; }

int kstat_report_all_pass(const kstat_report* r) {
  if (r == nullptr) return 0;
  for (const auto& c : r->entries)
    if (!c.pass) return 0;
  return 1;
}

kstat_status kstat_report_entry(const kstat_report* r, size_t i, const char** label, int* pass,
                                const char** difference, double* elapsed_ms) {
  return guarded([&] {
    require(r, "report");
    if (i >= r->entries.size()) kstat::fail(kstat::ErrorCode::kUsage, "report index out of range");
    const auto& c = r->entries[i];
    if (label) *label = c.label.c_str();
    if (pass) *pass = c.pass ? 1 : 0;
    if (difference) *difference = r->differences[i].c_str();
    if (elapsed_ms) *elapsed_ms = c.elapsed_ms;
  });
}

kstat_status kstat_report_json(const kstat_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = duplicate(kstat::certification_json(r->entries));
  });
}

void kstat_report_free(kstat_report* r) { delete r; }

kstat_status kstat_dataset_load(const char* path, int header, kstat_dataset** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new kstat_dataset{kstat::ingest_csv_file(path, header != 0)};
  });
}

kstat_status kstat_dataset_parse(const char* csv, int header, kstat_dataset** out) {
  return guarded([&] {
    require(csv, "csv");
    require(out, "out");
    *out = nullptr;
    std::istringstream in(csv);
    *out = new kstat_dataset{kstat::ingest_csv(in, header != 0)};
  });
}

size_t kstat_dataset_rows(const kstat_dataset* ds) { return ds ? ds->data.n() : 0; }

unsigned kstat_dataset_columns(const kstat_dataset* ds) { return ds ? ds->data.d() : 0; }

void kstat_dataset_free(kstat_dataset* ds) { delete ds; }

kstat_status kstat_evaluate(const kstat_estimator* e, const kstat_dataset* ds, kstat_mode mode,
                            kstat_number number, char** out) {
  return guarded([&] {
    require(e, "estimator");
    require(ds, "dataset");
    require(out, "out");
    if (mode == KSTAT_MODE_FLOAT) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", kstat::evaluate_float(e->expr, ds->data));
      *out = duplicate(buf);
      return;
    }
    const kstat::Rational value = kstat::evaluate_exact(e->expr, ds->data);
    *out = duplicate(number == KSTAT_NUMBER_DECIMAL ? decimal(value) : kstat::to_string(value));
  });
}

kstat_status kstat_bench(const char* grid, const kstat_options* options, char** tsv) {
  return guarded([&] {
    require(tsv, "tsv");
    const auto rows = kstat::run_bench(grid ? grid : kstat::default_bench_grid(), convert(options));
    *tsv = duplicate(kstat::bench_tsv(rows));
  });
}

const char* kstat_default_bench_grid(void) { return kstat::default_bench_grid().data(); }

}  // extern "C"
