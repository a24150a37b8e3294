// kstat: generate, evaluate, verify and time unbiased cumulant estimators.
// Talks to the library through the C interface only.

#include <kstat/kstat.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

/// Owns a heap string handed out by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { kstat_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct EstimatorHandle {
  kstat_estimator* p = nullptr;
  ~EstimatorHandle() { kstat_estimator_free(p); }
};

struct ReportHandle {
  kstat_report* p = nullptr;
  ~ReportHandle() { kstat_report_free(p); }
};

struct DatasetHandle {
  kstat_dataset* p = nullptr;
  ~DatasetHandle() { kstat_dataset_free(p); }
};

/// Thrown to unwind with a library status as the exit code.
struct Exit {
  int code;
};

void check(kstat_status status) {
  if (status == KSTAT_OK) return;
  std::cerr << "kstat: " << kstat_last_error() << "\n";
  throw Exit{static_cast<int>(status)};
}

[[noreturn]] void usage(const std::string& what) {
  std::cerr << "kstat: " << what << "\n";
  throw Exit{KSTAT_USAGE};
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

struct SpecArgs {
  std::string family;
  std::vector<std::string> words;
};

void add_spec(CLI::App* cmd, SpecArgs& spec, bool required) {
  cmd->add_option("family", spec.family, "k, pk, mk or mpk")->required(required);
  cmd->add_option("spec", spec.words, "orders, e.g. 5 | 3 2 | \"2 1\" | \"2 1 ; 1 1\"");
}

void generate(const SpecArgs& spec, const kstat_options& options, EstimatorHandle& out) {
  if (spec.words.empty()) usage("missing estimator orders after '" + spec.family + "'");
  check(kstat_generate(spec.family.c_str(), join(spec.words).c_str(), &options, &out.p));
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out || !(out << text)) {
    std::cerr << "kstat: cannot write '" << path << "'\n";
    throw Exit{KSTAT_IO};
  }
}

kstat_format parse_format(const std::string& name) {
  if (name == "text") return KSTAT_FORMAT_TEXT;
  if (name == "json") return KSTAT_FORMAT_JSON;
  return KSTAT_FORMAT_LATEX;
}

int print_report(const kstat_report* report, const std::string& format) {
  if (format == "json") {
    LibString json;
    check(kstat_report_json(report, &json.p));
    std::cout << json.str() << "\n";
  } else {
    for (size_t i = 0; i < kstat_report_size(report); ++i) {
      const char* label = nullptr;
      const char* difference = nullptr;
      int pass = 0;
      check(kstat_report_entry(report, i, &label, &pass, &difference, nullptr));
      std::cout << label << ": " << (pass ? "PASS" : "FAIL") << "\n";
      if (!pass) std::cout << "  difference: " << difference << "\n";
    }
  }
  return kstat_report_all_pass(report) ? 0 : KSTAT_VERIFICATION_FAILED;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact unbiased estimators of cumulants and their products"};
  app.require_subcommand(1, 1);

  kstat_options options;
  kstat_options_default(&options);
  auto add_generation_flags = [&](CLI::App* cmd) {
    cmd->add_option("--max-order", options.max_univariate_order, "univariate total-order limit");
    cmd->add_option("--max-multi", options.max_multivariate_order, "multivariate total-order limit");
    cmd->add_flag("--parallel", options.parallel, "spread independent terms over threads");
    cmd->add_option("--threads", options.threads, "worker threads with --parallel (0: all cores)");
  };

  SpecArgs gen_spec;
  std::string gen_format = "text";
  auto* gen = app.add_subcommand("gen", "print an estimator");
  add_spec(gen, gen_spec, true);
  gen->add_option("--format", gen_format, "text, json or latex")
      ->check(CLI::IsMember({"text", "json", "latex"}));
  add_generation_flags(gen);

  SpecArgs eval_spec;
  std::string data_path, mode = "exact", number = "fraction";
  bool header = false;
  auto* eval = app.add_subcommand("eval", "apply an estimator to CSV data");
  add_spec(eval, eval_spec, true);
  eval->add_option("--data", data_path, "CSV file, one observation per row")->required();
  eval->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  eval->add_option("--output", number, "fraction or decimal (exact mode)")
      ->check(CLI::IsMember({"fraction", "decimal"}));
  eval->add_flag("--header", header, "first row holds column names");
  add_generation_flags(eval);

  SpecArgs verify_spec;
  std::string suite, input, verify_format = "text";
  auto* verify = app.add_subcommand("verify", "certify unbiasedness against exact expectations");
  add_spec(verify, verify_spec, false);
  verify->add_option("--suite", suite, "e.g. \"k:1..10,pk:total<=8/groups=2\"");
  verify->add_option("--input", input, "estimator JSON file to certify");
  verify->add_option("--format", verify_format, "text or json")->check(CLI::IsMember({"text", "json"}));
  add_generation_flags(verify);

  std::string grid, out_path;
  auto* bench = app.add_subcommand("bench", "time estimator generation");
  bench->add_option("--grid", grid, "comma-separated entries, e.g. \"k 5,pk 3 2,mk 3 2\"");
  bench->add_option("--out", out_path, "write the TSV table here");
  add_generation_flags(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return KSTAT_USAGE;
  }

  try {
    if (*gen) {
      EstimatorHandle e;
      generate(gen_spec, options, e);
      LibString text;
      check(kstat_estimator_emit(e.p, parse_format(gen_format), &text.p));
      std::cout << text.str() << "\n";
      return 0;
    }
    if (*eval) {
      EstimatorHandle e;
      generate(eval_spec, options, e);
      DatasetHandle ds;
      check(kstat_dataset_load(data_path.c_str(), header ? 1 : 0, &ds.p));
      LibString value;
      check(kstat_evaluate(e.p, ds.p, mode == "float" ? KSTAT_MODE_FLOAT : KSTAT_MODE_EXACT,
                           number == "decimal" ? KSTAT_NUMBER_DECIMAL : KSTAT_NUMBER_FRACTION, &value.p));
      std::cout << value.str() << "\n";
      return 0;
    }
    if (*verify) {
      const int sources = (verify_spec.family.empty() ? 0 : 1) + (suite.empty() ? 0 : 1) + (input.empty() ? 0 : 1);
      if (sources > 1) usage("give one of a spec, --suite or --input");
      ReportHandle report;
      if (!input.empty()) {
        std::ifstream in(input);
        if (!in) {
          std::cerr << "kstat: cannot open '" << input << "'\n";
          return KSTAT_IO;
        }
        const std::string json((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        EstimatorHandle e;
        check(kstat_estimator_from_json(json.c_str(), &e.p));
        check(kstat_verify(e.p, options.parallel, &report.p));
      } else if (!verify_spec.family.empty()) {
        EstimatorHandle e;
        generate(verify_spec, options, e);
        check(kstat_verify(e.p, options.parallel, &report.p));
      } else {
        check(kstat_verify_suite(suite.empty() ? nullptr : suite.c_str(), &options, &report.p));
      }
      return print_report(report.p, verify_format);
    }
    if (*bench) {
      LibString tsv;
      check(kstat_bench(grid.empty() ? nullptr : grid.c_str(), &options, &tsv.p));
      write_output(tsv.str(), out_path);
      return 0;
    }
  } catch (const Exit& e) {
    return e.code;
  }
  return KSTAT_INTERNAL;
}
