#include <kstat/bench.hpp>

#include <cstdio>

namespace kstat {

std::string_view default_bench_grid() {
  return "k 5,k 7,k 9,k 11,k 14,k 16,k 18,k 20,k 22,k 24,k 26,k 28,"
         "pk 3 2,pk 4 4,pk 5 3,pk 7 5,pk 7 7,pk 9 9,pk 10 8,pk 4 4 4,"
         "mk 3 2,mk 4 4,mk 5 5,mk 6 5,mk 6 6,mk 7 6,mk 7 7,mk 8 6,mk 8 7,"
         "mk 3 3 3,mk 4 3 3,mk 4 4 3,mk 4 4 4,mpk:table2";
}

std::vector<BenchRow> run_bench(std::string_view grid, const GenerationOptions& options) {
  std::vector<BenchRow> rows;
  for (const auto& spec : expand_suite(grid)) {
    BenchRow row;
    row.spec = spec.label();
    try {
      const EstimatorExpr e = generate(spec, options);
      row.seconds = e.generation_seconds;
      row.terms = e.term_count();
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kCapacity) throw;
      row.note = err.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bench_tsv(const std::vector<BenchRow>& rows) {
  std::string out = "spec\tseconds\tterms\n";
  for (const auto& row : rows) {
    out += row.spec + '\t';
    if (!row.note.empty()) {
      out += "NA\tNA (" + row.note + ")\n";
      continue;
    }
    char seconds[32];
    std::snprintf(seconds, sizeof seconds, "%.3f", row.seconds);
    out += std::string(seconds) + '\t' + std::to_string(row.terms) + '\n';
  }
  return out;
}

}  // namespace kstat
