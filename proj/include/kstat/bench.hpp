#pragma once

// Generation timings over a grid of estimators.

#include <kstat/estimators.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace kstat {

struct BenchRow {
  std::string spec;
  double seconds = 0.0;
  std::size_t terms = 0;
  std::string note;  // set when the row could not be generated
};

/// Comma-separated grid entries in suite syntax ("k 5,pk 3 2,mk 3 2,mpk 2 1;1 1"
/// or ranges such as "k:5..9").
std::vector<BenchRow> run_bench(std::string_view grid, const GenerationOptions& options = {});

/// The univariate and multivariate rows of the reference timing tables.
std::string_view default_bench_grid();

/// "spec\tseconds\tterms" header plus one line per row, seconds to 3 decimals.
std::string bench_tsv(const std::vector<BenchRow>& rows);

}  // namespace kstat
