#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace structcsp::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUnsatisfiable = 1,
  kInputError = 2,
  kBudgetExceeded = 3,
  kInternalError = 4,
};

struct BenchRow {
  std::size_t constraints;
  double median_ms;
  double min_ms;
  double max_ms;
};

/// Wall time of GYO plus the DP on seeded chain instances, one row per size.
std::vector<BenchRow> bench_chain(const std::vector<std::size_t>& sizes, std::size_t repeat, std::size_t domain,
                                  std::size_t tuples, std::uint64_t seed);

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace structcsp::cli
