#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace takum {

struct selftest_result {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
};

/// Runs the codec invariants at width n: exhaustively where the input space
/// allows (n <= 16), on a fixed-seed random sample otherwise.
std::vector<selftest_result> run_selftest(int n);

/// One "PASS|FAIL name (cases, failures)" line per suite; returns true when
/// every suite passed.
bool print_selftest(std::ostream& out, const std::vector<selftest_result>& results);

}  // namespace takum
