#pragma once

// Golden test vectors for hardware testbenches.
//
// File layout (LF line endings, uppercase hex without prefix, fixed width):
//
//   takumvec 1 <dlog|dlin|elog|elin> <n> <count>
//   decode record: <pattern> <S> <c> <mantissa> <F|Z|R>
//   encode record: <S> <c> <mantissa> <-|Z|N> <pattern>
//
// <c> is a decimal integer: the characteristic for logarithmic files, the
// exponent for linear files. The mantissa field is ceil((w-5)/4) digits wide,
// the pattern field ceil(n/4).

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "takum/pattern.hpp"

namespace takum {

enum class vector_kind : std::uint8_t { decode_log, decode_lin, encode_log, encode_lin };

std::string to_string(vector_kind kind);
vector_kind parse_vector_kind(const std::string& text);
constexpr bool is_decode(vector_kind k) { return k == vector_kind::decode_log || k == vector_kind::decode_lin; }
constexpr bool is_linear(vector_kind k) { return k == vector_kind::decode_lin || k == vector_kind::encode_lin; }

struct vector_record {
  std::uint64_t pattern = 0;
  bool sign = false;
  int characteristic = 0;  // c, or e for linear files
  std::uint64_t mantissa = 0;
  special_flag flag = special_flag::finite;

  friend bool operator==(const vector_record&, const vector_record&) = default;
};

struct vector_file {
  vector_kind kind = vector_kind::decode_log;
  int n = 0;
  std::vector<vector_record> records;
};

struct selection {
  bool exhaustive = true;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;

  static selection all() { return {}; }
  static selection random(std::uint64_t count, std::uint64_t seed) { return {false, count, seed}; }
};

/// Number of records in an exhaustive file: 2^n for decoders, both signs of
/// every (c, mantissa) pair plus the zero and NaR inputs for encoders.
std::uint64_t exhaustive_size(vector_kind kind, int n);

/// The i-th input of the canonical exhaustive enumeration, expected outputs
/// left unset.
vector_record exhaustive_input(vector_kind kind, int n, std::uint64_t index);

/// Fills in expected outputs with the codec and cross-checks each one against
/// the oracle; throws std::logic_error on disagreement.
vector_file generate(int n, vector_kind kind, selection sel);

std::string format(const vector_file& file);
void write(std::ostream& out, const vector_file& file);

class vector_parse_error : public std::runtime_error {
 public:
  vector_parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// One record line without its line feed, in the layout of `kind`.
vector_record parse_record(vector_kind kind, int n, const std::string& line, std::size_t line_no);

/// Strict parser; header is line 1, record i is line i + 2.
vector_file parse(std::istream& in);
vector_file parse(const std::string& text);

struct verify_report {
  std::size_t records = 0;
  std::vector<std::size_t> mismatched_lines;

  bool ok() const noexcept { return mismatched_lines.empty(); }
};

/// Recomputes the expected fields of record `index`. Exhaustive files must
/// also list their inputs in canonical order.
bool check_record(vector_kind kind, int n, std::uint64_t index, const vector_record& record, bool exhaustive);

/// A file whose record count equals exhaustive_size() is checked as exhaustive.
verify_report verify(const vector_file& file);

}  // namespace takum
