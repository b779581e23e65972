#pragma once

// High-precision reference model. Nothing here calls into the decoder or the
// encoder datapath: patterns are re-read directly from the format definition
// and rounding is done by searching the ordered table of representable
// barred logarithmic values.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "takum/pattern.hpp"

namespace takum {

mpz_class mpz_from(int128 value);

/// Dyadic rational numerator / 2^fraction_bits.
struct exact_lbar {
  mpz_class numerator;
  int fraction_bits = 0;

  static exact_lbar from_integer(long value) { return {mpz_class(value), 0}; }
  mpq_class to_rational() const;
  /// Integer part, rounded toward minus infinity.
  long floor() const;
  /// "a" or "a/b" in lowest terms.
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const exact_lbar& a, const exact_lbar& b);
  friend bool operator==(const exact_lbar& a, const exact_lbar& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

exact_lbar operator-(const exact_lbar& x);

/// Parses "a", "a/b" (b a power of two) or a terminating decimal such as
/// "-0.0078125". Throws std::invalid_argument if the value is not dyadic.
exact_lbar parse_exact_lbar(std::string_view text);

struct exact_decoded {
  special_flag special = special_flag::finite;
  bool sign = false;
  exact_lbar lbar;
};

/// Sign and lbar = c + m of a pattern, evaluated from the field definitions.
exact_decoded exact_decode(pattern t);

/// Exact linear value [(1 - 3S) + f] * 2^e of a finite pattern.
mpq_class exact_linear_value(pattern t);

struct precision_schedule {
  int initial_bits = 128;
  int max_bits = 4096;
};

/// (-1)^S e^(l/2) or [(1 - 3S) + f] 2^e, correctly rounded to `digits`
/// significant decimal digits. "NaR" and "0" for the special patterns.
std::string exact_value_decimal(pattern t, int digits, mode m, precision_schedule schedule = {});

/// Rounds the exact code string (S, D, R, C, M...) to n bits: nearest in
/// pattern space, ties to even, never onto the zero/NaR tail when that is
/// what the width-specific saturation rule forbids.
pattern round_in_pattern_space(bool sign, const exact_lbar& lbar, int n);

/// Reference rounding of an exact lbar in [-255, 255) to n bits by bracketing
/// it between neighbouring representable values. The zero/NaR tail counts as
/// lbar = -255.
pattern nearest_from_lbar(bool sign, const exact_lbar& lbar, int n);

struct real_rounding {
  pattern result;
  bool saturated = false;
};

/// Rounds a decimal literal (or "NaR") to an n-bit takum.
real_rounding nearest_from_real(std::string_view decimal, int n, mode m,
                                precision_schedule schedule = {});

struct deviation_record {
  int n = 0;
  takum::mode mode = mode::logarithmic;
  bool sign = false;
  int characteristic = 0;
  std::uint64_t mantissa = 0;
  pattern faithful_output{0, 2};
  pattern value_nearest_output{0, 2};
  std::string reason;
};

/// Encoder inputs (both signs, all c, all w-5 bit mantissas) where the
/// bit-faithful encoder differs from nearest rounding in the mode's value
/// coordinate (l for logarithmic, the real value for linear takums) that never
/// picks a reserved pattern for a finite input. Requires n <= 16.
std::vector<deviation_record> differential_check(int n, mode m);

std::string format_report(const std::vector<deviation_record>& records);

}  // namespace takum
