#pragma once

// Takum decoder: pattern -> (S, lbar) for logarithmic takums or (S, e, f) for
// linear takums. The stages follow the hardware predecoder: the 7 bits after
// the regime field are read as a raw characteristic and turned into c (or e)
// using increments only.

#include <cstdint>

#include "takum/pattern.hpp"

namespace takum {

/// Bits [w-6 .. w-12] of a ghost-expanded pattern: the r characteristic bits
/// left-aligned, followed by 7 - r waste bits.
std::uint8_t raw_characteristic(std::uint64_t expanded, int w) noexcept;

/// Prepends 0b10 to the (conditionally inverted) raw characteristic and shifts
/// the 9-bit result arithmetically right by the antiregime. Yields the bias
/// -2^(r+1) OR-ed with the characteristic bits, as a 9-bit pattern.
std::uint16_t shifted_bias(std::uint8_t raw, int antiregime) noexcept;

/// Characteristic (or exponent, when output_exponent and sign are both set)
/// as a signed 9-bit integer.
int characteristic_determinator(std::uint8_t raw, bool direction, int antiregime,
                                bool output_exponent, bool sign) noexcept;

struct predecoded {
  bool sign = false;
  bool direction = false;
  int regime = 0;
  int characteristic_or_exponent = 0;
  std::uint64_t mantissa = 0;  // left-aligned in w - 5 bits
  int precision = 0;
  special_flag special = special_flag::finite;
};

predecoded predecode(pattern t, bool output_exponent) noexcept;

/// Sign and barred logarithmic value lbar = c + m, stored as a fixed-point
/// numerator over 2^fraction_bits (fraction_bits = w - 5).
struct log_internal {
  bool sign = false;
  int128 lbar = 0;
  int fraction_bits = 0;
  special_flag special = special_flag::finite;

  int characteristic() const noexcept {
    return static_cast<int>(lbar >> fraction_bits);
  }
  std::uint64_t mantissa() const noexcept {
    return static_cast<std::uint64_t>(lbar) & low_mask(fraction_bits);
  }
};

/// Two's-complement internal form [(1 - 3S) + f] * 2^e with f held as an
/// unsigned fixed-point numerator over 2^fraction_bits.
struct lin_internal {
  bool sign = false;
  int exponent = 0;
  std::uint64_t fraction = 0;
  int fraction_bits = 0;
  special_flag special = special_flag::finite;
};

log_internal decode_logarithmic(pattern t) noexcept;
lin_internal decode_linear(pattern t) noexcept;

}  // namespace takum
