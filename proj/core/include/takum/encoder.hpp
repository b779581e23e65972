#pragma once

// Takum encoder: internal representation -> correctly rounded n-bit pattern.
//
// The datapath mirrors the hardware postencoder:
//   predictor      flags inputs whose truncation would land on the zero/NaR
//                  tail, or whose increment would wrap onto it
//   precursor      (c or ~c) + 1 = 2^r + coded characteristic bits
//   lod8           regime r = index of the leading one of the precursor
//   extended takum S D R C M plus a 7-bit rounding tail, n + 7 bits
//   rounder        round-to-nearest, ties to even, saturating on the flags

#include <array>
#include <cstdint>

#include "takum/decoder.hpp"
#include "takum/pattern.hpp"

namespace takum {

struct encoder_input {
  bool sign = false;
  int characteristic = 0;      // c in [-255, 254]
  std::uint64_t mantissa = 0;  // w - 5 bits
  bool is_zero = false;
  bool is_nar = false;
};

struct predictor_flags {
  bool underflow_on_down = false;
  bool overflow_on_up = false;

  friend bool operator==(const predictor_flags&, const predictor_flags&) = default;
};

struct predictor_bounds {
  int underflow_at_or_below;
  int overflow_at_or_above;
};

/// Characteristic bounds for n = 2..11, indexed by n - 2.
inline constexpr std::array<predictor_bounds, 10> small_width_bounds{{
    {-1, 0},
    {-16, 15},
    {-64, 63},
    {-128, 127},
    {-192, 191},
    {-224, 223},
    {-240, 239},
    {-248, 247},
    {-252, 251},
    {-254, 253},
}};

predictor_flags predict_flags(int characteristic, std::uint64_t mantissa, int n);

std::uint8_t characteristic_precursor(int characteristic) noexcept;

/// Index of the most significant set bit. Throws std::invalid_argument for 0.
int lod8(std::uint8_t x);

class extended_takum {
 public:
  extended_takum(uint128 bits, int n) : bits_(bits), n_(n) {}

  uint128 bits() const noexcept { return bits_; }
  int width() const noexcept { return n_; }
  /// The 7 rounding bits below the n-bit rounding-down candidate.
  unsigned tail() const noexcept { return static_cast<unsigned>(bits_ & 0x7F); }
  pattern round_down() const { return {static_cast<std::uint64_t>(bits_ >> 7), n_}; }
  pattern round_up() const {
    return {(static_cast<std::uint64_t>(bits_ >> 7) + 1) & low_mask(n_), n_};
  }

 private:
  uint128 bits_;
  int n_;
};

/// Requires n >= 5. For n < 12 the mantissa still carries w - 5 = 7 bits;
/// bits that fall below the 7-bit tail are folded into its last bit.
extended_takum build_extended(bool sign, int characteristic, std::uint64_t mantissa, int n);

pattern round_extended(const extended_takum& ext, predictor_flags flags);

pattern postencode(const encoder_input& input, int n);

/// lbar is a fixed-point numerator over 2^(w-5); must lie in [-255, 255).
pattern encode_logarithmic(bool sign, int128 lbar, bool is_zero, bool is_nar, int n);
pattern encode_logarithmic(const log_internal& value, int n);

/// exponent in [-255, 254], fraction a numerator over 2^(w-5).
pattern encode_linear(bool sign, int exponent, std::uint64_t fraction, bool is_zero, bool is_nar,
                      int n);
pattern encode_linear(const lin_internal& value, int n);

}  // namespace takum
