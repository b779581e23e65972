#include "takum/encoder.hpp"

#include <stdexcept>
#include <string>

#include "takum/oracle.hpp"

namespace takum {

namespace {

void check_characteristic(int c) {
  if (c < -255 || c > 254) {
    throw std::out_of_range("characteristic " + std::to_string(c) + " outside [-255, 254]");
  }
}

void check_mantissa(std::uint64_t m, int n) {
  if ((m & ~low_mask(mantissa_width(n))) != 0) {
    throw std::out_of_range("mantissa wider than " + std::to_string(mantissa_width(n)) + " bits");
  }
}

}  // namespace

predictor_flags predict_flags(int characteristic, std::uint64_t mantissa, int n) {
  check_width(n);
  if (n < 12) {
    const predictor_bounds b = small_width_bounds[static_cast<std::size_t>(n - 2)];
    return {characteristic <= b.underflow_at_or_below, characteristic >= b.overflow_at_or_above};
  }
  // regime is 7 at both ends, so the n - 11 leading mantissa bits cover the
  // kept mantissa plus the most significant rounding bit
  const int inspected = n - 11;
  const std::uint64_t top = mantissa >> (mantissa_width(n) - inspected);
  return {characteristic == -255 && top == 0,
          characteristic == 254 && top == low_mask(inspected)};
}

std::uint8_t characteristic_precursor(int characteristic) noexcept {
  const unsigned normalised = static_cast<unsigned>(characteristic < 0 ? ~characteristic : characteristic);
  return static_cast<std::uint8_t>((normalised & 0xFF) + 1);
}

int lod8(std::uint8_t x) {
  static constexpr std::array<int, 16> nibble_lod{-1, 0, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3};
  if (x == 0) throw std::invalid_argument("lod8 of zero");
  const unsigned high = x >> 4;
  return high != 0 ? nibble_lod[high] + 4 : nibble_lod[x & 0xF];
}

extended_takum build_extended(bool sign, int characteristic, std::uint64_t mantissa, int n) {
  check_width(n);
  if (n < 5) throw std::invalid_argument("extended takum requires n >= 5");
  check_characteristic(characteristic);
  check_mantissa(mantissa, n);

  const int w = ghost_width(n);
  const int k = w - 5;
  const bool direction = characteristic >= 0;
  const std::uint8_t precursor = characteristic_precursor(characteristic);
  const int regime = lod8(precursor);
  const unsigned regime_bits = direction ? static_cast<unsigned>(regime) : (~static_cast<unsigned>(regime) & 0x7);
  const unsigned slot = (direction ? precursor : ~precursor) & 0x7Fu;

  // [slot(7) | mantissa(k) | 0(7)] >> r, keep the low k + 2 bits
  const uint128 sequence = (uint128{slot} << (k + 7)) | (uint128{mantissa} << 7);
  const uint128 body = (sequence >> regime) & ((uint128{1} << (k + 7)) - 1);
  uint128 full = (uint128{sign} << (w + 6)) | (uint128{direction} << (w + 5)) |
                 (uint128{regime_bits} << (w + 2)) | body;

  if (n < 12) {
    const int dropped = w - n;
    const bool sticky = (full & ((uint128{1} << dropped) - 1)) != 0;
    full = (full >> dropped) | uint128{sticky};
  }
  return {full, n};
}

pattern round_extended(const extended_takum& ext, predictor_flags flags) {
  const pattern down = ext.round_down();
  const unsigned tail = ext.tail();
  const bool round_bit = (tail >> 6) & 1;
  const bool sticky = (tail & 0x3F) != 0;
  const bool odd = down.bits() & 1;
  const bool up = flags.underflow_on_down ||
                  (!flags.overflow_on_up && round_bit && (sticky || odd));
  return up ? ext.round_up() : down;
}

pattern postencode(const encoder_input& input, int n) {
  check_width(n);
  if (input.is_zero && input.is_nar) throw std::invalid_argument("input flagged as both zero and NaR");
  if (input.is_zero) return pattern::zero(n);
  if (input.is_nar) return pattern::nar(n);
  check_characteristic(input.characteristic);
  check_mantissa(input.mantissa, n);

  if (n < 5) {
    const int k = mantissa_width(n);
    exact_lbar x{mpz_from(int128{input.characteristic} * (int128{1} << k) +
                          static_cast<int128>(input.mantissa)),
                 k};
    return round_in_pattern_space(input.sign, x, n);
  }
  const predictor_flags flags = predict_flags(input.characteristic, input.mantissa, n);
  return round_extended(build_extended(input.sign, input.characteristic, input.mantissa, n), flags);
}

pattern encode_logarithmic(bool sign, int128 lbar, bool is_zero, bool is_nar, int n) {
  check_width(n);
  const int k = mantissa_width(n);
  if (!is_zero && !is_nar) {
    if (lbar < -(int128{255} << k) || lbar >= (int128{255} << k)) {
      throw std::out_of_range("barred logarithmic value outside [-255, 255)");
    }
  }
  const int c = static_cast<int>(lbar >> k);
  const std::uint64_t m = static_cast<std::uint64_t>(lbar) & low_mask(k);
  return postencode({sign, c, m, is_zero, is_nar}, n);
}

pattern encode_logarithmic(const log_internal& value, int n) {
  if (value.fraction_bits != mantissa_width(n)) {
    throw std::invalid_argument("log_internal fraction width does not match n");
  }
  return encode_logarithmic(value.sign, value.lbar, value.special == special_flag::zero,
                            value.special == special_flag::nar, n);
}

pattern encode_linear(bool sign, int exponent, std::uint64_t fraction, bool is_zero, bool is_nar,
                      int n) {
  check_width(n);
  if (is_zero || is_nar) return postencode({sign, 0, 0, is_zero, is_nar}, n);
  if (exponent < -255 || exponent > 254) {
    throw std::out_of_range("exponent " + std::to_string(exponent) + " outside [-255, 254]");
  }
  const int c = sign ? ~exponent : exponent;
  return postencode({sign, c, fraction, false, false}, n);
}

pattern encode_linear(const lin_internal& value, int n) {
  if (value.fraction_bits != mantissa_width(n)) {
    throw std::invalid_argument("lin_internal fraction width does not match n");
  }
  return encode_linear(value.sign, value.exponent, value.fraction,
                       value.special == special_flag::zero, value.special == special_flag::nar, n);
}

}  // namespace takum
