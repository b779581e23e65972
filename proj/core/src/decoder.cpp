#include "takum/decoder.hpp"

namespace takum {

namespace {

constexpr std::uint16_t nine_bits = 0x1FF;

constexpr int to_signed9(std::uint16_t v) noexcept {
  return (v & 0x100) ? static_cast<int>(v) - 0x200 : static_cast<int>(v);
}

}  // namespace

std::uint8_t raw_characteristic(std::uint64_t expanded, int w) noexcept {
  return static_cast<std::uint8_t>((expanded >> (w - 12)) & 0x7F);
}

std::uint16_t shifted_bias(std::uint8_t raw, int antiregime) noexcept {
  const std::uint16_t prefixed = static_cast<std::uint16_t>(0x100 | (raw & 0x7F));
  // arithmetic shift of a 9-bit word whose MSB is always 1
  const std::uint16_t fill = static_cast<std::uint16_t>(nine_bits & ~(nine_bits >> antiregime));
  return static_cast<std::uint16_t>((prefixed >> antiregime) | fill);
}

int characteristic_determinator(std::uint8_t raw, bool direction, int antiregime,
                                bool output_exponent, bool sign) noexcept {
  const std::uint8_t conditioned = direction ? static_cast<std::uint8_t>(~raw & 0x7F) : raw;
  const std::uint16_t biased = shifted_bias(conditioned, antiregime);
  // the low byte is at most 0xFD here, so the increment never carries out
  const std::uint16_t incremented =
      static_cast<std::uint16_t>(0x100 | ((biased + 1) & 0xFF));
  const bool negate = direction != (output_exponent && sign);
  return to_signed9(negate ? static_cast<std::uint16_t>(~incremented & nine_bits) : incremented);
}

predecoded predecode(pattern t, bool output_exponent) noexcept {
  const int w = ghost_width(t.width());
  const std::uint64_t x = t.expanded();

  predecoded out;
  out.sign = (x >> (w - 1)) & 1;
  out.direction = (x >> (w - 2)) & 1;
  const unsigned regime_bits = static_cast<unsigned>((x >> (w - 5)) & 0x7);
  out.regime = static_cast<int>(out.direction ? regime_bits : (~regime_bits & 0x7));
  const int antiregime = 7 - out.regime;
  out.characteristic_or_exponent = characteristic_determinator(
      raw_characteristic(x, w), out.direction, antiregime, output_exponent, out.sign);
  out.precision = w - out.regime - 5;
  out.mantissa = (x << out.regime) & low_mask(w - 5);
  out.special = t.special();
  return out;
}

log_internal decode_logarithmic(pattern t) noexcept {
  const predecoded pre = predecode(t, false);
  const int fraction_bits = mantissa_width(t.width());
  log_internal out;
  out.sign = pre.sign;
  out.fraction_bits = fraction_bits;
  out.lbar = (int128{pre.characteristic_or_exponent} << fraction_bits) |
             static_cast<int128>(pre.mantissa);
  out.special = pre.special;
  return out;
}

lin_internal decode_linear(pattern t) noexcept {
  const predecoded pre = predecode(t, true);
  lin_internal out;
  out.sign = pre.sign;
  out.exponent = pre.characteristic_or_exponent;
  out.fraction = pre.mantissa;
  out.fraction_bits = mantissa_width(t.width());
  out.special = pre.special;
  return out;
}

}  // namespace takum
