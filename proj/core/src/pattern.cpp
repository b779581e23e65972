#include "takum/pattern.hpp"

#include <cctype>
#include <stdexcept>

namespace takum {

void check_width(int n) {
  if (n < min_width || n > max_width) {
    throw std::invalid_argument("takum width must lie in [2, 64], got " + std::to_string(n));
  }
}

pattern::pattern(std::uint64_t bits, int n) : bits_(bits), n_(n) {
  check_width(n);
  if ((bits & ~low_mask(n)) != 0) {
    throw std::invalid_argument("pattern has bits set above position n-1");
  }
}

pattern pattern::from_signed(std::int64_t value, int n) {
  check_width(n);
  return {static_cast<std::uint64_t>(value) & low_mask(n), n};
}

std::int64_t pattern::as_signed() const noexcept {
  if (n_ == 64) return static_cast<std::int64_t>(bits_);
  const std::uint64_t sign_bit = std::uint64_t{1} << (n_ - 1);
  return static_cast<std::int64_t>(bits_ ^ sign_bit) - static_cast<std::int64_t>(sign_bit);
}

std::uint64_t pattern::expanded() const noexcept {
  return n_ < 12 ? bits_ << (12 - n_) : bits_;
}

std::string pattern::to_hex() const {
  static constexpr char digits[] = "0123456789ABCDEF";
  const int count = (n_ + 3) / 4;
  std::string out = "0x";
  for (int i = count - 1; i >= 0; --i) out += digits[(bits_ >> (4 * i)) & 0xF];
  return out;
}

pattern parse_pattern(const std::string& text, int n) {
  check_width(n);
  if (text.size() < 3 || text[0] != '0') {
    throw std::invalid_argument("pattern must be 0x-prefixed hex or 0b-prefixed binary: " + text);
  }
  const char kind = static_cast<char>(std::tolower(static_cast<unsigned char>(text[1])));
  const int radix_bits = kind == 'x' ? 4 : kind == 'b' ? 1 : 0;
  if (radix_bits == 0) {
    throw std::invalid_argument("pattern must be 0x-prefixed hex or 0b-prefixed binary: " + text);
  }
  std::uint64_t value = 0;
  for (std::size_t i = 2; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '_' || ch == '\'') continue;
    int digit = -1;
    if (ch >= '0' && ch <= '9') digit = ch - '0';
    else if (ch >= 'a' && ch <= 'f') digit = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') digit = ch - 'A' + 10;
    if (digit < 0 || digit >= (1 << radix_bits)) {
      throw std::invalid_argument("invalid digit in pattern literal: " + text);
    }
    if ((value >> (64 - radix_bits)) != 0) throw std::invalid_argument("pattern literal too long: " + text);
    value = (value << radix_bits) | static_cast<std::uint64_t>(digit);
  }
  if ((value & ~low_mask(n)) != 0) {
    throw std::invalid_argument("pattern " + text + " does not fit in " + std::to_string(n) + " bits");
  }
  return {value, n};
}

field_view unpack(pattern t) {
  const int n = t.width();
  const int w = ghost_width(n);
  const std::uint64_t x = t.expanded();

  field_view f;
  f.n = n;
  f.sign = (x >> (w - 1)) & 1;
  f.direction = (x >> (w - 2)) & 1;
  f.regime_bits = static_cast<unsigned>((x >> (w - 5)) & 0x7);
  f.regime = static_cast<int>(f.direction ? f.regime_bits : (~f.regime_bits & 0x7));
  f.precision = w - f.regime - 5;
  f.characteristic_bits =
      static_cast<unsigned>((x >> f.precision) & low_mask(f.regime));
  f.characteristic = characteristic_from_fields(f.direction, f.regime, f.characteristic_bits);
  f.mantissa = (x & low_mask(f.precision)) << f.regime;
  f.special = t.special();
  return f;
}

pattern pack(bool sign, bool direction, unsigned regime_bits, unsigned characteristic_bits,
             std::uint64_t mantissa, int n) {
  check_width(n);
  const int w = ghost_width(n);
  if (regime_bits > 7) throw std::invalid_argument("regime field is wider than 3 bits");
  const int r = static_cast<int>(direction ? regime_bits : (~regime_bits & 0x7));
  const int p = w - r - 5;
  if (characteristic_bits > low_mask(r)) {
    throw std::invalid_argument("characteristic bits wider than the regime allows");
  }
  if (mantissa > low_mask(w - 5)) throw std::invalid_argument("mantissa wider than w-5 bits");
  if ((mantissa & low_mask(r)) != 0) {
    throw std::invalid_argument("mantissa has bits set below its p significant bits");
  }
  std::uint64_t x = (std::uint64_t{sign} << (w - 1)) | (std::uint64_t{direction} << (w - 2)) |
                    (std::uint64_t{regime_bits} << (w - 5)) |
                    (std::uint64_t{characteristic_bits} << p) | (mantissa >> r);
  if (n < 12) {
    if ((x & low_mask(12 - n)) != 0) {
      throw std::invalid_argument("fields set ghost bits beyond the pattern width");
    }
    x >>= 12 - n;
  }
  return {x, n};
}

pattern pack(const field_view& f) {
  return pack(f.sign, f.direction, f.regime_bits, f.characteristic_bits, f.mantissa, f.n);
}

pattern negate(pattern t) noexcept {
  return {(~t.bits() + 1) & low_mask(t.width()), t.width()};
}

std::strong_ordering compare(pattern a, pattern b) {
  if (a.width() != b.width()) {
    throw std::invalid_argument("cannot compare takums of different widths");
  }
  return a.as_signed() <=> b.as_signed();
}

}  // namespace takum
