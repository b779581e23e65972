#pragma once

// Width-parameterized takum bit patterns and their field decomposition.
//
// A takum of width n (2 <= n <= 64) is laid out MSB to LSB as
//
//   S | D | R2 R1 R0 | C(r-1) .. C0 | M(p-1) .. M0
//
// Patterns shorter than 12 bits are read as if padded with zero "ghost" bits
// up to 12, so every decoded quantity below lives at width w = max(n, 12).

#include <compare>
#include <cstdint>
#include <string>

namespace takum {

__extension__ typedef __int128 int128;
__extension__ typedef unsigned __int128 uint128;

inline constexpr int min_width = 2;
inline constexpr int max_width = 64;

enum class special_flag : std::uint8_t { finite, zero, nar };

enum class mode : std::uint8_t { logarithmic, linear };

constexpr int ghost_width(int n) noexcept { return n < 12 ? 12 : n; }

/// Width of the internal mantissa/fraction port, w - 5.
constexpr int mantissa_width(int n) noexcept { return ghost_width(n) - 5; }

constexpr std::uint64_t low_mask(int bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

void check_width(int n);

/// An n-bit takum code word. Bits above position n-1 are always zero.
class pattern {
 public:
  pattern(std::uint64_t bits, int n);

  static pattern zero(int n) { return {0, n}; }
  static pattern nar(int n) { return {std::uint64_t{1} << (n - 1), n}; }
  /// Pattern from a signed integer, reduced modulo 2^n.
  static pattern from_signed(std::int64_t value, int n);

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr int width() const noexcept { return n_; }
  constexpr bool sign() const noexcept { return (bits_ >> (n_ - 1)) & 1; }
  /// All bits below the sign bit.
  constexpr std::uint64_t tail() const noexcept { return bits_ & low_mask(n_ - 1); }
  constexpr bool is_zero() const noexcept { return bits_ == 0; }
  constexpr bool is_nar() const noexcept { return sign() && tail() == 0; }
  constexpr special_flag special() const noexcept {
    if (tail() != 0) return special_flag::finite;
    return sign() ? special_flag::nar : special_flag::zero;
  }
  /// Two's-complement interpretation of the n bits.
  std::int64_t as_signed() const noexcept;
  /// Pattern ghost-extended to width max(n, 12), as raw bits.
  std::uint64_t expanded() const noexcept;

  /// "0x" followed by ceil(n/4) uppercase hex digits.
  std::string to_hex() const;

  friend constexpr bool operator==(const pattern&, const pattern&) = default;

 private:
  std::uint64_t bits_;
  int n_;
};

/// Accepts "0x..." hexadecimal or "0b..." binary literals.
pattern parse_pattern(const std::string& text, int n);

/// Definition-1 fields of a pattern, evaluated at ghost width w.
struct field_view {
  int n = 0;
  bool sign = false;
  bool direction = false;
  unsigned regime_bits = 0;     // R, 3 bits as stored
  int regime = 0;               // r
  unsigned characteristic_bits = 0;  // C, r bits
  int characteristic = 0;       // c
  int precision = 0;            // p = w - r - 5
  std::uint64_t mantissa = 0;   // M left-aligned in w - 5 bits
  special_flag special = special_flag::finite;

  friend bool operator==(const field_view&, const field_view&) = default;
};

field_view unpack(pattern t);

/// Inverse of unpack. Throws std::invalid_argument when the field set is not
/// consistent with width n (wrong regime for D, stray bits, ghost bits set).
pattern pack(bool sign, bool direction, unsigned regime_bits,
             unsigned characteristic_bits, std::uint64_t mantissa, int n);
pattern pack(const field_view& fields);

/// Two's-complement negation modulo 2^n.
pattern negate(pattern t) noexcept;

/// Signed comparison of the code words; NaR is the least element.
/// Throws std::invalid_argument on width mismatch.
std::strong_ordering compare(pattern a, pattern b);

/// Characteristic from (D, r, C) as written in the format definition.
constexpr int characteristic_from_fields(bool direction, int regime,
                                         unsigned characteristic_bits) noexcept {
  const int c_int = static_cast<int>(characteristic_bits);
  return direction ? (1 << regime) - 1 + c_int : -(1 << (regime + 1)) + 1 + c_int;
}

}  // namespace takum
