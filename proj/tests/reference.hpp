#pragma once

// Reference helpers for the tests. Nothing here uses the library's decoder,
// encoder or oracle: fields are read straight off the bit string and all
// arithmetic is exact.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "takum/encoder.hpp"
#include "takum/oracle.hpp"
#include "takum/pattern.hpp"

namespace takum::reference {

struct fields {
  bool zero = false;
  bool nar = false;
  bool sign = false;
  bool direction = false;
  int regime = 0;
  int characteristic = 0;
  int precision = 0;
  mpq_class mantissa;  // in [0, 1)
};

/// Reads a pattern MSB first after appending ghost bits up to 12.
inline fields read(std::uint64_t bits, int n) {
  const int w = n < 12 ? 12 : n;
  const std::uint64_t x = n < 12 ? bits << (12 - n) : bits;
  auto bit = [&](int i) { return static_cast<unsigned>((x >> (w - 1 - i)) & 1u); };
  fields f;
  f.sign = bit(0);
  f.direction = bit(1);
  unsigned r_bits = 0;
  for (int i = 2; i < 5; ++i) r_bits = (r_bits << 1) | bit(i);
  f.regime = static_cast<int>(f.direction ? r_bits : 7 - r_bits);
  unsigned c_bits = 0;
  for (int i = 0; i < f.regime; ++i) c_bits = (c_bits << 1) | bit(5 + i);
  f.characteristic = f.direction ? (1 << f.regime) - 1 + static_cast<int>(c_bits)
                                 : -(1 << (f.regime + 1)) + 1 + static_cast<int>(c_bits);
  f.precision = w - 5 - f.regime;
  mpz_class m = 0;
  for (int i = 0; i < f.precision; ++i) m = 2 * m + bit(5 + f.regime + i);
  f.mantissa = mpq_class(m, mpz_class(1) << f.precision);
  f.mantissa.canonicalize();
  const bool tail_zero = (bits & ((n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1) >> 1)) == 0;
  f.zero = tail_zero && !f.sign;
  f.nar = tail_zero && f.sign;
  return f;
}

inline mpq_class lbar(const fields& f) { return f.characteristic + f.mantissa; }

/// l = (-1)^S lbar
inline mpq_class ell(const fields& f) { return f.sign ? mpq_class(-lbar(f)) : lbar(f); }

inline mpq_class pow2(int e) {
  return e >= 0 ? mpq_class(mpz_class(1) << e) : mpq_class(mpz_class(1), mpz_class(1) << -e);
}

/// [(1 - 3S) + f] 2^e with e = c for S = 0 and ~c for S = 1.
inline mpq_class linear_value(bool sign, int characteristic, const mpq_class& fraction) {
  const int e = sign ? -characteristic - 1 : characteristic;
  return (mpq_class(sign ? -2 : 1) + fraction) * pow2(e);
}

/// Value coordinate used for nearest rounding: l for logarithmic takums,
/// the real value for linear ones.
inline mpq_class coordinate(bool sign, int characteristic, const mpq_class& fraction, mode md) {
  if (md == mode::linear) return linear_value(sign, characteristic, fraction);
  const mpq_class l = characteristic + fraction;
  return sign ? mpq_class(-l) : l;
}

struct candidate {
  mpq_class key;
  std::uint64_t bits;
};

/// Encoder inputs where postencode differs from the nearest finite nonzero
/// pattern of the same sign (ties to the even pattern).
inline std::vector<deviation_record> brute_force_deviations(int n, mode md) {
  const int k = mantissa_width(n);
  const mpz_class scale = mpz_class(1) << k;
  std::vector<candidate> table[2];
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    const fields f = read(b, n);
    if (f.zero || f.nar) continue;
    table[f.sign].push_back({coordinate(f.sign, f.characteristic, f.mantissa, md), b});
  }
  for (auto& side : table) {
    std::sort(side.begin(), side.end(), [](const candidate& a, const candidate& b) { return a.key < b.key; });
  }
  std::vector<deviation_record> out;
  for (int s = 0; s <= 1; ++s) {
    const auto& side = table[s];
    for (int c = -255; c <= 254; ++c) {
      for (std::uint64_t mant = 0; mant < (std::uint64_t{1} << k); ++mant) {
        mpq_class fraction(mpz_class(mant), scale);
        fraction.canonicalize();
        const mpq_class x = coordinate(s != 0, c, fraction, md);
        auto above = std::lower_bound(side.begin(), side.end(), x,
                                      [](const candidate& a, const mpq_class& v) { return a.key < v; });
        std::uint64_t best = 0;
        if (above == side.end()) {
          best = side.back().bits;
        } else if (above == side.begin() || above->key == x) {
          best = above->bits;
        } else {
          const auto below = above - 1;
          const int order = cmp(mpq_class(x - below->key), mpq_class(above->key - x));
          if (order < 0) best = below->bits;
          else if (order > 0) best = above->bits;
          else best = (below->bits & 1) == 0 ? below->bits : above->bits;
        }
        const pattern faithful = postencode({s != 0, c, mant, false, false}, n);
        if (faithful.bits() != best) {
          deviation_record r;
          r.n = n;
          r.mode = md;
          r.sign = s != 0;
          r.characteristic = c;
          r.mantissa = mant;
          r.faithful_output = faithful;
          r.value_nearest_output = pattern(best, n);
          out.push_back(r);
        }
      }
    }
  }
  return out;
}

}  // namespace takum::reference
