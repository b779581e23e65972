#include <gtest/gtest.h>

#include "takum/decoder.hpp"
#include "takum/oracle.hpp"
#include "takum/pattern.hpp"

namespace takum {
namespace {

// characteristic straight from the format definition
int reference_characteristic(bool d, int r, unsigned c_bits) {
  return d ? (1 << r) - 1 + static_cast<int>(c_bits) : -(1 << (r + 1)) + 1 + static_cast<int>(c_bits);
}

int to_signed9(unsigned v) { return (v & 0x100) ? static_cast<int>(v) - 0x200 : static_cast<int>(v); }

TEST(RawCharacteristic, Examples) {
  EXPECT_EQ(raw_characteristic(0x480, 12), 0b0000000);
  EXPECT_EQ(raw_characteristic(0x4C0, 12), 0b1000000);
  EXPECT_EQ(raw_characteristic(0x4800, 16), 0b0000000);
  EXPECT_EQ(raw_characteristic(0x4C00, 16), 0b1000000);
  EXPECT_EQ(raw_characteristic(0x3FF, 12), 0b1111111);
  EXPECT_EQ(raw_characteristic(0x400, 12), 0b0000000);
}

TEST(CharacteristicDeterminator, Examples) {
  EXPECT_EQ(shifted_bias(0b0111111, 5), 0b111111001);
  EXPECT_EQ(characteristic_determinator(0b1000000, true, 5, false, false), 5);
  EXPECT_EQ(shifted_bias(0b0000000, 7), 0b111111110);
  EXPECT_EQ(characteristic_determinator(0b0000000, false, 7, false, false), -1);
  EXPECT_EQ(characteristic_determinator(0b1000000, true, 5, true, true), -6);
  // output_exponent with S = 0 leaves c untouched
  EXPECT_EQ(characteristic_determinator(0b1000000, true, 5, true, false), 5);
}

TEST(CharacteristicDeterminator, TableOfBiases) {
  const unsigned expected[8] = {0b111111110, 0b111111100, 0b111111000, 0b111110000,
                                0b111100000, 0b111000000, 0b110000000, 0b100000000};
  for (int r = 0; r <= 7; ++r) {
    EXPECT_EQ(shifted_bias(0, 7 - r), expected[r]) << "r=" << r;
    EXPECT_EQ(to_signed9(expected[r]), -(2 << r));
  }
}

TEST(CharacteristicDeterminator, BiasIsOrOfCharacteristicBits) {
  for (int r = 0; r <= 7; ++r) {
    for (unsigned c = 0; c < (1u << r); ++c) {
      const auto raw = static_cast<std::uint8_t>(c << (7 - r));
      const unsigned bias = static_cast<unsigned>(-(2 << r)) & 0x1FF;
      ASSERT_EQ(shifted_bias(raw, 7 - r), bias | c);
      // no carry out of the low byte when incrementing
      ASSERT_LT(shifted_bias(raw, 7 - r) & 0xFF, 0xFFu);
    }
  }
}

TEST(CharacteristicDeterminator, MatchesDefinitionForAllFieldCombinations) {
  // D, R and the 7 bits after the regime fill exactly one 11-bit block; the
  // waste bits below C must not matter
  for (unsigned d = 0; d <= 1; ++d) {
    for (unsigned r_bits = 0; r_bits < 8; ++r_bits) {
      const int r = static_cast<int>(d ? r_bits : 7 - r_bits);
      for (unsigned raw = 0; raw < 128; ++raw) {
        const unsigned c_bits = raw >> (7 - r);
        const int c = reference_characteristic(d, r, c_bits);
        for (int s = 0; s <= 1; ++s) {
          ASSERT_EQ(characteristic_determinator(static_cast<std::uint8_t>(raw), d, 7 - r, false, s), c);
          ASSERT_EQ(characteristic_determinator(static_cast<std::uint8_t>(raw), d, 7 - r, true, s),
                    s ? -c - 1 : c);
        }
      }
    }
  }
}

TEST(CharacteristicNegation, InvertingDRCNegatesCharacteristic) {
  for (unsigned d = 0; d <= 1; ++d) {
    for (unsigned r_bits = 0; r_bits < 8; ++r_bits) {
      const int r = static_cast<int>(d ? r_bits : 7 - r_bits);
      const int r_inverted = static_cast<int>(!d ? (~r_bits & 7) : 7 - (~r_bits & 7));
      ASSERT_EQ(r, r_inverted);
      for (unsigned c_bits = 0; c_bits < (1u << r); ++c_bits) {
        const int c = reference_characteristic(d, r, c_bits);
        const int c_tilde = reference_characteristic(!d, r, ~c_bits & ((1u << r) - 1));
        ASSERT_EQ(c_tilde, ~c);
        ASSERT_EQ(static_cast<unsigned>(c_tilde) & 0x1FF, ~static_cast<unsigned>(c) & 0x1FF);
        // conditional negation: the D = 0 formula on conditionally inverted bits
        const unsigned conditioned = d ? (~c_bits & ((1u << r) - 1)) : c_bits;
        const int via_d0 = -(2 << r) + 1 + static_cast<int>(conditioned);
        ASSERT_EQ(via_d0, d ? ~c : c);
        ASSERT_EQ(d ? ~via_d0 : via_d0, c);
      }
    }
  }
}

TEST(Predecode, Examples) {
  const predecoded a = predecode(pattern(0x480, 12), false);
  EXPECT_FALSE(a.sign);
  EXPECT_EQ(a.characteristic_or_exponent, 1);
  EXPECT_EQ(a.mantissa, 0u);
  EXPECT_EQ(a.precision, 6);

  EXPECT_EQ(predecode(pattern(0x800, 12), false).special, special_flag::nar);

  const predecoded b = predecode(pattern(0xBFF, 12), true);
  EXPECT_TRUE(b.sign);
  EXPECT_EQ(b.characteristic_or_exponent, 0);
  EXPECT_EQ(b.mantissa, 0x7Fu);
}

TEST(DecodeLogarithmic, Examples) {
  const log_internal a = decode_logarithmic(pattern(0x3FF, 12));
  EXPECT_FALSE(a.sign);
  EXPECT_EQ(a.fraction_bits, 7);
  EXPECT_EQ(static_cast<long>(a.lbar), -1);
  EXPECT_EQ(static_cast<long>(decode_logarithmic(pattern(0x480, 12)).lbar), 128);
  EXPECT_EQ(static_cast<long>(decode_logarithmic(pattern(0x400, 12)).lbar), 0);
}

TEST(DecodeLinear, Examples) {
  const lin_internal one = decode_linear(pattern(0x400, 12));
  EXPECT_EQ(one.exponent, 0);
  EXPECT_EQ(one.fraction, 0u);

  const lin_internal a = decode_linear(pattern(0x3FF, 12));
  EXPECT_FALSE(a.sign);
  EXPECT_EQ(a.exponent, -1);
  EXPECT_EQ(a.fraction, 127u);

  const lin_internal b = decode_linear(pattern(0xBFF, 12));
  EXPECT_TRUE(b.sign);
  EXPECT_EQ(b.exponent, 0);
  EXPECT_EQ(b.fraction, 127u);
  EXPECT_EQ(exact_linear_value(pattern(0xBFF, 12)), mpq_class(-129, 128));
}

TEST(DecodeLogarithmic, ConcatenationAndOracleAgreement) {
  for (int n = 2; n <= 14; ++n) {
    const int k = mantissa_width(n);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      const pattern t(b, n);
      const log_internal d = decode_logarithmic(t);
      const field_view f = unpack(t);
      const exact_decoded x = exact_decode(t);
      ASSERT_EQ(d.special, x.special);
      if (d.special != special_flag::finite) continue;
      ASSERT_EQ(d.lbar, int128{f.characteristic} * (int128{1} << k) + static_cast<int128>(f.mantissa));
      ASSERT_EQ(d.characteristic(), f.characteristic);
      ASSERT_EQ(x.sign, d.sign);
      ASSERT_EQ(x.lbar, (exact_lbar{mpz_from(d.lbar), k}));
    }
  }
}

TEST(DecodeLinear, ExponentIdentity) {
  for (int n = 2; n <= 14; ++n) {
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      const pattern t(b, n);
      if (t.special() != special_flag::finite) continue;
      const field_view f = unpack(t);
      const lin_internal d = decode_linear(t);
      ASSERT_EQ(d.exponent, f.sign ? -f.characteristic - 1 : f.characteristic);
      ASSERT_EQ(d.fraction, f.mantissa);
    }
  }
}

TEST(Decode, WidestPatterns) {
  // largest finite 64-bit takum: c = 254, all 52 mantissa bits set
  const pattern top(0x7FFFFFFFFFFFFFFFull, 64);
  const log_internal d = decode_logarithmic(top);
  EXPECT_EQ(d.characteristic(), 254);
  EXPECT_EQ(d.mantissa(), low_mask(52) << 7);
  EXPECT_EQ(exact_decode(top).lbar, (exact_lbar{mpz_from(d.lbar), 59}));
}

}  // namespace
}  // namespace takum
