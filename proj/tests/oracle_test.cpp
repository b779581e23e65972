#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "takum/decoder.hpp"
#include "takum/encoder.hpp"
#include "takum/oracle.hpp"
#include "takum/pattern.hpp"
#include "reference.hpp"

namespace takum {
namespace {

exact_lbar lbar(long numerator, int fraction_bits) { return {mpz_class(numerator), fraction_bits}; }

TEST(ExactLbar, Examples) {
  const exact_decoded a = exact_decode(pattern(0x3FF, 12));
  EXPECT_FALSE(a.sign);
  EXPECT_EQ(a.lbar, lbar(-1, 7));
  EXPECT_EQ(a.lbar.to_string(), "-1/128");
  EXPECT_EQ(exact_decode(pattern(0x480, 12)).lbar, exact_lbar::from_integer(1));
  EXPECT_EQ(exact_decode(pattern(0x000, 12)).special, special_flag::zero);
  EXPECT_EQ(exact_decode(pattern(0x800, 12)).special, special_flag::nar);
}

TEST(ExactLbar, ArithmeticHelpers) {
  EXPECT_EQ(lbar(-1, 7).floor(), -1);
  EXPECT_EQ(lbar(384, 7).floor(), 3);
  EXPECT_EQ(lbar(256, 7).to_string(), "2");
  EXPECT_EQ(lbar(2, 1), lbar(4, 2));
  EXPECT_LT(lbar(-3, 1), lbar(-1, 0));
  EXPECT_EQ(-lbar(5, 3), lbar(-5, 3));
  EXPECT_EQ(parse_exact_lbar("-1/128"), lbar(-1, 7));
  EXPECT_EQ(parse_exact_lbar("-0.0078125"), lbar(-1, 7));
  EXPECT_EQ(parse_exact_lbar("3"), exact_lbar::from_integer(3));
  EXPECT_THROW(parse_exact_lbar("1/3"), std::invalid_argument);
  EXPECT_THROW(parse_exact_lbar("0.1"), std::invalid_argument);
  EXPECT_THROW(parse_exact_lbar("abc"), std::invalid_argument);
}

TEST(ExactValueDecimal, Examples) {
  EXPECT_EQ(exact_value_decimal(pattern(0x480, 12), 10, mode::logarithmic), "1.648721271");
  EXPECT_EQ(exact_value_decimal(pattern(0x400, 12), 5, mode::logarithmic), "1.0000");
  EXPECT_EQ(exact_value_decimal(pattern(0x400, 12), 5, mode::linear), "1.0000");
  EXPECT_EQ(exact_value_decimal(pattern(0xBFF, 12), 8, mode::linear), "-1.0078125");
  EXPECT_EQ(exact_value_decimal(pattern(0x3FF, 12), 8, mode::linear), "0.99609375");
  EXPECT_EQ(exact_value_decimal(pattern(0x800, 12), 8, mode::linear), "NaR");
  EXPECT_EQ(exact_value_decimal(pattern(0x000, 12), 8, mode::logarithmic), "0");
  // -1 in both modes
  EXPECT_EQ(exact_value_decimal(pattern(0xC00, 12), 3, mode::logarithmic), "-1.00");
}

TEST(ExactValueDecimal, AgreesWithDoublePrecisionWherePossible) {
  for (std::uint64_t b = 1; b < 4096; b += 7) {
    const pattern t(b, 12);
    if (t.is_nar()) continue;
    const exact_decoded d = exact_decode(t);
    const double l = (d.sign ? -1.0 : 1.0) * d.lbar.to_rational().get_d();
    const double expected = (d.sign ? -1.0 : 1.0) * std::exp(l / 2);
    const double got = std::stod(exact_value_decimal(t, 17, mode::logarithmic));
    ASSERT_NEAR(got / expected, 1.0, 1e-13) << t.to_hex();
    ASSERT_EQ(std::stod(exact_value_decimal(t, 40, mode::linear)), exact_linear_value(t).get_d());
  }
}

TEST(NearestFromLbar, Examples) {
  EXPECT_EQ(nearest_from_lbar(false, exact_lbar::from_integer(1), 12), pattern(0x480, 12));
  EXPECT_EQ(nearest_from_lbar(false, lbar(3 * 128 + 6, 7), 12), pattern(0x502, 12));
  EXPECT_EQ(nearest_from_lbar(false, lbar(-255 * 128 + 1, 7), 12), pattern(0x001, 12));
  EXPECT_EQ(nearest_from_lbar(false, lbar(-255 * 128 + 64, 7), 12), pattern(0x000, 12));
  EXPECT_EQ(nearest_from_lbar(true, lbar(-255 * 128 + 64, 7), 12), pattern(0x800, 12));
  EXPECT_EQ(nearest_from_lbar(false, lbar(255 * 128 - 1, 7), 12), pattern(0x7FF, 12));
  EXPECT_THROW(nearest_from_lbar(false, exact_lbar::from_integer(255), 12), std::out_of_range);
}

TEST(NearestFromLbar, ExactlyRepresentableValuesAreFixedPoints) {
  for (int n = 2; n <= 14; ++n) {
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      const pattern t(b, n);
      if (t.special() != special_flag::finite) continue;
      const exact_decoded d = exact_decode(t);
      ASSERT_EQ(nearest_from_lbar(d.sign, d.lbar, n), t) << t.to_hex() << " n=" << n;
    }
  }
}

TEST(NearestFromLbar, AgreesWithPostencodeExhaustively) {
  for (int n = 5; n <= 12; ++n) {
    const int k = mantissa_width(n);
    for (int s = 0; s <= 1; ++s) {
      for (int c = -255; c <= 254; ++c) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
          const exact_lbar x{mpz_from(int128{c} * (int128{1} << k) + m), k};
          ASSERT_EQ(postencode({s != 0, c, m, false, false}, n), nearest_from_lbar(s != 0, x, n))
              << "n=" << n << " s=" << s << " c=" << c << " m=" << m;
        }
      }
    }
  }
}

TEST(NearestFromLbar, HandlesInputsFinerThanTheDatapath) {
  // 1 + 2^-70 is just above an exact pattern at every width
  const exact_lbar x{mpz_class(1) * (mpz_class(1) << 70) + 1, 70};
  EXPECT_EQ(nearest_from_lbar(false, x, 12), pattern(0x480, 12));
  EXPECT_EQ(nearest_from_lbar(false, x, 64), pattern(0x4800000000000000ull, 64));
}

TEST(NearestFromReal, Examples) {
  EXPECT_EQ(nearest_from_real("1.0", 12, mode::logarithmic).result, pattern(0x400, 12));
  EXPECT_EQ(nearest_from_real("1.6487212707", 12, mode::logarithmic).result, pattern(0x480, 12));
  EXPECT_EQ(nearest_from_real("0", 12, mode::logarithmic).result, pattern(0x000, 12));
  EXPECT_EQ(nearest_from_real("-0.0", 7, mode::linear).result, pattern(0x00, 7));
  EXPECT_EQ(nearest_from_real("NaR", 12, mode::linear).result, pattern(0x800, 12));
  EXPECT_EQ(nearest_from_real("-1", 12, mode::logarithmic).result, pattern(0xC00, 12));
  EXPECT_EQ(nearest_from_real("0.99609375", 12, mode::linear).result, pattern(0x3FF, 12));
  EXPECT_EQ(nearest_from_real("-1.0078125", 12, mode::linear).result, pattern(0xBFF, 12));
  EXPECT_THROW(nearest_from_real("1.2.3", 12, mode::linear), std::invalid_argument);
  EXPECT_THROW(nearest_from_real("", 12, mode::linear), std::invalid_argument);
}

TEST(NearestFromReal, SaturatesOutOfRange) {
  const real_rounding huge = nearest_from_real("1e300", 12, mode::logarithmic);
  EXPECT_TRUE(huge.saturated);
  EXPECT_EQ(huge.result, pattern(0x7FF, 12));
  const real_rounding tiny = nearest_from_real("-1e-300", 12, mode::linear);
  EXPECT_TRUE(tiny.saturated);
  EXPECT_EQ(tiny.result, pattern(0xFFF, 12));
  const real_rounding giant = nearest_from_real("-1e100000", 16, mode::linear);
  EXPECT_TRUE(giant.saturated);
  EXPECT_EQ(giant.result, pattern(0x8001, 16));
  EXPECT_FALSE(nearest_from_real("2", 12, mode::linear).saturated);
}

TEST(NearestFromReal, DecimalRoundtripUpToTenBits) {
  for (int n = 2; n <= 10; ++n) {
    for (mode m : {mode::logarithmic, mode::linear}) {
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        const pattern t(b, n);
        const std::string text = exact_value_decimal(t, 30, m);
        ASSERT_EQ(nearest_from_real(text, n, m).result, t) << text << " n=" << n;
      }
    }
  }
}

TEST(PrecisionSchedule, StartingPrecisionDoesNotChangeResults) {
  const precision_schedule low{64, 4096};
  const precision_schedule high{512, 4096};
  for (std::uint64_t b = 0; b < 4096; b += 3) {
    const pattern t(b, 12);
    for (mode m : {mode::logarithmic, mode::linear}) {
      const std::string a = exact_value_decimal(t, 25, m, low);
      ASSERT_EQ(a, exact_value_decimal(t, 25, m, high));
      const std::string probe = exact_value_decimal(t, 6, m, low);
      ASSERT_EQ(nearest_from_real(probe, 12, m, low).result, nearest_from_real(probe, 12, m, high).result)
          << probe;
    }
  }
}

using reference::brute_force_deviations;

void expect_same_inputs(const std::vector<deviation_record>& got, const std::vector<deviation_record>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].sign, want[i].sign);
    EXPECT_EQ(got[i].characteristic, want[i].characteristic);
    EXPECT_EQ(got[i].mantissa, want[i].mantissa);
    EXPECT_EQ(got[i].faithful_output, want[i].faithful_output);
    EXPECT_EQ(got[i].value_nearest_output, want[i].value_nearest_output);
  }
}

TEST(DifferentialCheck, TwelveBitsLogHasOnlyTheTiesAboveZero) {
  const auto got = differential_check(12, mode::logarithmic);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_FALSE(got[0].sign);
  EXPECT_EQ(got[0].characteristic, -255);
  EXPECT_EQ(got[0].mantissa, 0x40u);
  EXPECT_EQ(got[0].faithful_output, pattern(0x000, 12));
  EXPECT_EQ(got[0].value_nearest_output, pattern(0x001, 12));
  EXPECT_TRUE(got[1].sign);
  EXPECT_EQ(got[1].faithful_output, pattern(0x800, 12));
  EXPECT_EQ(got[1].value_nearest_output, pattern(0x801, 12));
  expect_same_inputs(got, brute_force_deviations(12, mode::logarithmic));
}

TEST(DifferentialCheck, TwelveBitsLinearMatchesLog) {
  const auto lin = differential_check(12, mode::linear);
  expect_same_inputs(lin, differential_check(12, mode::logarithmic));
  expect_same_inputs(lin, brute_force_deviations(12, mode::linear));
}

TEST(DifferentialCheck, SmallWidthsMatchBruteForce) {
  for (int n : {2, 3, 4, 5, 8}) {
    for (mode m : {mode::logarithmic, mode::linear}) {
      SCOPED_TRACE("n=" + std::to_string(n));
      expect_same_inputs(differential_check(n, m), brute_force_deviations(n, m));
    }
  }
}

TEST(DifferentialCheck, ReportIsStable) {
  const std::string a = format_report(differential_check(12, mode::logarithmic));
  const std::string b = format_report(differential_check(12, mode::logarithmic));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("deviations: 2\n", 0), 0u);
  EXPECT_THROW(differential_check(17, mode::logarithmic), std::invalid_argument);
}

}  // namespace
}  // namespace takum
