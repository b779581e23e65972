#include "takum/selftest.hpp"

#include <ostream>
#include <random>

#include "takum/decoder.hpp"
#include "takum/encoder.hpp"
#include "takum/oracle.hpp"
#include "takum/pattern.hpp"

namespace takum {

namespace {

constexpr std::uint64_t random_samples = 200'000;

template <typename Body>
selftest_result over_patterns(const std::string& name, int n, Body body) {
  selftest_result res{name, 0, 0};
  auto visit = [&](std::uint64_t bits) {
    ++res.cases;
    if (!body(pattern(bits, n))) ++res.failures;
  };
  if (n <= 16) {
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) visit(b);
  } else {
    std::mt19937_64 rng(0x7A6B756D);
    for (std::uint64_t i = 0; i < random_samples; ++i) visit(rng() & low_mask(n));
  }
  return res;
}

template <typename Body>
selftest_result over_encoder_inputs(const std::string& name, int n, Body body) {
  selftest_result res{name, 0, 0};
  const int k = mantissa_width(n);
  auto visit = [&](bool s, int c, std::uint64_t m) {
    ++res.cases;
    if (!body(s, c, m)) ++res.failures;
  };
  if (n <= 12) {
    for (int s = 0; s <= 1; ++s)
      for (int c = -255; c <= 254; ++c)
        for (std::uint64_t m = 0; m <= low_mask(k); ++m) visit(s == 1, c, m);
  } else {
    std::mt19937_64 rng(0x656E63);
    for (std::uint64_t i = 0; i < random_samples; ++i) {
      visit(rng() & 1, -255 + static_cast<int>(rng() % 510), rng() & low_mask(k));
    }
  }
  return res;
}

}  // namespace

std::vector<selftest_result> run_selftest(int n) {
  check_width(n);
  std::vector<selftest_result> out;
  const int k = mantissa_width(n);

  out.push_back(over_patterns("pack/unpack roundtrip", n, [](pattern t) { return pack(unpack(t)) == t; }));

  out.push_back(over_patterns("logarithmic encode(decode(T)) == T", n, [n](pattern t) {
    return encode_logarithmic(decode_logarithmic(t), n) == t;
  }));
  out.push_back(over_patterns("linear encode(decode(T)) == T", n, [n](pattern t) {
    return encode_linear(decode_linear(t), n) == t;
  }));

  out.push_back(over_patterns("decoder lbar == oracle lbar", n, [k](pattern t) {
    const log_internal d = decode_logarithmic(t);
    const exact_decoded x = exact_decode(t);
    if (d.special != x.special) return false;
    return d.special != special_flag::finite ||
           (d.sign == x.sign && exact_lbar{mpz_from(d.lbar), k} == x.lbar);
  }));

  out.push_back(over_patterns("linear exponent identity", n, [](pattern t) {
    if (t.special() != special_flag::finite) return true;
    const int c = unpack(t).characteristic;
    const lin_internal d = decode_linear(t);
    return d.exponent == (d.sign ? -c - 1 : c);
  }));

  out.push_back(over_patterns("negation preserves l and flips S", n, [](pattern t) {
    const pattern neg = negate(t);
    if (t.special() != special_flag::finite) return neg == t;
    const exact_decoded a = exact_decode(t);
    const exact_decoded b = exact_decode(neg);
    return a.sign != b.sign && a.lbar == -b.lbar;
  }));

  if (n >= 5) {
    out.push_back(over_encoder_inputs("postencode == nearest_from_lbar", n,
                                      [n, k](bool s, int c, std::uint64_t m) {
      const exact_lbar x{(mpz_class(c) << k) + mpz_class(static_cast<unsigned long>(m)), k};
      return postencode({s, c, m, false, false}, n) == nearest_from_lbar(s, x, n);
    }));
  }

  out.push_back(over_encoder_inputs("predictor flags vs candidates", n, [n, k](bool, int c, std::uint64_t m) {
    // the exact code string below the sign bit: D R C M
    const bool d = c >= 0;
    const int magnitude = d ? c + 1 : -c;
    int r = 0;
    while ((2 << r) <= magnitude) ++r;
    const unsigned c_bits = static_cast<unsigned>(d ? c - (1 << r) + 1 : c + (2 << r) - 1);
    const unsigned head = (unsigned{d} << (3 + r)) | (static_cast<unsigned>(d ? r : 7 - r) << r) | c_bits;
    const uint128 code = (uint128{head} << k) | m;
    const int dropped = 4 + r + k - (n - 1);
    const std::uint64_t down = static_cast<std::uint64_t>(code >> dropped);
    const bool round_bit = dropped > 0 && ((code >> (dropped - 1)) & 1);
    const bool at_floor = down == 0 && (n < 12 || !round_bit);
    const bool at_ceiling = down == low_mask(n - 1) && (n < 12 || round_bit);
    const predictor_flags f = predict_flags(c, m, n);
    return f.underflow_on_down == at_floor && f.overflow_on_up == at_ceiling;
  }));
  return out;
}

bool print_selftest(std::ostream& out, const std::vector<selftest_result>& results) {
  bool all = true;
  for (const auto& r : results) {
    const bool pass = r.failures == 0;
    all = all && pass;
    out << (pass ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases, " << r.failures
        << " failures)\n";
  }
  out << (all ? "selftest passed\n" : "selftest FAILED\n");
  return all;
}

}  // namespace takum
