#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "takum/oracle.hpp"

namespace takum {

namespace {

class mpfr_number {
 public:
  explicit mpfr_number(mpfr_prec_t precision) { mpfr_init2(value_, precision); }
  ~mpfr_number() { mpfr_clear(value_); }
  mpfr_number(const mpfr_number&) = delete;
  mpfr_number& operator=(const mpfr_number&) = delete;

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

 private:
  mpfr_t value_;
};

struct decimal_digits {
  std::string digits;  // significant digits, no sign
  long exponent = 0;   // value = 0.d1d2... * 10^exponent

  friend bool operator==(const decimal_digits&, const decimal_digits&) = default;
};

decimal_digits round_to_digits(mpfr_srcptr magnitude, int digits) {
  mpfr_exp_t exp = 0;
  char* raw = mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(digits), magnitude, MPFR_RNDN);
  if (raw == nullptr) throw std::runtime_error("mpfr_get_str failed");
  decimal_digits out{raw, static_cast<long>(exp)};
  mpfr_free_str(raw);
  return out;
}

std::string layout(bool negative, const decimal_digits& d) {
  const long e10 = d.exponent - 1;
  const long count = static_cast<long>(d.digits.size());
  std::string out = negative ? "-" : "";
  if (e10 >= -6 && e10 < count) {
    if (e10 >= 0) {
      out += d.digits.substr(0, static_cast<std::size_t>(e10 + 1));
      if (e10 + 1 < count) out += "." + d.digits.substr(static_cast<std::size_t>(e10 + 1));
    } else {
      out += "0." + std::string(static_cast<std::size_t>(-e10 - 1), '0') + d.digits;
    }
    return out;
  }
  out += d.digits.substr(0, 1);
  if (count > 1) out += "." + d.digits.substr(1);
  out += e10 < 0 ? "e-" : "e+";
  const std::string mag = std::to_string(e10 < 0 ? -e10 : e10);
  out += (mag.size() < 2 ? "0" : "") + mag;
  return out;
}

void set_dyadic(mpfr_ptr target, const exact_lbar& x, long extra_shift, mpfr_rnd_t rnd) {
  mpfr_set_z_2exp(target, x.numerator.get_mpz_t(), -(x.fraction_bits + extra_shift), rnd);
}

exact_lbar to_exact(mpfr_srcptr v) {
  if (mpfr_zero_p(v)) return {mpz_class(0), 0};
  mpz_class m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
  if (e >= 0) {
    m <<= static_cast<mp_bitcnt_t>(e);
    return {m, 0};
  }
  return {m, static_cast<int>(-e)};
}

struct parsed_decimal {
  bool nar = false;
  bool negative = false;
  mpz_class significand;
  long exponent10 = 0;
};

parsed_decimal parse_decimal(std::string_view text) {
  std::string s(text);
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  parsed_decimal out;
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "nar") {
    out.nar = true;
    return out;
  }
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) out.negative = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool point = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.' && !point) {
      point = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i];
      if (point) ++scale;
    } else {
      throw std::invalid_argument("not a decimal number: " + s);
    }
  }
  if (digits.empty()) throw std::invalid_argument("not a decimal number: " + s);
  long exp = 0;
  if (i < s.size()) {
    const std::string tail = s.substr(i + 1);
    std::size_t used = 0;
    try {
      exp = std::stol(tail, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in decimal number: " + s);
    }
    if (used != tail.size() || tail.empty()) throw std::invalid_argument("bad exponent in decimal number: " + s);
    if (exp > 1'000'000 || exp < -1'000'000) throw std::invalid_argument("exponent too large: " + s);
  }
  out.significand = mpz_class(digits, 10);
  out.exponent10 = exp - scale;
  return out;
}

}  // namespace

std::string exact_value_decimal(pattern t, int digits, mode m, precision_schedule schedule) {
  if (digits < 1) throw std::invalid_argument("digit count must be at least 1");
  const exact_decoded d = exact_decode(t);
  if (d.special == special_flag::nar) return "NaR";
  if (d.special == special_flag::zero) return "0";

  if (m == mode::linear) {
    // dyadic, so MPFR holds it exactly and rounds the decimal correctly
    const mpq_class value = exact_linear_value(t);
    const mpz_class num = abs(value.get_num());
    const mpz_class& den = value.get_den();
    const long den_bits = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
    mpfr_number v(static_cast<mpfr_prec_t>(mpz_sizeinbase(num.get_mpz_t(), 2) + 2));
    mpfr_set_z_2exp(v.get(), num.get_mpz_t(), -den_bits, MPFR_RNDN);
    return layout(value < 0, round_to_digits(v.get(), digits));
  }

  // l = (-1)^S lbar and the magnitude is e^(l / 2)
  const exact_lbar l = d.sign ? -d.lbar : d.lbar;
  const auto exponent_bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(l.numerator.get_mpz_t(), 2) + 2);
  for (int precision = schedule.initial_bits; precision <= schedule.max_bits; precision *= 2) {
    mpfr_number half_l(exponent_bits);
    set_dyadic(half_l.get(), l, 1, MPFR_RNDN);
    mpfr_number lo(precision);
    mpfr_number hi(precision);
    mpfr_exp(lo.get(), half_l.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), half_l.get(), MPFR_RNDU);
    const decimal_digits a = round_to_digits(lo.get(), digits);
    const decimal_digits b = round_to_digits(hi.get(), digits);
    if (a == b) return layout(d.sign, a);
  }
  throw std::runtime_error("decimal conversion did not settle within the precision cap");
}

real_rounding nearest_from_real(std::string_view decimal, int n, mode m, precision_schedule schedule) {
  check_width(n);
  const parsed_decimal x = parse_decimal(decimal);
  if (x.nar) return {pattern::nar(n), false};
  if (x.significand == 0) return {pattern::zero(n), false};

  const bool sign = x.negative;
  const std::uint64_t max_tail = low_mask(n - 1);
  auto tail_pattern = [&](std::uint64_t tail) {
    return pattern((std::uint64_t{sign} << (n - 1)) | tail, n);
  };
  // lbar >= 255 lands on the largest tail, lbar < -255 on the smallest
  // non-reserved one, for either sign
  const real_rounding above{tail_pattern(max_tail), true};
  const real_rounding below{tail_pattern(1), true};

  // decimal magnitude: roughly 10^(digits + exponent10)
  const long magnitude10 =
      static_cast<long>(mpz_sizeinbase(x.significand.get_mpz_t(), 10)) + x.exponent10;
  const bool huge = magnitude10 > 400;
  const bool tiny = magnitude10 < -400;
  if (huge) return sign ? below : above;
  if (tiny) return sign ? above : below;

  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(x.exponent10)));

  if (m == mode::linear) {
    mpq_class mag = x.exponent10 >= 0 ? mpq_class(x.significand * pow10) : mpq_class(x.significand, pow10);
    mag.canonicalize();
    // S = 0: 2^e <= |x| < 2^(e+1); S = 1: 2^e < |x| <= 2^(e+1)
    long e = static_cast<long>(mpz_sizeinbase(mag.get_num().get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(mag.get_den().get_mpz_t(), 2));
    auto power = [](long k) {
      mpz_class p(1);
      p <<= static_cast<unsigned long>(k < 0 ? -k : k);
      return k >= 0 ? mpq_class(p) : mpq_class(mpz_class(1), p);
    };
    auto fits = [&](long k) {
      const mpq_class lo = power(k);
      const mpq_class hi = power(k + 1);
      return sign ? (lo < mag && mag <= hi) : (lo <= mag && mag < hi);
    };
    while (!fits(e)) {
      if (mag < power(e) || (sign && mag == power(e))) --e;
      else ++e;
    }
    if (e > 254) return sign ? below : above;
    if (e < -255) return sign ? above : below;

    const mpq_class scaled = mag / power(e);
    const mpq_class f = sign ? mpq_class(2 - scaled) : mpq_class(scaled - 1);
    const int k = mantissa_width(n);
    mpq_class shifted = f * mpq_class(mpz_class(1) << k);
    mpz_class f_bits = shifted.get_num() / shifted.get_den();
    const bool sticky = mpq_class(f_bits) != shifted;
    const long c = sign ? -e - 1 : e;
    // one extra bit below the w - 5 fraction bits carries the sticky OR
    exact_lbar coordinate{((mpz_class(c) << k) + f_bits) * 2 + (sticky ? 1 : 0), k + 1};
    return {nearest_from_lbar(sign, coordinate, n), false};
  }

  for (int precision = schedule.initial_bits; precision <= schedule.max_bits; precision *= 2) {
    mpfr_number lo(precision);
    mpfr_number hi(precision);
    mpfr_set_z(lo.get(), x.significand.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi.get(), x.significand.get_mpz_t(), MPFR_RNDU);
    if (x.exponent10 >= 0) {
      mpfr_mul_z(lo.get(), lo.get(), pow10.get_mpz_t(), MPFR_RNDD);
      mpfr_mul_z(hi.get(), hi.get(), pow10.get_mpz_t(), MPFR_RNDU);
    } else {
      mpfr_div_z(lo.get(), lo.get(), pow10.get_mpz_t(), MPFR_RNDD);
      mpfr_div_z(hi.get(), hi.get(), pow10.get_mpz_t(), MPFR_RNDU);
    }
    // l = 2 ln|x|, lbar = (-1)^S l
    mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
    mpfr_mul_2ui(lo.get(), lo.get(), 1, MPFR_RNDN);
    mpfr_mul_2ui(hi.get(), hi.get(), 1, MPFR_RNDN);
    exact_lbar lbar_lo = to_exact(lo.get());
    exact_lbar lbar_hi = to_exact(hi.get());
    if (sign) {
      std::swap(lbar_lo, lbar_hi);
      lbar_lo = -lbar_lo;
      lbar_hi = -lbar_hi;
    }
    auto classify = [&](const exact_lbar& v) {
      if (v >= exact_lbar::from_integer(255)) return above;
      if (v < exact_lbar::from_integer(-255)) return below;
      return real_rounding{nearest_from_lbar(sign, v, n), false};
    };
    const real_rounding a = classify(lbar_lo);
    const real_rounding b = classify(lbar_hi);
    if (a.result == b.result && a.saturated == b.saturated) return a;
  }
  throw std::runtime_error("real-to-takum rounding did not settle within the precision cap");
}

}  // namespace takum
