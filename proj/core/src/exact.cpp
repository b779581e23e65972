#include <cctype>
#include <stdexcept>
#include <string>

#include "takum/oracle.hpp"

namespace takum {

mpz_class mpz_from(int128 value) {
  const bool negative = value < 0;
  const uint128 magnitude = negative ? uint128(0) - static_cast<uint128>(value) : static_cast<uint128>(value);
  mpz_class out(static_cast<unsigned long>(magnitude >> 64));
  out <<= 64;
  out += static_cast<unsigned long>(magnitude & 0xFFFFFFFFFFFFFFFFull);
  return negative ? mpz_class(-out) : out;
}

mpq_class exact_lbar::to_rational() const {
  mpz_class den(1);
  den <<= fraction_bits;
  mpq_class q(numerator, den);
  q.canonicalize();
  return q;
}

long exact_lbar::floor() const {
  mpz_class q;
  mpz_fdiv_q_2exp(q.get_mpz_t(), numerator.get_mpz_t(), static_cast<mp_bitcnt_t>(fraction_bits));
  return q.get_si();
}

std::string exact_lbar::to_string() const {
  const mpq_class q = to_rational();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::strong_ordering operator<=>(const exact_lbar& a, const exact_lbar& b) {
  mpz_class lhs = a.numerator;
  mpz_class rhs = b.numerator;
  if (a.fraction_bits < b.fraction_bits) lhs <<= b.fraction_bits - a.fraction_bits;
  else rhs <<= a.fraction_bits - b.fraction_bits;
  const int c = cmp(lhs, rhs);
  return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

exact_lbar operator-(const exact_lbar& x) { return {-x.numerator, x.fraction_bits}; }

exact_lbar parse_exact_lbar(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  auto parse_int = [&](const std::string& part) {
    mpz_class v;
    if (part.empty() || v.set_str(part[0] == '+' ? part.substr(1) : part, 10) != 0) {
      throw std::invalid_argument("not a number: " + s);
    }
    return v;
  };
  if (slash != std::string::npos) {
    const mpz_class num = parse_int(s.substr(0, slash));
    const mpz_class den = parse_int(s.substr(slash + 1));
    if (den <= 0 || mpz_popcount(den.get_mpz_t()) != 1) {
      throw std::invalid_argument("denominator must be a positive power of two: " + s);
    }
    return {num, static_cast<int>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1};
  }
  // terminating decimal: digits with an optional point
  std::string digits;
  int scale = 0;
  bool seen_point = false;
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
  for (; i < s.size(); ++i) {
    if (s[i] == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i];
      if (seen_point) ++scale;
    } else {
      throw std::invalid_argument("not a number: " + s);
    }
  }
  if (digits.empty()) throw std::invalid_argument("not a number: " + s);
  mpz_class value(digits, 10);
  mpz_class five;
  mpz_ui_pow_ui(five.get_mpz_t(), 5, static_cast<unsigned long>(scale));
  if (!mpz_divisible_p(value.get_mpz_t(), five.get_mpz_t())) {
    throw std::invalid_argument("value is not a dyadic rational: " + s);
  }
  value /= five;
  return {negative ? mpz_class(-value) : value, scale};
}

namespace {

// Reads a code word MSB first, as the format definition lists its fields.
class field_reader {
 public:
  field_reader(std::uint64_t bits, int width) : bits_(bits), remaining_(width) {}

  unsigned bit() { return static_cast<unsigned>((bits_ >> --remaining_) & 1); }
  std::uint64_t take(int count) {
    std::uint64_t v = 0;
    for (int i = 0; i < count; ++i) v = (v << 1) | bit();
    return v;
  }
  int remaining() const { return remaining_; }

 private:
  std::uint64_t bits_;
  int remaining_;
};

}  // namespace

exact_decoded exact_decode(pattern t) {
  const int n = t.width();
  const int w = n < 12 ? 12 : n;
  field_reader reader(n < 12 ? t.bits() << (12 - n) : t.bits(), w);

  exact_decoded out;
  out.sign = reader.bit();
  const unsigned d = reader.bit();
  const unsigned r_bits = static_cast<unsigned>(reader.take(3));
  const int r = static_cast<int>(d == 1 ? r_bits : 7 - r_bits);
  const long c_bits = static_cast<long>(reader.take(r));
  const long c = d == 1 ? (1L << r) - 1 + c_bits : -(1L << (r + 1)) + 1 + c_bits;
  const int p = reader.remaining();
  mpz_class m(static_cast<unsigned long>(reader.take(p)));

  if (d == 0 && r_bits == 0 && c_bits == 0 && m == 0) {
    out.special = out.sign ? special_flag::nar : special_flag::zero;
  }
  out.lbar.numerator = mpz_class(c);
  out.lbar.numerator <<= p;
  out.lbar.numerator += m;
  out.lbar.fraction_bits = p;
  return out;
}

mpq_class exact_linear_value(pattern t) {
  const exact_decoded d = exact_decode(t);
  if (d.special != special_flag::finite) throw std::invalid_argument("zero and NaR have no linear value");
  const long c = d.lbar.floor();
  const mpq_class f = d.lbar.to_rational() - c;
  const long e = d.sign ? -(c + 1) : c;
  mpq_class value = (d.sign ? mpq_class(-2) : mpq_class(1)) + f;
  mpz_class scale(1);
  scale <<= static_cast<unsigned long>(e < 0 ? -e : e);
  if (e >= 0) value *= scale;
  else value /= scale;
  return value;
}

}  // namespace takum
