#include <sstream>
#include <stdexcept>

#include "takum/encoder.hpp"
#include "takum/oracle.hpp"

namespace takum {

namespace {

void check_lbar_range(const exact_lbar& x) {
  if (x < exact_lbar::from_integer(-255) || x >= exact_lbar::from_integer(255)) {
    throw std::out_of_range("barred logarithmic value " + x.to_string() + " outside [-255, 255)");
  }
}

// Saturation and tie-breaking shared by both reference roundings. `below_mid`
// etc. describe where the input sits between the candidates down and down+1.
std::uint64_t choose_tail(std::uint64_t down, int midpoint_cmp, int n) {
  const std::uint64_t max_tail = low_mask(n - 1);
  if (down == max_tail) return down;
  if (down == 0) {
    // below 12 bits the rule fires on the characteristic alone; from 12 bits
    // on it also inspects the most significant rounding bit
    if (n < 12 || midpoint_cmp != 0) return 1;
    return 0;
  }
  if (midpoint_cmp < 0) return down;
  if (midpoint_cmp > 0) return down + 1;
  return (down & 1) ? down + 1 : down;
}

pattern with_sign(bool sign, std::uint64_t tail, int n) {
  return {(std::uint64_t{sign} << (n - 1)) | tail, n};
}

// lbar of the non-negative pattern with the given tail, as a numerator over
// 2^(w-5). Tail 0 reads as c = -255, m = 0.
int128 tail_lbar(std::uint64_t tail, int n) {
  const int w = n < 12 ? 12 : n;
  const std::uint64_t code = n < 12 ? tail << (12 - n) : tail;
  int pos = w - 1;  // the sign bit is zero
  auto take = [&](int count) {
    pos -= count;
    return (code >> pos) & low_mask(count);
  };
  const bool d = take(1) != 0;
  const int r_bits = static_cast<int>(take(3));
  const int r = d ? r_bits : 7 - r_bits;
  const int128 c_bits = static_cast<int128>(take(r));
  const int128 c = d ? (int128{1} << r) - 1 + c_bits : -(int128{1} << (r + 1)) + 1 + c_bits;
  const int p = pos;
  const int128 m = static_cast<int128>(take(p));
  return c * (int128{1} << (w - 5)) + m * (int128{1} << (w - 5 - p));
}

// Signed comparisons between an exact input and lbar values held at 2^-k.
class lbar_comparator {
 public:
  lbar_comparator(const exact_lbar& x, int k) : k_(k) {
    scale_ = std::max(k, x.fraction_bits);
    fast_ = scale_ <= 110;
    mpz_class scaled = x.numerator;
    scaled <<= scale_ - x.fraction_bits;
    if (fast_) {
      const long high = mpz_class(scaled >> 62).get_si();
      const mpz_class low_part = scaled - (mpz_class(high) << 62);
      x_fast_ = (int128{high} << 62) + static_cast<int128>(low_part.get_ui());
    }
    x_slow_ = scaled;
  }

  int compare(int128 v) const {
    if (fast_) {
      const int128 s = v * (int128{1} << (scale_ - k_));
      return x_fast_ < s ? -1 : x_fast_ > s ? 1 : 0;
    }
    mpz_class s = mpz_from(v);
    s <<= scale_ - k_;
    return sgn(mpz_class(x_slow_ - s));
  }

  int compare_midpoint(int128 a, int128 b) const {
    if (fast_) {
      const int128 lhs = x_fast_ * 2;
      const int128 rhs = (a + b) * (int128{1} << (scale_ - k_));
      return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
    }
    mpz_class s = mpz_from(a + b);
    s <<= scale_ - k_;
    return sgn(mpz_class(2 * x_slow_ - s));
  }

 private:
  int k_;
  int scale_;
  bool fast_;
  int128 x_fast_ = 0;
  mpz_class x_slow_;
};

// Largest tail whose lbar does not exceed x.
std::uint64_t bracket_down(const lbar_comparator& cmp, int n) {
  std::uint64_t lo = 0;
  std::uint64_t hi = low_mask(n - 1);
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (cmp.compare(tail_lbar(mid, n)) >= 0) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

}  // namespace

pattern round_in_pattern_space(bool sign, const exact_lbar& x, int n) {
  check_width(n);
  check_lbar_range(x);
  const long c = x.floor();
  mpz_class frac = x.numerator - (mpz_class(c) << x.fraction_bits);

  const bool d = c >= 0;
  const long magnitude = d ? c + 1 : -c;  // in [2^r, 2^(r+1))
  int r = 0;
  while ((2L << r) <= magnitude) ++r;
  const long c_bits = d ? c - (1L << r) + 1 : c + (2L << r) - 1;
  const long r_bits = d ? r : 7 - r;
  const long head = (long{d} << (3 + r)) | (r_bits << r) | c_bits;

  // the code string below the sign bit, as an exact binary fraction
  mpz_class code(head);
  code <<= x.fraction_bits;
  code += frac;
  const int code_bits = 4 + r + x.fraction_bits;
  const int tail_bits = n - 1;

  std::uint64_t down = 0;
  int midpoint_cmp = -1;
  if (code_bits >= tail_bits) {
    const int dropped = code_bits - tail_bits;
    const mpz_class q = code >> dropped;
    down = q.get_ui();
    const mpz_class rem = code - (q << dropped);
    if (dropped == 0) {
      midpoint_cmp = -1;
    } else {
      const mpz_class half = mpz_class(1) << (dropped - 1);
      midpoint_cmp = cmp(rem, half);
      midpoint_cmp = midpoint_cmp < 0 ? -1 : midpoint_cmp > 0 ? 1 : 0;
    }
  } else {
    down = mpz_class(code << (tail_bits - code_bits)).get_ui();
  }
  return with_sign(sign, choose_tail(down, midpoint_cmp, n), n);
}

pattern nearest_from_lbar(bool sign, const exact_lbar& x, int n) {
  check_width(n);
  check_lbar_range(x);
  if (n < 5) return round_in_pattern_space(sign, x, n);

  const lbar_comparator cmp(x, mantissa_width(n));
  const std::uint64_t down = bracket_down(cmp, n);
  if (down == low_mask(n - 1)) return with_sign(sign, down, n);
  const int midpoint_cmp = cmp.compare_midpoint(tail_lbar(down, n), tail_lbar(down + 1, n));
  return with_sign(sign, choose_tail(down, midpoint_cmp, n), n);
}

namespace {

// value * 2^(k + 257) for the linear takum with sign S and coordinate c + f
mpz_class scaled_linear_value(bool sign, int128 coordinate, int k) {
  const long c = static_cast<long>(coordinate >> k);
  const mpz_class f = mpz_from(coordinate & ((int128{1} << k) - 1));
  const long e = sign ? -c - 1 : c;
  mpz_class significand = sign ? mpz_class(f - (mpz_class(2) << k)) : mpz_class(f + (mpz_class(1) << k));
  significand <<= static_cast<unsigned long>(e + 257);
  return significand;
}

}  // namespace

std::vector<deviation_record> differential_check(int n, mode m) {
  check_width(n);
  if (n > 16) throw std::invalid_argument("differential check enumerates inputs only for n <= 16");
  const int k = mantissa_width(n);
  const std::uint64_t max_tail = low_mask(n - 1);

  std::vector<deviation_record> out;
  for (int s = 0; s <= 1; ++s) {
    const bool sign = s == 1;
    for (int c = -255; c <= 254; ++c) {
      for (std::uint64_t mant = 0; mant <= low_mask(k); ++mant) {
        const pattern faithful = postencode({sign, c, mant, false, false}, n);

        const int128 coordinate = (int128{c} << k) + static_cast<int128>(mant);
        const exact_lbar x{mpz_from(coordinate), k};
        const lbar_comparator cmp(x, k);
        const std::uint64_t down = bracket_down(cmp, n);

        std::uint64_t chosen = 0;
        if (down == 0) {
          chosen = 1;
        } else if (down == max_tail) {
          chosen = down;
        } else {
          const int128 lo = tail_lbar(down, n);
          const int128 hi = tail_lbar(down + 1, n);
          int mid = 0;
          if (m == mode::logarithmic) {
            mid = cmp.compare_midpoint(lo, hi);
          } else {
            const mpz_class twice = 2 * scaled_linear_value(sign, coordinate, k);
            const mpz_class sum = scaled_linear_value(sign, lo, k) + scaled_linear_value(sign, hi, k);
            mid = sgn(mpz_class(twice - sum));
          }
          chosen = mid < 0 ? down : mid > 0 ? down + 1 : ((down & 1) ? down + 1 : down);
        }
        const pattern nearest = with_sign(sign, chosen, n);
        if (nearest == faithful) continue;

        deviation_record rec;
        rec.n = n;
        rec.mode = m;
        rec.sign = sign;
        rec.characteristic = c;
        rec.mantissa = mant;
        rec.faithful_output = faithful;
        rec.value_nearest_output = nearest;
        if (faithful.tail() == 0) {
          rec.reason = faithful.is_nar() ? "tie above the reserved tail rounds to even onto NaR"
                                         : "tie above the reserved tail rounds to even onto zero";
        } else {
          rec.reason = "encoder result differs from nearest representable value";
        }
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::string format_report(const std::vector<deviation_record>& records) {
  std::ostringstream os;
  os << "deviations: " << records.size() << '\n';
  for (const auto& r : records) {
    const int k = mantissa_width(r.n);
    std::ostringstream mant;
    mant << std::hex << std::uppercase << r.mantissa;
    std::string mant_hex = mant.str();
    const std::size_t digits = static_cast<std::size_t>((k + 3) / 4);
    if (mant_hex.size() < digits) mant_hex.insert(0, digits - mant_hex.size(), '0');
    os << "n=" << r.n << " mode=" << (r.mode == mode::logarithmic ? "log" : "lin")
       << " S=" << r.sign << " c=" << r.characteristic << " M=" << mant_hex
       << " faithful=" << r.faithful_output.to_hex()
       << " nearest=" << r.value_nearest_output.to_hex() << " reason=" << r.reason << '\n';
  }
  return os.str();
}

}  // namespace takum
