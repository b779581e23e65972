#include "takum/vectors.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "takum/decoder.hpp"
#include "takum/encoder.hpp"
#include "takum/oracle.hpp"

namespace takum {

namespace {

constexpr std::uint64_t saturated_size = std::numeric_limits<std::uint64_t>::max();

int hex_digits(int bits) { return (bits + 3) / 4; }

std::string hex(std::uint64_t value, int digits) {
  static constexpr char table[] = "0123456789ABCDEF";
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int i = digits - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = table[value & 0xF];
    value >>= 4;
  }
  return out;
}

char flag_char(special_flag f, bool decode) {
  switch (f) {
    case special_flag::zero: return 'Z';
    case special_flag::nar: return decode ? 'R' : 'N';
    case special_flag::finite: break;
  }
  return decode ? 'F' : '-';
}

int log_characteristic(const vector_record& r, bool linear) {
  return linear && r.sign ? ~r.characteristic : r.characteristic;
}

vector_record expected_decode(std::uint64_t bits, int n, bool linear) {
  const predecoded pre = predecode(pattern(bits, n), linear);
  return {bits, pre.sign, pre.characteristic_or_exponent, pre.mantissa, pre.special};
}

std::uint64_t expected_encode(const vector_record& in, int n, bool linear) {
  encoder_input input{in.sign, log_characteristic(in, linear), in.mantissa,
                      in.flag == special_flag::zero, in.flag == special_flag::nar};
  if (input.is_zero || input.is_nar) input.characteristic = 0;
  return postencode(input, n).bits();
}

void cross_check(const vector_record& r, int n, vector_kind kind) {
  const bool linear = is_linear(kind);
  const int k = mantissa_width(n);
  if (is_decode(kind)) {
    const exact_decoded d = exact_decode(pattern(r.pattern, n));
    bool agree = d.special == r.flag;
    if (agree && d.special == special_flag::finite) {
      const int c = log_characteristic(r, linear);
      agree = d.sign == r.sign &&
              d.lbar == exact_lbar{(mpz_class(c) << k) + mpz_class(static_cast<unsigned long>(r.mantissa)), k};
    }
    if (!agree) throw std::logic_error("decoder and oracle disagree on " + pattern(r.pattern, n).to_hex());
    return;
  }
  if (r.flag != special_flag::finite) return;
  const int c = log_characteristic(r, linear);
  const exact_lbar x{(mpz_class(c) << k) + mpz_class(static_cast<unsigned long>(r.mantissa)), k};
  if (nearest_from_lbar(r.sign, x, n).bits() != r.pattern) {
    throw std::logic_error("encoder and oracle disagree on input S=" + std::to_string(r.sign) +
                           " c=" + std::to_string(c));
  }
}

}  // namespace

std::string to_string(vector_kind kind) {
  switch (kind) {
    case vector_kind::decode_log: return "dlog";
    case vector_kind::decode_lin: return "dlin";
    case vector_kind::encode_log: return "elog";
    case vector_kind::encode_lin: return "elin";
  }
  return "?";
}

vector_kind parse_vector_kind(const std::string& text) {
  if (text == "dlog") return vector_kind::decode_log;
  if (text == "dlin") return vector_kind::decode_lin;
  if (text == "elog") return vector_kind::encode_log;
  if (text == "elin") return vector_kind::encode_lin;
  throw std::invalid_argument("unknown vector mode: " + text);
}

std::uint64_t exhaustive_size(vector_kind kind, int n) {
  check_width(n);
  if (is_decode(kind)) return n == 64 ? saturated_size : std::uint64_t{1} << n;
  const int k = mantissa_width(n);
  if (k > 50) return saturated_size;
  return 2 * 510 * (std::uint64_t{1} << k) + 2;
}

vector_record exhaustive_input(vector_kind kind, int n, std::uint64_t index) {
  vector_record r;
  if (is_decode(kind)) {
    r.pattern = index;
    return r;
  }
  if (index == 0) {
    r.flag = special_flag::zero;
    return r;
  }
  if (index == 1) {
    r.sign = true;
    r.flag = special_flag::nar;
    return r;
  }
  const int k = mantissa_width(n);
  const std::uint64_t j = index - 2;
  const std::uint64_t per_sign = 510 * (std::uint64_t{1} << k);
  r.sign = j >= per_sign;
  const std::uint64_t rem = j % per_sign;
  const int c = -255 + static_cast<int>(rem >> k);
  r.characteristic = is_linear(kind) && r.sign ? ~c : c;
  r.mantissa = rem & low_mask(k);
  return r;
}

vector_file generate(int n, vector_kind kind, selection sel) {
  check_width(n);
  const bool linear = is_linear(kind);
  const std::uint64_t full = exhaustive_size(kind, n);
  vector_file file{kind, n, {}};

  std::vector<vector_record> inputs;
  if (sel.exhaustive) {
    if (n > 16) throw std::invalid_argument("exhaustive vectors are limited to n <= 16");
    inputs.reserve(full);
    for (std::uint64_t i = 0; i < full; ++i) inputs.push_back(exhaustive_input(kind, n, i));
  } else {
    if (sel.count == 0 || sel.count >= full) {
      throw std::invalid_argument("random selection needs 0 < count < " + std::to_string(full) +
                                  "; use exhaustive selection instead");
    }
    std::mt19937_64 rng(sel.seed);
    const int k = mantissa_width(n);
    inputs.reserve(sel.count);
    for (std::uint64_t i = 0; i < sel.count; ++i) {
      vector_record r;
      if (is_decode(kind)) {
        r.pattern = rng() & low_mask(n);
      } else {
        r.sign = rng() & 1;
        const int c = -255 + static_cast<int>(rng() % 510);
        r.characteristic = linear && r.sign ? ~c : c;
        r.mantissa = rng() & low_mask(k);
      }
      inputs.push_back(r);
    }
  }

  file.records.reserve(inputs.size());
  for (vector_record r : inputs) {
    if (is_decode(kind)) r = expected_decode(r.pattern, n, linear);
    else r.pattern = expected_encode(r, n, linear);
    cross_check(r, n, kind);
    file.records.push_back(r);
  }
  return file;
}

void write(std::ostream& out, const vector_file& file) {
  const int pattern_digits = hex_digits(file.n);
  const int mantissa_digits = hex_digits(mantissa_width(file.n));
  const bool decode = is_decode(file.kind);
  out << "takumvec 1 " << to_string(file.kind) << ' ' << file.n << ' ' << file.records.size() << '\n';
  for (const vector_record& r : file.records) {
    if (decode) {
      out << hex(r.pattern, pattern_digits) << ' ' << (r.sign ? '1' : '0') << ' ' << r.characteristic
          << ' ' << hex(r.mantissa, mantissa_digits) << ' ' << flag_char(r.flag, true) << '\n';
    } else {
      out << (r.sign ? '1' : '0') << ' ' << r.characteristic << ' ' << hex(r.mantissa, mantissa_digits)
          << ' ' << flag_char(r.flag, false) << ' ' << hex(r.pattern, pattern_digits) << '\n';
    }
  }
}

std::string format(const vector_file& file) {
  std::ostringstream os;
  write(os, file);
  return os.str();
}

namespace {

std::vector<std::string> split_fields(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t space = line.find(' ', start);
    const std::string field = line.substr(start, space == std::string::npos ? std::string::npos : space - start);
    if (field.empty()) throw vector_parse_error(line_no, "empty field or stray space");
    fields.push_back(field);
    if (space == std::string::npos) break;
    start = space + 1;
  }
  return fields;
}

std::uint64_t parse_hex_field(const std::string& field, int digits, int bits, std::size_t line_no) {
  if (field.size() != static_cast<std::size_t>(digits)) {
    throw vector_parse_error(line_no, "hex field '" + field + "' must have " + std::to_string(digits) + " digits");
  }
  std::uint64_t v = 0;
  for (char ch : field) {
    int d = -1;
    if (ch >= '0' && ch <= '9') d = ch - '0';
    else if (ch >= 'A' && ch <= 'F') d = ch - 'A' + 10;
    if (d < 0) throw vector_parse_error(line_no, "invalid hex digit in '" + field + "'");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  if ((v & ~low_mask(bits)) != 0) throw vector_parse_error(line_no, "hex field '" + field + "' out of range");
  return v;
}

int parse_decimal_field(const std::string& field, std::size_t line_no) {
  std::size_t i = field[0] == '-' ? 1 : 0;
  const std::string digits = field.substr(i);
  bool canonical = !digits.empty() && digits.size() <= 3 && (digits == "0" || digits[0] != '0') &&
                   !(i == 1 && digits == "0");
  for (char ch : digits) canonical = canonical && ch >= '0' && ch <= '9';
  if (!canonical) throw vector_parse_error(line_no, "malformed decimal field '" + field + "'");
  const int v = std::stoi(field);
  if (v < -255 || v > 254) throw vector_parse_error(line_no, "characteristic/exponent out of range");
  return v;
}

bool parse_sign(const std::string& field, std::size_t line_no) {
  if (field == "0") return false;
  if (field == "1") return true;
  throw vector_parse_error(line_no, "sign field must be 0 or 1");
}

special_flag parse_flag(const std::string& field, bool decode, std::size_t line_no) {
  if (field.size() == 1) {
    const char ch = field[0];
    if (ch == 'Z') return special_flag::zero;
    if (decode && ch == 'F') return special_flag::finite;
    if (decode && ch == 'R') return special_flag::nar;
    if (!decode && ch == '-') return special_flag::finite;
    if (!decode && ch == 'N') return special_flag::nar;
  }
  throw vector_parse_error(line_no, "invalid flag field '" + field + "'");
}

}  // namespace

vector_record parse_record(vector_kind kind, int n, const std::string& line, std::size_t line_no) {
  const bool decode = is_decode(kind);
  const int pattern_digits = hex_digits(n);
  const int k = mantissa_width(n);
  const int mantissa_digits = hex_digits(k);
  const auto f = split_fields(line, line_no);
  if (f.size() != 5) throw vector_parse_error(line_no, "expected 5 fields");
  vector_record r;
  if (decode) {
    r.pattern = parse_hex_field(f[0], pattern_digits, n, line_no);
    r.sign = parse_sign(f[1], line_no);
    r.characteristic = parse_decimal_field(f[2], line_no);
    r.mantissa = parse_hex_field(f[3], mantissa_digits, k, line_no);
    r.flag = parse_flag(f[4], true, line_no);
  } else {
    r.sign = parse_sign(f[0], line_no);
    r.characteristic = parse_decimal_field(f[1], line_no);
    r.mantissa = parse_hex_field(f[2], mantissa_digits, k, line_no);
    r.flag = parse_flag(f[3], false, line_no);
    r.pattern = parse_hex_field(f[4], pattern_digits, n, line_no);
  }
  return r;
}

vector_file parse(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse(text);
}

vector_file parse(const std::string& text) {
  if (text.empty() || text.back() != '\n') throw vector_parse_error(1, "file must end with a line feed");
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }

  const auto header = split_fields(lines[0], 1);
  if (header.size() != 5 || header[0] != "takumvec" || header[1] != "1") {
    throw vector_parse_error(1, "expected header 'takumvec 1 <mode> <n> <count>'");
  }
  vector_file file;
  try {
    file.kind = parse_vector_kind(header[2]);
  } catch (const std::invalid_argument& e) {
    throw vector_parse_error(1, e.what());
  }
  std::size_t count = 0;
  try {
    std::size_t used = 0;
    file.n = std::stoi(header[3], &used);
    if (used != header[3].size()) throw std::invalid_argument("n");
    count = std::stoull(header[4], &used);
    if (used != header[4].size()) throw std::invalid_argument("count");
    check_width(file.n);
  } catch (const std::exception&) {
    throw vector_parse_error(1, "malformed width or count in header");
  }
  if (lines.size() - 1 != count) {
    throw vector_parse_error(1, "header announces " + std::to_string(count) + " records, file has " +
                                    std::to_string(lines.size() - 1));
  }

  file.records.reserve(count);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    file.records.push_back(parse_record(file.kind, file.n, lines[i], i + 1));
  }
  return file;
}

bool check_record(vector_kind kind, int n, std::uint64_t index, const vector_record& r, bool exhaustive) {
  const bool decode = is_decode(kind);
  const bool linear = is_linear(kind);
  if (exhaustive) {
    const vector_record want = exhaustive_input(kind, n, index);
    const bool in_order = decode ? r.pattern == want.pattern
                                 : (r.sign == want.sign && r.characteristic == want.characteristic &&
                                    r.mantissa == want.mantissa && r.flag == want.flag);
    if (!in_order) return false;
  }
  if (decode) return expected_decode(r.pattern, n, linear) == r;
  const int c = log_characteristic(r, linear);
  if (r.flag == special_flag::finite && (c < -255 || c > 254)) return false;
  return expected_encode(r, n, linear) == r.pattern;
}

verify_report verify(const vector_file& file) {
  check_width(file.n);
  const bool exhaustive = file.records.size() == exhaustive_size(file.kind, file.n);

  verify_report report;
  report.records = file.records.size();
  for (std::size_t i = 0; i < file.records.size(); ++i) {
    if (!check_record(file.kind, file.n, i, file.records[i], exhaustive)) report.mismatched_lines.push_back(i + 2);
  }
  return report;
}

}  // namespace takum
