// takum: command-line front end for the takum codec.
//
//   takum decode   --n 12 --mode lin 0x3FF
//   takum encode   --n 12 --sign 0 --lbar 1
//   takum round    --n 12 --mode log 1.0
//   takum table    --n 8 --mode log
//   takum vectors  generate --n 12 --mode log --kind decode -o dlog12.txt
//   takum vectors  verify --n 12 dlog12.txt
//   takum selftest --n 12
//
// Exit status: 0 success, 1 domain error (value out of range, failed
// verification), 2 usage error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "takum/decoder.hpp"
#include "takum/encoder.hpp"
#include "takum/oracle.hpp"
#include "takum/pattern.hpp"
#include "takum/selftest.hpp"
#include "takum/vectors.hpp"

namespace {

using namespace takum;

struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

mode parse_mode(const std::string& text) { return text == "lin" ? mode::linear : mode::logarithmic; }

std::string hex_digits(std::uint64_t value, int bits) {
  std::ostringstream os;
  os << std::hex << std::uppercase << value;
  std::string s = os.str();
  const std::size_t width = static_cast<std::size_t>((bits + 3) / 4);
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return s;
}

std::uint64_t parse_hex_argument(const std::string& flag, const std::string& text, int bits) {
  std::string digits = text;
  if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) digits = digits.substr(2);
  if (digits.empty() || digits.size() > 16 || digits.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
    throw CLI::ValidationError(flag, "expected a hexadecimal value, got '" + text + "'");
  }
  const std::uint64_t v = std::stoull(digits, nullptr, 16);
  if ((v & ~low_mask(bits)) != 0) {
    throw domain_error(flag + " " + text + " does not fit in " + std::to_string(bits) + " bits");
  }
  return v;
}

/// Drops trailing zeros of the significand: "1.0000" -> "1", "2.50e+10" -> "2.5e+10".
std::string trim_decimal(const std::string& text) {
  const std::size_t point = text.find('.');
  if (point == std::string::npos) return text;
  const std::size_t exp = text.find('e');
  std::string significand = text.substr(0, exp);
  const std::string tail = exp == std::string::npos ? "" : text.substr(exp);
  while (significand.back() == '0') significand.pop_back();
  if (significand.back() == '.') significand.pop_back();
  return significand + tail;
}

int128 to_int128(const mpz_class& v) {
  int128 out = 0;
  for (char ch : mpz_class(abs(v)).get_str(16)) out = out * 16 + (ch <= '9' ? ch - '0' : ch - 'a' + 10);
  return v < 0 ? -out : out;
}

std::string bits_string(unsigned value, int width) {
  std::string s;
  for (int i = width - 1; i >= 0; --i) s += ((value >> i) & 1u) ? '1' : '0';
  return s;
}

// decode --------------------------------------------------------------------

void run_decode(int n, mode m, const std::string& literal, int digits) {
  pattern t(0, 2);
  try {
    t = parse_pattern(literal, n);
  } catch (const std::invalid_argument& e) {
    throw domain_error(e.what());
  }
  const field_view f = unpack(t);
  const int k = mantissa_width(n);
  std::cout << t.to_hex() << " n=" << n << '\n';
  std::cout << "S=" << f.sign << " D=" << f.direction << " R=" << bits_string(f.regime_bits, 3) << " r=" << f.regime
            << " c=" << f.characteristic << " p=" << f.precision << " M=" << hex_digits(f.mantissa, k) << '\n';
  if (t.is_zero()) {
    std::cout << "special=zero value=0\n";
    return;
  }
  if (t.is_nar()) {
    std::cout << "special=NaR value=NaR\n";
    return;
  }
  const std::string value = trim_decimal(exact_value_decimal(t, digits, m));
  if (m == mode::linear) {
    const lin_internal d = decode_linear(t);
    const exact_lbar fraction{mpz_class(static_cast<unsigned long>(d.fraction)), d.fraction_bits};
    std::cout << "e=" << d.exponent << " f=" << fraction.to_string() << " value=" << value << '\n';
  } else {
    const log_internal d = decode_logarithmic(t);
    const exact_lbar lbar{mpz_from(d.lbar), d.fraction_bits};
    const exact_lbar ell = d.sign ? -lbar : lbar;
    std::cout << "lbar=" << lbar.to_string() << " l=" << ell.to_string() << " value=" << value << '\n';
  }
}

// encode --------------------------------------------------------------------

struct encode_options {
  int sign = 0;
  std::optional<int> characteristic;
  std::optional<std::string> mantissa_hex;
  std::optional<std::string> lbar;
  std::optional<int> exponent;
  std::optional<std::string> fraction_hex;
  bool zero = false;
  bool nar = false;
};

pattern run_encode(int n, mode m, const encode_options& o) {
  const int k = mantissa_width(n);
  const bool sign = o.sign != 0;
  if (o.zero || o.nar) return postencode({sign, 0, 0, o.zero, o.nar}, n);

  if (o.characteristic) {
    if (!o.mantissa_hex) throw CLI::RequiredError("--mantissa-hex");
    const int c = *o.characteristic;
    if (c < -255 || c > 254) throw domain_error("characteristic " + std::to_string(c) + " outside [-255, 254]");
    return postencode({sign, c, parse_hex_argument("--mantissa-hex", *o.mantissa_hex, k), false, false}, n);
  }
  if (o.lbar) {
    if (m != mode::logarithmic) throw CLI::ValidationError("--lbar", "requires --mode log");
    exact_lbar x;
    try {
      x = parse_exact_lbar(*o.lbar);
    } catch (const std::invalid_argument& e) {
      throw domain_error(std::string("--lbar: ") + e.what());
    }
    if (x.fraction_bits > k) {
      // reduce to the datapath's fixed point when the extra bits are zero
      const mpz_class step = mpz_class(1) << (x.fraction_bits - k);
      if (x.numerator % step != 0) {
        throw domain_error("--lbar " + *o.lbar + " needs more than " + std::to_string(k) + " fraction bits");
      }
      x = {x.numerator / step, k};
    }
    const mpz_class scaled = x.numerator << (k - x.fraction_bits);
    if (scaled < -255 * (mpz_class(1) << k) || scaled >= 255 * (mpz_class(1) << k)) {
      throw domain_error("--lbar " + *o.lbar + " outside [-255, 255)");
    }
    return encode_logarithmic(sign, to_int128(scaled), false, false, n);
  }
  if (o.exponent) {
    if (m != mode::linear) throw CLI::ValidationError("--exponent", "requires --mode lin");
    if (!o.fraction_hex) throw CLI::RequiredError("--fraction-hex");
    const int e = *o.exponent;
    if (e < -255 || e > 254) throw domain_error("exponent " + std::to_string(e) + " outside [-255, 254]");
    return encode_linear(sign, e, parse_hex_argument("--fraction-hex", *o.fraction_hex, k), false, false, n);
  }
  throw CLI::ValidationError("encode",
                             "give --characteristic/--mantissa-hex, --lbar, --exponent/--fraction-hex, --zero or --nar");
}

// table ---------------------------------------------------------------------

void run_table(int n, mode m) {
  if (n > 16) throw domain_error("table enumerates patterns only for n <= 16");
  const int k = mantissa_width(n);
  std::cout << "pattern,S,D,r,c,p,mantissa,lbar,decimal\n";
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    const pattern t(b, n);
    const field_view f = unpack(t);
    std::string lbar;
    if (t.special() == special_flag::finite) lbar = exact_decode(t).lbar.to_string();
    std::cout << t.to_hex() << ',' << f.sign << ',' << f.direction << ',' << f.regime << ',' << f.characteristic << ','
              << f.precision << ',' << hex_digits(f.mantissa, k) << ',' << lbar << ','
              << exact_value_decimal(t, 20, m) << '\n';
  }
}

// vectors -------------------------------------------------------------------

vector_kind kind_of(const std::string& kind, mode m) {
  if (kind == "decode") return m == mode::linear ? vector_kind::decode_lin : vector_kind::decode_log;
  return m == mode::linear ? vector_kind::encode_lin : vector_kind::encode_log;
}

int run_vectors_generate(int n, mode m, const std::string& kind, std::optional<std::uint64_t> count,
                         std::uint64_t seed, const std::string& output) {
  const selection sel = count ? selection::random(*count, seed) : selection::all();
  vector_file file;
  try {
    file = generate(n, kind_of(kind, m), sel);
  } catch (const std::invalid_argument& e) {
    throw domain_error(e.what());
  }
  if (output.empty() || output == "-") {
    write(std::cout, file);
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw domain_error("cannot open " + output + " for writing");
    write(out, file);
    if (!out.flush()) throw domain_error("failed writing " + output);
  }
  return 0;
}

int run_vectors_verify(int n, const std::string& input) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw domain_error("cannot open " + input);
  vector_file file;
  try {
    file = parse(in);
  } catch (const vector_parse_error& e) {
    std::cerr << input << ": parse error at " << e.what() << '\n';
    return 1;
  }
  if (file.n != n) {
    throw domain_error(input + " holds " + std::to_string(file.n) + "-bit vectors, --n is " + std::to_string(n));
  }
  const verify_report report = verify(file);
  for (std::size_t line : report.mismatched_lines) std::cout << input << ':' << line << ": mismatch\n";
  std::cout << to_string(file.kind) << " n=" << file.n << " records=" << report.records
            << " mismatches=" << report.mismatched_lines.size() << '\n';
  return report.ok() ? 0 : 1;
}

void add_width(CLI::App* cmd, int& n) {
  cmd->add_option("--n", n, "takum width in bits")->required()->check(CLI::Range(2, 64));
}

void add_mode(CLI::App* cmd, std::string& m) {
  cmd->add_option("--mode", m, "logarithmic or linear takums")->check(CLI::IsMember({"log", "lin"}))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"takum and linear takum codec"};
  app.require_subcommand(1);

  int n = 0;
  std::string mode_name = "log";
  int digits = 20;

  auto* decode_cmd = app.add_subcommand("decode", "print the fields and value of a pattern");
  std::string decode_literal;
  add_width(decode_cmd, n);
  add_mode(decode_cmd, mode_name);
  decode_cmd->add_option("--digits", digits, "significant decimal digits")->check(CLI::Range(1, 50))->capture_default_str();
  decode_cmd->add_option("pattern", decode_literal, "0x... or 0b... literal")->required();

  auto* encode_cmd = app.add_subcommand("encode", "encode an internal representation");
  encode_options enc;
  add_width(encode_cmd, n);
  add_mode(encode_cmd, mode_name);
  encode_cmd->add_option("--sign", enc.sign, "sign bit")->check(CLI::Range(0, 1));
  auto* c_opt = encode_cmd->add_option("--characteristic", enc.characteristic, "characteristic c");
  auto* m_opt = encode_cmd->add_option("--mantissa-hex", enc.mantissa_hex, "mantissa, w-5 bits left aligned");
  auto* l_opt = encode_cmd->add_option("--lbar", enc.lbar, "barred logarithmic value, a/b or decimal");
  auto* e_opt = encode_cmd->add_option("--exponent", enc.exponent, "linear exponent e");
  auto* f_opt = encode_cmd->add_option("--fraction-hex", enc.fraction_hex, "linear fraction, w-5 bits left aligned");
  auto* z_opt = encode_cmd->add_flag("--zero", enc.zero, "encode zero");
  auto* nar_opt = encode_cmd->add_flag("--nar", enc.nar, "encode NaR");
  c_opt->excludes(l_opt, e_opt, f_opt, z_opt, nar_opt);
  m_opt->excludes(l_opt, e_opt, f_opt, z_opt, nar_opt);
  l_opt->excludes(e_opt, f_opt, z_opt, nar_opt);
  e_opt->excludes(z_opt, nar_opt);
  f_opt->excludes(z_opt, nar_opt);
  z_opt->excludes(nar_opt);

  auto* round_cmd = app.add_subcommand("round", "round a decimal literal to the nearest takum");
  std::string round_literal;
  add_width(round_cmd, n);
  add_mode(round_cmd, mode_name);
  round_cmd->add_option("value", round_literal, "decimal literal or NaR")->required();

  auto* table_cmd = app.add_subcommand("table", "CSV listing of every pattern (n <= 16)");
  add_width(table_cmd, n);
  add_mode(table_cmd, mode_name);

  auto* vectors_cmd = app.add_subcommand("vectors", "golden test vectors");
  vectors_cmd->require_subcommand(1);
  auto* gen_cmd = vectors_cmd->add_subcommand("generate", "write a vector file");
  std::string kind = "decode";
  std::optional<std::uint64_t> count;
  std::uint64_t seed = 1;
  std::string output;
  add_width(gen_cmd, n);
  add_mode(gen_cmd, mode_name);
  gen_cmd->add_option("--kind", kind, "decoder or encoder vectors")->check(CLI::IsMember({"decode", "encode"}))->capture_default_str();
  auto* count_opt = gen_cmd->add_option("--random", count, "number of random records instead of all");
  gen_cmd->add_option("--seed", seed, "seed for --random")->needs(count_opt)->capture_default_str();
  gen_cmd->add_option("-o,--output", output, "output file, default stdout");
  auto* verify_cmd = vectors_cmd->add_subcommand("verify", "recompute every record of a vector file");
  std::string input;
  add_width(verify_cmd, n);
  verify_cmd->add_option("file", input, "vector file")->required();

  auto* selftest_cmd = app.add_subcommand("selftest", "run the codec invariant suites");
  add_width(selftest_cmd, n);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const mode m = parse_mode(mode_name);
  try {
    if (decode_cmd->parsed()) {
      run_decode(n, m, decode_literal, digits);
    } else if (encode_cmd->parsed()) {
      std::cout << run_encode(n, m, enc).to_hex() << '\n';
    } else if (round_cmd->parsed()) {
      const real_rounding r = nearest_from_real(round_literal, n, m);
      std::cout << r.result.to_hex() << '\n';
      if (r.saturated) std::cerr << "note: " << round_literal << " is out of range, saturated\n";
    } else if (table_cmd->parsed()) {
      run_table(n, m);
    } else if (gen_cmd->parsed()) {
      return run_vectors_generate(n, m, kind, count, seed, output);
    } else if (verify_cmd->parsed()) {
      return run_vectors_verify(n, input);
    } else if (selftest_cmd->parsed()) {
      return print_selftest(std::cout, run_selftest(n)) ? 0 : 1;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
