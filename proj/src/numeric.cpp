#include "bentail/numeric.hpp"

#include <cctype>

#include "bentail/errors.hpp"

namespace bentail {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

using BigInt = boost::multiprecision::cpp_int;

BigInt pow10(std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

Rational rational_from_string(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw InputError("empty number");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational magnitude;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw InputError("bad rational '" + std::string(text) + "' (want p/q)");
    BigInt d{std::string(den)};
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    magnitude = Rational(BigInt{std::string(num)}, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw InputError("bad number '" + std::string(text) + "'");
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw InputError("bad number '" + std::string(text) + "'");
    BigInt whole = ip.empty() ? BigInt(0) : BigInt{std::string(ip)};
    BigInt frac = fp.empty() ? BigInt(0) : BigInt{std::string(fp)};
    BigInt scale = pow10(fp.size());
    magnitude = Rational(whole * scale + frac, scale);
  } else {
    if (!all_digits(s)) throw InputError("bad number '" + std::string(text) + "'");
    magnitude = Rational(BigInt{std::string(s)});
  }
  return negative ? Rational(-magnitude) : magnitude;
}

std::string to_fraction_string(const Rational& r) {
  return r.str();
}

double to_double(const Rational& r) {
  return r.convert_to<double>();
}

bool is_probability(const Rational& r) {
  return r >= 0 && r <= 1;
}

}  // namespace bentail
