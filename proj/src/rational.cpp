#include "dchain/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "dchain/errors.hpp"

namespace dchain {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!is_digits(s)) throw UnsupportedInput("not a rational number: '" + std::string(whole) + "'");
  BigInt v{std::string(s)};
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw UnsupportedInput("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt p = parse_integer(text.substr(0, slash), text);
    std::string_view qs = text.substr(slash + 1);
    if (!is_digits(qs)) throw UnsupportedInput("bad denominator in '" + std::string(text) + "'");
    BigInt q(std::string{qs});
    if (q == 0) throw UnsupportedInput("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (!frac.empty() && !is_digits(frac)) throw UnsupportedInput("not a rational number: '" + std::string(text) + "'");
    bool negative = !int_part.empty() && int_part.front() == '-';
    std::string_view mag = int_part;
    if (!mag.empty() && (mag.front() == '-' || mag.front() == '+')) mag.remove_prefix(1);
    if (mag.empty() && frac.empty()) throw UnsupportedInput("not a rational number: '" + std::string(text) + "'");
    BigInt whole = mag.empty() ? BigInt(0) : parse_integer(mag, text);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt num = whole * scale + (frac.empty() ? BigInt(0) : BigInt(std::string(frac)));
    Rational r(num, scale);
    return negative ? Rational(-r) : r;
  }

  return Rational(parse_integer(text, text));
}

Rational rational_from_double(double x, std::int64_t max_denominator) {
  if (!std::isfinite(x)) throw UnsupportedInput("non-finite value has no rational form");
  // Continued-fraction convergents of x.
  const double tol = 1e-12 * std::max(1.0, std::fabs(x));
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(rest);
    if (std::fabs(a) > 9.0e15) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t p2 = ai * p1 + p0;
    std::int64_t q2 = ai * q1 + q0;
    if (q2 > max_denominator) break;
    if (std::fabs(static_cast<double>(p2) / static_cast<double>(q2) - x) <= tol) return Rational(p2, q2);
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = rest - a;
    if (frac == 0.0) break;
    rest = 1.0 / frac;
  }
  throw UnsupportedInput("value " + std::to_string(x) + " is not a small-denominator rational");
}

double to_double(const Rational& r) { return r.convert_to<double>(); }
double to_double(const BigInt& n) { return n.convert_to<double>(); }

std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string format_bigint(const BigInt& n) { return n.str(); }

}  // namespace dchain
