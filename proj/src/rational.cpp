#include "toristab/rational.hpp"

#include <cassert>
#include <cstdio>
#include <cstdlib>

#include "toristab/errors.hpp"

namespace toristab {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// Signed decimal integer literal, no leading '+'.
Int parse_int_literal(const std::string& s, const std::string& context) {
  std::string body = s;
  bool negative = false;
  if (!body.empty() && body[0] == '-') {
    negative = true;
    body = body.substr(1);
  }
  if (!all_digits(body))
    throw ParseError("malformed integer '" + s + "' in " + context);
  Int v(body);
  return negative ? Int(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational(parse_int_literal(text, "rational literal"));
  }
  if (text.find('/', slash + 1) != std::string::npos)
    throw ParseError("malformed rational '" + text + "': repeated '/'");
  Int num = parse_int_literal(text.substr(0, slash), "rational numerator");
  std::string den_text = text.substr(slash + 1);
  if (!all_digits(den_text))
    throw ParseError("malformed rational '" + text + "': denominator must be a positive integer");
  Int den(den_text);
  if (den == 0)
    throw ParseError("malformed rational '" + text + "': denominator is zero");
  // Component construction canonicalizes; the mpq string constructor does not.
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  Int num = numerator(value);
  Int den = denominator(value);
  assert(den > 0);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string approx_decimal(const Rational& value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value.convert_to<double>());
  return buf;
}

Int rational_floor(const Rational& value) {
  Int num = numerator(value);
  Int den = denominator(value);
  Int q = num / den;  // truncates toward zero
  if (num % den != 0 && num < 0) --q;
  return q;
}

Int rational_ceil(const Rational& value) {
  return -rational_floor(-value);
}

bool lex_less(const QVec& a, const QVec& b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Rational dot(const QVec& a, const QVec& b) {
  assert(a.size() == b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const ZVec& a, const QVec& b) {
  assert(a.size() == b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

Int dot(const ZVec& a, const ZVec& b) {
  assert(a.size() == b.size());
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string format_vector(const QVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_rational(v[i]);
  }
  out += ")";
  return out;
}

}  // namespace toristab
