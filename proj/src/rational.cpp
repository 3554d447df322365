#include "spinmirror/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace spinmirror {

namespace {

bool looks_like_fraction(const std::string& s) { return s.find('/') != std::string::npos; }

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat rat_parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(Errc::InvalidSpec, "empty numeric literal");
  try {
    if (looks_like_fraction(s)) {
      auto slash = s.find('/');
      std::string num = s.substr(0, slash), den = s.substr(slash + 1);
      if (!is_integer_literal(num) || !is_integer_literal(den))
        throw Error(Errc::InvalidSpec, "malformed rational literal '" + text + "'");
      BigInt numer(num), denom(den);
      if (denom == 0) throw Error(Errc::InvalidSpec, "zero denominator in '" + text + "'");
      return Rat(numer) / denom;
    }
    if (is_integer_literal(s)) return Rat(BigInt(s));
    // Decimal or scientific literal: go through double, conversion is exact.
    std::size_t pos = 0;
    double d = std::stod(s, &pos);
    if (pos != s.size()) throw Error(Errc::InvalidSpec, "malformed numeric literal '" + text + "'");
    return rat_from_double(d);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(Errc::InvalidSpec, "cannot parse numeric literal '" + text + "'");
  }
}

std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace spinmirror
