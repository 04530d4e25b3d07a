#include "ktoric/numeric.hpp"

#include <algorithm>

namespace ktoric {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trimmed_begin = s.find_first_not_of(" \t");
  auto trimmed_end = s.find_last_not_of(" \t");
  if (trimmed_begin == std::string::npos) throw Error("ParseError", "empty rational literal");
  s = s.substr(trimmed_begin, trimmed_end - trimmed_begin + 1);
  auto valid_int = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) return false;
    return std::all_of(part.begin() + static_cast<std::ptrdiff_t>(start), part.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw Error("ParseError", "malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Integer p(num), q(den);
  if (q == 0) throw Error("ParseError", "zero denominator in '" + s + "'");
  return make_rational(p, q);
}

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

IntVector to_int_vector(std::span<const std::int64_t> values) {
  IntVector out;
  out.reserve(values.size());
  for (auto v : values) out.emplace_back(static_cast<long>(v));
  return out;
}

RatVector to_rat_vector(std::span<const Integer> values) {
  return RatVector(values.begin(), values.end());
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "dot product of unequal lengths");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "dot product of unequal lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Integer> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "dot product of unequal lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

IntVector primitive_on_ray(std::span<const Rational> v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(Integer(x * l));
  Integer g = content(out);
  if (g == 0) throw Error("ZeroVector", "cannot normalize the zero vector");
  for (auto& x : out) x /= g;
  return out;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

}  // namespace ktoric
