#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ktoric {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Base class for all library errors; `kind()` is a stable machine-readable tag.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

inline Rational make_rational(const Integer& p, const Integer& q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q" into a canonical rational.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q = 1) rendering.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

IntVector to_int_vector(std::span<const std::int64_t> values);
RatVector to_rat_vector(std::span<const Integer> values);

Integer dot(std::span<const Integer> a, std::span<const Integer> b);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational dot(std::span<const Integer> a, std::span<const Rational> b);

Integer content(std::span<const Integer> v);
bool is_zero(std::span<const Integer> v);
bool is_zero(std::span<const Rational> v);

/// Scales a nonzero rational vector to the primitive integer vector on the same ray.
IntVector primitive_on_ray(std::span<const Rational> v);

/// Floor-style residue in [0, |m|).
Integer mod_floor(const Integer& a, const Integer& m);

}  // namespace ktoric
