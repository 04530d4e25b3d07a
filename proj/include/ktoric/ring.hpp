#pragma once

// Integer group rings Z[L] of a lattice L = Z^r or of a quotient Z^r / R.
// These model the representation ring R(T) and Laurent polynomial rings.

#include "ktoric/lattice.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ktoric {

/// The exponent lattice of a group ring: free of a given rank, or a quotient of it.
class Carrier {
public:
  explicit Carrier(std::size_t rank) : rank_(rank) {}
  explicit Carrier(std::shared_ptr<const QuotientLattice> quotient)
      : rank_(quotient->ambient_rank()), quotient_(std::move(quotient)) {}

  std::size_t rank() const noexcept { return rank_; }
  bool is_free() const noexcept { return quotient_ == nullptr; }
  const QuotientLattice* quotient() const noexcept { return quotient_.get(); }
  const std::shared_ptr<const QuotientLattice>& quotient_ptr() const noexcept { return quotient_; }

  IntVector normalize(IntVector exponent) const;

  bool operator==(const Carrier& rhs) const;

private:
  std::size_t rank_;
  std::shared_ptr<const QuotientLattice> quotient_;
};

class GroupRingElem {
public:
  /// Terms keyed by exponent; ordered lexicographically, zero coefficients never stored.
  using TermMap = std::map<IntVector, Integer>;

  explicit GroupRingElem(Carrier carrier) : carrier_(std::move(carrier)) {}

  static GroupRingElem constant(Carrier carrier, const Integer& c);
  static GroupRingElem monomial(Carrier carrier, IntVector exponent, const Integer& c = 1);
  /// e^{v} on the free lattice of rank v.size().
  static GroupRingElem exp(IntVector exponent);

  const Carrier& carrier() const noexcept { return carrier_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Value of the coefficient at `exponent` (zero if absent).
  Integer coefficient(const IntVector& exponent) const;

  GroupRingElem& operator+=(const GroupRingElem& rhs);
  GroupRingElem& operator-=(const GroupRingElem& rhs);
  GroupRingElem& operator*=(const GroupRingElem& rhs);
  GroupRingElem& operator*=(const Integer& c);

  friend GroupRingElem operator+(GroupRingElem a, const GroupRingElem& b) { return a += b; }
  friend GroupRingElem operator-(GroupRingElem a, const GroupRingElem& b) { return a -= b; }
  friend GroupRingElem operator*(GroupRingElem a, const GroupRingElem& b) { return a *= b; }
  friend GroupRingElem operator*(GroupRingElem a, const Integer& c) { return a *= c; }
  friend GroupRingElem operator*(const Integer& c, GroupRingElem a) { return a *= c; }
  GroupRingElem operator-() const;

  bool operator==(const GroupRingElem& rhs) const {
    return carrier_ == rhs.carrier_ && terms_ == rhs.terms_;
  }

  /// Canonical text, terms in decreasing lexicographic exponent order,
  /// e.g. "1 - x1^-1 + x1^-1*x2^-1". Variables are `<prefix><i>` (1-based).
  std::string render(const std::string& prefix = "x") const;
  std::string render(const std::vector<std::string>& names) const;

private:
  void add_term(IntVector exponent, const Integer& c);
  void require_same_carrier(const GroupRingElem& rhs) const;

  Carrier carrier_;
  TermMap terms_;
};

/// 1 - e^{-weight} on the free lattice.
GroupRingElem one_minus_exp_neg(IntVector weight);

/// Product of (1 - e^{-w}) over the weights; 1 for an empty list. Throws ZeroWeight.
GroupRingElem euler_class(std::size_t rank, const std::vector<IntVector>& weights);

/// Image of f in the group ring of (carrier / Z·alpha), i.e. f mod (1 - e^{-alpha}).
GroupRingElem reduce_modulo_weight(const GroupRingElem& f, const IntVector& alpha);

/// Whether 1 - e^{-alpha} divides f, decided by projecting onto Z[L / Z·alpha].
bool divisible_by_one_minus(const GroupRingElem& f, const IntVector& alpha);

/// Sum of coefficients.
Integer augmentation(const GroupRingElem& f);

/// Ring map induced by the exponent map v ↦ h·v into the free lattice of rank h.rows().
GroupRingElem apply_lattice_map(const GroupRingElem& f, const IntMatrix& h);

/// Image of f under the projection onto the quotient carrier.
GroupRingElem project(const GroupRingElem& f, std::shared_ptr<const QuotientLattice> quotient);

}  // namespace ktoric
