#include "ktoric/ring.hpp"

#include <sstream>

namespace ktoric {

IntVector Carrier::normalize(IntVector exponent) const {
  if (exponent.size() != rank_) throw Error("DimensionMismatch", "exponent rank differs from carrier rank");
  if (quotient_) return quotient_->normal_form(exponent);
  return exponent;
}

bool Carrier::operator==(const Carrier& rhs) const {
  if (rank_ != rhs.rank_) return false;
  if (!quotient_ || !rhs.quotient_) return !quotient_ && !rhs.quotient_;
  return quotient_ == rhs.quotient_ || *quotient_ == *rhs.quotient_;
}

GroupRingElem GroupRingElem::constant(Carrier carrier, const Integer& c) {
  IntVector zero(carrier.rank());
  return monomial(std::move(carrier), std::move(zero), c);
}

GroupRingElem GroupRingElem::monomial(Carrier carrier, IntVector exponent, const Integer& c) {
  GroupRingElem out(std::move(carrier));
  out.add_term(out.carrier_.normalize(std::move(exponent)), c);
  return out;
}

GroupRingElem GroupRingElem::exp(IntVector exponent) {
  Carrier c(exponent.size());
  return monomial(std::move(c), std::move(exponent));
}

Integer GroupRingElem::coefficient(const IntVector& exponent) const {
  auto it = terms_.find(carrier_.normalize(exponent));
  return it == terms_.end() ? Integer(0) : it->second;
}

void GroupRingElem::add_term(IntVector exponent, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(exponent), c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void GroupRingElem::require_same_carrier(const GroupRingElem& rhs) const {
  if (!(carrier_ == rhs.carrier_)) throw Error("CarrierMismatch", "group ring elements live on different lattices");
}

GroupRingElem& GroupRingElem::operator+=(const GroupRingElem& rhs) {
  require_same_carrier(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

GroupRingElem& GroupRingElem::operator-=(const GroupRingElem& rhs) {
  require_same_carrier(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

GroupRingElem& GroupRingElem::operator*=(const GroupRingElem& rhs) {
  require_same_carrier(rhs);
  GroupRingElem out(carrier_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : rhs.terms_) {
      IntVector e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(carrier_.normalize(std::move(e)), ca * cb);
    }
  terms_ = std::move(out.terms_);
  return *this;
}

GroupRingElem& GroupRingElem::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

GroupRingElem GroupRingElem::operator-() const {
  GroupRingElem out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

std::string GroupRingElem::render(const std::string& prefix) const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < carrier_.rank(); ++i) names.push_back(prefix + std::to_string(i + 1));
  return render(names);
}

std::string GroupRingElem::render(const std::vector<std::string>& names) const {
  if (names.size() != carrier_.rank()) throw Error("DimensionMismatch", "variable name count differs from rank");
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string monomial;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!monomial.empty()) monomial += "*";
      monomial += names[i];
      if (e[i] != 1) monomial += "^" + e[i].get_str();
    }
    Integer mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (monomial.empty()) {
      out << mag.get_str();
    } else {
      if (mag != 1) out << mag.get_str() << "*";
      out << monomial;
    }
    first = false;
  }
  return out.str();
}

GroupRingElem one_minus_exp_neg(IntVector weight) {
  Carrier c(weight.size());
  for (auto& x : weight) x = -x;
  return GroupRingElem::constant(c, 1) - GroupRingElem::monomial(c, std::move(weight));
}

GroupRingElem euler_class(std::size_t rank, const std::vector<IntVector>& weights) {
  GroupRingElem out = GroupRingElem::constant(Carrier(rank), 1);
  for (const auto& w : weights) {
    if (w.size() != rank) throw Error("DimensionMismatch", "weight rank differs from lattice rank");
    if (is_zero(w)) throw Error("ZeroWeight", "Euler class of a zero weight is a zero divisor");
    out *= one_minus_exp_neg(w);
  }
  return out;
}

GroupRingElem project(const GroupRingElem& f, std::shared_ptr<const QuotientLattice> quotient) {
  if (quotient->ambient_rank() != f.carrier().rank())
    throw Error("DimensionMismatch", "quotient ambient rank differs from carrier rank");
  GroupRingElem out(Carrier(std::move(quotient)));
  for (const auto& [e, c] : f.terms()) out += GroupRingElem::monomial(out.carrier(), e, c);
  return out;
}

GroupRingElem reduce_modulo_weight(const GroupRingElem& f, const IntVector& alpha) {
  if (!f.carrier().is_free()) throw Error("CarrierMismatch", "divisibility is tested on free carriers");
  if (alpha.size() != f.carrier().rank()) throw Error("DimensionMismatch", "weight rank differs from carrier rank");
  if (is_zero(alpha)) throw Error("ZeroWeight", "divisibility by 1 - e^0 = 0 is undefined");
  std::vector<IntVector> rel{alpha};
  return project(f, std::make_shared<const QuotientLattice>(alpha.size(), rel));
}

bool divisible_by_one_minus(const GroupRingElem& f, const IntVector& alpha) {
  return reduce_modulo_weight(f, alpha).is_zero();
}

Integer augmentation(const GroupRingElem& f) {
  Integer s = 0;
  for (const auto& [e, c] : f.terms()) s += c;
  return s;
}

GroupRingElem apply_lattice_map(const GroupRingElem& f, const IntMatrix& h) {
  if (!f.carrier().is_free()) throw Error("CarrierMismatch", "lattice maps act on free carriers");
  if (h.cols() != f.carrier().rank()) throw Error("DimensionMismatch", "lattice map source rank differs from carrier");
  Carrier target(h.rows());
  GroupRingElem out(target);
  for (const auto& [e, c] : f.terms()) out += GroupRingElem::monomial(target, h * e, c);
  return out;
}

}  // namespace ktoric
