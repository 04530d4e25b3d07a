#include "ktoric/kirwan.hpp"

#include "rational_linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace ktoric {

DelzantData build_delzant_data(const DelzantPolytope& p) {
  require_delzant(p);
  DelzantData d;
  d.N = p.facet_count();
  d.n = p.dim();
  d.beta = IntMatrix(d.n, d.N);
  for (std::size_t i = 0; i < d.N; ++i)
    for (std::size_t r = 0; r < d.n; ++r) d.beta(r, i) = p.facet(i).normal[r];
  auto basis = kernel_basis(d.beta);
  d.k = basis.size();
  if (d.k != d.N - d.n) throw Error("InternalCheck", "normals do not span the ambient lattice");
  d.iota = IntMatrix::from_rows(basis, d.N).transpose();
  if (!(d.beta * d.iota == IntMatrix(d.n, d.k)))
    throw Error("InternalCheck", "beta·iota is not zero");
  for (std::size_t i = 0; i < d.N; ++i) d.alphas.push_back(d.iota.row(i));
  for (const auto& f : p.facets()) d.eta.push_back(f.offset);
  d.iota_star_eta.assign(d.k, Rational(0));
  for (std::size_t j = 0; j < d.k; ++j)
    for (std::size_t i = 0; i < d.N; ++i) d.iota_star_eta[j] += Rational(d.iota(i, j)) * d.eta[i];
  return d;
}

RatVector moment_map_value(const DelzantData& d, std::span<const Rational> squared_moduli) {
  if (squared_moduli.size() != d.N) throw Error("DimensionMismatch", "expected one modulus per facet");
  RatVector out = d.iota_star_eta;
  for (std::size_t i = 0; i < d.N; ++i) {
    if (squared_moduli[i] < 0) throw Error("DomainError", "squared modulus must be nonnegative");
    for (std::size_t j = 0; j < d.k; ++j) out[j] -= Rational(1, 2) * squared_moduli[i] * Rational(d.alphas[i][j]);
  }
  return out;
}

RatVector nearest_point_shifted_cone(const std::vector<RatVector>& gens, const RatVector& shift) {
  const std::size_t dim = shift.size();
  const std::size_t m = gens.size();
  if (m > 20) throw Error("TooManyGenerators", "cone projection is limited to 20 generators");
  for (const auto& g : gens)
    if (g.size() != dim) throw Error("DimensionMismatch", "cone generator has wrong length");

  std::optional<RatVector> best;
  Rational best_norm;
  // The minimizer is supported on linearly independent generators (at most dim
  // of them); each candidate support is accepted iff it satisfies the KKT system.
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size > dim) continue;
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::uint32_t{1} << i)) support.push_back(i);
    detail::RatMatrix gram(size, RatVector(size));
    RatVector rhs(size);
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) gram[a][b] = dot(gens[support[a]], gens[support[b]]);
      rhs[a] = -dot(gens[support[a]], shift);
    }
    auto coeffs = detail::solve(gram, rhs);
    if (!coeffs) continue;
    if (std::any_of(coeffs->begin(), coeffs->end(), [](const Rational& c) { return c < 0; })) continue;
    RatVector point = shift;
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t j = 0; j < dim; ++j) point[j] += (*coeffs)[a] * gens[support[a]][j];
    if (std::any_of(gens.begin(), gens.end(), [&](const RatVector& g) { return dot(g, point) < 0; })) continue;
    Rational norm = dot(point, point);
    if (!best || norm < best_norm) {
      best = point;
      best_norm = norm;
    }
  }
  if (!best) throw Error("InternalCheck", "no KKT point found for cone projection");
  return *best;
}

bool cone_contains(const std::vector<RatVector>& gens, const RatVector& point) {
  RatVector shift = point;
  for (auto& x : shift) x = -x;
  return is_zero(nearest_point_shifted_cone(gens, shift));
}

RatVector critical_value(const DelzantData& d, FacetSet subset) {
  std::vector<RatVector> gens;
  for (auto i : facet_indices(subset)) {
    if (i >= d.N) throw Error("DimensionMismatch", "facet index out of range");
    gens.emplace_back(d.alphas[i].begin(), d.alphas[i].end());
  }
  RatVector shift = d.iota_star_eta;
  for (auto& x : shift) x = -x;
  return nearest_point_shifted_cone(gens, shift);
}

RatVector weight_pairings(const DelzantData& d, std::span<const Rational> xi) {
  if (xi.size() != d.k) throw Error("DimensionMismatch", "xi must have rank k");
  RatVector out;
  for (const auto& a : d.alphas) out.push_back(dot(a, xi));
  return out;
}

FacetSet negative_coordinate_set(const DelzantData& d, std::span<const Rational> xi) {
  FacetSet s = 0;
  auto w = weight_pairings(d, xi);
  for (std::size_t i = 0; i < d.N; ++i)
    if (w[i] < 0) s |= FacetSet{1} << i;
  return s;
}

std::vector<CriticalDatum> critical_values_Z(const DelzantData& d) {
  if (d.N > 16) throw Error("TooManyFacets", "critical set enumeration is limited to 16 facets");
  std::map<RatVector, FacetSet> seen;
  const FacetSet limit = FacetSet{1} << d.N;
  for (FacetSet a = 0; a < limit; ++a) {
    RatVector xi = critical_value(d, a);
    auto [it, inserted] = seen.try_emplace(xi, a);
    if (!inserted && facet_indices(a) < facet_indices(it->second)) it->second = a;
  }
  if (seen.size() > (std::size_t{1} << d.N)) throw Error("InternalCheck", "critical set exceeds 2^N elements");
  std::vector<CriticalDatum> out;
  for (const auto& [xi, a] : seen) out.push_back(CriticalDatum{xi, a, negative_coordinate_set(d, xi)});
  std::sort(out.begin(), out.end(), [](const CriticalDatum& x, const CriticalDatum& y) {
    Rational nx = dot(x.xi, x.xi), ny = dot(y.xi, y.xi);
    if (nx != ny) return nx < ny;
    return x.xi > y.xi;
  });
  return out;
}

GroupRingElem nonface_product(std::size_t facet_count, FacetSet s) {
  std::vector<IntVector> weights;
  for (auto i : facet_indices(s)) {
    IntVector e(facet_count);
    e.at(i) = 1;
    weights.push_back(std::move(e));
  }
  return euler_class(facet_count, weights);
}

std::vector<GroupRingElem> kernel_generators(const DelzantPolytope& p) {
  std::vector<GroupRingElem> out;
  for (auto s : minimal_nonfaces(p)) out.push_back(nonface_product(p.facet_count(), s));
  return out;
}

std::vector<GroupRingElem> relations_J(const DelzantData& d) {
  Carrier c(d.N);
  std::vector<GroupRingElem> out;
  for (std::size_t j = 0; j < d.n; ++j)
    out.push_back(GroupRingElem::monomial(c, d.beta.row(j)) - GroupRingElem::constant(c, 1));
  return out;
}

Presentation presentation(const DelzantPolytope& p) {
  DelzantData d = build_delzant_data(p);
  Presentation pres;
  pres.generators = d.N;
  pres.nonfaces = minimal_nonfaces(p);
  for (auto s : pres.nonfaces) pres.i_generators.push_back(nonface_product(d.N, s));
  pres.j_generators = relations_J(d);
  for (std::size_t j = 0; j < d.n; ++j) pres.j_exponents.push_back(d.beta.row(j));
  return pres;
}

ReducedPresentation eliminate_J(const Presentation& pres, const DelzantData& d) {
  const IntMatrix h = d.iota.transpose();
  ReducedPresentation out;
  out.rank = d.k;
  for (const auto& g : pres.i_generators) out.relations.push_back(apply_lattice_map(g, h));
  out.j_vanishes = std::all_of(pres.j_generators.begin(), pres.j_generators.end(),
                               [&](const GroupRingElem& g) { return apply_lattice_map(g, h).is_zero(); });
  return out;
}

DualityCheck check_nonface_duality(const DelzantData& d, FacetSet nonface) {
  const FacetSet all = (FacetSet{1} << d.N) - 1;
  DualityCheck out;
  out.nonface = nonface;
  out.xi = critical_value(d, all & ~nonface);
  auto w = weight_pairings(d, out.xi);
  out.zero_on_complement = true;
  out.nonnegative_on_complement = true;
  out.negative_on_nonface = true;
  for (std::size_t i = 0; i < d.N; ++i) {
    if (nonface & (FacetSet{1} << i)) {
      if (!(w[i] < 0)) out.negative_on_nonface = false;
    } else {
      if (w[i] != 0) {
        out.zero_on_complement = false;
        out.nonzero_on_complement.push_back(i);
      }
      if (w[i] < 0) out.nonnegative_on_complement = false;
    }
  }
  return out;
}

std::vector<std::complex<double>> gradient_flow(const DelzantData& d, std::span<const Rational> xi,
                                                std::span<const std::complex<double>> z0, double t) {
  if (z0.size() != d.N) throw Error("DimensionMismatch", "expected one coordinate per facet");
  auto w = weight_pairings(d, xi);
  std::vector<std::complex<double>> out(z0.begin(), z0.end());
  for (std::size_t i = 0; i < d.N; ++i) out[i] *= std::exp(w[i].get_d() * t);
  return out;
}

double morse_value(const DelzantData& d, std::span<const Rational> xi, std::span<const std::complex<double>> z) {
  if (z.size() != d.N) throw Error("DimensionMismatch", "expected one coordinate per facet");
  auto w = weight_pairings(d, xi);
  double value = -dot(d.iota_star_eta, xi).get_d();
  for (std::size_t i = 0; i < d.N; ++i) value += 0.5 * w[i].get_d() * std::norm(z[i]);
  return value;
}

bool FlowReport::passed() const {
  return std::all_of(samples.begin(), samples.end(),
                     [](const FlowSampleResult& s) { return s.monotone && s.hit_time.has_value(); });
}

namespace {

RatVector negated(std::span<const Rational> xi) {
  RatVector out(xi.begin(), xi.end());
  for (auto& x : out) x = -x;
  return out;
}

}  // namespace

std::vector<std::vector<std::complex<double>>> draw_flow_samples(const DelzantData& d, std::span<const Rational> xi,
                                                                 std::size_t count, std::uint64_t seed) {
  auto w = weight_pairings(d, xi);
  const double c = -dot(d.iota_star_eta, xi).get_d();
  const double epsilon = c > 0 ? c / 2 : 0.5;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<std::complex<double>>> out;
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<std::complex<double>> z(d.N);
    for (std::size_t i = 0; i < d.N; ++i) {
      const double wi = w[i].get_d();
      double radius;
      if (wi < 0) {
        radius = 0.05 + 0.45 * unit(rng);
      } else if (wi > 0) {
        // Keep the ascending part of f below epsilon/2 in total.
        radius = unit(rng) * std::sqrt(epsilon / (static_cast<double>(d.N) * wi));
      } else {
        radius = unit(rng);
      }
      z[i] = std::polar(radius, phase(rng));
    }
    out.push_back(std::move(z));
  }
  return out;
}

FlowReport flow_retraction_check(const DelzantData& d, std::span<const Rational> xi,
                                 const std::vector<std::vector<std::complex<double>>>& samples,
                                 const FlowOptions& options) {
  FlowReport report;
  report.xi.assign(xi.begin(), xi.end());
  if (xi.size() != d.k) throw Error("DimensionMismatch", "xi must have rank k");
  if (is_zero(xi)) {
    report.degenerate = true;
    return report;
  }
  report.critical_value = -dot(d.iota_star_eta, xi).get_d();
  report.epsilon = report.critical_value > 0 ? report.critical_value / 2 : 0.5;
  report.descending = negative_coordinate_set(d, xi);
  const RatVector flow_xi = negated(xi);
  const double target = report.critical_value - report.epsilon;
  const double upper = report.critical_value + report.epsilon;

  for (const auto& z : samples) {
    bool off_invariant = false;
    for (auto i : facet_indices(report.descending))
      if (z.at(i) != 0.0) off_invariant = true;
    if (!off_invariant) throw Error("SampleOnInvariantSet", "sample has no descending component");
    const double start = morse_value(d, xi, z);
    if (!(start < upper)) throw Error("SampleOutsideRegion", "sample does not lie in M_c^+");

    FlowSampleResult result;
    result.start = z;
    auto f_at = [&](double t) { return morse_value(d, xi, gradient_flow(d, flow_xi, z, t)); };
    double prev = start;
    double prev_t = 0.0;
    if (start < target) result.hit_time = 0.0;
    for (std::size_t step = 1; step <= options.grid_steps; ++step) {
      const double t = options.t_max * static_cast<double>(step) / static_cast<double>(options.grid_steps);
      const double value = f_at(t);
      if (std::isnan(value) || value > prev + options.tol * std::max(1.0, std::abs(prev))) result.monotone = false;
      if (!result.hit_time && value < target) {
        double lo = prev_t, hi = t;
        while (hi - lo > options.tol) {
          const double mid = 0.5 * (lo + hi);
          if (f_at(mid) < target) hi = mid;
          else lo = mid;
        }
        result.hit_time = hi;
      }
      prev = value;
      prev_t = t;
    }
    report.samples.push_back(std::move(result));
  }
  return report;
}

}  // namespace ktoric
