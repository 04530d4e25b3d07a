#pragma once

// Kirwan-kernel data for the linear torus action behind a Delzant polytope:
// the exact sequence 0 -> Z^k -> Z^N -> Z^n -> 0, the moment map, the finite
// critical set Z of |Phi|^2, and the K-theory presentation Z[x^±]/(I + J).

#include "ktoric/polytope.hpp"
#include "ktoric/ring.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace ktoric {

struct DelzantData {
  std::size_t N = 0;  // facets
  std::size_t n = 0;  // polytope dimension
  std::size_t k = 0;  // N - n, rank of the subtorus
  IntMatrix beta;     // n×N, column i is the facet normal a_i
  IntMatrix iota;     // N×k, columns form a Hermite-reduced basis of ker(beta)
  std::vector<IntVector> alphas;  // alpha_i = row i of iota
  RatVector eta;                  // facet offsets
  RatVector iota_star_eta;        // iota^T eta
};

DelzantData build_delzant_data(const DelzantPolytope& p);

/// Phi(z) = -1/2 sum |z_i|^2 alpha_i + iota^* eta; depends on z only through |z_i|^2.
RatVector moment_map_value(const DelzantData& d, std::span<const Rational> squared_moduli);

/// Exact minimum-norm point of { shift + sum c_i gens_i : c_i >= 0 }.
RatVector nearest_point_shifted_cone(const std::vector<RatVector>& gens, const RatVector& shift);

/// Whether `point` is a nonnegative combination of `gens`.
bool cone_contains(const std::vector<RatVector>& gens, const RatVector& point);

/// One element xi_A of the critical set Z.
/// `subset` is the lexicographically smallest A producing xi; `negative_set` is
/// S = { j : <alpha_j, xi> < 0 }, the coordinates spanning the negative normal
/// directions. Through S this also carries the toric shadow of the sets
/// M_xi = {<mu, xi> <= 0} and the ideal K_xi, which is generated by
/// prod_{i in S} (1 - x_i^{-1}).
struct CriticalDatum {
  RatVector xi;
  FacetSet subset = 0;
  FacetSet negative_set = 0;
};

/// xi_A := nearest point to the origin of cone{alpha_i : i in A} - iota^* eta.
RatVector critical_value(const DelzantData& d, FacetSet subset);

/// All distinct xi_A over subsets A of {1..N}; ordered by norm, then lexicographically.
std::vector<CriticalDatum> critical_values_Z(const DelzantData& d);

FacetSet negative_coordinate_set(const DelzantData& d, std::span<const Rational> xi);

/// Pairing <alpha_i, xi> for every i.
RatVector weight_pairings(const DelzantData& d, std::span<const Rational> xi);

struct Presentation {
  std::size_t generators = 0;
  std::vector<GroupRingElem> i_generators;
  std::vector<FacetSet> nonfaces;  // i_generators[j] comes from nonfaces[j]
  std::vector<GroupRingElem> j_generators;
  std::vector<IntVector> j_exponents;  // beta^*(m_j), so j_generators[j] = x^{j_exponents[j]} - 1
};

/// prod_{i in S} (1 - x_i^{-1}) on the rank-N lattice.
GroupRingElem nonface_product(std::size_t facet_count, FacetSet s);

std::vector<GroupRingElem> kernel_generators(const DelzantPolytope& p);
std::vector<GroupRingElem> relations_J(const DelzantData& d);
Presentation presentation(const DelzantPolytope& p);

/// The presentation after solving the lattice relations J: the ring becomes
/// Z[Z^k] via x_i -> e^{alpha_i} and I maps to prod_{i in S} (1 - e^{-alpha_i}).
struct ReducedPresentation {
  std::size_t rank = 0;
  std::vector<GroupRingElem> relations;
  bool j_vanishes = false;  // every J generator maps to zero
};

ReducedPresentation eliminate_J(const Presentation& pres, const DelzantData& d);

/// Outcome of the non-face / critical-value duality test for one minimal non-face.
struct DualityCheck {
  FacetSet nonface = 0;
  RatVector xi;               // xi_A for A = complement of the non-face
  bool zero_on_complement = false;      // <alpha_i, xi> = 0 for all i in A
  bool nonnegative_on_complement = false;  // <alpha_i, xi> >= 0 for all i in A
  bool negative_on_nonface = false;     // <alpha_i, xi> < 0 for all i in S
  std::vector<std::size_t> nonzero_on_complement;  // offending i in A
};

DualityCheck check_nonface_duality(const DelzantData& d, FacetSet nonface);

/// Negative gradient flow of the xi-component of Phi: z_i(t) = z_i(0) exp(<alpha_i, xi> t).
std::vector<std::complex<double>> gradient_flow(const DelzantData& d, std::span<const Rational> xi,
                                                std::span<const std::complex<double>> z0, double t);

/// Morse function used by the retraction check, oriented so that xi_A lies in its
/// image cone: f(z) = 1/2 sum <alpha_i, xi> |z_i|^2 - <iota^* eta, xi>.
/// Its critical value at the origin is c = -<iota^* eta, xi>; it descends along
/// gradient_flow(d, -xi, z0, t).
double morse_value(const DelzantData& d, std::span<const Rational> xi, std::span<const std::complex<double>> z);

struct FlowOptions {
  double t_max = 50.0;
  double tol = 1e-9;
  std::size_t grid_steps = 100;
};

struct FlowSampleResult {
  std::vector<std::complex<double>> start;
  std::optional<double> hit_time;  // first t with f(z(t)) < c - epsilon
  bool monotone = true;
};

struct FlowReport {
  RatVector xi;
  bool degenerate = false;  // xi = 0: f is constant and there is nothing to retract
  double critical_value = 0.0;
  double epsilon = 0.0;
  FacetSet descending = 0;  // S: coordinates along which f decreases
  std::vector<FlowSampleResult> samples;
  bool passed() const;
};

/// Samples in M_c^+ = {f < c + epsilon} with every descending coordinate nonzero.
std::vector<std::vector<std::complex<double>>> draw_flow_samples(const DelzantData& d, std::span<const Rational> xi,
                                                                 std::size_t count, std::uint64_t seed);

/// Checks that each sample flows below c - epsilon within t_max along a nonincreasing path.
/// Throws SampleOnInvariantSet when all descending coordinates of a sample vanish.
FlowReport flow_retraction_check(const DelzantData& d, std::span<const Rational> xi,
                                 const std::vector<std::vector<std::complex<double>>>& samples,
                                 const FlowOptions& options = {});

}  // namespace ktoric
