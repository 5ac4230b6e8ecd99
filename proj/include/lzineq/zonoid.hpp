#pragma once

// Lift zonoids of discrete measures and their comparison with the lift
// zonoid of the centred Gaussian N(0, c^2 I).
//
// The lift zonoid of nu is the set of points (E g, E g X) over measurable
// g with values in [0, 1]. Its support function at (t, u) is
// E (t + <X, u>)_+, and its section at height alpha has support
// M(alpha, u) in direction u. For N(0, c^2 I) the sections are balls of
// radius c * I(alpha), so containment is checked one direction at a time.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lzineq/measure.hpp"

namespace lzineq {

struct LiftSupportQuery {
  double t = 0.0;
  std::vector<double> u;
};

/// sum_i w_i max(0, t + <x_i, u>).
double lift_support(const DiscreteMeasure& nu, const LiftSupportQuery& q);

/// E (t + c <Z, u>)_+ for standard normal Z, i.e. s (a Phi(a) + phi(a))
/// with s = c |u|, a = t / s.
double lift_support_gaussian(double c, const LiftSupportQuery& q);

/// Concave profile alpha -> M(alpha, u) for one direction.
///
/// Atoms are sorted by <x_i, u> descending (ties by index) and the mass
/// alpha is filled greedily, with a fractional share on the last atom.
/// Piecewise linear with kinks at the cumulative weights.
class SectionProfile {
 public:
  SectionProfile(const DiscreteMeasure& nu, std::span<const double> u);

  double operator()(double alpha) const;
  /// Cumulative weights in greedy order; the last entry is 1 up to rounding.
  std::span<const double> kinks() const noexcept { return cum_weight_; }

 private:
  std::vector<double> proj_;
  std::vector<double> cum_weight_;
  std::vector<double> cum_value_;
};

/// M(alpha, u) = sup { <E g x, u> : 0 <= g <= 1, E g = alpha }.
double section_extremum(const DiscreteMeasure& nu, double alpha, std::span<const double> u);

struct OrderOptions {
  std::size_t n_dirs = 64;
  std::size_t n_alphas = 512;
  /// Also test at the profile kinks. For discrete laws this makes the
  /// check exact per direction, since M / I is maximized at a kink.
  bool include_kinks = false;
  double tol_order = 1e-9;
  std::uint64_t seed = 0;
};

struct OrderWitness {
  double alpha;
  std::vector<double> u;
};

struct OrderCertificate {
  bool dominated = true;
  /// max over tested (alpha, u) of M(alpha, u) / (c I(alpha) |u|).
  double worst_ratio = 0.0;
  std::optional<OrderWitness> witness;
  double c = 0.0;
  double tol_order = 0.0;
};

/// Unit directions used by the order tests: {+1, -1} in one dimension, a
/// Halton point set pushed through the normal quantile otherwise.
std::vector<std::vector<double>> sphere_directions(std::size_t dim, std::size_t count,
                                                   std::uint64_t seed = 0);

/// Lift-zonoid containment of nu in the body of N(0, c^2 I), tested on the
/// alpha grid k / n_alphas, 0 < k < n_alphas.
OrderCertificate order_check(const DiscreteMeasure& nu, double c, const OrderOptions& opts = {});

/// Smallest c for which order_check passes on the same (alpha, u) set.
double minimal_dominating_c(const DiscreteMeasure& nu, const OrderOptions& opts = {});

struct MomentBound {
  double eps;
  /// Bracket 1/sqrt(6 eps) <= c <= 4/sqrt(eps) on the Gaussian scale.
  double c_lower;
  double c_upper;
};

/// Largest eps with sup_{|h| = 1} E exp(eps <X, h>^2) <= 2, found by
/// doubling then bisection. Throws heavy_tail_error when no eps > 1e-12
/// qualifies.
MomentBound eps_moment_search(const DiscreteMeasure& nu, std::size_t n_dirs = 64);
/// Same for the image of a grid density under the map v given at the nodes.
MomentBound eps_moment_search(const GridDensity1D& density, std::span<const double> v);

}  // namespace lzineq
