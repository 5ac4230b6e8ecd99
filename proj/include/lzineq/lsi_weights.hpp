#pragma once

// Log-Sobolev weights for one-dimensional densities.
//
//   kbar(x) = (1/p(x)) int_x^inf (y - m) p(y) dy,   m the mean,
//   khat(x) = I(F(x)) / p(x),
//
// with divergences x - m and Phi^{-1}(F(x)) respectively. Infima and suprema
// are taken over the trusted part of the grid window (see trusted_window).

#include <cstddef>
#include <span>
#include <vector>

#include "lzineq/measure.hpp"

namespace lzineq::lsi {

enum class TailSide {
  /// Upper integral right of the mean, minus the lower integral left of it.
  automatic,
  upper,
  lower,
};

std::vector<double> kbar(const GridDensity1D& density, TailSide side = TailSide::automatic);
std::vector<double> khat(const GridDensity1D& density);

enum class WeightKind { kbar, khat };

/// Inclusive node range [first, last].
struct Window {
  std::size_t first = 0;
  std::size_t last = 0;
};

/// Nodes whose weights are unaffected by cutting the law off at the window.
///
/// An edge whose density is below 1e-10 of the peak counts as a truncated
/// tail; a node is trusted when every truncated edge density is below 1e-8
/// of its own density. Edges that are not truncated (true support ends)
/// impose nothing.
Window trusted_window(const GridDensity1D& density);

struct LsiConstants {
  WeightKind kind = WeightKind::kbar;
  double alpha = 0.0;
  double beta = 0.0;
  /// Ent f^2 <= 2 c_weighted E (K f')^2 and Ent f^2 <= 2 c_classical E (f')^2.
  double c_weighted = 0.0;
  double c_classical = 0.0;
  bool available = false;
  /// The infimum / supremum sits at a trusted-window edge and is still moving.
  bool inf_at_edge = false;
  bool sup_at_edge = false;
  double x_lo = 0.0;
  double x_hi = 0.0;
};

/// For kbar, alpha and beta are the inf and sup of the weight; for khat the
/// weighted inequality holds with alpha = 1 and beta is sup khat.
/// alpha <= 0 leaves `available` false and the constants NaN.
LsiConstants lsi_constants(const GridDensity1D& density, WeightKind kind);
LsiConstants lsi_constants(std::span<const double> K, const GridDensity1D& density,
                           WeightKind kind);

/// I_mu(p) = p(F^{-1}(p)).
double iso_function(const GridDensity1D& density, double p);

/// sup_p (I(p) / I_mu(p))^2 over n_probs equally spaced probabilities
/// inside the trusted window.
double chat_ratio_form(const GridDensity1D& density, std::size_t n_probs = 20000);

struct BakryEmery {
  /// min over the interior of K v'.
  double alpha_max = 0.0;
  /// min over the interior of (2ab' + 2bb'' - 4a'b - (b')^2) / (4b).
  double alpha_gamma2 = 0.0;
  /// a = 2KK' + K^2 v_mu at every node.
  std::vector<double> a_coeff;
  /// 2ab' + 2bb'' - 4a'b - (b')^2 - 4 alpha_max b; zero outside the interior.
  std::vector<double> gamma2_residual;
  Window interior;
};

/// Throws domain_error when K <= 0 somewhere in the interior (trusted window
/// less two nodes on each side).
BakryEmery bakry_emery_check(const WeightPair& pair, const GridDensity1D& density);

}  // namespace lzineq::lsi
