#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sisnet/meanfield.hpp"
#include "sisnet/topology.hpp"

namespace sisnet {

/// The inputs fall outside the hypotheses under which a classification or a
/// comparison result is known to hold.
class HypothesisError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// max(0, 1 - 1/(d*gamma)).
double equilibrium_fraction(double degree, double gamma);

enum class Verdict { Extinction, Persistence };

struct Classification {
  Verdict verdict = Verdict::Extinction;
  std::optional<StrainIndex> strain;  // surviving strain on Persistence
  double level = 0.0;                 // 1 - 1/(d*gamma*) on Persistence, else 0
  double threshold = 0.0;             // d * gamma of the strongest strain
  std::size_t degree = 0;
};

/// Single strain on a connected d-regular symmetric network: persistence at
/// 1 - 1/(d*gamma) iff d*gamma > 1.
Classification classify_single(const SuperNetwork& net, double gamma);

/// Several strains, all initially present: only the strictly strongest can
/// survive. Ties for the maximum rate are refused.
Classification classify_multi(const SuperNetwork& net, const std::vector<double>& gammas);

struct DominanceViolation {
  double time;
  IslandIndex island;
  StrainIndex strain;
  double magnitude;
};

struct DominanceReport {
  bool holds = true;
  std::optional<DominanceViolation> first_violation;
  std::size_t samples_checked = 0;
};

/// Integrates z_low and z_high with one integrator configuration and checks
/// on every grid time that the initial ordering persists:
///   K = 1: y_low <= y_high;
///   K = 2: strain 0 ordered as y_low <= y_high, strain 1 as x_low >= x_high.
/// Initial states that are not ordered this way are refused.
DominanceReport check_dominance(const MeanFieldParams& params,
                                const MeanFieldState& z_low,
                                const MeanFieldState& z_high,
                                const std::vector<double>& grid, double tol,
                                const IntegratorControl& control = {});

/// Normalized Taylor coefficients y^{(n)}(0)/n! of the mean-field flow.
class TaylorTable {
public:
  TaylorTable(std::size_t islands, std::size_t strains, std::size_t max_order);

  std::size_t max_order() const { return max_order_; }
  std::size_t num_islands() const { return islands_; }
  std::size_t num_strains() const { return strains_; }
  double at(std::size_t order, IslandIndex i, StrainIndex k) const {
    return c_[(order * islands_ + i) * strains_ + k];
  }
  double& at(std::size_t order, IslandIndex i, StrainIndex k) {
    return c_[(order * islands_ + i) * strains_ + k];
  }
  /// Coefficients of one (island, strain) cell, orders 0..max_order.
  std::vector<double> series(IslandIndex i, StrainIndex k) const;
  /// Lowest order >= 1 whose coefficient is not exactly 0.0.
  std::optional<std::size_t> first_nonzero_order(IslandIndex i, StrainIndex k) const;
  /// Degree-`degree` Taylor polynomial evaluated at t = h.
  MeanFieldState evaluate(std::size_t degree, double h) const;

private:
  std::size_t islands_, strains_, max_order_;
  std::vector<double> c_;
};

inline constexpr std::size_t kMaxTaylorOrder = 12;

/// Cauchy-product recursion on the polynomial right-hand side. Order 1 equals
/// rhs(y0) bit for bit. max_order must be in [1, kMaxTaylorOrder].
TaylorTable taylor_coefficients(const MeanFieldParams& params, const MeanFieldState& y0,
                                std::size_t max_order);

enum class LocalSign { LocallyPositive, LocallyNegative, Zero, Inconclusive };

std::string to_string(LocalSign s);

/// Sign of f just after T from its Taylor coefficients at T: the first
/// coefficient above `threshold` in magnitude decides. All coefficients at or
/// below threshold gives Zero. A nonzero sub-threshold coefficient ahead of
/// the deciding one gives Inconclusive.
LocalSign sign_probe(std::span<const double> coeffs, double threshold = 1e-12);

/// w(y) = (y1 - y2)^2 / 2 for a two-island single-strain state.
double lyapunov_error(const MeanFieldState& y);

}  // namespace sisnet
