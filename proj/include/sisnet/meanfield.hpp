#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sisnet/integrator.hpp"
#include "sisnet/strain.hpp"
#include "sisnet/topology.hpp"

namespace sisnet {

/// Fractions of k-infected nodes per island; row-major M x K.
class MeanFieldState {
public:
  MeanFieldState() = default;
  MeanFieldState(std::size_t islands, std::size_t strains, double fill = 0.0)
      : islands_(islands), strains_(strains), y_(islands * strains, fill) {}
  MeanFieldState(std::size_t islands, std::size_t strains, std::vector<double> values);

  std::size_t num_islands() const { return islands_; }
  std::size_t num_strains() const { return strains_; }
  double at(IslandIndex i, StrainIndex k) const { return y_[i * strains_ + k]; }
  double& at(IslandIndex i, StrainIndex k) { return y_[i * strains_ + k]; }
  double island_total(IslandIndex i) const;
  const std::vector<double>& values() const { return y_; }
  std::vector<double>& values() { return y_; }

  /// y >= -slack and per-island totals <= 1 + slack.
  bool in_domain(double slack = 0.0) const;
  double max_abs() const;

  friend bool operator==(const MeanFieldState&, const MeanFieldState&) = default;

private:
  std::size_t islands_ = 0;
  std::size_t strains_ = 0;
  std::vector<double> y_;
};

MeanFieldState fractions_of(const MacroCounts& counts);

/// Effective rates of the limiting ODE with healing normalized to 1:
/// gamma_eff^k_{ji} = gamma^k_{ji} * alpha_{ji} / mu, alpha_{ji} = N_j / N_i.
class MeanFieldParams {
public:
  /// Same microscopic gamma per strain on every adjacent pair, mu = 1.
  static MeanFieldParams uniform(const SuperNetwork& net, std::vector<double> gamma);
  /// From microscopic rates. All strains must share one mu; time in the ODE
  /// runs mu times faster than in the micro model (see time_scale()).
  static MeanFieldParams from_micro(const SuperNetwork& net, const StrainParams& params);

  const SuperNetwork& network() const { return net_; }
  std::size_t num_islands() const { return net_.num_islands(); }
  std::size_t num_strains() const { return strains_; }
  double gamma_eff(StrainIndex k, IslandIndex from, IslandIndex to) const {
    return gamma_[(k * num_islands() + from) * num_islands() + to];
  }
  double alpha(IslandIndex from, IslandIndex to) const;
  /// ODE time per unit of micro time (the common healing rate).
  double time_scale() const { return time_scale_; }

  /// Equal island sizes and one effective rate per strain on every pair.
  bool is_symmetric() const;
  /// Common effective rate of strain k; only meaningful when is_symmetric().
  double symmetric_gamma(StrainIndex k) const;

private:
  MeanFieldParams(SuperNetwork net, std::size_t strains);
  SuperNetwork net_;
  std::size_t strains_;
  std::vector<double> gamma_;  // K x M x M
  double time_scale_ = 1.0;
};

/// dy_ik/dt = (sum_{j~i} gamma_eff^k_{ji} y_jk)(1 - sum_l y_il) - y_ik.
MeanFieldState rhs(const MeanFieldState& state, const MeanFieldParams& params);

struct OdeTrajectory {
  std::vector<double> times;
  std::vector<MeanFieldState> samples;
  IntegratorControl control;
  IntegrationStats stats;
  /// "symmetric" or "unanalyzed regime" (asymmetric sizes or rates).
  std::string regime;
  const MeanFieldState& final_state() const { return samples.back(); }
};

/// Throws IntegrationError on step-size underflow, or when any accepted step
/// leaves the product of simplices by more than 10 * rel_tol.
OdeTrajectory integrate(const MeanFieldParams& params, const MeanFieldState& y0,
                        const std::vector<double>& grid,
                        const IntegratorControl& control = {});
OdeTrajectory integrate(const MeanFieldParams& params, const MeanFieldState& y0,
                        double t_end, const IntegratorControl& control = {});

/// Closed-form solution of y' = d*gamma*y*(1-y) - y.
double reduced_scalar_solution(double degree, double gamma, double y0, double t);

struct ReducedPairTrajectory {
  std::vector<double> times;
  std::vector<double> x;
  std::vector<double> y;
};

/// Two strains on a complete-network-equivalent island:
///   x' = d gx x (1 - x - y) - x,  y' = d gy y (1 - x - y) - y.
ReducedPairTrajectory reduced_bivirus_trajectory(double degree, double gamma_x,
                                                 double gamma_y, double x0, double y0,
                                                 double t_end,
                                                 const IntegratorControl& control = {});

}  // namespace sisnet
