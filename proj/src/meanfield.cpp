#include "sisnet/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sisnet/micro_sim.hpp"

namespace sisnet {

MeanFieldState::MeanFieldState(std::size_t islands, std::size_t strains,
                               std::vector<double> values)
    : islands_(islands), strains_(strains), y_(std::move(values)) {
  if (y_.size() != islands * strains) {
    throw DimensionError("state must hold islands x strains values");
  }
}

double MeanFieldState::island_total(IslandIndex i) const {
  const double* row = y_.data() + i * strains_;
  return std::accumulate(row, row + strains_, 0.0);
}

bool MeanFieldState::in_domain(double slack) const {
  for (std::size_t i = 0; i < islands_; ++i) {
    for (std::size_t k = 0; k < strains_; ++k) {
      if (!(at(i, k) >= -slack)) return false;
    }
    if (!(island_total(i) <= 1.0 + slack)) return false;
  }
  return true;
}

double MeanFieldState::max_abs() const {
  double m = 0.0;
  for (double v : y_) m = std::max(m, std::abs(v));
  return m;
}

MeanFieldState fractions_of(const MacroCounts& counts) {
  MeanFieldState out(counts.num_islands(), counts.num_strains());
  for (std::size_t i = 0; i < counts.num_islands(); ++i) {
    for (std::size_t k = 0; k < counts.num_strains(); ++k) {
      out.at(i, k) = counts.fraction(i, k);
    }
  }
  return out;
}

MeanFieldParams::MeanFieldParams(SuperNetwork net, std::size_t strains)
    : net_(std::move(net)),
      strains_(strains),
      gamma_(strains * net_.num_islands() * net_.num_islands(), 0.0) {}

double MeanFieldParams::alpha(IslandIndex from, IslandIndex to) const {
  return static_cast<double>(net_.island_size(from)) /
         static_cast<double>(net_.island_size(to));
}

MeanFieldParams MeanFieldParams::uniform(const SuperNetwork& net,
                                         std::vector<double> gamma) {
  std::vector<double> mu(gamma.size(), 1.0);
  return from_micro(net, StrainParams::uniform(net, std::move(gamma), std::move(mu)));
}

MeanFieldParams MeanFieldParams::from_micro(const SuperNetwork& net,
                                            const StrainParams& micro) {
  if (micro.num_islands() != net.num_islands()) {
    throw DimensionError("strain parameters were built for another network");
  }
  const double mu = micro.mu(0);
  for (std::size_t k = 1; k < micro.num_strains(); ++k) {
    if (micro.mu(k) != mu) {
      throw std::invalid_argument(
          "mean-field normalization needs a common healing rate across strains");
    }
  }
  MeanFieldParams p(net, micro.num_strains());
  p.time_scale_ = mu;
  const std::size_t m = net.num_islands();
  for (std::size_t k = 0; k < micro.num_strains(); ++k) {
    for (std::size_t from = 0; from < m; ++from) {
      for (auto to : net.neighbors(from)) {
        p.gamma_[(k * m + from) * m + to] =
            micro.gamma(k, from, to) * p.alpha(from, to) / mu;
      }
    }
  }
  return p;
}

bool MeanFieldParams::is_symmetric() const {
  if (!net_.has_uniform_sizes()) return false;
  const std::size_t m = num_islands();
  for (std::size_t k = 0; k < strains_; ++k) {
    const double ref = symmetric_gamma(k);
    for (std::size_t from = 0; from < m; ++from) {
      for (auto to : net_.neighbors(from)) {
        if (gamma_eff(k, from, to) != ref) return false;
      }
    }
  }
  return true;
}

double MeanFieldParams::symmetric_gamma(StrainIndex k) const {
  for (std::size_t from = 0; from < num_islands(); ++from) {
    const auto& nbrs = net_.neighbors(from);
    if (!nbrs.empty()) return gamma_eff(k, from, nbrs.front());
  }
  return 0.0;
}

namespace {

void rhs_into(const std::vector<double>& y, std::vector<double>& dy,
              const MeanFieldParams& params) {
  const std::size_t m = params.num_islands();
  const std::size_t strains = params.num_strains();
  const auto& net = params.network();
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = y.data() + i * strains;
    const double free = 1.0 - std::accumulate(row, row + strains, 0.0);
    for (std::size_t k = 0; k < strains; ++k) {
      double pressure = 0.0;
      for (auto j : net.neighbors(i)) {
        pressure += params.gamma_eff(k, j, i) * y[j * strains + k];
      }
      dy[i * strains + k] = pressure * free - row[k];
    }
  }
}

void check_state(const MeanFieldState& s, const MeanFieldParams& params) {
  if (s.num_islands() != params.num_islands() || s.num_strains() != params.num_strains()) {
    throw DimensionError("state dimensions do not match the mean-field parameters");
  }
}

}  // namespace

MeanFieldState rhs(const MeanFieldState& state, const MeanFieldParams& params) {
  check_state(state, params);
  MeanFieldState out(state.num_islands(), state.num_strains());
  rhs_into(state.values(), out.values(), params);
  return out;
}

OdeTrajectory integrate(const MeanFieldParams& params, const MeanFieldState& y0,
                        const std::vector<double>& grid,
                        const IntegratorControl& control) {
  check_state(y0, params);
  if (!y0.in_domain()) {
    throw std::invalid_argument("initial state outside the product of simplices");
  }
  const std::size_t m = y0.num_islands();
  const std::size_t strains = y0.num_strains();
  const double slack = 10.0 * control.rel_tol;

  OdeRhs f = [&params](const OdeState& x, OdeState& dx, double) {
    rhs_into(x, dx, params);
  };
  StepGuard guard = [&](const OdeState& x, double t) {
    MeanFieldState s(m, strains, x);
    if (!s.in_domain(slack)) {
      std::ostringstream msg;
      msg << "state left the invariant domain at t=" << t
          << " (integrator misconfigured?)";
      throw IntegrationError(msg.str());
    }
  };

  OdeTrajectory out;
  out.times = grid;
  out.control = control;
  out.regime = params.is_symmetric() ? "symmetric" : "unanalyzed regime";
  auto raw = integrate_system(f, y0.values(), grid, control, guard, &out.stats);
  out.samples.reserve(raw.size());
  for (auto& x : raw) out.samples.emplace_back(m, strains, std::move(x));
  return out;
}

OdeTrajectory integrate(const MeanFieldParams& params, const MeanFieldState& y0,
                        double t_end, const IntegratorControl& control) {
  return integrate(params, y0, uniform_grid(t_end, control.samples), control);
}

double reduced_scalar_solution(double degree, double gamma, double y0, double t) {
  if (y0 == 0.0) return 0.0;
  const double b = degree * gamma;
  const double a = b - 1.0;
  if (a == 0.0) return y0 / (1.0 + b * y0 * t);
  if (a > 0.0) {
    // Divide through by e^{at} so large t stays finite.
    return y0 / (std::exp(-a * t) - b * y0 * std::expm1(-a * t) / a);
  }
  return y0 * std::exp(a * t) / (1.0 + b * y0 * std::expm1(a * t) / a);
}

ReducedPairTrajectory reduced_bivirus_trajectory(double degree, double gamma_x,
                                                 double gamma_y, double x0, double y0,
                                                 double t_end,
                                                 const IntegratorControl& control) {
  if (x0 < 0.0 || y0 < 0.0 || x0 + y0 > 1.0) {
    throw std::invalid_argument("reduced initial state must lie in the simplex");
  }
  const double bx = degree * gamma_x;
  const double by = degree * gamma_y;
  OdeRhs f = [bx, by](const OdeState& s, OdeState& ds, double) {
    const double free = 1.0 - s[0] - s[1];
    ds[0] = bx * s[0] * free - s[0];
    ds[1] = by * s[1] * free - s[1];
  };
  const double slack = 10.0 * control.rel_tol;
  StepGuard guard = [slack](const OdeState& s, double t) {
    if (s[0] < -slack || s[1] < -slack || s[0] + s[1] > 1.0 + slack) {
      throw IntegrationError("reduced pair left the simplex at t=" + std::to_string(t));
    }
  };
  ReducedPairTrajectory out;
  out.times = uniform_grid(t_end, control.samples);
  auto raw = integrate_system(f, {x0, y0}, out.times, control, guard);
  for (const auto& s : raw) {
    out.x.push_back(s[0]);
    out.y.push_back(s[1]);
  }
  return out;
}

}  // namespace sisnet
