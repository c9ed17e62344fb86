#include "sisnet/integrator.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace sisnet {

namespace odeint = boost::numeric::odeint;

std::string to_string(IntegratorMethod m) {
  switch (m) {
    case IntegratorMethod::DormandPrince45:
      return "dopri45";
    case IntegratorMethod::ClassicalRK4:
      return "rk4";
  }
  return "unknown";
}

IntegratorMethod integrator_method_from_string(const std::string& name) {
  if (name == "dopri45") return IntegratorMethod::DormandPrince45;
  if (name == "rk4") return IntegratorMethod::ClassicalRK4;
  throw std::invalid_argument("unknown integrator method '" + name +
                              "' (expected dopri45 or rk4)");
}

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("integration grid is empty");
  if (grid.front() < 0.0) throw std::invalid_argument("integration grid starts before 0");
  for (std::size_t s = 1; s < grid.size(); ++s) {
    if (!(grid[s] > grid[s - 1])) {
      throw std::invalid_argument("integration grid must increase strictly");
    }
  }
}

std::vector<OdeState> run_adaptive(const OdeRhs& rhs, OdeState x,
                                   const std::vector<double>& grid,
                                   const IntegratorControl& control,
                                   const StepGuard& guard, IntegrationStats& stats) {
  auto stepper = odeint::make_controlled(control.abs_tol, control.rel_tol,
                                         odeint::runge_kutta_dopri5<OdeState>());
  auto system = [&rhs](const OdeState& s, OdeState& ds, double t) { rhs(s, ds, t); };

  std::vector<OdeState> out;
  out.reserve(grid.size());
  double t = 0.0;
  double dt = control.initial_step;
  for (double target : grid) {
    while (t < target) {
      const bool clamped = t + dt >= target;
      const double saved = dt;
      double trial = clamped ? target - t : dt;
      const double t_before = t;
      const auto result = stepper.try_step(system, x, t, trial);
      if (result == odeint::success) {
        ++stats.accepted_steps;
        // A clamped step keeps the previous step-size estimate.
        dt = clamped ? std::max(saved, trial) : trial;
        if (clamped) t = target;
        if (guard) guard(x, t);
      } else {
        ++stats.rejected_steps;
        dt = trial;
        t = t_before;
        if (dt < control.min_step) {
          throw IntegrationError("step-size underflow at t=" + std::to_string(t) +
                                 " (dt=" + std::to_string(dt) + ")");
        }
      }
    }
    out.push_back(x);
  }
  return out;
}

std::vector<OdeState> run_fixed(const OdeRhs& rhs, OdeState x,
                                const std::vector<double>& grid,
                                const IntegratorControl& control,
                                const StepGuard& guard, IntegrationStats& stats) {
  if (!(control.fixed_step > 0.0)) {
    throw std::invalid_argument("fixed step must be positive");
  }
  odeint::runge_kutta4<OdeState> stepper;
  auto system = [&rhs](const OdeState& s, OdeState& ds, double t) { rhs(s, ds, t); };

  std::vector<OdeState> out;
  out.reserve(grid.size());
  double t = 0.0;
  for (double target : grid) {
    const double span = target - t;
    if (span > 0.0) {
      const auto n = static_cast<std::size_t>(std::ceil(span / control.fixed_step - 1e-9));
      const double h = span / static_cast<double>(n);
      for (std::size_t s = 0; s < n; ++s) {
        stepper.do_step(system, x, t, h);
        t = (s + 1 == n) ? target : t + h;
        ++stats.accepted_steps;
        if (guard) guard(x, t);
      }
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace

std::vector<OdeState> integrate_system(const OdeRhs& rhs, OdeState x0,
                                       const std::vector<double>& grid,
                                       const IntegratorControl& control,
                                       const StepGuard& guard,
                                       IntegrationStats* stats) {
  check_grid(grid);
  IntegrationStats local;
  auto& s = stats ? *stats : local;
  if (control.method == IntegratorMethod::ClassicalRK4) {
    return run_fixed(rhs, std::move(x0), grid, control, guard, s);
  }
  return run_adaptive(rhs, std::move(x0), grid, control, guard, s);
}

}  // namespace sisnet
