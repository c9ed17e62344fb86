#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sisnet {

class IntegrationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class IntegratorMethod { DormandPrince45, ClassicalRK4 };

std::string to_string(IntegratorMethod m);
IntegratorMethod integrator_method_from_string(const std::string& name);

struct IntegratorControl {
  IntegratorMethod method = IntegratorMethod::DormandPrince45;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double initial_step = 1e-3;
  /// Adaptive steps shrinking below min_step report step-size underflow.
  double min_step = 1e-13;
  /// Step length for ClassicalRK4; shortened to land on grid points.
  double fixed_step = 1e-3;
  /// Grid intervals used by the t_end overloads.
  std::size_t samples = 200;
};

struct IntegrationStats {
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

using OdeState = std::vector<double>;
using OdeRhs = std::function<void(const OdeState& x, OdeState& dxdt, double t)>;
/// Called after every accepted step; throw IntegrationError to abort.
using StepGuard = std::function<void(const OdeState& x, double t)>;

/// Integrates x' = f(x, t) from t = 0 and records x at each grid time.
/// Grid must be non-negative and strictly increasing.
std::vector<OdeState> integrate_system(const OdeRhs& rhs, OdeState x0,
                                       const std::vector<double>& grid,
                                       const IntegratorControl& control,
                                       const StepGuard& guard = {},
                                       IntegrationStats* stats = nullptr);

}  // namespace sisnet
