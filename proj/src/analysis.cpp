#include "sisnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sisnet {

double equilibrium_fraction(double degree, double gamma) {
  if (!(degree >= 1.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("equilibrium_fraction needs d >= 1 and gamma > 0");
  }
  return std::max(0.0, 1.0 - 1.0 / (degree * gamma));
}

namespace {

std::size_t require_regular_connected(const SuperNetwork& net) {
  if (!net.is_connected()) {
    throw HypothesisError("supernetwork is disconnected; no global attractor result applies");
  }
  const auto d = net.regular_degree();
  if (!d) throw HypothesisError("supernetwork is not regular");
  return *d;
}

}  // namespace

Classification classify_single(const SuperNetwork& net, double gamma) {
  return classify_multi(net, {gamma});
}

Classification classify_multi(const SuperNetwork& net, const std::vector<double>& gammas) {
  const std::size_t d = require_regular_connected(net);
  if (gammas.empty()) throw std::invalid_argument("no strains given");
  for (double g : gammas) {
    if (!(g > 0.0)) throw std::invalid_argument("infection rates must be positive");
  }
  const auto best = std::max_element(gammas.begin(), gammas.end());
  if (std::count(gammas.begin(), gammas.end(), *best) > 1) {
    throw HypothesisError(
        "outside theorem hypotheses: the maximal infection rate is shared by several strains");
  }

  Classification c;
  c.degree = d;
  c.threshold = static_cast<double>(d) * *best;
  if (c.threshold > 1.0) {
    c.verdict = Verdict::Persistence;
    c.strain = static_cast<StrainIndex>(best - gammas.begin());
    c.level = 1.0 - 1.0 / c.threshold;
  }
  return c;
}

DominanceReport check_dominance(const MeanFieldParams& params,
                                const MeanFieldState& z_low,
                                const MeanFieldState& z_high,
                                const std::vector<double>& grid, double tol,
                                const IntegratorControl& control) {
  const std::size_t strains = params.num_strains();
  if (strains != 1 && strains != 2) {
    throw HypothesisError("dominance comparison is defined for one or two strains");
  }
  // +1: low below high; -1: low above high.
  const auto orientation = [](StrainIndex k) { return k == 0 ? 1.0 : -1.0; };
  for (std::size_t i = 0; i < z_low.num_islands(); ++i) {
    for (std::size_t k = 0; k < strains; ++k) {
      if (orientation(k) * (z_high.at(i, k) - z_low.at(i, k)) < 0.0) {
        throw HypothesisError("initial conditions are not ordered as the comparison requires");
      }
    }
  }

  const auto low = integrate(params, z_low, grid, control);
  const auto high = integrate(params, z_high, grid, control);
  DominanceReport report;
  for (std::size_t s = 0; s < grid.size(); ++s) {
    for (std::size_t i = 0; i < z_low.num_islands(); ++i) {
      for (std::size_t k = 0; k < strains; ++k) {
        const double gap =
            orientation(k) * (high.samples[s].at(i, k) - low.samples[s].at(i, k));
        if (gap < -tol && report.holds) {
          report.holds = false;
          report.first_violation = DominanceViolation{grid[s], i, k, -gap};
        }
      }
    }
    ++report.samples_checked;
  }
  return report;
}

TaylorTable::TaylorTable(std::size_t islands, std::size_t strains, std::size_t max_order)
    : islands_(islands),
      strains_(strains),
      max_order_(max_order),
      c_((max_order + 1) * islands * strains, 0.0) {}

std::vector<double> TaylorTable::series(IslandIndex i, StrainIndex k) const {
  std::vector<double> out(max_order_ + 1);
  for (std::size_t n = 0; n <= max_order_; ++n) out[n] = at(n, i, k);
  return out;
}

std::optional<std::size_t> TaylorTable::first_nonzero_order(IslandIndex i,
                                                            StrainIndex k) const {
  for (std::size_t n = 1; n <= max_order_; ++n) {
    if (at(n, i, k) != 0.0) return n;
  }
  return std::nullopt;
}

MeanFieldState TaylorTable::evaluate(std::size_t degree, double h) const {
  if (degree > max_order_) throw std::out_of_range("Taylor degree beyond table");
  MeanFieldState out(islands_, strains_);
  for (std::size_t i = 0; i < islands_; ++i) {
    for (std::size_t k = 0; k < strains_; ++k) {
      double acc = 0.0;  // Horner
      for (std::size_t n = degree + 1; n-- > 0;) acc = acc * h + at(n, i, k);
      out.at(i, k) = acc;
    }
  }
  return out;
}

TaylorTable taylor_coefficients(const MeanFieldParams& params, const MeanFieldState& y0,
                                std::size_t max_order) {
  if (max_order < 1 || max_order > kMaxTaylorOrder) {
    throw std::out_of_range("Taylor order must lie in [1, " +
                            std::to_string(kMaxTaylorOrder) + "]");
  }
  if (y0.num_islands() != params.num_islands() || y0.num_strains() != params.num_strains()) {
    throw DimensionError("state dimensions do not match the mean-field parameters");
  }
  const std::size_t m = params.num_islands();
  const std::size_t strains = params.num_strains();
  const auto& net = params.network();

  TaylorTable table(m, strains, max_order);
  // pressure[n][i][k] = sum_{j~i} gamma_eff^k_{ji} c^{(n)}_{jk}
  // occupancy[n][i]   = sum_l c^{(n)}_{il}
  std::vector<std::vector<double>> pressure(max_order), occupancy(max_order);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < strains; ++k) table.at(0, i, k) = y0.at(i, k);
  }

  for (std::size_t n = 0; n < max_order; ++n) {
    pressure[n].assign(m * strains, 0.0);
    occupancy[n].assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      double occ = 0.0;
      for (std::size_t k = 0; k < strains; ++k) {
        occ += table.at(n, i, k);
        double p = 0.0;
        for (auto j : net.neighbors(i)) p += params.gamma_eff(k, j, i) * table.at(n, j, k);
        pressure[n][i * strains + k] = p;
      }
      occupancy[n][i] = occ;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const double free = 1.0 - occupancy[0][i];
      for (std::size_t k = 0; k < strains; ++k) {
        double v = pressure[n][i * strains + k] * free;
        for (std::size_t q = 1; q <= n; ++q) {
          v -= occupancy[q][i] * pressure[n - q][i * strains + k];
        }
        v -= table.at(n, i, k);
        table.at(n + 1, i, k) = v / static_cast<double>(n + 1);
      }
    }
  }
  return table;
}

std::string to_string(LocalSign s) {
  switch (s) {
    case LocalSign::LocallyPositive:
      return "locally_positive";
    case LocalSign::LocallyNegative:
      return "locally_negative";
    case LocalSign::Zero:
      return "zero";
    case LocalSign::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

LocalSign sign_probe(std::span<const double> coeffs, double threshold) {
  if (coeffs.empty()) throw std::invalid_argument("sign_probe needs at least one coefficient");
  bool noise = false;
  for (double c : coeffs) {
    if (std::abs(c) > threshold) {
      if (noise) return LocalSign::Inconclusive;
      return c > 0.0 ? LocalSign::LocallyPositive : LocalSign::LocallyNegative;
    }
    if (c != 0.0) noise = true;
  }
  return LocalSign::Zero;
}

double lyapunov_error(const MeanFieldState& y) {
  if (y.num_islands() != 2 || y.num_strains() != 1) {
    throw DimensionError("Lyapunov error is defined for two islands and one strain");
  }
  const double gap = y.at(0, 0) - y.at(1, 0);
  return 0.5 * gap * gap;
}

}  // namespace sisnet
