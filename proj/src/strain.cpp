#include "sisnet/strain.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace sisnet {

StrainParams StrainParams::uniform(const SuperNetwork& net, std::vector<double> gamma,
                                   std::vector<double> mu) {
  return with_overrides(net, std::move(gamma), std::move(mu), {});
}

StrainParams StrainParams::with_overrides(const SuperNetwork& net,
                                          std::vector<double> base_gamma,
                                          std::vector<double> mu,
                                          const std::vector<PairRate>& overrides) {
  if (base_gamma.empty() || base_gamma.size() != mu.size()) {
    throw DimensionError("need one gamma and one mu per strain");
  }
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (!positive(base_gamma[k]) || !positive(mu[k])) {
      throw std::invalid_argument("strain " + std::to_string(k + 1) +
                                  ": rates must be finite and strictly positive");
    }
  }

  StrainParams p;
  const std::size_t m = net.num_islands();
  p.islands_ = m;
  p.mu_ = std::move(mu);
  p.gamma_.assign(p.mu_.size() * m * m, 0.0);
  for (std::size_t k = 0; k < p.mu_.size(); ++k) {
    for (std::size_t from = 0; from < m; ++from) {
      for (auto to : net.neighbors(from)) {
        p.gamma_[(k * m + from) * m + to] = base_gamma[k];
      }
    }
  }
  for (const auto& o : overrides) {
    if (o.strain >= p.mu_.size() || o.from >= m || o.to >= m) {
      throw DimensionError("pair rate override out of range");
    }
    if (!net.adjacent(o.from, o.to)) {
      throw std::invalid_argument("pair rate given for non-adjacent islands " +
                                  std::to_string(o.from + 1) + "->" +
                                  std::to_string(o.to + 1));
    }
    if (!positive(o.rate)) {
      throw std::invalid_argument("pair rates must be strictly positive");
    }
    p.gamma_[(o.strain * m + o.from) * m + o.to] = o.rate;
  }
  return p;
}

bool StrainParams::strains_distinct(StrainIndex a, StrainIndex b) const {
  if (mu_[a] != mu_[b]) return true;
  for (std::size_t from = 0; from < islands_; ++from) {
    for (std::size_t to = 0; to < islands_; ++to) {
      if (gamma(a, from, to) != gamma(b, from, to)) return true;
    }
  }
  return false;
}

MacroCounts::MacroCounts(const SuperNetwork& net, std::size_t strains)
    : strains_(strains),
      sizes_(net.island_sizes()),
      y_(net.num_islands() * strains, 0) {
  if (strains == 0) throw DimensionError("at least one strain is required");
}

MacroCounts::MacroCounts(const SuperNetwork& net, std::size_t strains,
                         std::vector<std::int64_t> counts)
    : MacroCounts(net, strains) {
  if (counts.size() != y_.size()) {
    throw DimensionError("count matrix must be islands x strains");
  }
  y_ = std::move(counts);
  for (auto c : y_) {
    if (c < 0) throw std::invalid_argument("negative infected count");
  }
  if (!satisfies_exclusion()) {
    throw std::invalid_argument(
        "infected counts exceed island size (local exclusion violated)");
  }
}

MacroCounts MacroCounts::from_fractions(const SuperNetwork& net, std::size_t strains,
                                        const std::vector<double>& fractions) {
  if (fractions.size() != net.num_islands() * strains) {
    throw DimensionError("fraction matrix must be islands x strains");
  }
  std::vector<std::int64_t> counts(fractions.size());
  for (std::size_t i = 0; i < net.num_islands(); ++i) {
    for (std::size_t k = 0; k < strains; ++k) {
      const double f = fractions[i * strains + k];
      counts[i * strains + k] = static_cast<std::int64_t>(
          std::floor(f * static_cast<double>(net.island_size(i)) + 1e-9));
    }
  }
  return MacroCounts(net, strains, std::move(counts));
}

std::int64_t MacroCounts::occupied(IslandIndex i) const {
  const auto* row = y_.data() + i * strains_;
  return std::accumulate(row, row + strains_, std::int64_t{0});
}

std::int64_t MacroCounts::total() const {
  return std::accumulate(y_.begin(), y_.end(), std::int64_t{0});
}

bool MacroCounts::satisfies_exclusion() const {
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (occupied(i) > sizes_[i]) return false;
  }
  return true;
}

}  // namespace sisnet
