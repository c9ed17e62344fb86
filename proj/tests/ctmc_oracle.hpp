#pragma once

// Exact law of the single-strain bipartite SIS chain on a small network, by
// uniformization of the generator written out directly from the rates.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

struct BipartiteChain {
  int n1, n2;
  double gamma, mu;

  int states() const { return (n1 + 1) * (n2 + 1); }
  int index(int y1, int y2) const { return y1 * (n2 + 1) + y2; }

  // Transition types: 0 infect island 1, 1 infect island 2, 2 heal 1, 3 heal 2.
  double rate(int y1, int y2, int type) const {
    switch (type) {
      case 0: return gamma * y2 * (n1 - y1) / n1;
      case 1: return gamma * y1 * (n2 - y2) / n2;
      case 2: return mu * y1;
      default: return mu * y2;
    }
  }
};

/// p(t) starting from (y1, y2).
inline std::vector<long double> distribution(const BipartiteChain& c, int y1, int y2,
                                             double t) {
  const int s = c.states();
  long double lambda = 0.0L;
  for (int a = 0; a <= c.n1; ++a)
    for (int b = 0; b <= c.n2; ++b) {
      long double out = 0.0L;
      for (int type = 0; type < 4; ++type) out += c.rate(a, b, type);
      lambda = std::max(lambda, out);
    }
  lambda *= 1.05L;
  std::vector<long double> v(s, 0.0L), p(s, 0.0L);
  v[c.index(y1, y2)] = 1.0L;
  long double weight = std::exp(-lambda * t);
  for (int n = 0; n < 2000; ++n) {
    for (int k = 0; k < s; ++k) p[k] += weight * v[k];
    std::vector<long double> next(s, 0.0L);
    for (int a = 0; a <= c.n1; ++a)
      for (int b = 0; b <= c.n2; ++b) {
        const long double mass = v[c.index(a, b)];
        if (mass == 0.0L) continue;
        long double stay = 1.0L;
        const int to[4] = {a < c.n1 ? c.index(a + 1, b) : -1, b < c.n2 ? c.index(a, b + 1) : -1,
                           a > 0 ? c.index(a - 1, b) : -1, b > 0 ? c.index(a, b - 1) : -1};
        for (int type = 0; type < 4; ++type) {
          const long double q = c.rate(a, b, type) / lambda;
          if (q > 0.0L) {
            next[to[type]] += mass * q;
            stay -= q;
          }
        }
        next[c.index(a, b)] += mass * stay;
      }
    v.swap(next);
    weight *= lambda * t / (n + 1);
    if (n > lambda * t && weight < 1e-30L) break;
  }
  return p;
}

/// Expected number of transitions of each type on [0, t] (composite Simpson).
inline std::vector<double> expected_transitions(const BipartiteChain& c, int y1, int y2,
                                                double t, int panels = 400) {
  std::vector<double> out(4, 0.0);
  const double h = t / panels;
  for (int n = 0; n <= panels; ++n) {
    const double w = (n == 0 || n == panels) ? 1.0 : (n % 2 ? 4.0 : 2.0);
    const auto p = distribution(c, y1, y2, n * h);
    for (int a = 0; a <= c.n1; ++a)
      for (int b = 0; b <= c.n2; ++b)
        for (int type = 0; type < 4; ++type)
          out[type] += w * h / 3.0 * static_cast<double>(p[c.index(a, b)]) * c.rate(a, b, type);
  }
  return out;
}

}  // namespace oracle
