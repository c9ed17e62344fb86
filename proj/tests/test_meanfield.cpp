#include <cmath>

#include "doctest.h"
#include "sisnet/meanfield.hpp"

using namespace sisnet;

namespace {

IntegratorControl tight() {
  IntegratorControl c;
  c.rel_tol = 1e-12;
  c.abs_tol = 1e-14;
  return c;
}

}  // namespace

TEST_CASE("rhs on the bipartite pair") {
  const auto net = SuperNetwork::bipartite(1, 1);
  const auto params = MeanFieldParams::uniform(net, {2.0});
  const auto dy = rhs(MeanFieldState(2, 1, {0.3, 0.7}), params);
  CHECK(dy.at(0, 0) == doctest::Approx(0.68).epsilon(1e-15));
  CHECK(dy.at(1, 0) == doctest::Approx(-0.52).epsilon(1e-15));
}

TEST_CASE("rhs with two strains shares the free fraction") {
  const auto net = SuperNetwork::bipartite(1, 1);
  const auto params = MeanFieldParams::uniform(net, {3.0, 2.0});
  const auto dy = rhs(MeanFieldState(2, 2, {0.2, 0.1, 0.4, 0.3}), params);
  // island 1: free 0.7; island 2: free 0.3
  CHECK(dy.at(0, 0) == doctest::Approx(3.0 * 0.4 * 0.7 - 0.2));
  CHECK(dy.at(0, 1) == doctest::Approx(2.0 * 0.3 * 0.7 - 0.1));
  CHECK(dy.at(1, 0) == doctest::Approx(3.0 * 0.2 * 0.3 - 0.4));
  CHECK(dy.at(1, 1) == doctest::Approx(2.0 * 0.1 * 0.3 - 0.3));
}

TEST_CASE("micro rates map to effective rates") {
  const auto net = SuperNetwork::bipartite(2, 4);
  const auto micro = StrainParams::uniform(net, {1.5}, {3.0});
  const auto mf = MeanFieldParams::from_micro(net, micro);
  CHECK(mf.alpha(1, 0) == 2.0);
  CHECK(mf.gamma_eff(0, 1, 0) == doctest::Approx(1.0));
  CHECK(mf.gamma_eff(0, 0, 1) == doctest::Approx(0.25));
  CHECK(mf.time_scale() == 3.0);
  CHECK_FALSE(mf.is_symmetric());

  const auto mixed = StrainParams::uniform(net, {1.0, 1.0}, {1.0, 2.0});
  CHECK_THROWS(MeanFieldParams::from_micro(net, mixed));
}

TEST_CASE("symmetric configurations are recognized") {
  const auto net = SuperNetwork::cycle(6, 50);
  const auto mf = MeanFieldParams::from_micro(net, StrainParams::uniform(net, {0.6}, {2.0}));
  CHECK(mf.is_symmetric());
  CHECK(mf.symmetric_gamma(0) == doctest::Approx(0.3));
  const auto y = integrate(mf, MeanFieldState(6, 1, 0.1), 1.0);
  CHECK(y.regime == "symmetric");
  const auto asym = MeanFieldParams::uniform(SuperNetwork::bipartite(1, 3), {2.0});
  CHECK(integrate(asym, MeanFieldState(2, 1, 0.1), 1.0).regime == "unanalyzed regime");
}

TEST_CASE("integration matches the scalar closed form in all three regimes") {
  for (double gamma : {2.0, 1.0, 0.5}) {
    CAPTURE(gamma);
    const auto net = SuperNetwork::bipartite(1, 1);
    const auto params = MeanFieldParams::uniform(net, {gamma});
    const auto traj = integrate(params, MeanFieldState(2, 1, 0.3), 8.0, tight());
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
      const double exact = reduced_scalar_solution(1.0, gamma, 0.3, traj.times[s]);
      CHECK(std::abs(traj.samples[s].at(0, 0) - exact) < 1e-10);
      CHECK(traj.samples[s].at(0, 0) == traj.samples[s].at(1, 0));
    }
  }
}

TEST_CASE("closed form at the critical point decays like 1/t") {
  CHECK(reduced_scalar_solution(1.0, 1.0, 0.5, 0.0) == 0.5);
  CHECK(reduced_scalar_solution(1.0, 1.0, 0.5, 8.0) == doctest::Approx(0.1));
  CHECK(reduced_scalar_solution(2.0, 1.0, 0.2, 60.0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("fixed-step RK4 agrees with the adaptive integrator") {
  const auto net = SuperNetwork::cycle(4, 1);
  const auto params = MeanFieldParams::uniform(net, {0.8, 0.5});
  MeanFieldState y0(4, 2, {0.1, 0.2, 0.0, 0.3, 0.4, 0.0, 0.05, 0.05});
  IntegratorControl rk4;
  rk4.method = IntegratorMethod::ClassicalRK4;
  rk4.fixed_step = 1e-3;
  const auto a = integrate(params, y0, 5.0, tight()).final_state();
  const auto b = integrate(params, y0, 5.0, rk4).final_state();
  for (std::size_t n = 0; n < a.values().size(); ++n) {
    CHECK(std::abs(a.values()[n] - b.values()[n]) < 1e-10);
  }
}

TEST_CASE("trajectories stay in the product of simplices") {
  const auto net = SuperNetwork::complete(4, 1);
  const auto params = MeanFieldParams::uniform(net, {2.0, 1.9, 1.0});
  MeanFieldState y0(4, 3, {0.9, 0.05, 0.05, 0.0, 0.0, 0.0, 0.3, 0.3, 0.3, 0.0, 1.0, 0.0});
  const auto traj = integrate(params, y0, 20.0);
  for (const auto& s : traj.samples) CHECK(s.in_domain(1e-8));
}

TEST_CASE("initial states outside the domain are rejected") {
  const auto net = SuperNetwork::bipartite(1, 1);
  const auto params = MeanFieldParams::uniform(net, {2.0});
  CHECK_THROWS(integrate(params, MeanFieldState(2, 1, {0.5, 1.2}), 1.0));
  CHECK_THROWS(integrate(params, MeanFieldState(3, 1, 0.1), 1.0));
}

TEST_CASE("reduced bi-virus system converges to the stronger strain") {
  const auto r = reduced_bivirus_trajectory(1.0, 3.0, 2.0, 0.1, 0.1, 200.0);
  CHECK(r.x.back() == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(std::abs(r.y.back()) < 1e-9);
  CHECK_THROWS(reduced_bivirus_trajectory(1.0, 3.0, 2.0, 0.7, 0.7, 1.0));
}
