#include <cmath>

#include "doctest.h"
#include "sisnet/analysis.hpp"
#include "sisnet/micro_sim.hpp"

using namespace sisnet;

namespace {

IntegratorControl tight() {
  IntegratorControl c;
  c.rel_tol = 1e-12;
  c.abs_tol = 1e-14;
  return c;
}

}  // namespace

TEST_CASE("equilibrium fraction") {
  CHECK(equilibrium_fraction(1, 2.0) == 0.5);
  CHECK(equilibrium_fraction(3, 1.0) == doctest::Approx(2.0 / 3.0));
  CHECK(equilibrium_fraction(2, 0.4) == 0.0);
  CHECK_THROWS(equilibrium_fraction(0, 1.0));
  CHECK_THROWS(equilibrium_fraction(1, 0.0));
}

TEST_CASE("single-strain classification") {
  const auto bip = SuperNetwork::bipartite(1, 1);
  auto c = classify_single(bip, 2.0);
  CHECK(c.verdict == Verdict::Persistence);
  CHECK(c.level == 0.5);
  CHECK(classify_single(bip, 1.0).verdict == Verdict::Extinction);

  c = classify_single(SuperNetwork::cycle(6, 1), 0.6);
  CHECK(c.verdict == Verdict::Persistence);
  CHECK(c.level == doctest::Approx(1.0 - 1.0 / 1.2));
  const auto params = MeanFieldParams::uniform(SuperNetwork::cycle(6, 1), {0.6});
  const auto end = integrate(params, MeanFieldState(6, 1, {0.1, 0.4, 0.0, 0.2, 0.9, 0.3}), 500.0,
                             tight()).final_state();
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(end.at(i, 0) - c.level) < 1e-4);
}

TEST_CASE("classification refuses non-regular or disconnected networks") {
  CHECK_THROWS_AS(classify_single(SuperNetwork::star(4, 1), 2.0), HypothesisError);
  const auto split = SuperNetwork::build({1, 1, 1, 1}, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(classify_single(split, 2.0), HypothesisError);
}

TEST_CASE("multi-strain classification") {
  const auto bip = SuperNetwork::bipartite(1, 1);
  const auto c = classify_multi(bip, {3.0, 2.0});
  CHECK(c.verdict == Verdict::Persistence);
  CHECK(*c.strain == 0);
  CHECK(c.level == doctest::Approx(2.0 / 3.0));
  CHECK(classify_multi(SuperNetwork::cycle(5, 1), {0.45, 0.3}).verdict == Verdict::Extinction);
  CHECK(*classify_multi(bip, {1.5, 4.0, 2.0}).strain == 1);
  try {
    classify_multi(bip, {2.0, 2.0});
    FAIL("tie accepted");
  } catch (const HypothesisError& e) {
    CHECK(std::string(e.what()).find("outside theorem hypotheses") != std::string::npos);
  }
}

TEST_CASE("dominance: identical states and ordered pairs") {
  const auto bip = SuperNetwork::bipartite(1, 1);
  const auto params = MeanFieldParams::uniform(bip, {2.0});
  const auto grid = uniform_grid(50.0, 500);
  const MeanFieldState z(2, 1, {0.1, 0.2});
  CHECK(check_dominance(params, z, z, grid, 0.0, tight()).holds);

  const auto r = check_dominance(params, z, MeanFieldState(2, 1, {0.3, 0.2}), grid, 1e-9, tight());
  CHECK(r.holds);
  CHECK(r.samples_checked == grid.size());
  CHECK_THROWS_AS(check_dominance(params, MeanFieldState(2, 1, {0.3, 0.2}), z, grid, 1e-9),
                  HypothesisError);
}

TEST_CASE("dominance: two strains ordered in opposite directions") {
  const auto bip = SuperNetwork::bipartite(1, 1);
  const auto params = MeanFieldParams::uniform(bip, {1.5, 2.5});
  const MeanFieldState low(2, 2, {0.1, 0.4, 0.2, 0.3});
  const MeanFieldState high(2, 2, {0.3, 0.2, 0.25, 0.1});
  CHECK(check_dominance(params, low, high, uniform_grid(100.0, 400), 1e-9, tight()).holds);
  CHECK_THROWS_AS(check_dominance(params, high, low, uniform_grid(1.0, 4), 1e-9), HypothesisError);
}

TEST_CASE("dominance records the first violation") {
  // A negative tolerance turns every grid point into a violation.
  const auto bip = SuperNetwork::bipartite(1, 1);
  const auto params = MeanFieldParams::uniform(bip, {2.0});
  const MeanFieldState z(2, 1, {0.1, 0.2});
  const auto r = check_dominance(params, z, z, uniform_grid(1.0, 4), -1.0);
  CHECK_FALSE(r.holds);
  REQUIRE(r.first_violation);
  CHECK(r.first_violation->time == 0.0);
}

TEST_CASE("Taylor order one equals rhs exactly") {
  const auto net = SuperNetwork::cycle(5, 1);
  const auto params = MeanFieldParams::uniform(net, {0.7, 1.1});
  MeanFieldState y0(5, 2, {0.1, 0.2, 0.0, 0.3, 0.4, 0.0, 0.05, 0.05, 0.2, 0.2});
  const auto t = taylor_coefficients(params, y0, 6);
  const auto d = rhs(y0, params);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(t.at(0, i, k) == y0.at(i, k));
      CHECK(t.at(1, i, k) == d.at(i, k));
    }
}

TEST_CASE("Taylor coefficients of the disease-free state vanish") {
  const auto net = SuperNetwork::complete(4, 1);
  const auto t = taylor_coefficients(MeanFieldParams::uniform(net, {2.0}), MeanFieldState(4, 1), 12);
  for (std::size_t n = 1; n <= 12; ++n)
    for (std::size_t i = 0; i < 4; ++i) CHECK(t.at(n, i, 0) == 0.0);
  CHECK_FALSE(t.first_nonzero_order(0, 0));
}

TEST_CASE("Taylor order range") {
  const auto net = SuperNetwork::bipartite(1, 1);
  const auto params = MeanFieldParams::uniform(net, {2.0});
  CHECK_THROWS(taylor_coefficients(params, MeanFieldState(2, 1), 0));
  CHECK_THROWS(taylor_coefficients(params, MeanFieldState(2, 1), 13));
}

TEST_CASE("Taylor second order matches the differentiated rhs") {
  // y'' = gamma y_j' (1 - y_i) - gamma y_j y_i' - y_i' on the bipartite pair.
  const double g = 2.0;
  const auto params = MeanFieldParams::uniform(SuperNetwork::bipartite(1, 1), {g});
  const MeanFieldState y0(2, 1, {0.3, 0.7});
  const auto t = taylor_coefficients(params, y0, 2);
  const double y1 = 0.3, y2 = 0.7;
  const double d1 = g * y2 * (1 - y1) - y1, d2 = g * y1 * (1 - y2) - y2;
  const double dd1 = g * d2 * (1 - y1) - g * y2 * d1 - d1;
  const double dd2 = g * d1 * (1 - y2) - g * y1 * d2 - d2;
  CHECK(t.at(2, 0, 0) == doctest::Approx(dd1 / 2));
  CHECK(t.at(2, 1, 0) == doctest::Approx(dd2 / 2));
}

TEST_CASE("a seed on an 8-cycle reaches hop n at order n") {
  const auto net = SuperNetwork::cycle(8, 1);
  MeanFieldState y0(8, 1);
  y0.at(0, 0) = 0.5;
  const auto t = taylor_coefficients(MeanFieldParams::uniform(net, {1.0}), y0, 6);
  for (std::size_t hop = 1; hop <= 4; ++hop) {
    const std::size_t island = hop;
    CHECK(t.first_nonzero_order(island, 0) == hop);
    CHECK(t.at(hop, island, 0) > 1e-12);
    for (std::size_t n = 1; n < hop; ++n) CHECK(t.at(n, island, 0) == 0.0);
  }
}

TEST_CASE("states equal near island 1 share its first-order coefficient") {
  const auto params = MeanFieldParams::uniform(SuperNetwork::cycle(6, 1), {1.0});
  MeanFieldState a(6, 1, {0.3, 0.3, 0.3, 0.0, 0.0, 0.3});
  MeanFieldState b = a;
  b.at(3, 0) = 0.6;
  const auto ta = taylor_coefficients(params, a, 3), tb = taylor_coefficients(params, b, 3);
  CHECK(ta.at(1, 0, 0) == tb.at(1, 0, 0));
  CHECK(ta.at(2, 0, 0) == tb.at(2, 0, 0));
  CHECK(ta.at(3, 0, 0) != tb.at(3, 0, 0));
}

TEST_CASE("sign probe") {
  CHECK(sign_probe(std::vector<double>{0, 0, 3.2}) == LocalSign::LocallyPositive);
  CHECK(sign_probe(std::vector<double>{0, 0, 0}) == LocalSign::Zero);
  CHECK(sign_probe(std::vector<double>{0, -0.5, 1.0}) == LocalSign::LocallyNegative);
  CHECK(sign_probe(std::vector<double>{1e-14, 0, 2.0}) == LocalSign::Inconclusive);
  CHECK(sign_probe(std::vector<double>{-1e-13, 1e-14}) == LocalSign::Zero);
  CHECK_THROWS(sign_probe(std::vector<double>{}));
}

TEST_CASE("Lyapunov error") {
  CHECK(lyapunov_error(MeanFieldState(2, 1, {0.5, 0.5})) == 0.0);
  CHECK(lyapunov_error(MeanFieldState(2, 1, {0.8, 0.2})) == doctest::Approx(0.18));
  CHECK_THROWS(lyapunov_error(MeanFieldState(3, 1, 0.1)));
  CHECK_THROWS(lyapunov_error(MeanFieldState(2, 2, 0.1)));
}
