#include "machlab/incomp_euler.hpp"

#include <cmath>

#include "doctest.h"
#include "machlab/initial_data.hpp"

using namespace machlab;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Field taylor_green_omega(const TorusGrid& g, double amplitude) {
  return make_vorticity(g, VelocitySpec::taylor_green(amplitude));
}

}  // namespace

TEST_CASE("velocity from vorticity") {
  const TorusGrid g = TorusGrid::square(64, 2.0);

  SUBCASE("zero vorticity gives zero velocity") {
    const VectorField v = velocity_from_vorticity(g, Field(g.cell_count(), 0.0));
    for (int d = 0; d < 2; ++d)
      for (double x : v[d]) CHECK(x == 0.0);
  }

  SUBCASE("single mode has amplitude 1/k") {
    const double k = 2.0 * 2.0 * M_PI / g.lengths[0];  // second mode
    Field w(g.cell_count());
    for (int i = 0; i < g.cells[0]; ++i)
      for (int j = 0; j < g.cells[1]; ++j)
        w[g.index(i, j)] = std::sin(k * g.center(0, i));
    const VectorField v = velocity_from_vorticity(g, w);
    double max_vy = 0.0, max_vx = 0.0, max_profile = 0.0;
    for (int i = 0; i < g.cells[0]; ++i)
      max_profile = std::max(max_profile, std::abs(std::cos(k * g.center(0, i))) / k);
    for (std::size_t c = 0; c < w.size(); ++c) {
      max_vy = std::max(max_vy, std::abs(v[1][c]));
      max_vx = std::max(max_vx, std::abs(v[0][c]));
    }
    CHECK(max_vy == doctest::Approx(max_profile).epsilon(1e-12));
    CHECK(max_vy == doctest::Approx(1.0 / k).epsilon(0.01));  // 1/k amplitude
    CHECK(max_vx < 1e-13);
    // and the expected profile -cos(kx)/k
    for (int i = 0; i < g.cells[0]; ++i)
      CHECK(v[1][g.index(i, 3)] ==
            doctest::Approx(-std::cos(k * g.center(0, i)) / k).epsilon(1e-10));
  }

  SUBCASE("taylor-green gives the cellular field") {
    const double amp = 0.8;
    const VectorField v = velocity_from_vorticity(g, taylor_green_omega(g, amp));
    const VectorField expected = make_velocity(g, VelocitySpec::taylor_green(amp));
    CHECK(max_abs_diff(v[0], expected[0]) < 1e-12);
    CHECK(max_abs_diff(v[1], expected[1]) < 1e-12);
  }

  SUBCASE("solenoidal to spectral accuracy") {
    const VectorField v =
        velocity_from_vorticity(g, make_vorticity(g, VelocitySpec::band_limited_random(1.0, 1, 6, 5)));
    CHECK(solenoidal_residual(g, v) < 1e-10);
  }

  SUBCASE("nonzero mean vorticity is rejected") {
    CHECK_THROWS(velocity_from_vorticity(g, Field(g.cell_count(), 1.0)));
  }
}

TEST_CASE("taylor-green is a steady state") {
  const TorusGrid g = TorusGrid::square(128, 2.0);
  IncompressibleState state(g, taylor_green_omega(g, 1.0));
  const Field initial = state.omega;
  double wmax = 0.0;
  for (double v : initial) wmax = std::max(wmax, std::abs(v));

  // one eddy turnover at unit velocity
  const auto states = incomp_run(state, 1.0, {1.0});
  REQUIRE(states.size() == 1);
  CHECK(max_abs_diff(states.front().omega, initial) <= 1e-8 * wmax);
}

TEST_CASE("zero vorticity stays zero") {
  const TorusGrid g = TorusGrid::square(32, 2.0);
  IncompressibleState state(g, Field(g.cell_count(), 0.0));
  const IncompressibleState next = incomp_step(state, 1e-2);
  for (double v : next.omega) CHECK(v == 0.0);
}

TEST_CASE("energy and enstrophy conservation on random band-limited data") {
  const TorusGrid g = TorusGrid::square(128, 2.0);
  IncompressibleState state(g, make_vorticity(g, VelocitySpec::band_limited_random(1.0, 2, 8, 11)));
  const double e0 = kinetic_energy(g, velocity_from_vorticity(g, state.omega));
  const double z0 = enstrophy(g, state.omega);

  const auto states = incomp_run(state, 1.0, {1.0});
  const double e1 = kinetic_energy(g, velocity_from_vorticity(g, states.front().omega));
  const double z1 = enstrophy(g, states.front().omega);
  CHECK(std::abs(e1 - e0) <= 1e-8 * e0);
  CHECK(std::abs(z1 - z0) <= 1e-8 * z0);
}

TEST_CASE("pressure recovery") {
  const TorusGrid g = TorusGrid::square(64, 2.0);

  SUBCASE("zero velocity gives zero pressure") {
    const Field pi = pressure_from_velocity(g, VectorField(g));
    for (double v : pi) CHECK(std::abs(v) < 1e-14);
  }

  SUBCASE("taylor-green pressure is the classical cosine product") {
    const double amp = 1.3;
    const VectorField v = make_velocity(g, VelocitySpec::taylor_green(amp));
    const Field pi = pressure_from_velocity(g, v);
    const double kx = 2.0 * M_PI / g.lengths[0];
    for (int i = 0; i < g.cells[0]; ++i)
      for (int j = 0; j < g.cells[1]; ++j) {
        const double expected = amp * amp / 4.0 *
                                (std::cos(2.0 * kx * g.center(0, i)) +
                                 std::cos(2.0 * kx * g.center(1, j)));
        CHECK(pi[g.index(i, j)] == doctest::Approx(expected).epsilon(1e-10));
      }
  }

  SUBCASE("mean is zero and grad Pi + (v.grad)v is solenoidal") {
    const VectorField v =
        velocity_from_vorticity(g, make_vorticity(g, VelocitySpec::band_limited_random(1.0, 1, 5, 3)));
    const Field pi = pressure_from_velocity(g, v);
    CHECK(std::abs(field_mean(g, pi)) < 1e-13);

    const VectorField gp = grad_spectral(g, pi);
    const VectorField adv = advection_term(g, v);
    VectorField residual(g);
    for (std::size_t c = 0; c < pi.size(); ++c) {
      residual[0][c] = gp[0][c] + adv[0][c];
      residual[1][c] = gp[1][c] + adv[1][c];
    }
    CHECK(solenoidal_residual(g, residual) < 1e-9);
  }
}

TEST_CASE("time reversal returns the initial vorticity") {
  const TorusGrid g = TorusGrid::square(64, 2.0);
  const Field w0 = make_vorticity(g, VelocitySpec::band_limited_random(1.0, 1, 5, 17));
  IncompressibleState state(g, w0);

  const double T = 0.4;
  auto fwd = incomp_run(state, T, {T});
  Field reversed = fwd.front().omega;
  for (double& v : reversed) v = -v;
  auto back = incomp_run(IncompressibleState(g, reversed), T, {T});
  Field final_omega = back.front().omega;
  for (double& v : final_omega) v = -v;

  double wmax = 0.0;
  for (double v : w0) wmax = std::max(wmax, std::abs(v));
  CHECK(max_abs_diff(final_omega, w0) <= 1e-6 * wmax);
}

TEST_CASE("vortex pair runs stably") {
  const TorusGrid g = TorusGrid::square(128, 2.0);
  IncompressibleState state(g, make_vorticity(g, VelocitySpec::vortex_pair(1.0, 0.15, 0.6)));
  const double e0 = kinetic_energy(g, velocity_from_vorticity(g, state.omega));
  const auto states = incomp_run(state, 1.0, {1.0});
  const double e1 = kinetic_energy(g, velocity_from_vorticity(g, states.front().omega));
  CHECK(std::abs(e1 - e0) <= 1e-7 * e0);
  for (double v : states.front().omega) CHECK(std::isfinite(v));
}

TEST_CASE("run bookkeeping") {
  const TorusGrid g = TorusGrid::square(32, 2.0);
  IncompressibleState state(g, taylor_green_omega(g, 1.0));
  SUBCASE("T=0 returns the initial state") {
    const auto states = incomp_run(state, 0.0, {});
    REQUIRE(states.size() == 1);
    CHECK(states.front().time == 0.0);
  }
  SUBCASE("output times are hit exactly") {
    const auto states = incomp_run(state, 0.1, {0.04, 0.1});
    REQUIRE(states.size() == 2);
    CHECK(states[0].time == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(states[1].time == doctest::Approx(0.1).epsilon(1e-12));
  }
}
