#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>

#include "doctest.h"
#include "machlab/fft.hpp"
#include "machlab/operators.hpp"
#include "machlab/snapshot.hpp"

using namespace machlab;

namespace {

Field random_field(const TorusGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field f(g.cell_count());
  for (double& v : f) v = dist(rng);
  return f;
}

// band-limited random field through low modes only
Field smooth_random_field(const TorusGrid& g, std::uint64_t seed, int kmax) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field f(g.cell_count(), 0.0);
  for (int mx = -kmax; mx <= kmax; ++mx)
    for (int my = -kmax; my <= kmax; ++my) {
      const double a = dist(rng), b = dist(rng);
      for (int i = 0; i < g.cells[0]; ++i)
        for (int j = 0; j < (g.dim == 2 ? g.cells[1] : 1); ++j) {
          const double phase = 2.0 * M_PI * (mx * g.center(0, i) / g.lengths[0] +
                                             (g.dim == 2 ? my * g.center(1, j) / g.lengths[1] : 0));
          f[g.index(i, j)] += a * std::cos(phase) + b * std::sin(phase);
        }
    }
  return f;
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS(TorusGrid(2, {6, 8}, {2.0, 2.0}));
  CHECK_THROWS(TorusGrid(2, {9, 8}, {2.0, 2.0}));
  CHECK_THROWS(TorusGrid(3, {8, 8}, {2.0, 2.0}));
  TorusGrid g = TorusGrid::square(16);
  CHECK(g.cell_volume() == doctest::Approx(0.125 * 0.125));
  CHECK(g.volume() == doctest::Approx(4.0));
}

TEST_CASE("dft round trip and basic modes") {
  for (TorusGrid g : {TorusGrid::line(32), TorusGrid::square(16, 3.0)}) {
    SUBCASE("constant field has only the zero mode") {
      Field f(g.cell_count(), 2.5);
      const ScalarSpectrum s = dft_forward(g, f);
      CHECK(std::abs(s.c[0]) == doctest::Approx(2.5 * g.cell_count()).epsilon(1e-13));
      for (std::size_t k = 1; k < s.size(); ++k) CHECK(std::abs(s.c[k]) < 1e-10);
    }
    SUBCASE("round trip is the identity") {
      const Field f = random_field(g, 7);
      const Field back = dft_inverse(dft_forward(g, f));
      CHECK(max_abs_diff(f, back) < 1e-12);
    }
  }

  SUBCASE("single cosine populates one half-spectrum mode") {
    TorusGrid g = TorusGrid::line(64, 2.0);
    Field f(g.cell_count());
    for (int i = 0; i < g.cells[0]; ++i) f[i] = std::cos(2.0 * M_PI * g.center(0, i) / g.lengths[0]);
    const ScalarSpectrum s = dft_forward(g, f);
    CHECK(std::abs(s.c[1]) == doctest::Approx(0.5 * g.cell_count()).epsilon(1e-12));
    for (std::size_t k = 0; k < s.size(); ++k)
      if (k != 1) CHECK(std::abs(s.c[k]) < 1e-9);
  }

  SUBCASE("shape mismatch throws") {
    TorusGrid g = TorusGrid::line(32);
    Field wrong(g.cell_count() + 1, 0.0);
    CHECK_THROWS(dft_forward(g, wrong));
  }
}

TEST_CASE("Parseval") {
  const TorusGrid g = TorusGrid::square(32, 2.0);
  const Field f = random_field(g, 12);
  const double phys = lp_norm(g, f, 2.0);
  const double spec = spectral_l2_norm(dft_forward(g, f));
  CHECK(phys == doctest::Approx(spec).epsilon(1e-12));
}

TEST_CASE("spectral operators") {
  const TorusGrid g = TorusGrid::square(32, 2.0);
  const double kx = 2.0 * M_PI / g.lengths[0];
  Field phi(g.cell_count());
  for (int i = 0; i < g.cells[0]; ++i)
    for (int j = 0; j < g.cells[1]; ++j)
      phi[g.index(i, j)] =
          std::sin(kx * g.center(0, i)) * std::sin(2.0 * kx * g.center(1, j));

  SUBCASE("div grad equals laplacian on sine modes") {
    const Field lhs = div_spectral(g, grad_spectral(g, phi));
    const Field rhs = laplacian_spectral(g, phi);
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    for (std::size_t c = 0; c < phi.size(); ++c)
      CHECK(rhs[c] == doctest::Approx(-5.0 * kx * kx * phi[c]).epsilon(1e-10));
  }

  SUBCASE("laplacian of constant vanishes") {
    Field c(g.cell_count(), 3.3);
    const Field lap = laplacian_spectral(g, c);
    const Field lap_fd = laplacian_fd(g, c);
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(std::abs(lap[i]) < 1e-12);
      CHECK(std::abs(lap_fd[i]) < 1e-12);
    }
  }
}

TEST_CASE("finite-difference gradient on a periodic hat is exact away from kinks") {
  const TorusGrid g = TorusGrid::line(64, 2.0);
  Field hat(g.cell_count());
  for (int i = 0; i < g.cells[0]; ++i) hat[i] = 1.0 - std::abs(g.center(0, i));
  const VectorField grad = grad_fd(g, hat);
  for (int i = 0; i < g.cells[0]; ++i) {
    const double x = g.center(0, i);
    if (std::abs(x) < 2.0 * g.dx(0) || std::abs(std::abs(x) - 1.0) < 2.0 * g.dx(0)) continue;
    const double expected = x > 0.0 ? -1.0 : 1.0;
    CHECK(grad[0][i] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("fd operators are second order") {
  auto err_at = [](int n) {
    const TorusGrid g = TorusGrid::line(n, 2.0);
    const double k = 2.0 * M_PI / g.lengths[0];
    Field f(g.cell_count());
    for (int i = 0; i < n; ++i) f[i] = std::sin(k * g.center(0, i));
    const VectorField grad = grad_fd(g, f);
    double err = 0.0;
    for (int i = 0; i < n; ++i)
      err = std::max(err, std::abs(grad[0][i] - k * std::cos(k * g.center(0, i))));
    return err;
  };
  const double order = std::log2(err_at(32) / err_at(64));
  CHECK(order == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("helmholtz projection") {
  const TorusGrid g = TorusGrid::square(64, 2.0);

  SUBCASE("annihilates gradients up to their mean") {
    const Field phi = smooth_random_field(g, 3, 4);
    VectorField gradphi = grad_spectral(g, phi);
    const VectorField proj = helmholtz_project(g, gradphi);
    for (int d = 0; d < 2; ++d)
      for (double v : proj[d]) CHECK(std::abs(v) < 1e-10);
  }

  SUBCASE("fixes divergence-free fields and is idempotent") {
    // v = perp-grad of a streamfunction is exactly solenoidal
    const Field psi = smooth_random_field(g, 9, 5);
    const VectorField gp = grad_spectral(g, psi);
    VectorField v(g);
    for (std::size_t c = 0; c < psi.size(); ++c) {
      v[0][c] = -gp[1][c];
      v[1][c] = gp[0][c];
    }
    const VectorField pv = helmholtz_project(g, v);
    for (int d = 0; d < 2; ++d) CHECK(max_abs_diff(pv[d], v[d]) < 1e-12);

    const Field phi = smooth_random_field(g, 4, 5);
    const VectorField gphi = grad_spectral(g, phi);
    VectorField mixed(g);
    for (std::size_t c = 0; c < psi.size(); ++c) {
      mixed[0][c] = v[0][c] + gphi[0][c];
      mixed[1][c] = v[1][c] + gphi[1][c];
    }
    const VectorField once = helmholtz_project(g, mixed);
    const VectorField twice = helmholtz_project(g, once);
    for (int d = 0; d < 2; ++d) {
      CHECK(max_abs_diff(once[d], v[d]) < 1e-10);     // recovers the solenoidal part
      CHECK(max_abs_diff(twice[d], once[d]) < 1e-12);  // idempotent
    }
    CHECK(solenoidal_residual(g, once) < 1e-10);

    SUBCASE("the two parts are L2-orthogonal") {
      long double dot = 0.0, norm = 0.0;
      for (int d = 0; d < 2; ++d)
        for (std::size_t c = 0; c < psi.size(); ++c) {
          const double gradpart = mixed[d][c] - once[d][c];
          dot += once[d][c] * gradpart;
          norm += mixed[d][c] * mixed[d][c];
        }
      CHECK(std::abs(static_cast<double>(dot)) <= 1e-10 * static_cast<double>(norm));
    }
  }

  SUBCASE("1D projection returns the mean") {
    const TorusGrid line = TorusGrid::line(32);
    VectorField u(line);
    for (int i = 0; i < 32; ++i) u[0][i] = std::sin(M_PI * line.center(0, i)) + 2.0;
    const VectorField p = helmholtz_project(line, u);
    for (double v : p[0]) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("lp norms") {
  const TorusGrid g = TorusGrid::square(64, 2.0);
  SUBCASE("constant field, p=2") {
    Field f(g.cell_count(), -3.0);
    CHECK(lp_norm(g, f, 2.0) == doctest::Approx(3.0 * std::sqrt(g.volume())).epsilon(1e-13));
  }
  SUBCASE("p=inf is the max magnitude") {
    Field f = random_field(g, 5);
    f[g.index(3, 7)] = -9.0;
    CHECK(lp_norm(g, f, std::numeric_limits<double>::infinity()) == 9.0);
  }
  SUBCASE("L1 of |sin| over one period matches the quadrature value") {
    const TorusGrid line = TorusGrid::line(256, 2.0);
    Field f(line.cell_count());
    for (int i = 0; i < 256; ++i) f[i] = std::sin(2.0 * M_PI * line.center(0, i) / 2.0);
    const double exact = 2.0 * line.lengths[0] / M_PI;
    CHECK(lp_norm(line, f, 1.0) == doctest::Approx(exact).epsilon(1e-3));
  }
  SUBCASE("subset restriction") {
    Field f(g.cell_count(), 1.0);
    const SubBox box = SubBox::centered({0.5, 0.5});
    CHECK(lp_norm(g, f, 2.0, box) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lp_norm(g, f, 1.0, box) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(lp_norm(g, Field(g.cell_count(), 0.0), 0.5), std::domain_error);
}

TEST_CASE("snapshot round trip") {
  namespace fs = std::filesystem;
  const TorusGrid g = TorusGrid::square(16, 2.0);
  ConservedState state(g, 0.25);
  state.time = 0.75;
  state.rho = random_field(g, 21);
  for (double& v : state.rho) v = 1.5 + 0.2 * v;
  state.mom[0] = random_field(g, 22);
  state.mom[1] = random_field(g, 23);

  const std::string base = (fs::temp_directory_path() / "machlab_snapshot_test").string();
  write_snapshot(base, snapshot_of(state));
  const ConservedState back = conserved_from_snapshot(read_snapshot(base));
  CHECK(back.grid == g);
  CHECK(back.eps == state.eps);
  CHECK(back.time == state.time);
  CHECK(max_abs_diff(back.rho, state.rho) == 0.0);
  CHECK(max_abs_diff(back.mom[0], state.mom[0]) == 0.0);
  CHECK(max_abs_diff(back.mom[1], state.mom[1]) == 0.0);
  fs::remove(base + ".f64");
  fs::remove(base + ".json");
}
