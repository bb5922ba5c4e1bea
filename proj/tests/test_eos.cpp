#include "machlab/eos.hpp"

#include <cmath>

#include "doctest.h"

using namespace machlab;

namespace {

// independent oracle: P(rho) = rho * int_1^rho p(z)/z^2 dz by adaptive Simpson
double simpson(const EosModel& eos, double a, double b, int depth) {
  auto f = [&](double z) { return pressure(eos, z) / (z * z); };
  const double m = 0.5 * (a + b);
  const double coarse = (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
  if (depth <= 0) return coarse;
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double fine = (m - a) / 6.0 * (f(a) + 4.0 * f(lm) + f(m)) +
                      (b - m) / 6.0 * (f(m) + 4.0 * f(rm) + f(b));
  if (std::abs(fine - coarse) < 1e-14 * (1.0 + std::abs(fine))) return fine;
  return simpson(eos, a, m, depth - 1) + simpson(eos, m, b, depth - 1);
}

double potential_by_quadrature(const EosModel& eos, double rho) {
  if (rho == 0.0) return 0.0;
  return rho * simpson(eos, 1.0, rho, 40);
}

}  // namespace

TEST_CASE("pressure closed form") {
  EosModel eos{1.0, 2.0, 1.0};
  CHECK(pressure(eos, 0.0) == 0.0);
  CHECK(pressure(eos, 1.0) == 1.0);
  EosModel eos14{1.0, 1.4, 1.0};
  CHECK(pressure(eos14, 2.0) == doctest::Approx(std::pow(2.0, 1.4)).epsilon(1e-15));
  CHECK_THROWS_AS(pressure(eos, -1.0), std::domain_error);
}

TEST_CASE("pressure potential closed form and quadrature oracle") {
  EosModel eos{1.0, 2.0, 1.0};
  CHECK(pressure_potential(eos, 1.0) == 0.0);
  CHECK(pressure_potential(eos, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(pressure_potential(eos, 0.0) == 0.0);
  CHECK_THROWS_AS(pressure_potential(eos, -0.5), std::domain_error);

  for (EosModel model : {EosModel{1.0, 2.0, 1.0}, EosModel{1.0, 1.4, 1.0}, EosModel{2.5, 1.7, 1.0}}) {
    for (double rho : {0.2, 0.7, 1.0, 1.9, 3.5, 8.0}) {
      const double closed = pressure_potential(model, rho);
      const double quad = potential_by_quadrature(model, rho);
      CHECK(closed == doctest::Approx(quad).epsilon(1e-11));
    }
  }
}

TEST_CASE("P'' rho equals p' by finite differences") {
  for (EosModel model : {EosModel{1.0, 2.0, 1.0}, EosModel{1.0, 1.4, 1.0}}) {
    for (double rho : {0.3, 1.0, 2.5, 6.0}) {
      const double h = 1e-5 * rho;
      const double second =
          (pressure_potential(model, rho + h) - 2.0 * pressure_potential(model, rho) +
           pressure_potential(model, rho - h)) / (h * h);
      const double expected = pressure_derivative(model, rho) / rho;
      CHECK(second == doctest::Approx(expected).epsilon(1e-5));
      // analytic identity at tighter tolerance
      CHECK(pressure_potential_second(model, rho) * rho ==
            doctest::Approx(pressure_derivative(model, rho)).epsilon(1e-10));
    }
  }
}

TEST_CASE("relative potential is the Bregman divergence of P") {
  EosModel eos{1.0, 2.0, 1.0};
  CHECK(rel_potential(eos, 1.7, 1.7) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rel_potential(eos, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rel_potential(eos, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(rel_potential(eos, 1.0, 0.0), std::domain_error);

  SUBCASE("gamma=2, a=1 closed form H = (rho - r)^2") {
    for (int i = 0; i <= 40; ++i)
      for (int j = 0; j <= 40; ++j) {
        const double rho = 0.1 + i * (10.0 - 0.1) / 40.0;
        const double r = 0.1 + j * (10.0 - 0.1) / 40.0;
        CHECK(std::abs(rel_potential(eos, rho, r) - (rho - r) * (rho - r)) <= 1e-12);
      }
  }

  SUBCASE("nonnegative, zero only at rho == r") {
    EosModel eos14{1.3, 1.4, 1.0};
    for (double r : {0.5, 1.0, 2.0}) {
      for (int i = 0; i <= 100; ++i) {
        const double rho = 10.0 * i / 100.0;
        const double h = rel_potential(eos14, rho, r);
        CHECK(h >= -1e-15);
        if (std::abs(rho - r) > 1e-2) CHECK(h > 0.0);
      }
    }
  }

  SUBCASE("convex in rho") {
    EosModel eos14{1.0, 1.4, 1.0};
    const double r = 0.8;
    for (double rho1 : {0.1, 0.9, 3.0})
      for (double rho2 : {0.4, 2.0, 7.0})
        for (double lambda : {0.25, 0.5, 0.9}) {
          const double mix = lambda * rho1 + (1.0 - lambda) * rho2;
          const double lhs = rel_potential(eos14, mix, r);
          const double rhs = lambda * rel_potential(eos14, rho1, r) +
                             (1.0 - lambda) * rel_potential(eos14, rho2, r);
          CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-15);
        }
  }
}

TEST_CASE("growth constants") {
  EosModel eos{1.0, 2.0, 1.0};
  const auto [p_inf_ratio, p_gamma_ratio] = growth_constants(eos, 1e6);
  CHECK(p_inf_ratio == doctest::Approx(1.0).epsilon(1e-4));  // p/P -> gamma - 1
  CHECK(p_gamma_ratio == doctest::Approx(1.0).epsilon(1e-14));

  EosModel eos14{1.0, 1.4, 1.0};
  CHECK(growth_constants(eos14, 1e6).second == doctest::Approx(1.0).epsilon(1e-14));
  EosModel eos2{2.0, 2.0, 1.0};
  CHECK(growth_constants(eos2, 1e6).second == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(growth_constants(eos, 1.5), std::domain_error);
}

TEST_CASE("cutoff and essential/residual split") {
  CutoffChi chi(1.0);
  CHECK(chi(1.0) == 1.0);
  CHECK(chi(0.5) == 1.0);
  CHECK(chi(2.0) == 1.0);
  CHECK(chi(0.1) == 0.0);
  CHECK(chi(100.0) == 0.0);

  const auto [e1, r1] = ess_res_split(chi, 1.0, 5.0);
  CHECK(e1 == 5.0);
  CHECK(r1 == 0.0);
  const auto [e2, r2] = ess_res_split(chi, 100.0, 5.0);
  CHECK(e2 == 0.0);
  CHECK(r2 == 5.0);

  // transition midpoints of the quintic smoothstep
  const double mid_lo = 0.5 * (0.25 + 0.5);
  const auto [e3, r3] = ess_res_split(chi, mid_lo, 1.0);
  CHECK(e3 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r3 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(e3 + r3 == 1.0);

  SUBCASE("parts sum exactly") {
    for (double rho : {0.0, 0.3, 0.47, 1.0, 2.9, 3.99, 50.0})
      for (double value : {1.0, -2.5, 1e8, 3.7e-11}) {
        const auto [e, r] = ess_res_split(chi, rho, value);
        CHECK(e + r == doctest::Approx(value).epsilon(1e-15));
      }
  }

  SUBCASE("chi bounded and C1-continuous at the seams") {
    for (int i = 0; i <= 2000; ++i) {
      const double rho = 5.0 * i / 2000.0;
      CHECK(chi(rho) >= 0.0);
      CHECK(chi(rho) <= 1.0);
    }
    const double h = 1e-7;
    for (double seam : {0.25, 0.5, 2.0, 4.0}) {
      const double left = (chi(seam) - chi(seam - h)) / h;
      const double right = (chi(seam + h) - chi(seam)) / h;
      CHECK(std::abs(left - right) < 1e-4);
    }
  }
}

TEST_CASE("convexity constants") {
  EosModel eos{1.0, 2.0, 1.0};
  const auto [c_ess, c_res] = convexity_constants(eos, 0.25);
  CHECK(c_ess == doctest::Approx(1.0).epsilon(1e-6));  // H = (rho-1)^2 exactly
  CHECK(c_res > 0.0);
  CHECK(std::isfinite(c_res));

  EosModel eos14{1.0, 1.4, 1.0};
  const auto [c_ess14, c_res14] = convexity_constants(eos14, 0.25);
  CHECK(c_ess14 > 0.0);
  CHECK(std::isfinite(c_ess14));
  CHECK(c_res14 > 0.0);
  CHECK(std::isfinite(c_res14));

  SUBCASE("bound inequalities hold at sampled densities") {
    const double slack = 1.0 + 1e-12;
    for (int i = 0; i <= 500; ++i) {
      const double rho = 0.25 + i * (4.0 - 0.25) / 500.0;
      CHECK((rho - 1.0) * (rho - 1.0) <= slack * c_ess14 * rel_potential(eos14, rho, 1.0) + 1e-15);
    }
    for (double rho : {0.0, 0.1, 0.2, 4.0, 10.0, 1e3, 1e5}) {
      const double lhs = 1.0 + std::abs(rho - 1.0) + pressure_potential(eos14, rho);
      CHECK(lhs <= slack * c_res14 * rel_potential(eos14, rho, 1.0));
    }
  }

  SUBCASE("c_ess grows as delta shrinks") {
    const double wide = convexity_constants(eos14, 0.05).first;
    CHECK(wide >= c_ess14);
  }

  CHECK_THROWS_AS(convexity_constants(eos, 0.6), std::domain_error);
}
