#include "doctest.h"

#include <cmath>

#include "hankelci/sfbase.hpp"

using namespace hankelci;
using namespace hankelci::sfbase;

namespace {
double rel(cx got, cx want) {
  double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}
}  // namespace

TEST_CASE("gamma: pinned values") {
  CHECK(rel(gamma_c(cx(1, 0)), 1.0) < 1e-14);
  CHECK(rel(gamma_c(cx(5, 0)), 24.0) < 1e-14);
  CHECK(rel(gamma_c(cx(0.5, 0)), std::sqrt(M_PI)) < 1e-14);
  // |Gamma(i)|^2 = pi / sinh(pi)
  cx gi = gamma_c(cx(0, 1));
  CHECK(rel(std::norm(gi), M_PI / std::sinh(M_PI)) < 1e-13);
  CHECK_THROWS_AS(gamma_c(cx(-3, 0)), PoleError);
}

TEST_CASE("gamma: reflection and duplication on a grid") {
  const cx pts[] = {cx(0.3, 0.7), cx(0.4, 1.1), cx(-1.2, 0.4), cx(2.6, -3.1), cx(0.5, 20.0)};
  for (cx s : pts) {
    cx refl = gamma_c(s) * gamma_c(1.0 - s) * std::sin(PI * s) / PI;
    CHECK(rel(refl, 1.0) < 1e-12);
    cx dup = gamma_c(2.0 * s) -
             gamma_c(s) * gamma_c(s + 0.5) * std::pow(2.0, 2.0 * s - 1.0) / std::sqrt(PI);
    CHECK(std::abs(dup) / std::abs(gamma_c(2.0 * s)) < 1e-12);
  }
}

TEST_CASE("loggamma consistency with gamma") {
  const cx pts[] = {cx(2.3, 1.0), cx(0.7, -4.0), cx(-2.5, 0.8)};
  for (cx s : pts) CHECK(rel(std::exp(loggamma_c(s)), gamma_c(s)) < 1e-12);
}

TEST_CASE("digamma: recurrence and reflection") {
  // psi(1) = -gamma
  CHECK(rel(digamma_c(cx(1, 0)), -0.57721566490153286060651209) < 1e-13);
  const cx pts[] = {cx(0.4, 0.9), cx(3.1, -2.0), cx(-1.3, 0.5)};
  for (cx s : pts) {
    CHECK(std::abs(digamma_c(s + 1.0) - digamma_c(s) - 1.0 / s) < 1e-12);
  }
}

TEST_CASE("bessel_j: series leading term and J_{1/2}") {
  CHECK(rel(bessel_j(cx(0, 0), cx(0, 0)), 1.0) < 1e-15);
  // paper-pinned closed form at z = 2.3
  double z = 2.3;
  cx want = std::sqrt(2.0 / (PI * z)) * std::sin(z);
  CHECK(rel(bessel_j(cx(0.5, 0), cx(z, 0)), want) < 1e-12);
  cx wantm = std::sqrt(2.0 / (PI * z)) * std::cos(z);
  CHECK(rel(bessel_j(cx(-0.5, 0), cx(z, 0)), wantm) < 1e-12);
}

TEST_CASE("bessel_j: series vs asymptotic at the switch radius") {
  SeriesAsymptoticSwitch lo;  // default radius 12
  SeriesAsymptoticSwitch hi;
  hi.series_radius = 14.0;
  const cx orders[] = {cx(0, 0.3), cx(1.7, 0), cx(0.4, -1.2)};
  const double args[] = {12.5, 13.2};
  for (cx nu : orders)
    for (double r : args)
      for (double th : {0.1, 1.2, -0.9}) {
        cx z = std::polar(r, th);
        CHECK(rel(bessel_j(nu, z, lo), bessel_j(nu, z, hi)) < 1e-10);
      }
}

TEST_CASE("hankel connection: H1 + H2 = 2J") {
  cx nu(0, 0.3);
  cx z(5, 2);
  cx lhs = hankel_h1(nu, z) + hankel_h2(nu, z);
  cx rhs = 2.0 * bessel_j(nu, z);
  CHECK(rel(lhs, rhs) < 1e-10);
  // and J_{-nu} = (e^{i pi nu} H1 + e^{-i pi nu} H2)/2
  cx jm = 0.5 * (std::exp(cx(0, PI) * nu) * hankel_h1(nu, z) +
                 std::exp(-cx(0, PI) * nu) * hankel_h2(nu, z));
  CHECK(rel(jm, bessel_j(-nu, z)) < 1e-10);
}

TEST_CASE("bessel_k: exponential decay and two-route evaluation") {
  cx k30 = bessel_k(cx(0, 0.3), cx(30, 0));
  CHECK(std::abs(k30) < 1e-11);
  cx nu(0.2, 0);
  cx z(1.7, 0);
  cx direct = bessel_k(nu, z);
  cx via_i = 0.5 * PI * (bessel_i(-nu, z) - bessel_i(nu, z)) / std::sin(PI * nu);
  CHECK(rel(direct, via_i) < 1e-9);
  // Wronskian-type pin: K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
  double x = 1.9;
  CHECK(rel(bessel_k(cx(0.5, 0), cx(x, 0)), std::sqrt(PI / (2 * x)) * std::exp(-x)) < 1e-12);
}

TEST_CASE("bessel ODE residual at random points") {
  std::srand(12345);
  auto urand = [] { return 2.0 * (std::rand() / (double)RAND_MAX) - 1.0; };
  for (int it = 0; it < 20; ++it) {
    cx nu(urand(), urand());
    cx z = cx(2.0 + 8.0 * std::abs(urand()), 3.0 * urand());
    double h = 0.01;
    auto J = [&](cx w) { return bessel_j(nu, w); };
    // 5-point fourth-order stencils
    cx d1 = (-J(z + 2 * h) + 8.0 * J(z + h) - 8.0 * J(z - h) + J(z - 2 * h)) / (12 * h);
    cx d2 = (-J(z + 2 * h) + 16.0 * J(z + h) - 30.0 * J(z) + 16.0 * J(z - h) -
             J(z - 2 * h)) /
            (12 * h * h);
    cx resid = z * z * d2 + z * d1 + (z * z - nu * nu) * J(z);
    CHECK(std::abs(resid) < 1e-6 * std::max(1.0, std::abs(J(z))));
  }
}

TEST_CASE("2F1: trivial and Gauss point") {
  CHECK(rel(gauss_2f1(cx(0.3, 0), cx(0.7, 0), cx(1.1, 0), cx(0, 0)), 1.0) < 1e-15);
  cx a(0.2, 0), b(0.3, 0), c(1.1, 0);
  cx gauss = gamma_c(c) * gamma_c(c - a - b) / (gamma_c(c - a) * gamma_c(c - b));
  CHECK(rel(gauss_2f1(a, b, c, cx(1, 0)), gauss) < 1e-12);
}

TEST_CASE("2F1: two evaluation routes agree near the unit circle") {
  cx a(0.35, 0.2), b(0.8, -0.4), c(1.4, 0.1);
  cx z = std::polar(0.9, PI / 3.0);
  // route 1: direct router
  cx v1 = gauss_2f1(a, b, c, z);
  // route 2: Euler transformation applied by hand, inner value from the router
  cx v2 = std::pow(1.0 - z, c - a - b) * gauss_2f1(c - a, c - b, c, z);
  CHECK(rel(v1, v2) < 1e-9);
}

TEST_CASE("2F1: 1/z transformation region with degenerate a-b") {
  // a == b forces the eps-detour path through the 1/z formula
  cx a(0.5, 0.3), c(1.0, 0.6);
  cx z = std::polar(3.0, 2.0);
  cx v1 = gauss_2f1(a, a, c, z);
  // compare with slightly split parameters evaluated directly
  cx d(1e-7, 0);
  cx v2 = 0.5 * (gauss_2f1(a + d, a - d, c, z) + gauss_2f1(a - d, a + d, c, z));
  CHECK(rel(v1, v2) < 1e-7);
}

TEST_CASE("2F1: hypergeometric ODE residual") {
  cx a(0.25, 0.3), b(0.6, -0.2), c(1.3, 0.4);
  for (cx z : {cx(0.3, 0.2), cx(-0.4, 0.5), cx(0.1, -0.35)}) {
    double h = 0.005;
    auto F = [&](cx w) { return gauss_2f1(a, b, c, w); };
    cx d1 = (-F(z + 2 * h) + 8.0 * F(z + h) - 8.0 * F(z - h) + F(z - 2 * h)) / (12 * h);
    cx d2 = (-F(z + 2 * h) + 16.0 * F(z + h) - 30.0 * F(z) + 16.0 * F(z - h) -
             F(z - 2 * h)) /
            (12 * h * h);
    cx resid = z * (1.0 - z) * d2 + (c - (1.0 + a + b) * z) * d1 - a * b * F(z);
    CHECK(std::abs(resid) < 1e-8 * std::max(1.0, std::abs(F(z))));
  }
}

TEST_CASE("2F1: Kummer quadratic transformation on 10 points") {
  cx a(0.3, 0.15), b(0.9, -0.2);
  for (int k = 0; k < 10; ++k) {
    double th = 0.55 * k + 0.3;
    cx z = std::polar(0.5 + 0.04 * k, th);
    if (z.real() >= 1.0) continue;
    cx lhs = gauss_2f1(a, b, 2.0 * b, z);
    cx w = z * z / ((2.0 - z) * (2.0 - z));
    cx rhs = std::pow(1.0 - 0.5 * z, -a) * gauss_2f1(0.5 * a, 0.5 * (a + 1.0), b + 0.5, w);
    CHECK(rel(lhs, rhs) < 1e-8);
  }
}

TEST_CASE("2F1: cut side must be declared") {
  CHECK_THROWS_AS(gauss_2f1(cx(0.3, 0), cx(0.7, 0), cx(1.2, 0), cx(2.0, 0)), DomainError);
  cx above = gauss_2f1(cx(0.3, 0), cx(0.7, 0), cx(1.2, 0), cx(2.0, 0), CutSide::above);
  cx below = gauss_2f1(cx(0.3, 0), cx(0.7, 0), cx(1.2, 0), cx(2.0, 0), CutSide::below);
  CHECK(std::abs(above - below) > 1e-8);              // genuinely different branches
  CHECK(rel(std::conj(above), below) < 1e-9);          // Schwarz reflection for real params
}

TEST_CASE("kummer phi: trivial, J-via-Phi, and large imaginary argument") {
  CHECK(rel(kummer_phi(cx(0.4, 0.1), cx(1.2, 0), cx(0, 0)), 1.0) < 1e-15);

  // paper-pinned: J_nu(x) = (x/2)^nu e^{-ix}/Gamma(1+nu) Phi(1/2+nu, 1+2nu; 2ix)
  double nu = 0.25, x = 1.2;
  cx lhs = bessel_j(cx(nu, 0), cx(x, 0));
  cx rhs = std::pow(0.5 * x, nu) * std::exp(cx(0, -x)) / gamma_c(cx(1 + nu, 0)) *
           kummer_phi(cx(0.5 + nu, 0), cx(1 + 2 * nu, 0), cx(0, 2 * x));
  CHECK(rel(lhs, rhs) < 1e-11);

  // series vs asymptotic handoff: compare against the integral representation
  cx a(0.45, 0.2), c(1.6, 0);
  for (double y : {18.0, 24.0, 30.0, 60.0}) {
    cx direct = kummer_phi(a, c, cx(0, y));
    // Kummer transform gives an independently-routed evaluation
    cx other = std::exp(cx(0, y)) * kummer_phi(c - a, c, cx(0, -y));
    CHECK(rel(direct, other) < 5e-7);  // worst near the series/asymptotic handoff
  }
}

TEST_CASE("kummer psi: asymptotic magnitude") {
  // Psi(a,c;iy) = (iy)^{-a} (1 + O(1/|y|)); fitted constant must stay small
  cx a(0.6, 0), c(1.3, 0);
  double worst = 0.0;
  for (double y : {30.0, 60.0, 120.0}) {
    cx psi = kummer_psi(a, c, cx(0, y));
    cx lead = std::pow(cx(0, y), -a);
    worst = std::max(worst, std::abs(psi / lead - 1.0) * y);
  }
  CHECK(worst < 5.0);
}

TEST_CASE("kummer psi: two-Phi combination at small argument") {
  cx a(0.7, 0.2), c(1.4, 0), z(0.8, 0.5);
  cx lhs = kummer_psi(a, c, z);
  cx rhs = gamma_c(1.0 - c) / gamma_c(a - c + 1.0) * kummer_phi(a, c, z) +
           gamma_c(c - 1.0) / gamma_c(a) * std::pow(z, 1.0 - c) *
               kummer_phi(1.0 + a - c, 2.0 - c, z);
  CHECK(rel(lhs, rhs) < 1e-12);
}
