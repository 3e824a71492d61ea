#include "doctest.h"

#include <cmath>

#include "hankelci/chyper.hpp"

using namespace hankelci;
using namespace hankelci::chyper;
using sfbase::gamma_c;

namespace {
double rel(cx got, cx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}
}  // namespace

TEST_CASE("hyper_f: leading term near zero") {
  cx rho(0.6, 0), nu(0.1, 0.2), mu(0, 0.07);
  for (double r : {1e-3, 1e-4}) {
    cx z = std::polar(r, 0.8);
    cx lead = std::exp(0.5 * nu * std::log(z));
    CHECK(rel(hyper_f(rho, nu, mu, z), lead) < 3.0 * r);
  }
}

TEST_CASE("hyper_f: second-order ODE residual") {
  cx rho(0.6, 0.1), nu(0.15, 0.2), mu(0, 0.3);
  auto f = [&](cx z) { return hyper_f(rho, nu, mu, z); };
  for (cx z : {cx(0.3, 0.25), cx(-0.2, 0.4), cx(0.45, -0.15)}) {
    double h = 0.004;
    cx d1 = (-f(z + 2 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2 * h)) / (12 * h);
    cx d2 = (-f(z + 2 * h) + 16.0 * f(z + h) - 30.0 * f(z) + 16.0 * f(z - h) -
             f(z - 2 * h)) /
            (12 * h * h);
    cx resid = z * (1.0 - z) * d2 + (1.0 - (1.0 + rho) * z) * d1 -
               (0.25 * (rho * rho - mu * mu) + 0.25 * nu * nu / z) * f(z);
    CHECK(std::abs(resid) < 1e-5 * std::max(1.0, std::abs(f(z))));
  }
}

TEST_CASE("hyper_F: symmetric in mu -> -mu") {
  cx rho(0.7, 0.1), nu(0.2, -0.1), mu(0.1, 0.4), z(0.35, 0.2);
  CHECK(rel(hyper_F(rho, nu, mu, z), hyper_F(rho, nu, -mu, z)) < 1e-12);
}

TEST_CASE("boldF: definitional decomposition through C coefficients") {
  HyperParams q{cx(0.6, 0), cx(0.13, 0.21), cx(0, 0.07), 1, 0};
  for (cx z : {cx(0.3, 0.1), cx(-0.25, 0.33), cx(0.1, -0.5), cx(0.52, 0.12), cx(-0.4, -0.2)}) {
    cx direct = boldF(q, z);
    cx cp = coeff_C(q);
    HyperParams qm{q.rho, -q.nu, q.mu, -q.p, q.d};
    cx cm = coeff_C(qm);
    cx rebuilt =
        cp * hyper_f(q.rho, q.nu + 1.0, q.mu, z) * hyper_f(q.rho, q.nu - 1.0, q.mu, std::conj(z)) +
        cm * hyper_f(q.rho, -q.nu - 1.0, q.mu, z) * hyper_f(q.rho, -q.nu + 1.0, q.mu, std::conj(z));
    CHECK(rel(direct, rebuilt) < 1e-10);
  }
}

TEST_CASE("coeff_C: independent assembly from gammas and cosines") {
  HyperParams q{cx(0.6, 0), cx(0, 0.1), cx(0, 0.07), 1, 0};
  cx nu = q.nu, mu = q.mu, rho = q.rho;
  double p = 1, d = 0;
  cx trig = std::cos(PI * (rho + nu)) - std::cos(PI * mu) * std::pow(-1.0, p + d);
  cx g = gamma_c(0.5 * (rho + nu + p + mu + d)) * gamma_c(0.5 * (rho + nu + p - mu - d)) *
         gamma_c(0.5 * (rho + nu - p + mu - d)) * gamma_c(0.5 * (rho + nu - p - mu + d));
  cx want = trig * g / (std::sin(PI * nu) * gamma_c(1.0 + nu + p) * gamma_c(1.0 + nu - p));
  CHECK(rel(coeff_C(q), want) < 1e-12);
  CHECK(std::isfinite(coeff_C(q).real()));
}

TEST_CASE("boldF: reciprocity formula on a 12-point random grid") {
  std::srand(20240);
  auto urand = [] { return 2.0 * (std::rand() / (double)RAND_MAX) - 1.0; };
  // pinned point from the spec of the identity
  {
    HyperParams q{cx(0.6, 0), cx(0, 0.1), cx(0, 0.07), 1, 0};
    cx z = std::polar(0.4, PI / 5.0);
    HyperParams swapped{q.rho, q.mu, q.nu, q.d, q.p};
    cx lhs = std::exp(q.rho * std::log(cx(std::abs(z)))) * boldF(q, z);
    cx rhs = boldF(swapped, 1.0 / z);
    CHECK(rel(lhs, rhs) < 1e-9);
  }
  int done = 0;
  for (int it = 0; it < 60 && done < 12; ++it) {
    HyperParams q{cx(0.4 + 0.3 * std::abs(urand()), 0.2 * urand()),
                  cx(0.15 * urand(), 0.3 * urand()), cx(0.1 * urand(), 0.3 * urand()),
                  std::rand() % 3, std::rand() % 2};
    cx z = std::polar(0.2 + 0.55 * std::abs(urand()), PI * urand());
    if (std::abs(z - 1.0) < 0.2) continue;
    ++done;
    HyperParams swapped{q.rho, q.mu, q.nu, q.d, q.p};
    cx lhs = std::exp(q.rho * std::log(cx(std::abs(z)))) * boldF(q, z);
    cx rhs = boldF(swapped, 1.0 / z);
    CHECK(rel(lhs, rhs) < 1e-8);
  }
  CHECK(done == 12);
}

TEST_CASE("boldF / boldP: leading-term ratio on a shrinking ladder") {
  HyperParams q{cx(0.55, 0), cx(0.12, 0.2), cx(0, 0.3), 1, 0};  // |Re nu| < 1/2
  double prev = 1e9;
  for (double r : {0.02, 0.01, 0.005}) {
    cx z = std::polar(r, 0.7);
    double err = std::abs(boldF(q, z) / boldP(q, z) - 1.0);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 0.02);
}

TEST_CASE("boldF: single-valued across the positive real axis (p = d = 0)") {
  HyperParams q{cx(0.6, 0), cx(0.1, 0.25), cx(0, 0.17), 0, 0};
  for (double r : {0.3, 0.7}) {
    cx a = boldF(q, std::polar(r, 0.01));
    cx b = boldF(q, std::polar(r, 2.0 * PI - 0.01));  // same point as r e^{-0.01 i}
    CHECK(rel(a, b) < 1e-8);
  }
}

TEST_CASE("boldF: real-analytic across the cut (1, inf)") {
  HyperParams q{cx(0.6, 0), cx(0, 0.2), cx(0, 0.1), 0, 0};
  cx on_cut = boldF(q, cx(1.44, 0));
  cx above = boldF(q, cx(1.44, 1e-6));
  cx below = boldF(q, cx(1.44, -1e-6));
  CHECK(rel(above, below) < 1e-4);
  CHECK(rel(on_cut, 0.5 * (above + below)) < 1e-4);
}

TEST_CASE("boldF: PDE pair annihilation (finite differences)") {
  HyperParams q{cx(0.58, 0), cx(0.11, 0.19), cx(0, 0.23), 1, 1};
  auto F = [&](cx z) { return boldF(q, z); };
  for (cx z : {cx(0.35, 0.2), cx(-0.3, 0.45)}) {
    double h = 0.003;
    auto d1 = [&](auto f, cx w) {
      cx fx = (-f(w + 2 * h) + 8.0 * f(w + h) - 8.0 * f(w - h) + f(w - 2 * h)) / (12 * h);
      cx hy = cx(0, h);
      cx fy = (-f(w + 2.0 * hy) + 8.0 * f(w + hy) - 8.0 * f(w - hy) + f(w - 2.0 * hy)) /
              (12 * h);
      return 0.5 * (fx - cx(0, 1) * fy);
    };
    auto dF = [&](cx w) { return d1(F, w); };
    cx nab1 = z * dF(z);
    auto zd = [&](cx w) { return w * d1(F, w); };
    cx nab2 = z * d1(zd, z);
    cx al = q.nu + double(q.p), ga = q.mu + double(q.d);
    cx resid = (1.0 - z) * nab2 - q.rho * z * nab1 -
               (0.25 * (q.rho * q.rho - ga * ga) * z + 0.25 * al * al) * F(z);
    CHECK(std::abs(resid) < 1e-4 * std::max(1.0, std::abs(F(z))));
  }
}

TEST_CASE("F_rho: leading order near zero") {
  cx rho(0.4, 0), nu(0, 0.1);
  for (double r : {1e-3, 1e-4}) {
    cx z = std::polar(r, 0.5);
    cx lead = gamma_c(rho + nu) / gamma_c(1.0 + nu) * std::exp(0.5 * (rho + nu) * std::log(z));
    CHECK(rel(F_rho(rho, nu, z), lead) < 3.0 * r);
  }
}

TEST_CASE("boldF_rho: bridging identity to the two-parameter family") {
  // pi boldF^rho_{nu,p}(z) = 2^{2 rho - 2} |z|^rho boldF(rho+1/2; nu,p; 1/2,0; z)
  cx rho(0.4, 0), nu(0, 0.1);
  int p = 1;
  cx z(0.2, 0.1);
  cx lhs = PI * boldF_rho(rho, nu, p, z);
  HyperParams q{rho + 0.5, nu, cx(0.5, 0), p, 0};
  cx rhs = std::pow(2.0, 2.0 * rho.real() - 2.0) * std::pow(std::abs(z), rho.real()) *
           boldF(q, z);
  CHECK(rel(lhs, rhs) < 1e-9);
}

TEST_CASE("boldF_rho: Kummer quadratic transformation on 8 points") {
  // pi boldF^rho_{nu,p}(z^2/(2-z)^2) = (|z|/2)^{2 rho} boldF(1/2+rho; 2nu,2p; 1/2-rho; z)
  std::srand(555);
  auto urand = [] { return 2.0 * (std::rand() / (double)RAND_MAX) - 1.0; };
  int done = 0;
  for (int it = 0; it < 50 && done < 8; ++it) {
    cx rho(0.3 + 0.2 * std::abs(urand()), 0.1 * urand());
    cx nu(0.1 * urand(), 0.25 * urand());
    int p = std::rand() % 2;
    cx z(0.8 * urand(), 0.8 * urand());
    if (z.real() >= 0.9 || std::abs(z) < 0.1) continue;
    ++done;
    cx w = z * z / ((2.0 - z) * (2.0 - z));
    cx lhs = PI * boldF_rho(rho, nu, p, w);
    HyperParams q{cx(0.5, 0) + rho, 2.0 * nu, cx(0.5, 0) - rho, 2 * p, 0};
    cx rhs = std::exp(2.0 * rho * std::log(cx(0.5 * std::abs(z)))) * boldF(q, z);
    CHECK(rel(lhs, rhs) < 1e-8);
  }
  CHECK(done == 8);
}

TEST_CASE("boldP: p -> -p, z -> conj z symmetry at d = 0") {
  HyperParams q{cx(0.6, 0.05), cx(0.12, 0.3), cx(0, 0.2), 2, 0};
  HyperParams qm{q.rho, q.nu, q.mu, -q.p, 0};
  for (cx z : {cx(0.4, 0.3), cx(-0.7, 0.1)}) {
    CHECK(rel(boldP(qm, std::conj(z)), boldP(q, z)) < 1e-12);
  }
}
