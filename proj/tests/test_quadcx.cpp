#include "doctest.h"

#include <cmath>

#include "hankelci/cbessel.hpp"
#include "hankelci/quadcx.hpp"
#include "hankelci/sfbase.hpp"

using namespace hankelci;
using namespace hankelci::quadcx;

namespace {
double rel(cx got, cx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}
}  // namespace

TEST_CASE("integrate_gk: smooth and endpoint-singular integrands") {
  auto r1 = integrate_gk([](double x) { return cx(std::sin(x), 0); }, 0.0, PI, 1e-12, 1e-14);
  CHECK(rel(r1.value, 2.0) < 1e-12);
  auto r2 = integrate_gk([](double x) { return cx(std::exp(-x * x), 0); }, -8.0, 8.0, 1e-12,
                         1e-14);
  CHECK(rel(r2.value, std::sqrt(PI)) < 1e-12);
}

TEST_CASE("integrate_cx: measure convention gives 2 pi on the unit disk") {
  QuadSpec spec;
  spec.outer_radius = 1.0;
  spec.tail_strategy.kind = TailKind::hard_truncation;
  spec.tail_strategy.R = 1.0;
  auto res = integrate_cx([](cx) { return cx(1, 0); }, spec, 2.0);
  CHECK(rel(res.value, TWO_PI) < 1e-10);
}

TEST_CASE("integrate_cx: Gaussian over C equals 2 with the doubled measure") {
  QuadSpec spec;
  spec.outer_radius = 9.0;
  spec.tail_strategy.kind = TailKind::hard_truncation;
  spec.tail_strategy.R = 9.5;
  auto res = integrate_cx([](cx z) { return cx(std::exp(-PI * std::norm(z)), 0); }, spec, 2.0);
  CHECK(rel(res.value, 2.0) < 1e-10);
}

TEST_CASE("integrate_cx: radial power with origin exponent alpha") {
  // f = |z|^{2 gamma - 2} on the unit disk, gamma = 0.3:
  // integral = 2 * 2pi * int_0^1 r^{2 gamma - 1} dr = 4 pi / (2 gamma)
  QuadSpec spec;
  spec.outer_radius = 1.0;
  spec.tail_strategy.kind = TailKind::hard_truncation;
  spec.tail_strategy.R = 1.0;
  double gamma = 0.3;
  auto res = integrate_cx(
      [&](cx z) { return cx(std::pow(std::abs(z), 2.0 * gamma - 2.0), 0); }, spec,
      2.0 * gamma);
  CHECK(rel(res.value, 2.0 * TWO_PI / (2.0 * gamma)) < 1e-9);
}

TEST_CASE("integrate_cx: angular harmonics integrate to zero") {
  QuadSpec spec;
  spec.outer_radius = 2.0;
  spec.tail_strategy.kind = TailKind::hard_truncation;
  spec.tail_strategy.R = 2.0;
  auto res = integrate_cx(
      [](cx z) {
        double th = std::arg(z);
        return std::exp(cx(0, 3 * th)) * std::exp(-std::norm(z));
      },
      spec, 2.0);
  CHECK(std::abs(res.value) < 1e-10);
}

TEST_CASE("oscillatory_tail: compactly supported bump equals direct quadrature") {
  // f = bump(|z|) supported on [c, 8]; absolutely convergent already
  QuadSpec spec;
  double c = 2.0;
  cx q(1.3, 0.4);
  auto f = [&](cx z) {
    double r = std::abs(z);
    return cx(smooth_step((r - 2.0) / 2.5) * smooth_step((9.0 - r) / 3.0), 0);
  };
  auto direct = integrate_annulus([&](cx z) { return f(z) * eunit((q * z).real()); }, c, 10.0,
                                  spec);
  auto tail = oscillatory_tail(f, q, c, spec, 2);
  CHECK(std::abs(tail.value - direct.value) < 1e-6 * std::max(1.0, std::abs(direct.value)));
}

TEST_CASE("oscillatory_tail: Bessel-kernel tail stable across M and strategies") {
  using cbessel::BesselOrder;
  using cbessel::besselB_Wplus;
  double c = 6.0;
  double rho = 1.2;
  BesselOrder o1{cx(0, 0), 0}, o2{cx(0, 0.1), 0};
  // the e(4 Re z) x e(4 Re 0.4 z) component of B(z) B(0.4 z) |z|^{2 rho - 2}
  auto fslow = [&](cx z) {
    double r = std::abs(z);
    double cut = smooth_step((r - c) / c);
    if (cut == 0.0) return cx(0, 0);
    return cut * besselB_Wplus(o1, z) * besselB_Wplus(o2, 0.4 * z) *
           std::pow(r, 2.0 * rho - 2.0);
  };
  cx qq(4.0 + 1.6, 0);
  QuadSpec spec;
  spec.rel_tol = 1e-8;
  auto m2 = oscillatory_tail(fslow, qq, c, spec, 2);
  auto m3 = oscillatory_tail(fslow, qq, c, spec, 3);
  CHECK(std::abs(m2.value - m3.value) <
        1e-5 * std::max({std::abs(m2.value), std::abs(m3.value), 1e-8}));
  // damping-ladder agreement (dual-strategy oracle)
  std::vector<double> eps = {0.5, 0.25, 0.125};
  std::vector<cx> vals;
  for (double e : eps) {
    auto damped = [&](cx z) {
      return fslow(z) * eunit((qq * z).real()) * std::exp(-e * (std::abs(z) - c));
    };
    auto seg = integrate_annulus(damped, c, c + 42.0 / e, spec);
    vals.push_back(seg.value);
  }
  cx t01 = (eps[0] * vals[1] - eps[1] * vals[0]) / (eps[0] - eps[1]);
  cx t12 = (eps[1] * vals[2] - eps[2] * vals[1]) / (eps[1] - eps[2]);
  cx t012 = (eps[0] * t12 - eps[2] * t01) / (eps[0] - eps[2]);
  CHECK(std::abs(m3.value - t012) < 1e-5 * std::max(1.0, std::abs(m3.value)));
}

TEST_CASE("r_integral: Gaussian moments and contour-shift invariance") {
  QuadSpec spec;
  auto g = [](cx r) { return std::exp(-r * r) * r * r; };
  auto a = r_integral(g, 0.0, spec);
  CHECK(rel(a.value, 0.5 * std::sqrt(PI)) < 1e-11);
  auto b = r_integral(g, 0.3, spec);
  CHECK(rel(b.value, a.value) < 1e-10);
}

TEST_CASE("integrate_semiinf_osc: Fresnel-type closed form") {
  // int_0^inf x^{gamma-1} e(x y) dx = Gamma(gamma) (2 pi y)^{-gamma} e^{i pi gamma / 2}
  double gamma = 0.45, y = 0.8;
  QuadSpec spec;
  auto f = [&](double x) { return std::pow(x, gamma - 1.0) * eunit(x * y); };
  auto res = integrate_semiinf_osc(f, gamma, spec);
  cx want = sfbase::gamma_c(cx(gamma, 0)) * std::pow(TWO_PI * y, -gamma) *
            std::exp(cx(0, 0.5 * PI * gamma));
  CHECK(rel(res.value, want) < 1e-8);
}

TEST_CASE("doubling invariance: halving rel_tol stays within the error estimate") {
  QuadSpec spec;
  spec.outer_radius = 3.0;
  spec.tail_strategy.kind = TailKind::exponential_damping;
  auto f = [](cx z) { return std::exp(-std::abs(z)) * std::cos(2.0 * z.real()); };
  auto r1 = integrate_cx(f, spec, 2.0);
  QuadSpec spec2 = spec;
  spec2.rel_tol *= 0.5;
  auto r2 = integrate_cx(f, spec2, 2.0);
  CHECK(std::abs(r1.value - r2.value) <= r1.error_estimate + 1e-14);
}
