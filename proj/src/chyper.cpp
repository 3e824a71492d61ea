#include "hankelci/chyper.hpp"

#include <cmath>

namespace hankelci::chyper {

using sfbase::CutSide;
using sfbase::gamma_c;
using sfbase::gauss_2f1;

namespace {

constexpr double DETOUR_TRIGGER = 1e-5;
constexpr double DETOUR_DELTA = 1e-4;

bool near_int_real(cx v, double tol) {
  return std::abs(v.imag()) < tol && std::abs(v.real() - std::round(v.real())) < tol;
}

}  // namespace

cx hyper_f(cx rho, cx nu, cx mu, cx z, CutSide side) {
  cx a = 0.5 * (rho + nu + mu), b = 0.5 * (rho + nu - mu), c = 1.0 + nu;
  return std::exp(0.5 * nu * std::log(z)) * gauss_2f1(a, b, c, z, side);
}

cx hyper_F(cx rho, cx nu, cx mu, cx z, CutSide side) {
  cx a = 0.5 * (rho + nu + mu), b = 0.5 * (rho + nu - mu);
  return gamma_c(a) * gamma_c(b) / gamma_c(1.0 + nu) * hyper_f(rho, nu, mu, z, side);
}

cx hyper_D(cx rho, cx nu, cx mu, cx z) {
  cx a = 0.5 * (rho + nu + mu), b = 0.5 * (rho + nu - mu);
  return gamma_c(a) * gamma_c(b) / gamma_c(1.0 + nu) * std::exp(0.5 * nu * std::log(z));
}

namespace {

cx trig_factor(cx rho, cx nu, cx mu, int p, int d) {
  double sgn = ((d + p) % 2 == 0) ? 1.0 : -1.0;
  return std::cos(PI * (rho + nu)) - sgn * std::cos(PI * mu);
}

// F_{nu,p}^{mu,d}(z) = trig * F_{nu+p}^{mu+d}(z) F_{nu-p}^{mu-d}(conj z).
// For z on (1, inf) the two factors take opposite cut sides, which realizes
// the continuous (real-analytic) boundary value of boldF.
cx F_pair(cx rho, cx nu, cx mu, int p, int d, cx z) {
  CutSide s1 = CutSide::none, s2 = CutSide::none;
  if (z.imag() == 0.0 && z.real() > 1.0) {
    s1 = CutSide::above;
    s2 = CutSide::below;
  }
  return trig_factor(rho, nu, mu, p, d) *
         hyper_F(rho, nu + double(p), mu + double(d), z, s1) *
         hyper_F(rho, nu - double(p), mu - double(d), std::conj(z), s2);
}

cx boldF_core(const HyperParams& q, cx nu, cx z) {
  return (F_pair(q.rho, nu, q.mu, q.p, q.d, z) - F_pair(q.rho, -nu, q.mu, -q.p, q.d, z)) /
         std::sin(PI * nu);
}

cx coeff_C_core(cx rho, cx nu, cx mu, int p, int d) {
  cx g = gamma_c(0.5 * (rho + nu + double(p) + mu + double(d))) *
         gamma_c(0.5 * (rho + nu + double(p) - mu - double(d))) *
         gamma_c(0.5 * (rho + nu - double(p) + mu - double(d))) *
         gamma_c(0.5 * (rho + nu - double(p) - mu + double(d)));
  return trig_factor(rho, nu, mu, p, d) * g /
         (std::sin(PI * nu) * gamma_c(1.0 + nu + double(p)) * gamma_c(1.0 + nu - double(p)));
}

cx boldP_core(const HyperParams& q, cx nu, cx z) {
  double az = std::abs(z), th = std::arg(z);
  cx plus = coeff_C_core(q.rho, nu, q.mu, q.p, q.d) *
            std::exp(nu * std::log(cx(az)) + cx(0, q.p * th));
  cx minus = coeff_C_core(q.rho, -nu, q.mu, -q.p, q.d) *
             std::exp(-nu * std::log(cx(az)) - cx(0, q.p * th));
  return plus + minus;
}

template <typename Fn>
cx with_nu_detour(cx nu, Fn&& fn) {
  if (near_int_real(nu, DETOUR_TRIGGER))
    return 0.5 * (fn(nu + DETOUR_DELTA) + fn(nu - DETOUR_DELTA));
  return fn(nu);
}

}  // namespace

cx coeff_C(const HyperParams& q) {
  return with_nu_detour(q.nu, [&](cx nu) { return coeff_C_core(q.rho, nu, q.mu, q.p, q.d); });
}

cx boldF(const HyperParams& q, cx z) {
  if (z == cx(0, 0)) throw DomainError("boldF: z = 0");
  if (z == cx(1, 0)) {
    if (q.rho.real() >= 1.0)
      throw DomainError("boldF: z = 1 needs Re(rho) < 1 (continuity value)");
  }
  double az = std::abs(z);
  if (az >= 1.35) {
    // reciprocity: |z|^rho boldF(rho; nu,p; mu,d; z) = boldF(rho; mu,d; nu,p; 1/z)
    HyperParams swapped{q.rho, q.mu, q.nu, q.d, q.p};
    return std::exp(-q.rho * std::log(cx(az))) * boldF(swapped, 1.0 / z);
  }
  return with_nu_detour(q.nu, [&](cx nu) { return boldF_core(q, nu, z); });
}

cx boldP(const HyperParams& q, cx z) {
  if (z == cx(0, 0)) throw DomainError("boldP: z = 0");
  return with_nu_detour(q.nu, [&](cx nu) { return boldP_core(q, nu, z); });
}

cx F_rho(cx rho, cx nu, cx z, CutSide side) {
  cx a = 0.5 * (rho + nu), b = 0.5 * (1.0 + rho + nu), c = 1.0 + nu;
  return gamma_c(rho + nu) / gamma_c(1.0 + nu) * std::exp(0.5 * (rho + nu) * std::log(z)) *
         gauss_2f1(a, b, c, z, side);
}

namespace {

cx F_rho_pair_core(cx rho, cx nu, int p, cx z) {
  CutSide s1 = CutSide::none, s2 = CutSide::none;
  if (z.imag() == 0.0 && z.real() > 1.0) {
    s1 = CutSide::above;
    s2 = CutSide::below;
  }
  return std::pow(cx(2.0), -2.0 * nu) * std::sin(PI * (rho + nu)) *
         F_rho(rho, nu + double(p), z, s1) * F_rho(rho, nu - double(p), std::conj(z), s2);
}

}  // namespace

cx F_rho_pair(cx rho, cx nu, int p, cx z) { return F_rho_pair_core(rho, nu, p, z); }

cx boldF_rho(cx rho, cx nu, int p, cx z) {
  if (z == cx(0, 0)) throw DomainError("boldF_rho: z = 0");
  double az = std::abs(z);
  if (az > 1.35) {
    // route through the bridging identity and the boldF reciprocity:
    // pi boldF^rho_{nu,p}(z) = 2^{2 rho - 2} |z|^rho boldF(rho+1/2; nu,p; 1/2,0; z)
    HyperParams q{rho + 0.5, nu, cx(0.5, 0), p, 0};
    return std::exp((2.0 * rho - 2.0) * std::log(cx(2.0))) *
           std::exp(rho * std::log(cx(az))) * boldF(q, z) / PI;
  }
  return with_nu_detour(nu, [&](cx v) {
    return (F_rho_pair_core(rho, -v, -p, z) - F_rho_pair_core(rho, v, p, z)) /
           std::sin(PI * v);
  });
}

}  // namespace hankelci::chyper
