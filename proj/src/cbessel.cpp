#include "hankelci/cbessel.hpp"

#include <cmath>

namespace hankelci::cbessel {

using sfbase::bessel_j;

namespace {

constexpr double DETOUR_TRIGGER = 1e-5;
constexpr double DETOUR_DELTA = 1e-4;

double dist_to_int(double x) { return std::abs(x - std::round(x)); }
double dist_to_half_int(double x) { return std::abs(x - std::round(x - 0.5) - 0.5); }

cx jpair(cx nu, double p, cx z) {
  return bessel_j(nu + p, z) * bessel_j(nu - p, std::conj(z));
}

// truncated Hankel product series with a dropped-term estimate
struct WPart {
  cx value;
  double rel_err;
};

WPart hankel_pair_series(cx nu, double p, cx w, int sign, int nterms) {
  auto one = [&](cx order, cx arg) -> std::pair<cx, double> {
    cx iw = cx(0, sign) / (2.0 * arg);
    cx term = 1.0, sum = 1.0;
    double last = 1.0, dropped = 0.0;
    for (int n = 0; n < nterms; ++n) {
      cx next = term * (order + (n + 0.5)) * (order - (n + 0.5)) / cx(n + 1.0) * iw;
      double m = std::abs(next);
      if (m >= last && n > 1) { dropped = m; break; }
      sum += next;
      term = next;
      last = m;
      dropped = m;
      if (m < 1e-17 * std::abs(sum)) { dropped = 0.0; break; }
    }
    return {sum, dropped};
  };
  auto [s1, d1] = one(nu + p, w);
  auto [s2, d2] = one(nu - p, std::conj(w));
  double scale = std::max(std::abs(s1) * std::abs(s2), 1e-300);
  return {s1 * s2, (d1 * std::abs(s2) + d2 * std::abs(s1)) / scale};
}

// B via the Hankel-product (W) form; valid once the dropped terms are small:
//   even: B = (1/(pi |w|)) [e^{2i Re w} S1 S1~ + e^{-2i Re w} S2 S2~]
//   odd:  same with the second term negated
WPart besselB_wform(cx nu, double p, bool even, cx w) {
  WPart plus = hankel_pair_series(nu, p, w, +1, 48);
  WPart minus = hankel_pair_series(nu, p, w, -1, 48);
  double c = 2.0 * w.real();
  cx val = (eunit(c / TWO_PI) * plus.value +
            (even ? 1.0 : -1.0) * eunit(-c / TWO_PI) * minus.value) /
           (PI * std::abs(w));
  return {val, plus.rel_err + minus.rel_err};
}

cx besselB_core(cx nu, double p, bool even, cx z) {
  // evenness/oddness reflection keeps arg(w) away from the sqrt-branch seam
  if (z.real() < 0.0) {
    cx v = besselB_core(nu, p, even, -z);
    return even ? v : -v;
  }
  cx w = 4.0 * PI * z;
  double aw = std::abs(w);
  if (aw >= 11.0) {
    WPart wf = besselB_wform(nu, p, even, w);
    if (wf.rel_err < 3e-10) return wf.value;
  }
  if (std::abs(w.imag()) <= 5.0 && aw <= 38.0) {
    // the J-product combination cancels like e^{2 |Im w|}: plain doubles are
    // fine this close to the real axis
    if (even) return (jpair(-nu, -p, w) - jpair(nu, p, w)) / std::sin(PI * nu);
    return cx(0, 1) * (jpair(-nu, -p, w) + jpair(nu, p, w)) / std::cos(PI * nu);
  }
  if (aw <= 38.0) return sfbase::bessel_jpair_combo(nu, p, even, w);
  // large argument with the asymptotics rejected (order comparable to |w|):
  // fall back to the factor route and accept its cancellation
  if (even) return (jpair(-nu, -p, w) - jpair(nu, p, w)) / std::sin(PI * nu);
  return cx(0, 1) * (jpair(-nu, -p, w) + jpair(nu, p, w)) / std::cos(PI * nu);
}

}  // namespace

cx besselJpair(const BesselOrder& o, cx z) { return jpair(o.nu, o.p(), z); }

cx besselB(const BesselOrder& o, cx z) {
  if (z == cx(0, 0)) throw DomainError("besselB: z = 0");
  bool even = o.even();
  double near = even ? (std::abs(o.nu.imag()) < DETOUR_TRIGGER ? dist_to_int(o.nu.real()) : 1.0)
                     : (std::abs(o.nu.imag()) < DETOUR_TRIGGER ? dist_to_half_int(o.nu.real()) : 1.0);
  if (near < DETOUR_TRIGGER) {
    cx a = besselB_core(o.nu + DETOUR_DELTA, o.p(), even, z);
    cx b = besselB_core(o.nu - DETOUR_DELTA, o.p(), even, z);
    return 0.5 * (a + b);
  }
  return besselB_core(o.nu, o.p(), even, z);
}

cx besselD(const BesselOrder& o, cx z) {
  if (z == cx(0, 0)) throw DomainError("besselD: z = 0");
  double az = std::abs(z);
  double th = std::arg(z);
  cx radial = std::exp(2.0 * o.nu * std::log(cx(0.5 * az)));
  cx angular = std::exp(cx(0, o.two_p * th));  // (z/|z|)^{2p}
  cx g1 = 1.0 / sfbase::gamma_c(o.nu + o.p() + 1.0);
  cx g2 = 1.0 / sfbase::gamma_c(o.nu - o.p() + 1.0);
  return radial * angular * g1 * g2;
}

namespace {
cx besselP_core(cx nu, const BesselOrder& o, cx z) {
  BesselOrder plus{nu, o.two_p};
  BesselOrder minus{-nu, -o.two_p};
  cx w = 4.0 * PI * z;
  return (besselD(minus, w) - besselD(plus, w)) / std::sin(PI * nu);
}
}  // namespace

cx besselP(const BesselOrder& o, cx z) {
  if (z == cx(0, 0)) throw DomainError("besselP: z = 0");
  if (std::abs(o.nu.imag()) < DETOUR_TRIGGER && dist_to_int(o.nu.real()) < DETOUR_TRIGGER) {
    return 0.5 * (besselP_core(o.nu + DETOUR_DELTA, o, z) +
                  besselP_core(o.nu - DETOUR_DELTA, o, z));
  }
  return besselP_core(o.nu, o, z);
}

cx besselA(cx nu, cx z) {
  // two-term expansion of J_nu(z) J_nu(conj z); the quadratic term enters with
  // the J-series sign, which is what makes M = B - w R vanish to order |z|^4
  double az = std::abs(z);
  cx radial = std::exp(2.0 * nu * std::log(cx(0.5 * az)));
  cx g1 = sfbase::gamma_c(nu + 1.0);
  cx zq = 0.25 * (z * z + std::conj(z) * std::conj(z));  // (z/2)^2 + (conj z/2)^2
  return radial / (g1 * g1) - radial * zq / (g1 * sfbase::gamma_c(nu + 2.0));
}

namespace {
cx besselR_core(cx nu, cx z) {
  cx w = 4.0 * PI * z;
  return (besselA(-nu, w) - besselA(nu, w)) / std::sin(PI * nu);
}
}  // namespace

cx besselR(cx nu, cx z) {
  if (std::abs(nu.imag()) < DETOUR_TRIGGER && dist_to_int(nu.real()) < DETOUR_TRIGGER)
    return 0.5 * (besselR_core(nu + DETOUR_DELTA, z) + besselR_core(nu - DETOUR_DELTA, z));
  return besselR_core(nu, z);
}

double bump_w(double x) {
  if (x <= 1.0) return 1.0;
  if (x >= 4.0) return 0.0;
  double t = (4.0 - x) / 3.0;  // 1 at x=1, 0 at x=4
  double g1 = std::exp(-1.0 / t), g0 = std::exp(-1.0 / (1.0 - t));
  return g1 / (g1 + g0);
}

cx besselM(cx nu, cx z) {
  double cutoff = bump_w(std::norm(2.0 * PI * z));
  cx b = besselB(BesselOrder{nu, 0}, z);
  if (cutoff == 0.0) return b;
  return b - cutoff * besselR(nu, z);
}

cx besselB_Wplus(const BesselOrder& o, cx z, int nterms) {
  cx w = 4.0 * PI * z;
  cx s = sfbase::hankel_series_s1(o.nu + o.p(), w, nterms) *
         sfbase::hankel_series_s1(o.nu - o.p(), std::conj(w), nterms);
  return s / (4.0 * PI * PI * std::abs(z));
}

cx besselB_Wminus(const BesselOrder& o, cx z, int nterms) {
  cx w = 4.0 * PI * z;
  cx s = sfbase::hankel_series_s2(o.nu + o.p(), w, nterms) *
         sfbase::hankel_series_s2(o.nu - o.p(), std::conj(w), nterms);
  double sign = o.even() ? 1.0 : -1.0;
  return sign * s / (4.0 * PI * PI * std::abs(z));
}

double besselB_tail_bound(const BesselOrder& o, double absz, int nterms) {
  // first dropped coefficient of the Hankel series at |4 pi z|
  double w = 8.0 * PI * absz;  // |2 * (4 pi z)|
  cx nu = o.nu + o.p();
  double t = 1.0, worst = 1.0;
  for (int n = 0; n < nterms; ++n) {
    t *= std::abs((nu + (n + 0.5)) * (nu - (n + 0.5))) / ((n + 1.0) * w);
    worst = std::min(worst, t);
  }
  return 4.0 * worst / (4.0 * PI * PI * absz);
}

}  // namespace hankelci::cbessel
