#ifndef HANKELCI_QUADCX_HPP
#define HANKELCI_QUADCX_HPP

// Quadrature engines: adaptive polar integration over C^x with declared
// origin singularity, oscillatory tails by iterated-Laplacian integration by
// parts or an exponential-damping ladder, and shifted-line spectral integrals.

#include <functional>
#include <string>

#include "hankelci/common.hpp"

namespace hankelci::quadcx {

enum class TailKind { laplacian_parts, exponential_damping, hard_truncation };

struct TailStrategy {
  TailKind kind = TailKind::exponential_damping;
  int M = 2;           // laplacian_parts order
  double eps0 = 0.4;   // damping ladder start
  double R = 2000.0;   // hard truncation radius
};

struct QuadSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-13;
  int max_subdivisions = 4000;
  int angular_order = 64;  // trapezoid points per circle, even
  TailStrategy tail_strategy;
  double inner_radius = 1e-4;
  double outer_radius = 40.0;
};

struct IntegralResult {
  cx value{0, 0};
  double error_estimate = 0.0;
  long nodes = 0;
  double tail_estimate = 0.0;
};

struct IdentityReport {
  std::string identity_id;
  std::string params;  // rendered key=value list
  cx lhs{0, 0}, rhs{0, 0};
  double abs_err = 0.0, rel_err = 0.0;
  long nodes_used = 0;
  double tail_estimate = 0.0;
  double wall_ms = 0.0;
  void finalize() {
    abs_err = std::abs(lhs - rhs);
    rel_err = abs_err / std::max(std::abs(rhs), 1e-300);
  }
};

using CxFn = std::function<cx(cx)>;
using RealFn = std::function<cx(double)>;

// adaptive Gauss-Kronrod (G7K15) on [a, b]
IntegralResult integrate_gk(const RealFn& f, double a, double b, double rel_tol,
                            double abs_tol, int max_subdiv = 4000);

// integral over C^x with the measure i dz ^ dzbar = 2 dx dy; the integrand may
// behave like |z|^{alpha-2} (alpha > 0) at the origin, which must be declared.
// The tail beyond outer_radius follows spec.tail_strategy (hard truncation or
// exponential damping; laplacian_parts tails go through oscillatory_tail).
IntegralResult integrate_cx(const CxFn& f, const QuadSpec& spec, double singular_alpha);

// finite annulus integral (measure i dz ^ dzbar), angle-first iteration
IntegralResult integrate_annulus(const CxFn& f, double r_lo, double r_hi,
                                 const QuadSpec& spec);

// integral over |z| >= c of f_slow(z) e(Re(q z)) i dz ^ dzbar, with f_slow
// vanishing near |z| = c (fold a ring cutoff into the callable).  M rounds of
// the Stokes identity I(f) = I(D^M f)/(pi i |q|)^{2M}, D = d^2/dz dzbar, with
// the Laplacian applied by high-order differencing; falls back to the damping
// ladder when the M-ladder disagrees.
// nk = angular harmonics carried by the tail engine; raise it when f_slow has
// a sub-linear oscillation of its own (e.g. Bessel kernels at sqrt arguments).
// subosc_sqrt declares a residual phase e(a Re sqrt(z)) inside f_slow so the
// radial grids are sized to resolve it.
IntegralResult oscillatory_tail(const CxFn& f_slow, cx q, double c,
                                const QuadSpec& spec, int M, int nk = 64,
                                double subosc_sqrt = 0.0);

// smooth step: 0 for x <= 0, 1 for x >= 1
double smooth_step(double x);

// integral over |z| >= c of a slowly-decaying non-oscillatory integrand
// (absolutely convergent), by geometric annuli with power-law extrapolation
IntegralResult slow_tail(const CxFn& f, double c, const QuadSpec& spec);

// integral over |z| >= c of f_slow(z) e(Re(ell z) + Re(vq z^2)) with a mixed
// linear/quadratic phase; the Stokes step divides by the variable eigenvalue
// pi^2 |ell + 2 vq z|^2, so c must exceed the stationary radius |ell/(2 vq)|.
IntegralResult oscillatory_tail_mixed(const CxFn& f_slow, cx ell, cx vq, double c,
                                      const QuadSpec& spec, int M);

// integral over the horizontal line Im r = lambda of g(r) dr, trapezoid with
// monitored truncation; the caller asserts analyticity in the shift band.
IntegralResult r_integral(const CxFn& g, double lambda, const QuadSpec& spec);

// semi-infinite oscillatory real integral int_0^inf f(x) dx with declared
// endpoint behavior x^{gamma-1} near 0, by substitution plus a damping ladder
// (eps -> 0 Richardson) on the tail.
IntegralResult integrate_semiinf_osc(const RealFn& f, double gamma,
                                     const QuadSpec& spec);

}  // namespace hankelci::quadcx

#endif
