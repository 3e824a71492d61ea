#ifndef HANKELCI_LFUN_HPP
#define HANKELCI_LFUN_HPP

// Dedekind/Hecke zeta functions for Q(i), the Stieltjes constant gamma_F, and
// the Estermann function with its functional equation.

#include "hankelci/common.hpp"
#include "hankelci/zgauss.hpp"

namespace hankelci::lfun {

using zgauss::GaussInt;

// Riemann zeta by Euler-Maclaurin (analytic continuation, s != 1).
cx zeta(cx s);
// Hurwitz zeta(s, a) for 0 < a <= 1.
cx hurwitz_zeta(cx s, double a);
// Dirichlet L(s, chi_{-4}) = 4^{-s} (zeta(s,1/4) - zeta(s,3/4)); entire.
cx dirichlet_L_chi4(cx s);

// zeta_F(s) = zeta(s) L(s, chi_{-4}); simple pole at s = 1 with residue pi/4.
cx zeta_F(cx s);

// Hecke L-function sum over ideals of (n/|n|)^{4p} / |n|^{2s}.
// p = 0 delegates to zeta_F.  p != 0: smoothed lattice sum, Re(s) > 1/2;
// the truncation error is monitored by a doubled-radius rerun and an
// UnsupportedRegionError is thrown when the target cannot be certified.
cx zeta_F_hecke(cx s, int p, double rel_tol = 1e-8);

// Stieltjes constant: zeta_F(s) = (pi/4)/(s-1) + gamma_F + O(s-1).
double gamma_F();

struct EstermannParams {
  cx s;
  cx mu;
  int two_h = 0;  // 2h
  GaussInt a{1, 0};
  GaussInt c{1, 0};
};

// Direct series for Re(s +- mu) > 1, reflected series via the functional
// equation for Re(s +- mu) < 0; the middle strip is refused.
cx estermann(const EstermannParams& p, double rel_tol = 1e-9);

// Gamma(s, mu, h) of the functional equation.
cx gamma_factor(cx s, cx mu, int two_h);

// sigma_s with the paper's convention sigma_s(0) = zeta_F(-s).
cx sigma_s_ext(const GaussInt& n, cx s);

}  // namespace hankelci::lfun

#endif
