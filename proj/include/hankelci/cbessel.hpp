#ifndef HANKELCI_CBESSEL_HPP
#define HANKELCI_CBESSEL_HPP

// Bessel kernels over C: the product kernels J_{nu,p}, the combinations
// B_{nu,p} (even and odd case), the leading terms D/P, and the regularizers
// A/R/M used by the spectral assembly.

#include "hankelci/common.hpp"
#include "hankelci/sfbase.hpp"

namespace hankelci::cbessel {

struct BesselOrder {
  cx nu;
  int two_p = 0;  // 2p
  bool even() const { return (two_p % 2) == 0; }
  double p() const { return 0.5 * two_p; }
};

// J_{nu,p}(z) = J_{nu+p}(z) J_{nu-p}(conj z)   (argument taken as given)
cx besselJpair(const BesselOrder& o, cx z);

// B_{nu,p}(z): even case (J_{-nu,-p} - J_{nu,p})(4 pi z)/sin(pi nu),
// odd case i (J_{-nu,-p} + J_{nu,p})(4 pi z)/cos(pi nu); limit by a
// nu +- delta detour near the removable singularities.
cx besselB(const BesselOrder& o, cx z);

// leading monomial D_{nu,p}(z) = (|z|/2)^{2nu} (z/|z|)^{2p} / (Gamma(nu+p+1) Gamma(nu-p+1))
cx besselD(const BesselOrder& o, cx z);
// P_{nu,p}(z) = (D_{-nu,-p} - D_{nu,p})(4 pi z)/sin(pi nu)
cx besselP(const BesselOrder& o, cx z);

// two-term expansion A_nu and the regularizers R, M = B - w(|2 pi z|^2) R
cx besselA(cx nu, cx z);
cx besselR(cx nu, cx z);
cx besselM(cx nu, cx z);

// C^inf cutoff: 1 on [0,1], 0 on [4,inf)
double bump_w(double x);

// Oscillatory decomposition for |z| large:
//   B_{nu,p}(z) = e(4 Re z) W+(z) + e(-4 Re z) W-(z) + E_N(z),
// where W+- come from the truncated Hankel asymptotics of the two factors.
cx besselB_Wplus(const BesselOrder& o, cx z, int nterms = 12);
cx besselB_Wminus(const BesselOrder& o, cx z, int nterms = 12);
// magnitude bound estimate for the dropped remainder E_N
double besselB_tail_bound(const BesselOrder& o, double absz, int nterms = 12);

}  // namespace hankelci::cbessel

#endif
