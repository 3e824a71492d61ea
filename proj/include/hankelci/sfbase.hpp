#ifndef HANKELCI_SFBASE_HPP
#define HANKELCI_SFBASE_HPP

// Classical special functions with complex order and argument: Gamma, log-Gamma,
// digamma, the Bessel functions J/I/K/H^(1,2), the Gauss hypergeometric function
// with transformation-based region routing, and Kummer's Phi/Psi.

#include "hankelci/common.hpp"

namespace hankelci::sfbase {

cx gamma_c(cx s);
cx loggamma_c(cx s);  // principal branch, analytic on C minus (-inf, 0]
cx digamma_c(cx s);

// Series/asymptotic switch for the Bessel evaluators.  The asymptotic error
// term (magnitude of the last retained term) is monitored; if it cannot reach
// target_rel_tol a PrecisionError is thrown.
struct SeriesAsymptoticSwitch {
  double series_radius = 12.0;
  int asymptotic_terms = 40;
  double target_rel_tol = 1e-10;
};

cx bessel_j(cx nu, cx z, const SeriesAsymptoticSwitch& sw = {});
cx bessel_i(cx nu, cx z, const SeriesAsymptoticSwitch& sw = {});
cx bessel_k(cx nu, cx z, const SeriesAsymptoticSwitch& sw = {});
cx hankel_h1(cx nu, cx z, const SeriesAsymptoticSwitch& sw = {});
cx hankel_h2(cx nu, cx z, const SeriesAsymptoticSwitch& sw = {});

// Truncated Hankel asymptotic series S^(1,2)_nu(z) = sum_n (+-i)^n (nu,n)/(2z)^n
// with (nu,n) = Gamma(nu+n+1/2)/(n! Gamma(nu-n+1/2)).  Exposed for the
// oscillatory-tail decomposition of the Bessel kernels over C.
cx hankel_series_s1(cx nu, cx z, int nterms);
cx hankel_series_s2(cx nu, cx z, int nterms);

// [J_{-nu,-p} - J_{nu,p}](w) / sin(pi nu)  (even case) or
// i [J_{-nu,-p} + J_{nu,p}](w) / cos(pi nu) (odd case), where
// J_{nu,p}(w) = J_{nu+p}(w) J_{nu-p}(conj w), summed in extended precision:
// the combination cancels like e^{2|Im w|} against the factor magnitudes.
cx bessel_jpair_combo(cx nu, double p, bool even_case, cx w);

// Which side of the cut [1, inf) to approach when z lands on it.
enum class CutSide { none, above, below };

cx gauss_2f1(cx a, cx b, cx c, cx z, CutSide side = CutSide::none);
// lim_{c -> 1-n} 2F1(a,b;c;z)/Gamma(c), n = 0,1,2,...
cx gauss_2f1_regularized(cx a, cx b, cx c, cx z, CutSide side = CutSide::none);

cx kummer_phi(cx a, cx c, cx z);
cx kummer_psi(cx a, cx c, cx z);

}  // namespace hankelci::sfbase

#endif
