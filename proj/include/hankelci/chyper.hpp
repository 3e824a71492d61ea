#ifndef HANKELCI_CHYPER_HPP
#define HANKELCI_CHYPER_HPP

// The hypergeometric family over C: the solutions f, the Gamma-prefactored F,
// the coefficients C, the single-valued combination boldF with its leading
// term boldP, and the rho-indexed family of Fourier-transform formulae.

#include "hankelci/common.hpp"
#include "hankelci/sfbase.hpp"

namespace hankelci::chyper {

struct HyperParams {
  cx rho, nu, mu;
  int p = 0, d = 0;
};

// f(z) = z^{nu/2} 2F1((rho+nu+mu)/2, (rho+nu-mu)/2; 1+nu; z)
cx hyper_f(cx rho, cx nu, cx mu, cx z, sfbase::CutSide side = sfbase::CutSide::none);
// F = Gamma((rho+nu+mu)/2) Gamma((rho+nu-mu)/2) / Gamma(1+nu) * f
cx hyper_F(cx rho, cx nu, cx mu, cx z, sfbase::CutSide side = sfbase::CutSide::none);
// leading monomial of F
cx hyper_D(cx rho, cx nu, cx mu, cx z);

// C_{nu,p}^{mu,d} in the decomposition boldF = C f f + C' f f
cx coeff_C(const HyperParams& q);

// the single-valued combination, real analytic off {0, 1}
cx boldF(const HyperParams& q, cx z);
// leading term C |z|^nu (z/|z|)^p + C' |z|^{-nu} (z/|z|)^{-p}
cx boldP(const HyperParams& q, cx z);

// rho-family: F^rho_nu(z) = Gamma(rho+nu)/Gamma(1+nu) z^{(rho+nu)/2}
//                            2F1((rho+nu)/2, (1+rho+nu)/2; 1+nu; z)
cx F_rho(cx rho, cx nu, cx z, sfbase::CutSide side = sfbase::CutSide::none);
// F^rho_{nu,p}(z) = 2^{-2nu} sin(pi(rho+nu)) F^rho_{nu+p}(z) F^rho_{nu-p}(conj z)
cx F_rho_pair(cx rho, cx nu, int p, cx z);
// boldF^rho_{nu,p} = (F^rho_{-nu,-p} - F^rho_{nu,p}) / sin(pi nu)
cx boldF_rho(cx rho, cx nu, int p, cx z);

}  // namespace hankelci::chyper

#endif
