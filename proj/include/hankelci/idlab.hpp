#ifndef HANKELCI_IDLAB_HPP
#define HANKELCI_IDLAB_HPP

// The identity-verification harness: one operation per integral identity,
// each computing both sides independently and producing an IdentityReport.

#include <map>
#include <string>
#include <vector>

#include "hankelci/cbessel.hpp"
#include "hankelci/chyper.hpp"
#include "hankelci/quadcx.hpp"
#include "hankelci/zgauss.hpp"

namespace hankelci::idlab {

using quadcx::IdentityReport;
using quadcx::QuadSpec;

QuadSpec default_spec();

// Hankel-Mellin transform of a product of two Bessel kernels:
//   iint B_{nu,p}(u z) B_{mu,d}(z) |z|^{2 rho - 2} = 2 (2pi)^{-2rho-2} boldF(u^2)
IdentityReport check_hankel_mellin(cx nu, cx mu, cx rho, int p, int d, cx u,
                                   const QuadSpec& spec = default_spec());

// sqrt-argument rephrasing:
//   iint B_{nu,p}(sqrt(v z)) B_{mu,d}(sqrt(w z)) |z|^{rho-2}
//     = boldF(v/w) / (pi^2 (2pi)^{2rho} |w|^rho)
IdentityReport check_hankel_mellin_sqrt(cx nu, cx mu, cx rho, int p, int d, cx v, cx w,
                                        const QuadSpec& spec = default_spec());

// spherical case with the closed Gamma^8 / trig right side
IdentityReport check_gauss_spherical(cx nu, cx mu, cx rho, cx v,
                                     const QuadSpec& spec = default_spec());

// Mellin transform of one kernel with an angular twist (z/|z|)^{2h}
IdentityReport check_mellin(cx gamma, cx nu, int p, int h,
                            const QuadSpec& spec = default_spec());
IdentityReport check_mellin_spherical(cx gamma, cx nu, cx v,
                                      const QuadSpec& spec = default_spec());

// Fourier transform of B(sqrt z) reproducing a Bessel kernel
IdentityReport check_fourier_c(cx nu, int p, cx u, const QuadSpec& spec = default_spec());
// Weber-Schafheitlin type transform with |z|^{2 rho - 2}
IdentityReport check_ws_c(cx nu, int p, cx rho, cx u, const QuadSpec& spec = default_spec());

// staged double Fourier-Mellin transform; both right-hand shapes checked
IdentityReport check_double_fourier(cx nu, int p, cx gamma, cx u, cx w,
                                    const QuadSpec& spec = default_spec());
// the genuine 4-fold iterated check in the mandated order dphi domega dx dy
IdentityReport check_double_fourier_polar(cx nu, int p, double beta, double gamma, double t,
                                          const QuadSpec& spec = default_spec());

enum class RealLineId { weber, hardy, ws_J, ws_K, ws_JJ, ws_KK, ws_JK, ws_KJ };
struct RealLineParams {
  cx nu, mu, rho;
  double y = 3.0;
  int sign = +1;  // e(+xy) or e(-xy) where the identity carries a sign choice
};
IdentityReport check_real_line(RealLineId id, const RealLineParams& p,
                               const QuadSpec& spec = default_spec());

// Appendix A double Fourier integrals, staged through the Kummer closed forms
struct AppendixAParams {
  char kernel = 'J';  // 'J' or 'K'
  cx nu, a, b;
  double y = 1.0, w = 3.0;
};
IdentityReport check_appendix_a(const AppendixAParams& p,
                                const QuadSpec& spec = default_spec());
// stage-1 alone: the inner x-integral against its Phi/Psi closed form
IdentityReport check_appendix_a_inner(const AppendixAParams& p, double v,
                                      const QuadSpec& spec = default_spec());

// ---------------------------------------------------------------------------
// distributional Hankel transform on test functions
// ---------------------------------------------------------------------------

// one term g(z) = |z|^{s} (z/|z|)^{k} P(|z|^2) exp(-a |z|^2)
struct SisTerm {
  cx s;
  int k = 0;
  std::vector<cx> poly;  // P coefficients in powers of |z|^2
  double a = 1.0;
};
struct SisFunction {
  std::vector<SisTerm> terms;
  cx eval(cx z) const;
  SisFunction nabla() const;      // z d/dz
  SisFunction nabla_bar() const;  // zbar d/dzbar
  SisFunction mul_z() const;
  SisFunction mul_zbar() const;
  // standard member of S_sis^{nu,p}: |z|^nu (z/|z|)^p e^{-a|z|^2} + mirror
  static SisFunction sis_pair(cx nu, int p, double a_plus, double a_minus);
};

// H_{nu,p} phi(u) = 2 pi^2 iint phi(z) B_{nu,p}(sqrt(u z)) i dz ^ dzbar.
// route: 0 = 2D quadrature (integrate_cx machinery), 1 = angular-harmonic
// reduction to radial integrals (used by the nested identities).
cx hankel_transform(cx nu, int p, const SisFunction& phi, cx u, int route = 0,
                    const QuadSpec& spec = default_spec());

IdentityReport check_hankel_inversion(cx nu, int p, const SisFunction& phi,
                                      const QuadSpec& spec = default_spec());
IdentityReport check_hankel_parseval(cx nu, int p, const SisFunction& psi,
                                     const SisFunction& phi,
                                     const QuadSpec& spec = default_spec());
// id 1: nabla H phi = -H(nabla phi + phi)
// id 2: nabla^2 H phi = H(nabla^2 phi + 2 nabla phi + phi)
// id 3: 4 nabla^2 H phi = (nu+p)^2 H phi - 16 pi^2 u H(z phi)
IdentityReport check_hankel_operator_id(int which, cx nu, int p, const SisFunction& phi,
                                        const QuadSpec& spec = default_spec());

// ---------------------------------------------------------------------------
// Voronoi-Oppenheim summation over Z[i]
// ---------------------------------------------------------------------------

struct VoronoiParams {
  cx mu{0, 0.3};
  zgauss::GaussInt a{1, 0};
  zgauss::GaussInt c{1, 0};
  double r_lo = 0.5, r_hi = 8.0;  // support of the radial annulus bump
};
IdentityReport check_voronoi(const VoronoiParams& p, const QuadSpec& spec = default_spec());

// registry for the CLI: name -> runner over key=value parameters
using ParamMap = std::map<std::string, std::string>;
std::vector<std::string> registered_checks();
IdentityReport run_check(const std::string& id, const ParamMap& params,
                         const QuadSpec& spec = default_spec());
// named suites: suite -> list of (check id, params)
std::vector<std::pair<std::string, ParamMap>> suite_cases(const std::string& suite);
std::vector<std::string> registered_suites();

}  // namespace hankelci::idlab

#endif
