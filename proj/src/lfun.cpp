#include "hankelci/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

#include "hankelci/sfbase.hpp"

namespace hankelci::lfun {

namespace {

constexpr std::array<double, 10> B2K = {
    1.0 / 6.0,   -1.0 / 30.0,      1.0 / 42.0,   -1.0 / 30.0,      5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,    -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};

}  // namespace

cx hurwitz_zeta(cx s, double a) {
  if (s == cx(1, 0)) throw PoleError("hurwitz_zeta: pole at s = 1", s, cx(1, 0));
  int N = 24 + (int)(0.6 * std::abs(s.imag()));
  KahanC head;
  for (int n = 0; n < N; ++n) head.add(std::exp(-s * std::log(cx(n + a))));
  cx Na(N + a, 0);
  cx logNa = std::log(Na);
  cx tail = std::exp((1.0 - s) * logNa) / (s - 1.0) + 0.5 * std::exp(-s * logNa);
  // Bernoulli correction: sum_k B_{2k}/(2k)! (s)_{2k-1} (N+a)^{-s-2k+1}
  cx poch = s;  // (s)_1
  double fact = 2.0;  // (2k)!
  cx w = std::exp((-s - 1.0) * logNa);
  cx corr = 0.0;
  for (int k = 1; k <= 10; ++k) {
    corr += B2K[k - 1] / fact * poch * w;
    // advance: (s)_{2k+1} = (s)_{2k-1} (s+2k-1)(s+2k)
    poch *= (s + cx(2 * k - 1.0)) * (s + cx(2 * k));
    fact *= (2 * k + 1.0) * (2 * k + 2.0);
    w /= Na * Na;
  }
  return head.value() + tail + corr;
}

cx zeta(cx s) {
  if (s == cx(1, 0)) throw PoleError("zeta: pole at s = 1", s, cx(1, 0));
  return hurwitz_zeta(s, 1.0);
}

namespace {

cx cexpm1(cx w) {
  if (std::abs(w) > 1e-4) return std::exp(w) - 1.0;
  return w * (1.0 + 0.5 * w * (1.0 + w / 3.0));
}

// zeta(s, a) - zeta(s, b): the s = 1 poles cancel; computed with a shared
// Euler-Maclaurin cutoff so the cancellation is done analytically.
cx hurwitz_zeta_diff(cx s, double a, double b) {
  int N = 24 + (int)(0.6 * std::abs(s.imag()));
  KahanC head;
  for (int n = 0; n < N; ++n) {
    head.add(std::exp(-s * std::log(cx(n + a))));
    head.add(-std::exp(-s * std::log(cx(n + b))));
  }
  double la = std::log(N + a), lb = std::log(N + b);
  // [(N+a)^{1-s} - (N+b)^{1-s}]/(s-1), stable near s = 1
  cx t = 1.0 - s;
  cx tailpole = -std::exp(t * lb) * (la - lb) *
                ((std::abs(t * (la - lb)) < 1e-4)
                     ? (1.0 + 0.5 * t * (la - lb))
                     : cexpm1(t * (la - lb)) / (t * (la - lb)));
  cx out = head.value() + tailpole;
  auto half_and_bernoulli = [&](double aa, double sign) {
    cx Na(N + aa, 0);
    cx logNa = std::log(Na);
    cx piece = 0.5 * std::exp(-s * logNa);
    cx poch = s;
    double fact = 2.0;
    cx w = std::exp((-s - 1.0) * logNa);
    for (int k = 1; k <= 10; ++k) {
      piece += B2K[k - 1] / fact * poch * w;
      poch *= (s + cx(2 * k - 1.0)) * (s + cx(2 * k));
      fact *= (2 * k + 1.0) * (2 * k + 2.0);
      w /= Na * Na;
    }
    out += sign * piece;
  };
  half_and_bernoulli(a, +1.0);
  half_and_bernoulli(b, -1.0);
  return out;
}

}  // namespace

cx dirichlet_L_chi4(cx s) {
  return std::exp(-s * std::log(cx(4.0))) * hurwitz_zeta_diff(s, 0.25, 0.75);
}

cx zeta_F(cx s) {
  if (std::abs(s - cx(1, 0)) < 1e-14)
    throw PoleError("zeta_F: simple pole at s = 1", cx(1, 0), cx(PI / 4.0, 0));
  return zeta(s) * dirichlet_L_chi4(s);
}

double gamma_F() {
  static double cached = 0.0;
  static bool have = false;
  if (have) return cached;
  auto g = [](double e) {
    return (zeta_F(cx(1.0 + e, 0)) - cx(PI / 4.0 / e, 0)).real();
  };
  // Neville extrapolation to e -> 0 on a 3-point ladder
  double e0 = 1e-2, e1 = 5e-3, e2 = 2.5e-3;
  double g0 = g(e0), g1 = g(e1), g2 = g(e2);
  double g01 = (e0 * g1 - e1 * g0) / (e0 - e1);
  double g12 = (e1 * g2 - e2 * g1) / (e1 - e2);
  double g012 = (e0 * g12 - e2 * g01) / (e0 - e2);
  cached = g012;
  have = true;
  return cached;
}

// ---------------------------------------------------------------------------
// Hecke characters: smoothed lattice sums
// ---------------------------------------------------------------------------

namespace {

// Super-exponential cutoff whose Mellin transform decays exponentially on
// vertical lines, so smoothed sums converge without slow Gevrey remainders.
double smooth_cut(double x) {
  double q = x * x;
  q *= q;  // x^4
  return (q > 41.0) ? 0.0 : std::exp(-q);
}

cx hecke_smoothed_sum(cx s, int p, double X) {
  // sum over canonical generators (x > 0, y >= 0), cut off at norm ~2.5X
  KahanC acc;
  long long R2 = (long long)std::ceil(2.5 * X);
  long long xmax = (long long)std::floor(std::sqrt((double)R2));
  for (long long x = 1; x <= xmax; ++x) {
    long long ymax2 = R2 - x * x;
    long long ymax = (long long)std::floor(std::sqrt((double)ymax2));
    for (long long y = 0; y <= ymax; ++y) {
      double N = (double)(x * x + y * y);
      double w = smooth_cut(N / X);
      if (w == 0.0) continue;
      double th = std::atan2((double)y, (double)x);
      cx chi = std::exp(cx(0, 4.0 * p * th));
      acc.add(w * chi * std::exp(-s * std::log(cx(N))));
    }
  }
  return acc.value();
}

}  // namespace

cx zeta_F_hecke(cx s, int p, double rel_tol) {
  if (p == 0) return zeta_F(s);
  if (s.real() <= 0.5)
    throw UnsupportedRegionError("zeta_F_hecke: continuation left of Re(s) = 1/2 not supported");
  double X = 40000.0;
  cx prev = hecke_smoothed_sum(s, p, X);
  for (int it = 0; it < 4; ++it) {
    X *= 2.0;
    cx cur = hecke_smoothed_sum(s, p, X);
    double scale = std::max(std::abs(cur), 1e-300);
    if (std::abs(cur - prev) < rel_tol * scale) return cur;
    prev = cur;
  }
  throw PrecisionError("zeta_F_hecke: smoothed truncation did not certify the target",
                       std::abs(prev));
}

// ---------------------------------------------------------------------------
// Estermann function
// ---------------------------------------------------------------------------

namespace {

using zgauss::Int;

struct IdealEntry {
  long long re, im;       // canonical generator
  double norm;
  std::vector<double> divisor_norms;  // norms of ideal divisors
};

// canonical ideal generators with norm <= cap, sorted by norm; divisor norms attached
const std::vector<IdealEntry>& ideal_table(long long cap) {
  static std::mutex mu;
  static std::vector<IdealEntry> table;
  static long long have_cap = 0;
  std::lock_guard<std::mutex> lock(mu);
  if (cap <= have_cap) return table;
  table.clear();
  long long xmax = (long long)std::floor(std::sqrt((double)cap));
  for (long long x = 1; x <= xmax; ++x) {
    long long ymax2 = cap - x * x;
    long long ymax = (long long)std::floor(std::sqrt((double)ymax2));
    for (long long y = 0; y <= ymax; ++y) {
      IdealEntry e;
      e.re = x;
      e.im = y;
      e.norm = (double)(x * x + y * y);
      table.push_back(std::move(e));
    }
  }
  std::sort(table.begin(), table.end(),
            [](const IdealEntry& a, const IdealEntry& b) { return a.norm < b.norm; });
  for (auto& e : table) {
    auto divs = zgauss::divisors(zgauss::GaussInt(e.re, e.im));
    e.divisor_norms.reserve(divs.size());
    for (auto& d : divs) e.divisor_norms.push_back(zgauss::norm(d).convert_to<double>());
  }
  have_cap = cap;
  return table;
}

cx tau_from_divnorms(const std::vector<double>& dn, double Nn, cx mu) {
  KahanC acc;
  for (double Nd : dn) acc.add(std::exp(mu * std::log(cx(Nd * Nd / Nn))));
  return acc.value();
}

// one lattice pass accumulating the smoothly cut sums for several radii X_j
std::vector<cx> estermann_smoothed(const EstermannParams& p, const std::vector<double>& Xs) {
  using zgauss::GaussInt;
  const cx s = p.s, mu = p.mu;
  const double h = 0.5 * p.two_h;
  const double Nc = zgauss::norm(p.c).convert_to<double>();
  const Int NcI = zgauss::norm(p.c);
  const GaussInt cconj = zgauss::conj(p.c);
  double Xmax = *std::max_element(Xs.begin(), Xs.end());
  long long cap = (long long)std::ceil(2.5 * Xmax);
  const auto& tab = ideal_table(cap);
  std::vector<KahanC> acc(Xs.size());
  for (const auto& e : tab) {
    if (e.norm > (double)cap) break;
    cx tau = tau_from_divnorms(e.divisor_norms, e.norm, mu);
    cx nspow = std::exp(-s * std::log(cx(e.norm)));
    GaussInt g(e.re, e.im);
    cx unit_sum = 0.0;
    for (int k = 0; k < 4; ++k) {
      GaussInt n = zgauss::mul_i(g, k);
      // e(Re(a n / c)) with exact fraction Re(a n conj(c)) / N(c)
      Int num = ((p.a * n) * cconj).re;
      Int r = num % NcI;
      if (r < 0) r += NcI;
      double frac = r.convert_to<double>() / Nc;
      cx tw = eunit(frac);
      if (p.two_h != 0) {
        double th = std::atan2(n.im.convert_to<double>(), n.re.convert_to<double>());
        tw *= std::exp(cx(0, 2.0 * h * th));
      }
      unit_sum += tw;
    }
    cx term = tau * nspow * unit_sum;
    for (size_t j = 0; j < Xs.size(); ++j) {
      double w = smooth_cut(e.norm / Xs[j]);
      if (w > 0.0) acc[j].add(w * term);
    }
  }
  std::vector<cx> out(Xs.size());
  for (size_t j = 0; j < Xs.size(); ++j) out[j] = acc[j].value();
  return out;
}

void solve3(cx A[3][3], cx b[3], cx x[3]) {
  // Gaussian elimination with partial pivoting on a 3x3 system
  int idx[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(A[idx[r]][col]) > std::abs(A[idx[piv]][col])) piv = r;
    std::swap(idx[col], idx[piv]);
    for (int r = col + 1; r < 3; ++r) {
      cx f = A[idx[r]][col] / A[idx[col]][col];
      for (int cc = col; cc < 3; ++cc) A[idx[r]][cc] -= f * A[idx[col]][cc];
      b[idx[r]] -= f * b[idx[col]];
    }
  }
  for (int r = 2; r >= 0; --r) {
    cx v = b[idx[r]];
    for (int cc = r + 1; cc < 3; ++cc) v -= A[idx[r]][cc] * x[cc];
    x[r] = v / A[idx[r]][r];
  }
}

// Direct-regime evaluation, Re(s +- mu) > 1.  A smooth cutoff at norm ~ X
// leaves E(s) plus two power terms A+- X^{1 +- mu - s} (the images of the
// poles of E under the Mellin smoothing); fitting those powers on an X-ladder
// removes them and leaves a super-algebraically small remainder.
cx estermann_direct(const EstermannParams& p, double tol) {
  const cx s = p.s, mu = p.mu;
  double sigma = s.real() - std::abs(mu.real());
  if (sigma <= 1.0 + 1e-12)
    throw UnsupportedRegionError("estermann: outside the direct-series regime");

  std::vector<double> Xs = {60000.0, 110000.0, 200000.0, 360000.0};
  auto sums = estermann_smoothed(p, Xs);

  if (p.two_h != 0) {
    // no poles, hence no power terms: the smoothed sum itself converges fast
    double err = std::abs(sums[3] - sums[2]);
    if (err > tol * std::max(1.0, std::abs(sums[3])))
      throw PrecisionError("estermann: smoothed truncation did not certify the target", err);
    return sums[3];
  }

  cx ep = 1.0 + mu - s, em = 1.0 - mu - s;
  bool degenerate = std::abs(ep - em) < 0.05;  // mu ~ 0: double pole, log basis
  auto fit = [&](int i0) -> cx {
    cx A[3][3], b[3], x[3];
    for (int r = 0; r < 3; ++r) {
      double X = Xs[i0 + r];
      A[r][0] = 1.0;
      if (!degenerate) {
        A[r][1] = std::exp(ep * std::log(cx(X)));
        A[r][2] = std::exp(em * std::log(cx(X)));
      } else {
        cx e0 = 0.5 * (ep + em);
        A[r][1] = std::exp(e0 * std::log(cx(X)));
        A[r][2] = std::log(X) * A[r][1];
      }
      b[r] = sums[i0 + r];
    }
    solve3(A, b, x);
    return x[0];
  };
  cx v1 = fit(0), v2 = fit(1);
  double err = std::abs(v1 - v2);
  if (err > tol * std::max(1.0, std::abs(v2)))
    throw PrecisionError("estermann: power-fit truncation did not certify the target", err);
  return v2;
}

}  // namespace

cx gamma_factor(cx s, cx mu, int two_h) {
  double ah = 0.5 * std::abs(two_h);
  using sfbase::gamma_c;
  return gamma_c(1.0 - s + mu + ah) * gamma_c(1.0 - s - mu + ah) /
         (gamma_c(s - mu + ah) * gamma_c(s + mu + ah));
}

cx estermann(const EstermannParams& p, double rel_tol) {
  if (zgauss::is_zero(p.c)) throw DomainError("estermann: c = 0");
  if (!zgauss::is_unit(zgauss::gcd(p.a, p.c)))
    throw DomainError("estermann: gcd(a, c) must be a unit");
  const cx s = p.s, mu = p.mu;
  if (p.two_h == 0) {
    for (int sign : {+1, -1}) {
      cx pole = 1.0 + double(sign) * mu;
      if (std::abs(s - pole) < 1e-12) {
        // residue pi |c|^{-+4mu - 2} zeta_F(1 +- 2mu); |c|^w = Nc^{w/2}
        double Nc = zgauss::norm(p.c).convert_to<double>();
        cx residue = PI * std::exp((-double(sign) * 2.0 * mu - 1.0) * std::log(cx(Nc))) *
                     zeta_F(1.0 + double(sign) * 2.0 * mu);
        throw PoleError("estermann: pole at s = 1 +- mu", pole, residue);
      }
    }
  }
  double rp = (s + mu).real(), rm = (s - mu).real();
  if (rp > 1.0 && rm > 1.0) return estermann_direct(p, rel_tol);
  if (rp < 0.0 && rm < 0.0) {
    // functional equation
    EstermannParams q;
    q.s = 1.0 - s;
    q.mu = mu;
    q.two_h = -p.two_h;
    q.c = p.c;
    q.a = zgauss::mod_inverse(p.a, p.c);
    cx E = estermann_direct(q, rel_tol);
    double Nc = zgauss::norm(p.c).convert_to<double>();
    cx pref = std::exp((4.0 * s - 2.0) * std::log(cx(PI / std::sqrt(Nc))));
    // (c/|c|)^{4h} = e^{i 4h arg c}, 4h = 2 * two_h
    double thc = std::atan2(p.c.im.convert_to<double>(), p.c.re.convert_to<double>());
    cx unit_phase = std::exp(cx(0, 2.0 * p.two_h * thc));
    return pref * unit_phase * gamma_factor(s, mu, p.two_h) * E;
  }
  throw UnsupportedRegionError("estermann: middle strip is not supported");
}

cx sigma_s_ext(const GaussInt& n, cx s) {
  if (zgauss::is_zero(n)) return zeta_F(-s);
  return zgauss::sigma_s(n, s);
}

}  // namespace hankelci::lfun
