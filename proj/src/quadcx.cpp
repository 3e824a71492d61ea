#include "hankelci/quadcx.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace hankelci::quadcx {

namespace {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 constants)
constexpr double XGK[8] = {.991455371120812639206854697526329,
                           .949107912342758524526189684047851,
                           .864864423359769072789712788640926,
                           .741531185599394439863864773280788,
                           .586087235467691130294144838258730,
                           .405845151377397166906606412076961,
                           .207784955007898467600689403773245,
                           0.};
constexpr double WGK[8] = {.022935322010529224963732008058970,
                           .063092092629978553290700663189204,
                           .104790010322250183839876322541518,
                           .140653259715525918745189590510238,
                           .169004726639267902826583426598550,
                           .190350578064785409913256402421014,
                           .204432940075298892414161999234649,
                           .209482141084727828012999174891714};
constexpr double WG[4] = {.129484966168869693270611432679082,
                          .279705391489276667901467771423780,
                          .381830050505118944950369775488975,
                          .417959183673469387755102040816327};

struct PanelResult {
  cx value;
  double err;
};

PanelResult gk15(const RealFn& f, double a, double b, long& nodes) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cx fc = f(c);
  cx resk = WGK[7] * fc;
  cx resg = WG[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double x = h * XGK[j];
    cx f1 = f(c - x), f2 = f(c + x);
    resk += WGK[j] * (f1 + f2);
    if (j % 2 == 1) resg += WG[j / 2] * (f1 + f2);
  }
  nodes += 15;
  double err = std::abs(resk - resg) * std::abs(h);
  // QUADPACK-style sharpening of the raw difference
  err = std::min(err, std::pow(200.0 * err, 1.5));
  return {resk * h, err};
}

struct Seg {
  double a, b, err;
  cx val;
  bool operator<(const Seg& o) const { return err < o.err; }
};

}  // namespace

IntegralResult integrate_gk(const RealFn& f, double a, double b, double rel_tol,
                            double abs_tol, int max_subdiv) {
  IntegralResult out;
  if (a == b) return out;
  auto first = gk15(f, a, b, out.nodes);
  std::priority_queue<Seg> heap;
  heap.push({a, b, first.err, first.value});
  cx total = first.value;
  double toterr = first.err;
  int splits = 0;
  while (splits < max_subdiv) {
    double goal = std::max(abs_tol, rel_tol * std::abs(total));
    if (toterr <= goal) break;
    Seg top = heap.top();
    heap.pop();
    double m = 0.5 * (top.a + top.b);
    if (m == top.a || m == top.b) break;  // interval exhausted
    auto l = gk15(f, top.a, m, out.nodes);
    auto r = gk15(f, m, top.b, out.nodes);
    total += l.value + r.value - top.val;
    toterr += l.err + r.err - top.err;
    heap.push({top.a, m, l.err, l.value});
    heap.push({m, top.b, r.err, r.value});
    ++splits;
  }
  out.value = total;
  out.error_estimate = std::max(toterr, 0.0);
  if (splits >= max_subdiv) {
    double goal = std::max(abs_tol, rel_tol * std::abs(total));
    if (toterr > 50.0 * goal)
      throw PrecisionError("integrate_gk: subdivision limit reached", toterr);
  }
  return out;
}

namespace {

// angular average at radius r: (1/2pi) int f(r e^{i phi}) dphi, adaptive order.
// `hint` carries the last successful order so nearby radii start warm, but it
// relaxes again so one hard radius does not poison the whole range.
cx angular_mean(const CxFn& f, double r, int& hint, double tol, long& nodes) {
  auto trap = [&](int m) {
    KahanC acc;
    for (int k = 0; k < m; ++k) {
      double phi = TWO_PI * k / m;
      acc.add(f(std::polar(r, phi)));
    }
    nodes += m;
    return acc.value() / double(m);
  };
  int start = std::max(16, hint / 2);
  cx prev = trap(start);
  for (int m = 2 * start; m <= 32768; m *= 2) {
    cx cur = trap(m);
    if (std::abs(cur - prev) < tol * std::max(1.0, std::abs(cur)) ||
        std::abs(cur - prev) < 1e-17) {
      hint = m / 2;
      return cur;
    }
    prev = cur;
  }
  hint = 32768;
  return prev;
}

}  // namespace

IntegralResult integrate_annulus(const CxFn& f, double r_lo, double r_hi,
                                 const QuadSpec& spec) {
  IntegralResult out;
  int order = std::max(16, spec.angular_order);
  double ang_tol = 0.05 * spec.rel_tol;
  auto radial = [&](double r) -> cx {
    return angular_mean(f, r, order, ang_tol, out.nodes) * r;
  };
  // factor 2 pi from the angle, 2 from i dz^dzbar = 2 dx dy
  auto res = integrate_gk(radial, r_lo, r_hi, spec.rel_tol, spec.abs_tol,
                          spec.max_subdivisions);
  out.value = 2.0 * TWO_PI * res.value;
  out.error_estimate = 2.0 * TWO_PI * res.error_estimate;
  out.nodes += res.nodes;
  return out;
}

IntegralResult integrate_cx(const CxFn& f, const QuadSpec& spec, double singular_alpha) {
  if (singular_alpha <= 0.0)
    throw DomainError("integrate_cx: declared origin exponent must be positive");
  IntegralResult out;
  int order = std::max(16, spec.angular_order);
  double ang_tol = 0.05 * spec.rel_tol;

  // (0, inner]: substitute r = t^{1/alpha} so the radial integrand is smooth
  {
    double a = singular_alpha;
    auto radial_sub = [&](double t) -> cx {
      double r = std::pow(t, 1.0 / a);
      return angular_mean(f, r, order, ang_tol, out.nodes) * r * std::pow(t, 1.0 / a - 1.0) / a;
    };
    auto res = integrate_gk(radial_sub, 0.0, std::pow(spec.inner_radius, a),
                            spec.rel_tol, spec.abs_tol, spec.max_subdivisions);
    out.value += 2.0 * TWO_PI * res.value;
    out.error_estimate += 2.0 * TWO_PI * res.error_estimate;
    out.nodes += res.nodes;
  }

  auto mid = integrate_annulus(f, spec.inner_radius, spec.outer_radius, spec);
  out.value += mid.value;
  out.error_estimate += mid.error_estimate;
  out.nodes += mid.nodes;

  // tail
  const TailStrategy& ts = spec.tail_strategy;
  if (ts.kind == TailKind::hard_truncation) {
    double lo = spec.outer_radius;
    cx tail = 0;
    double last = 0;
    while (lo < ts.R) {
      double hi = std::min(2.0 * lo, ts.R);
      auto seg = integrate_annulus(f, lo, hi, spec);
      tail += seg.value;
      out.nodes += seg.nodes;
      last = std::abs(seg.value);
      lo = hi;
      if (last < 0.05 * (spec.abs_tol + spec.rel_tol * std::abs(out.value + tail))) break;
    }
    out.value += tail;
    out.tail_estimate = 2.0 * last;
    out.error_estimate += out.tail_estimate;
  } else if (ts.kind == TailKind::exponential_damping) {
    // T(eps) = int_{outer}^{R(eps)} f e^{-eps(|z| - outer)}, Neville to eps -> 0
    double e0 = ts.eps0;
    std::vector<double> eps = {e0, 0.5 * e0, 0.25 * e0};
    std::vector<cx> vals;
    for (double e : eps) {
      double R = spec.outer_radius + 42.0 / e;
      auto damped = [&](cx z) { return f(z) * std::exp(-e * (std::abs(z) - spec.outer_radius)); };
      auto seg = integrate_annulus(damped, spec.outer_radius, R, spec);
      vals.push_back(seg.value);
      out.nodes += seg.nodes;
    }
    // Neville at 0 in the variable eps
    cx t01 = (eps[0] * vals[1] - eps[1] * vals[0]) / (eps[0] - eps[1]);
    cx t12 = (eps[1] * vals[2] - eps[2] * vals[1]) / (eps[1] - eps[2]);
    cx t012 = (eps[0] * t12 - eps[2] * t01) / (eps[0] - eps[2]);
    out.value += t012;
    out.tail_estimate = std::abs(t012 - t12);
    out.error_estimate += out.tail_estimate;
  } else {
    throw DomainError(
        "integrate_cx: laplacian_parts tails need an explicit phase; use oscillatory_tail");
  }
  return out;
}

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double g1 = std::exp(-1.0 / x), g0 = std::exp(-1.0 / (1.0 - x));
  return g1 / (g1 + g0);
}

IntegralResult slow_tail(const CxFn& f, double c, const QuadSpec& spec) {
  // dyadic annuli; the non-oscillatory integrand decays like a clean power,
  // so the annulus sums form a near-geometric sequence that extrapolates well
  IntegralResult out;
  int hint = spec.angular_order;
  auto mean = [&](double r) -> cx {
    return angular_mean(f, r, hint, 0.1 * spec.rel_tol, out.nodes) * r;
  };
  cx total = 0;
  cx prev_seg = 0;
  double prev_mag = 0;
  cx extrap_prev = 0;
  double lo = c;
  for (int k = 0; k < 44; ++k) {
    double hi = 2.0 * lo;
    auto seg = integrate_gk(mean, lo, hi, 0.3 * spec.rel_tol, 0.02 * spec.abs_tol,
                            spec.max_subdivisions);
    cx sv = 2.0 * TWO_PI * seg.value;
    total += sv;
    out.nodes += seg.nodes;
    double mag = std::abs(sv);
    if (k >= 2 && prev_mag > 0.0) {
      double ratio = mag / prev_mag;
      if (ratio < 0.95) {
        // geometric remainder estimate and its stability check
        cx rem = sv * (ratio / (1.0 - ratio));
        cx extrap = total + rem;
        double settle = std::abs(extrap - extrap_prev);
        if (k >= 4 && settle < spec.rel_tol * std::max(1.0, std::abs(extrap)) + spec.abs_tol) {
          out.value = extrap;
          out.tail_estimate = out.error_estimate = settle + std::abs(rem) * 0.1;
          return out;
        }
        extrap_prev = extrap;
      }
    }
    prev_seg = sv;
    prev_mag = mag;
    lo = hi;
  }
  (void)prev_seg;
  out.value = extrap_prev == cx(0, 0) ? total : extrap_prev;
  out.tail_estimate = out.error_estimate =
      std::abs(out.value - total) + prev_mag;
  return out;
}

namespace {

// Gridded harmonic representation of a slowly-varying function on an annulus:
// f(r e^{i phi}) = sum_k g_k(r) e^{i k phi}, with g_k sampled on a log-uniform
// radial grid.  The Stokes operator D = (1/4) Laplacian acts per harmonic as
// (1/4)(g_k'' + g_k'/r - k^2 g_k / r^2), evaluated by differencing in ln r.
struct HarmonicGrid {
  double r_lo, r_hi;         // grid covers [r_lo, r_hi] in ln r
  int nr, nk;                // radial nodes, harmonics in [-nk/2, nk/2)
  double dlr;
  std::vector<std::vector<cx>> g;  // g[k][j], k = 0..nk-1 (harmonic k - nk/2)

  static HarmonicGrid sample(const CxFn& f, double r_lo, double r_hi, int nr, int nk,
                             long& nodes) {
    HarmonicGrid hg;
    hg.r_lo = r_lo;
    hg.r_hi = r_hi;
    hg.nr = nr;
    hg.nk = nk;
    hg.dlr = std::log(r_hi / r_lo) / (nr - 1);
    hg.g.assign(nk, std::vector<cx>(nr, cx(0, 0)));
    std::vector<cx> ring(nk);
    for (int j = 0; j < nr; ++j) {
      double r = r_lo * std::exp(j * hg.dlr);
      for (int a = 0; a < nk; ++a) ring[a] = f(std::polar(r, TWO_PI * a / nk));
      nodes += nk;
      for (int k = 0; k < nk; ++k) {
        int kk = k - nk / 2;
        KahanC acc;
        for (int a = 0; a < nk; ++a)
          acc.add(ring[a] * eunit(-kk * double(a) / nk));
        hg.g[k][j] = acc.value() / double(nk);
      }
    }
    return hg;
  }

  // replace contents by D applied per harmonic (edges handled one-sidedly by
  // zero extension; callers keep the physically relevant window interior)
  void apply_D() {
    std::vector<cx> d1(nr), d2(nr);
    for (int k = 0; k < nk; ++k) {
      auto& gk = g[k];
      double kk = k - nk / 2;
      auto at = [&](int j) { return (j < 0 || j >= nr) ? cx(0, 0) : gk[j]; };
      for (int j = 0; j < nr; ++j) {
        // d/dlnr and d^2/dlnr^2, 4th order
        d1[j] = (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * dlr);
        d2[j] = (-at(j + 2) + 16.0 * at(j + 1) - 30.0 * at(j) + 16.0 * at(j - 1) -
                 at(j - 2)) /
                (12.0 * dlr * dlr);
      }
      for (int j = 0; j < nr; ++j) {
        double r = r_lo * std::exp(j * dlr);
        // g'' + g'/r - k^2 g / r^2 collapses to (d^2/dlnr^2 - k^2) g / r^2
        gk[j] = 0.25 * (d2[j] - kk * kk * gk[j]) / (r * r);
      }
    }
  }

  // cubic interpolation of harmonic k at radius r
  cx eval_harmonic(int k, double r) const {
    double t = std::log(r / r_lo) / dlr;
    int j = (int)std::floor(t);
    if (j < 1) j = 1;
    if (j > nr - 3) j = nr - 3;
    double u = t - j;
    const auto& gk = g[k];
    // 4-point Lagrange on j-1..j+2
    double w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    double w1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    double w2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    double w3 = (u + 1.0) * u * (u - 1.0) / 6.0;
    return w0 * gk[j - 1] + w1 * gk[j] + w2 * gk[j + 1] + w3 * gk[j + 2];
  }
};

// J_0..J_{kmax}(x) in one pass; upward recurrence is stable while k < x, and
// J_k(x) is negligible once k exceeds x by a wide margin
void bessel_jn_row(double x, int kmax, std::vector<double>& out) {
  out.assign(kmax + 1, 0.0);
  out[0] = j0(x);
  if (kmax >= 1) out[1] = j1(x);
  int safe = std::min<int>(kmax, (int)std::floor(x) - 4);
  int hard = std::min<int>(kmax, (int)std::ceil(x) + 42);
  for (int k = 1; k < kmax; ++k) {
    if (k < safe)
      out[k + 1] = (2.0 * k / x) * out[k] - out[k - 1];
    else if (k < hard)
      out[k + 1] = jn(k + 1, x);
    else
      out[k + 1] = 0.0;
  }
}

}  // namespace

IntegralResult oscillatory_tail(const CxFn& f_slow, cx q, double c, const QuadSpec& spec,
                                int M, int nk, double subosc_sqrt) {
  if (std::abs(q) < 1e-12)
    throw DomainError("oscillatory_tail: zero phase coefficient");
  double aq = std::abs(q);
  double thq = std::arg(q);

  // damping ladder shared by all evaluations of the (absolutely convergent)
  // post-parts radial integrals
  std::vector<double> eps;
  size_t depth = spec.rel_tol <= 3e-9 ? 6 : (spec.rel_tol <= 3e-8 ? 5 : 4);
  for (double e = spec.tail_strategy.eps0; eps.size() < depth; e *= 0.5) eps.push_back(e);
  double R = c + 46.0 / eps.back();

  const int NK = nk;

  // support probe: a compactly supported integrand needs no damping at all
  double Rsupp = 0.0;
  {
    double last_live = c;
    for (double r = c; r <= R; r *= 1.22) {
      double m = 0.0;
      for (int a = 0; a < 24; ++a)
        m = std::max(m, std::abs(f_slow(std::polar(r, TWO_PI * (a + 0.37) / 24.0))));
      if (m > 0.0) last_live = r;
    }
    if (last_live * 1.22 * 1.22 < R) Rsupp = last_live * 1.35;
  }
  bool compact = Rsupp > 0.0;
  double Rgrid = compact ? Rsupp : R;

  auto angular_harmonics = [&](double r, std::vector<cx>& hk) {
    hk.assign(NK, cx(0, 0));
    std::vector<cx> ring(NK);
    for (int a = 0; a < NK; ++a) ring[a] = f_slow(std::polar(r, TWO_PI * a / NK));
    for (int k = 0; k < NK; ++k) {
      int kk = k - NK / 2;
      KahanC acc;
      for (int a = 0; a < NK; ++a) acc.add(ring[a] * eunit(-kk * double(a) / NK));
      hk[k] = acc.value() / double(NK);
    }
  };

  // F(r) = 4 pi r sum_k i^k J_k(2 pi |q| r) g_k(r) e^{-i k arg q}
  // from the exact angular integral against e(Re(q z)) and i dz^dzbar = 2 dA
  std::vector<cx> phase_tab(NK);
  for (int k = 0; k < NK; ++k) {
    int kk = k - NK / 2;
    phase_tab[k] = std::exp(cx(0, 0.5 * PI * kk - kk * thq));
  }
  auto assemble = [&](double r, const std::vector<cx>& gk0,
                      std::vector<double>& jrow) -> cx {
    cx sum = 0;
    double x = TWO_PI * aq * r;
    bessel_jn_row(x, NK / 2, jrow);
    for (int k = 0; k < NK; ++k) {
      int kk = k - NK / 2;
      if (gk0[k] == cx(0, 0)) continue;
      double jv = jrow[std::abs(kk)];
      if (kk < 0 && (kk % 2 != 0)) jv = -jv;
      sum += phase_tab[k] * jv * gk0[k];
    }
    return TWO_PI * 2.0 * r * sum;
  };

  // integrate F(r) e^{-e (r - c)} over [c, Re] in dyadic panels so the
  // adaptive rule cannot miss localized mass
  auto damped_integral = [&](const std::function<cx(double)>& F, double e, double Re,
                             double floor_tol, long& nodes) -> cx {
    cx total = 0;
    double lo = c;
    while (lo < Re) {
      double hi = std::min(2.0 * lo, Re);
      auto res = integrate_gk(
          [&](double r) { return F(r) * std::exp(-e * (r - c)); }, lo, hi,
          0.3 * spec.rel_tol, floor_tol, spec.max_subdivisions);
      total += res.value;
      nodes += res.nodes;
      lo = hi;
    }
    return total;
  };

  auto extrapolate = [&](const std::vector<cx>& vals, double& err) -> cx {
    std::vector<cx> row = vals;
    for (size_t l = 1; l < row.size(); ++l)
      for (size_t i = 0; i + l < row.size(); ++i)
        row[i] = (eps[i] * row[i + 1] - eps[i + l] * row[i]) / (eps[i] - eps[i + l]);
    std::vector<cx> row2(vals.begin(), vals.end() - 1);
    for (size_t l = 1; l < row2.size(); ++l)
      for (size_t i = 0; i + l < row2.size(); ++i)
        row2[i] = (eps[i] * row2[i + 1] - eps[i + l] * row2[i]) / (eps[i] - eps[i + l]);
    err = std::abs(row[0] - row2[0]);
    return row[0];
  };

  // order 0: harmonics on the fly, no radial grid, no interpolation error
  auto run0 = [&](IntegralResult& out) -> cx {
    std::vector<cx> hk;
    std::vector<double> jrow;
    auto F = [&](double r) -> cx {
      angular_harmonics(r, hk);
      out.nodes += NK;
      return assemble(r, hk, jrow);
    };
    if (compact) {
      cx v = damped_integral(F, 0.0, Rgrid, 0.02 * spec.abs_tol, out.nodes);
      out.tail_estimate = 0.0;
      return v;
    }
    std::vector<cx> vals;
    for (double e : eps)
      vals.push_back(damped_integral(F, e, c + 46.0 / e, 0.02 * spec.abs_tol, out.nodes));
    double err;
    cx v = extrapolate(vals, err);
    out.tail_estimate = err;
    return v;
  };

  // order >= 1: gridded harmonics, D applied per harmonic in ln r
  auto run = [&](int order, IntegralResult& out, double& interp_probe) -> cx {
    int NR = std::max(500, (int)(140.0 * std::log(1.4 * Rgrid / (0.8 * c))));
    if (subosc_sqrt > 0.0) {
      // resolve the declared e(a Re sqrt(z)) phase: 8 nodes per local wavelength
      int need = (int)(2.6 * subosc_sqrt * std::sqrt(Rgrid) *
                       std::log(1.4 * Rgrid / (0.8 * c)));
      NR = std::min(24000, std::max(NR, need));
    }
    HarmonicGrid hg =
        HarmonicGrid::sample(f_slow, 0.8 * c, 1.1 * Rgrid, NR, NK, out.nodes);
    // probe the representation quality before differentiating
    interp_probe = 0.0;
    double fscale = 1e-300;
    for (int t = 0; t < 24; ++t) {
      double r = c * std::pow(Rgrid / c, (t + 0.5) / 24.0);
      double phi = 2.399963 * t;  // golden-angle sweep
      cx truth = f_slow(std::polar(r, phi));
      cx rec = 0;
      for (int k = 0; k < NK; ++k)
        rec += hg.eval_harmonic(k, r) * std::exp(cx(0, (k - NK / 2) * phi));
      interp_probe = std::max(interp_probe, std::abs(rec - truth));
      fscale = std::max(fscale, std::abs(truth));
    }
    interp_probe /= fscale;
    for (int m = 0; m < order; ++m) hg.apply_D();
    double denom = std::pow(PI * aq, 2.0 * order);
    double sign = (order % 2 == 0) ? 1.0 : -1.0;  // (pi i |q|)^{2M} = (-1)^M (pi |q|)^{2M}
    std::vector<double> jrow;
    std::vector<cx> gk(NK);
    auto F = [&](double r) -> cx {
      for (int k = 0; k < NK; ++k) gk[k] = hg.eval_harmonic(k, r);
      return assemble(r, gk, jrow);
    };
    cx v;
    double err = 0;
    if (compact) {
      v = damped_integral(F, 0.0, Rgrid, 0.02 * spec.abs_tol * denom, out.nodes);
    } else {
      std::vector<cx> vals;
      for (double e : eps)
        vals.push_back(
            damped_integral(F, e, c + 46.0 / e, 0.02 * spec.abs_tol * denom, out.nodes));
      v = extrapolate(vals, err);
    }
    out.tail_estimate = err / denom;
    return sign * v / denom;
  };

  if (M == 0) {
    IntegralResult out;
    out.value = run0(out);
    out.error_estimate = std::max(out.tail_estimate, spec.abs_tol);
    return out;
  }

  IntegralResult out;
  double probe_a = 0, probe_b = 0;
  cx a = run(M, out, probe_a);
  cx b = run(M + 1, out, probe_b);
  double diff = std::abs(a - b);
  double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  bool m_ok = diff < 2e-4 * scale + spec.abs_tol;
  bool probe_ok = std::max(probe_a, probe_b) < 1e-7;
  if (m_ok && probe_ok) {
    out.value = b;
    out.error_estimate = std::max(diff, out.tail_estimate);
    return out;
  }
  // differencing or representation trouble: fall back to the grid-free ladder
  IntegralResult fb;
  fb.value = run0(fb);
  fb.error_estimate = std::max(fb.tail_estimate, spec.abs_tol);
  fb.nodes += out.nodes;
  return fb;
}

IntegralResult oscillatory_tail_mixed(const CxFn& f_slow, cx ell, cx vq, double c,
                                      const QuadSpec& spec, int M) {
  if (std::abs(vq) < 1e-12) return oscillatory_tail(f_slow, ell, c, spec, M);
  double stat = 0.5 * std::abs(ell) / std::abs(vq);
  if (c < 1.15 * stat)
    throw DomainError("oscillatory_tail_mixed: start radius inside the stationary zone");

  auto lam = [&](cx t) { return PI * PI * std::norm(ell + 2.0 * vq * t); };
  auto phase = [&](cx t) { return eunit((ell * t).real() + (vq * t * t).real()); };

  auto run = [&](int order, IntegralResult& out) -> cx {
    double R = c * (order >= 3 ? 3.4 : 5.2);
    int NK = 64;
    int NR = std::max(420, (int)(160.0 * std::log(1.2 * R / (0.75 * c))));
    double r_lo = 0.75 * c, r_hi = 1.18 * R;
    double dlr = std::log(r_hi / r_lo) / (NR - 1);
    // physical grid
    std::vector<std::vector<cx>> P(NR, std::vector<cx>(NK));
    for (int j = 0; j < NR; ++j) {
      double r = r_lo * std::exp(j * dlr);
      for (int a = 0; a < NK; ++a) P[j][a] = f_slow(std::polar(r, TWO_PI * a / NK));
      out.nodes += NK;
    }
    std::vector<std::vector<cx>> G(NK, std::vector<cx>(NR));
    auto to_harm = [&]() {
      for (int j = 0; j < NR; ++j)
        for (int k = 0; k < NK; ++k) {
          int kk = k - NK / 2;
          KahanC acc;
          for (int a = 0; a < NK; ++a) acc.add(P[j][a] * eunit(-kk * double(a) / NK));
          G[k][j] = acc.value() / double(NK);
        }
    };
    auto to_phys = [&]() {
      for (int j = 0; j < NR; ++j)
        for (int a = 0; a < NK; ++a) {
          cx acc = 0;
          for (int k = 0; k < NK; ++k)
            acc += G[k][j] * eunit((k - NK / 2) * double(a) / NK);
          P[j][a] = acc;
        }
    };
    for (int m = 0; m < order; ++m) {
      for (int j = 0; j < NR; ++j) {
        double r = r_lo * std::exp(j * dlr);
        for (int a = 0; a < NK; ++a) P[j][a] /= lam(std::polar(r, TWO_PI * a / NK));
      }
      to_harm();
      // Laplacian/4 per harmonic, then negate (one Stokes step)
      std::vector<cx> d2(NR);
      for (int k = 0; k < NK; ++k) {
        auto& gk = G[k];
        double kk = k - NK / 2;
        auto at = [&](int j) { return (j < 0 || j >= NR) ? cx(0, 0) : gk[j]; };
        for (int j = 0; j < NR; ++j)
          d2[j] = (-at(j + 2) + 16.0 * at(j + 1) - 30.0 * at(j) + 16.0 * at(j - 1) -
                   at(j - 2)) /
                  (12.0 * dlr * dlr);
        for (int j = 0; j < NR; ++j) {
          double r = r_lo * std::exp(j * dlr);
          gk[j] = -0.25 * (d2[j] - kk * kk * gk[j]) / (r * r);
        }
      }
      to_phys();
    }
    to_harm();
    auto interp = [&](int k, double r) -> cx {
      double t = std::log(r / r_lo) / dlr;
      int j = (int)std::floor(t);
      if (j < 1) j = 1;
      if (j > NR - 3) j = NR - 3;
      double u = t - j;
      double w0 = -u * (u - 1) * (u - 2) / 6.0, w1 = (u + 1) * (u - 1) * (u - 2) / 2.0,
             w2 = -(u + 1) * u * (u - 2) / 2.0, w3 = (u + 1) * u * (u - 1) / 6.0;
      const auto& g = G[k];
      return w0 * g[j - 1] + w1 * g[j] + w2 * g[j + 1] + w3 * g[j + 2];
    };
    // final absolutely-convergent integral, i dz^dzbar measure
    int hint = 256;
    std::vector<cx> gk_row(NK);
    auto mean = [&](double r) -> cx {
      for (int k = 0; k < NK; ++k) gk_row[k] = interp(k, r);
      // adaptive trapezoid in angle on the interpolated harmonics times phase
      int mloc = hint;
      cx prev = 0;
      bool first = true;
      for (;;) {
        KahanC acc;
        for (int a = 0; a < mloc; ++a) {
          double phi = TWO_PI * a / mloc;
          cx t = std::polar(r, phi);
          cx g = 0;
          for (int k = 0; k < NK; ++k) g += gk_row[k] * eunit((k - NK / 2) * (phi / TWO_PI));
          acc.add(g * phase(t));
        }
        out.nodes += mloc;
        cx cur = acc.value() / double(mloc);
        if (!first &&
            std::abs(cur - prev) < 0.1 * spec.rel_tol * std::max(1.0, std::abs(cur)) + 1e-17) {
          hint = std::max(64, mloc / 2);
          return cur * r;
        }
        if (mloc >= 32768) { hint = 32768; return cur * r; }
        prev = cur;
        first = false;
        mloc *= 2;
      }
    };
    auto res = integrate_gk(mean, c, R, 0.3 * spec.rel_tol, 0.02 * spec.abs_tol,
                            spec.max_subdivisions);
    out.nodes += res.nodes;
    // unintegrated remainder estimate from the magnitude at the rim
    double rim = 0.0;
    for (int k = 0; k < NK; ++k) rim += std::abs(interp(k, 0.96 * R));
    out.tail_estimate += rim * R * R;
    return 2.0 * TWO_PI * res.value;
  };

  IntegralResult out;
  cx a = run(M, out);
  cx b = run(M + 1, out);
  double diff = std::abs(a - b);
  out.value = b;
  out.error_estimate = std::max(diff, out.tail_estimate);
  return out;
}

IntegralResult r_integral(const CxFn& g, double lambda, const QuadSpec& spec) {
  IntegralResult out;
  auto gl = [&](double t) { return g(cx(t, lambda)); };
  // find a truncation radius from the decay of |g|
  double R = 4.0;
  double ref = std::abs(gl(0.0)) + std::abs(gl(1.0)) + 1e-300;
  while (R < 1e4) {
    if (std::abs(gl(R)) + std::abs(gl(-R)) < 1e-17 * ref) break;
    R *= 1.3;
  }
  // trapezoid with halving
  double h = 0.5;
  auto trap = [&](double step) {
    KahanC acc;
    long n = (long)std::floor(R / step);
    acc.add(0.5 * (gl(-n * step) + gl(n * step)));
    for (long k = -n + 1; k < n; ++k) acc.add(gl(k * step));
    out.nodes += 2 * n + 1;
    return acc.value() * step;
  };
  cx prev = trap(h);
  for (int it = 0; it < 10; ++it) {
    h *= 0.5;
    cx cur = trap(h);
    if (std::abs(cur - prev) < spec.rel_tol * std::max(1.0, std::abs(cur)) + spec.abs_tol) {
      out.value = cur;
      out.error_estimate = std::abs(cur - prev);
      return out;
    }
    prev = cur;
  }
  out.value = prev;
  out.error_estimate = std::abs(prev) * 1e-6;
  throw PrecisionError("r_integral: trapezoid refinement did not converge",
                       out.error_estimate);
}

IntegralResult integrate_semiinf_osc(const RealFn& f, double gamma, const QuadSpec& spec) {
  if (gamma <= 0.0) throw DomainError("integrate_semiinf_osc: endpoint exponent <= 0");
  IntegralResult out;
  // [0, 1]: substitution x = u^m smooths the x^{gamma-1} endpoint
  int m = std::max(1, (int)std::ceil(2.5 / gamma));
  auto head = integrate_gk(
      [&](double u) {
        double x = std::pow(u, m);
        return f(x) * double(m) * std::pow(u, m - 1);
      },
      0.0, 1.0, spec.rel_tol, spec.abs_tol, spec.max_subdivisions);
  out.value += head.value;
  out.error_estimate += head.error_estimate;
  out.nodes += head.nodes;

  // (1, inf): damping ladder
  std::vector<double> eps;
  size_t depth = spec.rel_tol <= 3e-9 ? 8 : 6;
  for (double e = spec.tail_strategy.eps0; eps.size() < depth; e *= 0.5) eps.push_back(e);
  std::vector<cx> vals;
  for (double e : eps) {
    double R = 1.0 + 42.0 / e;
    auto res = integrate_gk([&](double x) { return f(x) * std::exp(-e * (x - 1.0)); }, 1.0,
                            R, spec.rel_tol, spec.abs_tol, spec.max_subdivisions);
    vals.push_back(res.value);
    out.nodes += res.nodes;
  }
  // Neville to eps -> 0
  std::vector<cx> row = vals;
  std::vector<double> xs = eps;
  for (size_t lvl = 1; lvl < row.size(); ++lvl)
    for (size_t i = 0; i + lvl < row.size(); ++i)
      row[i] = (xs[i] * row[i + 1] - xs[i + lvl] * row[i]) / (xs[i] - xs[i + lvl]);
  cx limit = row[0];
  // error: difference of the last two extrapolation columns
  std::vector<cx> row2(vals.begin(), vals.end() - 1);
  for (size_t lvl = 1; lvl < row2.size(); ++lvl)
    for (size_t i = 0; i + lvl < row2.size(); ++i)
      row2[i] = (xs[i] * row2[i + 1] - xs[i + lvl] * row2[i]) / (xs[i] - xs[i + lvl]);
  out.value += limit;
  out.tail_estimate = std::abs(limit - row2[0]);
  out.error_estimate += out.tail_estimate;
  return out;
}

}  // namespace hankelci::quadcx
