#include "hankelci/zgauss.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hankelci::zgauss {

GaussInt mul_i(const GaussInt& a, int k) {
  GaussInt r = a;
  k = ((k % 4) + 4) % 4;
  for (int j = 0; j < k; ++j) r = GaussInt(-r.im, r.re);
  return r;
}

GaussInt canonical(const GaussInt& a) {
  if (is_zero(a)) return a;
  GaussInt r = a;
  for (int j = 0; j < 4; ++j) {
    if (r.re > 0 && r.im >= 0) return r;
    r = GaussInt(-r.im, r.re);
  }
  return r;  // unreachable
}

namespace {

// round(p/q) for exact integers, ties toward +inf (any consistent tie rule works)
Int round_div(const Int& p, const Int& q) {
  Int qq = q;
  Int pp = p;
  if (qq < 0) { qq = -qq; pp = -pp; }
  Int twice = 2 * pp + qq;
  Int r = twice / (2 * qq);
  if (twice < 0 && twice % (2 * qq) != 0) r -= 1;
  return r;
}

}  // namespace

std::pair<GaussInt, GaussInt> divmod(const GaussInt& a, const GaussInt& b) {
  if (is_zero(b)) throw DomainError("divmod: division by zero");
  GaussInt num = a * conj(b);
  Int nb = norm(b);
  GaussInt q(round_div(num.re, nb), round_div(num.im, nb));
  GaussInt r = a - q * b;
  return {q, r};
}

bool divides(const GaussInt& d, const GaussInt& a) {
  if (is_zero(d)) return is_zero(a);
  return is_zero(divmod(a, d).second);
}

GaussInt gcd(const GaussInt& a, const GaussInt& b) {
  if (is_zero(a) && is_zero(b)) throw DomainError("gcd(0,0) undefined");
  GaussInt x = a, y = b;
  while (!is_zero(y)) {
    auto [q, r] = divmod(x, y);
    x = y;
    y = r;
  }
  return canonical(x);
}

GaussInt mod_reduce(const GaussInt& a, const GaussInt& c) {
  if (is_zero(c)) throw DomainError("mod_reduce: zero modulus");
  // Hermite-reduced box: lattice (c, ic) has a basis (d, 0), (e, f); reduce
  // im coordinate mod f, then re mod d.
  // basis columns v1 = (x, y), v2 = (-y, x)
  Int x = c.re, y = c.im;
  // column HNF of [[x, -y], [y, x]]
  // gcd of bottom row entries gives f
  Int r1x = x, r1y = -y;  // top row entries of the two columns
  Int r2x = y, r2y = x;   // bottom row
  // euclid on (r2x, r2y) with column ops
  while (r2y != 0) {
    Int q = r2x / r2y;
    Int t2 = r2x - q * r2y;
    Int t1 = r1x - q * r1y;
    r2x = r2y; r2y = t2;
    r1x = r1y; r1y = t1;
  }
  Int f = r2x < 0 ? Int(-r2x) : r2x;  // bottom-left after reduction
  if (r2x < 0) { r1x = -r1x; }
  Int e = r1x;            // column (e, f)
  Int N = norm(c);
  Int d = N / f;          // column (d, 0): det = d*f = N
  // reduce: subtract multiples of (e,f) to bring im into [0,f)
  Int ai = a.im, ar = a.re;
  Int k = ai / f; if (ai % f < 0) k -= 1;
  ai -= k * f;
  ar -= k * e;
  Int m = ar / d; if (ar % d < 0) m -= 1;
  ar -= m * d;
  return {ar, ai};
}

GaussInt mod_inverse(const GaussInt& a, const GaussInt& c) {
  if (is_zero(c)) throw DomainError("mod_inverse: zero modulus");
  // extended euclid
  GaussInt r0 = c, r1 = mod_reduce(a, c);
  GaussInt s0(0, 0), s1(1, 0);
  while (!is_zero(r1)) {
    auto [q, r] = divmod(r0, r1);
    GaussInt s = s0 - q * s1;
    r0 = r1; r1 = r;
    s0 = s1; s1 = s;
  }
  if (!is_unit(r0)) throw DomainError("mod_inverse: arguments not coprime");
  // r0 = u (unit) = s0 * a (mod c)  =>  a^{-1} = conj-unit * s0
  // multiply s0 by u^{-1}: u in {1,i,-1,-i}, u^{-1} = conj(u)
  GaussInt inv = s0 * conj(r0);
  return mod_reduce(inv, c);
}

ResidueSystem ResidueSystem::make(const GaussInt& c) {
  if (is_zero(c)) throw DomainError("ResidueSystem: zero modulus");
  if (norm(c) > kNormCap) throw DomainError("ResidueSystem: modulus norm exceeds cap");
  ResidueSystem rs;
  rs.modulus = c;
  // box dimensions as in mod_reduce
  Int x = c.re, y = c.im;
  Int r1x = x, r1y = -y, r2x = y, r2y = x;
  while (r2y != 0) {
    Int q = r2x / r2y;
    Int t2 = r2x - q * r2y;
    Int t1 = r1x - q * r1y;
    r2x = r2y; r2y = t2;
    r1x = r1y; r1y = t1;
  }
  Int f = r2x < 0 ? Int(-r2x) : r2x;
  Int N = norm(c);
  Int d = N / f;
  for (Int b = 0; b < f; ++b)
    for (Int a = 0; a < d; ++a) {
      GaussInt g(a, b);
      rs.representatives.push_back(g);
      if (is_unit(gcd(g, c))) rs.unit_representatives.push_back(g);
    }
  return rs;
}

namespace {

long long to_ll(const Int& v) { return v.convert_to<long long>(); }

// factor a positive rational integer by trial division
std::vector<std::pair<long long, int>> factor_ll(long long n) {
  std::vector<std::pair<long long, int>> out;
  for (long long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      out.push_back({p, e});
    }
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

// a Gaussian prime above p (p odd, p = 1 mod 4): pi = gcd(p, x + i) with x^2 = -1 mod p
GaussInt split_prime(long long p) {
  // find quadratic nonresidue, then x = n^{(p-1)/4}
  auto powmod = [&](long long b, long long e, long long m) {
    __int128 r = 1, bb = b % m;
    while (e) {
      if (e & 1) r = r * bb % m;
      bb = bb * bb % m;
      e >>= 1;
    }
    return (long long)r;
  };
  long long n = 2;
  while (powmod(n, (p - 1) / 2, p) != p - 1) ++n;
  long long x = powmod(n, (p - 1) / 4, p);
  return canonical(gcd(GaussInt(p, 0), GaussInt(x, 1)));
}

}  // namespace

std::vector<std::pair<GaussInt, int>> factorize(const GaussInt& n0) {
  if (is_zero(n0)) throw DomainError("factorize: zero");
  GaussInt n = canonical(n0);
  std::vector<std::pair<GaussInt, int>> out;
  if (is_unit(n)) return out;
  Int N = norm(n);
  if (N > Int(4) * kNormCap * kNormCap)
    throw DomainError("factorize: norm exceeds supported range");
  long long Nl = to_ll(N);
  for (auto [p, e] : factor_ll(Nl)) {
    (void)e;
    std::vector<GaussInt> primes;
    if (p == 2) {
      primes.push_back(GaussInt(1, 1));
    } else if (p % 4 == 3) {
      primes.push_back(GaussInt(p, 0));
    } else {
      GaussInt pi = split_prime(p);
      primes.push_back(pi);
      primes.push_back(canonical(conj(pi)));
    }
    for (const auto& pi : primes) {
      int cnt = 0;
      while (divides(pi, n)) {
        n = divmod(n, pi).first;
        ++cnt;
      }
      if (cnt > 0) out.push_back({pi, cnt});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (norm(a.first) != norm(b.first)) return norm(a.first) < norm(b.first);
    return a.first.im < b.first.im;
  });
  return out;
}

std::vector<GaussInt> divisors(const GaussInt& n) {
  if (is_zero(n)) throw DomainError("divisors: zero");
  auto fac = factorize(n);
  std::vector<GaussInt> out{GaussInt(1, 0)};
  for (auto& [p, e] : fac) {
    std::vector<GaussInt> next;
    GaussInt pk(1, 0);
    for (int k = 0; k <= e; ++k) {
      for (auto& d : out) next.push_back(canonical(d * pk));
      pk = pk * p;
    }
    out.swap(next);
  }
  std::sort(out.begin(), out.end(), [](const GaussInt& a, const GaussInt& b) {
    if (norm(a) != norm(b)) return norm(a) < norm(b);
    double aa = std::atan2((double)a.im.convert_to<double>(), (double)a.re.convert_to<double>());
    double bb = std::atan2((double)b.im.convert_to<double>(), (double)b.re.convert_to<double>());
    return aa < bb;
  });
  return out;
}

cx tau_nu(const GaussInt& n, cx nu) {
  if (is_zero(n)) throw DomainError("tau_nu: zero");
  double Nn = norm(n).convert_to<double>();
  KahanC acc;
  for (const auto& d : divisors(n)) {
    double Nd = norm(d).convert_to<double>();
    // |d / (n/d)|^{2 nu} = (Nd^2 / Nn)^nu
    acc.add(std::exp(nu * std::log(cx(Nd * Nd / Nn))));
  }
  return acc.value();
}

cx sigma_s(const GaussInt& n, cx s) {
  if (is_zero(n)) throw DomainError("sigma_s(0): needs zeta_F continuation (lfun::sigma_s_ext)");
  KahanC acc;
  for (const auto& d : divisors(n)) {
    double Nd = norm(d).convert_to<double>();
    acc.add(std::exp(s * std::log(cx(Nd))));
  }
  return acc.value();
}

long long moebius(const GaussInt& n) {
  if (is_zero(n)) throw DomainError("moebius: zero");
  auto fac = factorize(n);
  long long r = 1;
  for (auto& [p, e] : fac) {
    (void)p;
    if (e > 1) return 0;
    r = -r;
  }
  return r;
}

Int eulerPhi(const GaussInt& n) {
  if (is_zero(n)) throw DomainError("eulerPhi: zero");
  Int N = norm(n);
  Int phi = N;
  for (auto& [p, e] : factorize(n)) {
    (void)e;
    Int Np = norm(p);
    phi = phi / Np * (Np - 1);
  }
  return phi;
}

cx kloosterman(const GaussInt& m, const GaussInt& n, const GaussInt& c) {
  if (is_zero(c)) throw DomainError("kloosterman: c = 0");
  if (norm(c) > kNormCap) throw DomainError("kloosterman: modulus norm exceeds cap");
  if (is_unit(c)) return cx(1.0, 0.0);
  Int Nc = norm(c);
  double Ncd = Nc.convert_to<double>();
  Kahan sre, sim;
  auto rs = ResidueSystem::make(c);
  for (const auto& a : rs.unit_representatives) {
    GaussInt ainv = mod_inverse(a, c);
    GaussInt t = a * m + ainv * n;
    // Re(t/c) = Re(t * conj(c)) / N(c), reduced mod 1 exactly
    Int num = (t * conj(c)).re;
    Int r = num % Nc;
    if (r < 0) r += Nc;
    double frac = r.convert_to<double>() / Ncd;
    sre.add(std::cos(TWO_PI * frac));
    sim.add(std::sin(TWO_PI * frac));
  }
  cx val(sre.value(), sim.value());
  if (std::abs(val.imag()) > 1e-10 * std::max(1.0, std::abs(val.real())) &&
      std::abs(val.imag()) > 1e-10 * std::sqrt((double)rs.unit_representatives.size()))
    throw PrecisionError("kloosterman: imaginary residue above monitor threshold",
                         std::abs(val.imag()));
  return val;
}

}  // namespace hankelci::zgauss
