#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "hankelci/zgauss.hpp"

using namespace hankelci;
using namespace hankelci::zgauss;

namespace {

// Brute-force oracle: all divisors of n up to associates, by scanning the
// norm ball.  Independent of the factorization-based implementation.
std::vector<GaussInt> divisors_brute(const GaussInt& n) {
  std::vector<GaussInt> out;
  long long N = norm(n).convert_to<long long>();
  long long rmax = (long long)std::floor(std::sqrt((double)N));
  for (long long x = -rmax; x <= rmax; ++x)
    for (long long y = -rmax; y <= rmax; ++y) {
      GaussInt d(x, y);
      if (is_zero(d)) continue;
      if (norm(d) > N) continue;
      if (!divides(d, n)) continue;
      GaussInt cd = canonical(d);
      if (std::find(out.begin(), out.end(), cd) == out.end()) out.push_back(cd);
    }
  std::sort(out.begin(), out.end(), [](const GaussInt& a, const GaussInt& b) {
    if (norm(a) != norm(b)) return norm(a) < norm(b);
    double aa = std::atan2(a.im.convert_to<double>(), a.re.convert_to<double>());
    double bb = std::atan2(b.im.convert_to<double>(), b.re.convert_to<double>());
    return aa < bb;
  });
  return out;
}

cx kloosterman_brute(const GaussInt& m, const GaussInt& n, const GaussInt& c) {
  // direct double scan over a residue box, inverse by exhaustive search
  auto rs = ResidueSystem::make(c);
  cx sum = 0;
  double Nc = norm(c).convert_to<double>();
  for (const auto& a : rs.unit_representatives) {
    GaussInt ainv{0, 0};
    bool found = false;
    for (const auto& b : rs.representatives) {
      if (is_zero(mod_reduce(a * b - GaussInt(1, 0), c))) {
        ainv = b;
        found = true;
        break;
      }
    }
    REQUIRE(found);
    GaussInt t = a * m + ainv * n;
    long long num = ((t * conj(c)).re % norm(c)).convert_to<long long>();
    double frac = (double)num / Nc;
    sum += eunit(frac);
  }
  return sum;
}

}  // namespace

TEST_CASE("canonical associates and units") {
  CHECK(canonical(GaussInt(0, -3)) == GaussInt(3, 0));
  CHECK(canonical(GaussInt(-2, -2)) == GaussInt(2, 2));
  CHECK(canonical(GaussInt(0, 0)) == GaussInt(0, 0));
  CHECK(canonical(GaussInt(1, 0)) == GaussInt(1, 0));
  // exactly one associate of each nonzero element is canonical
  for (long long x = -3; x <= 3; ++x)
    for (long long y = -3; y <= 3; ++y) {
      GaussInt g(x, y);
      if (is_zero(g)) continue;
      int hits = 0;
      for (int k = 0; k < 4; ++k) {
        GaussInt a = mul_i(g, k);
        if (a.re > 0 && a.im >= 0) ++hits;
      }
      CHECK(hits == 1);
    }
}

TEST_CASE("gcd: identity, coprime rational primes, brute-forced mixed case") {
  CHECK(gcd(GaussInt(3, 4), GaussInt(0, 0)) == canonical(GaussInt(3, 4)));
  CHECK(gcd(GaussInt(3, 0), GaussInt(7, 0)) == GaussInt(1, 0));
  // frozen from the divisor-scan oracle: common divisors of 2 and 1+i are
  // exactly the units and 1+i, so gcd = 1+i
  CHECK(gcd(GaussInt(2, 0), GaussInt(1, 1)) == GaussInt(1, 1));
  CHECK_THROWS_AS(gcd(GaussInt(0, 0), GaussInt(0, 0)), DomainError);

  // random grid against the oracle: gcd divides both, and any common divisor
  // divides the gcd
  for (long long x = -4; x <= 4; ++x)
    for (long long y = 1; y <= 4; ++y) {
      GaussInt a(x, y), b(3 - y, x + 1);
      if (is_zero(a) || is_zero(b)) continue;
      GaussInt g = gcd(a, b);
      CHECK(divides(g, a));
      CHECK(divides(g, b));
      for (const auto& d : divisors_brute(a))
        if (divides(d, b)) CHECK(divides(d, g));
    }
}

TEST_CASE("mod_inverse: identity, exhaustive small-modulus oracle, error path") {
  GaussInt c(5, 3);
  CHECK(mod_reduce(mod_inverse(GaussInt(1, 0), c), c) == mod_reduce(GaussInt(1, 0), c));

  // frozen oracle: scanning the 5 residues mod 2+i shows i * (-i) = 1, and
  // -i == 2i ... verify by property rather than a single pinned value
  GaussInt m(2, 1);
  GaussInt inv = mod_inverse(GaussInt(0, 1), m);
  CHECK(is_zero(mod_reduce(GaussInt(0, 1) * inv - GaussInt(1, 0), m)));

  CHECK_THROWS_AS(mod_inverse(GaussInt(1, 1), GaussInt(2, 0)), DomainError);

  // every unit residue has an inverse that multiplies to 1
  for (const GaussInt& mod : {GaussInt(4, 1), GaussInt(3, 3), GaussInt(6, 0)}) {
    auto rs = ResidueSystem::make(mod);
    for (const auto& a : rs.unit_representatives) {
      GaussInt v = mod_inverse(a, mod);
      CHECK(is_zero(mod_reduce(a * v - GaussInt(1, 0), mod)));
    }
  }
}

TEST_CASE("residue systems: counts match norm and phi") {
  for (const GaussInt& c : {GaussInt(1, 1), GaussInt(2, 0), GaussInt(2, 1), GaussInt(3, 0),
                            GaussInt(4, 2), GaussInt(5, 3)}) {
    auto rs = ResidueSystem::make(c);
    CHECK(Int(rs.representatives.size()) == norm(c));
    CHECK(Int(rs.unit_representatives.size()) == eulerPhi(c));
    // representatives are pairwise incongruent
    for (size_t i = 0; i < rs.representatives.size(); ++i)
      CHECK(mod_reduce(rs.representatives[i], c) == rs.representatives[i]);
  }
}

TEST_CASE("divisors: pinned examples and brute-force agreement") {
  auto d1 = divisors(GaussInt(1, 0));
  REQUIRE(d1.size() == 1);
  CHECK(d1[0] == GaussInt(1, 0));

  // frozen from the scan oracle
  auto d1i = divisors(GaussInt(1, 1));
  REQUIRE(d1i.size() == 2);
  CHECK(d1i[0] == GaussInt(1, 0));
  CHECK(d1i[1] == GaussInt(1, 1));

  auto d2 = divisors(GaussInt(2, 0));
  REQUIRE(d2.size() == 3);
  CHECK(d2[0] == GaussInt(1, 0));
  CHECK(d2[1] == GaussInt(1, 1));
  CHECK(d2[2] == GaussInt(2, 0));

  for (const GaussInt& n : {GaussInt(6, 0), GaussInt(5, 5), GaussInt(7, 4), GaussInt(12, 9)}) {
    auto got = divisors(n);
    auto want = divisors_brute(n);
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
  }
  CHECK_THROWS_AS(divisors(GaussInt(0, 0)), DomainError);
}

TEST_CASE("tau_nu: pinned values and Hecke multiplicativity") {
  CHECK(std::abs(tau_nu(GaussInt(1, 0), cx(0.3, 0.4)) - 1.0) < 1e-15);
  // two ideal factorizations of (1+i): (1)(1+i) and (1+i)(1)
  CHECK(std::abs(tau_nu(GaussInt(1, 1), cx(0, 0)) - 2.0) < 1e-15);
  // tau_{-nu} = tau_nu
  for (const GaussInt& n : {GaussInt(3, 1), GaussInt(7, 0), GaussInt(4, 4)}) {
    cx nu(0.2, 0.7);
    CHECK(std::abs(tau_nu(n, nu) - tau_nu(n, -nu)) < 1e-12);
  }
  // multiplicativity on coprime pairs
  GaussInt m(2, 1), n(3, 0);  // norms 5 and 9, coprime
  cx nu(0, 0.35);
  cx lhs = tau_nu(m * n, nu);
  cx rhs = tau_nu(m, nu) * tau_nu(n, nu);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("moebius and eulerPhi basics") {
  CHECK(moebius(GaussInt(1, 0)) == 1);
  CHECK(moebius(GaussInt(1, 1)) == -1);
  CHECK(moebius(GaussInt(2, 0)) == 0);  // (2) = (1+i)^2
  CHECK(moebius(GaussInt(2, 1)) == -1);
  CHECK(moebius(GaussInt(3, 0)) == -1);
  CHECK(eulerPhi(GaussInt(1, 1)) == 1);
  CHECK(eulerPhi(GaussInt(2, 0)) == 2);
  CHECK(eulerPhi(GaussInt(3, 0)) == 8);  // N(3) = 9, inert: 9 (1 - 1/9)
  CHECK(eulerPhi(GaussInt(2, 1)) == 4);
}

TEST_CASE("kloosterman: trivial modulus, Euler phi at (0,0), brute-force grid") {
  CHECK(std::abs(kloosterman(GaussInt(3, 1), GaussInt(1, 0), GaussInt(1, 0)) - cx(1, 0)) <
        1e-15);
  for (const GaussInt& c : {GaussInt(2, 1), GaussInt(3, 0), GaussInt(4, 2)}) {
    cx s00 = kloosterman(GaussInt(0, 0), GaussInt(0, 0), c);
    CHECK(std::abs(s00.real() - eulerPhi(c).convert_to<double>()) < 1e-10);
  }
  for (const GaussInt& c : {GaussInt(2, 1), GaussInt(3, 3), GaussInt(5, 0)}) {
    for (long long mx = 0; mx <= 2; ++mx) {
      GaussInt m(mx, 1), n(1, -1);
      cx got = kloosterman(m, n, c);
      cx want = kloosterman_brute(m, n, c);
      CHECK(std::abs(got - want) < 1e-9);
    }
  }
}

TEST_CASE("kloosterman: Ramanujan closed form via Moebius") {
  // S(m, 0; c) = sum_{(d) | (m, c)} mu(c/d) |d|^2
  for (const GaussInt& c : {GaussInt(2, 1), GaussInt(3, 0), GaussInt(4, 2), GaussInt(5, 5)}) {
    for (const GaussInt& m : {GaussInt(1, 0), GaussInt(2, 0), GaussInt(3, 3), GaussInt(6, 2)}) {
      GaussInt g = gcd(m, c);
      double closed = 0;
      for (const auto& d : divisors(g)) {
        auto [q, r] = divmod(c, d);
        REQUIRE(is_zero(r));
        closed += (double)moebius(q) * norm(d).convert_to<double>();
      }
      cx direct = kloosterman(m, GaussInt(0, 0), c);
      CHECK(std::abs(direct.real() - closed) < 1e-9);
    }
  }
}

TEST_CASE("kloosterman: symmetry in m and n") {
  GaussInt c(5, 3);
  for (const GaussInt& m : {GaussInt(1, 2), GaussInt(4, 0)})
    for (const GaussInt& n : {GaussInt(2, 2), GaussInt(0, 3)}) {
      cx a = kloosterman(m, n, c);
      cx b = kloosterman(n, m, c);
      CHECK(std::abs(a - b) < 1e-10);
    }
}

TEST_CASE("kloosterman: Weil bound on a sample") {
  std::srand(999);
  auto rnd = [](int lo, int hi) { return lo + std::rand() % (hi - lo + 1); };
  for (int it = 0; it < 60; ++it) {
    GaussInt c(rnd(-4, 4), rnd(-4, 4));
    if (is_zero(c) || norm(c) > 20 * 20) continue;
    GaussInt m(rnd(-6, 6), rnd(-6, 6)), n(rnd(-6, 6), rnd(-6, 6));
    if (is_zero(m) || is_zero(n)) continue;
    GaussInt g = gcd(gcd(m, n), c);
    double tau_c = (double)divisors(c).size();
    double bound = tau_c * std::sqrt(norm(g).convert_to<double>()) *
                   std::sqrt(norm(c).convert_to<double>());
    cx s = kloosterman(m, n, c);
    CHECK(std::abs(s.real()) <= bound * (1.0 + 1e-9));
  }
}
