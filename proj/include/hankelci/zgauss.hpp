#ifndef HANKELCI_ZGAUSS_HPP
#define HANKELCI_ZGAUSS_HPP

// Exact arithmetic over Z[i]: residues, inverses, divisors, multiplicative
// functions, and the exponential sums over (O/c)^x.

#include <boost/multiprecision/cpp_int.hpp>
#include <utility>
#include <vector>

#include "hankelci/common.hpp"

namespace hankelci::zgauss {

using Int = boost::multiprecision::cpp_int;

struct GaussInt {
  Int re = 0, im = 0;
  GaussInt() = default;
  GaussInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}
  GaussInt(long long r, long long i = 0) : re(r), im(i) {}
  bool operator==(const GaussInt&) const = default;
};

inline GaussInt operator+(const GaussInt& a, const GaussInt& b) {
  return {a.re + b.re, a.im + b.im};
}
inline GaussInt operator-(const GaussInt& a, const GaussInt& b) {
  return {a.re - b.re, a.im - b.im};
}
inline GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
inline GaussInt operator*(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline GaussInt conj(const GaussInt& a) { return {a.re, -a.im}; }
inline Int norm(const GaussInt& a) { return a.re * a.re + a.im * a.im; }
inline bool is_zero(const GaussInt& a) { return a.re == 0 && a.im == 0; }
inline bool is_unit(const GaussInt& a) { return norm(a) == 1; }

// i^k * a
GaussInt mul_i(const GaussInt& a, int k);

// the associate with re > 0, im >= 0 (first-quadrant convention); 0 -> 0
GaussInt canonical(const GaussInt& a);

// nearest-rounding division: a = q*b + r with norm(r) <= norm(b)/2
std::pair<GaussInt, GaussInt> divmod(const GaussInt& a, const GaussInt& b);
bool divides(const GaussInt& d, const GaussInt& a);

GaussInt gcd(const GaussInt& a, const GaussInt& b);

// residue of a modulo c in the canonical box system below
GaussInt mod_reduce(const GaussInt& a, const GaussInt& c);
GaussInt mod_inverse(const GaussInt& a, const GaussInt& c);

struct ResidueSystem {
  GaussInt modulus;
  std::vector<GaussInt> representatives;
  std::vector<GaussInt> unit_representatives;
  static ResidueSystem make(const GaussInt& c);
};

// canonical prime factorization: (prime, exponent), primes canonical, sorted
std::vector<std::pair<GaussInt, int>> factorize(const GaussInt& n);

// one canonical generator per ideal divisor of (n); sorted by norm, then arg
std::vector<GaussInt> divisors(const GaussInt& n);

cx tau_nu(const GaussInt& n, cx nu);
cx sigma_s(const GaussInt& n, cx s);  // n = 0 -> DomainError (see lfun::sigma_s_ext)
long long moebius(const GaussInt& n);
Int eulerPhi(const GaussInt& n);

// S_F(m,n;c) = sum over a in (O/c)^x of e(Re((a m + abar n)/c)).
// Real-valued in exact arithmetic; the imaginary accumulation is monitored
// and must stay below 1e-10.
cx kloosterman(const GaussInt& m, const GaussInt& n, const GaussInt& c);

// configured cap on norm(c) for exponential sums / residue systems
inline constexpr long long kNormCap = 1000000;

}  // namespace hankelci::zgauss

#endif
