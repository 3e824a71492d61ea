#ifndef HANKELCI_COMMON_HPP
#define HANKELCI_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <cmath>

namespace hankelci {

using cx = std::complex<double>;

inline constexpr double PI = 3.141592653589793238462643383279502884;
inline constexpr double TWO_PI = 2.0 * PI;

// e(x) = exp(2*pi*i*x)
inline cx eunit(double x) {
  double t = TWO_PI * x;
  return cx(std::cos(t), std::sin(t));
}

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& m) : std::runtime_error(m) {}
};

// Pole hit; carries the residue when the caller can use it.
struct PoleError : std::runtime_error {
  cx location;
  cx residue;
  PoleError(const std::string& m, cx loc, cx res = cx(0, 0))
      : std::runtime_error(m), location(loc), residue(res) {}
};

struct PrecisionError : std::runtime_error {
  double best_estimate;
  explicit PrecisionError(const std::string& m, double est = 0)
      : std::runtime_error(m), best_estimate(est) {}
};

struct UnsupportedRegionError : std::runtime_error {
  explicit UnsupportedRegionError(const std::string& m) : std::runtime_error(m) {}
};

// Compensated accumulator (Kahan-Neumaier).
struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

struct KahanC {
  Kahan re, im;
  void add(cx z) { re.add(z.real()); im.add(z.imag()); }
  cx value() const { return cx(re.value(), im.value()); }
};

inline bool near_integer(double x, double tol = 1e-8) {
  return std::abs(x - std::round(x)) < tol;
}
inline bool near_integer(cx z, double tol = 1e-8) {
  return std::abs(z.imag()) < tol && near_integer(z.real(), tol);
}
// distance to {..,-2,-1,0}
inline double dist_to_nonpos_int(cx z) {
  double r = std::round(z.real());
  if (r > 0) r = 0;
  return std::abs(z - cx(r, 0));
}

}  // namespace hankelci

#endif
