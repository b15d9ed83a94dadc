#pragma once

// Test-only reference computations. Each one takes a route that is
// independent of the library code it is compared against (brute force
// enumeration, direct sums, closed forms).

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// (n+1) * min_{j != k} |z_j - z_k| by enumerating every pair.
inline double separation(const std::vector<double>& angles) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < angles.size(); ++j)
    for (std::size_t k = j + 1; k < angles.size(); ++k)
      best = std::min(best, std::abs(std::polar(1.0, angles[j]) - std::polar(1.0, angles[k])));
  return static_cast<double>(angles.size()) * best;
}

// sum_k c_k e^{i k theta}, each power formed from its own angle.
inline cplx eval(const std::vector<cplx>& coeffs, double theta) {
  cplx acc{};
  for (std::size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k] * std::polar(1.0, k * theta);
  return acc;
}

// Conjugate function by an O(M^2) real DFT: for f = a_0 + sum (a_k cos + b_k sin),
// f~ = sum (a_k sin - b_k cos), Nyquist term dropped.
inline std::vector<double> conjugate(const std::vector<double>& f) {
  const std::size_t m = f.size();
  std::vector<double> out(m, 0.0);
  for (std::size_t k = 1; k < m / 2; ++k) {
    double a = 0.0, b = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
      const double x = 2.0 * pi * k * t / m;
      a += f[t] * std::cos(x);
      b += f[t] * std::sin(x);
    }
    a *= 2.0 / m;
    b *= 2.0 / m;
    for (std::size_t t = 0; t < m; ++t) {
      const double x = 2.0 * pi * k * t / m;
      out[t] += a * std::sin(x) - b * std::cos(x);
    }
  }
  return out;
}

// log|1 - rho^{n+1} e^{i(n+1)theta}|: generating polynomial of the roots of unity.
inline double roots_generating_log(int n, double rho, double theta) {
  const double r = std::pow(rho, n + 1);
  return 0.5 * std::log(1.0 + r * r - 2.0 * r * std::cos((n + 1) * theta));
}

// Composite Simpson rule with `pieces` (even) subintervals.
template <class F>
double simpson(F&& f, double a, double b, int pieces) {
  const double h = (b - a) / pieces;
  double s = f(a) + f(b);
  for (int i = 1; i < pieces; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Arc product over [eps, pi - eps] for w = tan(t/2), p = 2:
// int tan(t/2) = int cot(t/2) = 2 log cot(eps/2), so the product is
// 2 log cot(eps/2) / (pi - 2 eps).
inline double limit_product_closed_form(double eps) {
  return 2.0 * std::log(1.0 / std::tan(0.5 * eps)) / (pi - 2.0 * eps);
}

// sum_j (1 - rho^2)/|e^{i eta} - rho w_j|^2 over the roots of unity, summed directly.
inline double poisson_sum(int n, double rho, double eta) {
  double s = 0.0;
  for (int j = 0; j <= n; ++j) {
    const cplx d = std::polar(1.0, eta) - rho * std::polar(1.0, 2.0 * pi * j / (n + 1));
    s += (1.0 - rho * rho) / std::norm(d);
  }
  return s;
}

}  // namespace oracle
