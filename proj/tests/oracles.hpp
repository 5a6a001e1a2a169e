// Test-only oracles, kept independent of the solver and eigenvalue paths
// they are used to check.
#ifndef DECLAB_TESTS_ORACLES_HPP
#define DECLAB_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "declab/linalg.hpp"

namespace declab::testing {

// Monic characteristic polynomial of a square matrix via the
// Faddeev-LeVerrier recursion; returns coefficients c_0..c_{n-1} of
// det(xI - A) = x^n + c_{n-1} x^{n-1} + ... + c_0.
inline std::vector<cplx> char_poly_monic(const ComplexMatrix& a) {
  int n = a.rows();
  std::vector<cplx> c(n + 1, 0.0);
  c[n] = 1.0;
  ComplexMatrix m = ComplexMatrix::zero(n, n);
  for (int k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    m = a * m;
    for (int i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    c[n - k] = (a * m).trace() * (-1.0 / k);
  }
  c.pop_back();
  return c;  // c_0..c_{n-1}
}

// Durand-Kerner simultaneous iteration for the roots of a monic polynomial
// x^n + tail_{n-1} x^{n-1} + ... + tail_0.
inline std::vector<cplx> durand_kerner(const std::vector<cplx>& tail) {
  int n = static_cast<int>(tail.size());
  auto eval = [&](cplx x) {
    cplx acc = 1.0;
    for (int k = n - 1; k >= 0; --k) acc = acc * x;
    // Horner on the full monic polynomial
    acc = 1.0;
    for (int k = n - 1; k >= 0; --k) acc = acc * x + tail[k];
    return acc;
  };
  std::vector<cplx> z(n);
  cplx w(0.4, 0.9);
  cplx p = 1.0;
  for (int i = 0; i < n; ++i) {
    p *= w;
    z[i] = p;
  }
  for (int it = 0; it < 500; ++it) {
    double move = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx denom = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      cplx step = eval(z[i]) / denom;
      z[i] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-14) break;
  }
  return z;
}

inline std::vector<double> real_roots_sorted_desc(const ComplexMatrix& a) {
  std::vector<cplx> roots = durand_kerner(char_poly_monic(a));
  std::vector<double> re;
  for (const auto& z : roots) re.push_back(z.real());
  std::sort(re.begin(), re.end(), std::greater<double>());
  return re;
}

}  // namespace declab::testing

#endif
