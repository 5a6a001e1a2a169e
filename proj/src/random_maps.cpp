#include "declab/random_maps.hpp"

#include <cmath>

namespace declab {

ComplexMatrix ginibre(Rng& rng, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.next_complex_gaussian();
  return m;
}

ComplexMatrix random_hermitian(Rng& rng, int n) {
  ComplexMatrix g = ginibre(rng, n, n);
  ComplexMatrix h(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = g(i, i).real();
    for (int j = i + 1; j < n; ++j) {
      cplx m = 0.5 * (g(i, j) + std::conj(g(j, i)));
      h(i, j) = m;
      h(j, i) = std::conj(m);
    }
  }
  return h;
}

ComplexMatrix random_psd(Rng& rng, int n) {
  ComplexMatrix g = ginibre(rng, n, n);
  return g.adjoint() * g;
}

ComplexMatrix random_unitary(Rng& rng, int n) {
  return herm_eig(random_hermitian(rng, n)).eigenvectors;
}

ComplexMatrix random_contraction(Rng& rng, int n) {
  ComplexMatrix g = ginibre(rng, n, n);
  double nrm = operator_norm(g);
  if (nrm == 0.0) return g;
  return g * cplx(1.0 / nrm);
}

SuperOperator random_superop(Rng& rng, int n, int m) {
  return SuperOperator(n, m, ginibre(rng, n * m, n * m));
}

SuperOperator random_cp(Rng& rng, int n, int m, int kraus_count) {
  std::vector<ComplexMatrix> k;
  for (int i = 0; i < kraus_count; ++i) k.push_back(ginibre(rng, m, n));
  return SuperOperator::from_kraus(n, m, k);
}

SuperOperator random_selfadjoint_superop(Rng& rng, int n, int m) {
  return SuperOperator(n, m, random_hermitian(rng, n * m));
}

std::vector<double> random_real_symbol(Rng& rng, int n) {
  std::vector<double> phi(n);
  for (int i = 0; i < n; ++i) phi[i] = rng.next_gaussian();
  return phi;
}

FourierSymbol random_complex_symbol(Rng& rng, int n) {
  FourierSymbol phi(n);
  for (int i = 0; i < n; ++i) phi[i] = rng.next_complex_gaussian();
  return phi;
}

FourierSymbol random_posdef_symbol(Rng& rng, const GroupAlgebra& alg) {
  int n = alg.dim();
  // phi(s) = sum_t f(t) conj(f(s^{-1} t)), a correlation of a random function;
  // the Gram matrix phi(s^{-1} t) is then PSD by construction.
  std::vector<cplx> f(n);
  double nrm = 0.0;
  for (int t = 0; t < n; ++t) {
    f[t] = rng.next_complex_gaussian();
    nrm += std::norm(f[t]);
  }
  FourierSymbol phi(n);
  for (int s = 0; s < n; ++s) {
    cplx acc = 0.0;
    for (int t = 0; t < n; ++t) acc += f[t] * std::conj(f[alg.group().mul(alg.group().inv(s), t)]);
    phi[s] = acc / nrm;
  }
  return phi;
}

}  // namespace declab
