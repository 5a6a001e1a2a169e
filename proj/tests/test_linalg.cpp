#include <doctest.h>

#include <algorithm>

#include "declab/linalg.hpp"
#include "declab/random_maps.hpp"
#include "oracles.hpp"

using namespace declab;

namespace {

ComplexMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  ComplexMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

}  // namespace

TEST_CASE("pexp basics") {
  CHECK(PExp::inf().is_inf());
  CHECK(PExp::finite(2.0).conjugate() == PExp::finite(2.0));
  CHECK(PExp::finite(1.0).conjugate().is_inf());
  CHECK(PExp::inf().conjugate() == PExp::finite(1.0));
  CHECK(PExp::finite(1.5).conjugate() == PExp::finite(3.0));
  CHECK_THROWS_AS((void)PExp::finite(0.5), Error);
}

TEST_CASE("herm_eig diagonal and flip") {
  Spectrum s = herm_eig(ComplexMatrix::diagonal({3.0, 1.0}));
  CHECK(s.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.eigenvectors.equals(ComplexMatrix::identity(2), 1e-14));

  Spectrum f = herm_eig(mat2(0, 1, 1, 0));
  CHECK(f.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(f.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("herm_eig against the characteristic polynomial") {
  Rng rng(7, 1);
  ComplexMatrix h = random_hermitian(rng, 5);
  Spectrum s = herm_eig(h);
  std::vector<double> roots = testing::real_roots_sorted_desc(h);
  for (int i = 0; i < 5; ++i)
    CHECK(s.eigenvalues[i] == doctest::Approx(roots[i]).epsilon(1e-8));
  // reconstruction and unitarity
  int n = 5;
  ComplexMatrix rec(n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        rec(i, j) += s.eigenvalues[k] * s.eigenvectors(i, k) *
                     std::conj(s.eigenvectors(j, k));
  CHECK((rec - h).frobenius() <= 1e-10 * (1 + h.frobenius()));
  ComplexMatrix vv = s.eigenvectors.adjoint() * s.eigenvectors;
  CHECK((vv - ComplexMatrix::identity(n)).frobenius() <= 1e-10);
}

TEST_CASE("herm_eig rejects non-hermitian input") {
  CHECK_THROWS_AS(herm_eig(mat2(0, 1, 0, 0)), Error);
}

TEST_CASE("svd basics and eigenvalue oracle") {
  Svd s = svd(ComplexMatrix::identity(3));
  for (double v : s.s) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));

  Svd r = svd(mat2(0, 2, 0, 0));
  CHECK(r.s[0] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(r.s[1] == doctest::Approx(0.0).epsilon(1e-13));

  Rng rng(11, 2);
  ComplexMatrix x = ginibre(rng, 4, 3);
  Svd sx = svd(x);
  Spectrum g = herm_eig(x.adjoint() * x);
  for (int i = 0; i < 3; ++i)
    CHECK(sx.s[i] == doctest::Approx(std::sqrt(std::max(0.0, g.eigenvalues[i])))
                          .epsilon(1e-9));
  // reconstruction
  ComplexMatrix rec(4, 3);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j)
        rec(i, j) += sx.s[k] * sx.u(i, k) * std::conj(sx.v(j, k));
  CHECK((rec - x).frobenius() <= 1e-10 * (1 + x.frobenius()));
  ComplexMatrix uu = sx.u.adjoint() * sx.u;
  CHECK((uu - ComplexMatrix::identity(3)).frobenius() <= 1e-10);
}

TEST_CASE("schatten norms on pinned examples") {
  CHECK(schatten_norm(ComplexMatrix::identity(2), PExp::one()) == doctest::Approx(2.0));
  CHECK(schatten_norm(ComplexMatrix::diagonal({3.0, 4.0}), PExp::two()) ==
        doctest::Approx(5.0));
  CHECK(schatten_norm(mat2(0, 1, 0, 0), PExp::inf()) == doctest::Approx(1.0));
}

TEST_CASE("schatten norm ordering, triangle, unitary invariance, Hoelder") {
  Rng rng(23, 3);
  for (int trial = 0; trial < 12; ++trial) {
    Rng s = rng.fork(trial);
    int n = 2 + static_cast<int>(s.next_below(4));
    ComplexMatrix x = ginibre(s, n, n);
    ComplexMatrix y = ginibre(s, n, n);
    PExp p = (trial % 3 == 0)   ? PExp::finite(1.5)
             : (trial % 3 == 1) ? PExp::two()
                                : PExp::finite(3.0);

    CHECK(schatten_norm(x, PExp::inf()) <= schatten_norm(x, p) + 1e-9);
    CHECK(schatten_norm(x, p) <= schatten_norm(x, PExp::one()) + 1e-9);
    CHECK(schatten_norm(x + y, p) <=
          schatten_norm(x, p) + schatten_norm(y, p) + 1e-9);

    ComplexMatrix u = random_unitary(s, n);
    CHECK(schatten_norm(u * x * u.adjoint(), p) ==
          doctest::Approx(schatten_norm(x, p)).epsilon(1e-9));

    PExp q = p.conjugate();
    double lhs = std::abs((x * y).trace());
    CHECK(lhs <= schatten_norm(x, p) * schatten_norm(y, q) + 1e-9);
  }
}

TEST_CASE("kron conventions and singular values") {
  ComplexMatrix b = mat2(1, 2, 3, 4);
  ComplexMatrix k = kron(ComplexMatrix::identity(2), b);
  CHECK(k(0, 0) == cplx(1.0));
  CHECK(k(0, 1) == cplx(2.0));
  CHECK(k(2, 2) == cplx(1.0));
  CHECK(k(0, 2) == cplx(0.0));

  ComplexMatrix e = kron(ComplexMatrix::unit(2, 2, 0, 0), ComplexMatrix::unit(2, 2, 0, 0));
  CHECK(e(0, 0) == cplx(1.0));
  CHECK(e.frobenius() == doctest::Approx(1.0));

  Rng rng(5, 4);
  ComplexMatrix a = ginibre(rng, 3, 3);
  ComplexMatrix c = ginibre(rng, 2, 2);
  std::vector<double> sk = singular_values(kron(a, c));
  std::vector<double> prods;
  for (double sa : singular_values(a))
    for (double sc : singular_values(c)) prods.push_back(sa * sc);
  std::sort(prods.begin(), prods.end(), std::greater<double>());
  for (size_t i = 0; i < sk.size(); ++i)
    CHECK(sk[i] == doctest::Approx(prods[i]).epsilon(1e-10));
}

TEST_CASE("partial trace") {
  Rng rng(9, 5);
  ComplexMatrix b = ginibre(rng, 3, 3);
  ComplexMatrix x = kron(ComplexMatrix::identity(2), b);
  CHECK(partial_trace(x, 2, 3, TraceSide::First).equals(b * cplx(2.0), 1e-12));

  ComplexMatrix a = ginibre(rng, 2, 2);
  ComplexMatrix y = kron(a, ComplexMatrix::identity(3));
  CHECK(partial_trace(y, 2, 3, TraceSide::Second).equals(a * cplx(3.0), 1e-12));

  ComplexMatrix z = ginibre(rng, 6, 6);
  cplx t1 = partial_trace(z, 2, 3, TraceSide::First).trace();
  cplx t2 = partial_trace(z, 2, 3, TraceSide::Second).trace();
  CHECK(std::abs(t1 - z.trace()) <= 1e-12);
  CHECK(std::abs(t2 - z.trace()) <= 1e-12);

  CHECK_THROWS_AS(partial_trace(z, 2, 2, TraceSide::First), Error);
}

TEST_CASE("matrix abs via functional calculus") {
  Rng rng(13, 6);
  ComplexMatrix x = ginibre(rng, 4, 4);
  ComplexMatrix ab = matrix_abs(x);
  // |x|^2 = x* x
  CHECK((ab * ab - x.adjoint() * x).frobenius() <= 1e-9);
  // positive
  Spectrum s = herm_eig(ab);
  CHECK(s.eigenvalues.back() >= -1e-10);
}
