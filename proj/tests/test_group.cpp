#include <doctest.h>

#include "declab/group.hpp"
#include "declab/random_maps.hpp"

using namespace declab;

namespace {

GroupAlgebra z2z2_pauli() {
  FiniteGroup g =
      FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  return GroupAlgebra(g, TwoCocycle::pauli());
}

}  // namespace

TEST_CASE("cyclic group and regular representation") {
  GroupAlgebra alg(FiniteGroup::cyclic(2), TwoCocycle::trivial(2));
  CHECK(alg.lambda(0).equals(ComplexMatrix::identity(2), 0.0));
  ComplexMatrix flip(2, 2);
  flip(0, 1) = 1.0;
  flip(1, 0) = 1.0;
  CHECK(alg.lambda(1).equals(flip, 0.0));
}

TEST_CASE("group validation rejects broken tables") {
  // not a Latin square
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 0}, {1, 1}}), Error);
  // Latin square but not associative: no such thing at order 2; fake at 5 via
  // a quasigroup (cyclic with one row swapped breaks latinness first)
  std::vector<std::vector<int>> q = {
      {0, 1, 2, 3, 4}, {1, 2, 0, 4, 3}, {2, 0, 4, 1, 3}, {3, 4, 1, 2, 0}, {4, 3, 1, 0, 2}};
  CHECK_THROWS_AS(FiniteGroup::from_table(q), Error);
}

TEST_CASE("cocycle validation") {
  FiniteGroup g = FiniteGroup::cyclic(2);
  ComplexMatrix bad(2, 2);
  bad(0, 0) = 1.0;
  bad(0, 1) = 1.0;
  bad(1, 0) = 1.0;
  bad(1, 1) = 2.0;  // not unimodular
  CHECK_THROWS_AS(TwoCocycle::from_table(g, bad), Error);

  ComplexMatrix unnorm(2, 2);
  unnorm(0, 0) = -1.0;
  unnorm(0, 1) = 1.0;
  unnorm(1, 0) = 1.0;
  unnorm(1, 1) = 1.0;  // sigma(e,e) != 1
  CHECK_THROWS_AS(TwoCocycle::from_table(g, unnorm), Error);

  // coboundaries are always valid cocycles
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  std::vector<cplx> beta = {cplx(1, 0), cplx(0, 1), cplx(1, 0), cplx(0, 1)};
  TwoCocycle sigma = TwoCocycle::coboundary(z4, beta);
  CHECK_FALSE(sigma.is_trivial());
}

TEST_CASE("lambda relations hold exactly") {
  GroupAlgebra alg(FiniteGroup::symmetric(3), TwoCocycle::trivial(6));
  const FiniteGroup& g = alg.group();
  for (int s = 0; s < 6; ++s)
    for (int t = 0; t < 6; ++t) {
      ComplexMatrix prod = alg.lambda(s) * alg.lambda(t);
      CHECK(prod.equals(alg.lambda(g.mul(s, t)), 1e-14));
      // trace relation tau(lambda_s lambda_t) = sigma(s,t) delta_{s,t^{-1}}
      cplx tr = alg.trace(prod);
      cplx want = (g.mul(s, t) == g.identity()) ? 1.0 : 0.0;
      CHECK(std::abs(tr - want) <= 1e-14);
    }
}

TEST_CASE("pauli cocycle algebra is a factor") {
  GroupAlgebra alg = z2z2_pauli();
  // center of span{lambda_s}: coefficients c with sum c_s (l_s l_t - l_t l_s) = 0
  // for every t. Build the linear system and count its null space.
  int n = 4;
  std::vector<ComplexMatrix> comms;
  for (int t = 0; t < n; ++t) {
    for (int s = 0; s < n; ++s) {
      ComplexMatrix c = alg.lambda(s) * alg.lambda(t) - alg.lambda(t) * alg.lambda(s);
      comms.push_back(c);
    }
  }
  // system matrix: rows = (t, entry), cols = s
  ComplexMatrix sys(n * n * n, n);
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < n; ++s) {
      const ComplexMatrix& c = comms[t * n + s];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sys(t * n * n + i * n + j, s) = c(i, j);
    }
  std::vector<double> sv = singular_values(sys);
  int null_dim = 0;
  for (double v : sv)
    if (v <= 1e-10) ++null_dim;
  CHECK(null_dim == 1);  // center = scalars

  // contrast: the trivial cocycle gives the abelian algebra (center = all)
  GroupAlgebra plain(
      FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)),
      TwoCocycle::trivial(4));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      ComplexMatrix c =
          plain.lambda(s) * plain.lambda(t) - plain.lambda(t) * plain.lambda(s);
      CHECK(c.frobenius() <= 1e-14);
    }
}

TEST_CASE("fourier multiplier: restriction, expectation, CP") {
  GroupAlgebra alg(FiniteGroup::cyclic(2), TwoCocycle::trivial(2));
  FourierSymbol phi = {1.0, -1.0};
  SuperOperator m = fourier_multiplier(alg, phi);
  // restriction multiplies the lambda basis
  for (int s = 0; s < 2; ++s) {
    ComplexMatrix img = m.apply(alg.lambda(s));
    CHECK((img - alg.lambda(s) * phi[s]).frobenius() <= 1e-14);
  }
  CHECK(is_cp(m).cp);  // Gram [[1,-1],[-1,1]] is PSD

  SuperOperator e = conditional_expectation(alg);
  CHECK(is_cp(e).cp);
  CHECK((e.compose(e).choi() - e.choi()).frobenius() <= 1e-13);

  // delta_e gives x -> tr_n(x) I
  GroupAlgebra z3(FiniteGroup::cyclic(3), TwoCocycle::trivial(3));
  FourierSymbol delta = {1.0, 0.0, 0.0};
  SuperOperator md = fourier_multiplier(z3, delta);
  CHECK((md.choi() - SuperOperator::trace_to_identity(3, 3, 1.0 / 3.0).choi())
            .frobenius() <= 1e-14);
}

TEST_CASE("schur multiplier basics") {
  ComplexMatrix ones(2, 2);
  for (auto& z : ones.data()) z = 1.0;
  CHECK((schur_multiplier(ones).choi() - SuperOperator::identity(2).choi())
            .frobenius() <= 1e-15);

  SuperOperator diag_proj = schur_multiplier(ComplexMatrix::identity(2));
  ComplexMatrix x(2, 2);
  x(0, 0) = 1.0;
  x(0, 1) = 5.0;
  x(1, 1) = 2.0;
  ComplexMatrix y = diag_proj.apply(x);
  CHECK(y(0, 0) == cplx(1.0));
  CHECK(y(0, 1) == cplx(0.0));
  CHECK(y(1, 1) == cplx(2.0));
}

TEST_CASE("project_schur formulas") {
  Rng rng(71, 30);
  ComplexMatrix a = ginibre(rng, 3, 3);
  CHECK((project_schur(schur_multiplier(a)) - a).max_abs() == 0.0);

  ComplexMatrix u = random_unitary(rng, 3);
  SuperOperator conj_u = SuperOperator::from_kraus(3, 3, {u});
  ComplexMatrix phi = project_schur(conj_u);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(phi(i, j) - u(i, i) * std::conj(u(j, j))) <= 1e-12);

  ComplexMatrix tphi = project_schur(SuperOperator::transpose_map(3));
  CHECK((tphi - ComplexMatrix::identity(3)).max_abs() <= 1e-15);
}

TEST_CASE("project_fourier: fixing, restriction, subgroup errors") {
  GroupAlgebra alg(FiniteGroup::cyclic(4), TwoCocycle::trivial(4));
  std::vector<int> all = {0, 1, 2, 3};

  CHECK_THROWS_AS(project_fourier(alg, SuperOperator::identity(4), {0, 1}), Error);

  FourierSymbol unit = project_fourier(alg, SuperOperator::identity(4), all);
  for (int s = 0; s < 4; ++s) CHECK(std::abs(unit[s] - cplx(1.0)) == 0.0);

  FourierSymbol phi = {1.0, 2.0, 3.0, 4.0};
  FourierSymbol sub = project_fourier(alg, fourier_multiplier(alg, phi), {0, 2});
  CHECK(sub[0] == cplx(1.0));
  CHECK(sub[1] == cplx(0.0));
  CHECK(sub[2] == cplx(3.0));
  CHECK(sub[3] == cplx(0.0));
}

TEST_CASE("fourier projection idempotence on the non-dyadic order") {
  GroupAlgebra alg(FiniteGroup::symmetric(3), TwoCocycle::trivial(6));
  Rng rng(73, 31);
  std::vector<int> all = {0, 1, 2, 3, 4, 5};
  FourierSymbol phi = random_complex_symbol(rng, 6);
  FourierSymbol back = project_fourier(alg, fourier_multiplier(alg, phi), all);
  double dev = 0.0;
  for (int s = 0; s < 6; ++s) dev = std::max(dev, std::abs(back[s] - phi[s]));
  // order-6 normalization rounds once; everything else is structural
  CHECK(dev <= 1e-14);
}

TEST_CASE("kernel of positive type grams") {
  GroupAlgebra alg(FiniteGroup::cyclic(2), TwoCocycle::trivial(2));
  std::vector<std::vector<FourierSymbol>> fam = {{FourierSymbol{1.0, 0.5}}};
  ComplexMatrix g =
      kernel_positive_type_gram(alg, fam, {{0, 0}, {0, 1}});
  CHECK(g(0, 0) == cplx(1.0));
  CHECK(g(0, 1) == cplx(0.5));
  Spectrum s = herm_eig(g);
  CHECK(s.eigenvalues[0] == doctest::Approx(1.5));
  CHECK(s.eigenvalues[1] == doctest::Approx(0.5));

  std::vector<std::vector<FourierSymbol>> delta = {{FourierSymbol{1.0, 0.0}}};
  ComplexMatrix gi = kernel_positive_type_gram(alg, delta, {{0, 0}, {0, 1}});
  CHECK(gi.equals(ComplexMatrix::identity(2), 0.0));

  std::vector<std::vector<FourierSymbol>> off = {{FourierSymbol{0.0, 1.0}}};
  ComplexMatrix go = kernel_positive_type_gram(alg, off, {{0, 0}, {0, 1}});
  CHECK(herm_eig(go).eigenvalues.back() == doctest::Approx(-1.0));
}

TEST_CASE("gram criterion matches the Choi test on a nonabelian group") {
  GroupAlgebra alg(FiniteGroup::symmetric(3), TwoCocycle::trivial(6));
  Rng rng(79, 32);
  std::vector<std::pair<int, int>> pts;
  for (int s = 0; s < 6; ++s) pts.push_back({0, s});
  for (int trial = 0; trial < 10; ++trial) {
    Rng s = rng.fork(trial);
    FourierSymbol phi =
        (trial % 2 == 0) ? random_posdef_symbol(s, alg) : random_complex_symbol(s, 6);
    std::vector<std::vector<FourierSymbol>> fam = {{phi}};
    ComplexMatrix g = kernel_positive_type_gram(alg, fam, pts);
    // hermitize: random symbols need not satisfy the symmetry
    ComplexMatrix gh(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) gh(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    bool gram_psd = herm_eig(gh).eigenvalues.back() >= -1e-8 &&
                    (g - gh).frobenius() <= 1e-8;
    bool choi_psd = is_cp(fourier_multiplier(alg, phi), 1e-8).cp;
    CHECK(gram_psd == choi_psd);
  }
}

TEST_CASE("posdef symbols induce CP multipliers on twisted algebras") {
  GroupAlgebra plain(FiniteGroup::cyclic(4), TwoCocycle::trivial(4));
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  std::vector<cplx> beta = {cplx(1, 0), cplx(0, 1), cplx(1, 0), cplx(0, 1)};
  GroupAlgebra twisted(z4, TwoCocycle::coboundary(z4, beta));
  Rng rng(83, 33);
  for (int trial = 0; trial < 5; ++trial) {
    Rng s = rng.fork(trial);
    FourierSymbol phi = random_posdef_symbol(s, plain);
    CHECK(is_cp(fourier_multiplier(plain, phi), 1e-9).cp);
    CHECK(is_cp(fourier_multiplier(twisted, phi), 1e-9).cp);
  }
}
