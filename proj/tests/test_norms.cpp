#include <doctest.h>

#include "declab/norms.hpp"
#include "declab/random_maps.hpp"

using namespace declab;

namespace {

GroupAlgebra z2() { return GroupAlgebra(FiniteGroup::cyclic(2), TwoCocycle::trivial(2)); }
GroupAlgebra z4() { return GroupAlgebra(FiniteGroup::cyclic(4), TwoCocycle::trivial(4)); }

}  // namespace

TEST_CASE("dec norm of the identity is 1") {
  for (int n : {2, 3}) {
    DecResult r = dec_norm_inf(SuperOperator::identity(n));
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.status == sdp::SolveStatus::Optimal);
  }
}

TEST_CASE("dec norm of the transpose is n, witnesses check out") {
  DecResult r = dec_norm_inf(SuperOperator::transpose_map(2));
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-6));
  // the attained witnesses assemble into a completely positive block map
  BlockMap blk = block2(r.v1, SuperOperator::transpose_map(2), r.v2);
  CHECK(is_cp(blk.assembled, 1e-6).cp);
  CHECK(operator_norm(r.v1.apply(ComplexMatrix::identity(2))) <= r.value + 1e-6);
  CHECK(operator_norm(r.v2.apply(ComplexMatrix::identity(2))) <= r.value + 1e-6);
}

TEST_CASE("cb norm pins identity, transpose and diagonal multipliers") {
  CHECK(cb_norm_inf(SuperOperator::identity(3)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cb_norm_inf(SuperOperator::transpose_map(2)) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(cb_norm_inf(SuperOperator::transpose_map(3)) == doctest::Approx(3.0).epsilon(1e-5));

  ComplexMatrix a = ComplexMatrix::diagonal({cplx(0.3), cplx(-1.7), cplx(0.9)});
  CHECK(cb_norm_inf(schur_multiplier(a)) == doctest::Approx(1.7).epsilon(1e-6));
}

TEST_CASE("CP maps: dec = cb = norm at the identity") {
  Rng rng(101, 40);
  for (int trial = 0; trial < 4; ++trial) {
    Rng s = rng.fork(trial);
    SuperOperator t = random_cp(s, 2, 2, 2);
    double at_one = operator_norm(t.apply(ComplexMatrix::identity(2)));
    CHECK(dec_norm_inf(t).value == doctest::Approx(at_one).epsilon(1e-6));
    CHECK(cb_norm_inf(t) == doctest::Approx(at_one).epsilon(1e-6));
  }
}

TEST_CASE("sign symbol on Z_2 is completely positive with dec norm 1") {
  GroupAlgebra alg = z2();
  SuperOperator m = fourier_multiplier(alg, {1.0, -1.0});
  CHECK(is_cp(m).cp);
  CHECK(dec_norm_inf(m).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("commutative program: unitary rows and input validation") {
  ComplexMatrix x(2, 2), z(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  std::vector<ComplexMatrix> imgs = {x, ComplexMatrix(2, 2), ComplexMatrix(2, 2), z};
  SuperOperator row = SuperOperator::from_action(2, 2, imgs);
  CHECK(dec_norm_from_commutative(row) == doctest::Approx(2.0).epsilon(1e-4));
  CHECK_THROWS_AS(dec_norm_from_commutative(SuperOperator::transpose_map(2)), Error);

  std::vector<ComplexMatrix> one = {ComplexMatrix::identity(1)};
  SuperOperator trivial = SuperOperator::from_action(1, 1, one);
  CHECK(dec_norm_from_commutative(trivial) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("schur cb norm closed forms") {
  ComplexMatrix ones(3, 3);
  for (auto& v : ones.data()) v = 1.0;
  CHECK(schur_cb_norm(ones) == doctest::Approx(1.0).epsilon(1e-6));

  ComplexMatrix d = ComplexMatrix::diagonal({cplx(0.5), cplx(-2.0), cplx(1.0)});
  CHECK(schur_cb_norm(d) == doctest::Approx(2.0).epsilon(1e-6));

  ComplexMatrix tri(2, 2);
  tri(0, 0) = 1.0;
  tri(0, 1) = 1.0;
  tri(1, 1) = 1.0;
  double v = schur_cb_norm(tri);
  CHECK(v > 1.0);
  CHECK(v <= 2.0);
  CHECK(cb_norm_inf(schur_multiplier(tri)) == doctest::Approx(v).epsilon(1e-5));
  CHECK(dec_norm_inf(schur_multiplier(tri)).value == doctest::Approx(v).epsilon(1e-5));
}

TEST_CASE("selfadjoint program agrees with the block program") {
  Rng rng(103, 41);
  for (int trial = 0; trial < 4; ++trial) {
    Rng s = rng.fork(trial);
    SuperOperator t = random_selfadjoint_superop(s, 2, 2);
    double a = dec_norm_inf(t).value;
    double b = dec_norm_selfadjoint(t);
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
  }
  CHECK_THROWS_AS(dec_norm_selfadjoint(SuperOperator::identity(2) * cplx(0, 1)), Error);
}

TEST_CASE("multiplier-restricted dec program matches the general one") {
  Rng rng(107, 42);
  for (const GroupAlgebra& alg : {z2(), z4()}) {
    for (int trial = 0; trial < 3; ++trial) {
      Rng s = rng.fork(alg.dim() * 10 + trial);
      FourierSymbol phi = random_complex_symbol(s, alg.dim());
      double a = dec_norm_multiplier(alg, phi);
      double b = dec_norm_inf(fourier_multiplier(alg, phi)).value;
      CHECK(a == doctest::Approx(b).epsilon(1e-6));
    }
  }
}

TEST_CASE("property (P) witnesses") {
  GroupAlgebra alg = z4();
  {
    std::vector<double> unit = {1.0, 1.0, 1.0, 1.0};
    PropertyPWitness w = property_P_witness(alg, unit);
    CHECK(w.feasible);
    CHECK(w.block_min_eigenvalue >= -1e-7);
  }
  {
    std::vector<double> phi = {1.0, 0.0, -1.0, 0.0};
    PropertyPWitness w = property_P_witness(alg, phi);
    CHECK(w.feasible);
    CHECK(w.psi1[alg.group().identity()] == 1.0);
  }
  {
    GroupAlgebra two = z2();
    PropertyPWitness w = property_P_witness(two, {1.0, -1.0});
    CHECK(w.feasible);
  }
  // non-contractive symbols violate the precondition
  CHECK_THROWS_AS(property_P_witness(alg, {2.0, 0.0, 0.0, 0.0}), Error);
}
