#include <doctest.h>

#include "declab/io.hpp"
#include "declab/pnorm.hpp"
#include "declab/random_maps.hpp"

using namespace declab;

namespace {

GroupAlgebra z4() { return GroupAlgebra(FiniteGroup::cyclic(4), TwoCocycle::trivial(4)); }

double witness_ratio(const SuperOperator& t, const NormEstimate& e) {
  SuperOperator amp = t.amplify(e.d);
  return schatten_norm(amp.apply(e.witness), e.p) / schatten_norm(e.witness, e.p);
}

}  // namespace

TEST_CASE("duality matrix is the norming functional") {
  Rng rng(211, 50);
  for (double p : {1.5, 2.0, 3.0, 7.0}) {
    ComplexMatrix y = ginibre(rng, 4, 4);
    ComplexMatrix d = schatten_duality_matrix(y, p);
    double pairing = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) pairing += std::real(std::conj(d(i, j)) * y(i, j));
    CHECK(pairing == doctest::Approx(schatten_norm(y, PExp::finite(p))).epsilon(1e-9));
    double dual = schatten_norm(d, PExp::finite(p).conjugate());
    CHECK(dual == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("identity map has norm one at every exponent") {
  SuperOperator id3 = SuperOperator::identity(3);
  for (PExp p : {PExp::finite(1.5), PExp::two(), PExp::inf()}) {
    NormEstimate e = pq_norm_lower(id3, p, 2, 6, 7);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("diagonal multipliers attain max |d_k| at every exponent") {
  ComplexMatrix d = ComplexMatrix::diagonal({cplx(0.5), cplx(-1.5), cplx(0.25)});
  SuperOperator t = diagonal_map(d);
  for (PExp p : {PExp::finite(1.5), PExp::two(), PExp::finite(3.0), PExp::inf()}) {
    NormEstimate e = pq_norm_lower(t, p, 1, 8, 11);
    CHECK(e.value == doctest::Approx(1.5).epsilon(1e-9));
  }
}

TEST_CASE("p = 2 is exact through the Liouville matrix") {
  GroupAlgebra alg = z4();
  FourierSymbol phi = {0.2, -1.1, 0.7, 0.4};
  SuperOperator m = fourier_multiplier(alg, phi);
  NormEstimate e = pq_norm_lower(m, PExp::two(), 1, 4, 3);
  CHECK(e.value == doctest::Approx(1.1).epsilon(1e-10));
  CHECK(e.restarts == 0);  // exact path
  double smax = singular_values(m.liouville())[0];
  CHECK(std::abs(e.value - smax) <= 1e-12);
}

TEST_CASE("CP maps attain their norm at the identity at p = inf") {
  Rng rng(233, 54);
  for (int trial = 0; trial < 4; ++trial) {
    Rng s = rng.fork(trial);
    SuperOperator t = random_cp(s, 3, 3, 2);
    double target = operator_norm(t.apply(ComplexMatrix::identity(3)));
    NormEstimate e = pq_norm_lower(t, PExp::inf(), 1, 8, 1000 + trial);
    CHECK(e.value >= target - 1e-6);
    CHECK(e.value <= target + 1e-9);
  }
}

TEST_CASE("estimates are nondecreasing in the amplification degree") {
  Rng rng(223, 51);
  SuperOperator t = random_superop(rng, 2, 2);
  for (PExp p : {PExp::finite(3.0), PExp::inf()}) {
    double prev = 0.0;
    for (int d = 1; d <= 3; ++d) {
      NormEstimate e = pq_norm_lower(t, p, d, 5, 99);
      CHECK(e.value >= prev - 1e-12);
      prev = e.value;
    }
  }
}

TEST_CASE("witness reproduces the reported value and replays from JSON") {
  Rng rng(227, 52);
  SuperOperator t = random_superop(rng, 2, 2);
  NormEstimate e = pq_norm_lower(t, PExp::finite(3.0), 2, 6, 12345);
  CHECK(witness_ratio(t, e) == doctest::Approx(e.value).epsilon(1e-9));

  NormEstimate back = estimate_from_json(estimate_to_json(e));
  CHECK(back.value == e.value);
  CHECK(back.seed == e.seed);
  CHECK(witness_ratio(t, back) == doctest::Approx(e.value).epsilon(1e-9));

  // determinism: same seed, same value bit for bit
  NormEstimate again = pq_norm_lower(t, PExp::finite(3.0), 2, 6, 12345);
  CHECK(again.value == e.value);
}

TEST_CASE("circle suprema of pinned polynomials") {
  CHECK(Polynomial({cplx(0.0), cplx(1.0)}).sup_on_circle() == doctest::Approx(1.0));
  CHECK(Polynomial({cplx(1.0), cplx(1.0)}).sup_on_circle() == doctest::Approx(2.0));
  // z^2 - 1 peaks at z = +-i
  CHECK(Polynomial({cplx(-1.0), cplx(0.0), cplx(1.0)}).sup_on_circle() ==
        doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("matsaev checks") {
  GroupAlgebra two(FiniteGroup::cyclic(2), TwoCocycle::trivial(2));
  {
    Polynomial p({cplx(-1.0), cplx(1.0)});  // z - 1
    MatsaevReport rep = matsaev_check(two, {1.0, -1.0}, p, PExp::two(), 8, 4, 5);
    CHECK(rep.lhs_d1 == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(rep.rhs_circle == doctest::Approx(2.0).epsilon(1e-10));
    CHECK_FALSE(rep.violated);
  }
  {
    Polynomial p({cplx(0.0), cplx(1.0)});  // z
    MatsaevReport rep = matsaev_check(two, {1.0, -1.0}, p, PExp::two(), 8, 4, 5);
    CHECK(rep.lhs_d1 <= 1.0 + 1e-9);
    CHECK_FALSE(rep.violated);
  }
  {
    GroupAlgebra alg = z4();
    Rng rng(229, 53);
    Polynomial p({cplx(1.0), cplx(1.0), cplx(1.0)});  // 1 + z + z^2
    std::vector<double> phi = {0.25, -0.5, 0.125, -0.5};  // contractive: max 0.5
    MatsaevReport rep = matsaev_check(alg, phi, p, PExp::two(), 8, 4, rng.next_u64());
    double expect = 0.0;
    for (double v : phi) expect = std::max(expect, std::abs(p.eval(v)));
    CHECK(rep.lhs_d1 == doctest::Approx(expect).epsilon(1e-9));
    CHECK(rep.margin >= -1e-8);
    CHECK_FALSE(rep.violated);
  }
  // non-contractive symbols are rejected
  CHECK_THROWS_AS(matsaev_check(two, {2.0, 0.0}, Polynomial({cplx(0.0), cplx(1.0)}),
                                PExp::two(), 8, 4, 5),
                  Error);
}

TEST_CASE("truncation growth and the limit criterion at small sizes") {
  std::vector<TruncationRow> rows = truncation_growth({1, 2, 4});
  CHECK(rows[0].cb_norm == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(rows[1].cb_norm > 1.0);
  CHECK(rows[2].cb_norm > rows[1].cb_norm);
  for (const auto& r : rows) CHECK(r.s2_bound_ok);

  ComplexMatrix tri = triangular_symbol(8);
  SchurLimitReport rep = schur_limit_criterion(tri, {5, 6, 7}, {5, 6, 7});
  CHECK(rep.gap == 1.0);

  ComplexMatrix flat(8, 8);
  for (auto& v : flat.data()) v = 0.25;
  CHECK(schur_limit_criterion(flat, {5, 6, 7}, {5, 6, 7}).gap == 0.0);

  // parity of min(i,j): both corner evaluations read the same row start
  ComplexMatrix par(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) par(i, j) = (std::min(i, j) % 2 == 0) ? 1.0 : 0.0;
  SchurLimitReport pr = schur_limit_criterion(par, {5, 6, 7}, {5, 6, 7});
  double s_expect = (std::min(5, 7) % 2 == 0) ? 1.0 : 0.0;
  double t_expect = (std::min(7, 5) % 2 == 0) ? 1.0 : 0.0;
  CHECK(pr.gap == doctest::Approx(std::abs(s_expect - t_expect)));

  CHECK_THROWS_AS(schur_limit_criterion(tri, {6, 7}, {5, 6, 7}), Error);
  CHECK_THROWS_AS(truncation_growth({4, 2}), Error);
}
