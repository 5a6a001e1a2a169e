#include <doctest.h>

#include "declab/io.hpp"
#include "declab/random_maps.hpp"

using namespace declab;

TEST_CASE("matrix json round trip, rejection of malformed input") {
  Rng rng(301, 60);
  ComplexMatrix m = ginibre(rng, 3, 2);
  ComplexMatrix back = matrix_from_json(matrix_to_json(m));
  CHECK((back - m).max_abs() == 0.0);

  CHECK_THROWS_AS(matrix_from_json("{\"rows\": 2, \"cols\": 2, \"re\": [1,2,3]}"), Error);
  CHECK_THROWS_AS(matrix_from_json("{\"rows\": 2}"), Error);
  CHECK_THROWS_AS(matrix_from_json("not json"), Error);
  CHECK_THROWS_AS(
      matrix_from_json("{\"rows\": 2, \"cols\": 2, \"re\": [1,2,3,4], \"im\": [0]}"),
      Error);
}

TEST_CASE("superop json round trip and shape validation") {
  Rng rng(307, 61);
  SuperOperator t = random_superop(rng, 2, 3);
  SuperOperator back = superop_from_json(superop_to_json(t));
  CHECK(back.in_dim() == 2);
  CHECK(back.out_dim() == 3);
  CHECK((back.choi() - t.choi()).max_abs() == 0.0);

  CHECK_THROWS_AS(
      superop_from_json("{\"in_dim\": 2, \"out_dim\": 2, \"choi\": {\"rows\": 2, "
                        "\"cols\": 2, \"re\": [1,0,0,1]}}"),
      Error);
}

TEST_CASE("group json round trip with and without cocycle") {
  GroupAlgebra plain(FiniteGroup::symmetric(3), TwoCocycle::trivial(6));
  GroupAlgebra back = group_from_json(group_to_json(plain));
  CHECK(back.dim() == 6);
  CHECK(back.cocycle().is_trivial());

  FiniteGroup z4 = FiniteGroup::cyclic(4);
  std::vector<cplx> beta = {cplx(1, 0), cplx(0, 1), cplx(1, 0), cplx(0, 1)};
  GroupAlgebra twisted(z4, TwoCocycle::coboundary(z4, beta));
  GroupAlgebra tback = group_from_json(group_to_json(twisted));
  CHECK_FALSE(tback.cocycle().is_trivial());
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t)
      CHECK(std::abs(tback.cocycle()(s, t) - twisted.cocycle()(s, t)) == 0.0);

  CHECK_THROWS_AS(group_from_json("{\"order\": 2, \"cayley\": [[0,0],[1,1]]}"), Error);
}

TEST_CASE("sdp snapshots carry the whole program and its outcome") {
  sdp::Problem p;
  sdp::HermitianVar h = p.new_hermitian(2);
  int blk = p.new_block(2, true);
  p.place_hermitian(blk, h, 0);
  p.add_equality({{p.var_diag(h, 0), 1.0}}, 1.0);
  p.add_equality({{p.var_diag(h, 1), 1.0}}, 1.0);
  p.set_objective(p.var_re(h, 0, 1), -1.0);
  std::string pj = sdp_problem_to_json(p);
  CHECK(pj.find("\"num_vars\":4") != std::string::npos);
  CHECK(pj.find("\"equalities\"") != std::string::npos);

  sdp::Solution s = sdp::solve(p);
  std::string sj = sdp_solution_to_json(s);
  CHECK(sj.find("\"status\":\"optimal\"") != std::string::npos);
  CHECK(sj.find("\"gap\"") != std::string::npos);
}

TEST_CASE("symbol files") {
  SymbolFile f;
  f.is_fourier = true;
  f.fourier = {cplx(1.0), cplx(0.0, -0.5)};
  SymbolFile back = symbol_from_json(symbol_to_json(f));
  CHECK(back.is_fourier);
  CHECK(back.fourier[1] == cplx(0.0, -0.5));

  SymbolFile s;
  s.is_fourier = false;
  s.schur = ComplexMatrix::identity(2);
  SymbolFile sback = symbol_from_json(symbol_to_json(s));
  CHECK_FALSE(sback.is_fourier);
  CHECK(sback.schur.equals(ComplexMatrix::identity(2), 0.0));

  CHECK_THROWS_AS(symbol_from_json("{\"kind\": \"other\", \"values\": 1}"), Error);
}
