#ifndef DECLAB_RANDOM_MAPS_HPP
#define DECLAB_RANDOM_MAPS_HPP

#include "declab/group.hpp"
#include "declab/rng.hpp"
#include "declab/superop.hpp"

namespace declab {

// Deterministic generators used by the experiment suites and the estimator
// restart pools. Everything draws from the caller's Rng.

ComplexMatrix ginibre(Rng& rng, int rows, int cols);
ComplexMatrix random_hermitian(Rng& rng, int n);
ComplexMatrix random_psd(Rng& rng, int n);
ComplexMatrix random_unitary(Rng& rng, int n);
ComplexMatrix random_contraction(Rng& rng, int n);  // operator norm <= 1

SuperOperator random_superop(Rng& rng, int n, int m);              // random Choi
SuperOperator random_cp(Rng& rng, int n, int m, int kraus_count);  // Kraus form
SuperOperator random_selfadjoint_superop(Rng& rng, int n, int m);  // Hermitian Choi

std::vector<double> random_real_symbol(Rng& rng, int n);
FourierSymbol random_complex_symbol(Rng& rng, int n);
// positive-definite function phi(s) = <f, lambda_s f> style, normalized at e
FourierSymbol random_posdef_symbol(Rng& rng, const GroupAlgebra& alg);

}  // namespace declab

#endif
