#ifndef DECLAB_PNORM_HPP
#define DECLAB_PNORM_HPP

#include <cstdint>

#include "declab/group.hpp"
#include "declab/norms.hpp"
#include "declab/poly.hpp"
#include "declab/superop.hpp"

namespace declab {

// Certified lower bound of ||T (x) Id_{S^p_d}|| between Schatten classes:
// the value is attained by the stored witness, so it can be replayed.
struct NormEstimate {
  double value = 0.0;
  PExp p = PExp::two();
  int d = 1;
  ComplexMatrix witness;
  int restarts = 0;
  std::uint64_t seed = 0;
  int converged_restarts = 0;
};

// Projected gradient ascent on the unit S^p sphere with a deterministic,
// seed-indexed restart pool. For each amplification level the pool is reused
// and extended with the zero-padded best witness of the previous level, so
// the estimate is nondecreasing in d. At p = 2, d = 1 the exact value comes
// from the top singular value of the Liouville matrix and restarts are
// skipped.
NormEstimate pq_norm_lower(const SuperOperator& t, PExp p, int d, int restarts,
                           std::uint64_t seed,
                           const std::vector<ComplexMatrix>* extra_starts = nullptr);

// Norming functional of the Schatten p-norm at y (the ascent subgradient):
// Re<D, dY> = d||Y||_p and ||D||_{p*} = 1 for nonzero y.
ComplexMatrix schatten_duality_matrix(const ComplexMatrix& y, double p);

struct MatsaevReport {
  double lhs_d1 = 0.0;      // lower bound of ||P(M_phi)|| at amplification 1
  double lhs_d2 = 0.0;      // and at amplification 2
  double rhs_circle = 0.0;  // sup_{|z|=1} |P(z)|, the p = 2 right-hand side
  double rhs_shift = 0.0;   // lower bound via the truncated shift on l^p_N
  double margin = 0.0;      // rhs_circle - max(lhs) at p = 2
  bool violated = false;    // asserted at p = 2 only
};

// The polynomial acts through the multiplier calculus (symbol s -> P(phi(s))),
// which is the operator the inequality is about; the plain extension picks up
// the constant coefficient on the complement of the group span.
MatsaevReport matsaev_check(const GroupAlgebra& alg, const std::vector<double>& phi,
                            const Polynomial& poly, PExp p, int shift_trunc,
                            int restarts, std::uint64_t seed,
                            const NormOptions& opts = {});

ComplexMatrix triangular_symbol(int n);  // a_ij = 1 for i <= j

struct TruncationRow {
  int n;
  double cb_norm;      // schur_cb_norm of the triangular symbol
  double sqrt_n;       // n^{1/2} * max |a_ij|
  bool s2_bound_ok;    // cb_norm <= sqrt_n
};

std::vector<TruncationRow> truncation_growth(const std::vector<int>& n_list,
                                             const NormOptions& opts = {});

struct SchurLimitReport {
  cplx s;      // inner limit over columns, then rows
  cplx t;      // reversed order
  double gap;  // |s - t|
};

// Finite-section diagnostic for the iterated-limit criterion: the tails act
// as stand-ins for i -> inf and j -> inf.
SchurLimitReport schur_limit_criterion(const ComplexMatrix& a,
                                       const std::vector<int>& row_tail,
                                       const std::vector<int>& col_tail);

}  // namespace declab

#endif
