#ifndef DECLAB_NORMS_HPP
#define DECLAB_NORMS_HPP

#include <optional>

#include "declab/group.hpp"
#include "declab/sdp.hpp"
#include "declab/superop.hpp"

namespace declab {

struct NormOptions {
  sdp::SolverOptions solver;
};

struct DecResult {
  double value = 0.0;
  SuperOperator v1, v2;  // witnesses attaining the minimum
  sdp::SolveStatus status = sdp::SolveStatus::MaxIter;
  double gap = 0.0;
  double violation = 0.0;
  int iterations = 0;
};

// Decomposable norm at the sup level: minimize t over Hermitian Choi
// matrices C1, C2 with [[C1, C(T)],[C(T)*, C2]] >= 0 and the completely
// positive witnesses v_i satisfying ||v_i(1)|| <= t.
DecResult dec_norm_inf(const SuperOperator& t, const NormOptions& opts = {});

// Completely bounded norm of T : M_n -> M_m (sup level), computed as the
// trace-level norm of the trace-duality adjoint.
double cb_norm_inf(const SuperOperator& t, const NormOptions& opts = {});

// Decomposable norm at the trace level: same block constraint, with the
// completely positive witnesses measured through ||v||_{S^1 -> S^1} =
// ||v*(1)||, i.e. the output partial trace of their Choi matrices. Dual to
// dec_norm_inf under the trace-duality adjoint.
double dec_norm_one(const SuperOperator& t, const NormOptions& opts = {});

// Decomposable norm of a map with commutative domain (Choi supported on
// diagonal input units): the block constraint splits per diagonal unit.
double dec_norm_from_commutative(const SuperOperator& t, const NormOptions& opts = {});

// min max(max_i P_ii, max_j Q_jj) s.t. [[P, A],[A*, Q]] >= 0.
double schur_cb_norm(const ComplexMatrix& a, const NormOptions& opts = {});

// Equivalent program for selfadjoint maps: minimize ||S(1)|| over completely
// positive S with Choi(S - T) >= 0 and Choi(S + T) >= 0.
double dec_norm_selfadjoint(const SuperOperator& t, const NormOptions& opts = {});

// Decomposable norm of the canonical multiplier extension, with the
// witnesses restricted to multipliers (exact by the averaging projection).
double dec_norm_multiplier(const GroupAlgebra& alg, const FourierSymbol& phi,
                           const NormOptions& opts = {});

struct PropertyPWitness {
  bool feasible = false;
  std::vector<double> psi1, psi2;  // real symbols, psi_i(e) = 1
  double phase1_optimum = 0.0;     // <= 0 when strictly feasible
  double block_min_eigenvalue = 0.0;
};

// Feasibility of a unital completely positive selfadjoint 2x2 block
// extension of the multiplier with symbol phi (phase-I formulation, so an
// infeasible answer carries the phase-I optimum as certificate).
PropertyPWitness property_P_witness(const GroupAlgebra& alg,
                                    const std::vector<double>& phi,
                                    const NormOptions& opts = {});

}  // namespace declab

#endif
