#ifndef DECLAB_SDP_HPP
#define DECLAB_SDP_HPP

#include <utility>
#include <vector>

#include "declab/linalg.hpp"

namespace declab::sdp {

struct SolverOptions {
  double tol_gap_abs = 1e-8;
  double tol_gap_rel = 1e-7;
  double tol_feas = 1e-9;
  int max_iter = 500;
  bool verbose = false;
};

enum class SolveStatus { Optimal, Infeasible, MaxIter };

// Handle to a Hermitian (or real symmetric) matrix of scalar variables.
// Diagonal entries are single real variables; each off-diagonal pair (i<j)
// is one real variable for the real part and one for the imaginary part
// (absent for real symmetric blocks).
struct HermitianVar {
  int dim = 0;
  int base = -1;
  bool real_only = false;
};

// Minimize c^T y subject to affine Hermitian-valued constraints
//   F_b(y) = F0_b + sum_i y_i F_{b,i}  >= 0   for every block b
// and optional linear equalities E y = f. Complex blocks are lowered onto
// their real symmetric embedding at solve time.
class Problem {
 public:
  int num_vars() const { return static_cast<int>(obj_.size()); }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }

  int new_var(double obj_coeff = 0.0);
  HermitianVar new_hermitian(int dim);
  HermitianVar new_real_symmetric(int dim);

  int var_diag(const HermitianVar& h, int i) const;
  int var_re(const HermitianVar& h, int i, int j) const;  // i < j
  int var_im(const HermitianVar& h, int i, int j) const;  // i < j, -1 if real

  int new_block(int dim, bool complex_block);

  // Hermitian entry convention: (a,b,v) with a<b contributes v E_ab +
  // conj(v) E_ba; (a,a,v) needs real v. Real blocks take real v.
  void add_const(int block, int a, int b, cplx v);
  void add_coeff(int block, int var, int a, int b, cplx v);

  // Place scale * H at diagonal position (off,off) of the block.
  void place_hermitian(int block, const HermitianVar& h, int off, double scale = 1.0);
  // Place fixed m at (row_off, col_off); its adjoint lands mirrored. If the
  // two offsets coincide, m must be Hermitian.
  void place_const(int block, const ComplexMatrix& m, int row_off, int col_off);

  void add_equality(std::vector<std::pair<int, double>> terms, double rhs);
  void set_objective(int var, double coeff);

  struct Entry {
    int a, b;
    cplx v;
  };
  struct Block {
    int dim;
    bool complex_block;
    std::vector<Entry> constant;
    std::vector<std::pair<int, Entry>> coeffs;  // (var, entry)
  };

  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<double>& objective() const { return obj_; }
  const std::vector<std::pair<std::vector<std::pair<int, double>>, double>>&
  equalities() const {
    return eqs_;
  }

 private:
  std::vector<double> obj_;
  std::vector<Block> blocks_;
  std::vector<std::pair<std::vector<std::pair<int, double>>, double>> eqs_;
};

struct Solution {
  SolveStatus status = SolveStatus::MaxIter;
  std::vector<double> y;
  double primal_obj = 0.0;  // c^T y of the returned iterate
  double dual_obj = 0.0;    // certified lower bound on the minimum
  double gap = 0.0;
  double max_violation = 0.0;
  int iterations = 0;

  double value(int var) const { return y[var]; }
  ComplexMatrix hermitian_value(const HermitianVar& h) const;
};

Solution solve(const Problem& p, const SolverOptions& opts = {});

}  // namespace declab::sdp

#endif
