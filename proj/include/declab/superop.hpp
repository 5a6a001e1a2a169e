#ifndef DECLAB_SUPEROP_HPP
#define DECLAB_SUPEROP_HPP

#include <vector>

#include "declab/linalg.hpp"

namespace declab {

// Linear map T : M_n -> M_m stored Choi-first:
//   choi = sum_{i,j} e_ij (x) T(e_ij),  an (n*m) x (n*m) matrix
// with lexicographic flattening (input index slow). Everything else
// (Liouville matrix, action, adjoints) is derived from the Choi matrix.
class SuperOperator {
 public:
  SuperOperator() : n_(0), m_(0) {}
  SuperOperator(int in_dim, int out_dim, ComplexMatrix choi);

  static SuperOperator from_action(int in_dim, int out_dim,
                                   const std::vector<ComplexMatrix>& images);
  static SuperOperator from_liouville(int in_dim, int out_dim,
                                      const ComplexMatrix& l);
  // x -> sum_k a_k x b_k^*
  static SuperOperator from_kraus_pairs(int in_dim, int out_dim,
                                        const std::vector<ComplexMatrix>& a,
                                        const std::vector<ComplexMatrix>& b);
  static SuperOperator from_kraus(int in_dim, int out_dim,
                                  const std::vector<ComplexMatrix>& k) {
    return from_kraus_pairs(in_dim, out_dim, k, k);
  }
  static SuperOperator identity(int n);
  static SuperOperator transpose_map(int n);
  static SuperOperator zero(int in_dim, int out_dim);
  // x -> trace(x) * scale * I_m
  static SuperOperator trace_to_identity(int n, int m, double scale);

  int in_dim() const { return n_; }
  int out_dim() const { return m_; }
  const ComplexMatrix& choi() const { return choi_; }

  ComplexMatrix unit_image(int i, int j) const;  // T(e_ij)
  ComplexMatrix apply(const ComplexMatrix& x) const;
  // (m^2) x (n^2) matrix L with vec(T(x)) = L vec(x), row-major vec.
  ComplexMatrix liouville() const;

  SuperOperator opposite() const;  // T°(x) = T(x*)*
  SuperOperator adjoint() const;   // trace duality: tr(T(x) y) = tr(x T*(y))
  SuperOperator compose(const SuperOperator& inner) const;  // this ∘ inner
  SuperOperator amplify(int d) const;                       // Id_{M_d} (x) T
  SuperOperator tilde() const;  // [[0, T],[T°, 0]] on the doubled algebra

  SuperOperator operator+(const SuperOperator& o) const;
  SuperOperator operator-(const SuperOperator& o) const;
  SuperOperator operator*(cplx s) const;

  bool is_selfadjoint_map(double tol) const;
  // Choi supported on diagonal input units e_kk (commutative domain).
  bool has_diagonal_input_support(double tol) const;
  // Choi supported diagonally in both input and output units.
  bool has_diagonal_support(double tol) const;

 private:
  int n_, m_;
  ComplexMatrix choi_;
};

struct CpCertificate {
  bool cp;
  double min_eigenvalue;       // of the hermitized Choi matrix
  ComplexMatrix eigenvector;   // witness for the minimal eigenvalue
  double hermiticity_defect;   // ||C - C*||_F
};

// Choi positivity test; tol is scaled by (1 + |trace choi|).
CpCertificate is_cp(const SuperOperator& t, double tol = 1e-8);

struct BlockMap {
  SuperOperator v1, t, v2;
  SuperOperator assembled;  // [[a,b],[c,d]] -> [[v1(a), t(b)],[t°(c), v2(d)]]
};

BlockMap block2(const SuperOperator& v1, const SuperOperator& t,
                const SuperOperator& v2);

// Map between commutative algebras given by a rectangular matrix acting on
// coordinates, represented on the diagonal subalgebras: T(e_kk) =
// diag(column k of b), zero on off-diagonal units.
SuperOperator diagonal_map(const ComplexMatrix& b);

// Tests that [[|b| entrywise, b],[b-opposite, |b| entrywise]] between the
// commutative algebras is completely positive (Choi PSD). Returns the
// minimal eigenvalue through min_eig when non-null.
bool modulus_block_check(const ComplexMatrix& b, double tol = 1e-8,
                         double* min_eig = nullptr);

}  // namespace declab

#endif
