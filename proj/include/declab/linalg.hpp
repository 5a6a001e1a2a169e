#ifndef DECLAB_LINALG_HPP
#define DECLAB_LINALG_HPP

#include <complex>
#include <string>
#include <vector>

#include "declab/error.hpp"

namespace declab {

using cplx = std::complex<double>;

// Exponent p in [1, inf]. Infinity is a distinguished value, not a large
// float, so norm routines can branch on it without tolerance games.
class PExp {
 public:
  static PExp inf() { return PExp(0.0, true); }
  static PExp finite(double p) {
    if (!(p >= 1.0)) fail(ErrorCode::InvalidP, "exponent must satisfy p >= 1");
    return PExp(p, false);
  }
  static PExp two() { return finite(2.0); }
  static PExp one() { return finite(1.0); }

  bool is_inf() const { return inf_; }
  double value() const { return value_; }

  PExp conjugate() const {
    if (inf_) return one();
    if (value_ == 1.0) return inf();
    return finite(value_ / (value_ - 1.0));
  }

  bool operator==(const PExp& o) const {
    return inf_ == o.inf_ && (inf_ || value_ == o.value_);
  }

  std::string str() const;

 private:
  PExp(double v, bool i) : value_(v), inf_(i) {}
  double value_;
  bool inf_;
};

// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0)
      fail(ErrorCode::InvalidArgument, "negative matrix dimension");
  }

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int rows, int cols) { return {rows, cols}; }
  // e_ij in M_{rows,cols}
  static ComplexMatrix unit(int rows, int cols, int i, int j);
  static ComplexMatrix diagonal(const std::vector<cplx>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  size_t size() const { return a_.size(); }

  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }
  std::vector<cplx>& data() { return a_; }
  const std::vector<cplx>& data() const { return a_; }

  ComplexMatrix operator+(const ComplexMatrix& b) const;
  ComplexMatrix operator-(const ComplexMatrix& b) const;
  ComplexMatrix operator*(const ComplexMatrix& b) const;
  ComplexMatrix operator*(cplx s) const;
  ComplexMatrix& operator+=(const ComplexMatrix& b);
  ComplexMatrix& operator-=(const ComplexMatrix& b);
  ComplexMatrix& operator*=(cplx s);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  cplx trace() const;
  double frobenius() const;
  double max_abs() const;
  bool all_finite() const;
  bool is_hermitian(double tol) const;

  bool equals(const ComplexMatrix& b, double tol) const;

 private:
  int rows_, cols_;
  std::vector<cplx> a_;
};

inline ComplexMatrix operator*(cplx s, const ComplexMatrix& m) { return m * s; }

// Hermitian eigendecomposition, eigenvalues sorted descending, eigenvector
// columns unitary.
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

// Cyclic Jacobi sweeps; deterministic. Throws NotHermitian / NoConvergence.
Spectrum herm_eig(const ComplexMatrix& h);

struct Svd {
  ComplexMatrix u;         // rows x k, orthonormal columns
  std::vector<double> s;   // descending
  ComplexMatrix v;         // cols x k, orthonormal columns
};

Svd svd(const ComplexMatrix& x);
std::vector<double> singular_values(const ComplexMatrix& x);

double schatten_norm(const ComplexMatrix& x, PExp p);
double operator_norm(const ComplexMatrix& x);
double trace_norm(const ComplexMatrix& x);

// Lexicographic flattening, first factor slow: (i,k) -> i*dim(B) + k.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class TraceSide { First, Second };

// X acts on C^{d1 (x) d2}; traces out the requested factor.
ComplexMatrix partial_trace(const ComplexMatrix& x, int d1, int d2,
                            TraceSide side);

// Functional calculus through herm_eig. matrix_abs(x) = (x* x)^{1/2}.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& h);
ComplexMatrix matrix_abs(const ComplexMatrix& x);

// Entrywise modulus (the commutative absolute value of a kernel).
ComplexMatrix entrywise_abs(const ComplexMatrix& x);

}  // namespace declab

#endif
