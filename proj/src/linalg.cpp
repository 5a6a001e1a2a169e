#include "declab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace declab {

std::string PExp::str() const {
  if (inf_) return "inf";
  std::ostringstream os;
  os << value_;
  return os.str();
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::unit(int rows, int cols, int i, int j) {
  ComplexMatrix m(rows, cols);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
  ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

static void check_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::DimensionMismatch, "matrix shapes differ");
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& b) const {
  check_same_shape(*this, b);
  ComplexMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + b.a_[i];
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& b) const {
  check_same_shape(*this, b);
  ComplexMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - b.a_[i];
  return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& b) {
  check_same_shape(*this, b);
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& b) {
  check_same_shape(*this, b);
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= b.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : a_) z *= s;
  return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& b) const {
  if (cols_ != b.rows_)
    fail(ErrorCode::DimensionMismatch, "matrix product shapes differ");
  ComplexMatrix r(rows_, b.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      cplx aik = (*this)(i, k);
      if (aik == cplx(0.0)) continue;
      const cplx* brow = &b.a_[static_cast<size_t>(k) * b.cols_];
      cplx* rrow = &r.a_[static_cast<size_t>(i) * b.cols_];
      for (int j = 0; j < b.cols_; ++j) rrow[j] += aik * brow[j];
    }
  }
  return r;
}

ComplexMatrix ComplexMatrix::operator*(cplx s) const {
  ComplexMatrix r(*this);
  r *= s;
  return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = std::conj(a_[i]);
  return r;
}

cplx ComplexMatrix::trace() const {
  if (!square()) fail(ErrorCode::NotSquare, "trace of non-square matrix");
  cplx t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius() const {
  double s = 0.0;
  for (const auto& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : a_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool ComplexMatrix::equals(const ComplexMatrix& b, double tol) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (std::abs(a_[i] - b.a_[i]) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Hermitian Jacobi

namespace {

double offdiag_frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  int n = a.rows();
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) s += std::norm(a(p, q));
  return std::sqrt(2.0 * s);
}

// One rotation annihilating a(p,q). Updates a (Hermitian, both triangles)
// and accumulates the unitary into v.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
  cplx apq = a(p, q);
  double abs_apq = std::abs(apq);
  if (abs_apq == 0.0) return;
  double app = a(p, p).real();
  double aqq = a(q, q).real();
  cplx phase = apq / abs_apq;

  // Real 2x2 rotation for [[app, |apq|], [|apq|, aqq]].
  double tau = (aqq - app) / (2.0 * abs_apq);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  double c = 1.0 / std::sqrt(1.0 + t * t);
  double s = t * c;

  // Unitary: columns (p,q) mix via [[c, s],[-s*conj(phase), c*conj(phase)]].
  cplx gpp = c, gpq = s;
  cplx gqp = -s * std::conj(phase), gqq = c * std::conj(phase);

  int n = a.rows();
  // A <- G^* A G : columns then rows.
  for (int i = 0; i < n; ++i) {
    cplx aip = a(i, p), aiq = a(i, q);
    a(i, p) = aip * gpp + aiq * gqp;
    a(i, q) = aip * gpq + aiq * gqq;
  }
  for (int j = 0; j < n; ++j) {
    cplx apj = a(p, j), aqj = a(q, j);
    a(p, j) = std::conj(gpp) * apj + std::conj(gqp) * aqj;
    a(q, j) = std::conj(gpq) * apj + std::conj(gqq) * aqj;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = cplx(a(p, p).real(), 0.0);
  a(q, q) = cplx(a(q, q).real(), 0.0);

  for (int i = 0; i < v.rows(); ++i) {
    cplx vip = v(i, p), viq = v(i, q);
    v(i, p) = vip * gpp + viq * gqp;
    v(i, q) = vip * gpq + viq * gqq;
  }
}

}  // namespace

Spectrum herm_eig(const ComplexMatrix& h) {
  if (!h.square()) fail(ErrorCode::NotHermitian, "herm_eig: matrix not square");
  if (!h.all_finite()) fail(ErrorCode::InvalidArgument, "herm_eig: non-finite entries");
  double scale = h.frobenius();
  double herm_tol = 1e-10 * (1.0 + scale);
  if (!h.is_hermitian(herm_tol))
    fail(ErrorCode::NotHermitian, "herm_eig: matrix not Hermitian within tolerance");

  int n = h.rows();
  // Symmetrize exactly so rounding in the input cannot drift.
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = cplx(h(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      cplx m = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(i, j) = m;
      a(j, i) = std::conj(m);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const int max_sweeps = 100;
  double stop = 1e-13 * (1.0 + scale);
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_frobenius(a) <= stop) {
      converged = true;
      break;
    }
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > stop / (4.0 * n)) jacobi_rotate(a, v, p, q);
  }
  if (!converged && offdiag_frobenius(a) > 1e-11 * (1.0 + scale))
    fail(ErrorCode::NoConvergence, "herm_eig: Jacobi sweep budget exceeded");

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a(i, i).real();
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int x, int y) { return ev[x] > ev[y]; });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = ev[idx[k]];
    for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, idx[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVD via the Gram matrix of the smaller side.

Svd svd(const ComplexMatrix& x) {
  if (!x.all_finite()) fail(ErrorCode::InvalidArgument, "svd: non-finite entries");
  int r = x.rows(), c = x.cols();
  if (r < c) {
    Svd t = svd(x.adjoint());
    return Svd{t.v, t.s, t.u};
  }
  int k = c;
  Svd out;
  out.s.assign(k, 0.0);
  out.u = ComplexMatrix(r, k);
  out.v = ComplexMatrix(c, k);
  if (k == 0) return out;

  ComplexMatrix g = x.adjoint() * x;
  Spectrum es = herm_eig(g);
  double smax = std::sqrt(std::max(0.0, es.eigenvalues.empty() ? 0.0 : es.eigenvalues[0]));
  double cut = smax * 1e-13;

  out.v = es.eigenvectors;
  for (int j = 0; j < k; ++j) out.s[j] = std::sqrt(std::max(0.0, es.eigenvalues[j]));

  // Columns with significant singular value: u_j = X v_j / s_j.
  int filled = 0;
  for (int j = 0; j < k; ++j) {
    if (out.s[j] > cut && out.s[j] > 0.0) {
      for (int i = 0; i < r; ++i) {
        cplx acc = 0.0;
        for (int l = 0; l < c; ++l) acc += x(i, l) * out.v(l, j);
        out.u(i, j) = acc / out.s[j];
      }
      filled = j + 1;
    }
  }
  // Complete remaining u columns to an orthonormal set (deterministic
  // Gram-Schmidt over the standard basis).
  for (int j = filled; j < k; ++j) {
    for (int cand = 0; cand < r; ++cand) {
      std::vector<cplx> w(r, 0.0);
      w[cand] = 1.0;
      for (int l = 0; l < j; ++l) {
        cplx ip = 0.0;
        for (int i = 0; i < r; ++i) ip += std::conj(out.u(i, l)) * w[i];
        for (int i = 0; i < r; ++i) w[i] -= ip * out.u(i, l);
      }
      double nw = 0.0;
      for (int i = 0; i < r; ++i) nw += std::norm(w[i]);
      nw = std::sqrt(nw);
      if (nw > 0.5) {
        for (int i = 0; i < r; ++i) out.u(i, j) = w[i] / nw;
        break;
      }
    }
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& x) {
  int r = x.rows(), c = x.cols();
  if (r == 0 || c == 0) return {};
  ComplexMatrix g = (r >= c) ? x.adjoint() * x : x * x.adjoint();
  Spectrum es = herm_eig(g);
  std::vector<double> s(es.eigenvalues.size());
  for (size_t i = 0; i < s.size(); ++i)
    s[i] = std::sqrt(std::max(0.0, es.eigenvalues[i]));
  return s;
}

double schatten_norm(const ComplexMatrix& x, PExp p) {
  if (!x.all_finite())
    fail(ErrorCode::InvalidArgument, "schatten_norm: non-finite entries");
  if (!p.is_inf() && p.value() == 2.0) return x.frobenius();
  std::vector<double> s = singular_values(x);
  if (s.empty()) return 0.0;
  if (p.is_inf()) return s[0];
  if (p.value() == 1.0) {
    double t = 0.0;
    for (double v : s) t += v;
    return t;
  }
  double smax = s[0];
  if (smax == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : s) acc += std::pow(v / smax, p.value());
  return smax * std::pow(acc, 1.0 / p.value());
}

double operator_norm(const ComplexMatrix& x) { return schatten_norm(x, PExp::inf()); }
double trace_norm(const ComplexMatrix& x) { return schatten_norm(x, PExp::one()); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      cplx aij = a(i, j);
      if (aij == cplx(0.0)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, int d1, int d2,
                            TraceSide side) {
  if (!x.square() || x.rows() != d1 * d2)
    fail(ErrorCode::DimensionMismatch, "partial_trace: dimension mismatch");
  if (side == TraceSide::First) {
    ComplexMatrix r(d2, d2);
    for (int k = 0; k < d2; ++k)
      for (int l = 0; l < d2; ++l) {
        cplx acc = 0.0;
        for (int i = 0; i < d1; ++i) acc += x(i * d2 + k, i * d2 + l);
        r(k, l) = acc;
      }
    return r;
  }
  ComplexMatrix r(d1, d1);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < d2; ++k) acc += x(i * d2 + k, j * d2 + k);
      r(i, j) = acc;
    }
  return r;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& h) {
  Spectrum es = herm_eig(h);
  int n = h.rows();
  ComplexMatrix r(n, n);
  for (int k = 0; k < n; ++k) {
    double lam = std::sqrt(std::max(0.0, es.eigenvalues[k]));
    if (lam == 0.0) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r(i, j) += lam * es.eigenvectors(i, k) * std::conj(es.eigenvectors(j, k));
  }
  return r;
}

ComplexMatrix matrix_abs(const ComplexMatrix& x) {
  if (!x.square()) fail(ErrorCode::NotSquare, "matrix_abs: matrix not square");
  return matrix_sqrt_psd(x.adjoint() * x);
}

ComplexMatrix entrywise_abs(const ComplexMatrix& x) {
  ComplexMatrix r(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) r(i, j) = std::abs(x(i, j));
  return r;
}

}  // namespace declab
