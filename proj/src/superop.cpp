#include "declab/superop.hpp"

#include <cmath>

namespace declab {

SuperOperator::SuperOperator(int in_dim, int out_dim, ComplexMatrix choi)
    : n_(in_dim), m_(out_dim), choi_(std::move(choi)) {
  if (n_ <= 0 || m_ <= 0)
    fail(ErrorCode::InvalidArgument, "superoperator dimensions must be positive");
  if (choi_.rows() != n_ * m_ || choi_.cols() != n_ * m_)
    fail(ErrorCode::DimensionMismatch, "choi matrix has wrong shape");
}

SuperOperator SuperOperator::from_action(int in_dim, int out_dim,
                                         const std::vector<ComplexMatrix>& images) {
  if (static_cast<int>(images.size()) != in_dim * in_dim)
    fail(ErrorCode::DimensionMismatch, "from_action: expected n^2 unit images");
  ComplexMatrix c(in_dim * out_dim, in_dim * out_dim);
  for (int i = 0; i < in_dim; ++i)
    for (int j = 0; j < in_dim; ++j) {
      const ComplexMatrix& img = images[static_cast<size_t>(i) * in_dim + j];
      if (img.rows() != out_dim || img.cols() != out_dim)
        fail(ErrorCode::DimensionMismatch, "from_action: image has wrong shape");
      for (int k = 0; k < out_dim; ++k)
        for (int l = 0; l < out_dim; ++l)
          c(i * out_dim + k, j * out_dim + l) = img(k, l);
    }
  return SuperOperator(in_dim, out_dim, std::move(c));
}

SuperOperator SuperOperator::from_liouville(int in_dim, int out_dim,
                                            const ComplexMatrix& l) {
  if (l.rows() != out_dim * out_dim || l.cols() != in_dim * in_dim)
    fail(ErrorCode::DimensionMismatch, "from_liouville: wrong shape");
  ComplexMatrix c(in_dim * out_dim, in_dim * out_dim);
  for (int i = 0; i < in_dim; ++i)
    for (int j = 0; j < in_dim; ++j)
      for (int k = 0; k < out_dim; ++k)
        for (int l2 = 0; l2 < out_dim; ++l2)
          c(i * out_dim + k, j * out_dim + l2) = l(k * out_dim + l2, i * in_dim + j);
  return SuperOperator(in_dim, out_dim, std::move(c));
}

SuperOperator SuperOperator::from_kraus_pairs(int in_dim, int out_dim,
                                              const std::vector<ComplexMatrix>& a,
                                              const std::vector<ComplexMatrix>& b) {
  if (a.size() != b.size())
    fail(ErrorCode::DimensionMismatch, "from_kraus_pairs: list lengths differ");
  ComplexMatrix c(in_dim * out_dim, in_dim * out_dim);
  for (size_t t = 0; t < a.size(); ++t) {
    const ComplexMatrix& ka = a[t];
    const ComplexMatrix& kb = b[t];
    if (ka.rows() != out_dim || ka.cols() != in_dim || kb.rows() != out_dim ||
        kb.cols() != in_dim)
      fail(ErrorCode::DimensionMismatch, "from_kraus_pairs: operator shape");
    // T(e_ij) = ka e_ij kb^* has entries ka(k,i) conj(kb(l,j)).
    for (int i = 0; i < in_dim; ++i)
      for (int k = 0; k < out_dim; ++k) {
        cplx left = ka(k, i);
        if (left == cplx(0.0)) continue;
        for (int j = 0; j < in_dim; ++j)
          for (int l = 0; l < out_dim; ++l)
            c(i * out_dim + k, j * out_dim + l) += left * std::conj(kb(l, j));
      }
  }
  return SuperOperator(in_dim, out_dim, std::move(c));
}

SuperOperator SuperOperator::identity(int n) {
  std::vector<ComplexMatrix> imgs;
  imgs.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) imgs.push_back(ComplexMatrix::unit(n, n, i, j));
  return from_action(n, n, imgs);
}

SuperOperator SuperOperator::transpose_map(int n) {
  std::vector<ComplexMatrix> imgs;
  imgs.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) imgs.push_back(ComplexMatrix::unit(n, n, j, i));
  return from_action(n, n, imgs);
}

SuperOperator SuperOperator::zero(int in_dim, int out_dim) {
  return SuperOperator(in_dim, out_dim,
                       ComplexMatrix(in_dim * out_dim, in_dim * out_dim));
}

SuperOperator SuperOperator::trace_to_identity(int n, int m, double scale) {
  std::vector<ComplexMatrix> imgs;
  imgs.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ComplexMatrix img(m, m);
      if (i == j)
        for (int k = 0; k < m; ++k) img(k, k) = scale;
      imgs.push_back(std::move(img));
    }
  return from_action(n, m, imgs);
}

ComplexMatrix SuperOperator::unit_image(int i, int j) const {
  ComplexMatrix img(m_, m_);
  for (int k = 0; k < m_; ++k)
    for (int l = 0; l < m_; ++l) img(k, l) = choi_(i * m_ + k, j * m_ + l);
  return img;
}

ComplexMatrix SuperOperator::apply(const ComplexMatrix& x) const {
  if (x.rows() != n_ || x.cols() != n_)
    fail(ErrorCode::DimensionMismatch, "apply: input has wrong shape");
  ComplexMatrix y(m_, m_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      cplx xij = x(i, j);
      if (xij == cplx(0.0)) continue;
      for (int k = 0; k < m_; ++k)
        for (int l = 0; l < m_; ++l) y(k, l) += xij * choi_(i * m_ + k, j * m_ + l);
    }
  return y;
}

ComplexMatrix SuperOperator::liouville() const {
  ComplexMatrix l(m_ * m_, n_ * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < m_; ++k)
        for (int l2 = 0; l2 < m_; ++l2)
          l(k * m_ + l2, i * n_ + j) = choi_(i * m_ + k, j * m_ + l2);
  return l;
}

SuperOperator SuperOperator::opposite() const {
  // C(T°) = C(T)^*.
  return SuperOperator(n_, m_, choi_.adjoint());
}

SuperOperator SuperOperator::adjoint() const {
  // T*(e_kl)[i,j] = tr(T(e_ji) e_kl) = C[(j,l),(i,k)].
  ComplexMatrix c(m_ * n_, m_ * n_);
  for (int k = 0; k < m_; ++k)
    for (int l = 0; l < m_; ++l)
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
          c(k * n_ + i, l * n_ + j) = choi_(j * m_ + l, i * m_ + k);
  return SuperOperator(m_, n_, std::move(c));
}

SuperOperator SuperOperator::compose(const SuperOperator& inner) const {
  if (inner.m_ != n_)
    fail(ErrorCode::DimensionMismatch, "compose: dimension mismatch");
  std::vector<ComplexMatrix> imgs;
  imgs.reserve(static_cast<size_t>(inner.n_) * inner.n_);
  for (int i = 0; i < inner.n_; ++i)
    for (int j = 0; j < inner.n_; ++j) imgs.push_back(apply(inner.unit_image(i, j)));
  return from_action(inner.n_, m_, imgs);
}

SuperOperator SuperOperator::amplify(int d) const {
  if (d < 1) fail(ErrorCode::InvalidArgument, "amplify: degree must be >= 1");
  if (d == 1) return *this;
  int nn = d * n_, mm = d * m_;
  ComplexMatrix c(nn * mm, nn * mm);
  // (Id (x) T)(e_aa' (x) e_ij) = e_aa' (x) T(e_ij)
  for (int a = 0; a < d; ++a)
    for (int ap = 0; ap < d; ++ap)
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
          for (int k = 0; k < m_; ++k)
            for (int l = 0; l < m_; ++l) {
              cplx v = choi_(i * m_ + k, j * m_ + l);
              if (v == cplx(0.0)) continue;
              int row = (a * n_ + i) * mm + (a * m_ + k);
              int col = (ap * n_ + j) * mm + (ap * m_ + l);
              c(row, col) = v;
            }
  return SuperOperator(nn, mm, std::move(c));
}

SuperOperator SuperOperator::operator+(const SuperOperator& o) const {
  if (n_ != o.n_ || m_ != o.m_)
    fail(ErrorCode::DimensionMismatch, "superoperator sum: dimension mismatch");
  return SuperOperator(n_, m_, choi_ + o.choi_);
}

SuperOperator SuperOperator::operator-(const SuperOperator& o) const {
  if (n_ != o.n_ || m_ != o.m_)
    fail(ErrorCode::DimensionMismatch, "superoperator difference: dimension mismatch");
  return SuperOperator(n_, m_, choi_ - o.choi_);
}

SuperOperator SuperOperator::operator*(cplx s) const {
  return SuperOperator(n_, m_, choi_ * s);
}

bool SuperOperator::is_selfadjoint_map(double tol) const {
  // T(x*) = T(x)* for all x iff the Choi matrix is Hermitian.
  ComplexMatrix d = choi_ - choi_.adjoint();
  return d.frobenius() <= tol * (1.0 + choi_.frobenius());
}

bool SuperOperator::has_diagonal_input_support(double tol) const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j) continue;
      for (int k = 0; k < m_; ++k)
        for (int l = 0; l < m_; ++l)
          if (std::abs(choi_(i * m_ + k, j * m_ + l)) > tol) return false;
    }
  return true;
}

bool SuperOperator::has_diagonal_support(double tol) const {
  if (!has_diagonal_input_support(tol)) return false;
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < m_; ++k)
      for (int l = 0; l < m_; ++l)
        if (k != l && std::abs(choi_(i * m_ + k, i * m_ + l)) > tol) return false;
  return true;
}

CpCertificate is_cp(const SuperOperator& t, double tol) {
  const ComplexMatrix& c = t.choi();
  ComplexMatrix herm(c.rows(), c.cols());
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j)
      herm(i, j) = 0.5 * (c(i, j) + std::conj(c(j, i)));
  double defect = (c - c.adjoint()).frobenius();
  Spectrum es = herm_eig(herm);
  int n = c.rows();
  double lam_min = es.eigenvalues.back();
  ComplexMatrix vec(n, 1);
  for (int i = 0; i < n; ++i) vec(i, 0) = es.eigenvectors(i, n - 1);
  double scale = tol * (1.0 + std::abs(c.trace()));
  CpCertificate cert;
  cert.cp = (lam_min >= -scale) && (defect <= scale);
  cert.min_eigenvalue = lam_min;
  cert.eigenvector = std::move(vec);
  cert.hermiticity_defect = defect;
  return cert;
}

BlockMap block2(const SuperOperator& v1, const SuperOperator& t,
                const SuperOperator& v2) {
  int n = t.in_dim(), m = t.out_dim();
  if (v1.in_dim() != n || v1.out_dim() != m || v2.in_dim() != n || v2.out_dim() != m)
    fail(ErrorCode::DimensionMismatch, "block2: corner dimensions differ");
  SuperOperator topp = t.opposite();
  std::vector<ComplexMatrix> imgs;
  imgs.reserve(static_cast<size_t>(4) * n * n);
  // Input units E_{(beta,i),(gamma,j)} of M_{2n}, beta/gamma block indices.
  for (int beta = 0; beta < 2; ++beta)
    for (int i = 0; i < n; ++i)
      for (int gamma = 0; gamma < 2; ++gamma)
        for (int j = 0; j < n; ++j) {
          const SuperOperator* corner;
          if (beta == 0 && gamma == 0)
            corner = &v1;
          else if (beta == 0 && gamma == 1)
            corner = &t;
          else if (beta == 1 && gamma == 0)
            corner = &topp;
          else
            corner = &v2;
          ComplexMatrix small = corner->unit_image(i, j);
          ComplexMatrix big(2 * m, 2 * m);
          for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) big(beta * m + k, gamma * m + l) = small(k, l);
          imgs.push_back(std::move(big));
        }
  BlockMap out;
  out.v1 = v1;
  out.t = t;
  out.v2 = v2;
  out.assembled = SuperOperator::from_action(2 * n, 2 * m, imgs);
  return out;
}

SuperOperator SuperOperator::tilde() const {
  if (n_ != m_) fail(ErrorCode::NotSquare, "tilde: map must be square");
  BlockMap b = block2(SuperOperator::zero(n_, m_), *this, SuperOperator::zero(n_, m_));
  return b.assembled;
}

SuperOperator diagonal_map(const ComplexMatrix& b) {
  int q = b.rows(), r = b.cols();
  std::vector<ComplexMatrix> imgs;
  imgs.reserve(static_cast<size_t>(r) * r);
  for (int k = 0; k < r; ++k)
    for (int l = 0; l < r; ++l) {
      ComplexMatrix img(q, q);
      if (k == l)
        for (int i = 0; i < q; ++i) img(i, i) = b(i, k);
      imgs.push_back(std::move(img));
    }
  return SuperOperator::from_action(r, q, imgs);
}

bool modulus_block_check(const ComplexMatrix& b, double tol, double* min_eig) {
  SuperOperator tb = diagonal_map(b);
  SuperOperator ta = diagonal_map(entrywise_abs(b));
  BlockMap blk = block2(ta, tb, ta);
  CpCertificate cert = is_cp(blk.assembled, tol);
  if (min_eig) *min_eig = cert.min_eigenvalue;
  return cert.cp;
}

}  // namespace declab
