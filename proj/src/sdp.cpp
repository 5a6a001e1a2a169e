#include "declab/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

#include "declab/error.hpp"

namespace declab::sdp {

// ---------------------------------------------------------------------------
// Modeling

int Problem::new_var(double obj_coeff) {
  obj_.push_back(obj_coeff);
  return static_cast<int>(obj_.size()) - 1;
}

HermitianVar Problem::new_hermitian(int dim) {
  HermitianVar h;
  h.dim = dim;
  h.base = num_vars();
  h.real_only = false;
  int count = dim * dim;  // dim diagonal + 2 * dim(dim-1)/2 off-diagonal
  for (int i = 0; i < count; ++i) new_var(0.0);
  return h;
}

HermitianVar Problem::new_real_symmetric(int dim) {
  HermitianVar h;
  h.dim = dim;
  h.base = num_vars();
  h.real_only = true;
  int count = dim + dim * (dim - 1) / 2;
  for (int i = 0; i < count; ++i) new_var(0.0);
  return h;
}

// Layout: diagonal entries first, then (re, im) or (re) pairs in row-major
// upper-triangle order.
static int offdiag_index(const HermitianVar& h, int i, int j) {
  // number of (a,b), a<b pairs preceding (i,j) in row-major order
  int before = i * h.dim - i * (i + 1) / 2 + (j - i - 1);
  return before;
}

int Problem::var_diag(const HermitianVar& h, int i) const { return h.base + i; }

int Problem::var_re(const HermitianVar& h, int i, int j) const {
  int stride = h.real_only ? 1 : 2;
  return h.base + h.dim + stride * offdiag_index(h, i, j);
}

int Problem::var_im(const HermitianVar& h, int i, int j) const {
  if (h.real_only) return -1;
  return h.base + h.dim + 2 * offdiag_index(h, i, j) + 1;
}

int Problem::new_block(int dim, bool complex_block) {
  Block b;
  b.dim = dim;
  b.complex_block = complex_block;
  blocks_.push_back(std::move(b));
  return static_cast<int>(blocks_.size()) - 1;
}

void Problem::add_const(int block, int a, int b, cplx v) {
  if (a > b) {
    std::swap(a, b);
    v = std::conj(v);
  }
  blocks_[block].constant.push_back({a, b, v});
}

void Problem::add_coeff(int block, int var, int a, int b, cplx v) {
  if (a > b) {
    std::swap(a, b);
    v = std::conj(v);
  }
  blocks_[block].coeffs.push_back({var, {a, b, v}});
}

void Problem::place_hermitian(int block, const HermitianVar& h, int off, double scale) {
  for (int i = 0; i < h.dim; ++i)
    add_coeff(block, var_diag(h, i), off + i, off + i, scale);
  for (int i = 0; i < h.dim; ++i)
    for (int j = i + 1; j < h.dim; ++j) {
      add_coeff(block, var_re(h, i, j), off + i, off + j, scale);
      if (!h.real_only)
        add_coeff(block, var_im(h, i, j), off + i, off + j, cplx(0.0, scale));
    }
}

void Problem::place_const(int block, const ComplexMatrix& m, int row_off, int col_off) {
  if (row_off == col_off) {
    for (int i = 0; i < m.rows(); ++i) {
      add_const(block, row_off + i, row_off + i, m(i, i).real());
      for (int j = i + 1; j < m.cols(); ++j)
        add_const(block, row_off + i, col_off + j, m(i, j));
    }
    return;
  }
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      add_const(block, row_off + i, col_off + j, m(i, j));
}

void Problem::add_equality(std::vector<std::pair<int, double>> terms, double rhs) {
  eqs_.emplace_back(std::move(terms), rhs);
}

void Problem::set_objective(int var, double coeff) { obj_[var] = coeff; }

ComplexMatrix Solution::hermitian_value(const HermitianVar& h) const {
  ComplexMatrix m(h.dim, h.dim);
  int idx = h.base;
  for (int i = 0; i < h.dim; ++i) m(i, i) = y[idx++];
  for (int i = 0; i < h.dim; ++i)
    for (int j = i + 1; j < h.dim; ++j) {
      double re = y[idx++];
      double im = h.real_only ? 0.0 : y[idx++];
      m(i, j) = cplx(re, im);
      m(j, i) = cplx(re, -im);
    }
  return m;
}

// ---------------------------------------------------------------------------
// Dense real symmetric kernels

namespace {

using Vec = std::vector<double>;

inline double* at(Vec& a, int n, int i) { return a.data() + static_cast<size_t>(i) * n; }
inline const double* at(const Vec& a, int n, int i) {
  return a.data() + static_cast<size_t>(i) * n;
}

void mat_mul(int n, const Vec& a, const Vec& b, Vec& c) {
  std::fill(c.begin(), c.end(), 0.0);
  for (int i = 0; i < n; ++i) {
    const double* ai = at(a, n, i);
    double* ci = at(c, n, i);
    for (int k = 0; k < n; ++k) {
      double aik = ai[k];
      if (aik == 0.0) continue;
      const double* bk = at(b, n, k);
      for (int j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
}

void mat_mul_tn(int n, const Vec& a, const Vec& b, Vec& c) {  // c = a^T b
  std::fill(c.begin(), c.end(), 0.0);
  for (int k = 0; k < n; ++k) {
    const double* ak = at(a, n, k);
    const double* bk = at(b, n, k);
    for (int i = 0; i < n; ++i) {
      double aki = ak[i];
      if (aki == 0.0) continue;
      double* ci = at(c, n, i);
      for (int j = 0; j < n; ++j) ci[j] += aki * bk[j];
    }
  }
}

void mat_mul_nt(int n, const Vec& a, const Vec& b, Vec& c) {  // c = a b^T
  for (int i = 0; i < n; ++i) {
    const double* ai = at(a, n, i);
    double* ci = at(c, n, i);
    for (int j = 0; j < n; ++j) {
      const double* bj = at(b, n, j);
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += ai[k] * bj[k];
      ci[j] = acc;
    }
  }
}

void symmetrize(int n, Vec& a) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double m = 0.5 * (a[static_cast<size_t>(i) * n + j] + a[static_cast<size_t>(j) * n + i]);
      a[static_cast<size_t>(i) * n + j] = m;
      a[static_cast<size_t>(j) * n + i] = m;
    }
}

// Unblocked Cholesky, lower factor in place. Returns false if not PD.
bool chol_small(int n, Vec& a) {
  for (int j = 0; j < n; ++j) {
    double* aj = at(a, n, j);
    double d = aj[j];
    for (int k = 0; k < j; ++k) d -= aj[k] * aj[k];
    if (d <= 0.0 || !std::isfinite(d)) return false;
    double ljj = std::sqrt(d);
    aj[j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double* ai = at(a, n, i);
      double s = ai[j];
      for (int k = 0; k < j; ++k) s -= ai[k] * aj[k];
      ai[j] = s / ljj;
    }
    for (int k = j + 1; k < n; ++k) aj[k] = 0.0;
  }
  return true;
}

// Blocked Cholesky for the Schur complement; same contract as chol_small.
// Right-looking with 4x4 register tiles in the trailing update; only the
// lower triangle is read, finished rows get their upper part cleared.
bool chol_blocked(int n, Vec& a) {
  const int nb = 128;
  if (n <= nb) return chol_small(n, a);
  for (int k = 0; k < n; k += nb) {
    int kb = std::min(nb, n - k);
    // diagonal block
    for (int j = k; j < k + kb; ++j) {
      double* aj = at(a, n, j);
      double d = aj[j];
      for (int t = k; t < j; ++t) d -= aj[t] * aj[t];
      if (d <= 0.0 || !std::isfinite(d)) return false;
      double ljj = std::sqrt(d);
      aj[j] = ljj;
      for (int i = j + 1; i < k + kb; ++i) {
        double* ai = at(a, n, i);
        double s = ai[j];
        for (int t = k; t < j; ++t) s -= ai[t] * aj[t];
        ai[j] = s / ljj;
      }
    }
    // panel below: solve rows against L11^T
    for (int i = k + kb; i < n; ++i) {
      double* ai = at(a, n, i);
      for (int j = k; j < k + kb; ++j) {
        const double* aj = at(a, n, j);
        double s = ai[j];
        for (int t = k; t < j; ++t) s -= ai[t] * aj[t];
        ai[j] = s / aj[j];
      }
    }
    // trailing update: A22 -= L21 L21^T (lower part)
    int tr0 = k + kb;
    for (int i0 = tr0; i0 < n; i0 += 4) {
      int ph = std::min(4, n - i0);
      const double* ar[4];
      for (int p = 0; p < ph; ++p) ar[p] = at(a, n, i0 + p) + k;
      for (int j0 = tr0; j0 <= i0; j0 += 4) {
        int qh = std::min(4, n - j0);
        double acc[4][4] = {{0}};
        if (ph == 4 && qh == 4) {
          const double* a0 = ar[0];
          const double* a1 = ar[1];
          const double* a2 = ar[2];
          const double* a3 = ar[3];
          const double* b0 = at(a, n, j0) + k;
          const double* b1 = at(a, n, j0 + 1) + k;
          const double* b2 = at(a, n, j0 + 2) + k;
          const double* b3 = at(a, n, j0 + 3) + k;
          for (int t = 0; t < kb; ++t) {
            double x0 = a0[t], x1 = a1[t], x2 = a2[t], x3 = a3[t];
            double y0 = b0[t], y1 = b1[t], y2 = b2[t], y3 = b3[t];
            acc[0][0] += x0 * y0; acc[0][1] += x0 * y1; acc[0][2] += x0 * y2; acc[0][3] += x0 * y3;
            acc[1][0] += x1 * y0; acc[1][1] += x1 * y1; acc[1][2] += x1 * y2; acc[1][3] += x1 * y3;
            acc[2][0] += x2 * y0; acc[2][1] += x2 * y1; acc[2][2] += x2 * y2; acc[2][3] += x2 * y3;
            acc[3][0] += x3 * y0; acc[3][1] += x3 * y1; acc[3][2] += x3 * y2; acc[3][3] += x3 * y3;
          }
        } else {
          for (int t = 0; t < kb; ++t)
            for (int p = 0; p < ph; ++p)
              for (int q = 0; q < qh; ++q)
                acc[p][q] += ar[p][t] * (at(a, n, j0 + q) + k)[t];
        }
        for (int p = 0; p < ph; ++p) {
          double* row = at(a, n, i0 + p);
          for (int q = 0; q < qh && j0 + q <= i0 + p; ++q) row[j0 + q] -= acc[p][q];
        }
      }
    }
  }
  // clear remaining upper triangle
  for (int i = 0; i < n; ++i) {
    double* ai = at(a, n, i);
    for (int j = i + 1; j < n; ++j) ai[j] = 0.0;
  }
  return true;
}

void chol_solve(int n, const Vec& l, Vec& x) {  // solves (L L^T) x = b in place
  for (int i = 0; i < n; ++i) {
    const double* li = at(l, n, i);
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= li[k] * x[k];
    x[i] = s / li[i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n; ++k) s -= l[static_cast<size_t>(k) * n + i] * x[k];
    x[i] = s / l[static_cast<size_t>(i) * n + i];
  }
}

// out = L^{-1} M L^{-T} for lower-triangular L and symmetric M.
void congruence_inv_lower(int n, const Vec& l, const Vec& m, Vec& out, Vec& tmp) {
  // tmp = L^{-1} M  (forward solve applied to each column of M)
  tmp = m;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double* li = at(l, n, i);
      double s = tmp[static_cast<size_t>(i) * n + j];
      for (int k = 0; k < i; ++k) s -= li[k] * tmp[static_cast<size_t>(k) * n + j];
      tmp[static_cast<size_t>(i) * n + j] = s / li[i];
    }
  }
  // out = tmp L^{-T}: out^T = L^{-1} tmp^T, i.e. forward solve on rows of tmp
  out = tmp;
  for (int i = 0; i < n; ++i) {
    double* oi = at(out, n, i);
    for (int j = 0; j < n; ++j) {
      const double* lj = at(l, n, j);
      double s = oi[j];
      for (int k = 0; k < j; ++k) s -= lj[k] * oi[k];
      oi[j] = s / lj[j];
    }
  }
}

// Cyclic Jacobi, eigenvalues ascending, eigenvectors in columns of v.
void sym_eig(int n, const Vec& a0, Vec& w, Vec& v) {
  Vec a = a0;
  v.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;
  double scale = 0.0;
  for (double x : a) scale += x * x;
  scale = std::sqrt(scale);
  double stop = 1e-14 * (1.0 + scale);
  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[static_cast<size_t>(p) * n + q] * a[static_cast<size_t>(p) * n + q];
    if (std::sqrt(2.0 * off) <= stop) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = a[static_cast<size_t>(p) * n + q];
        if (std::abs(apq) <= stop / (4.0 * n)) continue;
        double app = a[static_cast<size_t>(p) * n + p];
        double aqq = a[static_cast<size_t>(q) * n + q];
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        for (int i = 0; i < n; ++i) {
          double aip = a[static_cast<size_t>(i) * n + p];
          double aiq = a[static_cast<size_t>(i) * n + q];
          a[static_cast<size_t>(i) * n + p] = c * aip - s * aiq;
          a[static_cast<size_t>(i) * n + q] = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          double apj = a[static_cast<size_t>(p) * n + j];
          double aqj = a[static_cast<size_t>(q) * n + j];
          a[static_cast<size_t>(p) * n + j] = c * apj - s * aqj;
          a[static_cast<size_t>(q) * n + j] = s * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          double vip = v[static_cast<size_t>(i) * n + p];
          double viq = v[static_cast<size_t>(i) * n + q];
          v[static_cast<size_t>(i) * n + p] = c * vip - s * viq;
          v[static_cast<size_t>(i) * n + q] = s * vip + c * viq;
        }
      }
  }
  w.resize(n);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
    return a[static_cast<size_t>(x) * n + x] < a[static_cast<size_t>(y) * n + y];
  });
  Vec vs(v.size());
  for (int kcol = 0; kcol < n; ++kcol) {
    w[kcol] = a[static_cast<size_t>(idx[kcol]) * n + idx[kcol]];
    for (int i = 0; i < n; ++i)
      vs[static_cast<size_t>(i) * n + kcol] = v[static_cast<size_t>(i) * n + idx[kcol]];
  }
  v.swap(vs);
}

// Largest alpha in (0, 1] keeping x + alpha d PSD, by bisection on Cholesky.
double max_step(int n, const Vec& x, const Vec& d, Vec& work) {
  auto pd_at = [&](double alpha) {
    work = x;
    for (size_t i = 0; i < work.size(); ++i) work[i] += alpha * d[i];
    return chol_small(n, work);
  };
  if (pd_at(1.0)) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 30; ++it) {
    double mid = 0.5 * (lo + hi);
    if (pd_at(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

struct REntry {
  int a, b;
  double v;
};

struct RBlock {
  int d = 0;
  Vec f0;
  std::vector<int> var_ids;
  std::vector<int> start;  // size var_ids.size() + 1
  std::vector<REntry> entries;
};

double tr_sparse(const RBlock& blk, int local_var, const Vec& m) {
  double acc = 0.0;
  int n = blk.d;
  for (int e = blk.start[local_var]; e < blk.start[local_var + 1]; ++e) {
    const REntry& en = blk.entries[e];
    if (en.a == en.b)
      acc += en.v * m[static_cast<size_t>(en.a) * n + en.a];
    else
      acc += 2.0 * en.v * m[static_cast<size_t>(en.a) * n + en.b];
  }
  return acc;
}

void add_sparse(RBlock& blk, int local_var, double scale, Vec& m) {
  int n = blk.d;
  for (int e = blk.start[local_var]; e < blk.start[local_var + 1]; ++e) {
    const REntry& en = blk.entries[e];
    m[static_cast<size_t>(en.a) * n + en.b] += scale * en.v;
    if (en.a != en.b) m[static_cast<size_t>(en.b) * n + en.a] += scale * en.v;
  }
}

// g = W F_v W for sparse F_v, via outer products of columns of W.
void scaled_coeff(const RBlock& blk, int local_var, const Vec& w, Vec& g) {
  int n = blk.d;
  std::fill(g.begin(), g.end(), 0.0);
  for (int e = blk.start[local_var]; e < blk.start[local_var + 1]; ++e) {
    const REntry& en = blk.entries[e];
    const double* wa = at(w, n, en.a);  // row a == column a, W symmetric
    const double* wb = at(w, n, en.b);
    if (en.a == en.b) {
      for (int i = 0; i < n; ++i) {
        double wav = en.v * wa[i];
        if (wav == 0.0) continue;
        double* gi = at(g, n, i);
        for (int j = 0; j < n; ++j) gi[j] += wav * wb[j];
      }
    } else {
      for (int i = 0; i < n; ++i) {
        double c1 = en.v * wa[i], c2 = en.v * wb[i];
        double* gi = at(g, n, i);
        if (c1 != 0.0 || c2 != 0.0)
          for (int j = 0; j < n; ++j) gi[j] += c1 * wb[j] + c2 * wa[j];
      }
    }
  }
}

struct Lowered {
  int m = 0;                 // variables after elimination
  std::vector<double> c;     // objective
  double obj_offset = 0.0;
  std::vector<RBlock> blocks;
  // mapping back: y_orig = y0 + N z
  std::vector<double> y0;
  std::vector<std::vector<std::pair<int, double>>> n_rows;  // per orig var
  bool eliminated = false;
};

void lower_entry(bool complex_block, int d, int a, int b, cplx v,
                 std::map<std::pair<int, int>, double>& dst) {
  if (!complex_block) {
    if (std::abs(v.imag()) > 0.0)
      fail(ErrorCode::InvalidArgument, "imaginary entry in real block");
    if (a == b)
      dst[{a, a}] += v.real();
    else
      dst[{a, b}] += v.real();
    return;
  }
  double re = v.real(), im = v.imag();
  if (a == b) {
    if (std::abs(im) > 1e-14 * (1.0 + std::abs(re)))
      fail(ErrorCode::InvalidArgument, "diagonal entry of Hermitian block must be real");
    dst[{a, a}] += re;
    dst[{d + a, d + a}] += re;
    return;
  }
  if (re != 0.0) {
    dst[{a, b}] += re;
    dst[{d + a, d + b}] += re;
  }
  if (im != 0.0) {
    dst[{a, d + b}] += -im;
    dst[{b, d + a}] += im;
  }
}

Lowered lower(const Problem& p) {
  int m0 = p.num_vars();
  Lowered low;

  // Equality elimination: y = y0 + N z.
  std::vector<double> y0(m0, 0.0);
  std::vector<std::vector<std::pair<int, double>>> nrows(m0);
  int mz = m0;
  if (!p.equalities().empty()) {
    int k = static_cast<int>(p.equalities().size());
    std::vector<Vec> e(k, Vec(m0 + 1, 0.0));
    for (int r = 0; r < k; ++r) {
      for (auto [var, coef] : p.equalities()[r].first) e[r][var] += coef;
      e[r][m0] = p.equalities()[r].second;
    }
    // Gauss with partial pivoting
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < m0 && row < k; ++col) {
      int best = -1;
      double bestabs = 1e-12;
      for (int r = row; r < k; ++r)
        if (std::abs(e[r][col]) > bestabs) {
          bestabs = std::abs(e[r][col]);
          best = r;
        }
      if (best < 0) continue;
      std::swap(e[row], e[best]);
      double piv = e[row][col];
      for (int j = col; j <= m0; ++j) e[row][j] /= piv;
      for (int r = 0; r < k; ++r) {
        if (r == row) continue;
        double f = e[r][col];
        if (f == 0.0) continue;
        for (int j = col; j <= m0; ++j) e[r][j] -= f * e[row][j];
      }
      pivot_col.push_back(col);
      ++row;
    }
    for (int r = row; r < k; ++r)
      if (std::abs(e[r][m0]) > 1e-9)
        fail(ErrorCode::SolverFailure, "inconsistent equality constraints");
    std::vector<bool> is_pivot(m0, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<int> free_vars;
    for (int v = 0; v < m0; ++v)
      if (!is_pivot[v]) free_vars.push_back(v);
    mz = static_cast<int>(free_vars.size());
    for (int zi = 0; zi < mz; ++zi) nrows[free_vars[zi]].push_back({zi, 1.0});
    for (int r = 0; r < row; ++r) {
      int pc = pivot_col[r];
      y0[pc] = e[r][m0];
      for (int zi = 0; zi < mz; ++zi) {
        double coef = -e[r][free_vars[zi]];
        if (coef != 0.0) nrows[pc].push_back({zi, coef});
      }
    }
    low.eliminated = true;
  } else {
    for (int v = 0; v < m0; ++v) nrows[v].push_back({v, 1.0});
  }
  low.m = mz;
  low.y0 = y0;
  low.n_rows = nrows;

  low.c.assign(mz, 0.0);
  low.obj_offset = 0.0;
  for (int v = 0; v < m0; ++v) {
    double cv = p.objective()[v];
    if (cv == 0.0) continue;
    low.obj_offset += cv * y0[v];
    for (auto [zi, coef] : nrows[v]) low.c[zi] += cv * coef;
  }

  for (const auto& blk : p.blocks()) {
    RBlock rb;
    rb.d = blk.complex_block ? 2 * blk.dim : blk.dim;
    std::map<std::pair<int, int>, double> cst;
    for (const auto& en : blk.constant)
      lower_entry(blk.complex_block, blk.dim, en.a, en.b, en.v, cst);
    std::map<int, std::map<std::pair<int, int>, double>> per_z;
    for (const auto& [var, en] : blk.coeffs) {
      std::map<std::pair<int, int>, double> tmp;
      lower_entry(blk.complex_block, blk.dim, en.a, en.b, en.v, tmp);
      // distribute through y = y0 + N z
      if (y0[var] != 0.0)
        for (auto& [key, val] : tmp) cst[key] += y0[var] * val;
      for (auto [zi, coef] : nrows[var])
        for (auto& [key, val] : tmp) per_z[zi][key] += coef * val;
    }
    rb.f0.assign(static_cast<size_t>(rb.d) * rb.d, 0.0);
    for (auto& [key, val] : cst) {
      rb.f0[static_cast<size_t>(key.first) * rb.d + key.second] = val;
      rb.f0[static_cast<size_t>(key.second) * rb.d + key.first] = val;
    }
    rb.start.push_back(0);
    for (auto& [zi, entries] : per_z) {
      bool any = false;
      for (auto& [key, val] : entries) {
        if (val == 0.0) continue;
        rb.entries.push_back({key.first, key.second, val});
        any = true;
      }
      if (any) {
        rb.var_ids.push_back(zi);
        rb.start.push_back(static_cast<int>(rb.entries.size()));
      }
    }
    low.blocks.push_back(std::move(rb));
  }
  return low;
}

}  // namespace

// ---------------------------------------------------------------------------
// Interior point loop

Solution solve(const Problem& p, const SolverOptions& opts) {
  Lowered low = lower(p);
  int m = low.m;
  int nb = static_cast<int>(low.blocks.size());

  Solution out;
  out.status = SolveStatus::MaxIter;

  if (m == 0) {
    // No free variables: feasibility of F0 is all there is.
    out.y.assign(p.num_vars(), 0.0);
    for (int v = 0; v < p.num_vars(); ++v) out.y[v] = low.y0[v];
    out.primal_obj = out.dual_obj = low.obj_offset;
    out.gap = 0.0;
    double viol = 0.0;
    for (auto& blk : low.blocks) {
      Vec w, vv;
      sym_eig(blk.d, blk.f0, w, vv);
      viol = std::max(viol, std::max(0.0, -w[0]));
    }
    out.max_violation = viol;
    out.status = SolveStatus::Optimal;
    return out;
  }

  // scale estimate for the initial point
  double data_scale = 1.0;
  for (const auto& blk : low.blocks) {
    double f = 0.0;
    for (double x : blk.f0) f += x * x;
    data_scale = std::max(data_scale, std::sqrt(f));
    for (const auto& en : blk.entries) data_scale = std::max(data_scale, std::abs(en.v));
  }
  double cmax = 1.0;
  for (double x : low.c) cmax = std::max(cmax, std::abs(x));

  std::vector<Vec> X(nb), S(nb), Rd(nb), W(nb), G(nb), Lx(nb), Q(nb);
  std::vector<Vec> vdiag(nb), dquart(nb);
  std::vector<Vec> dXa(nb), dSa(nb), dX(nb), dS(nb), Rc(nb), T1(nb);
  std::vector<Vec> tmp1(nb), tmp2(nb), tmp3(nb);
  int total_dim = 0;
  for (int b = 0; b < nb; ++b) {
    int d = low.blocks[b].d;
    total_dim += d;
    size_t sz = static_cast<size_t>(d) * d;
    X[b].assign(sz, 0.0);
    S[b].assign(sz, 0.0);
    double init = 10.0 * std::max(1.0, std::max(data_scale, cmax));
    for (int i = 0; i < d; ++i) {
      X[b][static_cast<size_t>(i) * d + i] = init;
      S[b][static_cast<size_t>(i) * d + i] = init;
    }
    Rd[b].assign(sz, 0.0);
    W[b].assign(sz, 0.0);
    G[b].assign(sz, 0.0);
    Lx[b].assign(sz, 0.0);
    Q[b].assign(sz, 0.0);
    dXa[b].assign(sz, 0.0);
    dSa[b].assign(sz, 0.0);
    dX[b].assign(sz, 0.0);
    dS[b].assign(sz, 0.0);
    Rc[b].assign(sz, 0.0);
    T1[b].assign(sz, 0.0);
    tmp1[b].assign(sz, 0.0);
    tmp2[b].assign(sz, 0.0);
    tmp3[b].assign(sz, 0.0);
  }

  std::vector<double> y(m, 0.0), rp(m, 0.0), rhs(m, 0.0), dy(m, 0.0), dya(m, 0.0);
  Vec h(static_cast<size_t>(m) * m, 0.0);
  Vec hfac;
  Vec gwork;

  double pobj = 0.0, dobj = 0.0;
  int iter = 0;
  bool converged = false;

  for (iter = 0; iter < opts.max_iter; ++iter) {
    // residuals
    double feas_p = 0.0;
    for (int b = 0; b < nb; ++b) {
      RBlock& blk = low.blocks[b];
      Rd[b] = blk.f0;
      for (size_t lv = 0; lv < blk.var_ids.size(); ++lv)
        add_sparse(blk, static_cast<int>(lv), y[blk.var_ids[lv]], Rd[b]);
      for (size_t i = 0; i < Rd[b].size(); ++i) Rd[b][i] -= S[b][i];
      double f = 0.0;
      for (double x : Rd[b]) f += x * x;
      feas_p = std::max(feas_p, std::sqrt(f) / (1.0 + data_scale));
    }
    double feas_d = 0.0;
    for (int j = 0; j < m; ++j) rp[j] = low.c[j];
    for (int b = 0; b < nb; ++b) {
      RBlock& blk = low.blocks[b];
      for (size_t lv = 0; lv < blk.var_ids.size(); ++lv)
        rp[blk.var_ids[lv]] -= tr_sparse(blk, static_cast<int>(lv), X[b]);
    }
    for (int j = 0; j < m; ++j) feas_d = std::max(feas_d, std::abs(rp[j]) / (1.0 + cmax));

    double mu = 0.0;
    for (int b = 0; b < nb; ++b) {
      int d = low.blocks[b].d;
      for (int i = 0; i < d; ++i) {
        const double* xi = at(X[b], d, i);
        const double* si = at(S[b], d, i);
        for (int j = 0; j < d; ++j) mu += xi[j] * si[j];
      }
    }
    mu /= total_dim;

    pobj = low.obj_offset;
    for (int j = 0; j < m; ++j) pobj += low.c[j] * y[j];
    dobj = low.obj_offset;
    for (int b = 0; b < nb; ++b) {
      int d = low.blocks[b].d;
      for (int i = 0; i < d; ++i) {
        const double* fi = at(low.blocks[b].f0, d, i);
        const double* xi = at(X[b], d, i);
        for (int j = 0; j < d; ++j) dobj -= fi[j] * xi[j];
      }
    }
    double gap = pobj - dobj;
    double relgap = std::abs(gap) / (1.0 + std::abs(pobj));
    if ((std::abs(gap) <= opts.tol_gap_abs || relgap <= opts.tol_gap_rel) &&
        feas_p <= opts.tol_feas * 100.0 && feas_d <= opts.tol_feas * 100.0) {
      converged = true;
      break;
    }

    // NT scaling per block
    bool scaling_ok = true;
    for (int b = 0; b < nb; ++b) {
      int d = low.blocks[b].d;
      Lx[b] = X[b];
      if (!chol_small(d, Lx[b])) {
        scaling_ok = false;
        break;
      }
      // K = Lx^T S Lx
      mat_mul(d, S[b], Lx[b], tmp1[b]);
      mat_mul_tn(d, Lx[b], tmp1[b], tmp2[b]);
      symmetrize(d, tmp2[b]);
      Vec evals;
      sym_eig(d, tmp2[b], evals, Q[b]);
      dquart[b].resize(d);
      vdiag[b].resize(d);
      for (int i = 0; i < d; ++i) {
        double lam = std::max(evals[i], 1e-300);
        dquart[b][i] = std::pow(lam, 0.25);
        vdiag[b][i] = std::sqrt(lam);
      }
      // G = Lx Q D^{-1/4}
      mat_mul(d, Lx[b], Q[b], tmp1[b]);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          G[b][static_cast<size_t>(i) * d + j] = tmp1[b][static_cast<size_t>(i) * d + j] / dquart[b][j];
      mat_mul_nt(d, G[b], G[b], W[b]);
      symmetrize(d, W[b]);
    }
    if (!scaling_ok) break;

    // Schur complement H (lower half, then mirrored)
    std::fill(h.begin(), h.end(), 0.0);
    for (int b = 0; b < nb; ++b) {
      RBlock& blk = low.blocks[b];
      int d = blk.d;
      gwork.assign(static_cast<size_t>(d) * d, 0.0);
      for (size_t lv = 0; lv < blk.var_ids.size(); ++lv) {
        scaled_coeff(blk, static_cast<int>(lv), W[b], gwork);
        int gv = blk.var_ids[lv];
        for (size_t lw = lv; lw < blk.var_ids.size(); ++lw) {
          int gw = blk.var_ids[lw];
          double val = tr_sparse(blk, static_cast<int>(lw), gwork);
          if (gw >= gv)
            h[static_cast<size_t>(gw) * m + gv] += val;
          else
            h[static_cast<size_t>(gv) * m + gw] += val;
        }
      }
    }
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        h[static_cast<size_t>(i) * m + j] = h[static_cast<size_t>(j) * m + i];

    hfac = h;
    {
      bool ok = chol_blocked(m, hfac);
      if (!ok) {
        // tiny diagonal regularization, escalating
        double jitter = 1e-13;
        double diag_scale = 0.0;
        for (int i = 0; i < m; ++i)
          diag_scale = std::max(diag_scale, h[static_cast<size_t>(i) * m + i]);
        for (int tries = 0; tries < 8 && !ok; ++tries) {
          hfac = h;
          for (int i = 0; i < m; ++i)
            hfac[static_cast<size_t>(i) * m + i] += jitter * (1.0 + diag_scale);
          ok = chol_blocked(m, hfac);
          jitter *= 100.0;
        }
        if (!ok) break;
      }
    }

    // predictor: Rc = -X
    for (int b = 0; b < nb; ++b) {
      int d = low.blocks[b].d;
      // T1 = Rc - W Rd W
      mat_mul(d, Rd[b], W[b], tmp1[b]);
      mat_mul(d, W[b], tmp1[b], T1[b]);
      for (size_t i = 0; i < T1[b].size(); ++i) T1[b][i] = -X[b][i] - T1[b][i];
      symmetrize(d, T1[b]);
    }
    for (int j = 0; j < m; ++j) rhs[j] = -rp[j];
    for (int b = 0; b < nb; ++b) {
      RBlock& blk = low.blocks[b];
      for (size_t lv = 0; lv < blk.var_ids.size(); ++lv)
        rhs[blk.var_ids[lv]] += tr_sparse(blk, static_cast<int>(lv), T1[b]);
    }
    dya = rhs;
    chol_solve(m, hfac, dya);
    for (int b = 0; b < nb; ++b) {
      RBlock& blk = low.blocks[b];
      int d = blk.d;
      dSa[b] = Rd[b];
      for (size_t lv = 0; lv < blk.var_ids.size(); ++lv)
        add_sparse(blk, static_cast<int>(lv), dya[blk.var_ids[lv]], dSa[b]);
      mat_mul(d, dSa[b], W[b], tmp1[b]);
      mat_mul(d, W[b], tmp1[b], tmp2[b]);
      for (size_t i = 0; i < dXa[b].size(); ++i) dXa[b][i] = -X[b][i] - tmp2[b][i];
      symmetrize(d, dXa[b]);
    }
    double ap_aff = 1.0, ad_aff = 1.0;
    for (int b = 0; b < nb; ++b) {
      int d = low.blocks[b].d;
      ap_aff = std::min(ap_aff, max_step(d, X[b], dXa[b], tmp1[b]));
      ad_aff = std::min(ad_aff, max_step(d, S[b], dSa[b], tmp1[b]));
    }
    double mu_aff = 0.0;
    for (int b = 0; b < nb; ++b) {
      int d = low.blocks[b].d;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double xv = X[b][static_cast<size_t>(i) * d + j] + ap_aff * dXa[b][static_cast<size_t>(i) * d + j];
          double sv = S[b][static_cast<size_t>(i) * d + j] + ad_aff * dSa[b][static_cast<size_t>(i) * d + j];
          mu_aff += xv * sv;
        }
    }
    mu_aff /= total_dim;
    double sigma = std::pow(std::max(0.0, std::min(1.0, mu_aff / mu)), 3.0);
    sigma = std::min(0.99, std::max(1e-8, sigma));

    // corrector
    for (int b = 0; b < nb; ++b) {
      int d = low.blocks[b].d;
      // scaled affine directions
      congruence_inv_lower(d, Lx[b], dXa[b], tmp1[b], tmp2[b]);
      // dXhat = D^{1/4} Q^T tmp1 Q D^{1/4}
      mat_mul(d, tmp1[b], Q[b], tmp2[b]);
      mat_mul_tn(d, Q[b], tmp2[b], tmp1[b]);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          tmp1[b][static_cast<size_t>(i) * d + j] *= dquart[b][i] * dquart[b][j];
      // dShat = G^T dSa G
      mat_mul(d, dSa[b], G[b], tmp2[b]);
      mat_mul_tn(d, G[b], tmp2[b], tmp3[b]);
      // Msym = 0.5 (dXhat dShat + dShat dXhat); then Lyapunov solve at V
      mat_mul(d, tmp1[b], tmp3[b], tmp2[b]);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double msym = 0.5 * (tmp2[b][static_cast<size_t>(i) * d + j] + tmp2[b][static_cast<size_t>(j) * d + i]);
          double diag = (i == j) ? sigma * mu - vdiag[b][i] * vdiag[b][i] : 0.0;
          tmp3[b][static_cast<size_t>(i) * d + j] =
              2.0 * (diag - msym) / (vdiag[b][i] + vdiag[b][j]);
        }
      // Rc = G tmp3 G^T
      mat_mul_nt(d, tmp3[b], G[b], tmp1[b]);
      mat_mul(d, G[b], tmp1[b], Rc[b]);
      symmetrize(d, Rc[b]);
      // T1 = Rc - W Rd W
      mat_mul(d, Rd[b], W[b], tmp1[b]);
      mat_mul(d, W[b], tmp1[b], T1[b]);
      for (size_t i = 0; i < T1[b].size(); ++i) T1[b][i] = Rc[b][i] - T1[b][i];
      symmetrize(d, T1[b]);
    }
    for (int j = 0; j < m; ++j) rhs[j] = -rp[j];
    for (int b = 0; b < nb; ++b) {
      RBlock& blk = low.blocks[b];
      for (size_t lv = 0; lv < blk.var_ids.size(); ++lv)
        rhs[blk.var_ids[lv]] += tr_sparse(blk, static_cast<int>(lv), T1[b]);
    }
    dy = rhs;
    chol_solve(m, hfac, dy);
    for (int b = 0; b < nb; ++b) {
      RBlock& blk = low.blocks[b];
      int d = blk.d;
      dS[b] = Rd[b];
      for (size_t lv = 0; lv < blk.var_ids.size(); ++lv)
        add_sparse(blk, static_cast<int>(lv), dy[blk.var_ids[lv]], dS[b]);
      mat_mul(d, dS[b], W[b], tmp1[b]);
      mat_mul(d, W[b], tmp1[b], tmp2[b]);
      for (size_t i = 0; i < dX[b].size(); ++i) dX[b][i] = Rc[b][i] - tmp2[b][i];
      symmetrize(d, dX[b]);
    }
    const double tau = 0.98;
    double ap = 1.0, ad = 1.0;
    for (int b = 0; b < nb; ++b) {
      int d = low.blocks[b].d;
      ap = std::min(ap, tau * max_step(d, X[b], dX[b], tmp1[b]));
      ad = std::min(ad, tau * max_step(d, S[b], dS[b], tmp1[b]));
    }
    ap = std::min(ap, 1.0);
    ad = std::min(ad, 1.0);
    if (ap < 1e-10 && ad < 1e-10) break;  // stalled

    for (int b = 0; b < nb; ++b) {
      for (size_t i = 0; i < X[b].size(); ++i) X[b][i] += ap * dX[b][i];
      for (size_t i = 0; i < S[b].size(); ++i) S[b][i] += ad * dS[b][i];
    }
    for (int j = 0; j < m; ++j) y[j] += ad * dy[j];
  }

  // map back to the original variables
  out.y.assign(p.num_vars(), 0.0);
  for (int v = 0; v < p.num_vars(); ++v) {
    double val = low.y0[v];
    for (auto [zi, coef] : low.n_rows[v]) val += coef * y[zi];
    out.y[v] = val;
  }
  out.primal_obj = pobj;
  out.dual_obj = dobj;
  out.gap = pobj - dobj;
  out.iterations = iter;
  out.status = converged ? SolveStatus::Optimal : SolveStatus::MaxIter;

  // honest violation: smallest eigenvalue of each F_b(y), equality residuals
  double viol = 0.0;
  for (int b = 0; b < nb; ++b) {
    RBlock& blk = low.blocks[b];
    Vec f = blk.f0;
    for (size_t lv = 0; lv < blk.var_ids.size(); ++lv)
      add_sparse(blk, static_cast<int>(lv), y[blk.var_ids[lv]], f);
    Vec w, vv;
    sym_eig(blk.d, f, w, vv);
    viol = std::max(viol, std::max(0.0, -w[0]));
  }
  for (const auto& [terms, rhs_val] : p.equalities()) {
    double acc = -rhs_val;
    for (auto [var, coef] : terms) acc += coef * out.y[var];
    viol = std::max(viol, std::abs(acc));
  }
  out.max_violation = viol;
  return out;
}

}  // namespace declab::sdp
