#include "declab/pnorm.hpp"

#include <algorithm>
#include <cmath>

#include "declab/rng.hpp"

namespace declab {

// D = (smax/||y||_p)^{p-1} * sum_i (s_i/smax)^{p-1} u_i v_i^*; stable for
// large p through the ratio powers.
ComplexMatrix schatten_duality_matrix(const ComplexMatrix& y, double p) {
  Svd s = svd(y);
  int k = static_cast<int>(s.s.size());
  double smax = (k > 0) ? s.s[0] : 0.0;
  ComplexMatrix d(y.rows(), y.cols());
  if (smax <= 0.0) return d;
  double acc = 0.0;
  for (double sv : s.s) acc += std::pow(sv / smax, p);
  double knorm = std::pow(acc, 1.0 / p);  // ||y||_p / smax
  for (int i = 0; i < k; ++i) {
    double w = std::pow(s.s[i] / smax, p - 1.0) * std::pow(1.0 / knorm, p - 1.0);
    if (w == 0.0) continue;
    for (int r = 0; r < y.rows(); ++r)
      for (int c = 0; c < y.cols(); ++c)
        d(r, c) += w * s.u(r, i) * std::conj(s.v(c, i));
  }
  return d;
}

namespace {

ComplexMatrix unvec(const std::vector<cplx>& v, int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[static_cast<size_t>(i) * n + j];
  return m;
}

std::vector<cplx> vec(const ComplexMatrix& m) { return m.data(); }

std::vector<cplx> matvec(const ComplexMatrix& l, const std::vector<cplx>& x) {
  std::vector<cplx> y(l.rows(), 0.0);
  for (int i = 0; i < l.rows(); ++i) {
    cplx acc = 0.0;
    for (int j = 0; j < l.cols(); ++j) acc += l(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<cplx> matvec_adj(const ComplexMatrix& l, const std::vector<cplx>& x) {
  std::vector<cplx> y(l.cols(), 0.0);
  for (int i = 0; i < l.rows(); ++i) {
    cplx xi = x[i];
    if (xi == cplx(0.0)) continue;
    for (int j = 0; j < l.cols(); ++j) y[j] += std::conj(l(i, j)) * xi;
  }
  return y;
}


struct AscentProblem {
  const ComplexMatrix* liouville;
  int dim;       // matrices are dim x dim
  double p_eff;  // smoothed exponent used for gradients
  PExp p_true;
};

double eval_ratio(const AscentProblem& ap, const ComplexMatrix& w, PExp p) {
  double den = schatten_norm(w, p);
  if (den == 0.0) return 0.0;
  ComplexMatrix img = unvec(matvec(*ap.liouville, vec(w)), ap.dim);
  return schatten_norm(img, p) / den;
}

// One ascent run from w0. The ascent climbs the smoothed norm; the returned
// value is the exact ratio of the better of {start, final iterate}, so a
// structured start can never be lost to the smoothing.
std::pair<double, ComplexMatrix> ascend(const AscentProblem& ap, ComplexMatrix w) {
  PExp p_s = PExp::finite(ap.p_eff);
  double nw = schatten_norm(w, p_s);
  if (nw == 0.0) return {0.0, w};
  w *= cplx(1.0 / nw);
  ComplexMatrix start = w;
  double exact_start = eval_ratio(ap, start, ap.p_true);

  auto smooth_val = [&](const ComplexMatrix& x) {
    ComplexMatrix img = unvec(matvec(*ap.liouville, vec(x)), ap.dim);
    return schatten_norm(img, p_s);
  };

  double f = smooth_val(w);
  int stall = 0;
  for (int it = 0; it < 160 && stall < 3; ++it) {
    ComplexMatrix img = unvec(matvec(*ap.liouville, vec(w)), ap.dim);
    ComplexMatrix d = schatten_duality_matrix(img, ap.p_eff);
    ComplexMatrix g = unvec(matvec_adj(*ap.liouville, vec(d)), ap.dim);
    double gn = g.frobenius();
    if (gn <= 1e-15 * (1.0 + f)) break;
    double eta = 0.8 / gn;
    bool improved = false;
    for (int bt = 0; bt < 25; ++bt) {
      ComplexMatrix cand = w + g * cplx(eta);
      double cn = schatten_norm(cand, p_s);
      if (cn > 0.0) {
        cand *= cplx(1.0 / cn);
        double fc = smooth_val(cand);
        if (fc > f * (1.0 + 1e-13)) {
          w = cand;
          f = fc;
          improved = true;
          break;
        }
      }
      eta *= 0.4;
    }
    stall = improved ? 0 : stall + 1;
  }
  double exact = eval_ratio(ap, w, ap.p_true);
  if (exact_start > exact) return {exact_start, start};
  return {exact, w};
}

ComplexMatrix pad_witness(const ComplexMatrix& w, int big) {
  ComplexMatrix out(big, big);
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j) out(i, j) = w(i, j);
  return out;
}

ComplexMatrix random_ginibre(Rng& rng, int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.next_complex_gaussian();
  return m;
}

ComplexMatrix random_rank_one(Rng& rng, int n) {
  std::vector<cplx> u(n), v(n);
  for (int i = 0; i < n; ++i) u[i] = rng.next_complex_gaussian();
  for (int i = 0; i < n; ++i) v[i] = rng.next_complex_gaussian();
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

}  // namespace

NormEstimate pq_norm_lower(const SuperOperator& t, PExp p, int d, int restarts,
                           std::uint64_t seed,
                           const std::vector<ComplexMatrix>* extra_starts) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "pq_norm_lower: d must be >= 1");
  if (restarts < 1) restarts = 1;
  NormEstimate est;
  est.p = p;
  est.d = d;
  est.seed = seed;

  if (!p.is_inf() && p.value() == 2.0 && d == 1) {
    ComplexMatrix l = t.liouville();
    Svd s = svd(l);
    est.value = s.s.empty() ? 0.0 : s.s[0];
    std::vector<cplx> w(l.cols());
    for (int i = 0; i < l.cols(); ++i) w[i] = s.v(i, 0);
    est.witness = unvec(w, t.in_dim());
    est.restarts = 0;
    est.converged_restarts = 0;
    return est;
  }

  double p_eff = p.is_inf() ? 1001.0 : std::max(p.value(), 1.001);

  double best = 0.0;
  ComplexMatrix best_w;
  ComplexMatrix carry;  // best witness of the previous amplification level
  Rng root(seed, 0xd1ce5bb1);

  for (int level = 1; level <= d; ++level) {
    SuperOperator amp = t.amplify(level);
    ComplexMatrix l = amp.liouville();
    AscentProblem ap{&l, amp.in_dim(), p_eff, p};

    std::vector<ComplexMatrix> pool;
    int n = amp.in_dim();
    pool.push_back(ComplexMatrix::identity(n));
    if (carry.rows() > 0) pool.push_back(pad_witness(carry, n));
    if (extra_starts)
      for (const auto& x : *extra_starts)
        if (x.rows() == t.in_dim())
          pool.push_back(level == 1 ? x : pad_witness(x, n));
    // matrix units, diagonal ones first (structured extremizers), then
    // random fill
    for (int k = 0; k < n && static_cast<int>(pool.size()) < restarts; ++k)
      pool.push_back(ComplexMatrix::unit(n, n, k, k));
    for (int i = 0; i < n && static_cast<int>(pool.size()) < restarts; ++i)
      for (int j = 0; j < n && static_cast<int>(pool.size()) < restarts; ++j)
        if (i != j) pool.push_back(ComplexMatrix::unit(n, n, i, j));
    Rng lrng = root.fork(level);
    while (static_cast<int>(pool.size()) < restarts) {
      Rng r = lrng.fork(pool.size());
      if (pool.size() % 2 == 0)
        pool.push_back(random_ginibre(r, n));
      else
        pool.push_back(random_rank_one(r, n));
    }

    double level_best = 0.0;
    ComplexMatrix level_w;
    std::vector<double> finals;
    for (const auto& start : pool) {
      auto [val, w] = ascend(ap, start);
      finals.push_back(val);
      if (val > level_best) {
        level_best = val;
        level_w = w;
      }
    }
    if (level == d) {
      est.restarts = static_cast<int>(pool.size());
      est.converged_restarts = 0;
      for (double v : finals)
        if (v >= level_best - 1e-6 * (1.0 + level_best)) ++est.converged_restarts;
    }
    carry = level_w;
    if (level_best > best) {
      best = level_best;
      best_w = level_w;
    }
  }

  est.value = best;
  // the witness is reported at amplification level d (zero padding keeps the
  // ratio when the best run happened at a lower level)
  est.witness = (best_w.rows() == d * t.in_dim()) ? best_w
                                                  : pad_witness(best_w, d * t.in_dim());
  return est;
}

MatsaevReport matsaev_check(const GroupAlgebra& alg, const std::vector<double>& phi,
                            const Polynomial& poly, PExp p, int shift_trunc,
                            int restarts, std::uint64_t seed, const NormOptions& opts) {
  int n = alg.dim();
  if (static_cast<int>(phi.size()) != n)
    fail(ErrorCode::DimensionMismatch, "matsaev_check: symbol length");
  FourierSymbol cphi(phi.begin(), phi.end());
  double dec = dec_norm_multiplier(alg, cphi, opts);
  if (dec > 1.0 + 1e-6)
    fail(ErrorCode::InvalidArgument,
         "matsaev_check: symbol is not contractively decomposable");

  FourierSymbol pphi(n);
  for (int s = 0; s < n; ++s) pphi[s] = poly.eval(phi[s]);
  SuperOperator mp = fourier_multiplier(alg, pphi);
  std::vector<ComplexMatrix> lambda_starts;
  for (int s = 0; s < n; ++s) lambda_starts.push_back(alg.lambda(s));

  MatsaevReport rep;
  rep.lhs_d1 = pq_norm_lower(mp, p, 1, restarts, seed, &lambda_starts).value;
  rep.lhs_d2 = pq_norm_lower(mp, p, 2, restarts, seed, &lambda_starts).value;
  rep.rhs_circle = poly.sup_on_circle();

  // truncated nilpotent shift on l^p_N
  if (shift_trunc < 2) shift_trunc = 2;
  ComplexMatrix shift(shift_trunc, shift_trunc);
  for (int k = 0; k + 1 < shift_trunc; ++k) shift(k + 1, k) = 1.0;
  ComplexMatrix ps(shift_trunc, shift_trunc);
  ComplexMatrix powk = ComplexMatrix::identity(shift_trunc);
  for (int k = 0; k <= poly.degree(); ++k) {
    ps += powk * poly.coeffs()[k];
    powk = shift * powk;
  }
  SuperOperator shift_map = diagonal_map(ps);
  rep.rhs_shift = pq_norm_lower(shift_map, p, 2, restarts, seed ^ 0x5afe, nullptr).value;

  bool at_two = !p.is_inf() && p.value() == 2.0;
  double lhs = std::max(rep.lhs_d1, rep.lhs_d2);
  rep.margin = rep.rhs_circle - lhs;
  rep.violated = at_two && (lhs > rep.rhs_circle + 1e-8);
  return rep;
}

ComplexMatrix triangular_symbol(int n) {
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a(i, j) = 1.0;
  return a;
}

std::vector<TruncationRow> truncation_growth(const std::vector<int>& n_list,
                                             const NormOptions& opts) {
  for (size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      fail(ErrorCode::InvalidArgument, "truncation_growth: sizes must ascend");
  if (!n_list.empty() && n_list.back() > 64)
    fail(ErrorCode::InvalidArgument, "truncation_growth: sizes capped at 64");
  std::vector<TruncationRow> rows;
  for (int n : n_list) {
    TruncationRow r;
    r.n = n;
    r.cb_norm = schur_cb_norm(triangular_symbol(n), opts);
    r.sqrt_n = std::sqrt(static_cast<double>(n));
    r.s2_bound_ok = r.cb_norm <= r.sqrt_n + 1e-7;
    rows.push_back(r);
  }
  return rows;
}

SchurLimitReport schur_limit_criterion(const ComplexMatrix& a,
                                       const std::vector<int>& row_tail,
                                       const std::vector<int>& col_tail) {
  if (row_tail.size() < 3 || col_tail.size() < 3)
    fail(ErrorCode::DimensionMismatch, "schur_limit_criterion: tails need length >= 3");
  for (int i : row_tail)
    if (i < 0 || i >= a.rows())
      fail(ErrorCode::DimensionMismatch, "schur_limit_criterion: row tail outside matrix");
  for (int j : col_tail)
    if (j < 0 || j >= a.cols())
      fail(ErrorCode::DimensionMismatch, "schur_limit_criterion: col tail outside matrix");
  SchurLimitReport rep;
  // Inner limit over j (tail end), outer over i (tail start), and reversed.
  rep.s = a(row_tail.front(), col_tail.back());
  rep.t = a(row_tail.back(), col_tail.front());
  rep.gap = std::abs(rep.s - rep.t);
  return rep;
}

}  // namespace declab
