#include "declab/norms.hpp"

#include <cmath>

namespace declab {

namespace {

// Exactly-real Choi data lets the whole program stay on the real symmetric
// side (half the variables, no embedding).
bool entrywise_real(const ComplexMatrix& m) {
  for (const auto& z : m.data())
    if (z.imag() != 0.0) return false;
  return true;
}

// Adds the Hermitian coefficient matrix m (times the variable var) at the
// diagonal offset of the block.
void add_coeff_matrix(sdp::Problem& p, int block, int var, const ComplexMatrix& m,
                      int off) {
  for (int i = 0; i < m.rows(); ++i) {
    if (m(i, i) != cplx(0.0)) p.add_coeff(block, var, off + i, off + i, m(i, i));
    for (int j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != cplx(0.0)) p.add_coeff(block, var, off + i, off + j, m(i, j));
  }
}

// Adds -ptr_first(C) to a block of dimension m_out, where C is the Hermitian
// variable for the Choi matrix of a map M_n -> M_m.
void add_neg_input_trace(sdp::Problem& p, int block, const sdp::HermitianVar& c,
                         int n, int m_out) {
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < m_out; ++k) {
      p.add_coeff(block, p.var_diag(c, i * m_out + k), k, k, -1.0);
      for (int l = k + 1; l < m_out; ++l) {
        p.add_coeff(block, p.var_re(c, i * m_out + k, i * m_out + l), k, l, -1.0);
        if (!c.real_only)
          p.add_coeff(block, p.var_im(c, i * m_out + k, i * m_out + l), k, l,
                      cplx(0.0, -1.0));
      }
    }
}

// Adds -ptr_second(Y) to a block of dimension n_in, Y Hermitian on
// M_{n_in} (x) M_{m_out}.
void add_neg_output_trace(sdp::Problem& p, int block, const sdp::HermitianVar& y,
                          int n_in, int m_out) {
  for (int i = 0; i < n_in; ++i)
    for (int j = i; j < n_in; ++j)
      for (int k = 0; k < m_out; ++k) {
        int a = i * m_out + k, b = j * m_out + k;
        if (i == j) {
          p.add_coeff(block, p.var_diag(y, a), i, i, -1.0);
        } else {
          p.add_coeff(block, p.var_re(y, a, b), i, j, -1.0);
          if (!y.real_only)
            p.add_coeff(block, p.var_im(y, a, b), i, j, cplx(0.0, -1.0));
        }
      }
}

void check_solved(const sdp::Solution& sol, const char* what) {
  if (sol.status == sdp::SolveStatus::MaxIter && sol.gap > 1e-5 * (1.0 + std::abs(sol.primal_obj)))
    fail(ErrorCode::SolverFailure, std::string(what) + ": interior point did not converge");
}

}  // namespace

DecResult dec_norm_inf(const SuperOperator& t, const NormOptions& opts) {
  int n = t.in_dim(), m = t.out_dim();
  int nm = n * m;
  bool real_data = entrywise_real(t.choi());
  sdp::Problem p;
  sdp::HermitianVar c1 = real_data ? p.new_real_symmetric(nm) : p.new_hermitian(nm);
  sdp::HermitianVar c2 = real_data ? p.new_real_symmetric(nm) : p.new_hermitian(nm);
  int tv = p.new_var(1.0);

  int big = p.new_block(2 * nm, !real_data);
  p.place_hermitian(big, c1, 0);
  p.place_hermitian(big, c2, nm);
  p.place_const(big, t.choi(), 0, nm);

  for (const auto& c : {c1, c2}) {
    int blk = p.new_block(m, !real_data);
    for (int k = 0; k < m; ++k) p.add_coeff(blk, tv, k, k, 1.0);
    add_neg_input_trace(p, blk, c, n, m);
  }

  sdp::Solution sol = sdp::solve(p, opts.solver);
  check_solved(sol, "dec_norm_inf");
  DecResult r;
  r.value = sol.primal_obj;
  r.v1 = SuperOperator(n, m, sol.hermitian_value(c1));
  r.v2 = SuperOperator(n, m, sol.hermitian_value(c2));
  r.status = sol.status;
  r.gap = sol.gap;
  r.violation = sol.max_violation;
  r.iterations = sol.iterations;
  return r;
}

double dec_norm_one(const SuperOperator& t, const NormOptions& opts) {
  int n = t.in_dim(), m = t.out_dim();
  int nm = n * m;
  bool real_data = entrywise_real(t.choi());
  sdp::Problem p;
  sdp::HermitianVar c1 = real_data ? p.new_real_symmetric(nm) : p.new_hermitian(nm);
  sdp::HermitianVar c2 = real_data ? p.new_real_symmetric(nm) : p.new_hermitian(nm);
  int tv = p.new_var(1.0);

  int big = p.new_block(2 * nm, !real_data);
  p.place_hermitian(big, c1, 0);
  p.place_hermitian(big, c2, nm);
  p.place_const(big, t.choi(), 0, nm);

  for (const auto& c : {c1, c2}) {
    int blk = p.new_block(n, !real_data);
    for (int k = 0; k < n; ++k) p.add_coeff(blk, tv, k, k, 1.0);
    add_neg_output_trace(p, blk, c, n, m);
  }

  sdp::Solution sol = sdp::solve(p, opts.solver);
  check_solved(sol, "dec_norm_one");
  return sol.primal_obj;
}

double cb_norm_inf(const SuperOperator& t, const NormOptions& opts) {
  SuperOperator adj = t.adjoint();  // M_m -> M_n
  int n_in = adj.in_dim(), m_out = adj.out_dim();
  int nm = n_in * m_out;
  bool real_data = entrywise_real(adj.choi());
  sdp::Problem p;
  sdp::HermitianVar y1 = real_data ? p.new_real_symmetric(nm) : p.new_hermitian(nm);
  sdp::HermitianVar y2 = real_data ? p.new_real_symmetric(nm) : p.new_hermitian(nm);
  int tv = p.new_var(1.0);

  int big = p.new_block(2 * nm, !real_data);
  p.place_hermitian(big, y1, 0);
  p.place_hermitian(big, y2, nm);
  p.place_const(big, adj.choi(), 0, nm);

  for (const auto& y : {y1, y2}) {
    int blk = p.new_block(n_in, !real_data);
    for (int k = 0; k < n_in; ++k) p.add_coeff(blk, tv, k, k, 1.0);
    add_neg_output_trace(p, blk, y, n_in, m_out);
  }

  sdp::Solution sol = sdp::solve(p, opts.solver);
  check_solved(sol, "cb_norm_inf");
  return sol.primal_obj;
}

double dec_norm_from_commutative(const SuperOperator& t, const NormOptions& opts) {
  if (!t.has_diagonal_input_support(1e-12))
    fail(ErrorCode::NotDiagonalInput,
         "dec_norm_from_commutative: Choi not supported on diagonal input units");
  int n = t.in_dim(), m = t.out_dim();
  sdp::Problem p;
  std::vector<sdp::HermitianVar> x1(n), x2(n);
  for (int k = 0; k < n; ++k) x1[k] = p.new_hermitian(m);
  for (int k = 0; k < n; ++k) x2[k] = p.new_hermitian(m);
  int tv = p.new_var(1.0);

  for (int k = 0; k < n; ++k) {
    int blk = p.new_block(2 * m, true);
    p.place_hermitian(blk, x1[k], 0);
    p.place_hermitian(blk, x2[k], m);
    p.place_const(blk, t.unit_image(k, k), 0, m);
  }
  for (const auto& xs : {x1, x2}) {
    int blk = p.new_block(m, true);
    for (int k = 0; k < m; ++k) p.add_coeff(blk, tv, k, k, 1.0);
    for (int k = 0; k < n; ++k) {
      for (int a = 0; a < m; ++a) {
        p.add_coeff(blk, p.var_diag(xs[k], a), a, a, -1.0);
        for (int b = a + 1; b < m; ++b) {
          p.add_coeff(blk, p.var_re(xs[k], a, b), a, b, -1.0);
          p.add_coeff(blk, p.var_im(xs[k], a, b), a, b, cplx(0.0, -1.0));
        }
      }
    }
  }

  sdp::Solution sol = sdp::solve(p, opts.solver);
  check_solved(sol, "dec_norm_from_commutative");
  return sol.primal_obj;
}

double schur_cb_norm(const ComplexMatrix& a, const NormOptions& opts) {
  if (!a.square()) fail(ErrorCode::NotSquare, "schur_cb_norm: symbol must be square");
  int n = a.rows();
  bool real_data = true;
  for (int i = 0; i < n && real_data; ++i)
    for (int j = 0; j < n; ++j)
      if (a(i, j).imag() != 0.0) {
        real_data = false;
        break;
      }

  sdp::Problem p;
  sdp::HermitianVar pv = real_data ? p.new_real_symmetric(n) : p.new_hermitian(n);
  sdp::HermitianVar qv = real_data ? p.new_real_symmetric(n) : p.new_hermitian(n);
  int tv = p.new_var(1.0);

  int big = p.new_block(2 * n, !real_data);
  p.place_hermitian(big, pv, 0);
  p.place_hermitian(big, qv, n);
  p.place_const(big, a, 0, n);

  for (int i = 0; i < n; ++i) {
    int blk = p.new_block(1, false);
    p.add_coeff(blk, tv, 0, 0, 1.0);
    p.add_coeff(blk, p.var_diag(pv, i), 0, 0, -1.0);
  }
  for (int j = 0; j < n; ++j) {
    int blk = p.new_block(1, false);
    p.add_coeff(blk, tv, 0, 0, 1.0);
    p.add_coeff(blk, p.var_diag(qv, j), 0, 0, -1.0);
  }

  sdp::Solution sol = sdp::solve(p, opts.solver);
  check_solved(sol, "schur_cb_norm");
  return sol.primal_obj;
}

double dec_norm_selfadjoint(const SuperOperator& t, const NormOptions& opts) {
  if (!t.is_selfadjoint_map(1e-9))
    fail(ErrorCode::InvalidArgument, "dec_norm_selfadjoint: map is not selfadjoint");
  int n = t.in_dim(), m = t.out_dim();
  int nm = n * m;
  bool real_data = entrywise_real(t.choi());
  sdp::Problem p;
  sdp::HermitianVar cs = real_data ? p.new_real_symmetric(nm) : p.new_hermitian(nm);
  int tv = p.new_var(1.0);

  // Hermitize the Choi matrix so the constant blocks are exactly Hermitian.
  ComplexMatrix ct(nm, nm);
  {
    const ComplexMatrix& c = t.choi();
    for (int i = 0; i < nm; ++i)
      for (int j = 0; j < nm; ++j) ct(i, j) = 0.5 * (c(i, j) + std::conj(c(j, i)));
  }

  int plus = p.new_block(nm, !real_data);
  p.place_hermitian(plus, cs, 0);
  p.place_const(plus, ct, 0, 0);
  int minus = p.new_block(nm, !real_data);
  p.place_hermitian(minus, cs, 0);
  p.place_const(minus, ct * cplx(-1.0), 0, 0);

  int blk = p.new_block(m, !real_data);
  for (int k = 0; k < m; ++k) p.add_coeff(blk, tv, k, k, 1.0);
  add_neg_input_trace(p, blk, cs, n, m);

  sdp::Solution sol = sdp::solve(p, opts.solver);
  check_solved(sol, "dec_norm_selfadjoint");
  return sol.primal_obj;
}

namespace {

// Choi matrix of x -> tr_n(lambda_s^* x) lambda_s.
ComplexMatrix multiplier_generator(const GroupAlgebra& alg, int s) {
  int n = alg.dim();
  return kron(alg.lambda(s).conjugate(), alg.lambda(s)) * (1.0 / n);
}

struct OrbitVars {
  // per group element: symbol value as affine function of the problem vars
  // value(s) = const(s) + sum_v coeff(s,v) * y_v, with coeff in {1, i, -i}.
  std::vector<int> re_var;   // shared over {s, s^-1}
  std::vector<int> im_var;   // -1 when pinned or self-inverse
  std::vector<double> sign;  // +1 for s, -1 for s^-1 (imaginary part)
};

// Creates variables for a symbol with conj(psi(s)) = psi(s^-1) (Hermitian
// Choi). If unit_at_identity, psi(e) = 1 is pinned as a constant.
OrbitVars make_symbol_vars(sdp::Problem& p, const FiniteGroup& g, bool real_symbol,
                           bool unit_at_identity, int block, int off,
                           const GroupAlgebra& alg, int* identity_var) {
  int n = g.order();
  OrbitVars ov;
  ov.re_var.assign(n, -1);
  ov.im_var.assign(n, -1);
  ov.sign.assign(n, 1.0);
  *identity_var = -1;
  std::vector<bool> seen(n, false);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    int si = g.inv(s);
    seen[s] = true;
    seen[si] = true;
    ComplexMatrix ks = multiplier_generator(alg, s);
    if (s == g.identity() && unit_at_identity) {
      // constant contribution K_e
      for (int i = 0; i < ks.rows(); ++i) {
        if (ks(i, i) != cplx(0.0)) p.add_const(block, off + i, off + i, ks(i, i));
        for (int j = i + 1; j < ks.cols(); ++j)
          if (ks(i, j) != cplx(0.0)) p.add_const(block, off + i, off + j, ks(i, j));
      }
      continue;
    }
    int vr = p.new_var(0.0);
    ov.re_var[s] = vr;
    ov.re_var[si] = vr;
    if (s == g.identity()) *identity_var = vr;
    ComplexMatrix coeff = (si == s) ? ks : ks + multiplier_generator(alg, si);
    add_coeff_matrix(p, block, vr, coeff, off);
    if (si != s && !real_symbol) {
      int vi = p.new_var(0.0);
      ov.im_var[s] = vi;
      ov.im_var[si] = vi;
      ov.sign[s] = 1.0;
      ov.sign[si] = -1.0;
      ComplexMatrix icoeff =
          (multiplier_generator(alg, s) - multiplier_generator(alg, si)) * cplx(0.0, 1.0);
      add_coeff_matrix(p, block, vi, icoeff, off);
    }
  }
  return ov;
}

}  // namespace

double dec_norm_multiplier(const GroupAlgebra& alg, const FourierSymbol& phi,
                           const NormOptions& opts) {
  int n = alg.dim();
  if (static_cast<int>(phi.size()) != n)
    fail(ErrorCode::DimensionMismatch, "dec_norm_multiplier: symbol length");
  int n2 = n * n;
  sdp::Problem p;
  int big = p.new_block(2 * n2, true);
  int e1 = -1, e2 = -1;
  OrbitVars psi1 = make_symbol_vars(p, alg.group(), false, false, big, 0, alg, &e1);
  OrbitVars psi2 = make_symbol_vars(p, alg.group(), false, false, big, n2, alg, &e2);
  (void)psi1;
  (void)psi2;
  SuperOperator mphi = fourier_multiplier(alg, phi);
  p.place_const(big, mphi.choi(), 0, n2);

  int tv = p.new_var(1.0);
  for (int ev : {e1, e2}) {
    int blk = p.new_block(1, false);
    p.add_coeff(blk, tv, 0, 0, 1.0);
    p.add_coeff(blk, ev, 0, 0, -1.0);
  }

  sdp::Solution sol = sdp::solve(p, opts.solver);
  check_solved(sol, "dec_norm_multiplier");
  return sol.primal_obj;
}

PropertyPWitness property_P_witness(const GroupAlgebra& alg,
                                    const std::vector<double>& phi,
                                    const NormOptions& opts) {
  int n = alg.dim();
  if (static_cast<int>(phi.size()) != n)
    fail(ErrorCode::DimensionMismatch, "property_P_witness: symbol length");
  FourierSymbol cphi(phi.begin(), phi.end());
  double dec = dec_norm_multiplier(alg, cphi, opts);
  if (dec > 1.0 + 1e-6)
    fail(ErrorCode::InvalidArgument,
         "property_P_witness: symbol is not contractively decomposable");

  int n2 = n * n;
  sdp::Problem p;
  int big = p.new_block(2 * n2, true);
  int e1 = -1, e2 = -1;
  OrbitVars psi1 = make_symbol_vars(p, alg.group(), true, true, big, 0, alg, &e1);
  OrbitVars psi2 = make_symbol_vars(p, alg.group(), true, true, big, n2, alg, &e2);
  SuperOperator mphi = fourier_multiplier(alg, cphi);
  p.place_const(big, mphi.choi(), 0, n2);
  // phase-I slack: minimize t with BigChoi + t I >= 0
  int tv = p.new_var(1.0);
  for (int i = 0; i < 2 * n2; ++i) p.add_coeff(big, tv, i, i, 1.0);

  sdp::Solution sol = sdp::solve(p, opts.solver);
  check_solved(sol, "property_P_witness");

  PropertyPWitness w;
  w.phase1_optimum = sol.primal_obj;
  w.psi1.assign(n, 0.0);
  w.psi2.assign(n, 0.0);
  for (int s = 0; s < n; ++s) {
    w.psi1[s] = (s == alg.group().identity())
                    ? 1.0
                    : (psi1.re_var[s] >= 0 ? sol.value(psi1.re_var[s]) : 0.0);
    w.psi2[s] = (s == alg.group().identity())
                    ? 1.0
                    : (psi2.re_var[s] >= 0 ? sol.value(psi2.re_var[s]) : 0.0);
  }
  w.feasible = sol.primal_obj <= 1e-7;

  // a-posteriori check of the returned witness block
  FourierSymbol s1(w.psi1.begin(), w.psi1.end());
  FourierSymbol s2(w.psi2.begin(), w.psi2.end());
  BlockMap blk = block2(fourier_multiplier(alg, s1), mphi, fourier_multiplier(alg, s2));
  CpCertificate cert = is_cp(blk.assembled, 1e-6);
  w.block_min_eigenvalue = cert.min_eigenvalue;
  return w;
}

}  // namespace declab
