#include "declab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "declab/io.hpp"
#include "declab/random_maps.hpp"

namespace declab {

namespace {

using nlohmann::json;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

NormOptions norm_opts(const ExpOptions& o) {
  NormOptions n;
  n.solver.tol_gap_abs = o.sdp_tol;
  n.solver.tol_gap_rel = o.sdp_tol * 10.0;
  n.solver.max_iter = o.sdp_maxiter;
  return n;
}

struct SuiteBuilder {
  SuiteResult r;
  Timer total;
  double prev = 0.0;
  explicit SuiteBuilder(std::string name) { r.suite = std::move(name); }
  void push(const std::string& id, bool pass, double value, double bound,
            const std::string& detail = "") {
    double now = total.seconds();
    r.assertions.push_back({id, pass, value, bound, detail, now - prev});
    prev = now;
  }
  SuiteResult done() {
    r.wall_seconds = total.seconds();
    return r;
  }
};

int pick_trials(const ExpOptions& o, int full_default, int quick_default) {
  if (o.trials > 0) return o.trials;
  return o.quick ? quick_default : full_default;
}

// --- fixed objects -------------------------------------------------------

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

ComplexMatrix clock3() {
  cplx w = std::polar(1.0, 2.0 * 3.14159265358979323846 / 3.0);
  return ComplexMatrix::diagonal({cplx(1.0), w, w * w});
}

ComplexMatrix shift3() {
  ComplexMatrix m(3, 3);
  m(1, 0) = 1.0;
  m(2, 1) = 1.0;
  m(0, 2) = 1.0;
  return m;
}

// Map l^inf_n -> M_m with unitary row u: e_k -> u_k (zero off the diagonal
// units).
SuperOperator unitary_row_map(const std::vector<ComplexMatrix>& u) {
  int n = static_cast<int>(u.size());
  int m = u[0].rows();
  std::vector<ComplexMatrix> imgs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      imgs.push_back(i == j ? u[i] : ComplexMatrix(m, m));
  return SuperOperator::from_action(n, m, imgs);
}

GroupAlgebra algebra_z(int n) {
  return GroupAlgebra(FiniteGroup::cyclic(n), TwoCocycle::trivial(n));
}

GroupAlgebra algebra_z2z2() {
  FiniteGroup g = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  return GroupAlgebra(g, TwoCocycle::trivial(4));
}

GroupAlgebra algebra_z2z2_pauli() {
  FiniteGroup g = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  return GroupAlgebra(g, TwoCocycle::pauli());
}

GroupAlgebra algebra_z4_twisted() {
  FiniteGroup g = FiniteGroup::cyclic(4);
  // exact fourth-root coboundary: beta(k) = i^{k^2}
  std::vector<cplx> beta = {cplx(1, 0), cplx(0, 1), cplx(1, 0), cplx(0, 1)};
  return GroupAlgebra(g, TwoCocycle::coboundary(g, beta));
}

GroupAlgebra algebra_s3() {
  return GroupAlgebra(FiniteGroup::symmetric(3), TwoCocycle::trivial(6));
}

std::vector<double> contractive_real_symbol(Rng& rng, const GroupAlgebra& alg,
                                            const NormOptions& no, double slack) {
  int n = alg.dim();
  std::vector<double> phi = random_real_symbol(rng, n);
  FourierSymbol cphi(phi.begin(), phi.end());
  double dec = dec_norm_multiplier(alg, cphi, no);
  double scale = (1.0 - slack) / std::max(dec, 1e-12);
  for (double& v : phi) v *= scale;
  return phi;
}

// --- suites --------------------------------------------------------------

SuiteResult run_unitary_row(const ExpOptions& o) {
  SuiteBuilder b("unitary-row");
  NormOptions no = norm_opts(o);
  double tol = 1e-4 * o.tol_scale;

  {
    SuperOperator t = unitary_row_map({ComplexMatrix::identity(1)});
    double v = dec_norm_from_commutative(t, no);
    b.push("unitary-row.n1", std::abs(v - 1.0) <= tol, v, 1.0, "single unitary");
  }
  SuperOperator t2 = unitary_row_map({pauli_x(), pauli_z()});
  {
    double v = dec_norm_from_commutative(t2, no);
    b.push("unitary-row.n2", std::abs(v - 2.0) <= tol, v, 2.0, "Pauli X, Z row");
  }
  {
    ComplexMatrix u = clock3(), v = shift3();
    double val = dec_norm_from_commutative(unitary_row_map({u, v, u * v}), no);
    b.push("unitary-row.n3", std::abs(val - 3.0) <= tol, val, 3.0,
         "clock, shift, product row");
  }
  {
    // the general program agrees with the commutative one
    double generic = dec_norm_inf(t2, no).value;
    double comm = dec_norm_from_commutative(t2, no);
    b.push("unitary-row.generic-agrees", std::abs(generic - comm) <= 1e-6 * o.tol_scale,
         std::abs(generic - comm), 1e-6, "generic vs commutative program, n=2");
  }
  return b.done();
}

SuiteResult run_dec_axioms(const ExpOptions& o) {
  SuiteBuilder b("dec-axioms");
  NormOptions no = norm_opts(o);
  Rng rng(o.seed, 0xdecaf);

  {
    double tol = 1e-4 * o.tol_scale;
    double worst = 0.0;
    for (int n : {2, 3}) {
      SuperOperator tr = SuperOperator::transpose_map(n);
      double dec = dec_norm_inf(tr, no).value;
      double cb = cb_norm_inf(tr, no);
      worst = std::max({worst, std::abs(dec - n), std::abs(cb - n)});
    }
    b.push("dec-axioms.transpose", worst <= tol, worst, tol,
         "dec = cb = n for the transpose, n = 2, 3");
  }

  {
    int trials = pick_trials(o, 100, 12);
    double worst = -1e300;
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork(1000 + i);
      int n = (i % 4 == 3) ? 3 : 2;
      SuperOperator t = random_superop(s, n, n);
      double dec = dec_norm_inf(t, no).value;
      double cb = cb_norm_inf(t, no);
      worst = std::max(worst, cb - dec);
    }
    b.push("dec-axioms.cb-below-dec", worst <= 1e-6 * o.tol_scale, worst, 1e-6,
         "max cb - dec over random maps");
  }

  auto rel = [](double a, double b) { return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b))); };
  double tol6 = 1e-6 * o.tol_scale;
  int trials = pick_trials(o, 30, 6);

  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork(2000 + i);
      int n = (i % 3 == 2) ? 3 : 2;
      SuperOperator t = random_superop(s, n, n);
      cplx lam = s.next_complex_gaussian();
      double a = dec_norm_inf(t * lam, no).value;
      double b = std::abs(lam) * dec_norm_inf(t, no).value;
      worst = std::max(worst, rel(a, b));
    }
    b.push("dec-axioms.homogeneity", worst <= tol6, worst, 1e-6, "dec(z T) = |z| dec(T)");
  }
  {
    double worst = -1e300;
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork(3000 + i);
      int n = (i % 3 == 2) ? 3 : 2;
      SuperOperator t = random_superop(s, n, n);
      SuperOperator u = random_superop(s, n, n);
      double lhs = dec_norm_inf(t + u, no).value;
      double rhs = dec_norm_inf(t, no).value + dec_norm_inf(u, no).value;
      worst = std::max(worst, (lhs - rhs) / (1.0 + rhs));
    }
    b.push("dec-axioms.triangle", worst <= tol6, worst, 1e-6,
         "dec(T+S) <= dec(T) + dec(S)");
  }
  {
    double worst = -1e300;
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork(4000 + i);
      int n = (i % 3 == 2) ? 3 : 2;
      SuperOperator t = random_superop(s, n, n);
      SuperOperator u = random_superop(s, n, n);
      double lhs = dec_norm_inf(t.compose(u), no).value;
      double rhs = dec_norm_inf(t, no).value * dec_norm_inf(u, no).value;
      worst = std::max(worst, (lhs - rhs) / (1.0 + rhs));
    }
    b.push("dec-axioms.composition", worst <= tol6, worst, 1e-6,
         "dec(T o S) <= dec(T) dec(S)");
  }
  {
    // duality swaps the exponent: the trace-level norm of the adjoint
    // matches the sup-level norm of the map
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork(5000 + i);
      int n = (i % 3 == 2) ? 3 : 2;
      SuperOperator t = random_superop(s, n, n);
      worst = std::max(worst, rel(dec_norm_one(t.adjoint(), no),
                                  dec_norm_inf(t, no).value));
    }
    b.push("dec-axioms.adjoint", worst <= tol6, worst, 1e-6,
           "trace-level dec(T*) = sup-level dec(T)");
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork(6000 + i);
      int n = (i % 3 == 2) ? 3 : 2;
      SuperOperator t = random_superop(s, n, n);
      worst = std::max(worst, rel(dec_norm_inf(t.opposite(), no).value,
                                  dec_norm_inf(t, no).value));
    }
    b.push("dec-axioms.opposite", worst <= tol6, worst, 1e-6, "dec(T°) = dec(T)");
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork(7000 + i);
      int n = (!o.quick && i == trials - 1) ? 3 : 2;
      SuperOperator t = random_superop(s, n, n);
      worst = std::max(worst, rel(dec_norm_inf(t.tilde(), no).value,
                                  dec_norm_inf(t, no).value));
    }
    b.push("dec-axioms.tilde", worst <= tol6, worst, 1e-6, "dec(tilde(T)) = dec(T)");
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork(8000 + i);
      int n = (i % 3 == 2) ? 3 : 2;
      SuperOperator t = random_selfadjoint_superop(s, n, n);
      worst = std::max(worst, rel(dec_norm_inf(t, no).value, dec_norm_selfadjoint(t, no)));
    }
    b.push("dec-axioms.selfadjoint-two-programs", worst <= tol6, worst, 1e-6,
         "block program vs -S <= T <= S program");
  }

  return b.done();
}

SuiteResult run_projections(const ExpOptions& o) {
  SuiteBuilder b("projections");
  NormOptions no = norm_opts(o);
  Rng rng(o.seed, 0x970ec7);
  int trials = pick_trials(o, 30, 8);

  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork(100 + i);
      SuperOperator t = (i % 3 == 0) ? random_superop(s, 4, 4) : random_cp(s, 4, 4, 3);
      ComplexMatrix phi = project_schur(t);
      ComplexMatrix again = project_schur(schur_multiplier(phi));
      worst = std::max(worst, (again - phi).max_abs());
    }
    b.push("projections.schur-idempotent", worst == 0.0, worst, 0.0,
         "bitwise idempotence of the Schur projection");
  }
  {
    double worst = 0.0;
    std::vector<GroupAlgebra> algs;
    algs.push_back(algebra_z(2));
    algs.push_back(algebra_z(4));
    algs.push_back(algebra_z2z2_pauli());
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork(200 + i);
      const GroupAlgebra& alg = algs[i % algs.size()];
      int n = alg.dim();
      std::vector<int> all(n);
      for (int k = 0; k < n; ++k) all[k] = k;
      SuperOperator t = (i % 3 == 0) ? random_superop(s, n, n) : random_cp(s, n, n, 3);
      FourierSymbol phi = project_fourier(alg, t, all);
      FourierSymbol again = project_fourier(alg, fourier_multiplier(alg, phi), all);
      for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(again[k] - phi[k]));
    }
    b.push("projections.fourier-idempotent", worst == 0.0, worst, 0.0,
         "bitwise idempotence of the Fourier projection (2-power orders)");
  }
  {
    // the projections fix multipliers
    Rng s = rng.fork(300);
    ComplexMatrix a = ginibre(s, 4, 4);
    ComplexMatrix back = project_schur(schur_multiplier(a));
    double d1 = (back - a).max_abs();
    GroupAlgebra alg = algebra_z(4);
    FourierSymbol phi = random_complex_symbol(s, 4);
    std::vector<int> all = {0, 1, 2, 3};
    FourierSymbol back2 = project_fourier(alg, fourier_multiplier(alg, phi), all);
    double d2 = 0.0;
    for (int k = 0; k < 4; ++k) d2 = std::max(d2, std::abs(back2[k] - phi[k]));
    b.push("projections.fixes-multipliers", d1 == 0.0 && d2 == 0.0, std::max(d1, d2),
         0.0, "P(M_phi) = phi");
  }
  {
    double min_eig = 0.0;
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork(400 + i);
      if (i % 2 == 0) {
        SuperOperator t = random_cp(s, 4, 4, 2 + i % 3);
        ComplexMatrix phi = project_schur(t);
        min_eig = std::min(min_eig, is_cp(schur_multiplier(phi), 1e-8).min_eigenvalue);
      } else {
        GroupAlgebra alg = algebra_z(4);
        std::vector<int> all = {0, 1, 2, 3};
        SuperOperator t = random_cp(s, 4, 4, 2 + i % 3);
        FourierSymbol phi = project_fourier(alg, t, all);
        min_eig = std::min(min_eig, is_cp(fourier_multiplier(alg, phi), 1e-8).min_eigenvalue);
      }
    }
    b.push("projections.cp-preserved", min_eig >= -1e-8 * o.tol_scale, min_eig, -1e-8,
         "projected symbols of CP maps stay CP");
  }
  {
    int ct = pick_trials(o, 10, 3);
    double worst = -1e300;
    for (int i = 0; i < ct; ++i) {
      Rng s = rng.fork(500 + i);
      SuperOperator t = random_superop(s, 3, 3);
      double before = cb_norm_inf(t, no);
      double after = cb_norm_inf(schur_multiplier(project_schur(t)), no);
      worst = std::max(worst, after - before);
    }
    for (int i = 0; i < ct; ++i) {
      Rng s = rng.fork(600 + i);
      GroupAlgebra alg = algebra_z(4);
      std::vector<int> all = {0, 1, 2, 3};
      SuperOperator t = random_superop(s, 4, 4);
      double before = cb_norm_inf(t, no);
      double after = cb_norm_inf(fourier_multiplier(alg, project_fourier(alg, t, all)), no);
      worst = std::max(worst, after - before);
    }
    b.push("projections.cb-contractive", worst <= 1e-6 * o.tol_scale, worst, 1e-6,
         "cb(P(T)) <= cb(T)");
  }
  {
    GroupAlgebra alg = algebra_z(4);
    FourierSymbol phi = {1.0, 2.0, 3.0, 4.0};
    SuperOperator t = fourier_multiplier(alg, phi);
    FourierSymbol proj = project_fourier(alg, t, {0, 2});
    double dev = std::max(std::max(std::abs(proj[0] - cplx(1.0)), std::abs(proj[1])),
                          std::max(std::abs(proj[2] - cplx(3.0)), std::abs(proj[3])));
    b.push("projections.subgroup-restriction", dev == 0.0, dev, 0.0,
         "restriction to the index-2 subgroup of Z_4");
  }

  return b.done();
}

SuiteResult run_cocycle(const ExpOptions& o) {
  SuiteBuilder b("cocycle");
  NormOptions no = norm_opts(o);
  Rng rng(o.seed, 0xc0c7c1e);
  int trials = pick_trials(o, 20, 6);

  struct Pair {
    GroupAlgebra twisted, plain;
    std::string name;
  };
  std::vector<Pair> pairs;
  pairs.push_back({algebra_z2z2_pauli(), algebra_z2z2(), "z2z2"});
  pairs.push_back({algebra_z4_twisted(), algebra_z(4), "z4"});

  for (const auto& pr : pairs) {
    int n = pr.plain.dim();
    int agreements = 0;
    double worst_cb = 0.0;
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork(1000 * (pr.name == "z4" ? 2 : 1) + i);
      FourierSymbol phi;
      if (i % 3 == 0)
        phi = random_posdef_symbol(s, pr.plain);
      else if (i % 3 == 1)
        phi = random_complex_symbol(s, n);
      else {
        std::vector<double> re = random_real_symbol(s, n);
        phi.assign(re.begin(), re.end());
      }
      bool cp_twisted = is_cp(fourier_multiplier(pr.twisted, phi), 1e-8).cp;
      bool cp_plain = is_cp(fourier_multiplier(pr.plain, phi), 1e-8).cp;
      if (cp_twisted == cp_plain) ++agreements;
      double cb_t = cb_norm_inf(fourier_multiplier(pr.twisted, phi), no);
      double cb_p = cb_norm_inf(fourier_multiplier(pr.plain, phi), no);
      worst_cb = std::max(worst_cb, std::abs(cb_t - cb_p));
    }
    b.push("cocycle.cp-invariant." + pr.name, agreements == trials,
         static_cast<double>(agreements), static_cast<double>(trials),
         "CP status identical with and without the cocycle");
    b.push("cocycle.cb-invariant." + pr.name, worst_cb <= 1e-5 * o.tol_scale, worst_cb,
         1e-5, "cb norm identical with and without the cocycle");
  }

  {
    // complete positivity alone is cheap enough to verify at order 8;
    // beta = (1, i, 1, i, ...) gives the nontrivial cocycle (-1)^{st}
    FiniteGroup z8 = FiniteGroup::cyclic(8);
    std::vector<cplx> beta;
    for (int k = 0; k < 8; ++k) beta.push_back(k % 2 == 0 ? cplx(1, 0) : cplx(0, 1));
    GroupAlgebra twisted(z8, TwoCocycle::coboundary(z8, beta));
    GroupAlgebra plain(z8, TwoCocycle::trivial(8));
    int agreements = 0;
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork(9000 + i);
      FourierSymbol phi = (i % 2 == 0) ? random_posdef_symbol(s, plain)
                                       : random_complex_symbol(s, 8);
      bool cp_t = is_cp(fourier_multiplier(twisted, phi), 1e-8).cp;
      bool cp_p = is_cp(fourier_multiplier(plain, phi), 1e-8).cp;
      if (cp_t == cp_p) ++agreements;
    }
    b.push("cocycle.cp-invariant.z8", agreements == trials,
           static_cast<double>(agreements), static_cast<double>(trials),
           "CP status at order 8");
  }

  return b.done();
}

SuiteResult run_schur_dec(const ExpOptions& o) {
  SuiteBuilder b("schur-dec");
  NormOptions no = norm_opts(o);
  Rng rng(o.seed, 0x5c09);

  {
    std::vector<int> sizes;
    std::vector<bool> real_symbol;
    if (o.quick) {
      sizes = {2, 2, 3, 3, 4, 4, 4, 5};
      real_symbol.assign(sizes.size(), false);
    } else {
      sizes = {2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 6, 6, 6, 7, 7, 8};
      for (int n : sizes) real_symbol.push_back(n >= 6);
    }
    double worst = 0.0;
    for (size_t i = 0; i < sizes.size(); ++i) {
      Rng s = rng.fork(100 + i);
      int n = sizes[i];
      ComplexMatrix a = ginibre(s, n, n);
      if (real_symbol[i])
        for (auto& z : a.data()) z = cplx(z.real(), 0.0);
      double dec = dec_norm_inf(schur_multiplier(a), no).value;
      double hs = schur_cb_norm(a, no);
      worst = std::max(worst, std::abs(dec - hs));
    }
    b.push("schur-dec.identity", worst <= 1e-5 * o.tol_scale, worst, 1e-5,
         "dec(M_A) = Haagerup program value, sizes up to 8");
  }

  {
    // amplified lower bounds stay below the dec value
    struct Mult {
      SuperOperator map;
      double dec;
      std::string name;
    };
    std::vector<Mult> mults;
    int count = pick_trials(o, 10, 3);
    for (int i = 0; i < count; ++i) {
      Rng s = rng.fork(300 + i);
      const GroupAlgebra alg = (i % 3 == 0)   ? algebra_z(2)
                               : (i % 3 == 1) ? algebra_z(4)
                                              : algebra_z2z2_pauli();
      FourierSymbol phi = random_complex_symbol(s, alg.dim());
      mults.push_back({fourier_multiplier(alg, phi),
                       dec_norm_multiplier(alg, phi, no), "fourier"});
    }
    for (int i = 0; i < count; ++i) {
      Rng s = rng.fork(400 + i);
      int n = 2 + i % 3;
      ComplexMatrix a = ginibre(s, n, n);
      mults.push_back({schur_multiplier(a), schur_cb_norm(a, no), "schur"});
    }
    std::vector<PExp> ps;
    if (o.quick)
      ps = {PExp::two(), PExp::inf()};
    else
      ps = {PExp::finite(1.5), PExp::two(), PExp::finite(3.0), PExp::inf()};
    int dmax = o.quick ? 2 : 4;
    double worst = -1e300;
    double p2dev = 0.0;
    for (size_t i = 0; i < mults.size(); ++i) {
      for (const auto& p : ps) {
        NormEstimate est =
            pq_norm_lower(mults[i].map, p, dmax, o.restarts, o.seed + i);
        worst = std::max(worst, est.value - mults[i].dec);
      }
      NormEstimate e2 = pq_norm_lower(mults[i].map, PExp::two(), 1, o.restarts, o.seed + i);
      double smax = singular_values(mults[i].map.liouville())[0];
      p2dev = std::max(p2dev, std::abs(e2.value - smax));
    }
    b.push("schur-dec.amplified-below-dec", worst <= 1e-6 * o.tol_scale, worst, 1e-6,
         "pq lower bounds at p in {1.5,2,3,inf}, d <= 4");
    b.push("schur-dec.p2-exact", p2dev <= 1e-9 * o.tol_scale, p2dev, 1e-9,
         "p = 2, d = 1 estimate matches the top singular value");
  }

  return b.done();
}

SuiteResult run_modulus(const ExpOptions& o) {
  SuiteBuilder b("modulus");
  Rng rng(o.seed, 0x30d);
  int trials = pick_trials(o, 50, 10);
  double min_eig = 0.0;
  int passed = 0;
  for (int i = 0; i < trials; ++i) {
    Rng s = rng.fork(i);
    int rows = 1 + static_cast<int>(s.next_below(6));
    int cols = 1 + static_cast<int>(s.next_below(6));
    ComplexMatrix b = ginibre(s, rows, cols);
    double eig = 0.0;
    if (modulus_block_check(b, 1e-8 * o.tol_scale, &eig)) ++passed;
    min_eig = std::min(min_eig, eig);
  }
  b.push("modulus.random-blocks", passed == trials, min_eig, -1e-8,
       "block [[|B|, B],[B°, |B|]] is CP for random rectangular B");
  {
    double e1 = 0.0, e2 = 0.0;
    bool pos_ok = modulus_block_check(ComplexMatrix::identity(1), 1e-10, &e1);
    ComplexMatrix neg(1, 1);
    neg(0, 0) = -1.0;
    bool neg_ok = modulus_block_check(neg, 1e-10, &e2);
    b.push("modulus.scalars", pos_ok && neg_ok, std::min(e1, e2), -1e-10,
           "B = [[1]], [[-1]]");
  }
  return b.done();
}

SuiteResult run_property_p(const ExpOptions& o) {
  SuiteBuilder b("property-p");
  NormOptions no = norm_opts(o);
  Rng rng(o.seed, 0x991);
  int trials = pick_trials(o, 20, 6);

  struct Named {
    GroupAlgebra alg;
    std::string name;
  };
  std::vector<Named> groups;
  groups.push_back({algebra_z(4), "z4"});
  groups.push_back({algebra_s3(), "s3"});

  for (const auto& g : groups) {
    int feasible = 0;
    double worst_eig = 0.0;
    for (int i = 0; i < trials; ++i) {
      Rng s = rng.fork((g.name == "s3" ? 5000 : 0) + i);
      std::vector<double> phi;
      if (i == 0) {
        phi.assign(g.alg.dim(), 0.0);
        phi[g.alg.group().identity()] = 1.0;  // delta_e
      } else if (i == 1) {
        phi.assign(g.alg.dim(), 1.0);  // unit symbol
      } else if (i == 2 && g.name == "z4") {
        phi = {1.0, 0.0, -1.0, 0.0};
      } else {
        phi = contractive_real_symbol(s, g.alg, no, 1e-4);
      }
      PropertyPWitness w = property_P_witness(g.alg, phi, no);
      if (w.feasible) ++feasible;
      worst_eig = std::min(worst_eig, w.block_min_eigenvalue);
    }
    b.push("property-p.feasible." + g.name, feasible == trials,
         static_cast<double>(feasible), static_cast<double>(trials),
         "witness found for every contractive real symbol");
    b.push("property-p.block-psd." + g.name, worst_eig >= -1e-6 * o.tol_scale,
         worst_eig, -1e-6, "returned block extension is CP");
  }

  return b.done();
}

SuiteResult run_matsaev(const ExpOptions& o, std::vector<MatsaevRow>* rows) {
  SuiteBuilder b("matsaev");
  NormOptions no = norm_opts(o);
  Rng rng(o.seed, 0x3a75aef);
  int trials = pick_trials(o, 50, 10);

  {
    // P(z) = z - 1 with the sign flip on Z_2 attains the circle bound
    GroupAlgebra alg = algebra_z(2);
    Polynomial pz({cplx(-1.0), cplx(1.0)});
    MatsaevReport rep =
        matsaev_check(alg, {1.0, -1.0}, pz, PExp::two(), 8, o.restarts, o.seed, no);
    bool ok = std::abs(rep.lhs_d1 - 2.0) <= 1e-8 && std::abs(rep.rhs_circle - 2.0) <= 1e-8 &&
              !rep.violated;
    b.push("matsaev.sign-flip-sharp", ok, rep.lhs_d1, 2.0,
         "P(z) = z - 1 on the sign symbol is extremal");
  }

  double min_margin = 1e300;
  int violations = 0;
  for (int i = 0; i < trials; ++i) {
    Rng s = rng.fork(100 + i);
    GroupAlgebra alg = (i % 2 == 0) ? algebra_z(4) : algebra_s3();
    std::vector<double> phi = contractive_real_symbol(s, alg, no, 1e-6);
    int deg = 1 + static_cast<int>(s.next_below(6));
    std::vector<cplx> coeffs(deg + 1);
    for (auto& c : coeffs) c = s.next_complex_gaussian();
    Polynomial poly(coeffs);
    MatsaevReport rep =
        matsaev_check(alg, phi, poly, PExp::two(), 12, o.restarts, s.next_u64(), no);
    if (rep.violated) ++violations;
    min_margin = std::min(min_margin, rep.margin);
    if (rows) {
      MatsaevRow row;
      row.pair_index = i;
      row.group = (i % 2 == 0) ? "z4" : "s3";
      row.degree = deg;
      row.lhs_d1 = rep.lhs_d1;
      row.lhs_d2 = rep.lhs_d2;
      row.rhs_circle = rep.rhs_circle;
      row.rhs_shift = rep.rhs_shift;
      row.margin = rep.margin;
      row.violated = rep.violated;
      rows->push_back(row);
    }
  }
  b.push("matsaev.p2-inequality", violations == 0 && min_margin >= -1e-8 * o.tol_scale,
       min_margin, -1e-8, "max_s |P(phi(s))| <= sup_{|z|=1} |P(z)|");

  return b.done();
}

SuiteResult run_truncation(const ExpOptions& o, std::vector<TruncationRow>* table) {
  SuiteBuilder b("truncation");
  NormOptions no = norm_opts(o);

  std::vector<int> sizes = o.quick ? std::vector<int>{1, 2, 4, 8, 16}
                                   : std::vector<int>{1, 2, 4, 8, 16, 32, 64};
  std::vector<TruncationRow> rows = truncation_growth(sizes, no);
  if (table) *table = rows;

  b.push("truncation.n1", std::abs(rows[0].cb_norm - 1.0) <= 1e-7, rows[0].cb_norm, 1.0,
       "1x1 symbol has norm 1");
  {
    bool increasing = true;
    double min_gap = 1e300;
    for (size_t i = 2; i < rows.size(); ++i) {
      double gap = rows[i].cb_norm - rows[i - 1].cb_norm;
      min_gap = std::min(min_gap, gap);
      if (gap <= 1e-6) increasing = false;
    }
    b.push("truncation.strictly-increasing", increasing, min_gap, 1e-6,
         "norm grows strictly beyond n = 2");
  }
  {
    bool ok = true;
    double worst = -1e300;
    for (const auto& row : rows) {
      worst = std::max(worst, row.cb_norm - row.sqrt_n);
      if (!row.s2_bound_ok) ok = false;
    }
    b.push("truncation.s2-comparison", ok, worst, 0.0,
         "sup norm bounded by n^{1/2} times the S^2 multiplier norm");
  }
  {
    int n = sizes.back();
    ComplexMatrix a = triangular_symbol(n);
    std::vector<int> tail = {n - 3, n - 2, n - 1};
    SchurLimitReport rep = schur_limit_criterion(a, tail, tail);
    b.push("truncation.limit-criterion", rep.gap == 1.0, rep.gap, 1.0,
         "iterated-limit gap of the triangular symbol");
  }
  {
    ComplexMatrix c(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) c(i, j) = 0.5;
    std::vector<int> tail = {3, 4, 5};
    SchurLimitReport rep = schur_limit_criterion(c, tail, tail);
    b.push("truncation.limit-constant", rep.gap == 0.0, rep.gap, 0.0,
         "constant symbols have gap 0");
  }

  return b.done();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "dec-axioms", "projections", "cocycle",  "schur-dec",   "modulus",
      "property-p", "matsaev",     "truncation", "unitary-row"};
  return names;
}

SuiteResult run_suite(const std::string& name, const ExpOptions& opts) {
  if (name == "unitary-row") return run_unitary_row(opts);
  if (name == "dec-axioms") return run_dec_axioms(opts);
  if (name == "projections") return run_projections(opts);
  if (name == "cocycle") return run_cocycle(opts);
  if (name == "schur-dec") return run_schur_dec(opts);
  if (name == "modulus") return run_modulus(opts);
  if (name == "property-p") return run_property_p(opts);
  if (name == "matsaev") return run_matsaev(opts, nullptr);
  if (name == "truncation") return run_truncation(opts, nullptr);
  fail(ErrorCode::InvalidArgument, "unknown suite: " + name);
}

Report run_report(const ExpOptions& opts) {
  Timer tm;
  Report rep;
  rep.suites.push_back(run_unitary_row(opts));
  rep.suites.push_back(run_dec_axioms(opts));
  rep.suites.push_back(run_projections(opts));
  rep.suites.push_back(run_cocycle(opts));
  rep.suites.push_back(run_schur_dec(opts));
  rep.suites.push_back(run_modulus(opts));
  rep.suites.push_back(run_property_p(opts));
  rep.suites.push_back(run_matsaev(opts, &rep.matsaev_table));
  rep.suites.push_back(run_truncation(opts, &rep.truncation_table));
  rep.wall_seconds = tm.seconds();
  return rep;
}

namespace {

json assertions_to_json(const SuiteResult& r) {
  json out = json::array();
  for (const auto& a : r.assertions) {
    json j;
    j["id"] = a.id;
    j["pass"] = a.pass;
    j["value"] = a.value;
    j["bound"] = a.bound;
    j["detail"] = a.detail;
    j["seconds"] = a.seconds;
    out.push_back(j);
  }
  return out;
}

json options_to_json(const ExpOptions& o) {
  json j;
  j["seed"] = o.seed;
  j["trials"] = o.trials;
  j["restarts"] = o.restarts;
  j["sdp_tol"] = o.sdp_tol;
  j["sdp_maxiter"] = o.sdp_maxiter;
  j["tol_scale"] = o.tol_scale;
  j["quick"] = o.quick;
  return j;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::string suite_to_json(const SuiteResult& r, const ExpOptions& opts) {
  json j;
  j["command"] = "verify";
  j["suite"] = r.suite;
  j["parameters"] = options_to_json(opts);
  j["inputs_digest"] = fnv1a(r.suite + "/" + options_to_json(opts).dump());
  j["assertions"] = assertions_to_json(r);
  j["pass"] = r.passed();
  j["wall_seconds"] = r.wall_seconds;
  j["seed"] = opts.seed;
  return j.dump(2);
}

std::string report_to_json(const Report& r, const ExpOptions& opts) {
  json j;
  j["command"] = "report";
  j["parameters"] = options_to_json(opts);
  j["inputs_digest"] = fnv1a(options_to_json(opts).dump());
  j["seed"] = opts.seed;
  json suites = json::array();
  for (const auto& s : r.suites) {
    json js;
    js["suite"] = s.suite;
    js["pass"] = s.passed();
    js["wall_seconds"] = s.wall_seconds;
    js["assertions"] = assertions_to_json(s);
    suites.push_back(js);
  }
  j["suites"] = suites;
  json trows = json::array();
  for (const auto& row : r.truncation_table)
    trows.push_back({{"n", row.n},
                     {"cb_norm", row.cb_norm},
                     {"sqrt_n", row.sqrt_n},
                     {"s2_bound_ok", row.s2_bound_ok}});
  json mrows = json::array();
  for (const auto& row : r.matsaev_table)
    mrows.push_back({{"pair", row.pair_index},
                     {"group", row.group},
                     {"degree", row.degree},
                     {"lhs_d1", row.lhs_d1},
                     {"lhs_d2", row.lhs_d2},
                     {"rhs_circle", row.rhs_circle},
                     {"rhs_shift", row.rhs_shift},
                     {"margin", row.margin},
                     {"violated", row.violated}});
  j["tables"] = {{"truncation", trows}, {"matsaev", mrows}};
  j["pass"] = r.passed();
  j["wall_seconds"] = r.wall_seconds;
  return j.dump(2);
}

std::string truncation_csv(const Report& r) {
  std::ostringstream os;
  os << "n,cb_norm,sqrt_n,s2_bound_ok\n";
  os.precision(17);
  for (const auto& row : r.truncation_table)
    os << row.n << "," << row.cb_norm << "," << row.sqrt_n << ","
       << (row.s2_bound_ok ? 1 : 0) << "\n";
  return os.str();
}

std::string matsaev_csv(const Report& r) {
  std::ostringstream os;
  os << "pair,group,degree,lhs_d1,lhs_d2,rhs_circle,rhs_shift,margin,violated\n";
  os.precision(17);
  for (const auto& row : r.matsaev_table)
    os << row.pair_index << "," << row.group << "," << row.degree << "," << row.lhs_d1
       << "," << row.lhs_d2 << "," << row.rhs_circle << "," << row.rhs_shift << ","
       << row.margin << "," << (row.violated ? 1 : 0) << "\n";
  return os.str();
}

void write_report_files(const Report& r, const ExpOptions& opts,
                        const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_file(out_dir + "/report.json", report_to_json(r, opts));
  write_file(out_dir + "/truncation.csv", truncation_csv(r));
  write_file(out_dir + "/matsaev.csv", matsaev_csv(r));
}

}  // namespace declab
