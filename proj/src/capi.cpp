#include "declab.h"

#include <cstring>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "declab/experiments.hpp"
#include "declab/io.hpp"
#include "declab/norms.hpp"
#include "declab/pnorm.hpp"

using namespace declab;

struct declab_matrix {
  ComplexMatrix m;
};
struct declab_superop {
  SuperOperator t;
};
struct declab_group {
  GroupAlgebra alg;
};
struct declab_report {
  std::string json_text;
  bool passed;
};

namespace {

thread_local std::string g_last_error;

declab_status map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return DECLAB_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return DECLAB_ERR_DIMENSION;
    case ErrorCode::NotHermitian: return DECLAB_ERR_NOT_HERMITIAN;
    case ErrorCode::NoConvergence: return DECLAB_ERR_NO_CONVERGENCE;
    case ErrorCode::InvalidP: return DECLAB_ERR_INVALID_P;
    case ErrorCode::NotSquare: return DECLAB_ERR_NOT_SQUARE;
    case ErrorCode::NotASubgroup: return DECLAB_ERR_NOT_A_SUBGROUP;
    case ErrorCode::InvalidGroup: return DECLAB_ERR_INVALID_GROUP;
    case ErrorCode::InvalidCocycle: return DECLAB_ERR_INVALID_COCYCLE;
    case ErrorCode::NotDiagonalInput: return DECLAB_ERR_NOT_DIAGONAL_INPUT;
    case ErrorCode::ParseError: return DECLAB_ERR_PARSE;
    case ErrorCode::IoError: return DECLAB_ERR_IO;
    case ErrorCode::SolverFailure: return DECLAB_ERR_SOLVER;
    case ErrorCode::AssertionFailure: return DECLAB_ERR_ASSERTION;
  }
  return DECLAB_ERR_UNKNOWN;
}

template <typename F>
declab_status guarded(F&& f) {
  try {
    f();
    return DECLAB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DECLAB_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return DECLAB_ERR_UNKNOWN;
  }
}

ExpOptions to_exp_options(const declab_options* o) {
  ExpOptions e;
  if (!o) return e;
  e.seed = o->seed;
  e.trials = o->trials;
  e.restarts = o->restarts;
  e.sdp_tol = o->sdp_tol;
  e.sdp_maxiter = o->sdp_maxiter;
  e.tol_scale = o->tol_scale;
  e.quick = o->quick != 0;
  return e;
}

NormOptions to_norm_options(const declab_options* o) {
  NormOptions n;
  if (!o) return n;
  n.solver.tol_gap_abs = o->sdp_tol;
  n.solver.tol_gap_rel = o->sdp_tol * 10.0;
  n.solver.max_iter = o->sdp_maxiter;
  return n;
}

PExp to_pexp(const declab_options* o) {
  if (!o || o->p_is_inf) return PExp::inf();
  return PExp::finite(o->p_value);
}

}  // namespace

extern "C" {

void declab_options_init(declab_options* opts) {
  if (!opts) return;
  opts->seed = 42;
  opts->trials = 0;
  opts->restarts = 64;
  opts->sdp_tol = 1e-8;
  opts->sdp_maxiter = 500;
  opts->tol_scale = 1.0;
  opts->quick = 0;
  opts->p_value = 0.0;
  opts->p_is_inf = 1;
}

const char* declab_last_error(void) { return g_last_error.c_str(); }
const char* declab_version(void) { return "0.1.0"; }

declab_status declab_matrix_create(int rows, int cols, const double* re,
                                   const double* im, declab_matrix** out) {
  return guarded([&] {
    if (!out || !re) fail(ErrorCode::InvalidArgument, "null argument");
    ComplexMatrix m(rows, cols);
    for (size_t i = 0; i < m.size(); ++i)
      m.data()[i] = cplx(re[i], im ? im[i] : 0.0);
    if (!m.all_finite()) fail(ErrorCode::InvalidArgument, "non-finite entries");
    *out = new declab_matrix{std::move(m)};
  });
}

declab_status declab_matrix_load(const char* path, declab_matrix** out) {
  return guarded([&] {
    if (!out || !path) fail(ErrorCode::InvalidArgument, "null argument");
    *out = new declab_matrix{matrix_from_json(read_file(path))};
  });
}

declab_status declab_matrix_parse(const char* json_text, declab_matrix** out) {
  return guarded([&] {
    if (!out || !json_text) fail(ErrorCode::InvalidArgument, "null argument");
    *out = new declab_matrix{matrix_from_json(json_text)};
  });
}

declab_status declab_matrix_save(const declab_matrix* m, const char* path) {
  return guarded([&] {
    if (!m || !path) fail(ErrorCode::InvalidArgument, "null argument");
    write_file(path, matrix_to_json(m->m));
  });
}

void declab_matrix_free(declab_matrix* m) { delete m; }
int declab_matrix_rows(const declab_matrix* m) { return m ? m->m.rows() : 0; }
int declab_matrix_cols(const declab_matrix* m) { return m ? m->m.cols() : 0; }

declab_status declab_matrix_get(const declab_matrix* m, int i, int j, double* re,
                                double* im) {
  return guarded([&] {
    if (!m || i < 0 || i >= m->m.rows() || j < 0 || j >= m->m.cols())
      fail(ErrorCode::InvalidArgument, "index out of range");
    cplx z = m->m(i, j);
    if (re) *re = z.real();
    if (im) *im = z.imag();
  });
}

declab_status declab_schatten_norm(const declab_matrix* m, const declab_options* opts,
                                   double* out) {
  return guarded([&] {
    if (!m || !out) fail(ErrorCode::InvalidArgument, "null argument");
    *out = schatten_norm(m->m, to_pexp(opts));
  });
}

declab_status declab_superop_load(const char* path, declab_superop** out) {
  return guarded([&] {
    if (!out || !path) fail(ErrorCode::InvalidArgument, "null argument");
    *out = new declab_superop{superop_from_json(read_file(path))};
  });
}

declab_status declab_superop_parse(const char* json_text, declab_superop** out) {
  return guarded([&] {
    if (!out || !json_text) fail(ErrorCode::InvalidArgument, "null argument");
    *out = new declab_superop{superop_from_json(json_text)};
  });
}

declab_status declab_superop_save(const declab_superop* t, const char* path) {
  return guarded([&] {
    if (!t || !path) fail(ErrorCode::InvalidArgument, "null argument");
    write_file(path, superop_to_json(t->t));
  });
}

declab_status declab_superop_identity(int n, declab_superop** out) {
  return guarded([&] {
    if (!out) fail(ErrorCode::InvalidArgument, "null argument");
    *out = new declab_superop{SuperOperator::identity(n)};
  });
}

declab_status declab_superop_transpose_map(int n, declab_superop** out) {
  return guarded([&] {
    if (!out) fail(ErrorCode::InvalidArgument, "null argument");
    *out = new declab_superop{SuperOperator::transpose_map(n)};
  });
}

declab_status declab_superop_schur(const declab_matrix* symbol, declab_superop** out) {
  return guarded([&] {
    if (!out || !symbol) fail(ErrorCode::InvalidArgument, "null argument");
    *out = new declab_superop{schur_multiplier(symbol->m)};
  });
}

declab_status declab_superop_fourier(const declab_group* alg, const double* phi_re,
                                     const double* phi_im, declab_superop** out) {
  return guarded([&] {
    if (!out || !alg || !phi_re) fail(ErrorCode::InvalidArgument, "null argument");
    int n = alg->alg.dim();
    FourierSymbol phi(n);
    for (int i = 0; i < n; ++i) phi[i] = cplx(phi_re[i], phi_im ? phi_im[i] : 0.0);
    *out = new declab_superop{fourier_multiplier(alg->alg, phi)};
  });
}

void declab_superop_free(declab_superop* t) { delete t; }
int declab_superop_in_dim(const declab_superop* t) { return t ? t->t.in_dim() : 0; }
int declab_superop_out_dim(const declab_superop* t) { return t ? t->t.out_dim() : 0; }

declab_status declab_superop_apply(const declab_superop* t, const declab_matrix* x,
                                   declab_matrix** out) {
  return guarded([&] {
    if (!t || !x || !out) fail(ErrorCode::InvalidArgument, "null argument");
    *out = new declab_matrix{t->t.apply(x->m)};
  });
}

declab_status declab_superop_is_cp(const declab_superop* t, double tol, int* cp,
                                   double* min_eigenvalue) {
  return guarded([&] {
    if (!t) fail(ErrorCode::InvalidArgument, "null argument");
    CpCertificate cert = is_cp(t->t, tol > 0 ? tol : 1e-8);
    if (cp) *cp = cert.cp ? 1 : 0;
    if (min_eigenvalue) *min_eigenvalue = cert.min_eigenvalue;
  });
}

declab_status declab_dec_norm_inf(const declab_superop* t, const declab_options* opts,
                                  double* value, declab_superop** v1,
                                  declab_superop** v2) {
  return guarded([&] {
    if (!t || !value) fail(ErrorCode::InvalidArgument, "null argument");
    DecResult r = dec_norm_inf(t->t, to_norm_options(opts));
    *value = r.value;
    if (v1) *v1 = new declab_superop{r.v1};
    if (v2) *v2 = new declab_superop{r.v2};
  });
}

declab_status declab_cb_norm_inf(const declab_superop* t, const declab_options* opts,
                                 double* value) {
  return guarded([&] {
    if (!t || !value) fail(ErrorCode::InvalidArgument, "null argument");
    *value = cb_norm_inf(t->t, to_norm_options(opts));
  });
}

declab_status declab_dec_norm_commutative(const declab_superop* t,
                                          const declab_options* opts, double* value) {
  return guarded([&] {
    if (!t || !value) fail(ErrorCode::InvalidArgument, "null argument");
    *value = dec_norm_from_commutative(t->t, to_norm_options(opts));
  });
}

declab_status declab_schur_cb_norm(const declab_matrix* symbol,
                                   const declab_options* opts, double* value) {
  return guarded([&] {
    if (!symbol || !value) fail(ErrorCode::InvalidArgument, "null argument");
    *value = schur_cb_norm(symbol->m, to_norm_options(opts));
  });
}

declab_status declab_pq_norm_lower(const declab_superop* t, const declab_options* opts,
                                   int d, double* value) {
  return guarded([&] {
    if (!t || !value) fail(ErrorCode::InvalidArgument, "null argument");
    int restarts = opts ? opts->restarts : 64;
    std::uint64_t seed = opts ? opts->seed : 42;
    *value = pq_norm_lower(t->t, to_pexp(opts), d, restarts, seed).value;
  });
}

declab_status declab_group_load(const char* path, declab_group** out) {
  return guarded([&] {
    if (!out || !path) fail(ErrorCode::InvalidArgument, "null argument");
    *out = new declab_group{group_from_json(read_file(path))};
  });
}

declab_status declab_group_parse(const char* json_text, declab_group** out) {
  return guarded([&] {
    if (!out || !json_text) fail(ErrorCode::InvalidArgument, "null argument");
    *out = new declab_group{group_from_json(json_text)};
  });
}

declab_status declab_group_cyclic(int n, declab_group** out) {
  return guarded([&] {
    if (!out) fail(ErrorCode::InvalidArgument, "null argument");
    *out = new declab_group{
        GroupAlgebra(FiniteGroup::cyclic(n), TwoCocycle::trivial(n))};
  });
}

void declab_group_free(declab_group* g) { delete g; }
int declab_group_order(const declab_group* g) { return g ? g->alg.dim() : 0; }

declab_status declab_run_suite(const char* suite, const declab_options* opts,
                               declab_report** out) {
  return guarded([&] {
    if (!suite || !out) fail(ErrorCode::InvalidArgument, "null argument");
    ExpOptions eo = to_exp_options(opts);
    SuiteResult r = run_suite(suite, eo);
    auto* rep = new declab_report;
    rep->json_text = suite_to_json(r, eo);
    rep->passed = r.passed();
    *out = rep;
  });
}

declab_status declab_run_report(const declab_options* opts, const char* out_dir,
                                declab_report** out) {
  return guarded([&] {
    if (!out) fail(ErrorCode::InvalidArgument, "null argument");
    ExpOptions eo = to_exp_options(opts);
    Report r = run_report(eo);
    if (out_dir) write_report_files(r, eo, out_dir);
    auto* rep = new declab_report;
    rep->json_text = report_to_json(r, eo);
    rep->passed = r.passed();
    *out = rep;
  });
}

declab_status declab_dec_norm_report(const char* map_path, const declab_options* opts,
                                     const char* out_dir, declab_report** out) {
  return guarded([&] {
    if (!map_path || !out) fail(ErrorCode::InvalidArgument, "null argument");
    SuperOperator t = superop_from_json(read_file(map_path));
    NormOptions no = to_norm_options(opts);
    nlohmann::json j;
    j["command"] = "dec-norm";
    j["map"] = map_path;
    if (opts && !opts->p_is_inf) {
      // finite exponents are only meaningful for multipliers, where the
      // decomposable norm does not depend on the exponent
      bool is_schur = t.in_dim() == t.out_dim() &&
                      (schur_multiplier(project_schur(t)).choi() - t.choi())
                              .max_abs() <= 1e-12;
      if (!is_schur)
        fail(ErrorCode::InvalidArgument,
             "finite p is supported for multiplier maps only");
      double dec = schur_cb_norm(project_schur(t), no);
      j["p"] = opts->p_value;
      j["dec_norm"] = dec;
      j["dec_norm_note"] = "multiplier: value holds at every exponent";
      NormEstimate lower = pq_norm_lower(t, to_pexp(opts), 2,
                                         opts->restarts > 0 ? opts->restarts : 16,
                                         opts->seed);
      j["amplified_lower_bound"] = lower.value;
      j["cb_norm"] = cb_norm_inf(t, no);
      auto* rep0 = new declab_report;
      rep0->json_text = j.dump(2);
      rep0->passed = true;
      *out = rep0;
      return;
    }
    double dec, cb;
    std::string w1_path, w2_path;
    if (t.has_diagonal_input_support(1e-12)) {
      dec = dec_norm_from_commutative(t, no);
      j["program"] = "commutative";
      j["generic_value"] = dec_norm_inf(t, no).value;
    } else {
      DecResult r = dec_norm_inf(t, no);
      dec = r.value;
      j["program"] = "general";
      if (out_dir) {
        std::filesystem::create_directories(out_dir);
        w1_path = std::string(out_dir) + "/witness_v1.json";
        w2_path = std::string(out_dir) + "/witness_v2.json";
        write_file(w1_path, superop_to_json(r.v1));
        write_file(w2_path, superop_to_json(r.v2));
      }
    }
    cb = cb_norm_inf(t, no);
    j["dec_norm"] = dec;
    j["cb_norm"] = cb;
    if (!w1_path.empty()) {
      j["witness_v1"] = w1_path;
      j["witness_v2"] = w2_path;
    }
    auto* rep = new declab_report;
    rep->json_text = j.dump(2);
    rep->passed = true;
    *out = rep;
  });
}

const char* declab_report_json(const declab_report* r) {
  return r ? r->json_text.c_str() : "";
}

int declab_report_passed(const declab_report* r) { return r && r->passed ? 1 : 0; }

void declab_report_free(declab_report* r) { delete r; }

}  // extern "C"
