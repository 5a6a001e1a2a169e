// Exercises the shared-library surface the way an external client would:
// everything through declab.h, values cross-checked against the file formats.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

#include "declab.h"

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("options defaults and version") {
  declab_options o;
  declab_options_init(&o);
  CHECK(o.seed == 42);
  CHECK(o.restarts == 64);
  CHECK(o.sdp_maxiter == 500);
  CHECK(o.p_is_inf == 1);
  CHECK(std::strlen(declab_version()) > 0);
}

TEST_CASE("matrix round trip and parser validation") {
  double re[4] = {1, 2, 3, 4};
  double im[4] = {0, -1, 0.5, 0};
  declab_matrix* m = nullptr;
  REQUIRE(declab_matrix_create(2, 2, re, im, &m) == DECLAB_OK);
  CHECK(declab_matrix_rows(m) == 2);

  std::string path = temp_path("declab_mat.json");
  REQUIRE(declab_matrix_save(m, path.c_str()) == DECLAB_OK);
  declab_matrix* back = nullptr;
  REQUIRE(declab_matrix_load(path.c_str(), &back) == DECLAB_OK);
  double r = 0, i = 0;
  REQUIRE(declab_matrix_get(back, 0, 1, &r, &i) == DECLAB_OK);
  CHECK(r == 2.0);
  CHECK(i == -1.0);
  declab_matrix_free(m);
  declab_matrix_free(back);

  // entry count mismatch must be rejected
  declab_matrix* bad = nullptr;
  const char* text = "{\"rows\": 2, \"cols\": 2, \"re\": [1, 2, 3]}";
  CHECK(declab_matrix_parse(text, &bad) == DECLAB_ERR_PARSE);
  CHECK(std::strlen(declab_last_error()) > 0);

  declab_matrix* missing = nullptr;
  CHECK(declab_matrix_load("/nonexistent/no.json", &missing) == DECLAB_ERR_IO);
}

TEST_CASE("schatten norm and exponent validation through the C surface") {
  double re[4] = {3, 0, 0, 4};
  declab_matrix* m = nullptr;
  REQUIRE(declab_matrix_create(2, 2, re, nullptr, &m) == DECLAB_OK);
  declab_options o;
  declab_options_init(&o);
  o.p_is_inf = 0;
  o.p_value = 2.0;
  double v = 0;
  REQUIRE(declab_schatten_norm(m, &o, &v) == DECLAB_OK);
  CHECK(v == doctest::Approx(5.0));
  o.p_value = 0.5;
  CHECK(declab_schatten_norm(m, &o, &v) == DECLAB_ERR_INVALID_P);
  declab_matrix_free(m);
}

TEST_CASE("norms of the transpose through the C surface") {
  declab_superop* tr = nullptr;
  REQUIRE(declab_superop_transpose_map(2, &tr) == DECLAB_OK);
  declab_options o;
  declab_options_init(&o);
  double dec = 0, cb = 0;
  declab_superop* v1 = nullptr;
  declab_superop* v2 = nullptr;
  REQUIRE(declab_dec_norm_inf(tr, &o, &dec, &v1, &v2) == DECLAB_OK);
  REQUIRE(declab_cb_norm_inf(tr, &o, &cb) == DECLAB_OK);
  CHECK(dec == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(cb == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(declab_superop_in_dim(v1) == 2);

  int cp = 1;
  double lam = 0;
  REQUIRE(declab_superop_is_cp(tr, 1e-8, &cp, &lam) == DECLAB_OK);
  CHECK(cp == 0);
  CHECK(lam == doctest::Approx(-1.0).epsilon(1e-8));

  std::string path = temp_path("declab_superop.json");
  REQUIRE(declab_superop_save(tr, path.c_str()) == DECLAB_OK);
  declab_superop* back = nullptr;
  REQUIRE(declab_superop_load(path.c_str(), &back) == DECLAB_OK);
  CHECK(declab_superop_in_dim(back) == 2);
  declab_superop_free(tr);
  declab_superop_free(back);
  declab_superop_free(v1);
  declab_superop_free(v2);
}

TEST_CASE("groups, fourier multipliers and symbol files") {
  declab_group* g = nullptr;
  REQUIRE(declab_group_cyclic(2, &g) == DECLAB_OK);
  CHECK(declab_group_order(g) == 2);

  double re[2] = {1.0, -1.0};
  declab_superop* m = nullptr;
  REQUIRE(declab_superop_fourier(g, re, nullptr, &m) == DECLAB_OK);
  int cp = 0;
  REQUIRE(declab_superop_is_cp(m, 1e-8, &cp, nullptr) == DECLAB_OK);
  CHECK(cp == 1);

  declab_options o;
  declab_options_init(&o);
  double dec = 0;
  REQUIRE(declab_dec_norm_inf(m, &o, &dec, nullptr, nullptr) == DECLAB_OK);
  CHECK(dec == doctest::Approx(1.0).epsilon(1e-6));
  declab_superop_free(m);
  declab_group_free(g);

  // group file with a cocycle table
  const char* text =
      "{\"order\": 2, \"cayley\": [[0,1],[1,0]],"
      " \"cocycle_re\": [[1,1],[1,-1]], \"cocycle_im\": [[0,0],[0,0]]}";
  declab_group* tg = nullptr;
  REQUIRE(declab_group_parse(text, &tg) == DECLAB_OK);
  CHECK(declab_group_order(tg) == 2);
  declab_group_free(tg);

  declab_group* bad = nullptr;
  const char* badtext = "{\"order\": 2, \"cayley\": [[0,0],[1,1]]}";
  CHECK(declab_group_parse(badtext, &bad) == DECLAB_ERR_INVALID_GROUP);
}

TEST_CASE("schur norms and amplified estimates") {
  double re[4] = {1, 1, 0, 1};
  declab_matrix* a = nullptr;
  REQUIRE(declab_matrix_create(2, 2, re, nullptr, &a) == DECLAB_OK);
  declab_options o;
  declab_options_init(&o);
  double v = 0;
  REQUIRE(declab_schur_cb_norm(a, &o, &v) == DECLAB_OK);
  CHECK(v > 1.0);
  CHECK(v <= 2.0);

  declab_superop* m = nullptr;
  REQUIRE(declab_superop_schur(a, &m) == DECLAB_OK);
  o.p_is_inf = 0;
  o.p_value = 2.0;
  o.restarts = 4;
  double lower = 0;
  REQUIRE(declab_pq_norm_lower(m, &o, 1, &lower) == DECLAB_OK);
  CHECK(lower <= v + 1e-6);
  declab_superop_free(m);
  declab_matrix_free(a);
}

TEST_CASE("suite runner and dec-norm report") {
  declab_options o;
  declab_options_init(&o);
  o.quick = 1;
  o.trials = 4;
  o.restarts = 4;
  declab_report* rep = nullptr;
  REQUIRE(declab_run_suite("modulus", &o, &rep) == DECLAB_OK);
  CHECK(declab_report_passed(rep) == 1);
  std::string text = declab_report_json(rep);
  CHECK(text.find("assertions") != std::string::npos);
  CHECK(text.find("modulus") != std::string::npos);
  declab_report_free(rep);

  declab_report* none = nullptr;
  CHECK(declab_run_suite("no-such-suite", &o, &none) == DECLAB_ERR_INVALID_ARGUMENT);

  // dec-norm backend on a written file
  declab_superop* id = nullptr;
  REQUIRE(declab_superop_identity(2, &id) == DECLAB_OK);
  std::string path = temp_path("declab_idmap.json");
  REQUIRE(declab_superop_save(id, path.c_str()) == DECLAB_OK);
  declab_superop_free(id);
  declab_report* drep = nullptr;
  REQUIRE(declab_dec_norm_report(path.c_str(), &o, nullptr, &drep) == DECLAB_OK);
  std::string dj = declab_report_json(drep);
  CHECK(dj.find("\"dec_norm\": 1.0") != std::string::npos);
  declab_report_free(drep);
}

TEST_CASE("finite exponents through dec-norm: multipliers only") {
  declab_options o;
  declab_options_init(&o);
  o.p_is_inf = 0;
  o.p_value = 1.5;
  o.restarts = 4;

  // a Schur multiplier file: allowed, and the value matches the sup level
  double re[4] = {1, 1, 0, 1};
  declab_matrix* a = nullptr;
  REQUIRE(declab_matrix_create(2, 2, re, nullptr, &a) == DECLAB_OK);
  declab_superop* m = nullptr;
  REQUIRE(declab_superop_schur(a, &m) == DECLAB_OK);
  std::string mp = temp_path("declab_schur_tri.json");
  REQUIRE(declab_superop_save(m, mp.c_str()) == DECLAB_OK);
  declab_report* rep = nullptr;
  REQUIRE(declab_dec_norm_report(mp.c_str(), &o, nullptr, &rep) == DECLAB_OK);
  std::string j = declab_report_json(rep);
  CHECK(j.find("amplified_lower_bound") != std::string::npos);
  declab_report_free(rep);
  declab_superop_free(m);
  declab_matrix_free(a);

  // a general map with finite p is an input error
  declab_superop* tr = nullptr;
  REQUIRE(declab_superop_transpose_map(2, &tr) == DECLAB_OK);
  std::string tp = temp_path("declab_tr_for_p.json");
  REQUIRE(declab_superop_save(tr, tp.c_str()) == DECLAB_OK);
  declab_superop_free(tr);
  declab_report* rep2 = nullptr;
  CHECK(declab_dec_norm_report(tp.c_str(), &o, nullptr, &rep2) ==
        DECLAB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("replaying a seed reproduces every numeric result field") {
  declab_options o;
  declab_options_init(&o);
  o.quick = 1;
  o.trials = 5;
  o.restarts = 4;
  o.seed = 20260101;
  std::string first, second;
  for (std::string* out : {&first, &second}) {
    declab_report* rep = nullptr;
    REQUIRE(declab_run_suite("schur-dec", &o, &rep) == DECLAB_OK);
    *out = declab_report_json(rep);
    declab_report_free(rep);
  }
  // strip the timing fields, everything else must match byte for byte
  auto strip = [](std::string s) {
    for (const char* key : {"\"seconds\":", "\"wall_seconds\":"}) {
      size_t pos = 0;
      while ((pos = s.find(key, pos)) != std::string::npos) {
        size_t end = s.find_first_of(",}\n", pos);
        s.erase(pos, end - pos);
      }
    }
    return s;
  };
  CHECK(strip(first) == strip(second));
}
