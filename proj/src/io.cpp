#include "declab/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace declab {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::ParseError, "invalid JSON");
  return j;
}

json matrix_to_obj(const ComplexMatrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (const auto& z : m.data()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

ComplexMatrix matrix_from_obj(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re"))
    fail(ErrorCode::ParseError, "matrix object needs rows/cols/re");
  int rows = j["rows"].get<int>();
  int cols = j["cols"].get<int>();
  if (rows <= 0 || cols <= 0) fail(ErrorCode::ParseError, "matrix dimensions must be positive");
  auto re = j["re"].get<std::vector<double>>();
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) im = j["im"].get<std::vector<double>>();
  if (re.size() != static_cast<size_t>(rows) * cols || im.size() != re.size())
    fail(ErrorCode::ParseError, "matrix entry count does not match rows*cols");
  ComplexMatrix m(rows, cols);
  for (size_t i = 0; i < re.size(); ++i) m.data()[i] = cplx(re[i], im[i]);
  if (!m.all_finite()) fail(ErrorCode::ParseError, "matrix has non-finite entries");
  return m;
}

}  // namespace

std::string matrix_to_json(const ComplexMatrix& m) { return matrix_to_obj(m).dump(); }

ComplexMatrix matrix_from_json(const std::string& text) {
  return matrix_from_obj(parse(text));
}

std::string superop_to_json(const SuperOperator& t) {
  json j;
  j["in_dim"] = t.in_dim();
  j["out_dim"] = t.out_dim();
  j["choi"] = matrix_to_obj(t.choi());
  return j.dump();
}

SuperOperator superop_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.contains("in_dim") || !j.contains("out_dim") || !j.contains("choi"))
    fail(ErrorCode::ParseError, "superop object needs in_dim/out_dim/choi");
  int n = j["in_dim"].get<int>();
  int m = j["out_dim"].get<int>();
  ComplexMatrix c = matrix_from_obj(j["choi"]);
  if (c.rows() != n * m || c.cols() != n * m)
    fail(ErrorCode::ParseError, "choi matrix shape does not match dimensions");
  return SuperOperator(n, m, std::move(c));
}

std::string group_to_json(const GroupAlgebra& alg) {
  json j;
  int n = alg.group().order();
  j["order"] = n;
  std::vector<std::vector<int>> cayley(n, std::vector<int>(n));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) cayley[s][t] = alg.group().mul(s, t);
  j["cayley"] = cayley;
  if (!alg.cocycle().is_trivial()) {
    std::vector<std::vector<double>> re(n, std::vector<double>(n));
    std::vector<std::vector<double>> im(n, std::vector<double>(n));
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        re[s][t] = alg.cocycle()(s, t).real();
        im[s][t] = alg.cocycle()(s, t).imag();
      }
    j["cocycle_re"] = re;
    j["cocycle_im"] = im;
  }
  return j.dump();
}

GroupAlgebra group_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.contains("order") || !j.contains("cayley"))
    fail(ErrorCode::ParseError, "group object needs order/cayley");
  int n = j["order"].get<int>();
  auto cayley = j["cayley"].get<std::vector<std::vector<int>>>();
  if (static_cast<int>(cayley.size()) != n)
    fail(ErrorCode::ParseError, "cayley table size does not match order");
  FiniteGroup g = FiniteGroup::from_table(cayley);
  TwoCocycle sigma = TwoCocycle::trivial(n);
  if (j.contains("cocycle_re")) {
    auto re = j["cocycle_re"].get<std::vector<std::vector<double>>>();
    std::vector<std::vector<double>> im(n, std::vector<double>(n, 0.0));
    if (j.contains("cocycle_im")) im = j["cocycle_im"].get<std::vector<std::vector<double>>>();
    if (static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n)
      fail(ErrorCode::ParseError, "cocycle table size does not match order");
    ComplexMatrix s(n, n);
    for (int a = 0; a < n; ++a) {
      if (static_cast<int>(re[a].size()) != n || static_cast<int>(im[a].size()) != n)
        fail(ErrorCode::ParseError, "cocycle table is not square");
      for (int b = 0; b < n; ++b) s(a, b) = cplx(re[a][b], im[a][b]);
    }
    sigma = TwoCocycle::from_table(g, std::move(s));
  }
  return GroupAlgebra(g, sigma);
}

std::string symbol_to_json(const SymbolFile& s) {
  json j;
  if (s.is_fourier) {
    j["kind"] = "fourier";
    std::vector<double> re, im;
    for (const auto& z : s.fourier) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    j["values"] = {{"re", re}, {"im", im}};
  } else {
    j["kind"] = "schur";
    j["values"] = matrix_to_obj(s.schur);
  }
  return j.dump();
}

SymbolFile symbol_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.contains("kind") || !j.contains("values"))
    fail(ErrorCode::ParseError, "symbol object needs kind/values");
  SymbolFile s;
  std::string kind = j["kind"].get<std::string>();
  if (kind == "fourier") {
    s.is_fourier = true;
    auto re = j["values"]["re"].get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j["values"].contains("im")) im = j["values"]["im"].get<std::vector<double>>();
    if (im.size() != re.size()) fail(ErrorCode::ParseError, "symbol re/im length mismatch");
    for (size_t i = 0; i < re.size(); ++i) s.fourier.push_back(cplx(re[i], im[i]));
  } else if (kind == "schur") {
    s.is_fourier = false;
    s.schur = matrix_from_obj(j["values"]);
  } else {
    fail(ErrorCode::ParseError, "symbol kind must be fourier or schur");
  }
  return s;
}

std::string estimate_to_json(const NormEstimate& e) {
  json j;
  j["value"] = e.value;
  j["p"] = e.p.is_inf() ? json("inf") : json(e.p.value());
  j["d"] = e.d;
  j["restarts"] = e.restarts;
  j["seed"] = e.seed;
  j["converged_restarts"] = e.converged_restarts;
  j["witness"] = matrix_to_obj(e.witness);
  return j.dump();
}

NormEstimate estimate_from_json(const std::string& text) {
  json j = parse(text);
  NormEstimate e;
  e.value = j["value"].get<double>();
  e.p = j["p"].is_string() ? PExp::inf() : PExp::finite(j["p"].get<double>());
  e.d = j["d"].get<int>();
  e.restarts = j["restarts"].get<int>();
  e.seed = j["seed"].get<std::uint64_t>();
  e.converged_restarts = j["converged_restarts"].get<int>();
  e.witness = matrix_from_obj(j["witness"]);
  return e;
}

std::string sdp_problem_to_json(const sdp::Problem& p) {
  json j;
  j["num_vars"] = p.num_vars();
  j["objective"] = p.objective();
  json blocks = json::array();
  for (const auto& blk : p.blocks()) {
    json jb;
    jb["dim"] = blk.dim;
    jb["complex"] = blk.complex_block;
    json cst = json::array();
    for (const auto& e : blk.constant)
      cst.push_back({e.a, e.b, e.v.real(), e.v.imag()});
    jb["constant"] = cst;
    json coeffs = json::array();
    for (const auto& [var, e] : blk.coeffs)
      coeffs.push_back({var, e.a, e.b, e.v.real(), e.v.imag()});
    jb["coeffs"] = coeffs;
    blocks.push_back(jb);
  }
  j["blocks"] = blocks;
  json eqs = json::array();
  for (const auto& [terms, rhs] : p.equalities()) {
    json je;
    je["rhs"] = rhs;
    json ts = json::array();
    for (auto [var, coef] : terms) ts.push_back({var, coef});
    je["terms"] = ts;
    eqs.push_back(je);
  }
  j["equalities"] = eqs;
  return j.dump();
}

std::string sdp_solution_to_json(const sdp::Solution& s) {
  json j;
  switch (s.status) {
    case sdp::SolveStatus::Optimal: j["status"] = "optimal"; break;
    case sdp::SolveStatus::Infeasible: j["status"] = "infeasible"; break;
    case sdp::SolveStatus::MaxIter: j["status"] = "maxiter"; break;
  }
  j["y"] = s.y;
  j["primal_objective"] = s.primal_obj;
  j["dual_objective"] = s.dual_obj;
  j["gap"] = s.gap;
  j["max_violation"] = s.max_violation;
  j["iterations"] = s.iterations;
  return j.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << content;
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace declab
