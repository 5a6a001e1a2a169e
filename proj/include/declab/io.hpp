#ifndef DECLAB_IO_HPP
#define DECLAB_IO_HPP

#include <string>

#include "declab/group.hpp"
#include "declab/pnorm.hpp"
#include "declab/sdp.hpp"
#include "declab/superop.hpp"

namespace declab {

// File formats (all JSON):
//   matrix   {"rows": n, "cols": m, "re": [...], "im": [...]}   row-major
//   superop  {"in_dim": n, "out_dim": m, "choi": <matrix>}
//   group    {"order": n, "cayley": [[...]],
//             "cocycle_re": [[...]], "cocycle_im": [[...]]}      cocycle optional
//   symbol   {"kind": "fourier"|"schur", "values": ...}

std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);

std::string superop_to_json(const SuperOperator& t);
SuperOperator superop_from_json(const std::string& text);

std::string group_to_json(const GroupAlgebra& alg);
GroupAlgebra group_from_json(const std::string& text);

struct SymbolFile {
  bool is_fourier = false;
  FourierSymbol fourier;
  ComplexMatrix schur;
};
std::string symbol_to_json(const SymbolFile& s);
SymbolFile symbol_from_json(const std::string& text);

std::string estimate_to_json(const NormEstimate& e);
NormEstimate estimate_from_json(const std::string& text);

// Regression snapshots of solver inputs and outputs.
std::string sdp_problem_to_json(const sdp::Problem& p);
std::string sdp_solution_to_json(const sdp::Solution& s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace declab

#endif
