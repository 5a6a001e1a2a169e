#ifndef DECLAB_GROUP_HPP
#define DECLAB_GROUP_HPP

#include <string>
#include <vector>

#include "declab/superop.hpp"

namespace declab {

// Finite group given by its Cayley table. Order is capped so validation can
// stay exhaustive.
class FiniteGroup {
 public:
  static constexpr int kMaxOrder = 64;

  static FiniteGroup from_table(const std::vector<std::vector<int>>& cayley);
  static FiniteGroup cyclic(int n);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  static FiniteGroup symmetric(int n);  // n <= 4

  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int s, int t) const { return cayley_[static_cast<size_t>(s) * order_ + t]; }
  int inv(int s) const { return inverse_[s]; }
  const std::vector<int>& table() const { return cayley_; }

  // Closure under the group law (finiteness then gives identity/inverses).
  bool is_subgroup(const std::vector<int>& elems) const;

 private:
  FiniteGroup() : order_(0), identity_(-1) {}
  void validate() const;

  int order_;
  int identity_;
  std::vector<int> cayley_;   // row-major, cayley[s*order+t] = s*t
  std::vector<int> inverse_;
};

// Normalized unimodular 2-cocycle: sigma(s,e) = sigma(e,s) = 1 and
// sigma(s,t) sigma(st,r) = sigma(t,r) sigma(s,tr).
class TwoCocycle {
 public:
  static TwoCocycle trivial(int order);
  static TwoCocycle from_table(const FiniteGroup& g, ComplexMatrix sigma);
  // sigma(s,t) = beta(s) beta(t) / beta(st) for unimodular beta, beta(e)=1.
  static TwoCocycle coboundary(const FiniteGroup& g, const std::vector<cplx>& beta);
  // On Z2 x Z2 (as cyclic(2) x cyclic(2)): sigma((a,b),(a',b')) = (-1)^{b a'}.
  // The twisted algebra it produces on the four-element group is a factor.
  static TwoCocycle pauli();

  int order() const { return sigma_.rows(); }
  cplx operator()(int s, int t) const { return sigma_(s, t); }
  const ComplexMatrix& table() const { return sigma_; }
  bool is_trivial(double tol = 0.0) const;

 private:
  explicit TwoCocycle(ComplexMatrix sigma) : sigma_(std::move(sigma)) {}
  ComplexMatrix sigma_;
};

// Twisted left regular representation plus the trace.
class GroupAlgebra {
 public:
  GroupAlgebra(FiniteGroup group, TwoCocycle cocycle);

  const FiniteGroup& group() const { return group_; }
  const TwoCocycle& cocycle() const { return cocycle_; }
  int dim() const { return group_.order(); }
  const ComplexMatrix& lambda(int s) const { return lambdas_[s]; }

  // tau(x) = <eps_e, x eps_e>
  cplx trace(const ComplexMatrix& x) const;

 private:
  FiniteGroup group_;
  TwoCocycle cocycle_;
  std::vector<ComplexMatrix> lambdas_;
};

inline GroupAlgebra build_algebra(const FiniteGroup& g, const TwoCocycle& sigma) {
  return GroupAlgebra(g, sigma);
}

using FourierSymbol = std::vector<cplx>;

// Canonical extension of the multiplier lambda_s -> phi(s) lambda_s to the
// full matrix algebra: x -> sum_s phi(s) tr_n(lambda_s^* x) lambda_s with
// tr_n the normalized matrix trace.
SuperOperator fourier_multiplier(const GroupAlgebra& alg, const FourierSymbol& phi);

// Trace-preserving conditional expectation onto span{lambda_s} (unit symbol).
SuperOperator conditional_expectation(const GroupAlgebra& alg);

SuperOperator schur_multiplier(const ComplexMatrix& a);

// Symbol recovered entrywise: phi_ij = tr(T(e_ij) e_ij^*).
ComplexMatrix project_schur(const SuperOperator& t);

// phi(s) = tr_n(T(lambda_s) lambda_s^*) for s in the subgroup, 0 elsewhere.
FourierSymbol project_fourier(const GroupAlgebra& alg, const SuperOperator& t,
                              const std::vector<int>& subgroup);

// Gram matrix (k,l) -> phi_{i_k i_l}(s_k^{-1} s_l) of an I x I family of
// symbols at the given (index, element) points.
ComplexMatrix kernel_positive_type_gram(
    const GroupAlgebra& alg, const std::vector<std::vector<FourierSymbol>>& symbols,
    const std::vector<std::pair<int, int>>& points);

}  // namespace declab

#endif
