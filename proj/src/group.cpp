#include "declab/group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace declab {

namespace {

// Pairwise sum: exact for 2^k equal addends, and the accumulation pattern is
// fixed so replays are bit-stable.
cplx pairwise_sum(std::vector<cplx>& buf) {
  size_t n = buf.size();
  if (n == 0) return 0.0;
  while (n > 1) {
    size_t h = (n + 1) / 2;
    for (size_t i = 0; i + h < n; ++i) buf[i] += buf[i + h];
    n = h;
  }
  return buf[0];
}

}  // namespace

void FiniteGroup::validate() const {
  int n = order_;
  if (n < 1 || n > kMaxOrder)
    fail(ErrorCode::InvalidGroup, "group order out of range");
  // Latin square
  for (int s = 0; s < n; ++s) {
    std::vector<bool> row(n, false), col(n, false);
    for (int t = 0; t < n; ++t) {
      int a = mul(s, t), b = mul(t, s);
      if (a < 0 || a >= n || b < 0 || b >= n)
        fail(ErrorCode::InvalidGroup, "cayley entry out of range");
      if (row[a] || col[b]) fail(ErrorCode::InvalidGroup, "cayley table not a Latin square");
      row[a] = col[b] = true;
    }
  }
  // Associativity, exhaustive
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int r = 0; r < n; ++r)
        if (mul(mul(s, t), r) != mul(s, mul(t, r)))
          fail(ErrorCode::InvalidGroup, "cayley table not associative");
  // Identity and inverses consistent
  for (int s = 0; s < n; ++s) {
    if (mul(identity_, s) != s || mul(s, identity_) != s)
      fail(ErrorCode::InvalidGroup, "identity element inconsistent");
    if (mul(s, inverse_[s]) != identity_ || mul(inverse_[s], s) != identity_)
      fail(ErrorCode::InvalidGroup, "inverse table inconsistent");
  }
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& cayley) {
  FiniteGroup g;
  g.order_ = static_cast<int>(cayley.size());
  if (g.order_ < 1 || g.order_ > kMaxOrder)
    fail(ErrorCode::InvalidGroup, "group order out of range");
  g.cayley_.assign(static_cast<size_t>(g.order_) * g.order_, -1);
  for (int s = 0; s < g.order_; ++s) {
    if (static_cast<int>(cayley[s].size()) != g.order_)
      fail(ErrorCode::InvalidGroup, "cayley table not square");
    for (int t = 0; t < g.order_; ++t) g.cayley_[static_cast<size_t>(s) * g.order_ + t] = cayley[s][t];
  }
  // Find the identity.
  g.identity_ = -1;
  for (int e = 0; e < g.order_; ++e) {
    bool ok = true;
    for (int s = 0; s < g.order_ && ok; ++s)
      ok = (g.mul(e, s) == s && g.mul(s, e) == s);
    if (ok) {
      g.identity_ = e;
      break;
    }
  }
  if (g.identity_ < 0) fail(ErrorCode::InvalidGroup, "no identity element");
  g.inverse_.assign(g.order_, -1);
  for (int s = 0; s < g.order_; ++s) {
    for (int t = 0; t < g.order_; ++t)
      if (g.mul(s, t) == g.identity_ && g.mul(t, s) == g.identity_) {
        g.inverse_[s] = t;
        break;
      }
    if (g.inverse_[s] < 0) fail(ErrorCode::InvalidGroup, "missing inverse");
  }
  g.validate();
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int s = 0; s < n; ++s)
    for (int u = 0; u < n; ++u) t[s][u] = (s + u) % n;
  return from_table(t);
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  int na = a.order(), nb = b.order();
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int s = 0; s < na * nb; ++s)
    for (int u = 0; u < na * nb; ++u) {
      int sa = s / nb, sb = s % nb, ua = u / nb, ub = u % nb;
      t[s][u] = a.mul(sa, ua) * nb + b.mul(sb, ub);
    }
  return from_table(t);
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 4)
    fail(ErrorCode::InvalidGroup, "symmetric group supported for n <= 4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  int order = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int s = 0; s < order; ++s)
    for (int u = 0; u < order; ++u) {
      std::vector<int> comp(n);
      for (int i = 0; i < n; ++i) comp[i] = perms[s][perms[u][i]];
      t[s][u] = static_cast<int>(std::find(perms.begin(), perms.end(), comp) - perms.begin());
    }
  return from_table(t);
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elems) const {
  if (elems.empty()) return false;
  std::set<int> h(elems.begin(), elems.end());
  for (int s : h) {
    if (s < 0 || s >= order_) return false;
    for (int t : h)
      if (!h.count(mul(s, t))) return false;
  }
  return true;
}

TwoCocycle TwoCocycle::trivial(int order) {
  ComplexMatrix s(order, order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) s(i, j) = 1.0;
  return TwoCocycle(std::move(s));
}

TwoCocycle TwoCocycle::from_table(const FiniteGroup& g, ComplexMatrix sigma) {
  int n = g.order();
  if (sigma.rows() != n || sigma.cols() != n)
    fail(ErrorCode::InvalidCocycle, "cocycle table has wrong shape");
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (std::abs(std::abs(sigma(s, t)) - 1.0) > 1e-12)
        fail(ErrorCode::InvalidCocycle, "cocycle entries must be unimodular");
  int e = g.identity();
  for (int s = 0; s < n; ++s)
    if (std::abs(sigma(s, e) - cplx(1.0)) > 1e-12 ||
        std::abs(sigma(e, s) - cplx(1.0)) > 1e-12)
      fail(ErrorCode::InvalidCocycle, "cocycle not normalized at the identity");
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int r = 0; r < n; ++r) {
        cplx lhs = sigma(s, t) * sigma(g.mul(s, t), r);
        cplx rhs = sigma(t, r) * sigma(s, g.mul(t, r));
        if (std::abs(lhs - rhs) > 1e-12)
          fail(ErrorCode::InvalidCocycle, "cocycle identity violated");
      }
  return TwoCocycle(std::move(sigma));
}

TwoCocycle TwoCocycle::coboundary(const FiniteGroup& g, const std::vector<cplx>& beta) {
  int n = g.order();
  if (static_cast<int>(beta.size()) != n)
    fail(ErrorCode::InvalidCocycle, "coboundary data has wrong length");
  ComplexMatrix s(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s(a, b) = beta[a] * beta[b] / beta[g.mul(a, b)];
  return from_table(g, std::move(s));
}

TwoCocycle TwoCocycle::pauli() {
  FiniteGroup g = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  ComplexMatrix s(4, 4);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      int xb = x % 2, ya = y / 2;
      s(x, y) = ((xb * ya) % 2 == 0) ? 1.0 : -1.0;
    }
  return from_table(g, std::move(s));
}

bool TwoCocycle::is_trivial(double tol) const {
  for (int i = 0; i < sigma_.rows(); ++i)
    for (int j = 0; j < sigma_.cols(); ++j)
      if (std::abs(sigma_(i, j) - cplx(1.0)) > tol) return false;
  return true;
}

GroupAlgebra::GroupAlgebra(FiniteGroup group, TwoCocycle cocycle)
    : group_(std::move(group)), cocycle_(std::move(cocycle)) {
  int n = group_.order();
  if (cocycle_.order() != n)
    fail(ErrorCode::InvalidCocycle, "cocycle order differs from group order");
  lambdas_.reserve(n);
  for (int s = 0; s < n; ++s) {
    ComplexMatrix l(n, n);
    for (int t = 0; t < n; ++t) l(group_.mul(s, t), t) = cocycle_(s, t);
    lambdas_.push_back(std::move(l));
  }
  // lambda relations hold by construction; verify the product/adjoint/trace
  // relations anyway so a bad table cannot slip through.
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      ComplexMatrix lhs = lambdas_[s] * lambdas_[t];
      ComplexMatrix rhs = lambdas_[group_.mul(s, t)] * cocycle_(s, t);
      if (!lhs.equals(rhs, 1e-12))
        fail(ErrorCode::InvalidCocycle, "lambda product relation violated");
    }
  for (int s = 0; s < n; ++s) {
    ComplexMatrix lhs = lambdas_[s].adjoint();
    ComplexMatrix rhs = lambdas_[group_.inv(s)] * std::conj(cocycle_(s, group_.inv(s)));
    if (!lhs.equals(rhs, 1e-12))
      fail(ErrorCode::InvalidCocycle, "lambda adjoint relation violated");
    cplx tr = trace(lambdas_[s]);
    cplx want = (s == group_.identity()) ? 1.0 : 0.0;
    if (std::abs(tr - want) > 1e-12)
      fail(ErrorCode::InvalidCocycle, "trace relation violated");
  }
}

cplx GroupAlgebra::trace(const ComplexMatrix& x) const {
  int e = group_.identity();
  return x(e, e);
}

SuperOperator fourier_multiplier(const GroupAlgebra& alg, const FourierSymbol& phi) {
  int n = alg.dim();
  if (static_cast<int>(phi.size()) != n)
    fail(ErrorCode::DimensionMismatch, "fourier symbol has wrong length");
  // Choi entry [(i,k),(j,l)] = sum_s phi(s) conj(lambda_s[i,j]) lambda_s[k,l] / n.
  // lambda supports are disjoint permutations, so for fixed (i,j) exactly one
  // s contributes.
  ComplexMatrix c(n * n, n * n);
  for (int s = 0; s < n; ++s) {
    const ComplexMatrix& l = alg.lambda(s);
    for (int j = 0; j < n; ++j) {
      int i = alg.group().mul(s, j);
      cplx left = phi[s] * std::conj(l(i, j));
      for (int v = 0; v < n; ++v) {
        int u = alg.group().mul(s, v);
        c(i * n + u, j * n + v) = left * l(u, v) / static_cast<double>(n);
      }
    }
  }
  return SuperOperator(n, n, std::move(c));
}

SuperOperator conditional_expectation(const GroupAlgebra& alg) {
  FourierSymbol unit(alg.dim(), 1.0);
  return fourier_multiplier(alg, unit);
}

SuperOperator schur_multiplier(const ComplexMatrix& a) {
  if (!a.square()) fail(ErrorCode::NotSquare, "schur symbol must be square");
  int n = a.rows();
  ComplexMatrix c(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i * n + i, j * n + j) = a(i, j);
  return SuperOperator(n, n, std::move(c));
}

ComplexMatrix project_schur(const SuperOperator& t) {
  if (t.in_dim() != t.out_dim())
    fail(ErrorCode::NotSquare, "project_schur: map must be square");
  int n = t.in_dim();
  ComplexMatrix phi(n, n);
  // tr(T(e_ij) e_ij^*) = T(e_ij)[i,j], one Choi entry.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) phi(i, j) = t.choi()(i * n + i, j * n + j);
  return phi;
}

FourierSymbol project_fourier(const GroupAlgebra& alg, const SuperOperator& t,
                              const std::vector<int>& subgroup) {
  int n = alg.dim();
  if (t.in_dim() != n || t.out_dim() != n)
    fail(ErrorCode::DimensionMismatch, "project_fourier: map dimension differs");
  if (!alg.group().is_subgroup(subgroup))
    fail(ErrorCode::NotASubgroup, "element list is not closed under the group law");
  FourierSymbol phi(n, 0.0);
  for (int s : subgroup) {
    const ComplexMatrix& l = alg.lambda(s);
    // phi(s) = tr_n(T(lambda_s) lambda_s^*); contract directly against the
    // Choi entries and accumulate pairwise.
    std::vector<cplx> terms;
    terms.reserve(static_cast<size_t>(n) * n);
    for (int v = 0; v < n; ++v) {
      int u = alg.group().mul(s, v);
      for (int j = 0; j < n; ++j) {
        int i = alg.group().mul(s, j);
        cplx term = l(i, j) * t.choi()(i * n + u, j * n + v) * std::conj(l(u, v));
        terms.push_back(term);
      }
    }
    phi[s] = pairwise_sum(terms) / static_cast<double>(n);
  }
  return phi;
}

ComplexMatrix kernel_positive_type_gram(
    const GroupAlgebra& alg, const std::vector<std::vector<FourierSymbol>>& symbols,
    const std::vector<std::pair<int, int>>& points) {
  size_t isz = symbols.size();
  for (const auto& row : symbols) {
    if (row.size() != isz)
      fail(ErrorCode::DimensionMismatch, "symbol family must be square");
    for (const auto& sym : row)
      if (static_cast<int>(sym.size()) != alg.dim())
        fail(ErrorCode::DimensionMismatch, "symbol defined on wrong group");
  }
  int k = static_cast<int>(points.size());
  ComplexMatrix gram(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      auto [ia, sa] = points[a];
      auto [ib, sb] = points[b];
      if (ia < 0 || ia >= static_cast<int>(isz) || ib < 0 || ib >= static_cast<int>(isz))
        fail(ErrorCode::DimensionMismatch, "point index outside symbol family");
      int g = alg.group().mul(alg.group().inv(sa), sb);
      gram(a, b) = symbols[ia][ib][g];
    }
  return gram;
}

}  // namespace declab
