#pragma once

// Square matrices over the polynomial ring.

#include <cstddef>
#include <vector>

#include "diagvar/polyring.hpp"

namespace diagvar {

inline constexpr std::size_t kMaxDetSize = 8;
inline constexpr std::size_t kMaxCharPolySize = 7;

class PolyMatrix {
 public:
  /// n x n zero matrix. Throws Error if n == 0.
  PolyMatrix(std::size_t n, VarContext ctx, CoefficientDomain dom);

  static PolyMatrix identity(std::size_t n, VarContext ctx,
                             CoefficientDomain dom);
  /// Validates that the grid is square and entries share context and domain.
  static PolyMatrix from_rows(std::vector<std::vector<MvPolynomial>> rows);

  std::size_t size() const { return n_; }
  const VarContext& context() const { return ctx_; }
  const CoefficientDomain& domain() const { return dom_; }

  // 0-based indices.
  const MvPolynomial& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  void set(std::size_t i, std::size_t j, MvPolynomial value);

  /// Leading m x m block.
  PolyMatrix leading_block(std::size_t m) const;

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t n_;
  VarContext ctx_;
  CoefficientDomain dom_;
  std::vector<MvPolynomial> entries_;
};

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix mat_pow(const PolyMatrix& a, std::uint64_t k);

/// Laplace expansion by rows with memoization over the set of used columns.
/// Throws GuardError for n > kMaxDetSize.
MvPolynomial det(const PolyMatrix& a);
/// Same expansion, with every partial product truncated to the per-variable
/// exponent bound. Yields exactly truncate(det(a), bound).
MvPolynomial det_bounded(const PolyMatrix& a,
                         const std::vector<std::uint32_t>& bound);

/// det(t*I - A) in the context of A extended by the variable t.
/// Throws GuardError for n > kMaxCharPolySize.
MvPolynomial char_poly(const PolyMatrix& a);

/// Entrywise substitution.
PolyMatrix substitute(const PolyMatrix& m, const Specialization& s);
PolyMatrix rebase(const PolyMatrix& m, const VarContext& ctx);
PolyMatrix change_domain(const PolyMatrix& m, CoefficientDomain dom);

/// Evaluates the univariate polynomial q(t) (t a variable of q's context,
/// other variables treated as scalars) at the square matrix m, i.e.
/// sum_k c_k(x) m^k. Requires q's context to extend m's by t.
PolyMatrix evaluate_at_matrix(const MvPolynomial& q, const PolyMatrix& m);

/// Matrix JSON: {"n": int, "entries": [[poly-string,...],...]}.
nlohmann::json to_json(const PolyMatrix& m);
PolyMatrix poly_matrix_from_json(const nlohmann::json& j, const VarContext& ctx,
                                 CoefficientDomain dom);

}  // namespace diagvar
