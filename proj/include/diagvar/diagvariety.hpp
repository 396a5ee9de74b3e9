#pragma once

// The matrix of diagonals D(X), whose j-th column is the main diagonal of
// X^(j-1), its determinant P(X), the standard specializations of the generic
// matrix, and exact checks of the structural identities P satisfies.
//
// Sizes n and matrix indices in this header are 1-based where they name
// variables x_i_j, matching the variable names.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "diagvar/fpurity.hpp"
#include "diagvar/polymatrix.hpp"
#include "diagvar/polyring.hpp"

namespace diagvar {

inline constexpr std::size_t kMaxDiagSize = 7;
inline constexpr std::size_t kMaxGenericDiagSize = 5;

enum class SpecLabel { KillS, KillS0, Tilde, Sop, Custom };
enum class TildeMode { Row, Column, Both };

std::string to_string(SpecLabel label);
std::string to_string(TildeMode mode);
std::optional<SpecLabel> parse_spec_label(std::string_view text);
std::optional<TildeMode> parse_tilde_mode(std::string_view text);

struct LabeledSpecialization {
  SpecLabel label = SpecLabel::Custom;
  std::optional<TildeMode> mode;
  Specialization map;
};

/// Entry (i,j) is x_i_j; context is VarContext::matrix(n).
PolyMatrix generic_matrix(std::size_t n, CoefficientDomain dom);

/// Entry (i,j) = (M^(j-1))_ii. Throws GuardError for n > kMaxDiagSize.
PolyMatrix diag_matrix(const PolyMatrix& m);

/// det(diag_matrix(m)). A matrix with no zero entry counts as generic and is
/// limited to kMaxGenericDiagSize.
MvPolynomial compute_P(const PolyMatrix& m, bool force = false);
/// Only the terms of compute_P(m) within the per-variable exponent bound.
MvPolynomial compute_P_bounded(const PolyMatrix& m,
                               const std::vector<std::uint32_t>& bound);

/// KillS: zero x_i_j with i + j >= n + 1 (on and below the anti-diagonal).
/// KillS0: zero x_i_j with i + j >= n + 2 (strictly below).
/// Tilde: zero the last row and/or column except x_n_n.
/// Sop: KillS, plus x_k_l -> x_1_1 for k + l <= n, (k,l) != (1,1).
/// Throws Error for Custom, or when mode is given iff label != Tilde.
LabeledSpecialization build_specialization(
    std::size_t n, SpecLabel label, std::optional<TildeMode> mode = {});

/// Applies a specialization to the entries of m.
PolyMatrix specialize(const PolyMatrix& m, const LabeledSpecialization& s);

/// prod_{i=1}^{n-1} prod_{j=1}^{n-i} x_i_j: the product of the entries
/// strictly above the anti-diagonal, in VarContext::matrix(n).
Monomial antidiag_monomial(std::size_t n);

/// Variables x_i_j with i + j <= n, row-major.
VarContext surviving_context(std::size_t n);

struct IdentitySides {
  MvPolynomial lhs;
  MvPolynomial rhs;
  bool holds() const { return lhs == rhs; }
};

/// P(X~) against P(X0) * c_{X0}(x_n_n), with X~ the Tilde(mode)
/// specialization and X0 the leading (n-1)-block of the generic matrix.
IdentitySides lemma2_sides(std::size_t n, TildeMode mode, bool force = false);
bool verify_lemma2(std::size_t n, TildeMode mode, bool force = false);

/// P(X~~) against P(X~0) * (-1)^((n-2)(n-1)/2) * prod_{i<n} x_{i,n-i}, where
/// X~~ zeroes the last row and column and everything on or below the
/// anti-diagonal of the leading block, and X~0 is the (n-1)-block with its
/// strict lower anti-triangle zeroed.
IdentitySides induction_sides(std::size_t n, bool force = false);
bool verify_induction_identity(std::size_t n, bool force = false);
/// (-1)^((n-2)(n-1)/2), the sign used by induction_sides.
int induction_stated_sign(std::size_t n);
/// The sign s with P(X~~) = s * P(X~0) * prod x_{i,n-i}, or nullopt if the
/// two sides are not equal up to sign.
std::optional<int> induction_observed_sign(const IdentitySides& sides,
                                           std::size_t n);

/// Exact Z coefficient of antidiag_monomial(n) in P specialized by KillS or
/// KillS0.
Integer antidiag_unit_coeff(std::size_t n, SpecLabel spec,
                            bool force = false);

struct SopNormalForm {
  int sign = 0;
  std::uint64_t exponent = 0;
};

/// P under the Sop specialization, required to be sign * x_1_1^(n(n-1)/2).
/// Throws Error if the result is not of that form.
SopNormalForm sop_normal_form(std::size_t n, bool force = false);

/// P specialized by KillS, restricted to surviving_context(n) and decided by
/// Fedder's criterion over F_p.
FedderVerdict check_fpure(std::size_t n, std::uint32_t p, bool force = false);

/// Admissible sizes and primes for the verification operations. Each throws
/// GuardError naming the guard. Passing force = true to an operation skips
/// these checks but not the hard limits of det / char_poly / diag_matrix.
void guard_lemma2(std::size_t n);
void guard_induction(std::size_t n);
void guard_antidiag(std::size_t n);
void guard_sop(std::size_t n);
void guard_fpure(std::size_t n, std::uint32_t p);

}  // namespace diagvar
