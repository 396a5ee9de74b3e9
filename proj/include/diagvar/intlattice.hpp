#pragma once

// Exact integer linear algebra: determinants, unimodular inverses, powers,
// diagonals of powers and the "lattice equals Z^n" predicate.

#include <cstddef>
#include <span>
#include <vector>

#include "diagvar/polyring.hpp"

namespace diagvar {

inline constexpr std::size_t kMaxIntDetSize = 64;
inline constexpr std::size_t kMaxLemma4Size = 10;
inline constexpr std::size_t kMaxLemma5Size = 12;

using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  /// n x n zero matrix; n >= 1.
  explicit IntMatrix(std::size_t n);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);

  std::size_t size() const { return n_; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  IntVector column(std::size_t j) const;
  IntVector diagonal() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<Integer> a_;
};

std::string format_matrix(const IntMatrix& a);

/// Fraction-free (Bareiss) elimination. Throws GuardError for n > 64.
Integer int_det(const IntMatrix& a);

/// Exact inverse of a matrix with determinant +-1. Throws Error otherwise.
IntMatrix unimodular_inverse(const IntMatrix& a);

/// A^k; negative k requires |det A| = 1.
IntMatrix int_pow(const IntMatrix& a, long k);

/// Column j is the main diagonal of A^(exponents[j]).
IntMatrix diag_of_powers_matrix(const IntMatrix& a,
                                std::span<const long> exponents);

/// True iff the vectors generate Z^n as a lattice. All vectors must have the
/// same length n >= 1.
bool spans_Zn(std::span<const IntVector> vectors);

/// The n x n matrix with ones on and above the anti-diagonal, zeros below.
IntMatrix anti_triangular_ones(std::size_t n);
/// Tridiagonal matrix: 1 at (1,1), 2 on the rest of the diagonal, -1 on the
/// off-diagonals.
IntMatrix tridiagonal_square_form(std::size_t n);
/// Expected value of (B^(2j-1))_{kl} (1-based) for B = A_n^{-1}, or nullopt
/// where the band formula leaves the entry unspecified.
std::optional<int> odd_power_band_entry(std::size_t n, std::size_t j,
                                        std::size_t k, std::size_t l);

struct Lemma4Result {
  bool a = false;  ///< |det D(A)| = 1
  bool b = false;  ///< diagonals of A^0..A^(n-1) span Z^n
  bool d = false;  ///< n powers with exponents in [-n, 2n] span Z^n
};

/// Requires |det A| = 1 and n <= 10.
Lemma4Result lemma4_check(const IntMatrix& a);

struct Lemma5Result {
  bool b2 = false;
  bool odd = false;
  bool span = false;
  Integer p_of_a;
  /// First mismatch of the band formula, if any: "j=.., (k,l): got .., want ..".
  std::string mismatch;
};

/// B = A_n^{-1}. Checks B^2 against the tridiagonal form, B^(2j-1) against the
/// band formula for j = 1..j_max, that the diagonals of B, B^3, .., B^(2n-1)
/// span Z^n, and records det D(A_n). Requires 2 <= n <= 12, j_max <= n-1.
Lemma5Result verify_lemma5_formulas(std::size_t n, std::size_t j_max);

/// IntMatrix JSON: {"n": int, "entries": [[int | decimal-string, ...], ...]}.
nlohmann::json to_json(const IntMatrix& a);
IntMatrix int_matrix_from_json(const nlohmann::json& j);

}  // namespace diagvar
