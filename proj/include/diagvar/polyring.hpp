#pragma once

// Exact sparse multivariate polynomials over Z and Z/p.
//
// A polynomial is a sorted list of (monomial, coefficient) pairs in
// graded-lexicographic descending order. The zero polynomial has no terms and
// no stored coefficient is ever zero. Over Z/p coefficients are kept in [0, p).

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace diagvar {

using Integer = mpz_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text or JSON did not match the expected grammar / schema.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  explicit ParseError(const std::string& what)
      : Error(what), position_(npos) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Operands live in different variable contexts or coefficient domains, or a
/// variable is not known to the context.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// A computational budget guard was exceeded. Never a silent truncation.
class GuardError : public Error {
 public:
  using Error::Error;
};

bool is_prime(std::uint64_t value);

struct CoefficientDomain {
  enum class Kind { Integers, ModP };

  Kind kind = Kind::Integers;
  std::uint32_t p = 0;

  static CoefficientDomain integers() { return {}; }
  /// Throws Error unless p is a prime in [2, 2^31).
  static CoefficientDomain mod_p(std::uint64_t p);

  bool is_mod_p() const { return kind == Kind::ModP; }
  Integer reduce(Integer value) const;

  friend bool operator==(const CoefficientDomain&,
                         const CoefficientDomain&) = default;
};

std::string to_string(const CoefficientDomain& dom);

/// Ordered list of unique variable names. Copies share storage.
class VarContext {
 public:
  VarContext() : names_(std::make_shared<const std::vector<std::string>>()) {}
  explicit VarContext(std::vector<std::string> names);

  /// x_1_1, x_1_2, ..., x_n_n (row-major), optionally followed by t.
  static VarContext matrix(std::size_t n, bool with_t = false);

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t index) const { return (*names_)[index]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require(std::string_view name) const;

  /// The context with `name` appended, or *this if already present.
  VarContext with_variable(const std::string& name) const;

  friend bool operator==(const VarContext& a, const VarContext& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

std::string matrix_variable_name(std::size_t row, std::size_t col);

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  std::size_t arity() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  std::uint64_t total_degree() const;
  bool is_one() const;
  bool is_squarefree() const;

  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Graded lexicographic: higher total degree first, then lexicographically
/// larger exponent tuple first.
bool grlex_greater(const Monomial& a, const Monomial& b);
/// Graded reverse lexicographic: higher total degree first, then the monomial
/// with the smaller exponent in the last differing variable.
bool grevlex_greater(const Monomial& a, const Monomial& b);

class MvPolynomial {
 public:
  using Term = std::pair<Monomial, Integer>;

  MvPolynomial() = default;
  MvPolynomial(VarContext ctx, CoefficientDomain dom)
      : ctx_(std::move(ctx)), dom_(dom) {}

  static MvPolynomial constant(VarContext ctx, CoefficientDomain dom,
                               const Integer& value);
  static MvPolynomial variable(VarContext ctx, CoefficientDomain dom,
                               std::size_t index);
  static MvPolynomial variable(VarContext ctx, CoefficientDomain dom,
                               std::string_view name);
  static MvPolynomial monomial(VarContext ctx, CoefficientDomain dom,
                               Monomial m, const Integer& coeff = 1);
  /// Combines like terms, reduces mod p and drops zeros.
  static MvPolynomial from_terms(VarContext ctx, CoefficientDomain dom,
                                 std::vector<Term> terms);

  const VarContext& context() const { return ctx_; }
  const CoefficientDomain& domain() const { return dom_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  Integer coefficient_of(const Monomial& m) const;
  /// Common total degree of all terms, nullopt if they differ.
  /// Throws Error on the zero polynomial.
  std::optional<std::uint64_t> homogeneous_degree() const;
  std::uint64_t total_degree() const;
  /// Per-variable maximum exponent.
  std::vector<std::uint32_t> max_exponents() const;

  MvPolynomial operator-() const;
  MvPolynomial& operator+=(const MvPolynomial& other);
  MvPolynomial& operator-=(const MvPolynomial& other);
  MvPolynomial& operator*=(const MvPolynomial& other);
  friend MvPolynomial operator+(MvPolynomial a, const MvPolynomial& b) {
    return a += b;
  }
  friend MvPolynomial operator-(MvPolynomial a, const MvPolynomial& b) {
    return a -= b;
  }
  friend MvPolynomial operator*(const MvPolynomial& a, const MvPolynomial& b);

  friend bool operator==(const MvPolynomial& a, const MvPolynomial& b);

 private:
  friend class TermAccumulator;

  VarContext ctx_;
  CoefficientDomain dom_;
  std::vector<Term> terms_;
};

void require_compatible(const MvPolynomial& a, const MvPolynomial& b);

enum class RingOp { Add, Sub, Mul, Neg };
MvPolynomial ring_arith(const MvPolynomial& f, const MvPolynomial& g,
                        RingOp op);

/// Product with every monomial whose exponent in variable v exceeds
/// bound[v] deleted. Deletion is applied to each partial product.
MvPolynomial multiply_bounded(const MvPolynomial& f, const MvPolynomial& g,
                              const std::vector<std::uint32_t>& bound);
/// Deletes monomials exceeding the per-variable bound.
MvPolynomial truncate(const MvPolynomial& f,
                      const std::vector<std::uint32_t>& bound);

/// f^k, and with a cap every monomial having an exponent >= cap is deleted,
/// eagerly after each multiplication.
MvPolynomial pow_capped(const MvPolynomial& f, std::uint64_t k,
                        std::optional<std::uint32_t> cap);

/// Re-expresses f in `ctx` by matching variable names. Throws MismatchError if
/// a variable that f actually uses is absent from ctx.
MvPolynomial rebase(const MvPolynomial& f, const VarContext& ctx);
/// Same polynomial with coefficients interpreted in `dom` (Z -> Z/p reduces).
MvPolynomial change_domain(const MvPolynomial& f, CoefficientDomain dom);

/// Simultaneous substitution of variables by polynomials. Unassigned variables
/// map to the same-named variable of the target context.
struct Specialization {
  std::map<std::string, MvPolynomial> assignments;
  /// Context of the result; defaults to the context of the input.
  std::optional<VarContext> target;

  bool assigns(const std::string& name) const {
    return assignments.count(name) != 0;
  }
};

MvPolynomial substitute(const MvPolynomial& f, const Specialization& s);

Integer coefficient_of(const MvPolynomial& f, const Monomial& m);

// Text form:
//   poly    := term (('+'|'-') term)*     (leading '-' allowed)
//   term    := integer | integer '*' varpow ('*' varpow)* | varpow ('*' varpow)*
//   varpow  := var ('^' positive-integer)?
//   var     := 'x_' int '_' int | 't'
MvPolynomial parse_poly(std::string_view text, const VarContext& ctx,
                        CoefficientDomain dom);
std::string format_poly(const MvPolynomial& f);
std::string format_monomial(const Monomial& m, const VarContext& ctx);

nlohmann::json to_json(const MvPolynomial& f);
MvPolynomial poly_from_json(const nlohmann::json& j);

}  // namespace diagvar
