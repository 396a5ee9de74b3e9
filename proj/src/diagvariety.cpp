#include "diagvar/diagvariety.hpp"

#include <algorithm>
#include <functional>

namespace diagvar {

std::string to_string(SpecLabel label) {
  switch (label) {
    case SpecLabel::KillS:
      return "S";
    case SpecLabel::KillS0:
      return "S0";
    case SpecLabel::Tilde:
      return "tilde";
    case SpecLabel::Sop:
      return "sop";
    case SpecLabel::Custom:
      return "custom";
  }
  return "?";
}

std::string to_string(TildeMode mode) {
  switch (mode) {
    case TildeMode::Row:
      return "row";
    case TildeMode::Column:
      return "column";
    case TildeMode::Both:
      return "both";
  }
  return "?";
}

std::optional<SpecLabel> parse_spec_label(std::string_view text) {
  if (text == "S" || text == "kills" || text == "KillS") return SpecLabel::KillS;
  if (text == "S0" || text == "kills0" || text == "KillS0") return SpecLabel::KillS0;
  if (text == "tilde") return SpecLabel::Tilde;
  if (text == "sop") return SpecLabel::Sop;
  return std::nullopt;
}

std::optional<TildeMode> parse_tilde_mode(std::string_view text) {
  if (text == "row") return TildeMode::Row;
  if (text == "column") return TildeMode::Column;
  if (text == "both") return TildeMode::Both;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Guards

namespace {

void require_range(const char* what, std::size_t n, std::size_t lo,
                   std::size_t hi) {
  if (n < lo || n > hi) {
    throw GuardError(std::string(what) + " size guard: n = " +
                     std::to_string(n) + " outside [" + std::to_string(lo) +
                     ", " + std::to_string(hi) + "]");
  }
}

}  // namespace

void guard_lemma2(std::size_t n) { require_range("lemma2", n, 2, 5); }
void guard_induction(std::size_t n) { require_range("induction", n, 3, 6); }
void guard_antidiag(std::size_t n) { require_range("antidiag", n, 2, 6); }
void guard_sop(std::size_t n) { require_range("sop", n, 2, 6); }

void guard_fpure(std::size_t n, std::uint32_t p) {
  require_range("fedder", n, 2, 5);
  if (p != 2 && p != 3 && p != 5 && p != 7) {
    throw GuardError("fedder prime guard: p = " + std::to_string(p) +
                     " not in {2, 3, 5, 7}");
  }
  if (n == 5 && p == 7) {
    throw GuardError("fedder budget guard: (n, p) = (5, 7) excluded");
  }
}

// ---------------------------------------------------------------------------
// D(X) and P(X)

PolyMatrix generic_matrix(std::size_t n, CoefficientDomain dom) {
  const auto ctx = VarContext::matrix(n);
  PolyMatrix m(n, ctx, dom);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m.set(i, j, MvPolynomial::variable(ctx, dom, i * n + j));
    }
  }
  return m;
}

PolyMatrix diag_matrix(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n > kMaxDiagSize) {
    throw GuardError("diag_matrix size guard exceeded: n = " +
                     std::to_string(n) + " > " + std::to_string(kMaxDiagSize));
  }
  PolyMatrix d(n, m.context(), m.domain());
  PolyMatrix power = PolyMatrix::identity(n, m.context(), m.domain());
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) power = mat_mul(power, m);
    for (std::size_t i = 0; i < n; ++i) d.set(i, j, power(i, i));
  }
  return d;
}

namespace {

void guard_generic(const PolyMatrix& m) {
  if (m.size() <= kMaxGenericDiagSize) return;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m(i, j).is_zero()) return;
    }
  }
  throw GuardError("compute_P generic size guard: a matrix with no zero entry "
                   "is limited to n <= " +
                   std::to_string(kMaxGenericDiagSize));
}

}  // namespace

MvPolynomial compute_P(const PolyMatrix& m, bool force) {
  if (!force) guard_generic(m);
  return det(diag_matrix(m));
}

MvPolynomial compute_P_bounded(const PolyMatrix& m,
                               const std::vector<std::uint32_t>& bound) {
  return det_bounded(diag_matrix(m), bound);
}

// ---------------------------------------------------------------------------
// Specializations

namespace {

using CellRule = std::function<std::optional<MvPolynomial>(std::size_t i, std::size_t j)>;

// Builds the assignment map over VarContext::matrix(n) from a per-cell rule
// on 1-based indices; cells mapped to nullopt are left alone.
Specialization cell_map(std::size_t n, const CellRule& rule) {
  Specialization s;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (auto image = rule(i, j)) {
        s.assignments.emplace(matrix_variable_name(i, j), std::move(*image));
      }
    }
  }
  return s;
}

}  // namespace

LabeledSpecialization build_specialization(std::size_t n, SpecLabel label,
                                           std::optional<TildeMode> mode) {
  if (n == 0) throw Error("specialization size must be at least 1");
  if ((label == SpecLabel::Tilde) != mode.has_value()) {
    throw Error("a tilde mode is required for, and only for, the tilde "
                "specialization");
  }
  const auto ctx = VarContext::matrix(n);
  const auto dom = CoefficientDomain::integers();
  const auto zero = MvPolynomial(ctx, dom);
  const auto x11 = MvPolynomial::variable(ctx, dom, 0);

  LabeledSpecialization out;
  out.label = label;
  out.mode = mode;
  switch (label) {
    case SpecLabel::KillS:
      out.map = cell_map(n, [&](std::size_t i, std::size_t j) {
        return i + j >= n + 1 ? std::optional(zero) : std::nullopt;
      });
      break;
    case SpecLabel::KillS0:
      out.map = cell_map(n, [&](std::size_t i, std::size_t j) {
        return i + j >= n + 2 ? std::optional(zero) : std::nullopt;
      });
      break;
    case SpecLabel::Tilde: {
      const bool row = *mode != TildeMode::Column;
      const bool col = *mode != TildeMode::Row;
      out.map = cell_map(n, [&](std::size_t i, std::size_t j) {
        if (i == n && j == n) return std::optional<MvPolynomial>();
        return (row && i == n) || (col && j == n) ? std::optional(zero)
                                                  : std::nullopt;
      });
      break;
    }
    case SpecLabel::Sop:
      out.map = cell_map(n, [&](std::size_t i, std::size_t j) {
        if (i + j >= n + 1) return std::optional(zero);
        if (i == 1 && j == 1) return std::optional<MvPolynomial>();
        return std::optional(x11);
      });
      break;
    case SpecLabel::Custom:
      throw Error("custom specializations are built by the caller");
  }
  return out;
}

PolyMatrix specialize(const PolyMatrix& m, const LabeledSpecialization& s) {
  return substitute(m, s.map);
}

Monomial antidiag_monomial(std::size_t n) {
  Monomial m(n * n);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j <= n - i; ++j) m[(i - 1) * n + (j - 1)] = 1;
  }
  return m;
}

VarContext surviving_context(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; i + j <= n; ++j) {
      names.push_back(matrix_variable_name(i, j));
    }
  }
  return VarContext(std::move(names));
}

// ---------------------------------------------------------------------------
// Identities

namespace {

// Generic matrix with every cell satisfying `kill` (1-based) set to zero.
PolyMatrix killed_generic(std::size_t n,
                          const std::function<bool(std::size_t, std::size_t)>& kill) {
  PolyMatrix m = generic_matrix(n, CoefficientDomain::integers());
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (kill(i, j)) m.set(i - 1, j - 1, MvPolynomial(m.context(), m.domain()));
    }
  }
  return m;
}

}  // namespace

IdentitySides lemma2_sides(std::size_t n, TildeMode mode, bool force) {
  if (!force) guard_lemma2(n);
  if (n < 2) throw GuardError("lemma2 requires n >= 2");
  const auto dom = CoefficientDomain::integers();
  const PolyMatrix x = generic_matrix(n, dom);
  const PolyMatrix tilde =
      specialize(x, build_specialization(n, SpecLabel::Tilde, mode));
  const PolyMatrix x0 = x.leading_block(n - 1);

  const MvPolynomial c = char_poly(x0);
  Specialization at_xnn;
  at_xnn.assignments.emplace(
      "t", MvPolynomial::variable(c.context(), dom, matrix_variable_name(n, n)));
  at_xnn.target = x.context();

  return {compute_P(tilde, force), compute_P(x0, force) * substitute(c, at_xnn)};
}

bool verify_lemma2(std::size_t n, TildeMode mode, bool force) {
  return lemma2_sides(n, mode, force).holds();
}

IdentitySides induction_sides(std::size_t n, bool force) {
  if (!force) guard_induction(n);
  if (n < 3) throw GuardError("induction identity requires n >= 3");
  const PolyMatrix tt = killed_generic(n, [n](std::size_t i, std::size_t j) {
    return i == n || j == n || i + j >= n + 1;
  });
  const PolyMatrix t0 =
      killed_generic(n, [n](std::size_t i, std::size_t j) { return i + j >= n + 1; })
          .leading_block(n - 1);

  const auto& ctx = tt.context();
  const auto dom = tt.domain();
  Monomial anti(ctx.size());
  for (std::size_t i = 1; i < n; ++i) anti[(i - 1) * n + (n - i - 1)] = 1;
  const Integer sign = induction_stated_sign(n);

  return {compute_P(tt, force),
          compute_P(t0, force) * MvPolynomial::monomial(ctx, dom, anti, sign)};
}

bool verify_induction_identity(std::size_t n, bool force) {
  return induction_sides(n, force).holds();
}

int induction_stated_sign(std::size_t n) {
  return ((n - 2) * (n - 1) / 2) % 2 == 0 ? 1 : -1;
}

std::optional<int> induction_observed_sign(const IdentitySides& sides,
                                           std::size_t n) {
  if (sides.lhs == sides.rhs) return induction_stated_sign(n);
  if (sides.lhs == -sides.rhs) return -induction_stated_sign(n);
  return std::nullopt;
}

Integer antidiag_unit_coeff(std::size_t n, SpecLabel spec, bool force) {
  if (!force) guard_antidiag(n);
  if (spec != SpecLabel::KillS && spec != SpecLabel::KillS0) {
    throw Error("antidiag_unit_coeff accepts the S or S0 specialization only");
  }
  const auto x = generic_matrix(n, CoefficientDomain::integers());
  const auto specialized = specialize(x, build_specialization(n, spec));
  // Only divisors of the target monomial can contribute to its coefficient.
  const Monomial target = antidiag_monomial(n);
  const auto p = compute_P_bounded(specialized, target.exponents());
  return p.coefficient_of(target);
}

SopNormalForm sop_normal_form(std::size_t n, bool force) {
  if (!force) guard_sop(n);
  const auto x = generic_matrix(n, CoefficientDomain::integers());
  const auto p = compute_P(specialize(x, build_specialization(n, SpecLabel::Sop)), force);
  const std::uint64_t expected = n * (n - 1) / 2;
  const auto fail = [&](const std::string& why) {
    return Error("sop normal form defect at n = " + std::to_string(n) + ": " +
                 why + " (got " + format_poly(p) + ")");
  };
  if (p.term_count() != 1) throw fail("not a single term");
  const auto& [m, c] = p.terms().front();
  for (std::size_t v = 1; v < m.arity(); ++v) {
    if (m[v] != 0) throw fail("involves a variable other than x_1_1");
  }
  if (c != 1 && c != -1) throw fail("coefficient is not +-1");
  if (m[0] != expected) {
    throw fail("exponent is not n(n-1)/2 = " + std::to_string(expected));
  }
  return {c == 1 ? 1 : -1, m[0]};
}

FedderVerdict check_fpure(std::size_t n, std::uint32_t p, bool force) {
  if (!force) guard_fpure(n, p);
  const auto x = generic_matrix(n, CoefficientDomain::integers());
  const auto ps = compute_P(specialize(x, build_specialization(n, SpecLabel::KillS)), force);
  const auto f = rebase(ps, surviving_context(n));
  auto verdict = fedder_check(f, p);
  verdict.squarefree_certificate = squarefree_all_variables_shortcut(f);
  return verdict;
}

}  // namespace diagvar
