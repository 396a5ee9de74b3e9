#include "diagvar/polymatrix.hpp"

#include <bit>
#include <cstdint>
#include <optional>

namespace diagvar {

PolyMatrix::PolyMatrix(std::size_t n, VarContext ctx, CoefficientDomain dom)
    : n_(n), ctx_(std::move(ctx)), dom_(dom) {
  if (n == 0) throw Error("matrix size must be at least 1");
  entries_.assign(n * n, MvPolynomial(ctx_, dom_));
}

PolyMatrix PolyMatrix::identity(std::size_t n, VarContext ctx,
                                CoefficientDomain dom) {
  PolyMatrix m(n, ctx, dom);
  for (std::size_t i = 0; i < n; ++i) {
    m.entries_[i * n + i] = MvPolynomial::constant(ctx, dom, 1);
  }
  return m;
}

PolyMatrix PolyMatrix::from_rows(std::vector<std::vector<MvPolynomial>> rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw Error("matrix must have at least one row");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error("row " + std::to_string(i + 1) + " has " +
                  std::to_string(rows[i].size()) + " entries, expected " +
                  std::to_string(n));
    }
  }
  PolyMatrix m(n, rows[0][0].context(), rows[0][0].domain());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, std::move(rows[i][j]));
  }
  return m;
}

void PolyMatrix::set(std::size_t i, std::size_t j, MvPolynomial value) {
  if (!(value.context() == ctx_) || !(value.domain() == dom_)) {
    throw MismatchError("matrix entry does not share the matrix context/domain");
  }
  entries_.at(i * n_ + j) = std::move(value);
}

PolyMatrix PolyMatrix::leading_block(std::size_t m) const {
  if (m == 0 || m > n_) throw Error("leading block size out of range");
  PolyMatrix b(m, ctx_, dom_);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) b.entries_[i * m + j] = (*this)(i, j);
  }
  return b;
}

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.size() != b.size()) throw MismatchError("matrix sizes differ");
  if (!(a.context() == b.context()) || !(a.domain() == b.domain())) {
    throw MismatchError("matrices live in different contexts or domains");
  }
  const std::size_t n = a.size();
  PolyMatrix c(n, a.context(), a.domain());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      MvPolynomial s(a.context(), a.domain());
      for (std::size_t k = 0; k < n; ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        s += a(i, k) * b(k, j);
      }
      c.set(i, j, std::move(s));
    }
  }
  return c;
}

PolyMatrix mat_pow(const PolyMatrix& a, std::uint64_t k) {
  PolyMatrix result = PolyMatrix::identity(a.size(), a.context(), a.domain());
  PolyMatrix base = a;
  for (std::uint64_t e = k; e > 0; e >>= 1) {
    if (e & 1) result = mat_mul(result, base);
    if (e > 1) base = mat_mul(base, base);
  }
  return result;
}

namespace {

// Row r is expanded against every column not in the subset S used by the
// rows above it. The sign of placing row r in column c is (-1)^(number of
// columns in S to the right of c), which accumulates to the permutation sign.
MvPolynomial subset_det(const PolyMatrix& a,
                        const std::vector<std::uint32_t>* bound) {
  const std::size_t n = a.size();
  if (n > kMaxDetSize) {
    throw GuardError("determinant size guard exceeded: n = " +
                     std::to_string(n) + " > " + std::to_string(kMaxDetSize));
  }
  const auto mul = [&](const MvPolynomial& x, const MvPolynomial& y) {
    return bound ? multiply_bounded(x, y, *bound) : x * y;
  };
  const std::size_t states = std::size_t{1} << n;
  std::vector<std::optional<MvPolynomial>> dp(states);
  dp[0] = MvPolynomial::constant(a.context(), a.domain(), 1);
  if (bound) dp[0] = truncate(*dp[0], *bound);

  for (std::size_t row = 0; row < n; ++row) {
    std::vector<std::optional<MvPolynomial>> next(states);
    for (std::size_t s = 0; s < states; ++s) {
      if (!dp[s] || static_cast<std::size_t>(std::popcount(s)) != row) continue;
      if (dp[s]->is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (s & (std::size_t{1} << c)) continue;
        const auto& entry = a(row, c);
        if (entry.is_zero()) continue;
        const auto right = std::popcount(s >> (c + 1));
        MvPolynomial prod = mul(*dp[s], entry);
        if (right % 2 == 1) prod = -prod;
        auto& slot = next[s | (std::size_t{1} << c)];
        if (slot) {
          *slot += prod;
        } else {
          slot = std::move(prod);
        }
      }
    }
    dp = std::move(next);
  }
  auto& full = dp[states - 1];
  return full ? std::move(*full) : MvPolynomial(a.context(), a.domain());
}

}  // namespace

MvPolynomial det(const PolyMatrix& a) { return subset_det(a, nullptr); }

MvPolynomial det_bounded(const PolyMatrix& a,
                         const std::vector<std::uint32_t>& bound) {
  if (bound.size() != a.context().size()) {
    throw MismatchError("exponent bound arity does not match context");
  }
  PolyMatrix truncated(a.size(), a.context(), a.domain());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      truncated.set(i, j, truncate(a(i, j), bound));
    }
  }
  return subset_det(truncated, &bound);
}

MvPolynomial char_poly(const PolyMatrix& a) {
  const std::size_t n = a.size();
  if (n > kMaxCharPolySize) {
    throw GuardError("characteristic polynomial size guard exceeded: n = " +
                     std::to_string(n) + " > " +
                     std::to_string(kMaxCharPolySize));
  }
  const VarContext ctx = a.context().with_variable("t");
  const auto t = MvPolynomial::variable(ctx, a.domain(), "t");
  PolyMatrix m(n, ctx, a.domain());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      MvPolynomial e = -rebase(a(i, j), ctx);
      if (i == j) e += t;
      m.set(i, j, std::move(e));
    }
  }
  return det(m);
}

PolyMatrix substitute(const PolyMatrix& m, const Specialization& s) {
  const VarContext target = s.target.value_or(m.context());
  PolyMatrix out(m.size(), target, m.domain());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      out.set(i, j, substitute(m(i, j), s));
    }
  }
  return out;
}

PolyMatrix rebase(const PolyMatrix& m, const VarContext& ctx) {
  PolyMatrix out(m.size(), ctx, m.domain());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      out.set(i, j, rebase(m(i, j), ctx));
    }
  }
  return out;
}

PolyMatrix change_domain(const PolyMatrix& m, CoefficientDomain dom) {
  PolyMatrix out(m.size(), m.context(), dom);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      out.set(i, j, change_domain(m(i, j), dom));
    }
  }
  return out;
}

PolyMatrix evaluate_at_matrix(const MvPolynomial& q, const PolyMatrix& m) {
  const auto t_index = q.context().index_of("t");
  if (!t_index) throw MismatchError("polynomial has no variable t");
  const VarContext& mctx = m.context();
  const std::size_t n = m.size();

  // Group q by the power of t; each coefficient is rebased into m's context.
  std::vector<MvPolynomial> coeffs;
  for (const auto& [mono, c] : q.terms()) {
    const auto k = mono[*t_index];
    Monomial rest = mono;
    rest[*t_index] = 0;
    auto term = rebase(MvPolynomial::monomial(q.context(), q.domain(), rest, c), mctx);
    if (coeffs.size() <= k) coeffs.resize(k + 1, MvPolynomial(mctx, m.domain()));
    coeffs[k] += term;
  }
  PolyMatrix result(n, mctx, m.domain());
  PolyMatrix power = PolyMatrix::identity(n, mctx, m.domain());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) power = mat_mul(power, m);
    if (coeffs[k].is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        result.set(i, j, result(i, j) + coeffs[k] * power(i, j));
      }
    }
  }
  return result;
}

nlohmann::json to_json(const PolyMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(format_poly(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n", m.size()}, {"entries", rows}};
}

PolyMatrix poly_matrix_from_json(const nlohmann::json& j, const VarContext& ctx,
                                 CoefficientDomain dom) {
  if (!j.is_object()) throw ParseError("matrix JSON must be an object");
  if (!j.contains("n") || !j["n"].is_number_unsigned()) {
    throw ParseError("field \"n\" must be a positive integer");
  }
  const auto n = j["n"].get<std::size_t>();
  if (n == 0) throw ParseError("field \"n\" must be a positive integer");
  if (!j.contains("entries") || !j["entries"].is_array()) {
    throw ParseError("field \"entries\" must be an array of rows");
  }
  const auto& rows = j["entries"];
  if (rows.size() != n) {
    throw ParseError("field \"entries\" has " + std::to_string(rows.size()) +
                     " rows, expected " + std::to_string(n));
  }
  std::vector<std::vector<MvPolynomial>> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != n) {
      throw ParseError("row " + std::to_string(i + 1) + " must have " +
                       std::to_string(n) + " entries");
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (!row[k].is_string()) {
        throw ParseError("entry (" + std::to_string(i + 1) + "," +
                         std::to_string(k + 1) + ") must be a string");
      }
      try {
        grid[i].push_back(parse_poly(row[k].get<std::string>(), ctx, dom));
      } catch (const ParseError& e) {
        throw ParseError("entry (" + std::to_string(i + 1) + "," +
                         std::to_string(k + 1) + "): " + e.what());
      }
    }
  }
  return PolyMatrix::from_rows(std::move(grid));
}

}  // namespace diagvar
