#pragma once

// Shared generators and naive oracles for the unit and acceptance tests.
// Oracles deliberately avoid the library's arithmetic: they work on a plain
// std::map from exponent vectors to coefficients.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "diagvar/diagvariety.hpp"
#include "diagvar/intlattice.hpp"
#include "diagvar/polymatrix.hpp"
#include "diagvar/polyring.hpp"

namespace testsupport {

using diagvar::CoefficientDomain;
using diagvar::Integer;
using diagvar::IntMatrix;
using diagvar::Monomial;
using diagvar::MvPolynomial;
using diagvar::PolyMatrix;
using diagvar::VarContext;

using Exps = std::vector<std::uint32_t>;

// Naive polynomial: exponent vector -> coefficient, zeros removed.
struct Naive {
  std::size_t arity = 0;
  std::uint32_t p = 0;  // 0 = integers
  std::map<Exps, Integer> terms;

  void add(const Exps& e, const Integer& c) {
    Integer& slot = terms[e];
    slot += c;
    if (p) {
      slot %= p;
      if (slot < 0) slot += p;
    }
    if (slot == 0) terms.erase(e);
  }
};

inline Naive to_naive(const MvPolynomial& f) {
  Naive n;
  n.arity = f.context().size();
  n.p = f.domain().is_mod_p() ? f.domain().p : 0;
  for (const auto& [m, c] : f.terms()) n.add(m.exponents(), c);
  return n;
}

inline Naive naive_add(const Naive& a, const Naive& b, int sign = 1) {
  Naive r = a;
  for (const auto& [e, c] : b.terms) r.add(e, sign * c);
  return r;
}

inline Naive naive_mul(const Naive& a, const Naive& b) {
  Naive r;
  r.arity = a.arity;
  r.p = a.p;
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      Exps e(a.arity);
      for (std::size_t i = 0; i < a.arity; ++i) e[i] = ea[i] + eb[i];
      r.add(e, ca * cb);
    }
  }
  return r;
}

inline Naive naive_one(std::size_t arity, std::uint32_t p) {
  Naive r;
  r.arity = arity;
  r.p = p;
  r.add(Exps(arity, 0), 1);
  return r;
}

inline bool same(const MvPolynomial& f, const Naive& g) {
  return to_naive(f).terms == g.terms;
}

// Permutation-expansion determinant on naive polynomials.
inline Naive naive_det(const std::vector<std::vector<Naive>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Naive total;
  total.arity = m[0][0].arity;
  total.p = m[0][0].p;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Naive prod = naive_one(total.arity, total.p);
    for (std::size_t i = 0; i < n; ++i) prod = naive_mul(prod, m[i][perm[i]]);
    total = naive_add(total, prod, inversions % 2 ? -1 : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline std::vector<std::vector<Naive>> to_naive(const PolyMatrix& m) {
  std::vector<std::vector<Naive>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i].push_back(to_naive(m(i, j)));
  return out;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long range(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng_);
  }

  // Random polynomial with up to max_terms terms, exponents <= max_exp.
  MvPolynomial poly(const VarContext& ctx, CoefficientDomain dom,
                    int max_terms = 4, int max_exp = 2, long coeff = 5) {
    std::vector<MvPolynomial::Term> terms;
    const int count = static_cast<int>(range(0, max_terms));
    for (int t = 0; t < count; ++t) {
      Monomial m(ctx.size());
      for (std::size_t v = 0; v < ctx.size(); ++v) m[v] = range(0, max_exp);
      terms.emplace_back(m, Integer(range(-coeff, coeff)));
    }
    return MvPolynomial::from_terms(ctx, dom, std::move(terms));
  }

  PolyMatrix poly_matrix(std::size_t n, const VarContext& ctx,
                         CoefficientDomain dom, int max_terms = 2) {
    PolyMatrix m(n, ctx, dom);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m.set(i, j, poly(ctx, dom, max_terms, 1, 3));
    return m;
  }

  IntMatrix int_matrix(std::size_t n, long bound) {
    IntMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = range(-bound, bound);
    return a;
  }

  // Product of random elementary matrices: determinant +-1.
  IntMatrix unimodular(std::size_t n, int steps = 8) {
    IntMatrix a = IntMatrix::identity(n);
    if (n == 1) {
      if (range(0, 1)) a(0, 0) = -1;
      return a;
    }
    for (int s = 0; s < steps; ++s) {
      const auto i = static_cast<std::size_t>(range(0, n - 1));
      auto j = static_cast<std::size_t>(range(0, n - 2));
      if (j >= i) ++j;
      const long k = range(-2, 2);
      for (std::size_t c = 0; c < n; ++c) a(i, c) += k * a(j, c);
      if (range(0, 5) == 0) {
        for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
      }
    }
    return a;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Integer permutation-expansion determinant.
inline Integer perm_det(const IntMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Integer prod = 1;
    for (std::size_t i = 0; i < n; ++i) prod *= a(i, perm[i]);
    total += inversions % 2 ? -prod : prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Brute force: f^(p-1) expanded naively, then any monomial with all
// exponents < p and nonzero coefficient mod p.
inline bool naive_fpure(const MvPolynomial& f, std::uint32_t p) {
  Naive base = to_naive(f);
  base.p = p;
  Naive reduced;
  reduced.arity = base.arity;
  reduced.p = p;
  for (const auto& [e, c] : base.terms) reduced.add(e, c);
  Naive acc = naive_one(base.arity, p);
  for (std::uint32_t k = 0; k + 1 < p; ++k) acc = naive_mul(acc, reduced);
  for (const auto& [e, c] : acc.terms) {
    if (std::all_of(e.begin(), e.end(), [&](std::uint32_t x) { return x < p; }))
      return true;
  }
  return false;
}

// D(X) from naive matrix powers, then the permutation determinant.
inline Naive naive_P(const PolyMatrix& m) {
  const std::size_t n = m.size();
  auto x = to_naive(m);
  const std::size_t arity = m.context().size();
  const std::uint32_t p = m.domain().is_mod_p() ? m.domain().p : 0;
  std::vector<std::vector<Naive>> power(n, std::vector<Naive>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      power[i][j].arity = arity;
      power[i][j].p = p;
      if (i == j) power[i][j] = naive_one(arity, p);
    }
  }
  std::vector<std::vector<Naive>> d(n, std::vector<Naive>(n));
  for (std::size_t col = 0; col < n; ++col) {
    if (col > 0) {
      std::vector<std::vector<Naive>> next(n, std::vector<Naive>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          Naive s;
          s.arity = arity;
          s.p = p;
          for (std::size_t k = 0; k < n; ++k)
            s = naive_add(s, naive_mul(power[i][k], x[k][j]));
          next[i][j] = s;
        }
      }
      power = next;
    }
    for (std::size_t i = 0; i < n; ++i) d[i][col] = power[i][i];
  }
  return naive_det(d);
}

}  // namespace testsupport
