#include "diagvar/polyring.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace diagvar {

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint64_t d = 3; d * d <= value; d += 2) {
    if (value % d == 0) return false;
  }
  return true;
}

CoefficientDomain CoefficientDomain::mod_p(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
    throw Error("modulus " + std::to_string(p) +
                " is not a prime in [2, 2^31)");
  }
  return {Kind::ModP, static_cast<std::uint32_t>(p)};
}

Integer CoefficientDomain::reduce(Integer value) const {
  if (kind == Kind::Integers) return value;
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), p);
  return r;
}

std::string to_string(const CoefficientDomain& dom) {
  return dom.is_mod_p() ? "F_" + std::to_string(dom.p) : "Z";
}

// ---------------------------------------------------------------------------
// VarContext

VarContext::VarContext(std::vector<std::string> names) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error("empty variable name");
    if (!seen.insert(n).second) throw Error("duplicate variable '" + n + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::string matrix_variable_name(std::size_t row, std::size_t col) {
  return "x_" + std::to_string(row) + "_" + std::to_string(col);
}

VarContext VarContext::matrix(std::size_t n, bool with_t) {
  std::vector<std::string> names;
  names.reserve(n * n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      names.push_back(matrix_variable_name(i, j));
    }
  }
  if (with_t) names.emplace_back("t");
  return VarContext(std::move(names));
}

std::optional<std::size_t> VarContext::index_of(std::string_view name) const {
  const auto& v = *names_;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t VarContext::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw MismatchError("unknown variable '" + std::string(name) + "'");
}

VarContext VarContext::with_variable(const std::string& name) const {
  if (index_of(name)) return *this;
  auto names = *names_;
  names.push_back(name);
  return VarContext(std::move(names));
}

// ---------------------------------------------------------------------------
// Monomial

std::uint64_t Monomial::total_degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(),
                     [](std::uint32_t e) { return e == 0; });
}

bool Monomial::is_squarefree() const {
  return std::all_of(exps_.begin(), exps_.end(),
                     [](std::uint32_t e) { return e <= 1; });
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

bool grlex_greater(const Monomial& a, const Monomial& b) {
  const auto da = a.total_degree();
  const auto db = b.total_degree();
  if (da != db) return da > db;
  return a.exponents() > b.exponents();
}

bool grevlex_greater(const Monomial& a, const Monomial& b) {
  const auto da = a.total_degree();
  const auto db = b.total_degree();
  if (da != db) return da > db;
  for (std::size_t i = a.arity(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// ---------------------------------------------------------------------------
// MvPolynomial basics

namespace {

void sort_and_combine(std::vector<MvPolynomial::Term>& terms,
                      const CoefficientDomain& dom) {
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    return grlex_greater(x.first, y.first);
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Integer c = std::move(terms[i].second);
    while (j < terms.size() && terms[j].first == terms[i].first) {
      c += terms[j].second;
      ++j;
    }
    c = dom.reduce(std::move(c));
    if (c != 0) {
      if (out != i) terms[out].first = std::move(terms[i].first);
      terms[out].second = std::move(c);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

}  // namespace

MvPolynomial MvPolynomial::constant(VarContext ctx, CoefficientDomain dom,
                                    const Integer& value) {
  const std::size_t arity = ctx.size();
  return monomial(std::move(ctx), dom, Monomial(arity), value);
}

MvPolynomial MvPolynomial::variable(VarContext ctx, CoefficientDomain dom,
                                    std::size_t index) {
  if (index >= ctx.size()) throw MismatchError("variable index out of range");
  Monomial m(ctx.size());
  m[index] = 1;
  return monomial(std::move(ctx), dom, std::move(m));
}

MvPolynomial MvPolynomial::variable(VarContext ctx, CoefficientDomain dom,
                                    std::string_view name) {
  const auto index = ctx.require(name);
  return variable(std::move(ctx), dom, index);
}

MvPolynomial MvPolynomial::monomial(VarContext ctx, CoefficientDomain dom,
                                    Monomial m, const Integer& coeff) {
  if (m.arity() != ctx.size()) {
    throw MismatchError("monomial arity does not match context");
  }
  MvPolynomial r(std::move(ctx), dom);
  Integer c = dom.reduce(coeff);
  if (c != 0) r.terms_.emplace_back(std::move(m), std::move(c));
  return r;
}

MvPolynomial MvPolynomial::from_terms(VarContext ctx, CoefficientDomain dom,
                                      std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.first.arity() != ctx.size()) {
      throw MismatchError("monomial arity does not match context");
    }
  }
  MvPolynomial r(std::move(ctx), dom);
  sort_and_combine(terms, r.dom_);
  r.terms_ = std::move(terms);
  return r;
}

bool MvPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

Integer MvPolynomial::coefficient_of(const Monomial& m) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const Term& t, const Monomial& key) { return grlex_greater(t.first, key); });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

std::optional<std::uint64_t> MvPolynomial::homogeneous_degree() const {
  if (terms_.empty()) {
    throw Error("homogeneous_degree: zero polynomial has no degree");
  }
  const auto d = terms_.front().first.total_degree();
  for (const auto& t : terms_) {
    if (t.first.total_degree() != d) return std::nullopt;
  }
  return d;
}

std::uint64_t MvPolynomial::total_degree() const {
  // Terms are sorted by degree descending.
  return terms_.empty() ? 0 : terms_.front().first.total_degree();
}

std::vector<std::uint32_t> MvPolynomial::max_exponents() const {
  std::vector<std::uint32_t> mx(ctx_.size(), 0);
  for (const auto& t : terms_) {
    for (std::size_t v = 0; v < mx.size(); ++v) {
      mx[v] = std::max(mx[v], t.first[v]);
    }
  }
  return mx;
}

void require_compatible(const MvPolynomial& a, const MvPolynomial& b) {
  if (!(a.context() == b.context())) {
    throw MismatchError("polynomials live in different variable contexts");
  }
  if (!(a.domain() == b.domain())) {
    throw MismatchError("polynomials live in different coefficient domains (" +
                        to_string(a.domain()) + " vs " +
                        to_string(b.domain()) + ")");
  }
}

MvPolynomial MvPolynomial::operator-() const {
  MvPolynomial r(*this);
  for (auto& t : r.terms_) t.second = dom_.reduce(-t.second);
  return r;
}

namespace {

std::vector<MvPolynomial::Term> merge_terms(
    const std::vector<MvPolynomial::Term>& a,
    const std::vector<MvPolynomial::Term>& b, bool subtract,
    const CoefficientDomain& dom) {
  std::vector<MvPolynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() ||
        (i < a.size() && grlex_greater(a[i].first, b[j].first))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || grlex_greater(b[j].first, a[i].first)) {
      Integer c = subtract ? dom.reduce(-b[j].second) : b[j].second;
      out.emplace_back(b[j].first, std::move(c));
      ++j;
    } else {
      Integer c = a[i].second;
      if (subtract) {
        c -= b[j].second;
      } else {
        c += b[j].second;
      }
      c = dom.reduce(std::move(c));
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MvPolynomial& MvPolynomial::operator+=(const MvPolynomial& other) {
  require_compatible(*this, other);
  terms_ = merge_terms(terms_, other.terms_, false, dom_);
  return *this;
}

MvPolynomial& MvPolynomial::operator-=(const MvPolynomial& other) {
  require_compatible(*this, other);
  terms_ = merge_terms(terms_, other.terms_, true, dom_);
  return *this;
}

bool operator==(const MvPolynomial& a, const MvPolynomial& b) {
  return a.ctx_ == b.ctx_ && a.dom_ == b.dom_ && a.terms_ == b.terms_;
}

// ---------------------------------------------------------------------------
// Multiplication kernel
//
// Exponent vectors are packed into fixed-width words when the result's
// exponents fit; sums of packed keys never carry between fields because each
// field is sized for the per-variable maximum of the product.

namespace {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <std::size_t W>
struct PackedKey {
  std::array<std::uint64_t, W> w{};
  friend bool operator==(const PackedKey&, const PackedKey&) = default;
};

template <std::size_t W>
struct PackedKeyHash {
  std::size_t operator()(const PackedKey<W>& k) const noexcept {
    std::uint64_t h = 0;
    for (auto x : k.w) h = mix64(h ^ x);
    return static_cast<std::size_t>(h);
  }
};

struct Layout {
  unsigned bits = 0;
  unsigned per_word = 0;
  std::size_t arity = 0;
  std::size_t words = 0;

  std::uint64_t mask() const { return (std::uint64_t{1} << bits) - 1; }
};

std::optional<Layout> plan_layout(const std::vector<std::uint32_t>& max_sum,
                                  std::size_t max_words) {
  std::uint32_t top = 1;
  for (auto e : max_sum) top = std::max(top, e);
  Layout l;
  l.bits = static_cast<unsigned>(std::bit_width(top));
  if (l.bits > 32) return std::nullopt;
  l.per_word = 64 / l.bits;
  l.arity = max_sum.size();
  l.words = std::max<std::size_t>(1, (l.arity + l.per_word - 1) / l.per_word);
  if (l.words > max_words) return std::nullopt;
  return l;
}

template <std::size_t W>
struct PackedOps {
  using Key = PackedKey<W>;
  using Hash = PackedKeyHash<W>;
  Layout layout;

  Key encode(const Monomial& m) const {
    Key k;
    for (std::size_t v = 0; v < layout.arity; ++v) {
      k.w[v / layout.per_word] |= std::uint64_t{m[v]}
                                  << ((v % layout.per_word) * layout.bits);
    }
    return k;
  }
  Key add(const Key& a, const Key& b) const {
    Key k;
    for (std::size_t i = 0; i < W; ++i) k.w[i] = a.w[i] + b.w[i];
    return k;
  }
  std::uint32_t field(const Key& k, std::size_t v) const {
    return static_cast<std::uint32_t>(
        (k.w[v / layout.per_word] >> ((v % layout.per_word) * layout.bits)) &
        layout.mask());
  }
  Monomial decode(const Key& k) const {
    Monomial m(layout.arity);
    for (std::size_t v = 0; v < layout.arity; ++v) m[v] = field(k, v);
    return m;
  }
};

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::uint64_t h = v.size();
    for (auto x : v) h = mix64(h ^ x);
    return static_cast<std::size_t>(h);
  }
};

struct GenericOps {
  using Key = std::vector<std::uint32_t>;
  using Hash = VectorHash;

  Key encode(const Monomial& m) const { return m.exponents(); }
  Key add(const Key& a, const Key& b) const {
    Key k(a);
    for (std::size_t i = 0; i < k.size(); ++i) k[i] += b[i];
    return k;
  }
  std::uint32_t field(const Key& k, std::size_t v) const { return k[v]; }
  Monomial decode(const Key& k) const { return Monomial(k); }
};

template <class Ops, class Coef>
std::vector<MvPolynomial::Term> multiply_kernel(
    const std::vector<const MvPolynomial::Term*>& f,
    const std::vector<const MvPolynomial::Term*>& g, const Ops& ops,
    const CoefficientDomain& dom, const std::vector<std::size_t>& checked,
    const std::vector<std::uint32_t>* bound) {
  using Key = typename Ops::Key;
  std::vector<Key> fk, gk;
  fk.reserve(f.size());
  gk.reserve(g.size());
  for (const auto* t : f) fk.push_back(ops.encode(t->first));
  for (const auto* t : g) gk.push_back(ops.encode(t->first));

  std::unordered_map<Key, Coef, typename Ops::Hash> acc;
  acc.reserve(std::min<std::size_t>(f.size() * g.size(), 1u << 20));

  if constexpr (std::is_same_v<Coef, std::uint64_t>) {
    const std::uint64_t p = dom.p;
    std::vector<std::uint64_t> fc, gc;
    for (const auto* t : f) fc.push_back(t->second.get_ui());
    for (const auto* t : g) gc.push_back(t->second.get_ui());
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        Key s = ops.add(fk[i], gk[j]);
        bool keep = true;
        for (auto v : checked) {
          if (ops.field(s, v) > (*bound)[v]) {
            keep = false;
            break;
          }
        }
        if (!keep) continue;
        auto& slot = acc[std::move(s)];
        slot = (slot + fc[i] * gc[j]) % p;
      }
    }
  } else {
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        Key s = ops.add(fk[i], gk[j]);
        bool keep = true;
        for (auto v : checked) {
          if (ops.field(s, v) > (*bound)[v]) {
            keep = false;
            break;
          }
        }
        if (!keep) continue;
        auto& slot = acc[std::move(s)];
        mpz_addmul(slot.get_mpz_t(), f[i]->second.get_mpz_t(),
                   g[j]->second.get_mpz_t());
      }
    }
  }

  std::vector<MvPolynomial::Term> out;
  out.reserve(acc.size());
  for (auto& [key, c] : acc) {
    if constexpr (std::is_same_v<Coef, std::uint64_t>) {
      if (c != 0) out.emplace_back(ops.decode(key), Integer(static_cast<unsigned long>(c)));
    } else {
      if (c != 0) out.emplace_back(ops.decode(key), std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return grlex_greater(x.first, y.first);
  });
  return out;
}

bool within(const Monomial& m, const std::vector<std::uint32_t>& bound) {
  for (std::size_t v = 0; v < m.arity(); ++v) {
    if (m[v] > bound[v]) return false;
  }
  return true;
}

template <class Coef>
std::vector<MvPolynomial::Term> dispatch_layout(
    const std::vector<const MvPolynomial::Term*>& f,
    const std::vector<const MvPolynomial::Term*>& g,
    const std::vector<std::uint32_t>& max_sum, const CoefficientDomain& dom,
    const std::vector<std::size_t>& checked,
    const std::vector<std::uint32_t>* bound) {
  if (auto l = plan_layout(max_sum, 4)) {
    switch (l->words) {
      case 1:
        return multiply_kernel<PackedOps<1>, Coef>(f, g, PackedOps<1>{*l}, dom,
                                                   checked, bound);
      case 2:
        return multiply_kernel<PackedOps<2>, Coef>(f, g, PackedOps<2>{*l}, dom,
                                                   checked, bound);
      case 3:
        return multiply_kernel<PackedOps<3>, Coef>(f, g, PackedOps<3>{*l}, dom,
                                                   checked, bound);
      default:
        return multiply_kernel<PackedOps<4>, Coef>(f, g, PackedOps<4>{*l}, dom,
                                                   checked, bound);
    }
  }
  return multiply_kernel<GenericOps, Coef>(f, g, GenericOps{}, dom, checked,
                                           bound);
}

MvPolynomial multiply_impl(const MvPolynomial& f, const MvPolynomial& g,
                           const std::vector<std::uint32_t>* bound) {
  require_compatible(f, g);
  MvPolynomial result(f.context(), f.domain());
  if (f.is_zero() || g.is_zero()) return result;
  const std::size_t arity = f.context().size();
  if (bound && bound->size() != arity) {
    throw MismatchError("exponent bound arity does not match context");
  }

  std::vector<const MvPolynomial::Term*> fs, gs;
  for (const auto& t : f.terms()) {
    if (!bound || within(t.first, *bound)) fs.push_back(&t);
  }
  for (const auto& t : g.terms()) {
    if (!bound || within(t.first, *bound)) gs.push_back(&t);
  }
  if (fs.empty() || gs.empty()) return result;

  std::vector<std::uint32_t> fmax(arity, 0), gmax(arity, 0), max_sum(arity);
  for (const auto* t : fs) {
    for (std::size_t v = 0; v < arity; ++v) fmax[v] = std::max(fmax[v], t->first[v]);
  }
  for (const auto* t : gs) {
    for (std::size_t v = 0; v < arity; ++v) gmax[v] = std::max(gmax[v], t->first[v]);
  }
  std::vector<std::size_t> checked;
  for (std::size_t v = 0; v < arity; ++v) {
    max_sum[v] = fmax[v] + gmax[v];
    if (bound && max_sum[v] > (*bound)[v]) checked.push_back(v);
  }

  std::vector<MvPolynomial::Term> terms =
      f.domain().is_mod_p()
          ? dispatch_layout<std::uint64_t>(fs, gs, max_sum, f.domain(), checked, bound)
          : dispatch_layout<Integer>(fs, gs, max_sum, f.domain(), checked, bound);
  return MvPolynomial::from_terms(f.context(), f.domain(), std::move(terms));
}

}  // namespace

MvPolynomial operator*(const MvPolynomial& a, const MvPolynomial& b) {
  return multiply_impl(a, b, nullptr);
}

MvPolynomial& MvPolynomial::operator*=(const MvPolynomial& other) {
  *this = *this * other;
  return *this;
}

MvPolynomial multiply_bounded(const MvPolynomial& f, const MvPolynomial& g,
                              const std::vector<std::uint32_t>& bound) {
  return multiply_impl(f, g, &bound);
}

MvPolynomial truncate(const MvPolynomial& f,
                      const std::vector<std::uint32_t>& bound) {
  if (bound.size() != f.context().size()) {
    throw MismatchError("exponent bound arity does not match context");
  }
  std::vector<MvPolynomial::Term> kept;
  for (const auto& t : f.terms()) {
    if (within(t.first, bound)) kept.push_back(t);
  }
  return MvPolynomial::from_terms(f.context(), f.domain(), std::move(kept));
}

MvPolynomial ring_arith(const MvPolynomial& f, const MvPolynomial& g,
                        RingOp op) {
  switch (op) {
    case RingOp::Add:
      return f + g;
    case RingOp::Sub:
      return f - g;
    case RingOp::Mul:
      return f * g;
    case RingOp::Neg:
      return -f;
  }
  throw Error("unknown ring operation");
}

MvPolynomial pow_capped(const MvPolynomial& f, std::uint64_t k,
                        std::optional<std::uint32_t> cap) {
  if (cap && *cap == 0) throw Error("pow_capped: cap must be positive");
  const auto one = MvPolynomial::constant(f.context(), f.domain(), 1);
  if (!cap) {
    MvPolynomial result = one;
    MvPolynomial base = f;
    for (std::uint64_t e = k; e > 0; e >>= 1) {
      if (e & 1) result *= base;
      if (e > 1) base *= base;
    }
    return result;
  }
  const std::vector<std::uint32_t> bound(f.context().size(), *cap - 1);
  if (k == 0) return one;
  // Repeated multiplication by the (small) base keeps every partial product
  // reduced; squaring would multiply two large partial powers.
  const MvPolynomial base = truncate(f, bound);
  MvPolynomial result = base;
  for (std::uint64_t i = 1; i < k && !result.is_zero(); ++i) {
    result = multiply_bounded(result, base, bound);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Context / domain changes and substitution

MvPolynomial rebase(const MvPolynomial& f, const VarContext& ctx) {
  if (f.context() == ctx) return f;
  const auto& from = f.context();
  const auto used = f.max_exponents();
  std::vector<std::optional<std::size_t>> map(from.size());
  for (std::size_t v = 0; v < from.size(); ++v) {
    map[v] = ctx.index_of(from.name(v));
    if (!map[v] && used[v] > 0) {
      throw MismatchError("unknown variable '" + from.name(v) +
                          "' in target context");
    }
  }
  std::vector<MvPolynomial::Term> terms;
  terms.reserve(f.term_count());
  for (const auto& [m, c] : f.terms()) {
    Monomial out(ctx.size());
    for (std::size_t v = 0; v < from.size(); ++v) {
      if (map[v]) out[*map[v]] = m[v];
    }
    terms.emplace_back(std::move(out), c);
  }
  return MvPolynomial::from_terms(ctx, f.domain(), std::move(terms));
}

MvPolynomial change_domain(const MvPolynomial& f, CoefficientDomain dom) {
  if (f.domain() == dom) return f;
  if (f.domain().is_mod_p() && dom.kind == CoefficientDomain::Kind::Integers) {
    throw MismatchError("cannot lift a Z/p polynomial to Z");
  }
  if (f.domain().is_mod_p()) {
    throw MismatchError("cannot change modulus from " + to_string(f.domain()) +
                        " to " + to_string(dom));
  }
  return MvPolynomial::from_terms(f.context(), dom, f.terms());
}

MvPolynomial substitute(const MvPolynomial& f, const Specialization& s) {
  const VarContext target = s.target.value_or(f.context());
  const auto& from = f.context();
  const auto dom = f.domain();

  for (const auto& [name, poly] : s.assignments) {
    if (!from.index_of(name)) {
      throw MismatchError("specialization assigns unknown variable '" + name +
                          "'");
    }
    if (!(poly.domain() == dom)) {
      throw MismatchError("replacement for '" + name +
                          "' lives in a different coefficient domain");
    }
  }

  const auto used = f.max_exponents();
  // Per-variable image; a single-term image is applied on exponents directly.
  std::vector<std::optional<MvPolynomial>> image(from.size());
  for (std::size_t v = 0; v < from.size(); ++v) {
    if (used[v] == 0) continue;
    auto it = s.assignments.find(from.name(v));
    if (it != s.assignments.end()) {
      image[v] = rebase(it->second, target);
    } else {
      image[v] = MvPolynomial::variable(target, dom, target.require(from.name(v)));
    }
  }

  std::vector<std::vector<MvPolynomial>> powers(from.size());
  auto power_of = [&](std::size_t v, std::uint32_t e) -> const MvPolynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(MvPolynomial::constant(target, dom, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * *image[v]);
    return cache[e];
  };

  std::vector<MvPolynomial::Term> simple_terms;
  MvPolynomial general(target, dom);
  for (const auto& [m, c] : f.terms()) {
    Monomial mono(target.size());
    Integer coeff = c;
    bool vanished = false;
    std::vector<std::pair<std::size_t, std::uint32_t>> complex_factors;
    for (std::size_t v = 0; v < from.size() && !vanished; ++v) {
      const auto e = m[v];
      if (e == 0) continue;
      const auto& img = *image[v];
      if (img.is_zero()) {
        vanished = true;
      } else if (img.term_count() == 1) {
        const auto& [im, ic] = img.terms().front();
        for (std::size_t w = 0; w < target.size(); ++w) mono[w] += im[w] * e;
        if (ic != 1) {
          Integer pw;
          mpz_pow_ui(pw.get_mpz_t(), ic.get_mpz_t(), e);
          coeff *= pw;
        }
      } else {
        complex_factors.emplace_back(v, e);
      }
    }
    if (vanished) continue;
    if (complex_factors.empty()) {
      simple_terms.emplace_back(std::move(mono), std::move(coeff));
      continue;
    }
    MvPolynomial prod = MvPolynomial::monomial(target, dom, std::move(mono), coeff);
    for (auto [v, e] : complex_factors) prod *= power_of(v, e);
    general += prod;
  }
  return general +
         MvPolynomial::from_terms(target, dom, std::move(simple_terms));
}

Integer coefficient_of(const MvPolynomial& f, const Monomial& m) {
  if (m.arity() != f.context().size()) {
    throw MismatchError("monomial arity does not match context");
  }
  return f.coefficient_of(m);
}

// ---------------------------------------------------------------------------
// Text form

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const VarContext& ctx,
             CoefficientDomain dom)
      : s_(text), ctx_(ctx), dom_(dom) {}

  MvPolynomial parse() {
    std::vector<MvPolynomial::Term> terms;
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    terms.push_back(term(negative));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') {
        throw ParseError(std::string("expected '+' or '-', found '") + c + "'",
                         pos_);
      }
      ++pos_;
      terms.push_back(term(c == '-'));
    }
    return MvPolynomial::from_terms(ctx_, dom_, std::move(terms));
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool digit() const {
    return !at_end() && std::isdigit(static_cast<unsigned char>(peek()));
  }

  std::string digits() {
    const auto start = pos_;
    while (digit()) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  MvPolynomial::Term term(bool negative) {
    skip_ws();
    if (at_end()) throw ParseError("expected a term", pos_);
    Integer coeff = 1;
    Monomial mono(ctx_.size());
    if (digit()) {
      coeff = Integer(digits());
      if (!at_end() && (peek() == '.' || peek() == '/' || peek() == 'e' ||
                        peek() == 'E')) {
        throw ParseError("coefficient is not an integer literal", pos_);
      }
      skip_ws();
      if (at_end() || peek() != '*') {
        return {std::move(mono), negative ? Integer(-coeff) : coeff};
      }
      ++pos_;
    }
    varpow(mono);
    for (;;) {
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
      varpow(mono);
    }
    return {std::move(mono), negative ? Integer(-coeff) : coeff};
  }

  void varpow(Monomial& mono) {
    skip_ws();
    const auto start = pos_;
    std::string name;
    if (!at_end() && peek() == 't') {
      ++pos_;
      name = "t";
    } else if (!at_end() && peek() == 'x') {
      ++pos_;
      expect('_');
      if (!digit()) throw ParseError("expected row index", pos_);
      const auto row = digits();
      expect('_');
      if (!digit()) throw ParseError("expected column index", pos_);
      const auto col = digits();
      name = "x_" + row + "_" + col;
    } else if (digit()) {
      throw ParseError("coefficient must lead the term", pos_);
    } else {
      throw ParseError("expected a variable", pos_);
    }
    if (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                      peek() == '_')) {
      throw ParseError("malformed variable name", start);
    }
    const auto index = ctx_.index_of(name);
    if (!index) throw ParseError("unknown variable '" + name + "'", start);
    std::uint32_t e = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_ws();
      if (!digit()) throw ParseError("expected a positive exponent", pos_);
      const auto epos = pos_;
      const auto txt = digits();
      if (txt.size() > 9) throw ParseError("exponent too large", epos);
      e = static_cast<std::uint32_t>(std::stoul(txt));
      if (e == 0) throw ParseError("exponent must be positive", epos);
    }
    mono[*index] += e;
  }

  void expect(char c) {
    if (at_end() || peek() != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  std::string_view s_;
  const VarContext& ctx_;
  CoefficientDomain dom_;
  std::size_t pos_ = 0;
};

}  // namespace

MvPolynomial parse_poly(std::string_view text, const VarContext& ctx,
                        CoefficientDomain dom) {
  return PolyParser(text, ctx, dom).parse();
}

std::string format_monomial(const Monomial& m, const VarContext& ctx) {
  std::string out;
  for (std::size_t v = 0; v < m.arity(); ++v) {
    if (m[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += ctx.name(v);
    if (m[v] > 1) out += "^" + std::to_string(m[v]);
  }
  return out.empty() ? "1" : out;
}

std::string format_poly(const MvPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Integer mag = abs(c);
    if (m.is_one()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += format_monomial(m, f.context());
    }
  }
  return out;
}

nlohmann::json to_json(const MvPolynomial& f) {
  nlohmann::json dom = {{"kind", f.domain().is_mod_p() ? "Fp" : "Z"}};
  if (f.domain().is_mod_p()) dom["p"] = f.domain().p;
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : f.terms()) {
    terms.push_back({{"coeff", c.get_str()}, {"exps", m.exponents()}});
  }
  return {{"vars", f.context().names()}, {"domain", dom}, {"terms", terms}};
}

MvPolynomial poly_from_json(const nlohmann::json& j) {
  try {
    const auto vars = j.at("vars").get<std::vector<std::string>>();
    VarContext ctx(vars);
    const auto& d = j.at("domain");
    const auto kind = d.at("kind").get<std::string>();
    CoefficientDomain dom;
    if (kind == "Fp") {
      dom = CoefficientDomain::mod_p(d.at("p").get<std::uint64_t>());
    } else if (kind != "Z") {
      throw ParseError("domain.kind must be \"Z\" or \"Fp\"");
    }
    std::vector<MvPolynomial::Term> terms;
    for (const auto& t : j.at("terms")) {
      const auto coeff = t.at("coeff").get<std::string>();
      Integer c;
      if (c.set_str(coeff, 10) != 0) {
        throw ParseError("coefficient '" + coeff + "' is not a decimal integer");
      }
      auto exps = t.at("exps").get<std::vector<std::uint32_t>>();
      if (exps.size() != ctx.size()) {
        throw ParseError("term exponent vector has length " +
                         std::to_string(exps.size()) + ", expected " +
                         std::to_string(ctx.size()));
      }
      terms.emplace_back(Monomial(std::move(exps)), std::move(c));
    }
    return MvPolynomial::from_terms(ctx, dom, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid polynomial JSON: ") + e.what());
  }
}

}  // namespace diagvar
