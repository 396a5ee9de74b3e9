#include "diagvar/fpurity.hpp"

#include <algorithm>

namespace diagvar {

namespace {

MvPolynomial to_field(const MvPolynomial& f, std::uint32_t p) {
  const auto dom = CoefficientDomain::mod_p(p);
  if (f.domain().is_mod_p() && f.domain().p != p) {
    throw MismatchError("polynomial over " + to_string(f.domain()) +
                        " checked at p = " + std::to_string(p));
  }
  return change_domain(f, dom);
}

}  // namespace

MvPolynomial bracket_reduce(const MvPolynomial& f, std::uint32_t p) {
  const auto g = to_field(f, p);
  return truncate(g, std::vector<std::uint32_t>(g.context().size(), p - 1));
}

FedderVerdict fedder_check(const MvPolynomial& f, std::uint32_t p) {
  if (f.is_zero()) throw Error("fedder_check: zero polynomial");
  const auto g = to_field(f, p);
  if (g.is_zero()) {
    throw Error("fedder_check: polynomial vanishes modulo " + std::to_string(p));
  }
  FedderVerdict v;
  v.p = p;
  v.var_count = g.context().size();
  const auto power = pow_capped(g, p - 1, p);
  v.fpure = !power.is_zero();
  if (v.fpure) {
    const auto& terms = power.terms();
    v.witness = std::min_element(terms.begin(), terms.end(),
                                 [](const auto& a, const auto& b) {
                                   return grevlex_greater(a.first, b.first);
                                 })
                    ->first;
  }
  return v;
}

bool squarefree_all_variables_shortcut(const MvPolynomial& f) {
  if (f.term_count() != 1) return false;
  const auto& [m, c] = f.terms().front();
  if (m.is_one() || !m.is_squarefree()) return false;
  if (f.domain().is_mod_p()) return c == 1 || c == f.domain().p - 1;
  return c == 1 || c == -1;
}

nlohmann::json to_json(const FedderVerdict& v) {
  nlohmann::json j = {{"p", v.p}, {"fpure", v.fpure}};
  j["witness"] = v.witness ? nlohmann::json(v.witness->exponents())
                           : nlohmann::json(nullptr);
  return j;
}

}  // namespace diagvar
