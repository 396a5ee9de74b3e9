#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace diagvar;
using testsupport::Gen;

namespace {

const CoefficientDomain ZZ = CoefficientDomain::integers();

VarContext five_vars() {
  return VarContext({"x_1_1", "x_1_2", "x_1_3", "x_2_1", "x_2_2"});
}

MvPolynomial P(std::string_view text, const VarContext& ctx,
               CoefficientDomain dom = ZZ) {
  return parse_poly(text, ctx, dom);
}

// Delete monomials with an exponent >= cap, via the naive representation.
testsupport::Naive delete_capped(const MvPolynomial& f, std::uint32_t cap) {
  auto n = testsupport::to_naive(f);
  for (auto it = n.terms.begin(); it != n.terms.end();) {
    const bool big = std::any_of(it->first.begin(), it->first.end(),
                                 [&](std::uint32_t e) { return e >= cap; });
    it = big ? n.terms.erase(it) : std::next(it);
  }
  return n;
}

}  // namespace

TEST_CASE("parse examples") {
  const auto c2 = VarContext::matrix(2);
  const auto f = P("x_2_2 - x_1_1", c2);
  CHECK(f.term_count() == 2);
  CHECK(f.coefficient_of(Monomial({0, 0, 0, 1})) == 1);
  CHECK(f.coefficient_of(Monomial({1, 0, 0, 0})) == -1);

  CHECK(P("0", c2).is_zero());

  const auto c3 = VarContext::matrix(3);
  const auto g = P("x_1_1*x_1_2*x_2_1", c3);
  REQUIRE(g.term_count() == 1);
  CHECK(g.terms()[0].first.is_squarefree());
  CHECK(g.terms()[0].first.total_degree() == 3);

  // whitespace, leading minus, like terms, powers
  CHECK(P(" -x_1_1 +2*x_1_1^2 + x_1_1 ", c2) == P("2*x_1_1^2", c2));
  CHECK(P("3*x_1_2 - 3*x_1_2", c2).is_zero());
}

TEST_CASE("parse errors") {
  const auto c2 = VarContext::matrix(2);
  CHECK_THROWS_AS(P("x_1_1 +", c2), ParseError);
  CHECK_THROWS_AS(P("x_1_1 ** x_1_2", c2), ParseError);
  CHECK_THROWS_AS(P("1.5*x_1_1", c2), ParseError);
  CHECK_THROWS_AS(P("x_1_1^0", c2), ParseError);
  CHECK_THROWS_AS(P("y", c2), ParseError);
  try {
    P("x_1_1 + x_3_3", c2);
    FAIL("expected an unknown variable error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("x_3_3") != std::string::npos);
  }
  try {
    P("x_1_1 + +", c2);
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.position() != ParseError::npos);
  }
}

TEST_CASE("format examples") {
  const auto c2 = VarContext::matrix(2);
  CHECK(format_poly(MvPolynomial(c2, ZZ)) == "0");
  CHECK(format_poly(P("x_2_2 - x_1_1", c2)) == "-x_1_1 + x_2_2");
  CHECK(format_poly(P("x_1_1^2 + 1 + x_2_2", c2)) == "x_1_1^2 + x_2_2 + 1");
  CHECK(format_poly(P("-1", c2)) == "-1");
  CHECK(format_poly(P("-7*x_1_2*x_2_1", c2)) == "-7*x_1_2*x_2_1");
}

TEST_CASE("ring_arith examples") {
  const auto c2 = VarContext::matrix(2);
  const auto x11 = MvPolynomial::variable(c2, ZZ, "x_1_1");
  const auto x12 = MvPolynomial::variable(c2, ZZ, "x_1_2");
  const auto zero = MvPolynomial(c2, ZZ);
  CHECK(ring_arith(x11, zero, RingOp::Add) == x11);
  CHECK(format_poly(ring_arith(x11, x12, RingOp::Mul)) == "x_1_1*x_1_2");
  CHECK(ring_arith(x11, zero, RingOp::Neg) == -x11);

  const auto f2 = CoefficientDomain::mod_p(2);
  const auto y = MvPolynomial::variable(c2, f2, "x_1_1");
  CHECK(ring_arith(y, y, RingOp::Add).is_zero());
}

TEST_CASE("domain and context mismatch") {
  const auto c2 = VarContext::matrix(2);
  const auto c3 = VarContext::matrix(3);
  const auto a = MvPolynomial::variable(c2, ZZ, 0);
  CHECK_THROWS_AS(a + MvPolynomial::variable(c3, ZZ, 0), MismatchError);
  CHECK_THROWS_AS(a * MvPolynomial::variable(c2, CoefficientDomain::mod_p(3), 0),
                  MismatchError);
  CHECK_THROWS(CoefficientDomain::mod_p(4));
  CHECK_THROWS(CoefficientDomain::mod_p(1));
}

TEST_CASE("ring axioms on random polynomials") {
  Gen gen(101);
  const auto ctx = five_vars();
  for (auto dom : {ZZ, CoefficientDomain::mod_p(5)}) {
    for (int trial = 0; trial < 120; ++trial) {
      const auto f = gen.poly(ctx, dom, 4, 2);
      const auto g = gen.poly(ctx, dom, 4, 2);
      const auto h = gen.poly(ctx, dom, 3, 1);
      const auto one = MvPolynomial::constant(ctx, dom, 1);
      const auto zero = MvPolynomial(ctx, dom);
      CHECK(f + g == g + f);
      CHECK(f * g == g * f);
      CHECK((f + g) + h == f + (g + h));
      CHECK((f * g) * h == f * (g * h));
      CHECK(f * (g + h) == f * g + f * h);
      CHECK(f * one == f);
      CHECK(f + zero == f);
      CHECK((f - f).is_zero());
      CHECK(f + (-f) == zero);
      // against the naive oracle
      CHECK(testsupport::same(f * g, testsupport::naive_mul(
                                         testsupport::to_naive(f),
                                         testsupport::to_naive(g))));
      CHECK(testsupport::same(f - g, testsupport::naive_add(
                                         testsupport::to_naive(f),
                                         testsupport::to_naive(g), -1)));
    }
  }
}

TEST_CASE("mod p results stay in [0, p)") {
  Gen gen(7);
  const auto ctx = five_vars();
  for (std::uint32_t p : {2u, 3u, 7u, 2147483647u}) {
    const auto dom = CoefficientDomain::mod_p(p);
    for (int trial = 0; trial < 40; ++trial) {
      const auto f = gen.poly(ctx, dom, 4, 2, 1000000);
      const auto g = gen.poly(ctx, dom, 4, 2, 1000000);
      for (const auto& r : {f + g, f - g, f * g, -f, pow_capped(f, 3, std::nullopt)}) {
        for (const auto& [m, c] : r.terms()) {
          CHECK(c > 0);
          CHECK(c < p);
        }
      }
    }
  }
}

TEST_CASE("parse of format is the identity") {
  Gen gen(11);
  const auto ctx = five_vars();
  for (auto dom : {ZZ, CoefficientDomain::mod_p(3)}) {
    for (int trial = 0; trial < 150; ++trial) {
      const auto f = gen.poly(ctx, dom, 5, 4, 1000);
      CHECK(parse_poly(format_poly(f), ctx, dom) == f);
    }
  }
  // coefficients far beyond 64 bits
  const auto big = parse_poly("123456789012345678901234567890*x_1_1^3 - 1", ctx, ZZ);
  CHECK(parse_poly(format_poly(big), ctx, ZZ) == big);
}

TEST_CASE("json round trip") {
  Gen gen(12);
  const auto ctx = five_vars();
  for (auto dom : {ZZ, CoefficientDomain::mod_p(7)}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto f = gen.poly(ctx, dom, 4, 3);
      const auto j = to_json(f);
      CHECK(poly_from_json(nlohmann::json::parse(j.dump())) == f);
    }
  }
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"({"vars":["x_1_1"]})")),
                  ParseError);
}

TEST_CASE("pow_capped examples") {
  const auto ctx = VarContext::matrix(2);
  const auto f = P("x_1_1 + x_1_2", ctx);
  CHECK(pow_capped(f, 0, 3) == MvPolynomial::constant(ctx, ZZ, 1));
  CHECK(format_poly(pow_capped(f, 2, 2)) == "2*x_1_1*x_1_2");
  CHECK(pow_capped(f, 5, std::nullopt) ==
        P("x_1_1^5 + 5*x_1_1^4*x_1_2 + 10*x_1_1^3*x_1_2^2 + "
          "10*x_1_1^2*x_1_2^3 + 5*x_1_1*x_1_2^4 + x_1_2^5", ctx));

  const auto c3 = VarContext::matrix(3);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto dom = CoefficientDomain::mod_p(p);
    const auto g = P("x_1_1*x_1_2*x_2_1", c3, dom);
    const auto capped = pow_capped(g, p - 1, p);
    CHECK_FALSE(capped.is_zero());
    CHECK(testsupport::same(capped, delete_capped(pow_capped(g, p - 1, std::nullopt), p)));
  }
}

TEST_CASE("pow_capped equals uncapped power then deletion") {
  Gen gen(13);
  const auto ctx = VarContext::matrix(2);
  for (int trial = 0; trial < 150; ++trial) {
    const auto dom = trial % 2 ? ZZ : CoefficientDomain::mod_p(3);
    const auto f = gen.poly(ctx, dom, 4, 3);
    const auto k = static_cast<std::uint64_t>(gen.range(0, 4));
    const auto cap = static_cast<std::uint32_t>(gen.range(1, 5));
    CHECK(testsupport::same(pow_capped(f, k, cap),
                            delete_capped(pow_capped(f, k, std::nullopt), cap)));
  }
}

TEST_CASE("multiply_bounded and truncate") {
  Gen gen(14);
  const auto ctx = VarContext::matrix(2);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = gen.poly(ctx, ZZ, 4, 3);
    const auto g = gen.poly(ctx, ZZ, 4, 3);
    std::vector<std::uint32_t> bound(4);
    for (auto& b : bound) b = gen.range(0, 4);
    CHECK(multiply_bounded(f, g, bound) == truncate(f * g, bound));
  }
}

TEST_CASE("substitute examples") {
  const auto c2 = VarContext::matrix(2);
  Specialization kill;
  kill.assignments.emplace("x_2_2", MvPolynomial(c2, ZZ));
  CHECK(format_poly(substitute(P("x_2_2 - x_1_1", c2), kill)) == "-x_1_1");

  const auto c3 = VarContext::matrix(3);
  const auto x11 = MvPolynomial::variable(c3, ZZ, "x_1_1");
  Specialization collapse;
  collapse.assignments.emplace("x_1_2", x11);
  collapse.assignments.emplace("x_2_1", x11);
  CHECK(format_poly(substitute(P("x_1_1*x_1_2*x_2_1", c3), collapse)) == "x_1_1^3");

  const auto f = P("3*x_1_1^2*x_2_2 - x_1_2 + 4", c2);
  CHECK(substitute(f, Specialization{}) == f);

  // simultaneous, not sequential
  Specialization swap;
  swap.assignments.emplace("x_1_1", MvPolynomial::variable(c2, ZZ, "x_2_2"));
  swap.assignments.emplace("x_2_2", MvPolynomial::variable(c2, ZZ, "x_1_1"));
  CHECK(substitute(P("x_1_1 - 2*x_2_2", c2), swap) == P("x_2_2 - 2*x_1_1", c2));

  // replacement from a foreign context
  Specialization bad;
  bad.assignments.emplace("x_1_1", MvPolynomial::variable(c3, ZZ, "x_3_3"));
  CHECK_THROWS(substitute(f, bad));
}

TEST_CASE("substitute is a ring homomorphism") {
  Gen gen(15);
  const auto ctx = five_vars();
  for (int trial = 0; trial < 100; ++trial) {
    Specialization s;
    for (const auto& name : ctx.names()) {
      if (gen.range(0, 2) == 0) s.assignments.emplace(name, gen.poly(ctx, ZZ, 2, 1));
    }
    const auto f = gen.poly(ctx, ZZ, 3, 2);
    const auto g = gen.poly(ctx, ZZ, 3, 2);
    CHECK(substitute(f + g, s) == substitute(f, s) + substitute(g, s));
    CHECK(substitute(f * g, s) == substitute(f, s) * substitute(g, s));
  }
}

TEST_CASE("rebase and change_domain") {
  const auto c2 = VarContext::matrix(2);
  const auto small = VarContext({"x_2_2", "x_1_1"});
  const auto f = P("x_2_2 - x_1_1", c2);
  const auto g = rebase(f, small);
  CHECK(g.context() == small);
  CHECK(rebase(g, c2) == f);
  CHECK_THROWS_AS(rebase(P("x_1_2", c2), small), MismatchError);

  const auto h = change_domain(P("7*x_1_1 - 3", c2), CoefficientDomain::mod_p(5));
  CHECK(format_poly(h) == "2*x_1_1 + 2");
  CHECK(change_domain(P("5*x_1_1", c2), CoefficientDomain::mod_p(5)).is_zero());
}

TEST_CASE("coefficient_of and homogeneous_degree") {
  const auto c2 = VarContext::matrix(2);
  const auto f = P("x_2_2 - x_1_1", c2);
  CHECK(coefficient_of(f, Monomial({0, 1, 0, 0})) == 0);
  CHECK(f.homogeneous_degree() == 1u);
  CHECK(P("x_1_1 + x_1_1^2", c2).homogeneous_degree() == std::nullopt);
  CHECK(P("5", c2).homogeneous_degree() == 0u);
  CHECK_THROWS_AS(MvPolynomial(c2, ZZ).homogeneous_degree(), Error);
}

TEST_CASE("monomial orders") {
  CHECK(grlex_greater(Monomial({0, 2}), Monomial({1, 0})));
  CHECK(grlex_greater(Monomial({1, 0}), Monomial({0, 1})));
  CHECK_FALSE(grlex_greater(Monomial({1, 0}), Monomial({1, 0})));
  // x*z vs y^2 in (x, y, z): grevlex prefers y^2
  CHECK(grevlex_greater(Monomial({0, 2, 0}), Monomial({1, 0, 1})));
  CHECK(grlex_greater(Monomial({1, 0, 1}), Monomial({0, 2, 0})));
}

TEST_CASE("is_prime") {
  CHECK(is_prime(2));
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}
