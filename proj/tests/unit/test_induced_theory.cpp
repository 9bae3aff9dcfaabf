#include "doctest.h"

#include "generators.hpp"
#include "oracles.hpp"

#include "zsparse/errors.hpp"
#include "zsparse/exponent_arith.hpp"
#include "zsparse/induced_theory.hpp"

using namespace zsparse;

TEST_SUITE("induced_theory") {
  TEST_CASE("terms print and evaluate with the floored predecessor") {
    CHECK(NTerm::variable("x", 3).to_string() == "s^3(x)");
    CHECK(NTerm::numeral(5).to_string() == "s^4(1)");
    CHECK(term_value(NTerm::variable("x", -3), {{"x", 2}}) == 1);
    CHECK(term_value(NTerm::variable("x", -1), {{"x", 5}}) == 4);
    CHECK_THROWS_AS(NAtom::q(0, 1, NTerm::variable("x")), DomainError);
  }

  TEST_CASE("parser round-trips and rejects reserved names") {
    const char* texts[] = {"EXISTS y. (y != x AND Q[1,2](y))", "x = s(s(y))", "NOT Q[0,3](s^-2(x))", "s^4(1) = x"};
    for (const char* t : texts) CHECK(parse_nformula(print(parse_nformula(t))) == parse_nformula(t));
    CHECK_THROWS_AS(parse_nformula("EXISTS s. s = 1"), ParseError);
    CHECK_THROWS_AS(parse_nformula("s^2(s^-1(x)) = x"), ParseError);
  }

  TEST_CASE("atoms") {
    CHECK(n_holds(parse_nformula("Q[1,2](x)"), {{"x", 7}}));
    CHECK(n_holds(parse_nformula("x = s(y)"), {{"x", 5}, {"y", 4}}));
    CHECK(n_evaluate(parse_nformula("EXISTS y. (y != x AND Q[1,2](y))"), {{"x", 3}}, 10) == Truth::True);
    CHECK_THROWS_AS(n_holds(parse_nformula("EXISTS y. y = x"), {{"x", 1}}), DomainError);
  }

  TEST_CASE("quantifier elimination examples") {
    CHECK(qe(parse_nformula("EXISTS y. (y != x AND Q[1,2](y))")).kind() == NodeKind::True);
    CHECK(qe(parse_nformula("EXISTS y. (Q[0,2](y) AND Q[1,2](y))")).kind() == NodeKind::False);
    const auto g = qe(parse_nformula("EXISTS y. (y = s(x) AND Q[0,2](y))"));
    CHECK(print(g) == "Q[1,2](x)");
    for (std::uint64_t x = 1; x <= 100; ++x) CHECK(n_holds(g, {{"x", x}}) == (x % 2 == 1));
  }

  TEST_CASE("qe output agrees with a naive finite-model check") {
    gen::Rng rng(17);
    for (int i = 0; i < 150; ++i) {
      int fresh = 0;
      const auto f = gen::nformula(rng, {"x"}, 1, 2, fresh);
      const auto g = qe(f);
      REQUIRE(g.is_quantifier_free());
      for (std::int64_t x = 1; x <= 30; ++x) {
        std::map<std::string, std::int64_t> env{{"x", x}};
        // one quantifier and shifts within 2: a domain of x + 2 + lcm(2..12) exposes every case
        const bool naive = oracle::nholds_naive(f, env, x + 2 + 27720);
        INFO(print(f), " x=", x);
        CHECK(n_holds(g, {{"x", static_cast<std::uint64_t>(x)}}) == naive);
      }
    }
  }

  TEST_CASE("equations translate to shift constraints") {
    CHECK(print(translate_equation(EquationSpec::parse("1,1,-1"), 2)) == "x2 = x1 AND x3 = s(x1)");
    CHECK(translate_equation(EquationSpec::parse("2,-3"), 5).kind() == NodeKind::False);
    CHECK(print(translate_equation(EquationSpec::parse("1,-1"), 3)) == "x2 = x1");
  }

  TEST_CASE("translated equations hold exactly on solution exponents") {
    for (const char* csv : {"1,1,-1", "3,-1", "1,-1,1,-1", "2,2,-1"}) {
      const auto eq = EquationSpec::parse(csv);
      const auto f = translate_equation(eq, 3);
      const auto sols = oracle::exponent_solutions(eq.coefficients, 3, 8);
      std::vector<std::uint64_t> e(eq.arity(), 1);
      for (;;) {
        NAssignment asg;
        for (std::size_t i = 0; i < e.size(); ++i) asg[eq.names[i]] = e[i];
        CHECK(n_holds(f, asg) == (sols.count(e) == 1));
        std::size_t i = 0;
        while (i < e.size() && e[i] == 8) e[i++] = 1;
        if (i == e.size()) break;
        ++e[i];
      }
    }
  }

  TEST_CASE("congruences c*x + d = 0 (mod l) translate to Q atoms") {
    CHECK(print(translate_congruence(1, -1, 5, 2)) == "Q[0,4](x)");
    CHECK(print(translate_congruence(1, 0, 4, 2)) == "x != 1");
    CHECK(translate_congruence(1, -3, 6, 2).kind() == NodeKind::False);
    for (std::uint64_t l = 2; l <= 12; ++l) {
      for (std::uint64_t c = 0; c < l; ++c) {
        const auto f = translate_congruence(2, -Integer(c), l, 3);
        for (std::uint64_t m = 1; m <= 40; ++m) {
          CHECK(n_holds(f, {{"x", m}}) == ((2 * oracle::power_mod_naive(3, m, l)) % l == c));
        }
      }
    }
  }

  TEST_CASE("type counts") {
    CHECK(count_types({2}) == 2);
    CHECK(count_types({2, 4, 8}) == 8);
    CHECK(count_types({2, 3}) == 6);
    CHECK(count_types({4, 6}) == 12);
  }
}
