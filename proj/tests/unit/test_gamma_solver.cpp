#include "doctest.h"

#include "oracles.hpp"

#include "zsparse/errors.hpp"
#include "zsparse/gamma_solver.hpp"

using namespace zsparse;

namespace {

bool holds_for_prefix(const GammaInstance& g, const Integer& y, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    Assignment asg = g.params;
    asg[g.y] = y;
    asg[g.alpha] = g.set.nth_element(i);
    if (!oracle::holds_naive(g.clause, asg)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("gamma_solver") {
  TEST_CASE("affine families") {
    const auto f = AffineFamily::parse("1+2a");
    CHECK(f.offset == 1);
    CHECK(f.slope == 2);
    CHECK(f.contains(5, SparseSet::powers(2)));
    CHECK_FALSE(f.contains(7, SparseSet::powers(2)));
    CHECK(AffineFamily::parse("-3a").slope == -3);
    CHECK_THROWS(AffineFamily::parse("4"));
  }

  TEST_CASE("coset witnesses") {
    const auto p2 = SparseSet::powers(2);
    CHECK(covers_coset({AffineFamily::parse("1+2a")}, {2, 0}, p2).witness == 0);
    CHECK(covers_coset({AffineFamily::parse("a"), AffineFamily::parse("2a")}, {3, 1}, p2).witness == 1);
    CHECK(covers_coset({}, {1, 0}, p2).witness == 0);
  }

  TEST_CASE("the witness is the first uncovered coset element") {
    // 2a and a cover 2, 4, 8, ...; a + 1 covers 3, 5, 9, ...; a - 1 covers 1, 3, 7, ...
    const std::vector<AffineFamily> fams{AffineFamily::parse("a"), AffineFamily::parse("1+1a"),
                                         AffineFamily::parse("-1+1a")};
    const auto p2 = SparseSet::powers(2);
    const auto r = covers_coset(fams, {1, 0}, p2);
    Integer expected;
    for (Integer z : {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6}) {
      bool hit = false;
      for (const auto& f : fams) hit = hit || f.contains(z, p2);
      if (!hit) {
        expected = z;
        break;
      }
    }
    CHECK(r.witness == expected);
    CHECK(r.certificates.size() == fams.size());
  }

  TEST_CASE("scheme examples") {
    const auto p2 = SparseSet::powers(2);
    auto g = make_gamma_instance("y ≡_2 0 AND y != a", "", p2);
    auto r = gamma_sat(g);
    REQUIRE(r.status == GammaReport::Status::Witness);
    CHECK(*r.witness == 0);

    g = make_gamma_instance("y = 5", "", p2);
    r = gamma_sat(g);
    REQUIRE(r.witness);
    CHECK(*r.witness == 5);
    CHECK(r.verification.passed);

    g = make_gamma_instance("y = a", "", p2);
    r = gamma_sat(g);
    CHECK(r.status == GammaReport::Status::Unsat);
    CHECK(r.subsystem_verified);
    CHECK(r.inconsistent_instances.size() >= 2);

    g = make_gamma_instance("y ≡_3 1 AND y != 2a AND y != a + 1", "", p2);
    r = gamma_sat(g);
    REQUIRE(r.witness);
    CHECK(*r.witness == 1);
    CHECK(holds_for_prefix(g, 1, 60));
  }

  TEST_CASE("parameters are substituted") {
    const auto g = make_gamma_instance("y != a + b AND y ≡_5 c", "b=3,c=-1", SparseSet::powers(3));
    const auto r = gamma_sat(g);
    REQUIRE(r.witness);
    CHECK(floor_mod(*r.witness, 5) == 4);
    CHECK(holds_for_prefix(g, *r.witness, 40));
  }

  TEST_CASE("factorials and residue-only witnesses") {
    const auto g = make_gamma_instance("y != a AND y ≡_5 3", "", SparseSet::factorials());
    const auto r = gamma_sat(g);
    REQUIRE(r.witness);
    CHECK(*r.witness == -2);
    CHECK(holds_for_prefix(g, -2, 30));
  }

  TEST_CASE("verifier rejects a bad witness") {
    const auto g = make_gamma_instance("y != 2a", "", SparseSet::powers(2));
    CHECK_FALSE(verify_gamma_witness(g, 8).passed);
    CHECK(verify_gamma_witness(g, 3).passed);
  }

  TEST_CASE("iterated towers are rejected") {
    CHECK_THROWS_AS(gamma_sat(make_gamma_instance("y != a", "", SparseSet::iterated_powers({2, 2}))), DomainError);
  }

  TEST_CASE("bounded sentences") {
    const auto p2 = SparseSet::powers(2);
    auto s = eval_bounded_sentence(parse_formula("EXISTS a IN P. a = 8"), {}, p2, 3);
    CHECK(s.result.value == Truth::True);
    s = eval_bounded_sentence(parse_formula("ALL a IN P. a ≡_3 1"), {}, p2, 10);
    CHECK(s.result.value == Truth::False);
    s = eval_bounded_sentence(parse_formula("EXISTS y. ALL a IN P. (y ≡_2 0 AND y != a)"), {}, p2, 10);
    CHECK(s.result.value == Truth::True);
    CHECK(s.method == "gamma");
    s = eval_bounded_sentence(parse_formula("EXISTS y. ALL a IN P. y = a"), {}, p2, 10);
    CHECK(s.result.value == Truth::False);
    s = eval_bounded_sentence(parse_formula("ALL a IN P. EXISTS y. (y + y = a OR y ≡_2 0)"), {}, p2, 10);
    CHECK(s.result.value == Truth::True);
  }
}
