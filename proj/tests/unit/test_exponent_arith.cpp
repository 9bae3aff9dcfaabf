#include "doctest.h"

#include "oracles.hpp"

#include "zsparse/errors.hpp"
#include "zsparse/exponent_arith.hpp"

using namespace zsparse;

TEST_SUITE("exponent_arith") {
  TEST_CASE("euler_phi") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(5) == 4);
    CHECK(euler_phi(12) == 4);
    for (std::uint64_t n = 1; n <= 60; ++n) {
      std::uint64_t units = 0;
      for (std::uint64_t a = 1; a <= n; ++a) units += gcd_u64(a, n) == 1;
      CHECK(euler_phi(n) == units);
    }
  }

  TEST_CASE("mult_order") {
    CHECK(mult_order(2, 5) == 4);
    CHECK(mult_order(2, 7) == 3);
    CHECK(mult_order(3, 2) == 1);
    CHECK_THROWS_AS(mult_order(2, 4), DomainError);
  }

  TEST_CASE("power_residue_class examples") {
    auto c = power_residue_class(2, 1, 5);
    CHECK(c.progressions == std::vector<Progression>{{4, 4}});
    CHECK(c.exceptional.empty());
    c = power_residue_class(2, 1, 7);
    CHECK(c.progressions == std::vector<Progression>{{3, 3}});
    CHECK(c.contains(6));
    c = power_residue_class(2, 0, 4);
    CHECK(c.progressions == std::vector<Progression>{{2, 1}});
    CHECK(c.exceptional.empty());
    CHECK(power_residue_class(2, 3, 6).empty());
  }

  TEST_CASE("power_residue_class matches a scan, including non-coprime moduli") {
    for (std::uint64_t q : {2, 4, 6, 12}) {
      for (std::uint64_t n = 2; n <= 40; ++n) {
        for (std::uint64_t k = 0; k < n; ++k) {
          CHECK(power_residue_class(q, k, n).materialize(300) == oracle::residue_scan(q, k, n, 300));
        }
      }
    }
  }

  TEST_CASE("coprime base with a nontrivial gcd residue is empty") {
    for (std::uint64_t n = 2; n <= 30; ++n) {
      if (gcd_u64(3, n) != 1) continue;
      for (std::uint64_t k = 0; k < n; ++k) {
        if (gcd_u64(k, n) > 1) CHECK(power_residue_class(3, k, n).empty());
      }
    }
  }

  TEST_CASE("power_residue_union is the union of its classes") {
    const auto u = power_residue_union(2, {1, 4}, 7);
    auto a = oracle::residue_scan(2, 1, 7, 100), b = oracle::residue_scan(2, 4, 7, 100);
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    CHECK(u.materialize(100) == a);
  }

  TEST_CASE("fac_residue_class") {
    auto r = fac_residue_class(0, 3);
    CHECK(r.classification == FacClassResult::Classification::Cofinite);
    CHECK(r.elements == std::vector<Integer>{1, 2});
    CHECK(r.threshold_element == 6);
    r = fac_residue_class(1, 3);
    CHECK(r.classification == FacClassResult::Classification::Finite);
    CHECK(r.elements == std::vector<Integer>{1});
    r = fac_residue_class(2, 3);
    CHECK(r.elements == std::vector<Integer>{2});
  }

  TEST_CASE("fac_residue_class agrees with the first factorials") {
    const auto values = oracle::factorial_values(30);
    for (std::uint64_t n = 2; n <= 20; ++n) {
      for (std::uint64_t k = 0; k < n; ++k) {
        const auto r = fac_residue_class(k, n);
        std::vector<Integer> in_class, outside;
        for (const auto& v : values) (floor_mod(v, n) == k ? in_class : outside).push_back(v);
        if (r.classification == FacClassResult::Classification::Finite) {
          CHECK(r.elements == in_class);
        } else {
          CHECK(r.elements == outside);
        }
      }
    }
  }

  TEST_CASE("residue_structure separates transient and recurrent residues") {
    auto s = residue_structure(SparseSet::powers(2), 12);
    REQUIRE(s);
    CHECK(s->transient == std::vector<Integer>{2});
    CHECK(s->recurrent == std::vector<std::uint64_t>{4, 8});
    CHECK_FALSE(residue_structure(SparseSet::iterated_powers({2, 2}), 5).has_value());
  }
}
