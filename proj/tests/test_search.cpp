#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "pgq/quadric.hpp"
#include "pgq/search.hpp"
#include "pgq/sigma.hpp"

using namespace pgq;

namespace {

std::set<std::vector<Hyperplane>> member_sets(const SearchResult& r) {
    std::set<std::vector<Hyperplane>> out;
    for (const auto& f : r.families) out.insert(f.family.members);
    return out;
}

} // namespace

TEST_SUITE("search") {

TEST_CASE("exhaustive PG(3,2) agrees with the GL(4,2) orbits") {
    const auto hyp_orbit = oracle::gl42_orbit(oracle::mask_of(standard_form(Kind::Hyperbolic, 1, make_field(2)).points()));
    const auto ell_orbit = oracle::gl42_orbit(oracle::mask_of(standard_form(Kind::Elliptic, 1, make_field(2)).points()));
    CHECK(hyp_orbit.size() == 280);
    CHECK(ell_orbit.size() == 168);

    const auto plus = exhaustive_search_pg32(Sign::Plus);
    CHECK(plus.exhaustive);
    std::set<std::uint32_t> plus_black;
    for (const auto& f : plus.families) {
        REQUIRE(f.analysis.verdict.has_value());
        CHECK(f.analysis.verdict->verdict == Verdict::ParabolicOfHyperbolic);
        plus_black.insert(oracle::mask_of(f.analysis.p1.black));
    }
    CHECK(plus.families.size() == 280);
    CHECK(plus_black == hyp_orbit);

    const auto minus = exhaustive_search_pg32(Sign::Minus);
    std::set<std::uint32_t> ovoid_black, line_white;
    for (const auto& f : minus.families) {
        REQUIRE(f.analysis.verdict.has_value());
        const Verdict v = f.analysis.verdict->verdict;
        CHECK((v == Verdict::OvoidSecant || v == Verdict::LineTransversal));
        if (v == Verdict::OvoidSecant) ovoid_black.insert(oracle::mask_of(f.analysis.p1.black));
        if (v == Verdict::LineTransversal) line_white.insert(oracle::mask_of(f.analysis.p1.white));
    }
    CHECK(minus.families.size() == 203);
    CHECK(ovoid_black == ell_orbit);
    CHECK(line_white.size() == 35);
    for (auto m : line_white) CHECK(std::popcount(m) == 3);
}

TEST_CASE("rejected subsets really fail an axiom") {
    const ProjSpace s = make_space(3, 2);
    const auto planes = enumerate_hyperplanes(s);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint32_t> pick(1, (1u << 15) - 1);
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
        const auto found = member_sets(exhaustive_search_pg32(sign));
        int rejected = 0;
        while (rejected < 100) {
            const std::uint32_t mask = pick(rng);
            std::vector<Hyperplane> hs;
            for (std::size_t i = 0; i < 15; ++i)
                if (mask >> i & 1u) hs.push_back(planes[i]);
            if (found.count(hs)) continue;
            ++rejected;
            const auto fam = make_family(s, sign, hs);
            CHECK_FALSE((check_p1(fam).holds && check_p2(fam).holds));
        }
    }
}

TEST_CASE("backtracking matches the exhaustive enumerator") {
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
        const auto a = exhaustive_search_pg32(sign);
        const auto b = backtracking_search(1, 2, sign, {});
        CHECK(b.exhaustive);
        CHECK(member_sets(a) == member_sets(b));
    }
}

TEST_CASE("backtracking at q = 3 finds every hyperbolic quadric") {
    const auto r = backtracking_search(1, 3, Sign::Plus, {});
    CHECK(r.exhaustive);
    CHECK(r.families.size() == 10530); // q^4 (q^2+1)(q^3-1)/2
    for (const auto& f : r.families) {
        REQUIRE(f.analysis.verdict.has_value());
        CHECK(f.analysis.verdict->verdict == Verdict::ParabolicOfHyperbolic);
    }
}

TEST_CASE("budget overrun keeps partial results") {
    SearchLimits limits;
    limits.node_budget = 1000;
    try {
        backtracking_search(1, 3, Sign::Minus, limits);
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& ex) {
        CHECK_FALSE(ex.partial().exhaustive);
        CHECK(ex.partial().nodes_explored >= 1000);
    }
}

TEST_CASE("divisibility lemma") {
    CHECK(lemma_useful_check(2, 3, Sign::Plus, 1));
    CHECK_FALSE(lemma_useful_check(2, 3, Sign::Plus, 2));
    CHECK_THROWS_AS(lemma_useful_check(1, 3, Sign::Minus, 1), OutOfLemmaScope);
    // n = 1, plus sign, odd q: k = (q+3)/2 also divides.
    CHECK(lemma_useful_check(1, 3, Sign::Plus, 3));
    CHECK(lemma_useful_check(1, 5, Sign::Plus, 4));
    CHECK_FALSE(lemma_useful_check(1, 4, Sign::Plus, 2));
}

TEST_CASE("consistency checks") {
    const auto r = consistency_suite(1, 3);
    CHECK(r.passed());
    CHECK(r.minus_r_roots == std::vector<std::string>{"10", "12"});
    for (std::uint32_t q : prime_powers_up_to(16))
        for (int n = 1; n <= 6; ++n) {
            CAPTURE(q);
            CAPTURE(n);
            CHECK(consistency_suite(n, q).passed());
        }
    CHECK(run_suite(1, 2).passed());
    CHECK(prime_powers_up_to(16) == std::vector<std::uint32_t>{2, 3, 4, 5, 7, 8, 9, 11, 13, 16});
}

}
