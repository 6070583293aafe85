#include "doctest.h"

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "pgq/quadric.hpp"
#include "pgq/sigma.hpp"

using namespace pgq;

namespace {

HyperplaneFamily canonical(int n, std::uint32_t q, Sign sign) {
    return parabolic_family(standard_form(kind_for(sign), n, make_field(q)));
}

PointSet off_line(const ProjSpace& s, const Codim2Subspace& line) {
    PointSet out;
    for (const auto& p : enumerate_points(s))
        if (!contains(s, line, p)) out.push_back(p);
    return out;
}

// Image of a family under x -> A^{-1}x, i.e. covector h -> hA.
HyperplaneFamily transform(const HyperplaneFamily& fam, const Matrix& a) {
    std::vector<Hyperplane> hs;
    for (const auto& h : fam.members) hs.push_back(canonical_hyperplane(fam.space, oracle::times(fam.space.field, h.covector, a)));
    return make_family(fam.space, fam.sign, std::move(hs));
}

} // namespace

TEST_SUITE("sigma") {

TEST_CASE("point axiom on canonical families") {
    const auto fam = canonical(1, 3, Sign::Minus);
    const auto p1 = check_p1(fam);
    CHECK(p1.holds);
    CHECK(p1.black.size() == 10);
    CHECK(p1.white.size() == 30);

    const ProjSpace s = make_space(3, 2);
    const auto single = make_family(s, Sign::Plus, {enumerate_hyperplanes(s)[0]});
    CHECK_FALSE(check_p1(single).holds);
    CHECK_FALSE(check_p1(make_family(s, Sign::Minus, {enumerate_hyperplanes(s)[0]})).holds);
}

TEST_CASE("pencil axiom") {
    for (auto [n, q] : {std::pair{1, 2u}, {1, 3u}, {1, 4u}, {2, 2u}}) {
        for (Sign sign : {Sign::Plus, Sign::Minus}) {
            const auto p2 = check_p2(canonical(n, q, sign));
            CHECK(p2.holds);
            for (const auto& [s, count] : p2.multiplicity_histogram)
                CHECK((s == 0 || s == q - 1 || s == q || s == q + 1));
        }
    }
    for (std::uint32_t q : {2u, 4u}) {
        const ProjSpace s = make_space(3, q);
        const auto single = make_family(s, Sign::Plus, {enumerate_hyperplanes(s)[5]});
        CHECK(check_p2(single).holds == (q == 2));
    }
}

TEST_CASE("black sets are the quadric") {
    const auto plus = standard_form(Kind::Hyperbolic, 1, make_field(2));
    CHECK(black_set(parabolic_family(plus)) == plus.points());
    const auto minus = standard_form(Kind::Elliptic, 2, make_field(3));
    const auto black = black_set(parabolic_family(minus));
    CHECK(black.size() == 112);
    CHECK(black == minus.points());
}

TEST_CASE("exceptional families in PG(3,q)") {
    for (std::uint32_t q : {2u, 3u}) {
        const ProjSpace s = make_space(3, q);
        for (const auto& line : enumerate_codim2(s)) {
            const auto fam = line_transversal_family(s, line);
            CHECK(static_cast<std::uint32_t>(fam.members.size()) == q * q * q + q * q);
            CHECK(check_p1(fam).holds);
            CHECK(check_p2(fam).holds);
            CHECK(black_set(fam) == off_line(s, line));
            const auto degrees = point_degrees(fam);
            for (const auto& [pt, d] : degrees)
                CHECK(d == (contains(s, line, pt) ? std::int64_t{q} * q : std::int64_t{q} * q + q));
        }
    }
    const ProjSpace s2 = make_space(3, 2);
    CHECK(line_transversal_family(s2, enumerate_codim2(s2)[4]).members.size() == 12);

    for (std::uint32_t q : {2u, 4u}) {
        const auto ovoid = standard_form(Kind::Elliptic, 1, make_field(q));
        CHECK(is_ovoid(ovoid.space(), ovoid.points()));
        const auto fam = ovoid_secant_family(ovoid.space(), ovoid.points());
        CHECK(fam.members.size() == q * (q * q + 1));
        CHECK(check_p1(fam).holds);
        CHECK(check_p2(fam).holds);
        CHECK(black_set(fam).size() == q * q + 1);
    }
    const auto hyp = standard_form(Kind::Hyperbolic, 1, make_field(2));
    CHECK_FALSE(is_ovoid(hyp.space(), hyp.points()));
    CHECK_THROWS_AS(ovoid_secant_family(hyp.space(), hyp.points()), NotAnOvoid);

    // Five points with three collinear.
    const ProjSpace s = make_space(3, 2);
    const auto pts = enumerate_points(s);
    PointSet bad{pts[0], pts[1], pts[2], pts[3], pts[7]}; // 0001, 0010, 0011 are collinear
    std::sort(bad.begin(), bad.end());
    CHECK_FALSE(is_ovoid(s, bad));
}

TEST_CASE("quasi-quadrics") {
    const auto ell = standard_form(Kind::Elliptic, 1, make_field(3));
    CHECK(is_quasi_quadric(ell.space(), ell.points(), Sign::Minus));
    CHECK_FALSE(is_quasi_quadric(ell.space(), ell.points(), Sign::Plus));
    const ProjSpace s = make_space(3, 2);
    CHECK_FALSE(is_quasi_quadric(s, off_line(s, enumerate_codim2(s)[0]), Sign::Minus));
    const auto ov4 = standard_form(Kind::Elliptic, 1, make_field(4));
    CHECK(is_quasi_quadric(ov4.space(), ov4.points(), Sign::Minus));
    CHECK(ovoid_secant_family(ov4.space(), ov4.points()).members.size() == 68);
}

TEST_CASE("blocking sets in a plane") {
    const ProjSpace s = make_space(3, 3);
    const Hyperplane plane = enumerate_hyperplanes(s)[0];
    PointSet in_plane;
    for (const auto& p : enumerate_points(s))
        if (incident(s, p, plane)) in_plane.push_back(p);
    const auto r_full = is_blocking_set(s, in_plane, plane);
    CHECK(r_full.blocking);
    CHECK_FALSE(r_full.minimal);

    // A line inside the plane.
    Codim2Subspace line{};
    for (const auto& c : enumerate_codim2(s))
        if (contains(s, plane, c)) {
            line = c;
            break;
        }
    PointSet on_line;
    for (const auto& p : in_plane)
        if (contains(s, line, p)) on_line.push_back(p);
    const auto r_line = is_blocking_set(s, on_line, plane);
    CHECK(r_line.blocking);
    CHECK(r_line.minimal);
    CHECK(r_line.is_line);
    on_line.pop_back();
    CHECK_FALSE(is_blocking_set(s, on_line, plane).blocking);
}

TEST_CASE("classification") {
    for (std::uint32_t q : {2u, 3u, 4u}) {
        const auto c = classify_family(canonical(1, q, Sign::Plus));
        CHECK(c.verdict == Verdict::ParabolicOfHyperbolic);
        REQUIRE(std::holds_alternative<QuadraticForm>(c.witness));
        CHECK(std::get<QuadraticForm>(c.witness).points() == standard_form(Kind::Hyperbolic, 1, make_field(q)).points());
    }
    const auto e = classify_family(canonical(2, 3, Sign::Minus));
    CHECK(e.verdict == Verdict::ParabolicOfElliptic);

    const ProjSpace s = make_space(3, 3);
    const auto line = enumerate_codim2(s)[17];
    const auto lt = classify_family(line_transversal_family(s, line));
    CHECK(lt.verdict == Verdict::LineTransversal);
    REQUIRE(std::holds_alternative<Codim2Subspace>(lt.witness));
    CHECK(std::get<Codim2Subspace>(lt.witness) == line);

    const auto ov = classify_family(canonical(1, 3, Sign::Minus));
    CHECK(ov.verdict == Verdict::OvoidSecant);
    REQUIRE(std::holds_alternative<OvoidWitness>(ov.witness));
    CHECK(std::get<OvoidWitness>(ov.witness).classical == std::optional<bool>(true));
    const auto ov4 = classify_family(canonical(1, 4, Sign::Minus));
    CHECK(ov4.verdict == Verdict::OvoidSecant);
    CHECK_FALSE(std::get<OvoidWitness>(ov4.witness).classical.has_value());
}

TEST_CASE("analysis is invariant under collineations") {
    std::mt19937_64 rng(2024);
    for (auto [n, q] : {std::pair{1, 3u}, {1, 4u}, {1, 5u}, {2, 2u}}) {
        for (Sign sign : {Sign::Plus, Sign::Minus}) {
            const auto fam = canonical(n, q, sign);
            const auto base = analyze(fam);
            for (int trial = 0; trial < 3; ++trial) {
                const Matrix a = oracle::random_invertible(fam.space.field, fam.space.k + 1, rng);
                const auto moved = transform(fam, a);
                const auto got = analyze(moved);
                CHECK(got.p1.holds);
                CHECK(got.p2.holds);
                CHECK(got.b == base.b);
                CHECK(got.p2.multiplicity_histogram == base.p2.multiplicity_histogram);
                CHECK(got.codim2_black_histogram == base.codim2_black_histogram);
                CHECK(got.theorem_violations.empty());
                REQUIRE(got.verdict.has_value());
                CHECK(got.verdict->verdict == base.verdict->verdict);
                // x black in the moved family iff Ax black in the original.
                for (const auto& p : got.p1.black)
                    CHECK(std::binary_search(base.p1.black.begin(), base.p1.black.end(),
                                             canonical_point(fam.space, oracle::apply(fam.space.field, a, p.coords))));
            }
        }
    }
}

TEST_CASE("analysis identities flag broken families") {
    auto fam = canonical(1, 3, Sign::Plus);
    fam.members.pop_back();
    const auto a = analyze(fam);
    CHECK_FALSE(a.p1.holds);
    CHECK_FALSE(a.verdict.has_value());
}

}
