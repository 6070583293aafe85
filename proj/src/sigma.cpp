#include "pgq/sigma.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pgq/bigint.hpp"
#include "pgq/parallel.hpp"

namespace pgq {
namespace {

std::int64_t count_in(const ProjSpace& s, const PointSet& pts, const Hyperplane& h) {
    return std::count_if(pts.begin(), pts.end(), [&](const ProjPoint& p) { return incident(s, p, h); });
}

std::int64_t count_in(const ProjSpace& s, const PointSet& pts, const Codim2Subspace& sub) {
    return std::count_if(pts.begin(), pts.end(), [&](const ProjPoint& p) { return contains(s, sub, p); });
}

CountTable table_for(const HyperplaneFamily& family) {
    return expected_counts(family.n(), family.space.q(), family.sign);
}

// Checks every counting identity that must hold for a family satisfying the
// point axiom, recording failures by name.
void check_identities(const HyperplaneFamily& family, FamilyAnalysis& a) {
    const int n = family.n();
    const std::uint32_t q = family.space.q();
    const BigInt e = sign_value(family.sign);
    const BigInt qn = ipow(q, n);
    const BigInt size = a.family_size;
    const CountTable& t = a.expected;
    auto fail = [&](const std::string& name, const std::string& detail) {
        a.theorem_violations.push_back(name + ": " + detail);
    };

    if (a.b + a.w != t.total_points) fail("black-white-total", "b + w != number of points");

    const BigInt incidences = BigInt(a.b) * t.black_degree + BigInt(a.w) * t.white_degree;
    if (incidences != size * t.points_per_hyperplane)
        fail("incidence-double-count", "b*black_degree + w*white_degree != |family|*theta(2n)");

    // q^n b = ∓theta(2n)|family| ± q^{2n} theta(2n+1)
    if (qn * a.b != -e * BigInt(t.points_per_hyperplane) * size + e * qn * qn * t.total_points)
        fail("black-count-from-size", "q^n b does not match the family size");

    if (size % qn != 0) {
        fail("size-divisible-by-q^n", "q^n does not divide |family| = " + size.str());
        return;
    }
    const BigInt r = size / qn;
    const BigInt top = ipow(q, n + 1);
    const bool extra_root = n == 1 && family.sign == Sign::Minus;
    const BigInt lo = family.sign == Sign::Plus ? top - q : top + 1;
    const BigInt hi = family.sign == Sign::Plus ? top - 1 : top + q;
    if (r < lo || r > hi) fail("r-bounds", "r = " + r.str() + " outside [" + lo.str() + ", " + hi.str() + "]");

    // b from the triple count, exact as a rational.
    const Rational b_from_r = ratio(qn + e, BigInt(q - 1) * (2 * qn + e)) *
                              Rational(e * qn * (ipow(q, 2 * n + 2) - 1) - e * r * (qn * r - 1));
    if (b_from_r != Rational(a.b)) fail("black-count-from-r", "b = " + std::to_string(a.b) + " but r predicts " + b_from_r.str());

    const BigInt theta_2n_minus_1 = exact_div(ipow(q, 2 * n) - 1, BigInt(q - 1));
    const BigInt per_member = theta_2n_minus_1 * (e * top - e * r);
    for (const auto& [count, freq] : a.black_per_member)
        if (BigInt(count) != per_member)
            fail("black-per-member", std::to_string(freq) + " members contain " + std::to_string(count) +
                                         " black points, expected " + per_member.str());

    const BigInt standard_r = top - e;
    const bool standard = r == standard_r;
    const bool line_case = extra_root && r == top + q;
    if (!standard && !line_case) {
        fail("r-value", "r = " + r.str() + " is not q^{n+1}" + (family.sign == Sign::Plus ? "-1" : "+1") +
                            (extra_root ? " or q^2+q" : ""));
        return;
    }

    if (standard) {
        if (a.b != t.quadric_size) fail("black-count", "b = " + std::to_string(a.b) + ", expected " + std::to_string(t.quadric_size));
        for (const auto& [count, freq] : a.black_per_nonmember)
            if (count != t.black_in_other_plane)
                fail("black-per-nonmember", std::to_string(freq) + " non-members contain " + std::to_string(count) +
                                                " black points, expected " + std::to_string(t.black_in_other_plane));
        if (a.p2.holds) {
            const auto values = t.codim2_values();
            for (const auto& [count, freq] : a.codim2_black_histogram) {
                const bool known = std::any_of(values.begin(), values.end(), [c = count](const auto& v) { return v.second == c; });
                if (!known)
                    fail("codim2-black-counts", std::to_string(freq) + " codim-2 subspaces contain " +
                                                    std::to_string(count) + " black points");
            }
        }
    } else {
        // Line-complement case in PG(3,q).
        const std::int64_t q2 = std::int64_t{q} * q;
        if (a.b != q2 * q + q2) fail("line-case-black-count", "b != q^3+q^2");
        for (const auto& [count, freq] : a.black_per_member)
            if (count != q2 + q) fail("line-case-black-per-member", "member with " + std::to_string(count) + " black points");
        for (const auto& [count, freq] : a.black_per_nonmember)
            if (count != q2) fail("line-case-black-per-nonmember", "non-member with " + std::to_string(count) + " black points");
    }
}

Classification classify_checked(const HyperplaneFamily& family, const P1Report& p1) {
    const ProjSpace& space = family.space;
    const int n = family.n();
    Classification out;

    if (family.sign == Sign::Plus || n >= 2) {
        const Kind want = kind_for(family.sign);
        for (auto& form : quadrics_through(space, p1.black)) {
            if (form.kind() != want) continue;
            if (parabolic_family(form).members != family.members) continue;
            out.verdict = want == Kind::Hyperbolic ? Verdict::ParabolicOfHyperbolic : Verdict::ParabolicOfElliptic;
            out.witness = std::move(form);
            return out;
        }
        return out;
    }

    // Minus sign in PG(3,q).
    if (is_ovoid(space, p1.black) && ovoid_secant_family(space, p1.black).members == family.members) {
        OvoidWitness witness{p1.black, std::nullopt};
        if (space.q() % 2 == 1) {
            const auto forms = quadrics_through(space, p1.black);
            witness.classical = std::any_of(forms.begin(), forms.end(),
                                            [](const QuadraticForm& f) { return f.kind() == Kind::Elliptic; });
        }
        out.verdict = Verdict::OvoidSecant;
        out.witness = std::move(witness);
        return out;
    }
    if (auto line = line_spanned_by(space, p1.white)) {
        if (line_transversal_family(space, *line).members == family.members) {
            out.verdict = Verdict::LineTransversal;
            out.witness = *line;
        }
    }
    return out;
}

} // namespace

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::ParabolicOfHyperbolic: return "ParabolicOfHyperbolic";
    case Verdict::ParabolicOfElliptic: return "ParabolicOfElliptic";
    case Verdict::OvoidSecant: return "OvoidSecant";
    case Verdict::LineTransversal: return "LineTransversal";
    case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

std::map<ProjPoint, std::int64_t> point_degrees(const HyperplaneFamily& family) {
    std::map<ProjPoint, std::int64_t> degrees;
    for (auto& p : enumerate_points(family.space)) {
        std::int64_t d = 0;
        for (const auto& h : family.members) d += incident(family.space, p, h) ? 1 : 0;
        degrees.emplace(std::move(p), d);
    }
    return degrees;
}

P1Report check_p1(const HyperplaneFamily& family) {
    const CountTable t = table_for(family);
    P1Report report;
    for (auto& [pt, degree] : point_degrees(family)) {
        if (degree == t.black_degree) report.black.push_back(pt);
        else if (degree == t.white_degree) report.white.push_back(pt);
        else report.violations.emplace_back(pt, degree);
    }
    report.holds = report.violations.empty();
    return report;
}

P2Report check_p2(const HyperplaneFamily& family) {
    const std::int64_t bound = static_cast<std::int64_t>(family.space.q()) - 1;
    P2Report report;
    for (auto& sub : enumerate_codim2(family.space)) {
        std::int64_t s = 0;
        for (const auto& h : hyperplanes_through(family.space, sub)) s += family.contains(h) ? 1 : 0;
        ++report.multiplicity_histogram[s];
        if (s >= 1 && s < bound) report.violations.emplace_back(std::move(sub), s);
    }
    report.holds = report.violations.empty();
    return report;
}

FamilyAnalysis analyze(const HyperplaneFamily& family, unsigned threads) {
    FamilyAnalysis a;
    a.expected = table_for(family);
    a.family_size = static_cast<std::int64_t>(family.members.size());
    a.p1 = check_p1(family);
    a.p2 = check_p2(family);
    a.b = static_cast<std::int64_t>(a.p1.black.size());
    a.w = static_cast<std::int64_t>(a.p1.white.size());
    const BigInt qn = ipow(family.space.q(), family.n());
    if (BigInt(a.family_size) % qn == 0) a.r = to_i64(BigInt(a.family_size) / qn);

    const ProjSpace& space = family.space;
    for (const auto& h : enumerate_hyperplanes(space)) {
        const std::int64_t count = count_in(space, a.p1.black, h);
        ++(family.contains(h) ? a.black_per_member : a.black_per_nonmember)[count];
    }
    const auto subs = enumerate_codim2(space);
    std::vector<Histogram> partial(std::max(1u, threads));
    parallel_for(subs.size(), threads, [&](std::size_t begin, std::size_t end, unsigned w) {
        for (std::size_t i = begin; i < end; ++i) ++partial[w][count_in(space, a.p1.black, subs[i])];
    });
    for (const auto& h : partial)
        for (const auto& [count, freq] : h) a.codim2_black_histogram[count] += freq;

    if (a.p1.holds) check_identities(family, a);
    if (a.p1.holds && a.p2.holds) a.verdict = classify_checked(family, a.p1);
    return a;
}

PointSet black_set(const HyperplaneFamily& family) {
    P1Report report = check_p1(family);
    if (!report.holds) throw P1Violated("P1Violated: " + std::to_string(report.violations.size()) + " points have an invalid degree");
    return std::move(report.black);
}

bool is_quasi_quadric(const ProjSpace& space, const PointSet& pts, Sign sign) {
    if (space.k % 2 == 0) throw WrongDimension("quasi-quadric test needs odd projective dimension");
    const CountTable t = expected_counts((space.k - 1) / 2, space.q(), sign);
    for (const auto& h : enumerate_hyperplanes(space)) {
        const std::int64_t c = count_in(space, pts, h);
        if (c != t.h1 && c != t.h2) return false;
    }
    return true;
}

bool is_ovoid(const ProjSpace& space, const PointSet& pts) {
    if (space.k != 3) throw WrongDimension("ovoids live in PG(3,q)");
    const std::uint64_t q = space.q();
    if (pts.size() != q * q + 1) return false;
    for (const auto& line : enumerate_codim2(space))
        if (count_in(space, pts, line) > 2) return false;
    return true;
}

HyperplaneFamily ovoid_secant_family(const ProjSpace& space, const PointSet& pts) {
    if (!is_ovoid(space, pts)) throw NotAnOvoid("NotAnOvoid: point set is not an ovoid");
    std::vector<Hyperplane> members;
    for (auto& h : enumerate_hyperplanes(space))
        if (count_in(space, pts, h) == static_cast<std::int64_t>(space.q()) + 1) members.push_back(std::move(h));
    return make_family(space, Sign::Minus, std::move(members));
}

HyperplaneFamily line_transversal_family(const ProjSpace& space, const Codim2Subspace& line) {
    if (space.k != 3) throw WrongDimension("line-transversal families live in PG(3,q)");
    std::vector<Hyperplane> members;
    for (auto& h : enumerate_hyperplanes(space))
        if (!contains(space, h, line)) members.push_back(std::move(h));
    return make_family(space, Sign::Minus, std::move(members));
}

BlockingSetResult is_blocking_set(const ProjSpace& space, const PointSet& pts, const Hyperplane& plane) {
    if (space.k != 3) throw WrongDimension("blocking-set test works in a plane of PG(3,q)");
    for (const auto& p : pts)
        if (!incident(space, p, plane)) throw std::invalid_argument("blocking-set points must lie in the plane");

    BlockingSetResult result;
    result.blocking = true;
    for (const auto& line : enumerate_codim2(space)) {
        if (!contains(space, plane, line)) continue;
        if (count_in(space, pts, line) == 0) {
            result.blocking = false;
            break;
        }
    }
    result.is_line = line_spanned_by(space, pts).has_value();
    result.minimal = result.blocking && pts.size() == space.q() + 1;
    return result;
}

std::optional<Codim2Subspace> line_spanned_by(const ProjSpace& space, const PointSet& pts) {
    if (space.k != 3) throw WrongDimension("lines are codimension 2 only in PG(3,q)");
    if (pts.size() != space.q() + 1) return std::nullopt;
    Matrix m;
    for (const auto& p : pts) m.push_back(p.coords);
    Matrix forms = nullspace(space.field, m, 4);
    if (forms.size() != 2) return std::nullopt;
    rref(space.field, forms);
    return Codim2Subspace{forms[0], forms[1]};
}

std::vector<QuadraticForm> quadrics_through(const ProjSpace& space, const PointSet& pts, std::uint64_t max_candidates) {
    const Field& f = space.field;
    const std::size_t len = static_cast<std::size_t>(space.k) + 1;
    std::vector<std::pair<std::size_t, std::size_t>> monomials;
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = i; j < len; ++j) monomials.emplace_back(i, j);

    Matrix rows;
    rows.reserve(pts.size());
    for (const auto& p : pts) {
        Vec row;
        row.reserve(monomials.size());
        for (auto [i, j] : monomials) row.push_back(f.mul(p.coords[i], p.coords[j]));
        rows.push_back(std::move(row));
    }
    const Matrix basis = nullspace(f, std::move(rows), monomials.size());
    std::vector<QuadraticForm> out;
    if (basis.empty() || theta(static_cast<int>(basis.size()) - 1, f.q()) > max_candidates) return out;

    const ProjSpace coeff_space{static_cast<int>(basis.size()) - 1, f};
    const std::uint64_t hyperbolic = quadric_size(Kind::Hyperbolic, (space.k - 1) / 2, f.q());
    const std::uint64_t elliptic = quadric_size(Kind::Elliptic, (space.k - 1) / 2, f.q());
    for (const auto& combo : enumerate_points(coeff_space)) {
        Matrix a(len, Vec(len, f.zero()));
        for (std::size_t m = 0; m < monomials.size(); ++m) {
            FieldElement v = f.zero();
            for (std::size_t b = 0; b < basis.size(); ++b) v = f.add(v, f.mul(combo.coords[b], basis[b][m]));
            a[monomials[m].first][monomials[m].second] = v;
        }
        if (!is_nonsingular(f, a)) continue;
        Kind kind;
        if (space.k % 2 == 0) kind = Kind::Parabolic;
        else if (pts.size() == hyperbolic) kind = Kind::Hyperbolic;
        else if (pts.size() == elliptic) kind = Kind::Elliptic;
        else continue;
        try {
            QuadraticForm form(space, kind, std::move(a));
            if (form.points() == pts) out.push_back(std::move(form));
        } catch (const SingularForm&) {
            // zero set larger than pts
        }
    }
    return out;
}

Classification classify_family(const HyperplaneFamily& family) {
    const P1Report p1 = check_p1(family);
    if (!p1.holds) throw PreconditionFailed("PreconditionFailed: family violates the point-degree axiom");
    if (!check_p2(family).holds) throw PreconditionFailed("PreconditionFailed: family violates the pencil axiom");
    return classify_checked(family, p1);
}

} // namespace pgq
