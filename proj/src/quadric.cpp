#include "pgq/quadric.hpp"

#include <algorithm>
#include <string>

#include "pgq/bigint.hpp"
#include "pgq/parallel.hpp"

namespace pgq {
namespace {

constexpr std::uint64_t kMaxQuadricSpace = std::uint64_t{1} << 22;

void check_odd_dimension(const QuadraticForm& form) {
    if (form.space().k % 2 == 0) throw WrongDimension("section classification needs odd projective dimension");
}

} // namespace

const char* to_string(Kind k) {
    switch (k) {
    case Kind::Hyperbolic: return "hyperbolic";
    case Kind::Elliptic: return "elliptic";
    case Kind::Parabolic: return "parabolic";
    }
    return "?";
}

Kind kind_for(Sign s) { return s == Sign::Plus ? Kind::Hyperbolic : Kind::Elliptic; }

const char* to_string(SectionClass c) {
    switch (c) {
    case SectionClass::ParabolicSection: return "ParabolicSection";
    case SectionClass::TangentCone: return "TangentCone";
    case SectionClass::C1: return "C1";
    case SectionClass::C2: return "C2";
    case SectionClass::C3: return "C3";
    case SectionClass::C4: return "C4";
    }
    return "?";
}

std::uint64_t quadric_size(Kind kind, int n, std::uint64_t q) {
    if (kind == Kind::Parabolic) return theta(2 * n - 1, q);
    const BigInt e = kind == Kind::Hyperbolic ? 1 : -1;
    const BigInt v = exact_div((ipow(q, n + 1) - e) * (ipow(q, n) + e), BigInt(q - 1), "quadric size");
    return static_cast<std::uint64_t>(v);
}

bool is_nonsingular(const Field& f, const Matrix& a) {
    const std::size_t len = a.size();
    Matrix polar(len, Vec(len, f.zero()));
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = 0; j < len; ++j) {
            if (i < j) polar[i][j] = a[i][j];
            else if (i > j) polar[i][j] = a[j][i];
            else polar[i][j] = f.add(a[i][i], a[i][i]);
        }
    const Matrix radical = nullspace(f, polar, len);
    if (radical.empty()) return true;
    if (f.p() != 2 || radical.size() > 1) return false;
    // Characteristic 2, odd length: Q must not vanish on the 1-dimensional radical.
    FieldElement value = f.zero();
    const Vec& v = radical.front();
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = i; j < len; ++j) value = f.add(value, f.mul(a[i][j], f.mul(v[i], v[j])));
    return value.value != 0;
}

QuadraticForm::QuadraticForm(ProjSpace space, Kind kind, Matrix coeffs)
    : space_(std::move(space)), kind_(kind), coeffs_(std::move(coeffs)) {
    const std::size_t len = static_cast<std::size_t>(space_.k) + 1;
    const bool odd = space_.k % 2 == 1;
    if ((kind_ == Kind::Parabolic) == odd)
        throw WrongDimension(std::string(to_string(kind_)) + " quadric in PG(" + std::to_string(space_.k) + ",q)");
    if (coeffs_.size() != len) throw WrongDimension("coefficient matrix has wrong size");
    for (std::size_t i = 0; i < len; ++i) {
        if (coeffs_[i].size() != len) throw WrongDimension("coefficient matrix has wrong size");
        for (std::size_t j = 0; j < i; ++j)
            if (coeffs_[i][j].value != 0) throw std::invalid_argument("coefficient matrix must be upper triangular");
    }
    if (space_.num_points() > kMaxQuadricSpace)
        throw UnsupportedSize("UnsupportedSize: PG(" + std::to_string(space_.k) + "," + std::to_string(space_.q()) + ")");
    if (!is_nonsingular(space_.field, coeffs_)) throw SingularForm("quadratic form is singular");

    auto pts = std::make_shared<std::vector<ProjPoint>>();
    for (auto& p : enumerate_points(space_))
        if (evaluate(p).value == 0) pts->push_back(std::move(p));
    const std::uint64_t expected = quadric_size(kind_, n(), space_.q());
    if (pts->size() != expected)
        throw SingularForm("point count " + std::to_string(pts->size()) + " does not match " + to_string(kind_) +
                           " count " + std::to_string(expected));
    points_ = std::move(pts);
}

FieldElement QuadraticForm::evaluate(const Vec& x) const {
    const Field& f = space_.field;
    FieldElement sum = f.zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].value == 0) continue;
        FieldElement row = f.zero();
        for (std::size_t j = i; j < x.size(); ++j) row = f.add(row, f.mul(coeffs_[i][j], x[j]));
        sum = f.add(sum, f.mul(x[i], row));
    }
    return sum;
}

Vec QuadraticForm::polar_covector(const Vec& x) const {
    const Field& f = space_.field;
    const std::size_t len = x.size();
    Vec out(len, f.zero());
    for (std::size_t j = 0; j < len; ++j) {
        FieldElement s = f.zero();
        for (std::size_t i = 0; i < j; ++i) s = f.add(s, f.mul(coeffs_[i][j], x[i]));
        for (std::size_t i = j + 1; i < len; ++i) s = f.add(s, f.mul(coeffs_[j][i], x[i]));
        const FieldElement diag = f.mul(coeffs_[j][j], x[j]);
        out[j] = f.add(s, f.add(diag, diag));
    }
    return out;
}

QuadraticForm standard_form(Kind kind, int n, const Field& field) {
    if (n < 1) throw UnsupportedSize("UnsupportedSize: n must be >= 1");
    const int k = kind == Kind::Parabolic ? 2 * n : 2 * n + 1;
    ProjSpace space{k, field};
    const std::size_t len = static_cast<std::size_t>(k) + 1;
    Matrix a(len, Vec(len, field.zero()));

    std::size_t start = 0;
    if (kind == Kind::Parabolic) {
        a[0][0] = field.one();
        start = 1;
    } else if (kind == Kind::Elliptic) {
        a[0][0] = field.one();
        if (field.p() == 2) {
            a[0][1] = field.one();
            for (auto c : field.elements())
                if (field.trace(c).value == 1) {
                    a[1][1] = c;
                    break;
                }
        } else {
            for (auto d : field.elements())
                if (!field.is_square(d)) {
                    a[1][1] = field.neg(d);
                    break;
                }
        }
        start = 2;
    }
    for (std::size_t i = start; i + 1 < len; i += 2) a[i][i + 1] = field.one();
    return QuadraticForm(std::move(space), kind, std::move(a));
}

std::vector<ProjPoint> point_set(const QuadraticForm& form) { return form.points(); }

Hyperplane polar_hyperplane(const QuadraticForm& form, const ProjPoint& pt) {
    if (!form.on_quadric(pt)) throw NotOnQuadric("NotOnQuadric: point is not on the quadric");
    return {canonicalize(form.space().field, form.polar_covector(pt.coords))};
}

std::vector<std::pair<SectionClass, std::int64_t>> CountTable::codim2_values() const {
    std::vector<std::pair<SectionClass, std::int64_t>> out{
        {SectionClass::C1, c1}, {SectionClass::C2, c2}, {SectionClass::C3, c3}};
    if (c4) out.emplace_back(SectionClass::C4, *c4);
    return out;
}

CountTable expected_counts(int n, std::uint32_t q, Sign sign) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    prime_power_decompose(q);
    const BigInt e = sign_value(sign);
    const BigInt qm1 = q - 1;
    auto pw = [q](int x) { return ipow(q, x); };
    auto th = [&](int k) { return exact_div(pw(k + 1) - 1, qm1, "theta"); };

    CountTable t;
    t.n = n;
    t.q = q;
    t.sign = sign;
    const BigInt quadric = exact_div((pw(n + 1) - e) * (pw(n) + e), qm1, "quadric size");
    t.quadric_size = to_i64(quadric);
    t.parabolic_hyperplanes = to_i64(pw(n) * (pw(n + 1) - e));
    t.h1 = to_i64(exact_div(pw(2 * n) - 1, qm1, "h1"));
    t.h2 = to_i64(1 + q * exact_div((pw(n) - e) * (pw(n - 1) + e), qm1, "h2"));
    t.c1 = to_i64(exact_div((pw(n) + e) * (pw(n - 1) - e), qm1, "c1"));
    t.c2 = to_i64(1 + exact_div(q * (pw(2 * n - 2) - 1), qm1, "c2"));
    t.c3 = to_i64(exact_div((pw(n) - e) * (pw(n - 1) + e), qm1, "c3"));
    if (n >= 2) {
        t.c4 = to_i64(1 + q + exact_div(pw(2) * (pw(n - 1) - e) * (pw(n - 2) + e), qm1, "c4"));
    } else if (sign == Sign::Plus) {
        // The q^{n-2} factor is multiplied by q^{n-1} - 1 = 0.
        t.c4 = q + 1;
    }
    t.black_degree = to_i64(pw(n) * (pw(n) - e));
    t.white_degree = to_i64(pw(2 * n));
    t.sigma_size = t.parabolic_hyperplanes;
    t.black_in_sigma_plane = t.h1;
    t.black_in_other_plane = to_i64(exact_div(pw(2 * n) + e * pw(n + 1) - e * pw(n) - 1, qm1, "black_in_other_plane"));
    t.total_points = to_i64(th(2 * n + 1));
    t.points_per_hyperplane = to_i64(th(2 * n));
    return t;
}

std::optional<std::int64_t> pencil_multiplicity(const CountTable& t, std::int64_t c) {
    const BigInt lhs_coeff = BigInt(t.h1) - t.h2;
    const BigInt rhs = BigInt(t.quadric_size) - c - BigInt(t.q + 1) * (BigInt(t.h2) - c);
    if (lhs_coeff == 0 || rhs % lhs_coeff != 0) return std::nullopt;
    return to_i64(rhs / lhs_coeff);
}

std::int64_t section_size(const QuadraticForm& form, const Hyperplane& h) {
    return std::count_if(form.points().begin(), form.points().end(),
                         [&](const ProjPoint& p) { return incident(form.space(), p, h); });
}

std::int64_t section_size(const QuadraticForm& form, const Codim2Subspace& sub) {
    return std::count_if(form.points().begin(), form.points().end(),
                         [&](const ProjPoint& p) { return contains(form.space(), sub, p); });
}

SectionClass classify_hyperplane(const QuadraticForm& form, const Hyperplane& h) {
    check_odd_dimension(form);
    const CountTable t = expected_counts(form.n(), form.space().q(), form.kind() == Kind::Hyperbolic ? Sign::Plus : Sign::Minus);
    const std::int64_t size = section_size(form, h);
    if (size == t.h1) return SectionClass::ParabolicSection;
    if (size == t.h2) return SectionClass::TangentCone;
    throw UnexpectedSectionSize("UnexpectedSectionSize: hyperplane section of size " + std::to_string(size));
}

SectionClass classify_codim2(const QuadraticForm& form, const Codim2Subspace& sub) {
    check_odd_dimension(form);
    const CountTable t = expected_counts(form.n(), form.space().q(), form.kind() == Kind::Hyperbolic ? Sign::Plus : Sign::Minus);
    const std::int64_t size = section_size(form, sub);
    for (const auto& [cls, value] : t.codim2_values())
        if (value == size) return cls;
    throw UnexpectedSectionSize("UnexpectedSectionSize: codim-2 section of size " + std::to_string(size));
}

HyperplaneFamily parabolic_family(const QuadraticForm& form) {
    check_odd_dimension(form);
    std::vector<Hyperplane> members;
    for (auto& h : enumerate_hyperplanes(form.space()))
        if (classify_hyperplane(form, h) == SectionClass::ParabolicSection) members.push_back(std::move(h));
    return make_family(form.space(), form.kind() == Kind::Hyperbolic ? Sign::Plus : Sign::Minus, std::move(members));
}

SectionCensus section_census(const QuadraticForm& form, unsigned threads) {
    SectionCensus census;
    for (const auto& h : enumerate_hyperplanes(form.space())) ++census.hyperplane_sizes[section_size(form, h)];
    if (form.space().k < 2) return census;

    const auto subs = enumerate_codim2(form.space());
    std::vector<std::map<std::int64_t, std::int64_t>> partial(std::max(1u, threads));
    parallel_for(subs.size(), threads, [&](std::size_t begin, std::size_t end, unsigned w) {
        for (std::size_t i = begin; i < end; ++i) ++partial[w][section_size(form, subs[i])];
    });
    for (const auto& m : partial)
        for (const auto& [size, count] : m) census.codim2_sizes[size] += count;
    return census;
}

} // namespace pgq
