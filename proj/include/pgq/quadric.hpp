#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pgq/family.hpp"
#include "pgq/pg.hpp"

namespace pgq {

enum class Kind { Hyperbolic, Elliptic, Parabolic };

const char* to_string(Kind k);
Kind kind_for(Sign s);

class UnsupportedSize : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularForm : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotOnQuadric : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a section size matches none of the tabulated values. For a
/// non-singular form this cannot happen, so it always signals a bug.
class UnexpectedSectionSize : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Q(x) = sum_{i<=j} coeffs[i][j] x_i x_j over PG(k,q).
///
/// Construction checks non-singularity (trivial radical of the polar form, or
/// in characteristic 2 a radical on which Q does not vanish) and that the
/// enumerated point count agrees with the kind. The sorted point set is kept.
class QuadraticForm {
public:
    QuadraticForm(ProjSpace space, Kind kind, Matrix coeffs);

    const ProjSpace& space() const { return space_; }
    Kind kind() const { return kind_; }
    const Matrix& coeffs() const { return coeffs_; }
    /// k = 2n+1 for hyperbolic/elliptic, k = 2n for parabolic.
    int n() const { return kind_ == Kind::Parabolic ? space_.k / 2 : (space_.k - 1) / 2; }

    FieldElement evaluate(const Vec& x) const;
    FieldElement evaluate(const ProjPoint& pt) const { return evaluate(pt.coords); }
    /// B(x, .) where B(x,y) = Q(x+y) - Q(x) - Q(y).
    Vec polar_covector(const Vec& x) const;

    const std::vector<ProjPoint>& points() const { return *points_; }
    bool on_quadric(const ProjPoint& pt) const { return evaluate(pt).value == 0; }

    friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
        return a.space_.k == b.space_.k && a.space_.field == b.space_.field && a.kind_ == b.kind_ &&
               a.coeffs_ == b.coeffs_;
    }

private:
    ProjSpace space_;
    Kind kind_;
    Matrix coeffs_;
    std::shared_ptr<const std::vector<ProjPoint>> points_;
};

/// Radical test on a raw upper-triangular coefficient matrix.
bool is_nonsingular(const Field& f, const Matrix& coeffs);

/// Number of points of the non-singular quadric of the given kind and n.
std::uint64_t quadric_size(Kind kind, int n, std::uint64_t q);

/// Hyperbolic: x0x1 + x2x3 + ...; parabolic: x0^2 + x1x2 + ...; elliptic:
/// N(x0,x1) + x2x3 + ... with N = x0^2 - d x1^2 (d the smallest non-square,
/// q odd) or x0^2 + x0x1 + c x1^2 (c the smallest element of trace 1, q even).
QuadraticForm standard_form(Kind kind, int n, const Field& field);

std::vector<ProjPoint> point_set(const QuadraticForm& form);
Hyperplane polar_hyperplane(const QuadraticForm& form, const ProjPoint& pt);

enum class SectionClass { ParabolicSection, TangentCone, C1, C2, C3, C4 };
const char* to_string(SectionClass c);

/// Closed-form intersection numbers and family sizes for Q±(2n+1,q).
struct CountTable {
    int n = 0;
    std::uint32_t q = 0;
    Sign sign = Sign::Plus;
    std::int64_t quadric_size = 0;
    std::int64_t parabolic_hyperplanes = 0;
    std::int64_t h1 = 0;
    std::int64_t h2 = 0;
    std::int64_t c1 = 0;
    std::int64_t c2 = 0;
    std::int64_t c3 = 0;
    std::optional<std::int64_t> c4; // undefined for Q-(3,q)
    std::int64_t black_degree = 0;
    std::int64_t white_degree = 0;
    std::int64_t sigma_size = 0;
    std::int64_t black_in_sigma_plane = 0;
    std::int64_t black_in_other_plane = 0;
    std::int64_t total_points = 0; // theta(2n+1)
    std::int64_t points_per_hyperplane = 0; // theta(2n)

    /// (class, value) for every defined codim-2 intersection number.
    std::vector<std::pair<SectionClass, std::int64_t>> codim2_values() const;

    friend bool operator==(const CountTable&, const CountTable&) = default;
};

/// Exact integer arithmetic; throws NotAPrimePower for invalid q and
/// InexactDivision if any closed form fails to divide (never for valid input).
CountTable expected_counts(int n, std::uint32_t q, Sign sign);

/// Unique s with s(h1-c) + (q+1-s)(h2-c) = |Q| - c, or nullopt if non-integral.
std::optional<std::int64_t> pencil_multiplicity(const CountTable& t, std::int64_t c);

SectionClass classify_hyperplane(const QuadraticForm& form, const Hyperplane& h);
SectionClass classify_codim2(const QuadraticForm& form, const Codim2Subspace& sub);

std::int64_t section_size(const QuadraticForm& form, const Hyperplane& h);
std::int64_t section_size(const QuadraticForm& form, const Codim2Subspace& sub);

/// All hyperplanes meeting the quadric in a parabolic section, signed by kind.
HyperplaneFamily parabolic_family(const QuadraticForm& form);

/// Histograms of section sizes over every hyperplane and every codim-2
/// subspace; the codim-2 sweep is split across `threads` workers.
struct SectionCensus {
    std::map<std::int64_t, std::int64_t> hyperplane_sizes;
    std::map<std::int64_t, std::int64_t> codim2_sizes;
};
SectionCensus section_census(const QuadraticForm& form, unsigned threads = 1);

} // namespace pgq
