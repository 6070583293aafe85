#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pgq/family.hpp"
#include "pgq/quadric.hpp"

namespace pgq {

using Histogram = std::map<std::int64_t, std::int64_t>;
using PointSet = std::vector<ProjPoint>; // sorted, distinct

class P1Violated : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class PreconditionFailed : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class NotAnOvoid : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Point-degree axiom: every point lies on black_degree or white_degree members.
struct P1Report {
    bool holds = false;
    PointSet black;
    PointSet white;
    std::vector<std::pair<ProjPoint, std::int64_t>> violations;
};

/// Pencil axiom: every codim-2 subspace inside some member lies in at least
/// q-1 members. The histogram covers every codim-2 subspace of the space; its
/// s=0 bucket counts the exempt subspaces that lie in no member.
struct P2Report {
    bool holds = false;
    Histogram multiplicity_histogram;
    std::vector<std::pair<Codim2Subspace, std::int64_t>> violations;
};

enum class Verdict { ParabolicOfHyperbolic, ParabolicOfElliptic, OvoidSecant, LineTransversal, Unknown };
const char* to_string(Verdict v);

struct OvoidWitness {
    PointSet points;
    /// Whether the ovoid is an elliptic quadric. Decided by reconstruction for
    /// q odd; left open for q even.
    std::optional<bool> classical;
};

struct Classification {
    Verdict verdict = Verdict::Unknown;
    std::variant<std::monostate, QuadraticForm, OvoidWitness, Codim2Subspace> witness;
};

struct FamilyAnalysis {
    CountTable expected;
    std::int64_t family_size = 0;
    P1Report p1;
    P2Report p2;
    std::int64_t b = 0;
    std::int64_t w = 0;
    std::optional<std::int64_t> r; // present iff q^n divides |family|
    Histogram black_per_member;
    Histogram black_per_nonmember;
    Histogram codim2_black_histogram;
    /// Present only when both axioms hold.
    std::optional<Classification> verdict;
    /// Every counting identity that failed for a family passing the point axiom.
    std::vector<std::string> theorem_violations;
};

std::map<ProjPoint, std::int64_t> point_degrees(const HyperplaneFamily& family);
P1Report check_p1(const HyperplaneFamily& family);
P2Report check_p2(const HyperplaneFamily& family);
FamilyAnalysis analyze(const HyperplaneFamily& family, unsigned threads = 1);

/// Black points of a family satisfying the point axiom; throws P1Violated.
PointSet black_set(const HyperplaneFamily& family);

/// Every hyperplane meets pts in h1 or h2 points of the matching count table.
bool is_quasi_quadric(const ProjSpace& space, const PointSet& pts, Sign sign);

/// q^2+1 points of PG(3,q), no three collinear. Throws WrongDimension if k != 3.
bool is_ovoid(const ProjSpace& space, const PointSet& pts);
/// Planes meeting the ovoid in q+1 points, with sign Minus.
HyperplaneFamily ovoid_secant_family(const ProjSpace& space, const PointSet& pts);
/// Planes of PG(3,q) not containing the line, with sign Minus.
HyperplaneFamily line_transversal_family(const ProjSpace& space, const Codim2Subspace& line);

struct BlockingSetResult {
    bool blocking = false;
    bool minimal = false; // blocking and exactly q+1 points
    bool is_line = false; // the points are collinear and fill a line
};
BlockingSetResult is_blocking_set(const ProjSpace& space, const PointSet& pts, const Hyperplane& plane);

/// Non-singular quadratic forms whose zero set is exactly pts, one per
/// projective class. Gives up (returns empty) when the solution space has
/// more than `max_candidates` projective points.
std::vector<QuadraticForm> quadrics_through(const ProjSpace& space, const PointSet& pts,
                                            std::uint64_t max_candidates = 1u << 16);

/// The line through the points, if they are collinear and span exactly a line.
std::optional<Codim2Subspace> line_spanned_by(const ProjSpace& space, const PointSet& pts);

/// Throws PreconditionFailed unless both axioms hold.
Classification classify_family(const HyperplaneFamily& family);

} // namespace pgq
