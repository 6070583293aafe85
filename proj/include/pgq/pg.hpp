#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pgq/gf.hpp"
#include "pgq/linalg.hpp"

namespace pgq {

class ZeroVector : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class WrongDimension : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// PG(k,q).
struct ProjSpace {
    int k = 0;
    Field field;

    std::uint32_t q() const { return field.q(); }
    std::uint64_t num_points() const;
};

ProjSpace make_space(int k, std::uint32_t q);

/// Canonical representative: leftmost nonzero coordinate is 1.
struct ProjPoint {
    Vec coords;
    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// Hyperplane given by the canonical covector of its defining linear form.
struct Hyperplane {
    Vec covector;
    friend auto operator<=>(const Hyperplane&, const Hyperplane&) = default;
};

/// Codimension-2 subspace stored dually: the 2x(k+1) RREF basis of the
/// linear forms vanishing on it. Equal subspaces have identical rows.
struct Codim2Subspace {
    Vec first;
    Vec second;
    friend auto operator<=>(const Codim2Subspace&, const Codim2Subspace&) = default;
};

/// (q^{k+1}-1)/(q-1); theta(-1) = 0.
std::uint64_t theta(int k, std::uint64_t q);
/// Gaussian binomial [m choose r]_q.
std::uint64_t gaussian_binomial(int m, int r, std::uint64_t q);

/// Scales by the inverse of the leftmost nonzero entry. Throws ZeroVector.
Vec canonicalize(const Field& f, Vec raw);
ProjPoint canonical_point(const ProjSpace& s, Vec raw);
Hyperplane canonical_hyperplane(const ProjSpace& s, Vec raw);

/// Integer key of a coordinate vector: base-q digits, first coordinate most
/// significant. Orders the same way as the vectors themselves.
std::uint64_t encode(const ProjSpace& s, const Vec& v);

std::vector<ProjPoint> enumerate_points(const ProjSpace& s);
std::vector<Hyperplane> enumerate_hyperplanes(const ProjSpace& s);
std::vector<Codim2Subspace> enumerate_codim2(const ProjSpace& s);

bool incident(const ProjSpace& s, const ProjPoint& pt, const Hyperplane& h);
bool contains(const ProjSpace& s, const Codim2Subspace& sub, const ProjPoint& pt);
/// True when h belongs to the pencil of hyperplanes through sub.
bool contains(const ProjSpace& s, const Hyperplane& h, const Codim2Subspace& sub);

/// Intersection of two distinct hyperplanes.
Codim2Subspace meet(const ProjSpace& s, const Hyperplane& a, const Hyperplane& b);
/// The q+1 hyperplanes through sub, in canonical order.
std::vector<Hyperplane> hyperplanes_through(const ProjSpace& s, const Codim2Subspace& sub);

/// Dense indices for sweeps over a whole space: point/hyperplane incidence
/// bits, codim-2 pencils and point lists. Built once, then read-only.
class IncidenceTables {
public:
    explicit IncidenceTables(ProjSpace s, bool with_codim2 = true);

    const ProjSpace& space() const { return space_; }
    const std::vector<ProjPoint>& points() const { return points_; }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
    const std::vector<Codim2Subspace>& codim2() const { return codim2_; }

    std::size_t point_index(const ProjPoint& p) const;
    std::size_t hyperplane_index(const Hyperplane& h) const;

    bool incident(std::size_t point, std::size_t hyperplane) const {
        return incidence_[point * hyperplanes_.size() + hyperplane] != 0;
    }
    const std::vector<std::uint32_t>& points_on(std::size_t hyperplane) const { return points_on_[hyperplane]; }
    const std::vector<std::uint32_t>& hyperplanes_on(std::size_t point) const { return hyperplanes_on_[point]; }
    const std::vector<std::uint32_t>& pencil(std::size_t sub) const { return pencils_[sub]; }
    const std::vector<std::uint32_t>& points_in(std::size_t sub) const { return codim2_points_[sub]; }
    /// Codim-2 subspaces lying in the given hyperplane.
    const std::vector<std::uint32_t>& codim2_in(std::size_t hyperplane) const { return codim2_in_[hyperplane]; }

private:
    ProjSpace space_;
    std::vector<ProjPoint> points_;
    std::vector<Hyperplane> hyperplanes_;
    std::vector<Codim2Subspace> codim2_;
    std::unordered_map<std::uint64_t, std::uint32_t> point_lookup_;
    std::unordered_map<std::uint64_t, std::uint32_t> hyperplane_lookup_;
    std::vector<std::uint8_t> incidence_;
    std::vector<std::vector<std::uint32_t>> points_on_;
    std::vector<std::vector<std::uint32_t>> hyperplanes_on_;
    std::vector<std::vector<std::uint32_t>> pencils_;
    std::vector<std::vector<std::uint32_t>> codim2_points_;
    std::vector<std::vector<std::uint32_t>> codim2_in_;
};

} // namespace pgq
