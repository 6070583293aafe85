#pragma once

#include <string>
#include <vector>

#include "pgq/pg.hpp"

namespace pgq {

/// Which row of the ± convention is in force: Plus reads ± as + (hyperbolic),
/// Minus reads ± as − (elliptic).
enum class Sign { Plus, Minus };

inline int sign_value(Sign s) { return s == Sign::Plus ? 1 : -1; }
inline const char* sign_symbol(Sign s) { return s == Sign::Plus ? "+" : "-"; }
Sign parse_sign(const std::string& text);

/// A candidate family of hyperplanes of PG(2n+1,q) read under a fixed sign.
/// Members are canonical, distinct and kept sorted.
struct HyperplaneFamily {
    ProjSpace space;
    Sign sign = Sign::Plus;
    std::vector<Hyperplane> members;

    int n() const { return (space.k - 1) / 2; }
    bool contains(const Hyperplane& h) const;
};

/// Validates (nonempty, odd k, canonical, distinct) and sorts the members.
HyperplaneFamily make_family(ProjSpace space, Sign sign, std::vector<Hyperplane> members);

} // namespace pgq
