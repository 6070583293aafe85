#pragma once

#include <cstddef>
#include <vector>

#include "pgq/gf.hpp"

namespace pgq {

using Vec = std::vector<FieldElement>;
using Matrix = std::vector<Vec>;

FieldElement dot(const Field& f, const Vec& a, const Vec& b);

/// Reduces m to reduced row-echelon form in place, drops zero rows, returns the rank.
std::size_t rref(const Field& f, Matrix& m);

/// Basis (in RREF-derived order) of {x : m x = 0}; `cols` is needed when m is empty.
Matrix nullspace(const Field& f, Matrix m, std::size_t cols);

std::size_t rank(const Field& f, Matrix m);

} // namespace pgq
