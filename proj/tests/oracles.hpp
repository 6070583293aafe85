#pragma once

// Slow, table-free reference implementations used to cross-check the library.

#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "pgq/gf.hpp"
#include "pgq/pg.hpp"

namespace oracle {

using Digits = std::vector<std::uint32_t>;

inline Digits digits(std::uint32_t v, std::uint32_t p, std::uint32_t e) {
    Digits d(e);
    for (auto& x : d) {
        x = v % p;
        v /= p;
    }
    return d;
}

inline std::uint32_t value(const Digits& d, std::uint32_t p) {
    std::uint32_t v = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + *it;
    return v;
}

// Schoolbook product reduced by a monic polynomial, all mod p.
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p, const std::vector<std::uint32_t>& poly) {
    const std::uint32_t e = static_cast<std::uint32_t>(poly.size() - 1);
    const Digits x = digits(a, p, e), y = digits(b, p, e);
    std::vector<std::uint64_t> prod(2 * e, 0);
    for (std::uint32_t i = 0; i < e; ++i)
        for (std::uint32_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
    for (std::size_t d = prod.size(); d-- > e;) {
        const std::uint64_t c = prod[d];
        if (!c) continue;
        for (std::uint32_t i = 0; i <= e; ++i) prod[d - e + i] = (prod[d - e + i] + (p - c) * poly[i]) % p;
    }
    Digits out(e);
    for (std::uint32_t i = 0; i < e; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return value(out, p);
}

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p, std::uint32_t e) {
    Digits x = digits(a, p, e);
    const Digits y = digits(b, p, e);
    for (std::uint32_t i = 0; i < e; ++i) x[i] = (x[i] + y[i]) % p;
    return value(x, p);
}

// Points of PG(3,2) are the nonzero 4-bit vectors; a set is a 15-bit mask
// (bit v-1 for vector v, coordinate 0 most significant).
inline std::uint32_t apply(const std::uint32_t rows[4], std::uint32_t v) {
    std::uint32_t out = 0;
    for (int i = 0; i < 4; ++i) out |= (std::popcount(rows[i] & v) & 1u) << (3 - i);
    return out;
}

inline std::uint32_t mask_of(const std::vector<pgq::ProjPoint>& pts) {
    std::uint32_t m = 0;
    for (const auto& pt : pts) {
        std::uint32_t v = 0;
        for (auto c : pt.coords) v = (v << 1) | c.value;
        m |= 1u << (v - 1);
    }
    return m;
}

// Distinct images of a point set of PG(3,2) under GL(4,2).
inline std::set<std::uint32_t> gl42_orbit(std::uint32_t mask) {
    std::set<std::uint32_t> orbit;
    std::uint32_t rows[4];
    for (std::uint32_t a = 0; a < 1u << 16; ++a) {
        for (int i = 0; i < 4; ++i) rows[i] = (a >> (4 * i)) & 15u;
        std::uint32_t images = 0;
        for (std::uint32_t v = 1; v < 16; ++v) images |= 1u << apply(rows, v);
        if (images != 0xFFFEu) continue; // singular
        std::uint32_t image = 0;
        for (std::uint32_t v = 1; v < 16; ++v)
            if (mask >> (v - 1) & 1u) image |= 1u << (apply(rows, v) - 1);
        orbit.insert(image);
    }
    return orbit;
}

// Random invertible (k+1)x(k+1) matrix over the field, by rejection.
inline pgq::Matrix random_invertible(const pgq::Field& f, std::size_t dim, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
    for (;;) {
        pgq::Matrix m(dim, pgq::Vec(dim));
        for (auto& row : m)
            for (auto& x : row) x = f.element(pick(rng));
        if (pgq::rank(f, m) == dim) return m;
    }
}

// Row vector times matrix.
inline pgq::Vec times(const pgq::Field& f, const pgq::Vec& v, const pgq::Matrix& m) {
    pgq::Vec out(m.front().size(), f.zero());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.add(out[j], f.mul(v[i], m[i][j]));
    return out;
}

// Matrix times column vector.
inline pgq::Vec apply(const pgq::Field& f, const pgq::Matrix& m, const pgq::Vec& v) {
    pgq::Vec out(m.size(), f.zero());
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = pgq::dot(f, m[i], v);
    return out;
}

} // namespace oracle
