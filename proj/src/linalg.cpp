#include "pgq/linalg.hpp"

#include <stdexcept>

namespace pgq {

FieldElement dot(const Field& f, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    FieldElement s = f.zero();
    for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

std::size_t rref(const Field& f, Matrix& m) {
    if (m.empty()) return 0;
    const std::size_t cols = m.front().size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col].value == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);
        const FieldElement scale = f.inv(m[row][col]);
        for (auto& x : m[row]) x = f.mul(x, scale);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].value == 0) continue;
            const FieldElement factor = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] = f.sub(m[r][c], f.mul(factor, m[row][c]));
        }
        ++row;
    }
    m.resize(row);
    return row;
}

Matrix nullspace(const Field& f, Matrix m, std::size_t cols) {
    rref(f, m);
    std::vector<std::size_t> pivot_of_row;
    std::vector<bool> is_pivot(cols, false);
    for (const auto& r : m) {
        std::size_t c = 0;
        while (r[c].value == 0) ++c;
        pivot_of_row.push_back(c);
        is_pivot[c] = true;
    }
    Matrix basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v(cols, f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < m.size(); ++r) v[pivot_of_row[r]] = f.neg(m[r][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const Field& f, Matrix m) { return rref(f, m); }

} // namespace pgq
