#include "pgq/pg.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace pgq {
namespace {

constexpr std::uint64_t kMaxEnumeration = std::uint64_t{1} << 24;

void check_enumerable(std::uint64_t count, const char* what) {
    if (count > kMaxEnumeration)
        throw std::length_error(std::string("enumeration too large: ") + what + " count " + std::to_string(count));
}

// All canonical vectors of length k+1 in increasing encoding order.
std::vector<Vec> canonical_vectors(const ProjSpace& s) {
    check_enumerable(s.num_points(), "points");
    const std::size_t len = static_cast<std::size_t>(s.k) + 1;
    const std::uint32_t q = s.q();
    std::vector<Vec> out;
    out.reserve(s.num_points());
    for (std::size_t lead = len; lead-- > 0;) {
        Vec v(len, FieldElement{0});
        v[lead] = FieldElement{1};
        // Odometer over positions lead+1..len-1, last position fastest.
        while (true) {
            out.push_back(v);
            std::size_t pos = len;
            while (pos-- > lead + 1) {
                if (++v[pos].value < q) break;
                v[pos].value = 0;
            }
            if (pos == lead) break;
        }
    }
    return out;
}

} // namespace

std::uint64_t theta(int k, std::uint64_t q) {
    if (k < 0) return 0;
    std::uint64_t sum = 0, power = 1;
    for (int i = 0; i <= k; ++i) {
        sum += power;
        power *= q;
    }
    return sum;
}

std::uint64_t gaussian_binomial(int m, int r, std::uint64_t q) {
    if (r < 0 || r > m) return 0;
    // Product form, exact at every step: [m,r] = prod (q^{m-i}-1)/(q^{i+1}-1).
    unsigned __int128 num = 1, den = 1;
    for (int i = 0; i < r; ++i) {
        unsigned __int128 a = 1, b = 1;
        for (int j = 0; j < m - i; ++j) a *= q;
        for (int j = 0; j < i + 1; ++j) b *= q;
        num *= (a - 1);
        den *= (b - 1);
    }
    return static_cast<std::uint64_t>(num / den);
}

std::uint64_t ProjSpace::num_points() const { return theta(k, q()); }

ProjSpace make_space(int k, std::uint32_t q) {
    if (k < 1) throw std::invalid_argument("projective dimension must be >= 1");
    ProjSpace s{k, make_field(q)};
    long double size = 1;
    for (int i = 0; i <= k; ++i) size *= q;
    if (size >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max()))
        throw std::invalid_argument("PG(k,q) too large to encode");
    return s;
}

Vec canonicalize(const Field& f, Vec raw) {
    auto lead = std::find_if(raw.begin(), raw.end(), [](FieldElement x) { return x.value != 0; });
    if (lead == raw.end()) throw ZeroVector("ZeroVector: cannot canonicalize the zero vector");
    const FieldElement scale = f.inv(*lead);
    for (auto it = lead; it != raw.end(); ++it) *it = f.mul(*it, scale);
    return raw;
}

ProjPoint canonical_point(const ProjSpace& s, Vec raw) {
    if (raw.size() != static_cast<std::size_t>(s.k) + 1) throw WrongDimension("point has wrong length");
    return {canonicalize(s.field, std::move(raw))};
}

Hyperplane canonical_hyperplane(const ProjSpace& s, Vec raw) {
    if (raw.size() != static_cast<std::size_t>(s.k) + 1) throw WrongDimension("covector has wrong length");
    return {canonicalize(s.field, std::move(raw))};
}

std::uint64_t encode(const ProjSpace& s, const Vec& v) {
    std::uint64_t key = 0;
    for (FieldElement x : v) key = key * s.q() + x.value;
    return key;
}

std::vector<ProjPoint> enumerate_points(const ProjSpace& s) {
    std::vector<ProjPoint> out;
    for (auto& v : canonical_vectors(s)) out.push_back({std::move(v)});
    return out;
}

std::vector<Hyperplane> enumerate_hyperplanes(const ProjSpace& s) {
    std::vector<Hyperplane> out;
    for (auto& v : canonical_vectors(s)) out.push_back({std::move(v)});
    return out;
}

std::vector<Codim2Subspace> enumerate_codim2(const ProjSpace& s) {
    if (s.k < 2) throw WrongDimension("codimension-2 subspaces need k >= 2");
    const std::size_t len = static_cast<std::size_t>(s.k) + 1;
    check_enumerable(gaussian_binomial(s.k + 1, 2, s.q()), "codim-2 subspaces");
    const std::uint32_t q = s.q();
    std::vector<Codim2Subspace> out;
    out.reserve(gaussian_binomial(s.k + 1, 2, q));

    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t j = i + 1; j < len; ++j) {
            // Free slots: row 0 at positions > i except j, row 1 at positions > j.
            std::vector<std::pair<int, std::size_t>> slots;
            for (std::size_t c = i + 1; c < len; ++c)
                if (c != j) slots.emplace_back(0, c);
            for (std::size_t c = j + 1; c < len; ++c) slots.emplace_back(1, c);

            Codim2Subspace sub{Vec(len, FieldElement{0}), Vec(len, FieldElement{0})};
            sub.first[i] = FieldElement{1};
            sub.second[j] = FieldElement{1};
            while (true) {
                out.push_back(sub);
                std::size_t pos = slots.size();
                while (pos-- > 0) {
                    auto& cell = slots[pos].first == 0 ? sub.first[slots[pos].second] : sub.second[slots[pos].second];
                    if (++cell.value < q) break;
                    cell.value = 0;
                }
                if (pos == static_cast<std::size_t>(-1)) break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool incident(const ProjSpace& s, const ProjPoint& pt, const Hyperplane& h) {
    return dot(s.field, pt.coords, h.covector).value == 0;
}

bool contains(const ProjSpace& s, const Codim2Subspace& sub, const ProjPoint& pt) {
    return dot(s.field, pt.coords, sub.first).value == 0 && dot(s.field, pt.coords, sub.second).value == 0;
}

bool contains(const ProjSpace& s, const Hyperplane& h, const Codim2Subspace& sub) {
    return rank(s.field, {sub.first, sub.second, h.covector}) == 2;
}

Codim2Subspace meet(const ProjSpace& s, const Hyperplane& a, const Hyperplane& b) {
    Matrix m{a.covector, b.covector};
    if (rref(s.field, m) != 2) throw std::invalid_argument("meet: hyperplanes coincide");
    return {std::move(m[0]), std::move(m[1])};
}

std::vector<Hyperplane> hyperplanes_through(const ProjSpace& s, const Codim2Subspace& sub) {
    const Field& f = s.field;
    std::vector<Hyperplane> out;
    out.reserve(s.q() + 1);
    out.push_back({sub.second});
    // first has its pivot strictly left of second's, so first + mu*second is canonical.
    for (FieldElement mu : f.elements()) {
        Vec v = sub.first;
        for (std::size_t c = 0; c < v.size(); ++c) v[c] = f.add(v[c], f.mul(mu, sub.second[c]));
        out.push_back({std::move(v)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

IncidenceTables::IncidenceTables(ProjSpace s, bool with_codim2)
    : space_(std::move(s)), points_(enumerate_points(space_)), hyperplanes_(enumerate_hyperplanes(space_)) {
    const std::size_t np = points_.size(), nh = hyperplanes_.size();
    check_enumerable(np * nh, "incidence matrix");
    for (std::size_t i = 0; i < np; ++i) point_lookup_.emplace(encode(space_, points_[i].coords), i);
    for (std::size_t i = 0; i < nh; ++i) hyperplane_lookup_.emplace(encode(space_, hyperplanes_[i].covector), i);

    incidence_.assign(np * nh, 0);
    points_on_.resize(nh);
    hyperplanes_on_.resize(np);
    for (std::size_t p = 0; p < np; ++p) {
        for (std::size_t h = 0; h < nh; ++h) {
            if (!pgq::incident(space_, points_[p], hyperplanes_[h])) continue;
            incidence_[p * nh + h] = 1;
            points_on_[h].push_back(static_cast<std::uint32_t>(p));
            hyperplanes_on_[p].push_back(static_cast<std::uint32_t>(h));
        }
    }

    if (!with_codim2 || space_.k < 2) return;
    codim2_ = enumerate_codim2(space_);
    pencils_.resize(codim2_.size());
    codim2_points_.resize(codim2_.size());
    codim2_in_.resize(nh);
    for (std::size_t c = 0; c < codim2_.size(); ++c) {
        for (const auto& h : hyperplanes_through(space_, codim2_[c])) {
            const auto hi = static_cast<std::uint32_t>(hyperplane_index(h));
            pencils_[c].push_back(hi);
            codim2_in_[hi].push_back(static_cast<std::uint32_t>(c));
        }
        // A point is in the subspace iff it lies on two distinct pencil members.
        const auto& on_a = points_on_[pencils_[c][0]];
        const std::size_t hb = pencils_[c][1];
        for (std::uint32_t p : on_a)
            if (incidence_[p * nh + hb]) codim2_points_[c].push_back(p);
    }
}

std::size_t IncidenceTables::point_index(const ProjPoint& p) const {
    auto it = point_lookup_.find(encode(space_, p.coords));
    if (it == point_lookup_.end()) throw std::out_of_range("point is not canonical or not in this space");
    return it->second;
}

std::size_t IncidenceTables::hyperplane_index(const Hyperplane& h) const {
    auto it = hyperplane_lookup_.find(encode(space_, h.covector));
    if (it == hyperplane_lookup_.end()) throw std::out_of_range("hyperplane is not canonical or not in this space");
    return it->second;
}

} // namespace pgq
