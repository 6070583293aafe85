#include "pgq/gf.hpp"

#include <string>

namespace pgq {
namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inverse_mod_prime(std::uint32_t a, std::uint32_t p) {
    // p is small (< 2^16), so Fermat via repeated squaring is plenty.
    std::uint64_t result = 1, base = a % p;
    for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1u) result = result * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo a nonzero divisor over GF(p).
Poly poly_mod(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    const std::size_t db = b.size() - 1;
    const std::uint32_t lead_inv = inverse_mod_prime(b.back(), p);
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
        for (std::size_t i = 0; i <= db; ++i) {
            const std::uint64_t sub = factor * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

Poly digits_of(std::uint32_t value, std::uint32_t p, std::uint32_t e) {
    Poly d(e);
    for (std::uint32_t i = 0; i < e; ++i) {
        d[i] = value % p;
        value /= p;
    }
    return d;
}

std::uint32_t value_of(const Poly& d, std::uint32_t p) {
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

// Product of two encoded elements reduced by the (monic) modulus.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, const Poly& modulus, std::uint32_t p,
                       std::uint32_t e) {
    const Poly da = digits_of(a, p, e), db = digits_of(b, p, e);
    Poly prod(2 * e, 0);
    for (std::uint32_t i = 0; i < e; ++i)
        for (std::uint32_t j = 0; j < e; ++j)
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p);
    Poly r = poly_mod(prod, modulus, p);
    r.resize(e, 0);
    return value_of(r, p);
}

} // namespace

std::pair<std::uint32_t, std::uint32_t> prime_power_decompose(std::uint64_t q) {
    if (q < 2) throw NotAPrimePower("NotAPrimePower: " + std::to_string(q));
    std::uint64_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) p = q;
    std::uint64_t rest = q;
    std::uint32_t e = 0;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) throw NotAPrimePower("NotAPrimePower: " + std::to_string(q));
    return {static_cast<std::uint32_t>(p), e};
}

bool is_prime_power(std::uint64_t q) {
    try {
        prime_power_decompose(q);
        return true;
    } catch (const NotAPrimePower&) {
        return false;
    }
}

bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
    Poly f = poly;
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t deg = f.size() - 1;
    if (deg == 1) return true;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly g(d + 1);
            std::uint64_t x = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(x % p);
                x /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

Field make_field(std::uint32_t q) {
    const auto [p, e] = prime_power_decompose(q);
    if (q > kMaxFieldOrder) throw NotAPrimePower("field order out of supported range: " + std::to_string(q));

    auto t = std::make_shared<Field::Tables>();
    t->p = p;
    t->e = e;
    t->q = q;

    // Smallest monic irreducible, constant term most significant in the ordering.
    if (e == 1) {
        t->poly = {0, 1};
    } else {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < e; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly cand(e + 1);
            std::uint64_t x = idx;
            for (std::uint32_t i = e; i-- > 0;) {
                cand[i] = static_cast<std::uint32_t>(x % p);
                x /= p;
            }
            cand[e] = 1;
            if (is_irreducible(cand, p)) {
                t->poly = std::move(cand);
                break;
            }
        }
    }

    t->neg.resize(q);
    for (std::uint32_t a = 0; a < q; ++a) {
        Poly d = digits_of(a, p, e);
        for (auto& c : d) c = (p - c) % p;
        t->neg[a] = value_of(d, p);
    }

    // Find the smallest primitive element and fill exp/log.
    t->exp.assign(2 * (q - 1), 0);
    t->log.assign(q, 0);
    for (std::uint32_t g = (q == 2 ? 1 : 2); g < q; ++g) {
        std::uint32_t x = 1;
        std::uint32_t order = 0;
        do {
            x = slow_mul(x, g, t->poly, p, e);
            ++order;
        } while (x != 1 && order < q);
        if (order != q - 1) continue;
        x = 1;
        for (std::uint32_t i = 0; i < q - 1; ++i) {
            t->exp[i] = t->exp[i + q - 1] = x;
            t->log[x] = i;
            x = slow_mul(x, g, t->poly, p, e);
        }
        break;
    }

    if (p != 2 && e > 1 && q <= 1024) {
        t->add.resize(std::size_t{q} * q);
        for (std::uint32_t a = 0; a < q; ++a) {
            const Poly da = digits_of(a, p, e);
            for (std::uint32_t b = 0; b < q; ++b) {
                Poly db = digits_of(b, p, e);
                for (std::uint32_t i = 0; i < e; ++i) db[i] = (db[i] + da[i]) % p;
                t->add[std::size_t{a} * q + b] = static_cast<std::uint16_t>(value_of(db, p));
            }
        }
    }
    return Field(std::move(t));
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
    const Tables& t = *tables_;
    if (t.p == 2) return {a.value ^ b.value};
    if (t.e == 1) return {(a.value + b.value) % t.p};
    if (!t.add.empty()) return {t.add[std::size_t{a.value} * t.q + b.value]};
    std::uint32_t result = 0, scale = 1, x = a.value, y = b.value;
    for (std::uint32_t i = 0; i < t.e; ++i) {
        result += ((x % t.p + y % t.p) % t.p) * scale;
        x /= t.p;
        y /= t.p;
        scale *= t.p;
    }
    return {result};
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
    if (a.value == 0 || b.value == 0) return {0};
    const Tables& t = *tables_;
    return {t.exp[t.log[a.value] + t.log[b.value]]};
}

FieldElement Field::inv(FieldElement a) const {
    if (a.value == 0) throw DivisionByZero("DivisionByZero: inverse of 0");
    const Tables& t = *tables_;
    return {t.exp[(t.q - 1 - t.log[a.value]) % (t.q - 1)]};
}

FieldElement Field::pow(FieldElement a, std::uint64_t exponent) const {
    if (exponent == 0) return one();
    if (a.value == 0) return zero();
    const Tables& t = *tables_;
    const std::uint64_t l = (std::uint64_t{t.log[a.value]} * (exponent % (t.q - 1))) % (t.q - 1);
    return {t.exp[l]};
}

FieldElement Field::trace(FieldElement a) const {
    FieldElement sum = zero();
    FieldElement x = a;
    for (std::uint32_t i = 0; i < e(); ++i) {
        sum = add(sum, x);
        x = pow(x, p());
    }
    return sum;
}

bool Field::is_square(FieldElement a) const {
    if (a.value == 0 || p() == 2) return true;
    return tables_->log[a.value] % 2 == 0;
}

FieldElement Field::element(std::uint32_t value) const {
    if (value >= q()) throw std::out_of_range("field element encoding out of range: " + std::to_string(value));
    return {value};
}

std::vector<FieldElement> Field::elements() const {
    std::vector<FieldElement> out(q());
    for (std::uint32_t v = 0; v < q(); ++v) out[v] = {v};
    return out;
}

} // namespace pgq
