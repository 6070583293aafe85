#include "pgq/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <ostream>
#include <sstream>

#include "pgq/bigint.hpp"

namespace pgq {
namespace {

FoundFamily verify(HyperplaneFamily family) {
    FamilyAnalysis a = analyze(family);
    if (!a.p1.holds || !a.p2.holds) throw std::logic_error("search emitted a family that fails re-verification");
    return {std::move(family), std::move(a)};
}

void sort_found(std::vector<FoundFamily>& v) {
    std::sort(v.begin(), v.end(), [](const FoundFamily& a, const FoundFamily& b) { return a.family.members < b.family.members; });
}

class Backtracker {
public:
    Backtracker(int n, std::uint32_t q, Sign sign, const SearchLimits& limits)
        : limits_(limits), tables_(make_space(2 * n + 1, q)), sign_(sign), q_(q) {
        const CountTable t = expected_counts(n, q, sign);
        targets_ = {t.black_degree, t.white_degree};
        std::sort(targets_.begin(), targets_.end());

        const std::int64_t qn = to_i64(ipow(q, n));
        const std::int64_t top = to_i64(ipow(q, n + 1));
        const std::int64_t lo = sign == Sign::Plus ? top - q : top + 1;
        const std::int64_t hi = sign == Sign::Plus ? top - 1 : top + q;
        for (std::int64_t r = lo; r <= hi; ++r) sizes_.push_back(qn * r);

        const std::size_t np = tables_.points().size(), nc = tables_.codim2().size();
        degree_.assign(np, 0);
        point_rem_.resize(np);
        for (std::size_t p = 0; p < np; ++p) point_rem_[p] = static_cast<std::int64_t>(tables_.hyperplanes_on(p).size());
        pencil_.assign(nc, 0);
        pencil_rem_.assign(nc, static_cast<std::int64_t>(q) + 1);
        chosen_.assign(tables_.hyperplanes().size(), false);
    }

    SearchResult run() {
        start_ = std::chrono::steady_clock::now();
        descend(0);
        result_.exhaustive = true;
        result_.nodes_explored = nodes_;
        sort_found(result_.families);
        return std::move(result_);
    }

private:
    bool point_ok(std::size_t p) const {
        const std::int64_t d = degree_[p], top = d + point_rem_[p];
        return std::any_of(targets_.begin(), targets_.end(), [&](std::int64_t t) { return d <= t && t <= top; });
    }
    bool pencil_ok(std::size_t c) const {
        const std::int64_t s = pencil_[c];
        return s == 0 || s + pencil_rem_[c] >= static_cast<std::int64_t>(q_) - 1;
    }

    // Decides hyperplane h; returns false if some constraint became infeasible.
    bool apply(std::size_t h, bool include) {
        chosen_[h] = include;
        count_ += include ? 1 : 0;
        bool ok = true;
        for (std::uint32_t p : tables_.points_on(h)) {
            --point_rem_[p];
            degree_[p] += include ? 1 : 0;
            ok = ok && point_ok(p);
        }
        for (std::uint32_t c : tables_.codim2_in(h)) {
            --pencil_rem_[c];
            pencil_[c] += include ? 1 : 0;
            ok = ok && pencil_ok(c);
        }
        return ok;
    }

    void undo(std::size_t h, bool include) {
        chosen_[h] = false;
        count_ -= include ? 1 : 0;
        for (std::uint32_t p : tables_.points_on(h)) {
            ++point_rem_[p];
            degree_[p] -= include ? 1 : 0;
        }
        for (std::uint32_t c : tables_.codim2_in(h)) {
            ++pencil_rem_[c];
            pencil_[c] -= include ? 1 : 0;
        }
    }

    void tick(std::size_t depth) {
        ++nodes_;
        if (limits_.progress && limits_.report_every && nodes_ % limits_.report_every == 0)
            *limits_.progress << "search: nodes=" << nodes_ << " depth=" << depth << " found=" << result_.families.size()
                              << '\n';
        const bool over_nodes = nodes_ > limits_.node_budget;
        bool over_time = false;
        if ((nodes_ & 0xfff) == 0) {
            const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
            over_time = spent.count() > limits_.time_budget;
        }
        if (over_nodes || over_time) {
            result_.exhaustive = false;
            result_.nodes_explored = nodes_;
            sort_found(result_.families);
            throw BudgetExceeded(std::string("BudgetExceeded: ") + (over_nodes ? "node" : "time") + " budget exhausted after " +
                                     std::to_string(nodes_) + " nodes",
                                 std::move(result_));
        }
    }

    void descend(std::size_t h) {
        const std::size_t nh = tables_.hyperplanes().size();
        if (h == nh) {
            if (std::find(sizes_.begin(), sizes_.end(), count_) == sizes_.end()) return;
            std::vector<Hyperplane> members;
            for (std::size_t i = 0; i < nh; ++i)
                if (chosen_[i]) members.push_back(tables_.hyperplanes()[i]);
            result_.families.push_back(verify(make_family(tables_.space(), sign_, std::move(members))));
            return;
        }
        const std::int64_t remaining = static_cast<std::int64_t>(nh - h);
        for (bool include : {true, false}) {
            tick(h);
            const std::int64_t after = count_ + (include ? 1 : 0);
            const bool size_ok = after <= sizes_.back() && after + remaining - 1 >= sizes_.front();
            if (apply(h, include) && size_ok) descend(h + 1);
            undo(h, include);
        }
    }

    const SearchLimits& limits_;
    IncidenceTables tables_;
    Sign sign_;
    std::uint32_t q_;
    std::vector<std::int64_t> targets_;
    std::vector<std::int64_t> sizes_;
    std::vector<std::int64_t> degree_, point_rem_, pencil_, pencil_rem_;
    std::vector<bool> chosen_;
    std::int64_t count_ = 0;
    std::uint64_t nodes_ = 0;
    std::chrono::steady_clock::time_point start_;
    SearchResult result_;
};

Rational b_from_r(std::uint32_t q, int n, const BigInt& e, const BigInt& r) {
    const BigInt qn = ipow(q, n);
    return ratio(qn + e, BigInt(q - 1) * (2 * qn + e)) * Rational(e * qn * (ipow(q, 2 * n + 2) - 1) - e * r * (qn * r - 1));
}

BigInt theta_big(int k, std::uint32_t q) { return exact_div(ipow(q, k + 1) - 1, BigInt(q - 1), "theta"); }

void run_sign(ConsistencyReport& report, Sign sign) {
    const int n = report.n;
    const std::uint32_t q = report.q;
    const BigInt e = sign_value(sign);
    const BigInt qn = ipow(q, n), top = ipow(q, n + 1);
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        report.checks.push_back({std::move(name), sign, ok, std::move(detail)});
    };

    CountTable t;
    try {
        t = expected_counts(n, q, sign);
        add("count-table-exact", true);
    } catch (const std::exception& ex) {
        add("count-table-exact", false, ex.what());
        return;
    }

    const BigInt r_std = top - e;
    const BigInt b_std = exact_div((top - e) * (qn + e), BigInt(q - 1));
    const Rational b4 = b_from_r(q, n, e, r_std);
    add("black-count-from-r", b4 == Rational(b_std), "triple count gives " + b4.str() + ", closed form " + b_std.str());

    // q^n b = ∓theta(2n)|S| ± q^{2n} theta(2n+1) with |S| = q^n r
    const BigInt rhs = -e * theta_big(2 * n, q) * qn * r_std + e * qn * qn * theta_big(2 * n + 1, q);
    add("black-count-from-size", rhs == qn * b_std, "q^n b = " + rhs.str());

    const Rational b_top = b_from_r(q, n, e, top);
    add("non-integral-at-r=q^(n+1)", boost::multiprecision::denominator(b_top) != 1, "b = " + b_top.str());

    // Roots k in 1..q of the black-count equation with r = q^{n+1} ∓ k.
    std::vector<std::uint32_t> roots;
    for (std::uint32_t k = 1; k <= q; ++k) {
        const BigInt r = top - e * k;
        const Rational lhs = ratio(r * (qn + e), BigInt(q - 1)) * Rational(e * top - e * r);
        const Rational rhs2 = Rational(e * qn * theta_big(2 * n + 1, q) - e * theta_big(2 * n, q) * r);
        if (lhs == rhs2) roots.push_back(k);
    }
    const bool extra = n == 1 && sign == Sign::Minus;
    std::vector<std::uint32_t> want{1};
    if (extra && q != 1) want.push_back(q);
    std::ostringstream roots_text;
    for (auto k : roots) roots_text << k << ' ';
    add("r-equation-roots", roots == want, "k roots: " + roots_text.str());
    if (extra)
        for (auto k : roots) report.minus_r_roots.push_back((top + k).str());

    // Black points in a member, solved from the pair count, for every r in range.
    const BigInt th2n = theta_big(2 * n, q), th2n1 = theta_big(2 * n - 1, q);
    const BigInt lo = sign == Sign::Plus ? top - q : top + 1;
    const BigInt hi = sign == Sign::Plus ? top - 1 : top + q;
    bool member_ok = true;
    for (BigInt r = lo; r <= hi; ++r) {
        // b_pi (d_b - 1) + (th2n - b_pi)(d_w - 1) = (q^n r - 1) th2n1
        const BigInt db = qn * qn - e * qn, dw = qn * qn;
        const Rational solved = ratio((qn * r - 1) * th2n1 - th2n * (dw - 1), (db - 1) - (dw - 1));
        if (solved != Rational(th2n1 * (e * top - e * r))) member_ok = false;
    }
    add("black-per-member", member_ok);

    // Same count for a non-member at the standard family size.
    {
        const BigInt size = qn * r_std;
        const BigInt db = qn * qn - e * qn, dw = qn * qn;
        const BigInt th_all = theta_big(2 * n + 1, q);
        // b_pi (th2n - d_b - 1) + (th2n - b_pi)(th2n - d_w - 1) = (th_all - size - 1) th2n1
        const Rational solved = ratio((th_all - size - 1) * th2n1 - th2n * (th2n - dw - 1), (th2n - db - 1) - (th2n - dw - 1));
        add("black-per-nonmember", solved == Rational(t.black_in_other_plane), "solved " + solved.str());
    }

    // 0 <= b_pi <= theta(2n) carves out exactly [q^{n+1}-q, q^{n+1}] or [q^{n+1}, q^{n+1}+q].
    {
        auto in_range = [&](const BigInt& r) {
            const BigInt bp = th2n1 * (e * top - e * r);
            return bp >= 0 && bp <= th2n;
        };
        const BigInt a = sign == Sign::Plus ? top - q : top, b = sign == Sign::Plus ? top : top + q;
        add("r-bounds", in_range(a) && in_range(b) && !in_range(a - 1) && !in_range(b + 1));
    }

    bool pencil_ok = true;
    std::ostringstream pencil_text;
    for (const auto& [cls, c] : t.codim2_values()) {
        const auto s = pencil_multiplicity(t, c);
        pencil_text << to_string(cls) << "->" << (s ? std::to_string(*s) : "?") << ' ';
        if (!s || (*s != 0 && *s != q - 1 && *s != q && *s != q + 1)) pencil_ok = false;
    }
    add("pencil-multiplicities", pencil_ok, pencil_text.str());

    if (extra) {
        const BigInt r = top + q;
        const BigInt q2 = BigInt(q) * q;
        const bool sizes = b_from_r(q, n, e, r) == Rational(q2 * q + q2) && th2n1 * (e * top - e * r) == q2 + q;
        const BigInt size = qn * r;
        const BigInt db = qn * qn - e * qn, dw = qn * qn;
        const BigInt th_all = theta_big(2 * n + 1, q);
        const Rational nonmember = ratio((th_all - size - 1) * th2n1 - th2n * (th2n - dw - 1), (th2n - db - 1) - (th2n - dw - 1));
        add("line-case-sizes", sizes && nonmember == Rational(q2), "non-member black count " + nonmember.str());
    }
}

} // namespace

SearchResult exhaustive_search_pg32(Sign sign) {
    const IncidenceTables tables(make_space(3, 2));
    const CountTable t = expected_counts(1, 2, sign);
    const std::size_t nh = tables.hyperplanes().size();
    constexpr int kMinPencil = 2 - 1; // q - 1

    std::vector<std::uint32_t> point_masks, pencil_masks;
    for (std::size_t p = 0; p < tables.points().size(); ++p) {
        std::uint32_t m = 0;
        for (auto h : tables.hyperplanes_on(p)) m |= 1u << h;
        point_masks.push_back(m);
    }
    for (std::size_t c = 0; c < tables.codim2().size(); ++c) {
        std::uint32_t m = 0;
        for (auto h : tables.pencil(c)) m |= 1u << h;
        pencil_masks.push_back(m);
    }

    SearchResult result;
    for (std::uint32_t mask = 1; mask < (1u << nh); ++mask) {
        ++result.nodes_explored;
        bool ok = true;
        for (auto pm : point_masks) {
            const int d = std::popcount(mask & pm);
            if (d != t.black_degree && d != t.white_degree) {
                ok = false;
                break;
            }
        }
        for (std::size_t c = 0; ok && c < pencil_masks.size(); ++c) {
            const int s = std::popcount(mask & pencil_masks[c]);
            if (s >= 1 && s < kMinPencil) ok = false;
        }
        if (!ok) continue;
        std::vector<Hyperplane> members;
        for (std::size_t h = 0; h < nh; ++h)
            if (mask & (1u << h)) members.push_back(tables.hyperplanes()[h]);
        result.families.push_back(verify(make_family(tables.space(), sign, std::move(members))));
    }
    result.exhaustive = true;
    sort_found(result.families);
    return result;
}

SearchResult backtracking_search(int n, std::uint32_t q, Sign sign, const SearchLimits& limits) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return Backtracker(n, q, sign, limits).run();
}

bool lemma_useful_check(int n, std::uint32_t q, Sign sign, std::uint32_t k) {
    if (n == 1 && sign == Sign::Minus) throw OutOfLemmaScope("OutOfLemmaScope: n = 1 in the elliptic case");
    if (k < 1 || k > q) throw std::invalid_argument("k must lie in 1..q");
    const BigInt e = sign_value(sign);
    const BigInt divisor = ipow(q, n) + e;
    const BigInt value = BigInt(k) * (ipow(q, 2 * n + 1) - 1) + e * ipow(q, n + 1) - e * ipow(q, n);
    return value % divisor == 0;
}

bool ConsistencyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ConsistencyCheck& c) { return c.passed; });
}

ConsistencyReport consistency_suite(int n, std::uint32_t q) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    prime_power_decompose(q);
    ConsistencyReport report;
    report.n = n;
    report.q = q;
    run_sign(report, Sign::Plus);
    run_sign(report, Sign::Minus);
    return report;
}

std::vector<std::uint32_t> prime_powers_up_to(std::uint32_t max_q) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t q = 2; q <= max_q; ++q)
        if (is_prime_power(q)) out.push_back(q);
    return out;
}

SuiteReport run_suite(int max_n, std::uint32_t max_q) {
    if (max_n < 1 || max_q < 2) throw std::invalid_argument("suite bounds must be max_n >= 1 and max_q >= 2");
    SuiteReport report;
    report.max_n = max_n;
    report.max_q = max_q;
    for (std::uint32_t q : prime_powers_up_to(max_q)) {
        for (int n = 1; n <= max_n; ++n) {
            const ConsistencyReport c = consistency_suite(n, q);
            for (const auto& check : c.checks) {
                auto& [pass, total] = report.tallies[check.name];
                ++total;
                if (check.passed) ++pass;
                else
                    report.failures.push_back(check.name + " n=" + std::to_string(n) + " q=" + std::to_string(q) +
                                              " sign=" + sign_symbol(check.sign) + " " + check.detail);
            }
            for (Sign sign : {Sign::Plus, Sign::Minus}) {
                if (n == 1 && sign == Sign::Minus) continue;
                auto& [pass, total] = report.tallies["divisibility-only-at-k=1"];
                ++total;
                std::vector<std::uint32_t> hits;
                for (std::uint32_t k = 1; k <= q; ++k)
                    if (lemma_useful_check(n, q, sign, k)) hits.push_back(k);
                if (hits == std::vector<std::uint32_t>{1}) {
                    ++pass;
                } else {
                    std::string ks;
                    for (auto k : hits) ks += std::to_string(k) + " ";
                    report.failures.push_back("divisibility-only-at-k=1 n=" + std::to_string(n) + " q=" + std::to_string(q) +
                                              " sign=" + sign_symbol(sign) + " divides at k = " + ks);
                }
            }
        }
    }
    return report;
}

} // namespace pgq
