#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgq/family.hpp"
#include "pgq/sigma.hpp"

namespace pgq {

struct SearchLimits {
    std::uint64_t node_budget = 50'000'000;
    double time_budget = 120.0; // seconds
    std::uint64_t report_every = 5'000'000;
    /// Progress lines go here when set (the CLI points it at stderr).
    std::ostream* progress = nullptr;
};

struct FoundFamily {
    HyperplaneFamily family;
    FamilyAnalysis analysis;
};

struct SearchResult {
    std::vector<FoundFamily> families; // sorted by member list
    bool exhaustive = false;
    std::uint64_t nodes_explored = 0;
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, SearchResult partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const SearchResult& partial() const { return partial_; }

private:
    SearchResult partial_;
};

class OutOfLemmaScope : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// All 2^15 - 1 nonempty plane subsets of PG(3,2); keeps those satisfying
/// both axioms under `sign`, each re-verified and classified by analyze().
SearchResult exhaustive_search_pg32(Sign sign);

/// Depth-first search over hyperplane subsets of PG(2n+1,q) in canonical
/// order. Prunes with necessary conditions of the axioms only: each point's
/// degree must stay able to reach black_degree or white_degree, each pencil
/// count must stay able to reach 0 or q-1..q+1, and the family size must
/// reach q^n r for r in the admissible r-range. Throws BudgetExceeded with
/// the families found so far.
SearchResult backtracking_search(int n, std::uint32_t q, Sign sign, const SearchLimits& limits);

/// Whether q^n ± 1 divides k(q^{2n+1} - 1) ± q^{n+1} ∓ q^n. Throws
/// OutOfLemmaScope for n = 1 with the minus sign.
bool lemma_useful_check(int n, std::uint32_t q, Sign sign, std::uint32_t k);

struct ConsistencyCheck {
    std::string name;
    Sign sign = Sign::Plus;
    bool passed = false;
    std::string detail;
};

struct ConsistencyReport {
    int n = 0;
    std::uint32_t q = 0;
    std::vector<ConsistencyCheck> checks;
    /// Values of r (minus sign) at which the two black-count expressions agree.
    std::vector<std::string> minus_r_roots;
    bool passed() const;
};

/// Pure big-integer checks of the counting identities for both signs.
ConsistencyReport consistency_suite(int n, std::uint32_t q);

struct SuiteReport {
    int max_n = 0;
    std::uint32_t max_q = 0;
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> tallies; // name -> (passed, total)
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

/// consistency_suite plus the k = 1..q divisibility sweep over every prime
/// power q <= max_q and 1 <= n <= max_n.
SuiteReport run_suite(int max_n, std::uint32_t max_q);

/// Prime powers in [2, max_q].
std::vector<std::uint32_t> prime_powers_up_to(std::uint32_t max_q);

} // namespace pgq
