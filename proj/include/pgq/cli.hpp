#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "pgq/family.hpp"
#include "pgq/search.hpp"
#include "pgq/sigma.hpp"

namespace pgq::cli {

inline constexpr const char* kSeedOrder = "lex-v1";

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// "pgfam <k> <q> <+|->" followed by one canonical covector per line; lines
/// starting with '#' and blank lines are ignored.
std::string format_family(const HyperplaneFamily& family);
HyperplaneFamily parse_family(const std::string& text);
HyperplaneFamily read_family_file(const std::string& path);
/// Writes via a temporary file and rename, so a failed write leaves no file.
void write_text_atomic(const std::string& path, const std::string& text);

nlohmann::ordered_json to_json(const CountTable& t);
nlohmann::ordered_json to_json(const FamilyAnalysis& a);
nlohmann::ordered_json to_json(const Classification& c);

/// Aligned "key  value" lines derived from the JSON document.
std::string render_text(const nlohmann::ordered_json& doc);

struct GlobalOptions {
    bool json = false;
    unsigned threads = 1;
    std::string seed_order = kSeedOrder;
};

int cmd_counts(int n, std::uint32_t q, Sign sign, bool enumerate, const GlobalOptions& opts, std::ostream& out,
               std::ostream& err);
int cmd_canonical(int n, std::uint32_t q, Sign sign, const std::string& out_path, const GlobalOptions& opts,
                  std::ostream& out, std::ostream& err);
int cmd_check(const std::string& path, const GlobalOptions& opts, std::ostream& out, std::ostream& err);
int cmd_search(int n, std::uint32_t q, Sign sign, const SearchLimits& limits, const GlobalOptions& opts,
               std::ostream& out, std::ostream& err);
int cmd_suite(int max_n, std::uint32_t max_q, const GlobalOptions& opts, std::ostream& out, std::ostream& err);

/// Parses "1000000", "10^6" or "1e6".
std::uint64_t parse_count(const std::string& text);

} // namespace pgq::cli
