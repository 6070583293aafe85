#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pgq/cli.hpp"
#include "pgq/quadric.hpp"

using namespace pgq;
using namespace pgq::cli;

namespace {

struct Run {
    int rc;
    std::string out;
    std::string err;
};

template <class F>
Run run(F&& f) {
    std::ostringstream out, err;
    const int rc = f(out, err);
    return {rc, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "pgquad-tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::size_t count_lines(const std::string& text) { return std::count(text.begin(), text.end(), '\n'); }

} // namespace

TEST_SUITE("cli") {

TEST_CASE("family files round-trip") {
    for (auto [n, q] : {std::pair{1, 2u}, {1, 4u}, {2, 3u}}) {
        for (Sign sign : {Sign::Plus, Sign::Minus}) {
            const auto fam = parabolic_family(standard_form(kind_for(sign), n, make_field(q)));
            const auto text = format_family(fam);
            const auto back = parse_family(text);
            CHECK(back.members == fam.members);
            CHECK(back.sign == fam.sign);
            CHECK(back.space.k == fam.space.k);
            CHECK(format_family(back) == text);
        }
    }
    const auto fam = parse_family("# comment\n\npgfam 3 2 +\n0 0 1 1\n\n# another\n0 1 1 1\n");
    CHECK(fam.members.size() == 2);
}

TEST_CASE("family file errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_family(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK_THROWS_AS(parse_family(""), ParseError);
    CHECK(line_of("pgfam 2 2 +\n0 0 1\n") == 1);     // even k
    CHECK(line_of("pgfam 3 6 +\n") == 1);            // not a prime power
    CHECK(line_of("pgfam 3 2 *\n") == 1);            // bad sign
    CHECK(line_of("pgfam 3 2 +\n0 0 1\n") == 2);     // short row
    CHECK(line_of("pgfam 3 2 +\n0 0 1 2\n") == 2);   // out of range
    CHECK(line_of("pgfam 3 3 +\n0 0 2 1\n") == 2);   // not canonical
    CHECK(line_of("pgfam 3 2 +\n0 0 0 0\n") == 2);   // zero
    CHECK(line_of("pgfam 3 2 +\n0 0 1 1\n# c\n0 0 1 1\n") == 4); // duplicate
    CHECK(line_of("pgfam 3 2 +\n0 0 x 1\n") == 2);
    CHECK(line_of("# only\npgfam 3 2 +\n") == 2); // empty family
    CHECK(line_of("hello\n") == 1);
}

TEST_CASE("counts command") {
    GlobalOptions opts;
    auto r = run([&](auto& o, auto& e) { return cmd_counts(1, 2, Sign::Plus, true, opts, o, e); });
    CHECK(r.rc == 0);
    opts.json = true;
    r = run([&](auto& o, auto& e) { return cmd_counts(2, 3, Sign::Minus, false, opts, o, e); });
    CHECK(r.rc == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["expected"]["quadric_size"] == 112);
    CHECK(doc["seed_order"] == "lex-v1");
    r = run([&](auto& o, auto& e) { return cmd_counts(1, 6, Sign::Plus, false, opts, o, e); });
    CHECK(r.rc == 2);
    CHECK(r.err.find("NotAPrimePower") != std::string::npos);
    opts.seed_order = "random";
    r = run([&](auto& o, auto& e) { return cmd_counts(1, 2, Sign::Plus, false, opts, o, e); });
    CHECK(r.rc == 2);
}

TEST_CASE("canonical and check commands") {
    GlobalOptions opts;
    auto r = run([&](auto& o, auto& e) { return cmd_canonical(1, 2, Sign::Plus, "-", opts, o, e); });
    CHECK(r.rc == 0);
    CHECK(count_lines(r.out) == 1 + 6);
    r = run([&](auto& o, auto& e) { return cmd_canonical(1, 2, Sign::Minus, "-", opts, o, e); });
    CHECK(count_lines(r.out) == 1 + 10);

    const auto path = temp_file("plus13.txt").string();
    r = run([&](auto& o, auto& e) { return cmd_canonical(1, 3, Sign::Plus, path, opts, o, e); });
    CHECK(r.rc == 0);
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    opts.json = true;
    r = run([&](auto& o, auto& e) { return cmd_check(path, opts, o, e); });
    CHECK(r.rc == 0);
    CHECK(nlohmann::json::parse(r.out)["verdict"] == "ParabolicOfHyperbolic");

    // Drop the last member.
    std::string text;
    {
        std::ifstream in(path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    text.erase(text.rfind('\n', text.size() - 2) + 1);
    const auto broken = temp_file("plus13-broken.txt").string();
    std::ofstream(broken) << text;
    r = run([&](auto& o, auto& e) { return cmd_check(broken, opts, o, e); });
    CHECK(r.rc == 1);
    CHECK(nlohmann::json::parse(r.out)["observed"]["p1"]["holds"] == false);

    const ProjSpace s = make_space(3, 3);
    const auto lt = temp_file("line.txt").string();
    std::ofstream(lt) << format_family(line_transversal_family(s, enumerate_codim2(s)[0]));
    r = run([&](auto& o, auto& e) { return cmd_check(lt, opts, o, e); });
    CHECK(r.rc == 0);
    CHECK(nlohmann::json::parse(r.out)["verdict"] == "LineTransversal");

    const auto garbage = temp_file("garbage.txt").string();
    std::ofstream(garbage) << "pgfam 3 2 +\n1 2 3\n";
    r = run([&](auto& o, auto& e) { return cmd_check(garbage, opts, o, e); });
    CHECK(r.rc == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    r = run([&](auto& o, auto& e) { return cmd_check(temp_file("missing.txt").string(), opts, o, e); });
    CHECK(r.rc == 2);
}

TEST_CASE("search command") {
    GlobalOptions opts;
    opts.json = true;
    SearchLimits limits;
    auto r = run([&](auto& o, auto& e) { return cmd_search(1, 2, Sign::Minus, limits, opts, o, e); });
    CHECK(r.rc == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::size_t reports = 0;
    nlohmann::json last;
    while (std::getline(lines, line)) {
        last = nlohmann::json::parse(line);
        if (last.contains("summary")) break;
        ++reports;
        const std::string v = last["verdict"];
        CHECK((v == "OvoidSecant" || v == "LineTransversal"));
    }
    CHECK(reports == 203);
    CHECK(last["summary"]["verdicts"]["LineTransversal"] == 35);

    limits.node_budget = 1'000'000;
    r = run([&](auto& o, auto& e) { return cmd_search(2, 2, Sign::Plus, limits, opts, o, e); });
    CHECK((r.rc == 0 || r.rc == 3));
    CHECK(r.out.find("\"theorem_covers_parameters\":false") != std::string::npos);

    limits.node_budget = 100;
    r = run([&](auto& o, auto& e) { return cmd_search(1, 3, Sign::Plus, limits, opts, o, e); });
    CHECK(r.rc == 3);
    CHECK(r.out.find("\"budget_exceeded\":true") != std::string::npos);
}

TEST_CASE("suite command") {
    GlobalOptions opts;
    auto r = run([&](auto& o, auto& e) { return cmd_suite(1, 2, opts, o, e); });
    CHECK(r.rc == 0);
}

TEST_CASE("count parsing") {
    CHECK(parse_count("1000000") == 1000000);
    CHECK(parse_count("10^6") == 1000000);
    CHECK(parse_count("1e6") == 1000000);
    CHECK(parse_count("2^10") == 1024);
    CHECK_THROWS(parse_count("lots"));
    CHECK_THROWS(parse_count("-5"));
}

TEST_CASE("output is deterministic") {
    GlobalOptions opts;
    opts.json = true;
    auto once = [&] {
        std::ostringstream out, err;
        cmd_search(1, 2, Sign::Plus, {}, opts, out, err);
        cmd_counts(1, 3, Sign::Minus, true, opts, out, err);
        return out.str();
    };
    const auto a = once();
    CHECK(a == once());
    opts.threads = 3;
    CHECK(a == once());
}

}
