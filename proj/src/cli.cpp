#include "pgq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "pgq/bigint.hpp"

namespace pgq::cli {
namespace {

using Json = nlohmann::ordered_json;

Json vec_json(const Vec& v) {
    Json a = Json::array();
    for (auto x : v) a.push_back(x.value);
    return a;
}

Json histogram_json(const Histogram& h) {
    Json o = Json::object();
    for (const auto& [k, v] : h) o[std::to_string(k)] = v;
    return o;
}

Json parameters(int n, std::uint32_t q, Sign sign) {
    return Json{{"n", n}, {"q", q}, {"sign", sign_symbol(sign)}};
}

void emit(const Json& doc, const GlobalOptions& opts, std::ostream& out) {
    if (opts.json) out << doc.dump() << '\n';
    else out << render_text(doc);
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object() && !j.empty()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array()) && !j.front().empty() &&
               j.front().is_object()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

struct Params {
    int n;
    std::uint32_t q;
};

// Throws std::invalid_argument / NotAPrimePower for parameters the engine cannot handle.
void validate(int n, std::uint32_t q) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    prime_power_decompose(q);
    if (q > kMaxFieldOrder) throw NotAPrimePower("q exceeds supported range");
}

int check_seed_order(const GlobalOptions& opts, std::ostream& err) {
    if (opts.seed_order == kSeedOrder) return 0;
    err << "error: unsupported --seed-order '" << opts.seed_order << "' (supported: " << kSeedOrder << ")\n";
    return 2;
}

bool theorem_applies(int n, std::uint32_t q) { return n == 1 || q > 2; }

} // namespace

std::string format_family(const HyperplaneFamily& family) {
    std::ostringstream os;
    os << "pgfam " << family.space.k << ' ' << family.space.q() << ' ' << sign_symbol(family.sign) << '\n';
    for (const auto& h : family.members) {
        for (std::size_t i = 0; i < h.covector.size(); ++i) os << (i ? " " : "") << h.covector[i].value;
        os << '\n';
    }
    return os.str();
}

HyperplaneFamily parse_family(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::optional<ProjSpace> space;
    Sign sign = Sign::Plus;
    std::vector<Hyperplane> members;
    std::size_t header_line = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        if (!space) {
            std::string magic, sign_text;
            long long k = 0, q = 0;
            if (!(fields >> magic >> k >> q >> sign_text) || magic != "pgfam")
                throw ParseError(lineno, "expected header 'pgfam <k> <q> <+|->'");
            std::string extra;
            if (fields >> extra) throw ParseError(lineno, "trailing text after header");
            if (k < 1 || k % 2 == 0) throw ParseError(lineno, "k must be odd and positive");
            if (sign_text != "+" && sign_text != "-") throw ParseError(lineno, "sign must be '+' or '-'");
            try {
                space = make_space(static_cast<int>(k), static_cast<std::uint32_t>(q));
            } catch (const std::exception& ex) {
                throw ParseError(lineno, ex.what());
            }
            sign = parse_sign(sign_text);
            header_line = lineno;
            continue;
        }
        Vec v;
        long long x = 0;
        while (fields >> x) {
            if (x < 0 || x >= static_cast<long long>(space->q()))
                throw ParseError(lineno, "coordinate " + std::to_string(x) + " outside 0..q-1");
            v.push_back(FieldElement{static_cast<std::uint32_t>(x)});
        }
        if (!fields.eof()) throw ParseError(lineno, "non-integer token");
        if (v.size() != static_cast<std::size_t>(space->k) + 1)
            throw ParseError(lineno, "expected " + std::to_string(space->k + 1) + " coordinates, got " + std::to_string(v.size()));
        bool zero = std::all_of(v.begin(), v.end(), [](FieldElement e) { return e.value == 0; });
        if (zero) throw ParseError(lineno, "zero covector");
        if (canonicalize(space->field, v) != v) throw ParseError(lineno, "covector is not canonical (leftmost nonzero must be 1)");
        Hyperplane h{std::move(v)};
        if (std::find(members.begin(), members.end(), h) != members.end()) throw ParseError(lineno, "duplicate member");
        members.push_back(std::move(h));
    }
    if (!space) throw ParseError(lineno, "missing header");
    if (members.empty()) throw ParseError(header_line, "family has no members");
    return make_family(std::move(*space), sign, std::move(members));
}

HyperplaneFamily read_family_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_family(ss.str());
}

void write_text_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << text;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw std::runtime_error("write failed for " + tmp);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename " + tmp + " to " + path + ": " + ec.message());
    }
}

Json to_json(const CountTable& t) {
    Json j;
    j["quadric_size"] = t.quadric_size;
    j["parabolic_hyperplanes"] = t.parabolic_hyperplanes;
    j["h1"] = t.h1;
    j["h2"] = t.h2;
    j["c1"] = t.c1;
    j["c2"] = t.c2;
    j["c3"] = t.c3;
    j["c4"] = t.c4 ? Json(*t.c4) : Json(nullptr);
    j["black_degree"] = t.black_degree;
    j["white_degree"] = t.white_degree;
    j["sigma_size"] = t.sigma_size;
    j["black_in_sigma_plane"] = t.black_in_sigma_plane;
    j["black_in_other_plane"] = t.black_in_other_plane;
    j["total_points"] = t.total_points;
    return j;
}

Json to_json(const Classification& c) {
    Json j;
    j["verdict"] = to_string(c.verdict);
    if (const auto* form = std::get_if<QuadraticForm>(&c.witness)) {
        Json rows = Json::array();
        for (const auto& r : form->coeffs()) rows.push_back(vec_json(r));
        j["witness"] = Json{{"type", "quadric"}, {"kind", to_string(form->kind())}, {"coeffs", rows}};
    } else if (const auto* ovoid = std::get_if<OvoidWitness>(&c.witness)) {
        Json pts = Json::array();
        for (const auto& p : ovoid->points) pts.push_back(vec_json(p.coords));
        j["witness"] = Json{{"type", "ovoid"},
                            {"classical", ovoid->classical ? Json(*ovoid->classical) : Json("undecided")},
                            {"points", pts}};
    } else if (const auto* line = std::get_if<Codim2Subspace>(&c.witness)) {
        j["witness"] = Json{{"type", "line"}, {"dual_basis", Json::array({vec_json(line->first), vec_json(line->second)})}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const FamilyAnalysis& a) {
    Json j;
    j["family_size"] = a.family_size;
    j["b"] = a.b;
    j["w"] = a.w;
    j["r"] = a.r ? Json(*a.r) : Json(nullptr);
    Json p1;
    p1["holds"] = a.p1.holds;
    p1["black_count"] = a.p1.black.size();
    p1["white_count"] = a.p1.white.size();
    Json v1 = Json::array();
    for (const auto& [pt, d] : a.p1.violations) v1.push_back(Json{{"point", vec_json(pt.coords)}, {"degree", d}});
    p1["violations"] = v1;
    j["p1"] = p1;
    Json p2;
    p2["holds"] = a.p2.holds;
    p2["multiplicity_histogram"] = histogram_json(a.p2.multiplicity_histogram);
    Json v2 = Json::array();
    for (const auto& [sub, s] : a.p2.violations)
        v2.push_back(Json{{"subspace", Json::array({vec_json(sub.first), vec_json(sub.second)})}, {"s", s}});
    p2["violations"] = v2;
    j["p2"] = p2;
    j["black_per_member"] = histogram_json(a.black_per_member);
    j["black_per_nonmember"] = histogram_json(a.black_per_nonmember);
    j["codim2_black_histogram"] = histogram_json(a.codim2_black_histogram);
    j["classification"] = a.verdict ? to_json(*a.verdict) : Json(nullptr);
    return j;
}

std::string render_text(const Json& doc) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc, "", rows);
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    std::ostringstream os;
    for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << '\n';
    return os.str();
}

std::uint64_t parse_count(const std::string& text) {
    auto whole = [](const std::string& s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw std::invalid_argument("not a count: " + s);
        return std::stoull(s);
    };
    const auto caret = text.find('^');
    const auto e = text.find_first_of("eE");
    if (caret != std::string::npos || e != std::string::npos) {
        const auto pos = caret != std::string::npos ? caret : e;
        std::uint64_t base = whole(text.substr(0, pos));
        const std::uint64_t exponent = whole(text.substr(pos + 1));
        std::uint64_t value = 1;
        if (caret != std::string::npos) {
            for (std::uint64_t i = 0; i < exponent; ++i) value *= base;
        } else {
            value = base;
            for (std::uint64_t i = 0; i < exponent; ++i) value *= 10;
        }
        return value;
    }
    return whole(text);
}

int cmd_counts(int n, std::uint32_t q, Sign sign, bool enumerate, const GlobalOptions& opts, std::ostream& out,
               std::ostream& err) {
    if (int rc = check_seed_order(opts, err)) return rc;
    CountTable t;
    try {
        validate(n, q);
        t = expected_counts(n, q, sign);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 2;
    }

    Json doc;
    doc["parameters"] = parameters(n, q, sign);
    doc["expected"] = to_json(t);
    Json observed = Json::object();
    Json violations = Json::array();
    if (enumerate) {
        try {
            const QuadraticForm form = standard_form(kind_for(sign), n, make_field(q));
            const SectionCensus census = section_census(form, opts.threads);
            const HyperplaneFamily family = parabolic_family(form);
            const FamilyAnalysis a = analyze(family, opts.threads);
            auto expect = [&](const std::string& name, std::int64_t got, std::int64_t want) {
                observed[name] = got;
                if (got != want)
                    violations.push_back(name + ": observed " + std::to_string(got) + ", expected " + std::to_string(want));
            };
            expect("quadric_size", static_cast<std::int64_t>(form.points().size()), t.quadric_size);
            expect("parabolic_hyperplanes", census.hyperplane_sizes.count(t.h1) ? census.hyperplane_sizes.at(t.h1) : 0,
                   t.parabolic_hyperplanes);
            expect("tangent_hyperplanes", census.hyperplane_sizes.count(t.h2) ? census.hyperplane_sizes.at(t.h2) : 0,
                   t.quadric_size);
            observed["hyperplane_section_sizes"] = histogram_json(census.hyperplane_sizes);
            observed["codim2_section_sizes"] = histogram_json(census.codim2_sizes);
            for (const auto& [size, count] : census.hyperplane_sizes)
                if (size != t.h1 && size != t.h2) violations.push_back("hyperplane section size " + std::to_string(size));
            const auto values = t.codim2_values();
            for (const auto& [size, count] : census.codim2_sizes)
                if (std::none_of(values.begin(), values.end(), [s = size](const auto& v) { return v.second == s; }))
                    violations.push_back("codim-2 section size " + std::to_string(size));
            expect("sigma_size", a.family_size, t.sigma_size);
            expect("black_count", a.b, t.quadric_size);
            if (!a.p1.holds) violations.push_back("canonical family fails the point-degree axiom");
            if (!a.p2.holds) violations.push_back("canonical family fails the pencil axiom");
            for (const auto& [s, count] : a.p2.multiplicity_histogram)
                if (s != 0 && s != q - 1 && s != q && s != q + 1) violations.push_back("pencil multiplicity " + std::to_string(s));
            if (a.p1.black != form.points()) violations.push_back("black set differs from the quadric point set");
            observed["family"] = to_json(a);
            for (const auto& v : a.theorem_violations) violations.push_back(v);
        } catch (const UnsupportedSize& ex) {
            err << "error: " << ex.what() << '\n';
            return 2;
        }
    }
    doc["observed"] = observed;
    doc["theorem_violations"] = violations;
    doc["verdict"] = nullptr;
    doc["seed_order"] = opts.seed_order;
    emit(doc, opts, out);
    return violations.empty() ? 0 : 1;
}

int cmd_canonical(int n, std::uint32_t q, Sign sign, const std::string& out_path, const GlobalOptions& opts,
                  std::ostream& out, std::ostream& err) {
    if (int rc = check_seed_order(opts, err)) return rc;
    std::optional<HyperplaneFamily> family;
    try {
        validate(n, q);
        family = parabolic_family(standard_form(kind_for(sign), n, make_field(q)));
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 2;
    }
    const std::string text = format_family(*family);
    if (out_path.empty() || out_path == "-") {
        out << text;
        return 0;
    }
    try {
        write_text_atomic(out_path, text);
    } catch (const std::exception& ex) {
        err << "error: " << out_path << ": " << ex.what() << '\n';
        return 1;
    }
    if (opts.json)
        out << Json{{"path", out_path}, {"members", family->members.size()}}.dump() << '\n';
    else
        out << "wrote " << family->members.size() << " members to " << out_path << '\n';
    return 0;
}

int cmd_check(const std::string& path, const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
    if (int rc = check_seed_order(opts, err)) return rc;
    std::optional<HyperplaneFamily> loaded;
    try {
        loaded = read_family_file(path);
    } catch (const ParseError& ex) {
        err << "error: " << path << ": " << ex.what() << '\n';
        return 2;
    } catch (const std::exception& ex) {
        err << "error: " << path << ": " << ex.what() << '\n';
        return 2;
    }
    const HyperplaneFamily& family = *loaded;
    const FamilyAnalysis a = analyze(family, opts.threads);
    Json doc;
    doc["parameters"] = parameters(family.n(), family.space.q(), family.sign);
    doc["expected"] = to_json(a.expected);
    doc["observed"] = to_json(a);
    doc["theorem_violations"] = a.theorem_violations;
    doc["verdict"] = a.verdict ? Json(to_string(a.verdict->verdict)) : Json(nullptr);
    doc["seed_order"] = opts.seed_order;
    emit(doc, opts, out);
    if (!a.p1.holds || !a.p2.holds) return 1;
    if (!a.theorem_violations.empty() || a.verdict->verdict == Verdict::Unknown) return 1;
    return 0;
}

int cmd_search(int n, std::uint32_t q, Sign sign, const SearchLimits& limits, const GlobalOptions& opts,
               std::ostream& out, std::ostream& err) {
    if (int rc = check_seed_order(opts, err)) return rc;
    try {
        validate(n, q);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 2;
    }
    SearchResult result;
    bool budget_hit = false;
    std::string budget_message;
    try {
        result = (n == 1 && q == 2) ? exhaustive_search_pg32(sign) : backtracking_search(n, q, sign, limits);
    } catch (const BudgetExceeded& ex) {
        result = ex.partial();
        budget_hit = true;
        budget_message = ex.what();
    }

    std::map<std::string, std::int64_t> tallies;
    bool problems = false;
    for (const auto& found : result.families) {
        const FamilyAnalysis& a = found.analysis;
        const std::string verdict = a.verdict ? to_string(a.verdict->verdict) : "None";
        ++tallies[verdict];
        if (!a.theorem_violations.empty()) problems = true;
        if (verdict == "Unknown" && theorem_applies(n, q)) problems = true;
        Json doc;
        doc["parameters"] = parameters(n, q, sign);
        doc["expected"] = to_json(a.expected);
        doc["observed"] = to_json(a);
        doc["theorem_violations"] = a.theorem_violations;
        doc["verdict"] = verdict;
        doc["seed_order"] = opts.seed_order;
        emit(doc, opts, out);
        if (!opts.json) out << '\n';
    }
    Json summary;
    summary["summary"] = Json{{"parameters", parameters(n, q, sign)},
                              {"families", result.families.size()},
                              {"exhaustive", result.exhaustive},
                              {"nodes_explored", result.nodes_explored},
                              {"budget_exceeded", budget_hit},
                              {"theorem_covers_parameters", theorem_applies(n, q)}};
    Json t = Json::object();
    for (const auto& [k, v] : tallies) t[k] = v;
    summary["summary"]["verdicts"] = t;
    emit(summary, opts, out);
    if (budget_hit) {
        err << budget_message << '\n';
        return 3;
    }
    return problems ? 1 : 0;
}

int cmd_suite(int max_n, std::uint32_t max_q, const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
    if (int rc = check_seed_order(opts, err)) return rc;
    SuiteReport report;
    try {
        report = run_suite(max_n, max_q);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 2;
    }
    Json doc;
    doc["parameters"] = Json{{"max_n", max_n}, {"max_q", max_q}};
    Json checks = Json::object();
    for (const auto& [name, tally] : report.tallies) checks[name] = Json{{"passed", tally.first}, {"total", tally.second}};
    doc["checks"] = checks;
    doc["failures"] = report.failures;
    doc["passed"] = report.passed();
    doc["seed_order"] = opts.seed_order;
    emit(doc, opts, out);
    return report.passed() ? 0 : 1;
}

} // namespace pgq::cli
