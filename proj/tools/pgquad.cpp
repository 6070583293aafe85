#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "pgq/cli.hpp"

int main(int argc, char** argv) {
    using namespace pgq;
    CLI::App app{"Hyperplane families and quadrics in finite projective spaces"};
    app.require_subcommand(1);

    cli::GlobalOptions opts;
    app.add_flag("--json", opts.json, "Emit JSON lines instead of text");
    app.add_option("--threads", opts.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    app.add_option("--seed-order", opts.seed_order, "Enumeration order tag");

    int n = 1;
    std::uint32_t q = 2;
    std::string sign_text = "+";
    auto add_nqs = [&](CLI::App* sub) {
        sub->add_option("-n", n, "Quadric rank parameter (k = 2n+1)")->required();
        sub->add_option("-q", q, "Field order")->required();
        sub->add_option("--sign", sign_text, "'+' or '-'")->required()->check(CLI::IsMember({"+", "-", "plus", "minus"}));
    };

    auto* counts = app.add_subcommand("counts", "Closed-form counts for the given parameters");
    add_nqs(counts);
    bool enumerate = false;
    counts->add_flag("--enumerate", enumerate, "Also enumerate the standard quadric and compare");

    auto* canonical = app.add_subcommand("canonical", "Write the canonical family of a standard quadric");
    add_nqs(canonical);
    std::string out_path;
    canonical->add_option("-o,--output", out_path, "Output path ('-' for stdout)");

    auto* check = app.add_subcommand("check", "Analyse a family file");
    std::string path;
    check->add_option("file", path, "Family file")->required();

    auto* search = app.add_subcommand("search", "Enumerate families satisfying both axioms");
    add_nqs(search);
    SearchLimits limits;
    std::string node_budget = "5e7", report_every = "5e6";
    double time_budget = 120;
    search->add_option("--node-budget", node_budget, "Maximum search nodes");
    search->add_option("--time-budget", time_budget, "Maximum seconds");
    search->add_option("--report-every", report_every, "Progress interval in nodes (0 disables)");

    auto* suite = app.add_subcommand("suite", "Closed-form consistency sweep");
    int max_n = 3;
    std::uint32_t max_q = 16;
    suite->add_option("--max-n", max_n, "Largest n");
    suite->add_option("--max-q", max_q, "Largest q");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const Sign sign = (sign_text == "plus") ? Sign::Plus : (sign_text == "minus") ? Sign::Minus : parse_sign(sign_text);
        if (*counts) return cli::cmd_counts(n, q, sign, enumerate, opts, std::cout, std::cerr);
        if (*canonical) return cli::cmd_canonical(n, q, sign, out_path, opts, std::cout, std::cerr);
        if (*check) return cli::cmd_check(path, opts, std::cout, std::cerr);
        if (*search) {
            limits.node_budget = cli::parse_count(node_budget);
            limits.report_every = cli::parse_count(report_every);
            limits.time_budget = time_budget;
            limits.progress = &std::cerr;
            return cli::cmd_search(n, q, sign, limits, opts, std::cout, std::cerr);
        }
        if (*suite) return cli::cmd_suite(max_n, max_q, opts, std::cout, std::cerr);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
