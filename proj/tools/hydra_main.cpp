#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hydra/axioms.hpp"
#include "hydra/bisim.hpp"
#include "hydra/expr.hpp"

namespace {

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const hydra::ParseError*>(&e)) return 2;
    if (dynamic_cast<const hydra::ResourceError*>(&e)) return 3;
    return 1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hydra::Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void print_lines(const std::vector<std::string>& lines) {
    for (const std::string& line : lines) std::cout << line << "\n";
}

int cmd_run(const std::string& path) {
    hydra::expr::Session session;
    const auto program = hydra::expr::parse(read_file(path));
    print_lines(hydra::expr::eval_program(session, program).lines);
    return 0;
}

int cmd_solve(const std::string& path) {
    hydra::expr::Session session;
    const auto program = hydra::expr::parse(read_file(path));
    hydra::expr::eval_program(session, program);
    for (const std::string& name : session.def_order)
        std::cout << name << " = "
                  << hydra::expr::print_canonical(session.env.at(name), session.print_depth)
                  << "\n";
    return 0;
}

int cmd_check(const std::vector<std::string>& axioms, std::uint32_t samples,
              std::uint64_t seed, std::uint32_t max_nodes) {
    hydra::GenConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.max_nodes = max_nodes;
    bool all_passed = true;
    const std::vector<std::string>& names =
        axioms.empty() ? hydra::supported_axioms() : axioms;
    for (const std::string& name : names) {
        hydra::Universe universe;
        const hydra::Report report = hydra::run_axiom_check(name, universe, cfg);
        std::cout << report.axiom << '\t' << (report.passed() ? "PASS" : "FAIL") << '\t'
                  << report.samples_run << '\t' << cfg.seed << "\n";
        for (const hydra::CheckFailure& f : report.failures)
            std::cout << "# failure seed=" << f.seed << ": " << f.message << "\n";
        all_passed = all_passed && report.passed();
    }
    return all_passed ? 0 : 1;
}

int cmd_bench(std::uint32_t nodes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<hydra::NodeId, hydra::NodeId>> edges;
    edges.reserve(static_cast<std::size_t>(nodes) * 3);
    for (std::size_t i = 0; i < static_cast<std::size_t>(nodes) * 3; ++i)
        edges.emplace_back(static_cast<hydra::NodeId>(rng() % nodes),
                           static_cast<hydra::NodeId>(rng() % nodes));
    const hydra::Apg graph = hydra::Apg::build(nodes, edges, 0);

    const auto started = std::chrono::steady_clock::now();
    const auto [canonical, map] = hydra::minimize(graph);
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);

    std::cout << "minimize: " << nodes << " nodes, " << graph.edge_count() << " edges -> "
              << canonical.graph.node_count() << " canonical nodes in " << elapsed.count()
              << " ms\n";
    return 0;
}

int cmd_repl() {
    hydra::expr::Session session;
    const bool interactive = isatty(fileno(stdin));
    if (interactive)
        std::cout << "hydra - hyperset calculator. :help for commands, :quit to leave.\n";
    std::string line;
    while (!session.quit_requested) {
        if (interactive) std::cout << "hydra> " << std::flush;
        if (!std::getline(std::cin, line)) break;
        try {
            const auto program = hydra::expr::parse(line);
            print_lines(hydra::expr::eval_program(session, program).lines);
        } catch (const std::exception& e) {
            std::cout << "error: " << e.what() << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hydra - hereditarily finite hypersets, equation solving, rational trees"};
    app.require_subcommand(0, 1);

    auto* repl = app.add_subcommand("repl", "interactive session");

    std::string run_file;
    auto* run = app.add_subcommand("run", "execute a .hset program");
    run->add_option("file", run_file, "program file")->required();

    std::string solve_file;
    auto* solve = app.add_subcommand("solve", "solve a file's definitions and print them");
    solve->add_option("file", solve_file, "program file")->required();

    std::vector<std::string> check_axioms;
    std::uint32_t check_samples = 1000;
    std::uint64_t check_seed = 0;
    std::uint32_t check_nodes = 8;
    auto* check = app.add_subcommand("check", "run randomized axiom checks");
    check->add_option("--axiom", check_axioms, "axiom name (repeatable; default: all)");
    check->add_option("--samples", check_samples, "samples per axiom");
    check->add_option("--seed", check_seed, "base seed");
    check->add_option("--nodes", check_nodes, "max nodes per generated graph");

    std::uint32_t bench_nodes = 100000;
    std::uint64_t bench_seed = 7;
    auto* bench = app.add_subcommand("bench", "time minimization of a large random graph");
    bench->add_option("--nodes", bench_nodes, "node count");
    bench->add_option("--seed", bench_seed, "graph seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*repl) return cmd_repl();
        if (*run) return cmd_run(run_file);
        if (*solve) return cmd_solve(solve_file);
        if (*check) return cmd_check(check_axioms, check_samples, check_seed, check_nodes);
        if (*bench) return cmd_bench(bench_nodes, bench_seed);
        std::cout << app.help();
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}
