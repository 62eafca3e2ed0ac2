// radmorse: construct radial Morse-index-1 solutions on the unit ball, count their
// radial Morse index, and scan L^p / L^q norm quotients as the construction radius shrinks.
//
//   radmorse construct --N 3,5 --r0 0.2,0.1
//   radmorse index     --N 3 --r0 0.05 --interval 0,1
//   radmorse quotient  --N 9 --r0 0.1
//   radmorse hardy     --alpha -3 --a 0.1 --b 1 --trials 100 --seed 0
//   radmorse scan      --N 3 --p 4 --q 2 --r0 0.2,0.1,0.05,0.025,0.0125 --out scan.csv
//   radmorse critical  --N 3 --lambda 0.5,0.25,0.125,0.0625
//   radmorse verify-all
//
// r0 is restricted to [1e-3, 0.99]: below 1e-3, r0^N reaches ~1e-27 at N = 9.

#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "radmorse/commands.hpp"

int main(int argc, char** argv) {
    using namespace radmorse;

    CLI::App app{"Radial Morse index laboratory for -Delta u = f(u) in the unit ball"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "csv";
    std::string out_path;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output table format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--grid-n", cfg.grid_n, "Number of mesh intervals");
        sub->add_option("--out", out_path, "Output file (written atomically)");
        sub->add_option("--seed", cfg.seed, "Seed for randomized suites");
        sub->add_option("--workers", cfg.workers, "Worker threads for scans (0 = all cores)");
    };
    const auto add_family = [&](CLI::App* sub) {
        sub->add_option("--N", cfg.dimensions, "Dimensions, comma separated")->delimiter(',');
        sub->add_option("--r0", cfg.radii, "Construction radii, comma separated")->delimiter(',');
    };

    std::map<CLI::App*, Command> commands;
    auto* construct = app.add_subcommand("construct", "Build u_r0 and check the construction invariants");
    add_family(construct);
    commands[construct] = Command::construct;

    auto* index = app.add_subcommand("index", "Radial Morse index on an interval (a, b)");
    add_family(index);
    index->add_option("--interval", cfg.interval, "Interval a,b (default 0,1)")->delimiter(',')->expected(2);
    commands[index] = Command::index;

    auto* quotient = app.add_subcommand("quotient", "Annulus stability quotient, compared with N - 1");
    add_family(quotient);
    commands[quotient] = Command::quotient;

    auto* hardy = app.add_subcommand("hardy", "Randomized Hardy inequality suite");
    hardy->add_option("--alpha", cfg.alphas, "Exponents alpha, comma separated")->delimiter(',')->required();
    hardy->add_option("--a", cfg.left_ends, "Left endpoints, comma separated")->delimiter(',')->required();
    hardy->add_option("--b", cfg.right_end, "Right endpoint");
    hardy->add_option("--trials", cfg.trials, "Number of random bumps");
    commands[hardy] = Command::hardy;

    auto* scan = app.add_subcommand("scan", "Norm-quotient scan over decreasing r0");
    add_family(scan);
    scan->add_option("--p", cfg.p, "Exponents p (inf allowed), zipped with --q")->delimiter(',');
    scan->add_option("--q", cfg.q, "Exponents q, zipped with --p")->delimiter(',');
    commands[scan] = Command::scan;

    auto* critical = app.add_subcommand("critical", "Critical-exponent family u_lambda = U(lambda) - U(1)");
    critical->add_option("--N", cfg.dimensions, "Dimensions, comma separated")->delimiter(',');
    critical->add_option("--lambda", cfg.lambdas, "Values of lambda in (0, 1]")->delimiter(',');
    commands[critical] = Command::critical;

    auto* verify = app.add_subcommand("verify-all", "Construction, spectral and Hardy checks over the default matrix");
    add_family(verify);
    verify->add_option("--trials", cfg.trials, "Number of Hardy bumps");
    commands[verify] = Command::verify_all;

    for (auto& [sub, _] : commands) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    for (auto& [sub, command] : commands) {
        if (sub->parsed()) cfg.command = command;
    }
    cfg.format = format == "json" ? Format::json : Format::csv;
    if (!out_path.empty()) cfg.output_path = out_path;
    return run(cfg, std::cout, std::cerr);
}
