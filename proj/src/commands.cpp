#include "radmorse/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "radmorse/errors.hpp"
#include "radmorse/norms.hpp"
#include "radmorse/profile.hpp"
#include "radmorse/report.hpp"
#include "radmorse/solution.hpp"
#include "radmorse/spectral.hpp"

namespace radmorse {

namespace {

constexpr double kResidualTolerance = 1e-8;
constexpr double kBoundaryTolerance = 1e-10;
constexpr double kQuotientSlack = 1e-9;
constexpr std::size_t kSignNodes = 10000;
constexpr double kCertifiedRadius = 0.1;

struct Outcome {
    Table table;
    bool passed = true;
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

const std::vector<int>& default_dimensions() {
    static const std::vector<int> dims = {3, 4, 5, 6, 7, 8, 9};
    return dims;
}

const std::vector<double>& default_radii() {
    static const std::vector<double> radii = {0.2, 0.1, 0.05};
    return radii;
}

template <class T>
const std::vector<T>& or_default(const std::vector<T>& given, const std::vector<T>& fallback) {
    return given.empty() ? fallback : given;
}

struct ConstructCheck {
    double u0 = 0.0;
    double u_at_1 = 0.0;
    double psi_1 = 0.0;
    double bound = 0.0;
    double residual = 0.0;
    double min_f = 0.0;
    double min_fprime = 0.0;
    bool passed = false;
};

ConstructCheck check_construction(const RadialSolution& sol, std::size_t n) {
    ConstructCheck c;
    const int dim = sol.dimension();
    c.u0 = sol.u0();
    c.u_at_1 = sol.u(1.0);
    c.psi_1 = sol.profile().psi(1.0);
    c.bound = kappa(dim) * std::pow(sol.r0(), dim);
    c.residual = sol.pde_residual(index_grid(0.0, 1.0, n));
    c.min_f = sol.f_at_r(0.0);
    c.min_fprime = sol.fprime_at_r(0.0);
    for (std::size_t i = 1; i <= kSignNodes; ++i) {
        const double r = static_cast<double>(i) / kSignNodes;
        c.min_f = std::min(c.min_f, sol.f_at_r(r));
        c.min_fprime = std::min(c.min_fprime, sol.fprime_at_r(r));
    }
    c.passed = c.residual <= kResidualTolerance && std::abs(c.u_at_1) <= kBoundaryTolerance &&
               c.psi_1 <= c.bound * (1.0 + 1e-12) && c.min_f >= 0.0 && c.min_fprime >= 0.0;
    return c;
}

Outcome run_construct(const RunConfig& cfg, std::ostream& out) {
    Outcome o;
    o.table.columns = {"N", "r0", "u0", "u_at_1", "psi_1", "psi_bound", "residual", "min_f", "min_fprime", "passed"};
    for (const int dim : cfg.dimensions) {
        for (const double r0 : cfg.radii) {
            const RadialSolution sol = build_solution(Profile(dim, r0));
            const ConstructCheck c = check_construction(sol, cfg.grid_n);
            o.passed = o.passed && c.passed;
            o.table.rows.push_back({static_cast<std::int64_t>(dim), r0, c.u0, c.u_at_1, c.psi_1, c.bound, c.residual,
                                    c.min_f, c.min_fprime, c.passed});
            out << "construct N=" << dim << " r0=" << r0 << ": u0 = " << fmt(c.u0) << ", residual = " << fmt(c.residual)
                << ", psi(1)/bound = " << fmt(c.psi_1 / c.bound) << (c.passed ? " [pass]" : " [FAIL]") << '\n';
        }
    }
    return o;
}

Outcome run_index(const RunConfig& cfg, std::ostream& out) {
    Outcome o;
    o.table.columns = {"N", "r0", "a", "b", "negative_count", "smallest_eigenvalue", "grid_size",
                       "refinement_consistent", "perturbed"};
    const double a = cfg.interval.empty() ? 0.0 : cfg.interval[0];
    const double b = cfg.interval.empty() ? 1.0 : cfg.interval[1];
    for (const int dim : cfg.dimensions) {
        for (const double r0 : cfg.radii) {
            const RadialSolution sol = build_solution(Profile(dim, r0));
            const SpectrumReport rep = radial_morse_index(sol, a, b, cfg.grid_n);
            o.passed = o.passed && rep.refinement_consistent;
            o.table.rows.push_back({static_cast<std::int64_t>(dim), r0, a, b, as_int(rep.negative_count),
                                    rep.smallest_eigenvalue, as_int(rep.grid_size), rep.refinement_consistent,
                                    rep.perturbed});
            out << "index N=" << dim << " r0=" << r0 << " (" << a << "," << b << "): negative_count = "
                << rep.negative_count << ", smallest_eigenvalue = " << fmt(rep.smallest_eigenvalue)
                << (rep.refinement_consistent ? " [consistent]" : " [INCONSISTENT]") << '\n';
        }
    }
    return o;
}

Outcome run_quotient(const RunConfig& cfg, std::ostream& out) {
    Outcome o;
    o.table.columns = {"N", "r0", "quotient", "bound", "passed"};
    for (const int dim : cfg.dimensions) {
        for (const double r0 : cfg.radii) {
            const RadialSolution sol = build_solution(Profile(dim, r0));
            const double value = stability_quotient(sol, r0, cfg.grid_n);
            const double bound = dim - 1.0;
            const bool ok = value >= bound - kQuotientSlack;
            o.passed = o.passed && ok;
            o.table.rows.push_back({static_cast<std::int64_t>(dim), r0, value, bound, ok});
            out << "quotient N=" << dim << " r0=" << r0 << ": " << fmt(value) << " >= " << bound
                << (ok ? " [pass]" : " [FAIL]") << '\n';
        }
    }
    return o;
}

Outcome run_hardy(const RunConfig& cfg, std::ostream& out) {
    Outcome o;
    o.table.columns = {"trial", "alpha", "a", "b", "lhs", "rhs", "passed"};
    const auto trials = hardy_suite(cfg.alphas, cfg.left_ends, cfg.right_end, cfg.trials, cfg.seed);
    std::size_t passed = 0;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& t = trials[i];
        passed += t.passed ? 1 : 0;
        o.table.rows.push_back({as_int(i), t.alpha, t.a, t.b, t.lhs, t.rhs, t.passed});
        out << "hardy trial " << i << " alpha=" << t.alpha << " [" << t.a << "," << t.b << "]: lhs = " << fmt(t.lhs)
            << ", rhs = " << fmt(t.rhs) << (t.passed ? " [pass]" : " [FAIL]") << '\n';
    }
    o.passed = passed == trials.size();
    out << "hardy: " << passed << "/" << trials.size() << " pass\n";
    return o;
}

bool row_verified(const ScanRow& row) {
    if (!row.ok()) return false;
    const bool whole_ok = row.r0 > kCertifiedRadius || row.index_whole == 1;
    return row.index_inner == 0 && row.index_annulus == 0 && whole_ok && row.refinement_consistent &&
           row.quotient_annulus >= row.N - 1.0 - kQuotientSlack && row.residual <= kResidualTolerance;
}

Outcome run_scan(const RunConfig& cfg, std::ostream& out) {
    ScanConfig sc;
    sc.dimensions = cfg.dimensions;
    sc.radii = cfg.radii;
    sc.grid_n = cfg.grid_n;
    sc.workers = cfg.workers;
    for (std::size_t i = 0; i < cfg.p.size(); ++i) sc.pairs.push_back({cfg.p[i], cfg.q[i]});
    const auto rows = scan(sc);
    Outcome o;
    o.table = scan_table(rows);
    for (const auto& row : rows) {
        const bool ok = row_verified(row);
        o.passed = o.passed && ok;
        out << "scan N=" << row.N << " p=" << row.p << " q=" << row.q << " r0=" << row.r0;
        if (!row.ok()) {
            out << ": error: " << row.error << " [FAIL]\n";
            continue;
        }
        out << ": ratio_q_over_p = " << fmt(row.ratio_q_over_p) << ", indices (inner, annulus, whole) = ("
            << row.index_inner << ", " << row.index_annulus << ", " << row.index_whole
            << "), quotient = " << fmt(row.quotient_annulus) << (ok ? " [pass]" : " [FAIL]") << '\n';
    }
    return o;
}

Outcome run_critical(const RunConfig& cfg, std::ostream& out) {
    Outcome o;
    o.table.columns = {"N", "lambda", "sup_norm", "l1_norm", "ratio", "boundary_value", "residual", "dirichlet_defect"};
    for (const int dim : cfg.dimensions) {
        for (const double lambda : cfg.lambdas) {
            const CriticalFamilyPoint pt = critical_family(dim, lambda, cfg.grid_n);
            const bool defect = std::abs(pt.boundary_value) > 1e-12;
            o.passed = o.passed && std::isfinite(pt.sup_norm) && std::isfinite(pt.l1_norm);
            o.table.rows.push_back({static_cast<std::int64_t>(dim), lambda, pt.sup_norm, pt.l1_norm, pt.ratio,
                                    pt.boundary_value, pt.residual, defect});
            out << "critical N=" << dim << " lambda=" << lambda << ": sup/L1 = " << fmt(pt.ratio)
                << ", u(1) = " << fmt(pt.boundary_value) << ", residual = " << fmt(pt.residual)
                << (defect ? " (note: u(1) != 0, Dirichlet condition not met by the stated formula)" : "") << '\n';
        }
    }
    return o;
}

Outcome run_verify_all(const RunConfig& cfg, std::ostream& out) {
    Outcome o;
    o.table.columns = {"check", "N", "r0", "value", "passed"};
    const auto add = [&](const std::string& name, int dim, double r0, double value, bool ok) {
        o.passed = o.passed && ok;
        o.table.rows.push_back({name, static_cast<std::int64_t>(dim), r0, value, ok});
        out << "verify " << name << " N=" << dim << " r0=" << r0 << ": " << fmt(value) << (ok ? " [pass]" : " [FAIL]")
            << '\n';
    };
    for (const int dim : cfg.dimensions) {
        for (const double r0 : cfg.radii) {
            const RadialSolution sol = build_solution(Profile(dim, r0));
            const ConstructCheck c = check_construction(sol, cfg.grid_n);
            add("construction_residual", dim, r0, c.residual, c.passed);
            const double quotient = stability_quotient(sol, r0, cfg.grid_n);
            add("annulus_quotient", dim, r0, quotient, quotient >= dim - 1.0 - kQuotientSlack);
            const SplittingResult split = splitting_check(sol, r0, cfg.grid_n);
            add("index_inner", dim, r0, static_cast<double>(split.inner.negative_count),
                split.inner.negative_count == 0 && split.inner.refinement_consistent);
            add("index_annulus", dim, r0, static_cast<double>(split.outer.negative_count),
                split.outer.negative_count == 0 && split.outer.refinement_consistent);
            const bool whole_ok = (r0 > kCertifiedRadius || split.whole.negative_count == 1) &&
                                  split.whole.refinement_consistent;
            add("index_whole", dim, r0, static_cast<double>(split.whole.negative_count), whole_ok);
            add("splitting", dim, r0, split.holds() ? 1.0 : 0.0, split.holds());
        }
    }
    const std::vector<double> alphas = {-9, -8, -7, -6, -5, -4, -3};
    const std::vector<double> lefts = {0.05, 0.1, 0.3};
    const auto trials = hardy_suite(alphas, lefts, 1.0, cfg.trials, cfg.seed);
    const auto passed = static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.passed; }));
    add("hardy_suite", 0, 0.0, static_cast<double>(passed), passed == trials.size());
    return o;
}

void require(bool condition, const std::string& message) {
    if (!condition) throw DomainError(message);
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
    if (name == "construct") return Command::construct;
    if (name == "index") return Command::index;
    if (name == "quotient") return Command::quotient;
    if (name == "hardy") return Command::hardy;
    if (name == "scan") return Command::scan;
    if (name == "critical") return Command::critical;
    if (name == "verify-all") return Command::verify_all;
    return std::nullopt;
}

const char* command_name(Command command) {
    switch (command) {
        case Command::construct: return "construct";
        case Command::index: return "index";
        case Command::quotient: return "quotient";
        case Command::hardy: return "hardy";
        case Command::scan: return "scan";
        case Command::critical: return "critical";
        case Command::verify_all: return "verify-all";
    }
    return "?";
}

void validate(const RunConfig& cfg) {
    const auto check_family = [&] {
        require(!cfg.dimensions.empty(), "--N is required");
        require(!cfg.radii.empty(), "--r0 is required");
        for (const int dim : cfg.dimensions) {
            for (const double r0 : cfg.radii) make_profile_params(dim, r0);
        }
    };
    if (cfg.command != Command::hardy) {
        require(cfg.grid_n >= 256, "--grid-n must be >= 256, got " + std::to_string(cfg.grid_n));
    }
    switch (cfg.command) {
        case Command::construct:
        case Command::quotient:
            check_family();
            break;
        case Command::index:
            check_family();
            if (!cfg.interval.empty()) {
                require(cfg.interval.size() == 2, "--interval takes exactly two values a,b");
                require(cfg.interval[0] >= 0.0 && cfg.interval[0] < cfg.interval[1] && cfg.interval[1] <= 1.0,
                        "--interval a,b must satisfy 0 <= a < b <= 1");
            }
            break;
        case Command::scan:
            check_family();
            require(!cfg.p.empty() && cfg.p.size() == cfg.q.size(), "--p and --q must be non-empty lists of equal length");
            for (std::size_t i = 1; i < cfg.radii.size(); ++i) {
                require(cfg.radii[i] < cfg.radii[i - 1], "--r0 values must be strictly decreasing");
            }
            for (const int dim : cfg.dimensions) {
                for (std::size_t i = 0; i < cfg.p.size(); ++i) validate_exponents(dim, cfg.p[i], cfg.q[i]);
            }
            break;
        case Command::hardy:
            require(!cfg.alphas.empty(), "--alpha is required");
            require(!cfg.left_ends.empty(), "--a is required");
            for (const double a : cfg.left_ends) {
                require(a > 0.0 && a < cfg.right_end, "Hardy interval must satisfy 0 < a < b");
            }
            require(cfg.trials > 0, "--trials must be positive");
            break;
        case Command::critical:
            require(!cfg.dimensions.empty(), "--N is required");
            require(!cfg.lambdas.empty(), "--lambda is required");
            for (const int dim : cfg.dimensions) require(dim >= 3, "critical family needs N >= 3");
            for (const double l : cfg.lambdas) require(l > 0.0 && l <= 1.0, "--lambda values must lie in (0, 1]");
            break;
        case Command::verify_all:
            for (const int dim : cfg.dimensions) {
                for (const double r0 : or_default(cfg.radii, default_radii())) make_profile_params(dim, r0);
            }
            break;
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto report_error = [&](const char* kind, const std::string& message) {
        if (config.format == Format::json) {
            Table record;
            record.columns = {"error", "kind", "command"};
            record.rows.push_back({message, std::string(kind), std::string(command_name(config.command))});
            write_json(err, record);
        } else {
            err << "radmorse " << command_name(config.command) << ": " << kind << " error: " << message << '\n';
        }
    };

    RunConfig cfg = config;
    if (cfg.command == Command::verify_all) {
        cfg.dimensions = or_default(cfg.dimensions, default_dimensions());
        cfg.radii = or_default(cfg.radii, default_radii());
    }
    try {
        validate(cfg);
    } catch (const std::exception& e) {
        report_error("usage", e.what());
        return kExitUsage;
    }

    try {
        Outcome outcome;
        switch (cfg.command) {
            case Command::construct: outcome = run_construct(cfg, out); break;
            case Command::index: outcome = run_index(cfg, out); break;
            case Command::quotient: outcome = run_quotient(cfg, out); break;
            case Command::hardy: outcome = run_hardy(cfg, out); break;
            case Command::scan: outcome = run_scan(cfg, out); break;
            case Command::critical: outcome = run_critical(cfg, out); break;
            case Command::verify_all: outcome = run_verify_all(cfg, out); break;
        }
        if (cfg.output_path) {
            std::ostringstream body;
            if (cfg.format == Format::json) {
                write_json(body, outcome.table);
            } else {
                write_csv(body, outcome.table);
            }
            write_atomically(*cfg.output_path, body.str());
        }
        return outcome.passed ? kExitOk : kExitFailed;
    } catch (const std::exception& e) {
        report_error("runtime", e.what());
        return kExitFailed;
    }
}

}  // namespace radmorse
