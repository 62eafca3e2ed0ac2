#include "radmorse/norms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "radmorse/errors.hpp"
#include "radmorse/profile.hpp"
#include "radmorse/quadrature.hpp"
#include "radmorse/solution.hpp"

namespace radmorse {

namespace {

constexpr std::size_t kMinNormIntervals = 256;

double critical_exponent(int dimension) { return static_cast<double>(dimension) / (dimension - 2); }

}  // namespace

double unit_sphere_area(int dimension) {
    if (dimension < 1) {
        throw DomainError("dimension must be positive");
    }
    const double half = 0.5 * dimension;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double unit_ball_volume(int dimension) { return unit_sphere_area(dimension) / dimension; }

double radial_lp_norm(int dimension, const RadialFunction& u, double p, std::span<const double> breakpoints) {
    if (!(p >= 1.0)) {
        std::ostringstream msg;
        msg << "L^p norm needs p >= 1, got p = " << p;
        throw DomainError(msg.str());
    }
    if (std::isinf(p)) {
        double peak = 0.0;
        for (const double r : breakpoints) peak = std::max(peak, std::abs(u(r)));
        const auto gx = GaussLegendre8::nodes();
        for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
            const double mid = 0.5 * (breakpoints[k] + breakpoints[k + 1]);
            const double half = 0.5 * (breakpoints[k + 1] - breakpoints[k]);
            for (const double x : gx) peak = std::max(peak, std::abs(u(mid + half * x)));
        }
        return peak;
    }
    const auto integrand = [&](double r) { return std::pow(r, dimension - 1) * std::pow(std::abs(u(r)), p); };
    const double integral = unit_sphere_area(dimension) * composite_gauss(integrand, breakpoints);
    return std::pow(integral, 1.0 / p);
}

RadialGrid norm_grid(double r0, std::size_t n) {
    if (n < kMinNormIntervals) {
        throw DomainError("norm grid needs n >= 256, got " + std::to_string(n));
    }
    const std::size_t inner = n / 4;
    const std::size_t outer = n - inner;
    const RadialGrid head = RadialGrid::uniform(0.0, r0, inner);
    const RadialGrid tail = RadialGrid::logarithmic(r0, 1.0, outer);
    std::vector<double> nodes = head.nodes;
    nodes.insert(nodes.end(), tail.nodes.begin() + 1, tail.nodes.end());
    return RadialGrid::from_nodes(std::move(nodes), Grading::geometric);
}

double lp_norm(const RadialSolution& solution, double p, std::size_t n) {
    if (!(p >= 1.0)) {
        std::ostringstream msg;
        msg << "L^p norm needs p >= 1, got p = " << p;
        throw DomainError(msg.str());
    }
    if (std::isinf(p)) {
        return solution.u0();
    }
    const RadialGrid grid = norm_grid(solution.r0(), n);
    const RadialFunction u = [&solution](double r) { return solution.u(r); };
    return radial_lp_norm(solution.dimension(), u, p, grid.nodes);
}

double predicted_exponent(int dimension, double p, double q) {
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    return dimension * (1.0 / q - inv_p);
}

void validate_exponents(int dimension, double p, double q) {
    std::ostringstream msg;
    if (!(q >= 1.0)) {
        msg << "q = " << q << " violates 1 <= q";
    } else if (!(q < p)) {
        msg << "(p, q) = (" << p << ", " << q << ") violates q < p";
    } else if (dimension < 3) {
        msg << "N = " << dimension << " violates N >= 3";
    } else if (!(p > critical_exponent(dimension))) {
        msg << "p = " << p << " violates p > N/(N-2) = " << critical_exponent(dimension) << " for N = " << dimension;
    } else {
        return;
    }
    throw DomainError(msg.str());
}

ScanRow scan_row(int dimension, double r0, double p, double q, std::size_t n) {
    ScanRow row;
    row.N = dimension;
    row.r0 = r0;
    row.p = p;
    row.q = q;
    try {
        validate_exponents(dimension, p, q);
        const RadialSolution solution = build_solution(Profile(dimension, r0));
        row.norm_p = lp_norm(solution, p, n);
        row.norm_q = lp_norm(solution, q, n);
        row.ratio_q_over_p = row.norm_q / row.norm_p;
        const SpectrumReport inner = radial_morse_index(solution, 0.0, r0, n);
        const SpectrumReport annulus = radial_morse_index(solution, r0, 1.0, n);
        const SpectrumReport whole = radial_morse_index(solution, 0.0, 1.0, n);
        row.index_inner = inner.negative_count;
        row.index_annulus = annulus.negative_count;
        row.index_whole = whole.negative_count;
        row.refinement_consistent =
            inner.refinement_consistent && annulus.refinement_consistent && whole.refinement_consistent;
        row.quotient_annulus = stability_quotient(solution, r0, n);
        row.residual = solution.pde_residual(index_grid(0.0, 1.0, n));
    } catch (const std::exception& e) {
        row.error = e.what();
        row.ratio_q_over_p = std::numeric_limits<double>::quiet_NaN();
    }
    return row;
}

std::vector<ScanRow> scan(const ScanConfig& config) {
    for (std::size_t i = 1; i < config.radii.size(); ++i) {
        if (!(config.radii[i] < config.radii[i - 1])) {
            throw DomainError("scan radii must be strictly decreasing");
        }
    }
    for (const int dim : config.dimensions) {
        for (const auto& pair : config.pairs) {
            validate_exponents(dim, pair.p, pair.q);
        }
        for (const double r0 : config.radii) {
            make_profile_params(dim, r0);
        }
    }

    struct Task {
        int dimension;
        ExponentPair pair;
        double r0;
    };
    std::vector<Task> tasks;
    for (const int dim : config.dimensions) {
        for (const auto& pair : config.pairs) {
            for (const double r0 : config.radii) {
                tasks.push_back({dim, pair, r0});
            }
        }
    }
    std::vector<ScanRow> rows(tasks.size());
    unsigned workers = config.workers != 0 ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));

    normalization_constant();  // warm the shared table before fanning out
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const Task& t = tasks[i];
            rows[i] = scan_row(t.dimension, t.r0, t.pair.p, t.pair.q, config.grid_n);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return rows;
}

ExponentFit fit_exponent(std::span<const ScanRow> rows) {
    std::vector<double> xs, ys;
    std::set<double> radii;
    const ScanRow* first = nullptr;
    for (const auto& row : rows) {
        if (!row.ok() || !(row.ratio_q_over_p > 0.0) || !std::isfinite(row.ratio_q_over_p)) {
            continue;
        }
        if (first == nullptr) {
            first = &row;
        } else if (row.N != first->N || row.p != first->p || row.q != first->q) {
            throw DomainError("fit_exponent rows must share (N, p, q)");
        }
        if (!radii.insert(row.r0).second) {
            throw DomainError("fit_exponent rows must have distinct r0");
        }
        xs.push_back(std::log(row.r0));
        const double y = std::log(row.ratio_q_over_p);
        ys.push_back(std::isinf(row.p) ? -y : y);
    }
    if (xs.size() < 4) {
        throw DomainError("fit_exponent needs at least 4 valid rows, got " + std::to_string(xs.size()));
    }
    const double count = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fit.max_deviation = std::max(fit.max_deviation, std::abs(ys[i] - (fit.slope * xs[i] + fit.intercept)));
    }
    return fit;
}

double bubble(int dimension, double lambda, double r) {
    const double amplitude = std::sqrt(lambda * dimension * (dimension - 2));
    return std::pow(amplitude / (lambda * lambda + r * r), 0.5 * (dimension - 2));
}

double bubble_laplacian(int dimension, double lambda, double r) {
    const double half = 0.5 * (dimension - 2);
    const double amplitude = std::sqrt(lambda * dimension * (dimension - 2));
    const double denom = lambda * lambda + r * r;
    return -static_cast<double>(dimension * (dimension - 2)) * lambda * lambda * std::pow(amplitude, half) *
           std::pow(denom, -0.5 * (dimension + 2));
}

CriticalFamilyPoint critical_family(int dimension, double lambda, std::size_t n) {
    if (dimension < 3) {
        throw DomainError("critical family needs N >= 3");
    }
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        std::ostringstream msg;
        msg << "critical family needs lambda in (0, 1], got " << lambda;
        throw DomainError(msg.str());
    }
    const auto u = [=](double r) { return bubble(dimension, lambda, r) - bubble(dimension, 1.0, r); };
    const double power = static_cast<double>(dimension + 2) / (dimension - 2);
    const auto nonlinearity = [=](double value) {
        const double base = lambda + value;
        return std::copysign(std::pow(std::abs(base), power), base);
    };

    RadialGrid grid = RadialGrid::geometric(0.0, 1.0, n, std::min(1e-6, 1e-4 * lambda));
    std::vector<double> breaks = grid.nodes;
    // u_lambda has at most one sign change (U(lambda)/U(1) is monotone in r); split there.
    if (u(0.0) * u(1.0) < 0.0) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
            const double mid = 0.5 * (lo + hi);
            ((u(mid) > 0.0) == (u(0.0) > 0.0) ? lo : hi) = mid;
        }
        const double root = 0.5 * (lo + hi);
        const auto at = std::lower_bound(breaks.begin(), breaks.end(), root);
        if (at != breaks.end() && *at != root) breaks.insert(at, root);
    }

    CriticalFamilyPoint point;
    point.N = dimension;
    point.lambda = lambda;
    for (const double r : grid.nodes) {
        point.sup_norm = std::max(point.sup_norm, std::abs(u(r)));
        const double laplacian = bubble_laplacian(dimension, lambda, r) - bubble_laplacian(dimension, 1.0, r);
        point.residual = std::max(point.residual, std::abs(-laplacian - nonlinearity(u(r))));
    }
    point.l1_norm = radial_lp_norm(dimension, u, 1.0, breaks);
    point.ratio = point.l1_norm > 0.0 ? point.sup_norm / point.l1_norm : std::numeric_limits<double>::quiet_NaN();
    point.boundary_value = u(1.0);
    return point;
}

}  // namespace radmorse
