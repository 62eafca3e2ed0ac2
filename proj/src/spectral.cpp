#include "radmorse/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "radmorse/errors.hpp"
#include "radmorse/quadrature.hpp"
#include "radmorse/solution.hpp"

namespace radmorse {

namespace {

constexpr double kZeroPivot = 1e-13;
constexpr int kPerturbations = 3;
constexpr double kIndexFirstStep = 1e-6;
constexpr std::size_t kMinIndexIntervals = 64;

double checked(const RadialFunction& fn, double r, const char* what) {
    const double value = fn(r);
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << what << " weight is not finite at r = " << r;
        throw SpectralError(msg.str());
    }
    return value;
}

// True when every LDL^T pivot is positive.
bool positive_definite(const SymmetricTridiagonal& m) {
    double pivot = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        pivot = m.diagonal[i];
        if (i > 0) {
            pivot -= m.off_diagonal[i - 1] * m.off_diagonal[i - 1] / pivot;
        }
        if (!(pivot > 0.0)) {
            return false;
        }
    }
    return true;
}

struct PivotScan {
    std::size_t negative = 0;
    bool zero_pivot = false;
};

PivotScan scan_pivots(const OperatorPencil& pencil, double shift) {
    const auto& k = pencil.stiffness;
    const auto& m = pencil.mass;
    const std::size_t n = k.size();
    PivotScan out;
    double prev_pivot = 1.0;
    double prev_off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double diag = k.diagonal[i] - shift * m.diagonal[i];
        const double off = i + 1 < n ? k.off_diagonal[i] - shift * m.off_diagonal[i] : 0.0;
        const double pivot = i == 0 ? diag : diag - prev_off * prev_off / prev_pivot;
        // Row-local scale: entries near r = 0 carry the factor r^(N-1) and are legitimately tiny.
        const double scale = std::abs(diag) + std::abs(off) + std::abs(prev_off);
        if (std::abs(pivot) <= kZeroPivot * scale) {
            out.zero_pivot = true;
            return out;
        }
        if (pivot < 0.0) {
            ++out.negative;
        }
        prev_pivot = pivot;
        prev_off = off;
    }
    return out;
}

SpectrumReport combine(const OperatorPencil& coarse, const OperatorPencil& fine, std::size_t n) {
    SpectrumReport report;
    const Inertia at_coarse = inertia(coarse, 0.0);
    const Inertia at_fine = inertia(fine, 0.0);
    report.negative_count = at_coarse.negative;
    report.grid_size = n;
    report.refinement_consistent = at_coarse.negative == at_fine.negative;
    report.perturbed = at_coarse.perturbed || at_fine.perturbed;
    report.smallest_eigenvalue = smallest_eigenvalue(coarse);
    report.quotient_min = std::numeric_limits<double>::quiet_NaN();
    return report;
}

void check_index_args(double a, double b, std::size_t n) {
    if (!(a >= 0.0 && a < b && b <= 1.0)) {
        std::ostringstream msg;
        msg << "index interval (" << a << ", " << b << ") must satisfy 0 <= a < b <= 1";
        throw DomainError(msg.str());
    }
    if (n < kMinIndexIntervals) {
        throw DomainError("index computation needs n >= 64, got " + std::to_string(n));
    }
}

}  // namespace

double SymmetricTridiagonal::norm_inf() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < diagonal.size(); ++i) {
        double row = std::abs(diagonal[i]);
        if (i > 0) row += std::abs(off_diagonal[i - 1]);
        if (i < off_diagonal.size()) row += std::abs(off_diagonal[i]);
        worst = std::max(worst, row);
    }
    return worst;
}

OperatorPencil assemble_pencil(const RadialGrid& grid, const FormWeights& weights, Boundary left, Boundary right) {
    const auto& nodes = grid.nodes;
    const std::size_t cells = grid.intervals();
    const std::size_t full = cells + 1;
    std::vector<double> kd(full, 0.0), ko(cells, 0.0), md(full, 0.0), mo(cells, 0.0);

    const auto gx = GaussLegendre4::nodes();
    const auto gw = GaussLegendre4::weights();
    for (std::size_t e = 0; e < cells; ++e) {
        const double lo = nodes[e];
        const double hi = nodes[e + 1];
        const double h = hi - lo;
        double k00 = 0.0, k01 = 0.0, k11 = 0.0, m00 = 0.0, m01 = 0.0, m11 = 0.0;
        for (std::size_t q = 0; q < gx.size(); ++q) {
            const double r = lo + 0.5 * h * (1.0 + gx[q]);
            const double w = 0.5 * h * gw[q];
            const double phi0 = (hi - r) / h;
            const double phi1 = (r - lo) / h;
            const double g = checked(weights.gradient, r, "gradient");
            const double c = weights.potential ? checked(weights.potential, r, "potential") : 0.0;
            const double m = checked(weights.mass, r, "mass");
            const double grad = w * g / (h * h);
            k00 += grad - w * c * phi0 * phi0;
            k01 += -grad - w * c * phi0 * phi1;
            k11 += grad - w * c * phi1 * phi1;
            m00 += w * m * phi0 * phi0;
            m01 += w * m * phi0 * phi1;
            m11 += w * m * phi1 * phi1;
        }
        kd[e] += k00;
        kd[e + 1] += k11;
        ko[e] += k01;
        md[e] += m00;
        md[e + 1] += m11;
        mo[e] += m01;
    }

    const std::size_t first = left == Boundary::dirichlet ? 1 : 0;
    const std::size_t last = right == Boundary::dirichlet ? full - 1 : full;  // exclusive
    if (last <= first + 1) {
        throw SpectralError("pencil has fewer than two unknowns");
    }
    OperatorPencil pencil;
    pencil.left = left;
    pencil.right = right;
    pencil.stiffness.diagonal.assign(kd.begin() + first, kd.begin() + last);
    pencil.stiffness.off_diagonal.assign(ko.begin() + first, ko.begin() + last - 1);
    pencil.mass.diagonal.assign(md.begin() + first, md.begin() + last);
    pencil.mass.off_diagonal.assign(mo.begin() + first, mo.begin() + last - 1);
    pencil.dof_radii.assign(nodes.begin() + first, nodes.begin() + last);
    if (!positive_definite(pencil.mass)) {
        throw SpectralError("assembled mass matrix is not positive definite");
    }
    return pencil;
}

OperatorPencil assemble_form(int dimension, const RadialGrid& grid, const RadialFunction& potential) {
    const int n = dimension;
    const auto volume = [n](double r) { return std::pow(r, n - 1); };
    FormWeights weights;
    weights.gradient = volume;
    weights.mass = volume;
    if (potential) {
        weights.potential = [n, &potential](double r) { return std::pow(r, n - 1) * potential(r); };
    }
    const Boundary left = grid.a == 0.0 ? Boundary::natural : Boundary::dirichlet;
    return assemble_pencil(grid, weights, left, Boundary::dirichlet);
}

OperatorPencil assemble_form(const RadialSolution& solution, const RadialGrid& grid, const RadialFunction& potential) {
    return assemble_form(solution.dimension(), grid, potential);
}

Inertia inertia(const OperatorPencil& pencil, double shift) {
    Inertia out;
    const double nudge =
        1e-12 * (pencil.stiffness.norm_inf() / std::max(pencil.mass.norm_inf(), 1e-300) + std::abs(shift));
    double sigma = shift;
    for (int attempt = 0; attempt <= kPerturbations; ++attempt) {
        const PivotScan scan = scan_pivots(pencil, sigma);
        if (!scan.zero_pivot) {
            out.negative = scan.negative;
            return out;
        }
        out.perturbed = true;
        sigma = shift + nudge * (attempt + 1) * (attempt % 2 == 0 ? 1.0 : -1.0);
    }
    std::ostringstream msg;
    msg << "LDL^T breakdown near shift " << shift << " after " << kPerturbations << " perturbations";
    throw SpectralError(msg.str());
}

double smallest_eigenvalue(const OperatorPencil& pencil, double rel_width) {
    double lo = -1.0;
    while (inertia(pencil, lo).negative > 0) {
        lo *= 2.0;
        if (!std::isfinite(lo)) throw SpectralError("pencil spectrum is unbounded below");
    }
    double hi = 1.0;
    while (inertia(pencil, hi).negative == 0) {
        hi *= 2.0;
        if (!std::isfinite(hi)) throw SpectralError("no eigenvalue found below overflow");
    }
    for (int it = 0; it < 400; ++it) {
        const double width = hi - lo;
        if (width <= rel_width * std::max(std::abs(lo), std::abs(hi)) || width <= 1e-300) {
            break;
        }
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (inertia(pencil, mid).negative == 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

RadialGrid index_grid(double a, double b, std::size_t n) {
    if (a == 0.0) {
        return RadialGrid::geometric(a, b, n, kIndexFirstStep);
    }
    return RadialGrid::uniform(a, b, n);
}

SpectrumReport radial_morse_index(int dimension, const RadialFunction& potential, double a, double b, std::size_t n) {
    check_index_args(a, b, n);
    const OperatorPencil coarse = assemble_form(dimension, index_grid(a, b, n), potential);
    const OperatorPencil fine = assemble_form(dimension, index_grid(a, b, 2 * n), potential);
    return combine(coarse, fine, n);
}

SpectrumReport radial_morse_index(const RadialSolution& solution, double a, double b, std::size_t n) {
    const RadialFunction potential = [&solution](double r) { return solution.fprime_at_r(r); };
    return radial_morse_index(solution.dimension(), potential, a, b, n);
}

double weighted_quotient_minimum(const RadialGrid& grid, const RadialFunction& gradient_weight,
                                 const RadialFunction& mass_weight) {
    FormWeights weights;
    weights.gradient = gradient_weight;
    weights.mass = mass_weight;
    const OperatorPencil pencil = assemble_pencil(grid, weights, Boundary::dirichlet, Boundary::dirichlet);
    return smallest_eigenvalue(pencil);
}

double stability_quotient(const RadialSolution& solution, double r0, std::size_t n) {
    if (!(r0 > 0.0 && r0 < 1.0)) {
        throw DomainError("stability quotient needs r0 in (0, 1)");
    }
    if (n < kMinIndexIntervals) {
        throw DomainError("stability quotient needs n >= 64, got " + std::to_string(n));
    }
    const RadialGrid grid = RadialGrid::uniform(r0, 1.0, n);
    for (const double r : grid.nodes) {
        if (solution.u_r(r) == 0.0) {
            std::ostringstream msg;
            msg << "degenerate weight: u_r vanishes at r = " << r;
            throw SpectralError(msg.str());
        }
    }
    const int dim = solution.dimension();
    const auto gradient = [&solution, dim](double r) {
        const double ur = solution.u_r(r);
        return std::pow(r, dim - 1) * ur * ur;
    };
    const auto mass = [&solution, dim](double r) {
        const double ur = solution.u_r(r);
        return std::pow(r, dim - 3) * ur * ur;
    };
    return weighted_quotient_minimum(grid, gradient, mass);
}

HardyIntegrals hardy_check(double alpha, double a, double b, const TestFunction& omega) {
    if (!(a > 0.0 && a < b)) {
        throw DomainError("Hardy check needs 0 < a < b");
    }
    double peak = 0.0;
    constexpr int kSamples = 1024;
    for (int i = 0; i <= kSamples; ++i) {
        peak = std::max(peak, std::abs(omega.value(a + (b - a) * i / kSamples)));
    }
    if (peak == 0.0) {
        return {};
    }
    if (std::abs(omega.value(a)) > 1e-12 * peak || std::abs(omega.value(b)) > 1e-12 * peak) {
        throw DomainError("Hardy test function must vanish at both endpoints");
    }
    const QuadratureTolerance tol{1e-13, 0.0, 4000};
    HardyIntegrals out;
    out.lhs = integrate(
        [&](double r) {
            const double d = omega.derivative(r);
            return std::pow(r, alpha + 1.0) * d * d;
        },
        a, b, tol);
    out.rhs = 0.25 * alpha * alpha *
              integrate(
                  [&](double r) {
                      const double v = omega.value(r);
                      return std::pow(r, alpha - 1.0) * v * v;
                  },
                  a, b, tol);
    return out;
}

TestFunction random_bump(std::mt19937_64& rng, double a, double b) {
    std::uniform_int_distribution<int> power(1, 2);
    std::uniform_int_distribution<int> degree(0, 4);
    std::uniform_real_distribution<double> coefficient(-1.0, 1.0);
    const int k = power(rng);
    const int m = power(rng);
    std::vector<double> c(static_cast<std::size_t>(degree(rng)) + 1);
    for (auto& ci : c) ci = coefficient(rng);
    c[0] += c[0] >= 0.0 ? 1.0 : -1.0;  // keep the bump away from the zero function
    const double len = b - a;

    const auto poly = [c, a, len](double r) {
        const double x = (r - a) / len;
        double v = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
        return v;
    };
    const auto poly_prime = [c, a, len](double r) {
        const double x = (r - a) / len;
        double v = 0.0;
        for (std::size_t j = c.size(); j-- > 1;) v = v * x + static_cast<double>(j) * c[j];
        return v / len;
    };
    TestFunction bump;
    bump.value = [=](double r) { return std::pow(r - a, k) * std::pow(b - r, m) * poly(r); };
    bump.derivative = [=](double r) {
        const double left = std::pow(r - a, k);
        const double right = std::pow(b - r, m);
        const double d_left = k * std::pow(r - a, k - 1);
        const double d_right = -m * std::pow(b - r, m - 1);
        return (d_left * right + left * d_right) * poly(r) + left * right * poly_prime(r);
    };
    return bump;
}

std::vector<HardyTrial> hardy_suite(std::span<const double> alphas, std::span<const double> left_ends, double b,
                                    std::size_t trials, std::uint64_t seed, double rel_tol) {
    if (alphas.empty() || left_ends.empty()) {
        throw DomainError("Hardy suite needs at least one alpha and one left endpoint");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_alpha(0, alphas.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_left(0, left_ends.size() - 1);
    std::vector<HardyTrial> out;
    out.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        HardyTrial trial;
        trial.alpha = alphas[pick_alpha(rng)];
        trial.a = left_ends[pick_left(rng)];
        trial.b = b;
        const TestFunction bump = random_bump(rng, trial.a, trial.b);
        const HardyIntegrals integrals = hardy_check(trial.alpha, trial.a, trial.b, bump);
        trial.lhs = integrals.lhs;
        trial.rhs = integrals.rhs;
        trial.passed = trial.lhs >= trial.rhs - rel_tol * trial.lhs;
        out.push_back(trial);
    }
    return out;
}

SplittingResult splitting_check(int dimension, const RadialFunction& potential, double delta, std::size_t n) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw DomainError("splitting radius must lie in (0, 1)");
    }
    SplittingResult out;
    out.inner = radial_morse_index(dimension, potential, 0.0, delta, n);
    out.outer = radial_morse_index(dimension, potential, delta, 1.0, n);
    out.whole = radial_morse_index(dimension, potential, 0.0, 1.0, n);
    return out;
}

SplittingResult splitting_check(const RadialSolution& solution, double delta, std::size_t n) {
    const RadialFunction potential = [&solution](double r) { return solution.fprime_at_r(r); };
    return splitting_check(solution.dimension(), potential, delta, n);
}

}  // namespace radmorse
