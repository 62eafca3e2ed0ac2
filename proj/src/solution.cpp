#include "radmorse/solution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "radmorse/errors.hpp"
#include "radmorse/quadrature.hpp"

namespace radmorse {

namespace {

constexpr std::size_t kPanels = 256;

const QuadratureTolerance kSolutionTolerance{1e-12, 1e-300, 2000};

void check_radius(double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
        std::ostringstream msg;
        msg << "radius r = " << r << " outside [0, 1]";
        throw DomainError(msg.str());
    }
}

}  // namespace

RadialSolution::RadialSolution(Profile profile)
    : profile_(std::move(profile)),
      saturation_radius_(std::min(1.0, std::pow(profile_.saturation(), 1.0 / profile_.dimension()))),
      u0_(0.0) {
    const double r0 = profile_.r0();
    const double top = saturation_radius_;
    panel_nodes_.resize(kPanels + 1);
    const double span = std::log(top / r0);
    for (std::size_t k = 0; k <= kPanels; ++k) {
        panel_nodes_[k] = r0 * std::exp(span * static_cast<double>(k) / kPanels);
    }
    panel_nodes_.front() = r0;
    panel_nodes_.back() = top;

    cumulative_.assign(kPanels + 1, 0.0);
    cumulative_[kPanels] = outer(top);
    const auto f = [this](double s) { return integrand(s); };
    for (std::size_t k = kPanels; k-- > 0;) {
        cumulative_[k] = cumulative_[k + 1] + integrate(f, panel_nodes_[k], panel_nodes_[k + 1], kSolutionTolerance);
    }
    u0_ = cumulative_[0] + 0.5 * r0 * r0;
}

double RadialSolution::integrand(double s) const {
    const int n = dimension();
    return profile_.psi(std::pow(s, n)) * std::pow(s, 1 - n);
}

// Closed form of int_r^1 kappa r0^N s^(1-N) ds.
double RadialSolution::outer(double r) const {
    const int n = dimension();
    return profile_.ceiling() * (std::pow(r, 2 - n) - 1.0) / (n - 2);
}

double RadialSolution::u(double r) const {
    check_radius(r);
    const double r0 = profile_.r0();
    if (r < r0) {
        return cumulative_[0] + 0.5 * (r0 - r) * (r0 + r);
    }
    if (r >= saturation_radius_) {
        return outer(r);
    }
    const auto it = std::upper_bound(panel_nodes_.begin(), panel_nodes_.end(), r);
    const auto k = static_cast<std::size_t>(it - panel_nodes_.begin());
    const auto f = [this](double s) { return integrand(s); };
    return cumulative_[k] + integrate(f, r, panel_nodes_[k], kSolutionTolerance);
}

double RadialSolution::u_direct(double r) const {
    check_radius(r);
    const double r0 = profile_.r0();
    const double lo = std::max(r, r0);
    const auto f = [this](double s) { return integrand(s); };
    QuadratureTolerance tol = kSolutionTolerance;
    tol.max_intervals = 8000;
    double value = integrate(f, lo, 1.0, tol);
    if (r < r0) {
        value += 0.5 * (r0 - r) * (r0 + r);
    }
    return value;
}

double RadialSolution::u_r(double r) const {
    check_radius(r);
    if (r < profile_.r0()) {
        return -r;
    }
    const int n = dimension();
    return -std::pow(r, 1 - n) * profile_.psi(std::pow(r, n));
}

double RadialSolution::u_rr(double r) const {
    check_radius(r);
    if (r < profile_.r0()) {
        return -1.0;
    }
    const int n = dimension();
    const double t = std::pow(r, n);
    return (n - 1) * profile_.psi(t) / t - n * profile_.psi_prime(t);
}

double RadialSolution::f_at_r(double r) const {
    check_radius(r);
    if (r < profile_.r0()) {
        return dimension();
    }
    return dimension() * profile_.psi_prime(std::pow(r, dimension()));
}

double RadialSolution::fprime_at_r(double r) const {
    check_radius(r);
    if (r < profile_.r0()) {
        return 0.0;
    }
    const int n = dimension();
    const double t = std::pow(r, n);
    const double value = -static_cast<double>(n * n) * std::pow(r, 2 * n - 2) * profile_.psi_second(t) / profile_.psi(t);
    return value == 0.0 ? 0.0 : value;
}

double RadialSolution::pde_residual(const RadialGrid& grid) const {
    const int n = dimension();
    double worst = 0.0;
    for (const double r : grid.nodes) {
        check_radius(r);
        // (N-1) u'/r -> -(N-1) as r -> 0.
        const double drift = r > 0.0 ? (n - 1) * u_r(r) / r : -(n - 1.0);
        const double residual = -u_rr(r) - drift - f_at_r(r);
        worst = std::max(worst, std::abs(residual));
    }
    return worst;
}

RadialSolution build_solution(const Profile& profile) { return RadialSolution(profile); }

}  // namespace radmorse
