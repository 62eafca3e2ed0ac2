#include "radmorse/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "radmorse/errors.hpp"
#include "radmorse/quadrature.hpp"

namespace radmorse {

namespace {

// theta(s) >= s - 1, so the tail of exp(-theta) past kSaturation is below e^(1 - 64) ~ 4e-28.
constexpr int kSaturation = 64;

double transition_density(double s) { return std::exp(-transition_kernel(s)); }

const QuadratureTolerance kProfileTolerance{1e-13, 1e-16, 2000};

// Cumulative integral of exp(-theta) on cells of width 1/16 over [0, kSaturation], each cell
// by adaptive Gauss-Kronrod. Partial cells use a fixed 8-point Gauss rule, accurate to ~1e-15
// relative at this width, so G(x) is smooth in x to rounding level.
constexpr int kCellsPerUnit = 16;
constexpr int kCells = kSaturation * kCellsPerUnit;

struct TransitionTable {
    std::array<double, kCells + 1> cumulative{};

    TransitionTable() {
        cumulative[0] = 0.0;
        for (int k = 0; k < kCells; ++k) {
            const double lo = static_cast<double>(k) / kCellsPerUnit;
            const double hi = static_cast<double>(k + 1) / kCellsPerUnit;
            cumulative[k + 1] = cumulative[k] + integrate(transition_density, lo, hi, kProfileTolerance);
        }
    }
};

const TransitionTable& transition_table() {
    static const TransitionTable table;
    return table;
}

double partial_cell(double lo, double hi) {
    const auto x = GaussLegendre8::nodes();
    const auto w = GaussLegendre8::weights();
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += w[i] * transition_density(mid + half * x[i]);
    }
    return half * sum;
}

void check_argument(double t) {
    if (!(t > 0.0 && t <= 1.0)) {
        std::ostringstream msg;
        msg << "profile argument t = " << t << " outside (0, 1]";
        throw DomainError(msg.str());
    }
}

}  // namespace

double kappa(int dimension) {
    if (dimension < 3) {
        throw DomainError("kappa requires N >= 3 (kappa_N <= 1 otherwise), got N = " + std::to_string(dimension));
    }
    return dimension / (2.0 * std::sqrt(dimension - 1.0));
}

double transition_kernel(double s) { return s > 0.0 ? s * std::exp(-1.0 / s) : 0.0; }

double transition_kernel_derivative(double s) {
    return s > 0.0 ? std::exp(-1.0 / s) * (1.0 + 1.0 / s) : 0.0;
}

double normalization_constant() {
    static const double c0 = transition_table().cumulative[kCells];
    return c0;
}

double transition_integral(double x) {
    if (x <= 0.0) {
        return 0.0;
    }
    const auto& table = transition_table().cumulative;
    if (x >= kSaturation) {
        return table[kCells];
    }
    const auto k = static_cast<int>(std::floor(x * kCellsPerUnit));
    const double lo = static_cast<double>(k) / kCellsPerUnit;
    return table[k] + partial_cell(lo, x);
}

double ProfileParams::kappa() const { return radmorse::kappa(dimension); }

double ProfileParams::join() const { return std::pow(r0, dimension); }

ProfileParams make_profile_params(int dimension, double r0) {
    if (dimension < kMinDimension || dimension > kMaxDimension) {
        throw DomainError("dimension N = " + std::to_string(dimension) + " outside 3 <= N <= 9");
    }
    if (!(r0 >= kMinRadius && r0 <= kMaxRadius)) {
        std::ostringstream msg;
        msg << "r0 = " << r0 << " outside [" << kMinRadius << ", " << kMaxRadius << "]";
        throw DomainError(msg.str());
    }
    ProfileParams params;
    params.dimension = dimension;
    params.r0 = r0;
    params.c0 = normalization_constant();
    params.lambda = (radmorse::kappa(dimension) - 1.0) * params.join() / params.c0;
    return params;
}

Profile::Profile(const ProfileParams& params)
    : params_(params),
      join_(params.join()),
      ceiling_(params.kappa() * join_),
      saturation_(join_ + kSaturation * params.lambda) {
    if (!(params.lambda > 0.0) || !(params.c0 > 0.0)) {
        throw DomainError("profile parameters must have lambda > 0 and c0 > 0");
    }
}

double Profile::psi(double t) const {
    check_argument(t);
    if (t <= join_) {
        return t;
    }
    // t0 + lambda c0 equals kappa t0 only up to rounding; keep the bound exact.
    return std::min(join_ + params_.lambda * transition_integral(scaled(t)), ceiling_);
}

double Profile::psi_prime(double t) const {
    check_argument(t);
    if (t <= join_) {
        return 1.0;
    }
    return std::exp(-transition_kernel(scaled(t)));
}

double Profile::log_psi_prime(double t) const {
    check_argument(t);
    if (t <= join_) {
        return 0.0;
    }
    return -transition_kernel(scaled(t));
}

double Profile::psi_second(double t) const {
    check_argument(t);
    if (t <= join_) {
        return 0.0;
    }
    const double x = scaled(t);
    return -std::exp(-transition_kernel(x)) * transition_kernel_derivative(x) / params_.lambda;
}

}  // namespace radmorse
