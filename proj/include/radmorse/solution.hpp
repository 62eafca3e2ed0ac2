#pragma once

#include <vector>

#include "radmorse/grid.hpp"
#include "radmorse/profile.hpp"

namespace radmorse {

/// Radial solution u(r) = int_r^1 Psi(s^N) s^(1-N) ds of -Delta u = f(u) in the unit ball.
///
/// f is exposed only through r (f_at_r, fprime_at_r); the value-to-radius inverse is never
/// formed. u is served from a table of cumulative integrals at fixed panel nodes plus one
/// short adaptive integral, so each evaluation carries quadrature-level accuracy. On
/// [0, r0) and past the saturation radius u is closed form.
class RadialSolution {
public:
    explicit RadialSolution(Profile profile);

    const Profile& profile() const { return profile_; }
    int dimension() const { return profile_.dimension(); }
    double r0() const { return profile_.r0(); }

    /// u(0), which is also the sup norm.
    double u0() const { return u0_; }

    double u(double r) const;
    /// Same value by a single adaptive quadrature over [r, 1]; bypasses the table.
    double u_direct(double r) const;
    /// -r^(1-N) Psi(r^N); u_r(0) = 0.
    double u_r(double r) const;
    /// (N-1) r^(-N) Psi(r^N) - N Psi'(r^N); equals -1 on [0, r0).
    double u_rr(double r) const;
    /// N Psi'(r^N).
    double f_at_r(double r) const;
    /// -N^2 r^(2N-2) Psi''(r^N) / Psi(r^N); identically 0 on [0, r0).
    double fprime_at_r(double r) const;

    /// Sup over grid nodes of |-u'' - (N-1)/r u' - f(u)|, all terms in closed form.
    double pde_residual(const RadialGrid& grid) const;

    /// Radius past which Psi(r^N) equals kappa_N r0^N to double precision (capped at 1).
    double saturation_radius() const { return saturation_radius_; }
    const std::vector<double>& panel_nodes() const { return panel_nodes_; }

private:
    double integrand(double s) const;
    double outer(double r) const;

    Profile profile_;
    double saturation_radius_;
    std::vector<double> panel_nodes_;
    /// cumulative_[k] = u(panel_nodes_[k]).
    std::vector<double> cumulative_;
    double u0_;
};

/// Throws QuadratureError if any panel integral fails to converge.
RadialSolution build_solution(const Profile& profile);

}  // namespace radmorse
