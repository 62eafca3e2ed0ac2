#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "radmorse/grid.hpp"
#include "radmorse/spectral.hpp"

namespace radmorse {

class RadialSolution;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Surface area of the unit sphere in R^N, 2 pi^(N/2) / Gamma(N/2).
double unit_sphere_area(int dimension);
/// Volume of the unit ball, area / N.
double unit_ball_volume(int dimension);

/// (|S^(N-1)| int r^(N-1) |u|^p dr)^(1/p) by composite 8-point Gauss over the breakpoints.
/// p = infinity takes the max of |u| over all quadrature and break points.
double radial_lp_norm(int dimension, const RadialFunction& u, double p, std::span<const double> breakpoints);

/// Mesh for norm integrals: n/4 uniform cells on [0, r0], the rest log-uniform on [r0, 1].
RadialGrid norm_grid(double r0, std::size_t n);

/// L^p(B_1) norm of the constructed solution; p = infinity returns u(0). Requires p >= 1, n >= 256.
double lp_norm(const RadialSolution& solution, double p, std::size_t n);

/// N (1/q - 1/p), with 1/infinity = 0.
double predicted_exponent(int dimension, double p, double q);

/// Throws DomainError unless 1 <= q < p <= infinity and p > N/(N-2); the message names the
/// violated inequality.
void validate_exponents(int dimension, double p, double q);

struct ScanRow {
    int N = 0;
    double r0 = 0.0;
    double p = 0.0;
    double q = 0.0;
    double norm_p = 0.0;
    double norm_q = 0.0;
    double ratio_q_over_p = std::numeric_limits<double>::quiet_NaN();
    std::size_t index_whole = 0;
    std::size_t index_inner = 0;
    std::size_t index_annulus = 0;
    double quotient_annulus = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN();
    bool refinement_consistent = false;
    /// Empty unless the row failed; a failed row has a NaN ratio.
    std::string error;

    bool ok() const { return error.empty(); }
};

struct ExponentPair {
    double p = 0.0;
    double q = 0.0;
};

struct ScanConfig {
    std::vector<int> dimensions;
    std::vector<ExponentPair> pairs;
    /// Decreasing.
    std::vector<double> radii;
    std::size_t grid_n = 2048;
    /// 0 picks hardware concurrency.
    unsigned workers = 0;
};

/// One configuration: build profile and solution, all three indices, annulus quotient,
/// residual and both norms. Failures are recorded in the row instead of thrown.
ScanRow scan_row(int dimension, double r0, double p, double q, std::size_t n);

/// Rows in (N, pair, r0) input order regardless of worker completion order. Validates the
/// whole configuration first; throws DomainError on a bad combination.
std::vector<ScanRow> scan(const ScanConfig& config);

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_deviation = 0.0;
};

/// Least-squares line through (log r0, log y). y is norm_q / norm_p for finite p and
/// norm_inf / norm_q for p = infinity. Needs >= 4 valid rows sharing (N, p, q) with distinct r0.
ExponentFit fit_exponent(std::span<const ScanRow> rows);

/// U(lambda, r) = (sqrt(lambda N (N-2)) / (lambda^2 + r^2))^((N-2)/2).
double bubble(int dimension, double lambda, double r);
/// Radial Laplacian of bubble() in closed form.
double bubble_laplacian(int dimension, double lambda, double r);

struct CriticalFamilyPoint {
    int N = 0;
    double lambda = 0.0;
    double sup_norm = 0.0;
    double l1_norm = 0.0;
    /// sup_norm / l1_norm; NaN when u vanishes identically.
    double ratio = 0.0;
    /// u_lambda(1), reported as computed.
    double boundary_value = 0.0;
    /// Sup over the mesh of |-Delta u_lambda - f_lambda(u_lambda)|.
    double residual = 0.0;
};

/// Evaluates u_lambda = U(lambda, .) - U(1, .) with f_lambda(u) = (lambda + u)^((N+2)/(N-2))
/// (odd extension for negative bases). Requires N >= 3, 0 < lambda <= 1, n >= 64.
CriticalFamilyPoint critical_family(int dimension, double lambda, std::size_t n);

}  // namespace radmorse
