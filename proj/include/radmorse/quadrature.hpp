#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>

namespace radmorse {

struct QuadratureTolerance {
    double relative = 1e-12;
    double absolute = 1e-14;
    /// Subdivision budget of the global adaptive scheme.
    unsigned max_intervals = 2000;
};

/// Globally adaptive Gauss-Kronrod (G7/K15) integral of f over [a, b]: the cell with the
/// largest |K15 - G7| is bisected until the summed estimate is within
/// max(absolute, relative * integral of |f|). Throws QuadratureError when the budget runs out.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureTolerance& tol = {});

/// Fixed 8-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre8 {
    static std::span<const double> nodes();
    static std::span<const double> weights();
};

/// Fixed 4-point Gauss-Legendre rule on [-1, 1] (element integrals in FE assembly).
struct GaussLegendre4 {
    static std::span<const double> nodes();
    static std::span<const double> weights();
};

/// Composite rule over consecutive breakpoints using the 8-point rule on each cell.
double composite_gauss(const std::function<double(double)>& f, std::span<const double> breakpoints);

}  // namespace radmorse
