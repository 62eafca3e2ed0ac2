#include "radmorse/grid.hpp"

#include <cmath>
#include <sstream>

#include "radmorse/errors.hpp"

namespace radmorse {

namespace {

void check_interval(double a, double b, std::size_t n) {
    if (!(a >= 0.0 && b <= 1.0 && a < b)) {
        std::ostringstream msg;
        msg << "grid interval [" << a << ", " << b << "] must satisfy 0 <= a < b <= 1";
        throw DomainError(msg.str());
    }
    if (n < RadialGrid::kMinIntervals) {
        throw DomainError("grid needs at least 16 intervals, got " + std::to_string(n));
    }
}

// Ratio q > 1 with first_step * (q^n - 1) / (q - 1) = length.
double geometric_ratio(double length, std::size_t n, double first_step) {
    const auto covered = [&](double q) {
        return first_step * std::expm1(static_cast<double>(n) * std::log(q)) / (q - 1.0);
    };
    double lo = 1.0 + 1e-15;
    double hi = 2.0;
    while (covered(hi) < length) {
        hi = 1.0 + 2.0 * (hi - 1.0);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (covered(mid) < length ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

RadialGrid RadialGrid::uniform(double a, double b, std::size_t n) {
    check_interval(a, b, n);
    RadialGrid grid;
    grid.a = a;
    grid.b = b;
    grid.grading = Grading::uniform;
    grid.nodes.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        grid.nodes[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    }
    grid.nodes.back() = b;
    return grid;
}

RadialGrid RadialGrid::geometric(double a, double b, std::size_t n, double first_step) {
    check_interval(a, b, n);
    if (!(first_step > 0.0)) {
        throw DomainError("geometric grid needs a positive first step");
    }
    if (first_step * static_cast<double>(n) >= b - a) {
        return uniform(a, b, n);
    }
    const double q = geometric_ratio(b - a, n, first_step);
    RadialGrid grid;
    grid.a = a;
    grid.b = b;
    grid.grading = Grading::geometric;
    grid.nodes.resize(n + 1);
    grid.nodes[0] = a;
    double step = first_step;
    for (std::size_t i = 1; i <= n; ++i) {
        grid.nodes[i] = grid.nodes[i - 1] + step;
        step *= q;
    }
    grid.nodes.back() = b;
    return grid;
}

RadialGrid RadialGrid::logarithmic(double a, double b, std::size_t n) {
    check_interval(a, b, n);
    if (a <= 0.0) {
        throw DomainError("logarithmic grid needs a > 0");
    }
    RadialGrid grid;
    grid.a = a;
    grid.b = b;
    grid.grading = Grading::geometric;
    grid.nodes.resize(n + 1);
    const double span = std::log(b / a);
    for (std::size_t i = 0; i <= n; ++i) {
        grid.nodes[i] = a * std::exp(span * static_cast<double>(i) / static_cast<double>(n));
    }
    grid.nodes.front() = a;
    grid.nodes.back() = b;
    return grid;
}

RadialGrid RadialGrid::from_nodes(std::vector<double> nodes, Grading grading) {
    if (nodes.size() < kMinIntervals + 1) {
        throw DomainError("grid needs at least 16 intervals");
    }
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1])) {
            throw DomainError("grid nodes must be strictly increasing");
        }
    }
    check_interval(nodes.front(), nodes.back(), nodes.size() - 1);
    RadialGrid grid;
    grid.a = nodes.front();
    grid.b = nodes.back();
    grid.grading = grading;
    grid.nodes = std::move(nodes);
    return grid;
}

}  // namespace radmorse
