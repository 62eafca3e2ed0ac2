#pragma once

#include <cstddef>
#include <vector>

namespace radmorse {

enum class Grading { uniform, geometric };

/// Sorted 1-D mesh on [a, b] within [0, 1]. At least kMinIntervals cells.
struct RadialGrid {
    static constexpr std::size_t kMinIntervals = 16;

    double a = 0.0;
    double b = 1.0;
    std::vector<double> nodes;
    Grading grading = Grading::uniform;

    std::size_t intervals() const { return nodes.empty() ? 0 : nodes.size() - 1; }

    static RadialGrid uniform(double a, double b, std::size_t n);

    /// Cells growing by a constant ratio away from a, first cell of width first_step.
    /// Falls back to a uniform mesh when n * first_step already covers [a, b].
    static RadialGrid geometric(double a, double b, std::size_t n, double first_step);

    /// Log-uniform mesh (constant ratio b/a per n cells); requires a > 0.
    static RadialGrid logarithmic(double a, double b, std::size_t n);

    /// Validates and wraps an explicit node list.
    static RadialGrid from_nodes(std::vector<double> nodes, Grading grading);
};

}  // namespace radmorse
