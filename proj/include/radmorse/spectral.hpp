#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "radmorse/grid.hpp"

namespace radmorse {

class RadialSolution;

using RadialFunction = std::function<double(double)>;

struct SymmetricTridiagonal {
    std::vector<double> diagonal;
    /// off_diagonal[i] couples rows i and i+1.
    std::vector<double> off_diagonal;

    std::size_t size() const { return diagonal.size(); }
    /// Max absolute row sum.
    double norm_inf() const;
};

enum class Boundary { dirichlet, natural };

/// Discrete pencil (K, M) of a weighted quadratic form on a P1 finite-element space.
/// Dirichlet endpoints are eliminated; M is positive definite.
struct OperatorPencil {
    SymmetricTridiagonal stiffness;
    SymmetricTridiagonal mass;
    Boundary left = Boundary::natural;
    Boundary right = Boundary::dirichlet;
    /// Radii of the unknowns, in order.
    std::vector<double> dof_radii;

    std::size_t size() const { return stiffness.size(); }
};

/// Weights of the form  int g(r) phi'^2 - c(r) phi^2  against  int m(r) phi^2.
struct FormWeights {
    RadialFunction gradient;
    RadialFunction potential;  // may be empty (no zero-order term)
    RadialFunction mass;
};

/// P1 assembly with a 4-point Gauss rule per cell. Throws SpectralError when a weight is
/// non-finite at some quadrature radius, or when the assembled mass is not positive definite.
OperatorPencil assemble_pencil(const RadialGrid& grid, const FormWeights& weights, Boundary left, Boundary right);

/// Radial second variation  int r^(N-1) (phi'^2 - V phi^2) dr  with mass  int r^(N-1) phi^2 dr.
/// Natural boundary at a = 0, Dirichlet at a > 0 and always at b.
OperatorPencil assemble_form(int dimension, const RadialGrid& grid, const RadialFunction& potential);
OperatorPencil assemble_form(const RadialSolution& solution, const RadialGrid& grid, const RadialFunction& potential);

struct Inertia {
    std::size_t negative = 0;
    /// The shift had to be nudged off a (numerically) zero pivot.
    bool perturbed = false;
};

/// Number of pencil eigenvalues below `shift`, from the LDL^T pivots of K - shift M.
/// Throws SpectralError if three perturbations still hit a zero pivot.
Inertia inertia(const OperatorPencil& pencil, double shift);

/// Smallest pencil eigenvalue by bisection on the inertia count, to relative width `rel_width`.
double smallest_eigenvalue(const OperatorPencil& pencil, double rel_width = 1e-10);

struct SpectrumReport {
    std::size_t negative_count = 0;
    double smallest_eigenvalue = 0.0;
    /// Filled for weighted-quotient problems only.
    double quotient_min = 0.0;
    std::size_t grid_size = 0;
    /// Counts agree between n and 2n cells.
    bool refinement_consistent = false;
    bool perturbed = false;
};

/// Mesh used by the index computations: geometric toward 0 (first cell <= 1e-6) when a = 0,
/// uniform otherwise.
RadialGrid index_grid(double a, double b, std::size_t n);

/// Radial Morse index of the potential V on (a, b): negative eigenvalues of the radial
/// linearized operator, on meshes of n and 2n cells. Requires 0 <= a < b <= 1, n >= 64.
SpectrumReport radial_morse_index(int dimension, const RadialFunction& potential, double a, double b, std::size_t n);
SpectrumReport radial_morse_index(const RadialSolution& solution, double a, double b, std::size_t n);

/// min over omega in H^1_0(a, b) of int g omega'^2 / int m omega^2 on the given mesh.
double weighted_quotient_minimum(const RadialGrid& grid, const RadialFunction& gradient_weight,
                                 const RadialFunction& mass_weight);

/// Discrete minimum over (r0, 1) of
///   int r^(N-1) u_r^2 omega'^2 dr / int r^(N-3) u_r^2 omega^2 dr,
/// which is >= N - 1 exactly when u is stable on the annulus.
double stability_quotient(const RadialSolution& solution, double r0, std::size_t n);

struct TestFunction {
    RadialFunction value;
    RadialFunction derivative;
};

struct HardyIntegrals {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// lhs = int_a^b r^(alpha+1) omega'^2,  rhs = alpha^2/4 int_a^b r^(alpha-1) omega^2.
/// Throws DomainError unless 0 < a < b and omega vanishes at both ends (to 1e-12 of its max).
HardyIntegrals hardy_check(double alpha, double a, double b, const TestFunction& omega);

/// (r - a)^k (b - r)^m P((r - a) / (b - a)) with k, m in {1, 2} and a random polynomial P of
/// degree <= 4; continuously differentiable and zero at both ends.
TestFunction random_bump(std::mt19937_64& rng, double a, double b);

struct HardyTrial {
    double alpha = 0.0;
    double a = 0.0;
    double b = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool passed = false;
};

/// `trials` seeded random bumps; alpha and a drawn from the given sets. A trial passes when
/// lhs >= rhs - rel_tol * lhs.
std::vector<HardyTrial> hardy_suite(std::span<const double> alphas, std::span<const double> left_ends, double b,
                                    std::size_t trials, std::uint64_t seed, double rel_tol = 1e-10);

struct SplittingResult {
    SpectrumReport inner;
    SpectrumReport outer;
    SpectrumReport whole;

    /// Both pieces stable.
    bool premise() const { return inner.negative_count == 0 && outer.negative_count == 0; }
    /// Stable pieces force index <= 1 on the whole ball.
    bool holds() const { return !premise() || whole.negative_count <= 1; }
};

SplittingResult splitting_check(int dimension, const RadialFunction& potential, double delta, std::size_t n);
SplittingResult splitting_check(const RadialSolution& solution, double delta, std::size_t n);

}  // namespace radmorse
