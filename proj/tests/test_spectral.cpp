#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "radmorse/errors.hpp"
#include "radmorse/solution.hpp"
#include "radmorse/spectral.hpp"

using namespace radmorse;

namespace {

Eigen::MatrixXd dense(const SymmetricTridiagonal& t) {
    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = t.diagonal[i];
        if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = t.off_diagonal[i];
    }
    return m;
}

Eigen::VectorXd dense_eigenvalues(const OperatorPencil& pencil) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense(pencil.stiffness), dense(pencil.mass),
                                                                      Eigen::EigenvaluesOnly);
    REQUIRE(solver.info() == Eigen::Success);
    return solver.eigenvalues();
}

std::size_t dense_count_below(const OperatorPencil& pencil, double shift) {
    const Eigen::VectorXd values = dense_eigenvalues(pencil);
    std::size_t count = 0;
    for (Eigen::Index i = 0; i < values.size(); ++i)
        count += values[i] < shift;
    return count;
}

OperatorPencil laplacian_1d(std::size_t n) {
    FormWeights w;
    w.gradient = [](double) { return 1.0; };
    w.mass = [](double) { return 1.0; };
    return assemble_pencil(RadialGrid::uniform(0.0, 1.0, n), w, Boundary::dirichlet, Boundary::dirichlet);
}

OperatorPencil small_pencil(std::vector<double> k_diag, std::vector<double> k_off) {
    OperatorPencil p;
    p.stiffness = {k_diag, k_off};
    p.mass = {std::vector<double>(k_diag.size(), 1.0), std::vector<double>(k_off.size(), 0.0)};
    return p;
}

}  // namespace

TEST_CASE("zero potential is coercive") {
    for (int n : {3, 6, 9}) {
        for (double a : {0.0, 0.3}) {
            auto pencil = assemble_form(n, index_grid(a, 1.0, 128), nullptr);
            CHECK(inertia(pencil, 0.0).negative == 0);
            CHECK(dense_count_below(pencil, 0.0) == 0);
            CHECK(smallest_eigenvalue(pencil) > 0.0);
        }
    }
}

TEST_CASE("boundary handling") {
    auto grid = RadialGrid::uniform(0.0, 1.0, 32);
    auto natural = assemble_form(3, grid, nullptr);
    CHECK(natural.left == Boundary::natural);
    CHECK(natural.size() == 32);
    CHECK(natural.dof_radii.front() == 0.0);

    auto annulus = assemble_form(3, RadialGrid::uniform(0.5, 1.0, 32), nullptr);
    CHECK(annulus.left == Boundary::dirichlet);
    CHECK(annulus.size() == 31);
    CHECK(annulus.dof_radii.front() == doctest::Approx(0.5 + 0.5 / 32));
}

TEST_CASE("mass partition of unity") {
    // With both ends free the basis sums to 1, so row sums integrate the weight.
    for (double a : {0.0, 0.2}) {
        FormWeights w;
        w.gradient = [](double r) { return r * r; };
        w.mass = [](double r) { return r * r; };
        auto pencil = assemble_pencil(RadialGrid::geometric(a, 0.9, 200, 1e-3), w, Boundary::natural,
                                      Boundary::natural);
        const auto& m = pencil.mass;
        double total = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            total += m.diagonal[i];
            if (i + 1 < m.size()) total += 2 * m.off_diagonal[i];
        }
        CHECK(total == doctest::Approx((std::pow(0.9, 3) - std::pow(a, 3)) / 3).epsilon(1e-13));
    }
}

TEST_CASE("inner ball potential vanishes") {
    RadialSolution sol(Profile(3, 0.1));
    auto grid = index_grid(0.0, 0.1, 256);
    for (double r : grid.nodes)
        REQUIRE(sol.fprime_at_r(r) == 0.0);
    auto with = assemble_form(sol, grid, [&](double r) { return sol.fprime_at_r(r); });
    auto without = assemble_form(3, grid, nullptr);
    CHECK(with.stiffness.diagonal == without.stiffness.diagonal);
    CHECK(with.stiffness.off_diagonal == without.stiffness.off_diagonal);
    CHECK(with.mass.diagonal == without.mass.diagonal);
}

TEST_CASE("inertia limits") {
    auto pencil = laplacian_1d(64);
    double scale = pencil.stiffness.norm_inf();
    CHECK(inertia(pencil, -1e6 * scale).negative == 0);
    // Mass is h/6 tridiag(1, 4, 1) >= h/3, so every eigenvalue lies below 3 |K| / h.
    CHECK(inertia(pencil, 10 * scale * 3 * 64).negative == pencil.size());

    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(inertia(pencil, 2 * pi2).negative == 1);
    CHECK(dense_count_below(pencil, 2 * pi2) == 1);
    CHECK(inertia(pencil, 5 * pi2).negative == 2);
    CHECK(smallest_eigenvalue(pencil) == doctest::Approx(pi2).epsilon(1e-3));
    CHECK(smallest_eigenvalue(pencil) >= pi2);
    CHECK(smallest_eigenvalue(pencil) == doctest::Approx(dense_eigenvalues(pencil)[0]).epsilon(1e-9));
}

TEST_CASE("inertia is monotone in the shift") {
    RadialSolution sol(Profile(4, 0.05));
    auto pencil = assemble_form(sol, index_grid(0.0, 1.0, 128), [&](double r) { return sol.fprime_at_r(r); });
    std::size_t previous = 0;
    for (int i = -40; i <= 40; ++i) {
        double shift = std::copysign(std::pow(10.0, std::abs(i) / 5.0), i);
        auto count = inertia(pencil, shift).negative;
        CHECK(count >= previous);
        previous = count;
    }
}

TEST_CASE("zero pivots") {
    // Eigenvalues 1 and 3: shifting exactly onto 1 zeroes the second pivot.
    auto pencil = small_pencil({2.0, 2.0}, {-1.0});
    auto hit = inertia(pencil, 1.0);
    CHECK(hit.perturbed);
    CHECK(hit.negative <= 1);
    CHECK(inertia(pencil, 2.5).negative == 1);
    CHECK_FALSE(inertia(pencil, 2.5).perturbed);
    CHECK(inertia(pencil, 3.5).negative == 2);

    auto degenerate = small_pencil({0.0, 0.0}, {0.0});
    CHECK_THROWS_AS(inertia(degenerate, 0.0), SpectralError);
}

TEST_CASE("non-finite potential names the radius") {
    auto bad = [](double r) { return r > 0.5 ? std::nan("") : 0.0; };
    try {
        assemble_form(3, RadialGrid::uniform(0.0, 1.0, 64), bad);
        FAIL("expected SpectralError");
    } catch (const SpectralError& e) {
        CHECK(std::string(e.what()).find("r = ") != std::string::npos);
    }
    CHECK_THROWS_AS(radial_morse_index(3, bad, 0.0, 1.0, 64), SpectralError);
}

TEST_CASE("index arguments") {
    auto zero = [](double) { return 0.0; };
    CHECK_THROWS_AS(radial_morse_index(3, zero, 0.0, 1.0, 32), DomainError);
    CHECK_THROWS_AS(radial_morse_index(3, zero, 0.5, 0.4, 128), DomainError);
    CHECK_THROWS_AS(radial_morse_index(3, zero, 0.0, 1.5, 128), DomainError);
}

TEST_CASE("radial Morse index of the construction") {
    RadialSolution sol(Profile(3, 0.05));
    auto whole = radial_morse_index(sol, 0.0, 1.0, 256);
    CHECK(whole.negative_count == 1);
    CHECK(whole.refinement_consistent);
    CHECK(whole.smallest_eigenvalue < 0.0);
    CHECK(radial_morse_index(sol, 0.0, 0.05, 256).negative_count == 0);
    CHECK(radial_morse_index(sol, 0.05, 1.0, 256).negative_count == 0);

    auto pencil = assemble_form(sol, index_grid(0.0, 1.0, 256), [&](double r) { return sol.fprime_at_r(r); });
    auto values = dense_eigenvalues(pencil);
    CHECK(dense_count_below(pencil, 0.0) == 1);
    CHECK(whole.smallest_eigenvalue == doctest::Approx(values[0]).epsilon(1e-8));
}

TEST_CASE("smallest eigenvalue under refinement") {
    RadialSolution sol(Profile(5, 0.1));
    auto coarse = radial_morse_index(sol, 0.0, 1.0, 2048);
    auto fine = radial_morse_index(sol, 0.0, 1.0, 4096);
    CHECK(coarse.negative_count == fine.negative_count);
    CHECK(std::abs(coarse.smallest_eigenvalue - fine.smallest_eigenvalue) < 0.01 * std::abs(fine.smallest_eigenvalue));
}

TEST_CASE("oracle equivalence on random potentials") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> height(0.0, 4000.0), centre(0.05, 0.95), width(0.02, 0.3);
    std::uniform_int_distribution<int> dim(3, 9), size(64, 128);
    std::uniform_real_distribution<double> left(0.0, 0.5);
    for (int trial = 0; trial < 40; ++trial) {
        double h = height(rng), c = centre(rng), w = width(rng);
        auto v = [=](double r) { return h * std::exp(-std::pow((r - c) / w, 2)); };
        double a = trial % 2 ? left(rng) : 0.0;
        auto pencil = assemble_form(dim(rng), index_grid(a, 1.0, static_cast<std::size_t>(size(rng))), v);
        CHECK(inertia(pencil, 0.0).negative == dense_count_below(pencil, 0.0));
    }
}

TEST_CASE("stability quotient") {
    for (int n : {3, 9}) {
        RadialSolution sol(Profile(n, 0.1));
        CHECK(stability_quotient(sol, 0.1, 2048) >= n - 1 - 1e-9);
    }
    RadialSolution sol(Profile(3, 0.1));
    CHECK_THROWS_AS(stability_quotient(sol, 0.0, 2048), DomainError);
    CHECK_THROWS_AS(stability_quotient(sol, 0.1, 16), DomainError);
}

TEST_CASE("pure power quotient") {
    // int r^(alpha+1) w'^2 / int r^(alpha-1) w^2 on (a, b) has minimum alpha^2/4 + (pi / ln(b/a))^2:
    // r = e^s turns it into a constant-coefficient problem.
    for (int n : {3, 5, 9}) {
        double a = 0.1, b = 1.0;
        for (double alpha : {-static_cast<double>(n), n - 2.0}) {
            auto g = [alpha](double r) { return std::pow(r, alpha + 1); };
            auto m = [alpha](double r) { return std::pow(r, alpha - 1); };
            double exact = alpha * alpha / 4 + std::pow(std::numbers::pi / std::log(b / a), 2);
            double coarse = weighted_quotient_minimum(RadialGrid::logarithmic(a, b, 512), g, m);
            double fine = weighted_quotient_minimum(RadialGrid::logarithmic(a, b, 1024), g, m);
            CHECK(coarse >= exact * (1 - 1e-12));
            CHECK(fine >= exact * (1 - 1e-12));
            CHECK(fine <= coarse * (1 + 1e-12));
            CHECK(fine == doctest::Approx(exact).epsilon(1e-5));
        }
    }
}

TEST_CASE("hardy check") {
    const double a = 0.1, b = 1.0;
    TestFunction parabola{[=](double r) { return (r - a) * (b - r); }, [=](double r) { return a + b - 2 * r; }};
    auto result = hardy_check(-3.0, a, b, parabola);
    CHECK(result.lhs >= result.rhs);

    // Closed forms: lhs = int r^-2 (a + b - 2r)^2, rhs = 9/4 int r^-4 (r - a)^2 (b - r)^2.
    const double s = a + b, p = a * b, l = std::log(b / a);
    double lhs = s * s * (1 / a - 1 / b) - 4 * s * l + 4 * (b - a);
    // (r - a)^2 (b - r)^2 = r^4 - 2 s r^3 + (s^2 + 2p) r^2 - 2 s p r + p^2.
    double rhs = 2.25 * ((b - a) - 2 * s * l + (s * s + 2 * p) * (1 / a - 1 / b) -
                         s * p * (1 / (a * a) - 1 / (b * b)) + p * p * (1 / (a * a * a) - 1 / (b * b * b)) / 3);
    CHECK(result.lhs == doctest::Approx(lhs).epsilon(1e-12));
    CHECK(result.rhs == doctest::Approx(rhs).epsilon(1e-12));

    TestFunction zero{[](double) { return 0.0; }, [](double) { return 0.0; }};
    auto trivial = hardy_check(-5.0, a, b, zero);
    CHECK(trivial.lhs == 0.0);
    CHECK(trivial.rhs == 0.0);

    TestFunction open{[](double r) { return r; }, [](double) { return 1.0; }};
    CHECK_THROWS_AS(hardy_check(-3.0, a, b, open), DomainError);
    CHECK_THROWS_AS(hardy_check(-3.0, 0.0, b, parabola), DomainError);
}

TEST_CASE("random bumps vanish at the ends") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        auto bump = random_bump(rng, 0.3, 1.0);
        CHECK(bump.value(0.3) == 0.0);
        CHECK(std::abs(bump.value(1.0)) <= 1e-14);
        double r = 0.65, h = 1e-6;
        CHECK(bump.derivative(r) ==
              doctest::Approx((bump.value(r + h) - bump.value(r - h)) / (2 * h)).epsilon(1e-6).scale(1e-6));
    }
}

TEST_CASE("hardy suite") {
    std::vector<double> alphas{-9, -8, -7, -6, -5, -4, -3};
    std::vector<double> lefts{0.05, 0.1, 0.3};
    auto trials = hardy_suite(alphas, lefts, 1.0, 100, 0);
    REQUIRE(trials.size() == 100);
    for (const auto& t : trials) {
        CHECK(t.passed);
        CHECK(t.lhs >= t.rhs - 1e-10 * t.lhs);
    }
    auto again = hardy_suite(alphas, lefts, 1.0, 100, 0);
    for (std::size_t i = 0; i < trials.size(); ++i)
        CHECK(again[i].lhs == trials[i].lhs);
    auto other = hardy_suite(alphas, lefts, 1.0, 100, 1);
    CHECK(other[0].lhs != trials[0].lhs);
}

TEST_CASE("splitting") {
    RadialSolution sol(Profile(3, 0.05));
    auto split = splitting_check(sol, 0.05, 512);
    CHECK(split.premise());
    CHECK(split.holds());
    CHECK(split.whole.negative_count == 1);

    auto free = splitting_check(4, [](double) { return 0.0; }, 0.5, 128);
    CHECK(free.holds());
    CHECK(free.whole.negative_count == 0);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> delta(0.2, 0.8);
    std::uniform_real_distribution<double> radius(0.05, 0.9);
    std::uniform_int_distribution<int> dim(3, 9);
    int checked = 0;
    for (int i = 0; i < 12; ++i) {
        RadialSolution s(Profile(dim(rng), radius(rng)));
        auto result = splitting_check(s, delta(rng), 256);
        CHECK(result.holds());
        checked += result.premise();
    }
    MESSAGE(checked << " of 12 random splittings satisfied the premise");
    CHECK_THROWS_AS(splitting_check(sol, 1.0, 128), DomainError);
}
