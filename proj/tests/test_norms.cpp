#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "radmorse/errors.hpp"
#include "radmorse/norms.hpp"
#include "radmorse/solution.hpp"

using namespace radmorse;

namespace {

std::string domain_message(int n, double p, double q) {
    try {
        validate_exponents(n, p, q);
    } catch (const DomainError& e) {
        return e.what();
    }
    return {};
}

ScanRow synthetic(double r0, double ratio, double p = 4.0) {
    ScanRow row;
    row.N = 3;
    row.r0 = r0;
    row.p = p;
    row.q = 2.0;
    row.ratio_q_over_p = ratio;
    row.norm_p = 1.0;
    row.norm_q = ratio;
    return row;
}

}  // namespace

TEST_CASE("sphere and ball") {
    CHECK(unit_sphere_area(3) == doctest::Approx(4 * std::numbers::pi));
    CHECK(unit_ball_volume(3) == doctest::Approx(4 * std::numbers::pi / 3));
    CHECK(unit_ball_volume(4) == doctest::Approx(std::numbers::pi * std::numbers::pi / 2));
}

TEST_CASE("constant function") {
    auto grid = RadialGrid::uniform(0.0, 1.0, 64);
    auto one = [](double) { return 1.0; };
    for (int n : {3, 5, 9}) {
        for (double p : {1.0, 1.5, 2.0, 7.0}) {
            double expected = std::pow(unit_ball_volume(n), 1.0 / p);
            CHECK(radial_lp_norm(n, one, p, grid.nodes) == doctest::Approx(expected).epsilon(1e-14));
        }
        CHECK(radial_lp_norm(n, one, kInfinity, grid.nodes) == 1.0);
    }
}

TEST_CASE("sup norm is u(0)") {
    for (int n : {3, 9}) {
        for (double r0 : {0.2, 0.05}) {
            RadialSolution sol(Profile(n, r0));
            CHECK(lp_norm(sol, kInfinity, 256) == sol.u0());
            CHECK(sol.u0() >= r0 * r0 / 2);
        }
    }
}

TEST_CASE("lp norm against the inner closed form") {
    // On [0, r0] u = u0 - r^2 / 2, so the L^1 norm splits into a polynomial part and a quadrature part.
    RadialSolution sol(Profile(3, 0.5));
    double r0 = 0.5;
    double inner = 4 * std::numbers::pi * (sol.u0() * r0 * r0 * r0 / 3 - std::pow(r0, 5) / 10);
    auto outer_grid = RadialGrid::logarithmic(r0, 1.0, 4000);
    auto u = [&](double r) { return sol.u(r); };
    double outer = radial_lp_norm(3, u, 1.0, outer_grid.nodes);
    CHECK(lp_norm(sol, 1.0, 2048) == doctest::Approx(inner + outer).epsilon(1e-10));
    CHECK_THROWS_AS(lp_norm(sol, 0.5, 2048), DomainError);
    CHECK_THROWS_AS(lp_norm(sol, 2.0, 128), DomainError);
}

TEST_CASE("hoelder monotonicity") {
    for (int n : {3, 5, 9}) {
        RadialSolution sol(Profile(n, 0.1));
        double volume = unit_ball_volume(n);
        double previous = 0.0;
        for (double p : {1.0, 1.5, 2.0, 3.0, 6.0, 12.0}) {
            double normalized = lp_norm(sol, p, 1024) * std::pow(volume, -1.0 / p);
            CHECK(normalized >= previous * (1 - 1e-13));
            previous = normalized;
        }
        CHECK(sol.u0() >= previous);
    }
}

TEST_CASE("quadrature convergence") {
    for (int n : {3, 6, 9}) {
        for (double r0 : {0.2, 0.0125}) {
            RadialSolution sol(Profile(n, r0));
            for (double p : {1.5, 2.0, 4.0}) {
                double coarse = lp_norm(sol, p, 2048);
                double fine = lp_norm(sol, p, 4096);
                CHECK(std::abs(coarse - fine) < 1e-8 * fine);
            }
        }
    }
}

TEST_CASE("exponent validation") {
    CHECK_NOTHROW(validate_exponents(3, 4.0, 2.0));
    CHECK_NOTHROW(validate_exponents(3, kInfinity, 2.0));
    CHECK(domain_message(3, 3.0, 2.0).find("p > N/(N-2)") != std::string::npos);
    CHECK(domain_message(5, 1.5, 1.0).find("p > N/(N-2)") != std::string::npos);
    CHECK(domain_message(3, 4.0, 4.0).find("q < p") != std::string::npos);
    CHECK(domain_message(3, 4.0, 0.5).find("1 <= q") != std::string::npos);
    CHECK(predicted_exponent(3, 4.0, 2.0) == doctest::Approx(0.75));
    CHECK(predicted_exponent(5, 3.0, 2.0) == doctest::Approx(5.0 / 6.0));
    CHECK(predicted_exponent(3, kInfinity, 2.0) == doctest::Approx(1.5));
}

TEST_CASE("scan rows") {
    ScanConfig config;
    config.dimensions = {3, 4};
    config.pairs = {{4.0, 2.0}, {kInfinity, 2.0}};
    config.radii = {0.2, 0.1};
    config.grid_n = 512;
    config.workers = 3;
    auto rows = scan(config);
    REQUIRE(rows.size() == 8);
    std::size_t i = 0;
    for (int n : config.dimensions)
        for (const auto& pair : config.pairs)
            for (double r0 : config.radii) {
                const auto& row = rows[i++];
                CHECK(row.N == n);
                CHECK(row.p == pair.p);
                CHECK(row.r0 == r0);
                CHECK(row.ok());
                CHECK(row.index_inner == 0);
                CHECK(row.index_annulus == 0);
                CHECK(row.refinement_consistent);
                CHECK(row.quotient_annulus >= n - 1 - 1e-9);
                CHECK(row.ratio_q_over_p == doctest::Approx(row.norm_q / row.norm_p).epsilon(1e-15));
            }
    CHECK(rows[1].index_whole == 1);

    config.workers = 1;
    auto serial = scan(config);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(serial[k].norm_p == rows[k].norm_p);
        CHECK(serial[k].norm_q == rows[k].norm_q);
    }

    config.pairs = {{2.0, 1.0}};
    CHECK_THROWS_AS(scan(config), DomainError);
}

TEST_CASE("scan ratio decreases with r0") {
    ScanConfig config;
    config.dimensions = {3};
    config.pairs = {{4.0, 2.0}};
    config.radii = {0.2, 0.1, 0.05, 0.025, 0.0125};
    config.grid_n = 1024;
    auto rows = scan(config);
    for (std::size_t k = 1; k < rows.size(); ++k)
        CHECK(rows[k].ratio_q_over_p < rows[k - 1].ratio_q_over_p);
}

TEST_CASE("failed rows are recorded") {
    auto row = scan_row(3, 1e-5, 4.0, 2.0, 512);
    CHECK_FALSE(row.ok());
    CHECK(std::isnan(row.ratio_q_over_p));
}

TEST_CASE("exponent fit") {
    std::vector<ScanRow> rows;
    for (double r0 : {0.2, 0.1, 0.05, 0.025})
        rows.push_back(synthetic(r0, 3.0 * std::pow(r0, 0.75)));
    auto fit = fit_exponent(rows);
    CHECK(fit.slope == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(fit.max_deviation < 1e-12);

    // For p = infinity the fitted quantity is norm_inf / norm_q.
    std::vector<ScanRow> sup;
    for (double r0 : {0.2, 0.1, 0.05, 0.025})
        sup.push_back(synthetic(r0, std::pow(r0, 1.5), kInfinity));
    CHECK(fit_exponent(sup).slope == doctest::Approx(-1.5).epsilon(1e-12));

    rows.pop_back();
    CHECK_THROWS_AS(fit_exponent(rows), DomainError);
    rows.push_back(synthetic(0.2, 1.0));
    CHECK_THROWS_AS(fit_exponent(rows), DomainError);
}

TEST_CASE("bubble") {
    for (int n : {3, 4, 5}) {
        for (double lambda : {0.25, 1.0}) {
            for (double r : {0.0, 0.3, 0.9}) {
                // Radial Laplacian by central differences, with the r = 0 limit N u''.
                double h = 1e-4;
                double um = bubble(n, lambda, std::abs(r - h)), uc = bubble(n, lambda, r), up = bubble(n, lambda, r + h);
                double second = (up - 2 * uc + um) / (h * h);
                double lap = r > 0 ? second + (n - 1) * (up - um) / (2 * h) / r : n * second;
                CHECK(bubble_laplacian(n, lambda, r) == doctest::Approx(lap).epsilon(1e-5));
            }
        }
    }
    double expected = std::sqrt(std::sqrt(1.5)) / std::sqrt(0.25) - std::sqrt(std::sqrt(3.0));
    CHECK(bubble(3, 0.5, 0.0) - bubble(3, 1.0, 0.0) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("critical family") {
    auto flat = critical_family(3, 1.0, 512);
    CHECK(flat.sup_norm == 0.0);
    CHECK(flat.l1_norm == 0.0);
    CHECK(std::isnan(flat.ratio));
    CHECK(flat.boundary_value == 0.0);

    auto half = critical_family(3, 0.5, 2048);
    double u0 = std::pow(std::sqrt(1.5), 0.5) / 0.5 - std::pow(std::sqrt(3.0), 0.5);
    CHECK(half.sup_norm == doctest::Approx(u0).epsilon(1e-14));
    CHECK(half.boundary_value == doctest::Approx(bubble(3, 0.5, 1.0) - bubble(3, 1.0, 1.0)).epsilon(1e-15));
    CHECK(half.boundary_value != 0.0);
    CHECK(half.ratio == doctest::Approx(half.sup_norm / half.l1_norm));
    CHECK(std::isfinite(half.residual));

    for (int n : {3, 4, 5}) {
        double previous_ratio = 0.0, previous_sup = 0.0;
        for (double lambda : {0.5, 0.25, 0.125, 0.0625}) {
            auto point = critical_family(n, lambda, 2048);
            CHECK(point.ratio > previous_ratio);
            CHECK(point.sup_norm > previous_sup);
            previous_ratio = point.ratio;
            previous_sup = point.sup_norm;
        }
    }
    CHECK_THROWS_AS(critical_family(3, 0.0, 512), DomainError);
    CHECK_THROWS_AS(critical_family(3, 1.5, 512), DomainError);
    CHECK_THROWS_AS(critical_family(2, 0.5, 512), DomainError);
}
