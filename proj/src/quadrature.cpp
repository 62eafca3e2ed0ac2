#include "radmorse/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <queue>
#include <sstream>
#include <vector>

#include "radmorse/errors.hpp"

namespace radmorse {

namespace {

// Boost stores only the non-negative half of symmetric rules; expand once.
template <unsigned Points>
struct FullRule {
    std::vector<double> x;
    std::vector<double> w;

    FullRule() {
        using rule = boost::math::quadrature::gauss<double, Points>;
        const auto& ax = rule::abscissa();
        const auto& wt = rule::weights();
        for (std::size_t i = 0; i < ax.size(); ++i) {
            if (ax[i] == 0.0) {
                x.push_back(0.0);
                w.push_back(wt[i]);
                continue;
            }
            x.push_back(-ax[i]);
            w.push_back(wt[i]);
            x.push_back(ax[i]);
            w.push_back(wt[i]);
        }
    }
};

template <unsigned Points>
const FullRule<Points>& full_rule() {
    static const FullRule<Points> rule;
    return rule;
}

struct Cell {
    double lo;
    double hi;
    double value;
    double error;
    double l1;

    bool operator<(const Cell& other) const { return error < other.error; }
};

// Kronrod abscissae: index 0 is the centre, even indices are shared with Gauss-7.
Cell kronrod15(const std::function<double(double)>& f, double lo, double hi) {
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& x = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const double centre = f(mid);
    double k = centre * wk[0];
    double g = centre * wg[0];
    double l1 = std::abs(centre) * wk[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double fp = f(mid + half * x[i]);
        const double fm = f(mid - half * x[i]);
        k += (fp + fm) * wk[i];
        l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
        if (i % 2 == 0) {
            g += (fp + fm) * wg[i / 2];
        }
    }
    return {lo, hi, half * k, half * std::abs(k - g), half * l1};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureTolerance& tol) {
    if (a == b) {
        return 0.0;
    }
    if (b < a) {
        return -integrate(f, b, a, tol);
    }
    std::priority_queue<Cell> cells;
    Cell whole = kronrod15(f, a, b);
    double value = whole.value;
    double error = whole.error;
    double l1 = whole.l1;
    cells.push(whole);

    const auto budget = [&] { return std::max(tol.absolute, tol.relative * l1); };
    unsigned used = 1;
    while (error > budget() && used < tol.max_intervals) {
        const Cell worst = cells.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            break;
        }
        cells.pop();
        const Cell left = kronrod15(f, worst.lo, mid);
        const Cell right = kronrod15(f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        cells.push(left);
        cells.push(right);
        ++used;
    }
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "non-finite integral on [" << a << ", " << b << "]";
        throw QuadratureError(msg.str());
    }
    if (error > budget()) {
        // Running sums drift; recompute before declaring failure.
        double total_error = 0.0;
        for (auto copy = cells; !copy.empty(); copy.pop()) total_error += copy.top().error;
        if (total_error > budget()) {
            std::ostringstream msg;
            msg.precision(6);
            msg << "quadrature on [" << a << ", " << b << "] did not converge: error estimate " << total_error
                << " exceeds budget " << budget() << " after " << used << " cells";
            throw QuadratureError(msg.str());
        }
    }
    return value;
}

std::span<const double> GaussLegendre8::nodes() { return full_rule<8>().x; }
std::span<const double> GaussLegendre8::weights() { return full_rule<8>().w; }
std::span<const double> GaussLegendre4::nodes() { return full_rule<4>().x; }
std::span<const double> GaussLegendre4::weights() { return full_rule<4>().w; }

double composite_gauss(const std::function<double(double)>& f, std::span<const double> breakpoints) {
    const auto x = GaussLegendre8::nodes();
    const auto w = GaussLegendre8::weights();
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        const double lo = breakpoints[k];
        const double hi = breakpoints[k + 1];
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        double cell = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            cell += w[i] * f(mid + half * x[i]);
        }
        total += half * cell;
    }
    return total;
}

}  // namespace radmorse
