#pragma once

// Shared helpers for the test suite: deterministic random generators for the
// core value types plus small numeric oracles (finite differences, composite
// Gauss-Legendre quadrature) that are independent of the library's own
// closed-form algebra.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "regudist/piecewise.hpp"

namespace testsupport {

using regudist::Complex;
using regudist::ExpPolyTerm;
using regudist::Interval;
using regudist::PiecewiseFunction;
using regudist::TermList;

inline bool close(const Complex& a, const Complex& b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
    bool chance(double p) { return uniform(0.0, 1.0) < p; }
    Complex complex_in(double mag) { return {uniform(-mag, mag), uniform(-mag, mag)}; }

    // Small term list; rates kept moderate so nothing overflows on the
    // intervals the tests use.
    TermList terms(double anchor, int max_terms = 3) {
        TermList out;
        const int n = integer(1, max_terms);
        for (int i = 0; i < n; ++i) {
            ExpPolyTerm t;
            t.coeff = complex_in(2.0);
            t.power = integer(0, 3);
            t.rate = chance(0.4) ? Complex{0.0, 0.0} : complex_in(1.0);
            t.anchor = anchor;
            out.push_back(t);
        }
        return out;
    }

    // Piecewise function on a finite interval with a few breakpoints.
    PiecewiseFunction piecewise(Interval iv, int max_bps = 3) {
        const int n = integer(0, max_bps);
        std::vector<double> bps;
        for (int i = 0; i < n; ++i) bps.push_back(uniform(iv.lo + 0.2, iv.hi - 0.2));
        std::sort(bps.begin(), bps.end());
        // keep breakpoints apart so piece structure is unambiguous
        std::vector<double> kept;
        for (double b : bps)
            if (kept.empty() || b - kept.back() > 0.15) kept.push_back(b);
        std::vector<TermList> pieces;
        for (std::size_t i = 0; i <= kept.size(); ++i) {
            if (chance(0.2)) {
                pieces.push_back({});
            } else {
                const double left = i == 0 ? iv.lo : kept[i - 1];
                pieces.push_back(terms(std::isfinite(left) ? left : 0.0));
            }
        }
        return PiecewiseFunction::from_pieces(iv, kept, pieces);
    }
};

// ---- numeric oracles ----

// Nodes and weights of n-point Gauss-Legendre on [-1, 1], Newton iteration on
// the Legendre recurrence.
struct GaussRule {
    std::vector<double> nodes, weights;
    explicit GaussRule(int n) {
        nodes.resize(n);
        weights.resize(n);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

// Integral of f over [a, b] split at the given internal points, 20-point
// Gauss per panel with panels capped at length 0.5.
inline Complex quadrature(const std::function<Complex(double)>& f, double a, double b,
                          std::vector<double> cuts = {}) {
    static const GaussRule rule(20);
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    Complex total{0.0, 0.0};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = std::max(a, cuts[i]), hi = std::min(b, cuts[i + 1]);
        if (hi - lo <= 1e-14) continue;
        const int panels = std::max(1, int(std::ceil((hi - lo) / 0.5)));
        for (int p = 0; p < panels; ++p) {
            const double pa = lo + (hi - lo) * p / panels;
            const double pb = lo + (hi - lo) * (p + 1) / panels;
            const double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
            for (int k = 0; k < int(rule.nodes.size()); ++k)
                total += half * rule.weights[std::size_t(k)] * f(mid + half * rule.nodes[std::size_t(k)]);
        }
    }
    return total;
}

// One-sided first derivative estimate by Richardson-extrapolated forward
// differences, stepping away from t on the given side.
inline Complex one_sided_derivative(const std::function<Complex(double)>& f, double t, int side) {
    const double h = 1e-4 * side;
    const Complex d1 = (f(t + h) - f(t)) / h;
    const Complex d2 = (f(t + h / 2) - f(t)) / (h / 2);
    return 2.0 * d2 - d1;
}

}  // namespace testsupport
