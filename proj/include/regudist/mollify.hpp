#pragma once

#include "regudist/cauchy.hpp"

namespace regudist {

// One-parameter family of polynomial bumps converging to the alpha-split
// delta at `site`. The width-eps member is
//
//     rho_eps = alpha R_eps + (1 - alpha) L_eps,
//
// where R_eps is the unit-mass bump c/eps u^{s+1}(1-u)^{s+1}, u = (t-site)/eps,
// supported on (site, site+eps), and L_eps its mirror image on (site-eps, site).
// Members are C^s at the support edges and at the center, so their k-th
// derivatives stay regulated for k <= s.
struct DeltaFamily {
    double site = 0.0;
    Complex alpha{1.0, 0.0};
    int smoothness = 4;  // s

    PiecewiseFunction member(const Interval& iv, double eps) const;
};

// The piecewise-constant counterpart indexed by k = 1, 2, ...:
//
//     rho_k = 2k (alpha chi_(site, site+1/(2k)) + (1-alpha) chi_(site-1/(2k), site)),
//
// unit mass, one-sided masses alpha and 1-alpha. It converges to the same
// split delta but lies outside every smooth family (pairings converge only
// at rate 1/k).
struct PCDeltaFamily {
    double site = 0.0;
    Complex alpha{1.0, 0.0};

    PiecewiseFunction member(const Interval& iv, int k) const;
};

// Classical stand-in for f at width eps: the regular part plus, for every
// atom (site, k, plus, minus), the k-th derivative of plus * R_eps +
// minus * L_eps. Converges to f against regulated test functions as eps -> 0.
// Atom orders must not exceed the family smoothness.
PiecewiseFunction regularize(const Distribution& f, double eps, int smoothness = 4);

// Adaptive Runge-Kutta (Dormand-Prince 5(4)) for the classical system
// x' = A(t) x + g(t), x(t0) = x0, restarted at every breakpoint of the data
// and landing exactly on every query point (queries must lie at or right of
// t0). Returns one row of n values per query, in the order given.
struct NumericOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    std::size_t max_steps = 200000;
};
std::vector<std::vector<Complex>> ode_solve_numeric(const PiecewiseMatrix& A,
                                                    const std::vector<PiecewiseFunction>& g,
                                                    double t0, const std::vector<Complex>& x0,
                                                    const std::vector<double>& queries,
                                                    const NumericOptions& opts = {});

// Mollification cross-check of a symbolic solve: for each width, regularize
// the impulsive forcing (initial values included), integrate the classical
// system numerically from left of all bump supports, and compare pairings
// with the given probes against the symbolic solution. Relative errors use
// max(|symbolic|, 1) as denominator.
struct ConvergenceRow {
    double eps = 0.0;
    double max_rel_error = 0.0;
};
struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
};
ConvergenceReport convergence_report(const CauchyProblem& p, const SolutionBundle& s,
                                     const std::vector<TestFunction>& probes,
                                     const std::vector<double>& eps_grid, int smoothness = 4);

}  // namespace regudist
