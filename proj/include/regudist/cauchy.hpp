#pragma once

#include "regudist/calculus.hpp"

namespace regudist {

// x' - A(t) x = f on an open interval, posed at t0 with right-hand initial
// values x0 and distributional forcing f supported at or right of t0. The
// initial condition enters as the impulsive forcing x0 * delta_{t0}^{alpha_ic};
// the solution is independent of alpha_ic (checked by the verification suite).
struct CauchyProblem {
    PiecewiseMatrix A;
    std::vector<Distribution> f;
    double t0 = 0.0;
    std::vector<Complex> x0;
    Complex alpha_ic{1.0, 0.0};
};

// Fundamental matrix X with X(t0) = I and its inverse, both inside the
// piecewise exponential-polynomial class.
struct FundamentalSystem {
    PiecewiseMatrix X;
    PiecewiseMatrix Xinv;
};

// Requires a coefficient matrix whose exponential stays representable:
// piecewise constant entries (for n = 1 this is detected as "the
// antiderivative of A is piecewise affine"). Anything else raises
// precondition_error.
FundamentalSystem fundamental_matrix(const PiecewiseMatrix& A, double t0);

// Everything the solve produces: the solution x, the derivative
// representative x' = A x + f + x0 delta_{t0}^{alpha_ic} that satisfies the
// equation verbatim, the frozen-frame data u = X^{-1} (f + IC impulse) and
// y = primitive(u, t0) with x = X y, and the fundamental system itself.
struct SolutionBundle {
    std::vector<Distribution> x;
    std::vector<Distribution> x_prime;
    std::vector<Distribution> y;
    std::vector<Distribution> u;
    FundamentalSystem fundamental;
};

SolutionBundle solve_cauchy(const CauchyProblem& p);

// How far derivative(x) - A x - f - IC impulse is from the derivative
// ambiguity class (it always lands inside it for a correct solve, because
// the selected x' differs from the canonical derivative of x only by
// order-0 pure jumps), plus the defect in the initial value x(t0+) = x0.
struct ResidualReport {
    bool passed = false;
    double equation_defect = 0.0;
    double initial_defect = 0.0;
};
ResidualReport residual_check(const CauchyProblem& p, const SolutionBundle& s);

// Re-solves the problem with each alpha_ic in `alphas` and measures how much
// the solutions differ. A correct solve is exactly alpha-independent.
struct AlphaIndependenceReport {
    bool passed = false;
    double max_deviation = 0.0;
};
AlphaIndependenceReport alpha_independence_check(const CauchyProblem& p,
                                                 const std::vector<Complex>& alphas);

struct VerificationReport {
    ResidualReport residual;
    AlphaIndependenceReport alpha;
    bool passed = false;
};
// residual_check plus alpha independence over {0, 1/2, 1}.
VerificationReport default_verification_suite(const CauchyProblem& p, const SolutionBundle& s);

// Scalar equation of order m,
//     x^{(m)} = a_{m-1} x^{(m-1)} + ... + a_0 x + rhs,
// with right-hand initial values ics = (x(t0+), ..., x^{(m-1)}(t0+)),
// solved through the companion first-order system.
struct HigherOrderProblem {
    int m = 1;
    std::vector<PiecewiseFunction> coeffs;  // a_0 .. a_{m-1}
    Distribution rhs;
    double t0 = 0.0;
    std::vector<Complex> ics;
    Complex alpha_ic{1.0, 0.0};
};

// derivatives[k] is x^{(k)} as a distribution on the whole interval
// (x extended by zero left of t0), k = 0..m; consecutive entries are
// derivative-class related. `system` is the companion solve.
struct HigherOrderSolution {
    std::vector<Distribution> derivatives;
    SolutionBundle system;
};

HigherOrderSolution solve_higher_order(const HigherOrderProblem& p);

}  // namespace regudist
