#include "doctest.h"

#include <unsupported/Eigen/MatrixFunctions>

#include "regudist/cauchy.hpp"
#include "support.hpp"

using namespace regudist;
using testsupport::close;
using testsupport::Rng;

namespace {

const Interval IV{-1.0, 3.0};

PiecewiseMatrix scalar_matrix(const PiecewiseFunction& a) {
    return PiecewiseMatrix::from_entries(1, 1, {a});
}

// 0 left of 1, `hi` right of 1 (the coefficient of the worked problems)
PiecewiseFunction step_coefficient(const Interval& iv, double site, double hi) {
    return hi * PiecewiseFunction::step(iv, site);
}

// c * e^{r (t - site)} theta_site
PiecewiseFunction exp_step(const Interval& iv, double site, const Complex& c, const Complex& r) {
    return PiecewiseFunction::from_pieces(iv, {site}, {{}, {ExpPolyTerm{c, 0, r, site}}});
}

Distribution alpha_delta(const Interval& iv, double site, const Complex& amount,
                         const Complex& alpha, int order = 0) {
    return Distribution::from_atoms(iv, {delta_atom(site, amount, alpha, order)});
}

Eigen::MatrixXcd dense(const PiecewiseMatrix& M, double t) {
    Eigen::MatrixXcd out(M.rows(), M.cols());
    const auto v = M.eval(t);
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            out(Eigen::Index(i), Eigen::Index(j)) = v[i * M.cols() + j];
    return out;
}

bool matrix_close(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tolerance) {
    const double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
    return (a - b).cwiseAbs().maxCoeff() <= tolerance * scale;
}

}  // namespace

TEST_CASE("scalar fundamental matrix is the exponential of the antiderivative") {
    const auto fs = fundamental_matrix(scalar_matrix(step_coefficient(IV, 1.0, 2.0)), 0.0);
    CHECK(equal(fs.X.at(0, 0), exp_step(IV, 1.0, {1.0, 0.0}, {2.0, 0.0}) +
                                   PiecewiseFunction::constant(IV, {1.0, 0.0}) -
                                   PiecewiseFunction::step(IV, 1.0),
                tol()));
    CHECK(close(fs.X.at(0, 0).eval(0.0), {1.0, 0.0}, 1e-14));
    // X^{-1} X = 1 as functions
    CHECK(equal(mul(fs.X.at(0, 0), fs.Xinv.at(0, 0)), PiecewiseFunction::constant(IV, {1.0, 0.0}),
                tol()));

    // a non-constant piece makes the exponential leave the class
    CHECK_THROWS_AS(fundamental_matrix(scalar_matrix(PiecewiseFunction::ramp(IV, 0.0)), 0.0),
                    precondition_error);
}

TEST_CASE("constant-coefficient fundamental matrices match the dense exponential") {
    Rng rng(501);
    std::vector<Eigen::MatrixXcd> cases;
    Eigen::MatrixXcd rot(2, 2), jordan(2, 2);
    rot << Complex{0, 0}, Complex{1, 0}, Complex{-1, 0}, Complex{0, 0};
    jordan << Complex{1, 0}, Complex{1, 0}, Complex{0, 0}, Complex{1, 0};  // repeated eigenvalue
    cases.push_back(rot);
    cases.push_back(jordan);
    for (int i = 0; i < 6; ++i) {
        const int n = rng.integer(2, 3);
        Eigen::MatrixXcd M(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) M(r, c) = rng.complex_in(1.0);
        cases.push_back(M);
    }

    const double t0 = 0.5;
    for (const auto& M : cases) {
        const std::size_t n = std::size_t(M.rows());
        std::vector<Complex> flat(M.data(), M.data() + n * n);
        // Eigen stores column-major; transpose into row-major order
        std::vector<Complex> rowmajor(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) rowmajor[i * n + j] = M(Eigen::Index(i), Eigen::Index(j));
        const auto A = PiecewiseMatrix::constant(IV, n, n, rowmajor);
        const auto fs = fundamental_matrix(A, t0);
        for (double t : {-0.7, 0.0, 0.5, 1.3, 2.9}) {
            const Eigen::MatrixXcd want = (M * (t - t0)).exp();
            CHECK(matrix_close(dense(fs.X, t), want, 1e-10));
            CHECK(matrix_close(dense(fs.Xinv, t), (M * (t0 - t)).exp(), 1e-10));
        }
    }
}

TEST_CASE("piecewise-constant fundamental matrices chain continuously") {
    Rng rng(502);
    const std::size_t n = 2;
    std::vector<PiecewiseFunction> entries;
    const std::vector<double> bps{0.4, 1.7};
    for (std::size_t e = 0; e < n * n; ++e) {
        std::vector<TermList> pieces;
        for (std::size_t p = 0; p < bps.size() + 1; ++p)
            pieces.push_back({ExpPolyTerm{rng.complex_in(1.0), 0, {0.0, 0.0}, 0.0}});
        entries.push_back(PiecewiseFunction::from_pieces(IV, bps, pieces));
    }
    const auto A = PiecewiseMatrix::from_entries(n, n, entries);
    const double t0 = 1.0;
    const auto fs = fundamental_matrix(A, t0);

    CHECK(matrix_close(dense(fs.X, t0), Eigen::MatrixXcd::Identity(2, 2), 1e-12));
    for (double b : bps) {
        Eigen::MatrixXcd left(2, 2), right(2, 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                left(Eigen::Index(i), Eigen::Index(j)) = fs.X.at(i, j).limit(b, Side::left);
                right(Eigen::Index(i), Eigen::Index(j)) = fs.X.at(i, j).limit(b, Side::right);
            }
        CHECK(matrix_close(left, right, 1e-12));
    }
    // X' = A X away from the breakpoints, X^{-1} X = I everywhere
    for (double t : {-0.5, 0.2, 0.9, 1.2, 2.4}) {
        Eigen::MatrixXcd dX(2, 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                dX(Eigen::Index(i), Eigen::Index(j)) = fs.X.at(i, j).differentiate_ae().eval(t);
        CHECK(matrix_close(dX, dense(A, t) * dense(fs.X, t), 1e-10));
        CHECK(matrix_close(dense(fs.Xinv, t) * dense(fs.X, t), Eigen::MatrixXcd::Identity(2, 2),
                           1e-10));
    }

    // an entry that is not piecewise constant is rejected
    entries[1] = PiecewiseFunction::ramp(IV, 0.0);
    CHECK_THROWS_AS(fundamental_matrix(PiecewiseMatrix::from_entries(n, n, entries), t0),
                    precondition_error);
}

TEST_CASE("delta forcing through a coefficient jump: atom weight survives") {
    // x' - 2 theta_1 x = 3 delta_1^alpha, x(0+) = 0: the solution is
    // 3 e^{2 ramp_1} theta_1 for every alpha.
    const auto expected = Distribution(exp_step(IV, 1.0, {3.0, 0.0}, {2.0, 0.0}));
    for (const Complex a : {Complex{0.0, 0.0}, Complex{0.5, 0.0}, Complex{1.0, 0.0}}) {
        CauchyProblem p;
        p.A = scalar_matrix(step_coefficient(IV, 1.0, 2.0));
        p.f = {alpha_delta(IV, 1.0, {3.0, 0.0}, a)};
        p.t0 = 0.0;
        p.x0 = {Complex{0.0, 0.0}};
        const auto s = solve_cauchy(p);
        CHECK(equal(s.x[0], expected, tol()));
        CHECK(residual_check(p, s).passed);
        CHECK(default_verification_suite(p, s).passed);
    }
}

TEST_CASE("derivative-of-delta forcing: solution depends on the splitting") {
    // x' - 2 theta_1 x = 3 delta_1'^alpha, x(0+) = 0:
    //     x = 6 alpha e^{2 ramp_1} theta_1 + 3 delta_1^alpha.
    auto solve_for = [&](const Complex& a) {
        CauchyProblem p;
        p.A = scalar_matrix(step_coefficient(IV, 1.0, 2.0));
        p.f = {alpha_delta(IV, 1.0, {3.0, 0.0}, a, 1)};
        p.t0 = 0.0;
        p.x0 = {Complex{0.0, 0.0}};
        return std::pair{p, solve_cauchy(p)};
    };
    for (const Complex a : {Complex{0.0, 0.0}, Complex{0.5, 0.0}, Complex{1.0, 0.0}}) {
        const auto [p, s] = solve_for(a);
        const auto expected =
            Distribution(exp_step(IV, 1.0, 6.0 * a, {2.0, 0.0})) + alpha_delta(IV, 1.0, {3.0, 0.0}, a);
        CHECK(equal(s.x[0], expected, tol()));
        CHECK(residual_check(p, s).passed);
    }
    // genuinely different solutions for different splittings
    CHECK_FALSE(equal(solve_for({0.0, 0.0}).second.x[0], solve_for({1.0, 0.0}).second.x[0], tol()));
}

TEST_CASE("second-derivative forcing piles up atom orders") {
    // x' - theta_1 x = delta_1''^+, x(0+) = 0:
    //     x = e^{ramp_1} theta_1 + delta_1^+ + delta_1'^+.
    CauchyProblem p;
    p.A = scalar_matrix(step_coefficient(IV, 1.0, 1.0));
    p.f = {alpha_delta(IV, 1.0, {1.0, 0.0}, {1.0, 0.0}, 2)};
    p.t0 = 0.0;
    p.x0 = {Complex{0.0, 0.0}};
    const auto s = solve_cauchy(p);
    const auto expected = Distribution(exp_step(IV, 1.0, {1.0, 0.0}, {1.0, 0.0})) +
                          alpha_delta(IV, 1.0, {1.0, 0.0}, {1.0, 0.0}) +
                          alpha_delta(IV, 1.0, {1.0, 0.0}, {1.0, 0.0}, 1);
    CHECK(equal(s.x[0], expected, tol()));
    CHECK(residual_check(p, s).passed);
}

TEST_CASE("two jumps, two derivative-of-delta forcings, closed-form solution") {
    // x' - (theta_1 - theta_2) x = delta_1'^{1/2} + 2 delta_2'^{1/2}, x(0+) = 0:
    //     x = 1/2 e^{g} theta_1 + e^{-1} e^{g} theta_2 + delta_1^{1/2}
    //         + 2 delta_2^{1/2},   g = ramp_1 - ramp_2.
    CauchyProblem p;
    p.A = scalar_matrix(PiecewiseFunction::step(IV, 1.0) - PiecewiseFunction::step(IV, 2.0));
    p.f = {alpha_delta(IV, 1.0, {1.0, 0.0}, {0.5, 0.0}, 1) +
           alpha_delta(IV, 2.0, {2.0, 0.0}, {0.5, 0.0}, 1)};
    p.t0 = 0.0;
    p.x0 = {Complex{0.0, 0.0}};
    const auto s = solve_cauchy(p);

    const double e1 = std::exp(1.0);
    const auto regular = PiecewiseFunction::from_pieces(
        IV, {1.0, 2.0},
        {{},
         {ExpPolyTerm{{0.5, 0.0}, 0, {1.0, 0.0}, 1.0}},
         {ExpPolyTerm{{0.5 * e1 + 1.0, 0.0}, 0, {0.0, 0.0}, 2.0}}});
    const auto expected = Distribution(regular) +
                          alpha_delta(IV, 1.0, {1.0, 0.0}, {0.5, 0.0}) +
                          alpha_delta(IV, 2.0, {2.0, 0.0}, {0.5, 0.0});
    CHECK(equal(s.x[0], expected, tol()));
    CHECK(residual_check(p, s).passed);
    CHECK(alpha_independence_check(p, {Complex{0.0, 0.0}, Complex{0.5, 0.0}, Complex{1.0, 0.0}})
              .passed);
}

TEST_CASE("homogeneous system with initial values stays classical") {
    Eigen::MatrixXcd M(2, 2);
    M << Complex{0, 0}, Complex{1, 0}, Complex{-1, 0}, Complex{0, 0};
    CauchyProblem p;
    p.A = PiecewiseMatrix::constant(IV, 2, 2, {Complex{0, 0}, Complex{1, 0}, Complex{-1, 0}, Complex{0, 0}});
    p.f = {Distribution::zero(IV), Distribution::zero(IV)};
    p.t0 = 0.0;
    p.x0 = {Complex{1.0, 0.0}, Complex{0.0, 2.0}};
    const auto s = solve_cauchy(p);

    Eigen::VectorXcd x0(2);
    x0 << p.x0[0], p.x0[1];
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(s.x[i].atoms().empty());
        CHECK(close(s.x[i].regular().limit(0.0, Side::right), p.x0[i], 1e-12));
        // vanishes left of t0
        CHECK(close(s.x[i].regular().eval(-0.5), {0.0, 0.0}, 1e-12));
    }
    for (double t : {0.3, 1.0, 2.2, 2.9}) {
        const Eigen::VectorXcd want = (M * t).exp() * x0;
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(close(s.x[i].regular().eval(t), want(Eigen::Index(i)), 1e-10));
    }
    CHECK(residual_check(p, s).passed);
    CHECK(alpha_independence_check(p, {Complex{0.0, 0.0}, Complex{0.5, 0.0}, Complex{1.0, 0.0}})
              .passed);
}

TEST_CASE("random piecewise-constant scalar problems solve the equation pointwise") {
    Rng rng(503);
    for (int rep = 0; rep < 20; ++rep) {
        // piecewise-constant coefficient
        std::vector<double> bps{0.7, 1.9};
        std::vector<TermList> apieces;
        for (int i = 0; i < 3; ++i)
            apieces.push_back({ExpPolyTerm{rng.complex_in(1.0), 0, {0.0, 0.0}, 0.0}});
        const auto a = PiecewiseFunction::from_pieces(IV, bps, apieces);

        // forcing vanishing left of t0 = 0, regular plus a few atoms
        std::vector<TermList> fpieces{{}, rng.terms(0.0), rng.terms(1.5)};
        const auto freg = PiecewiseFunction::from_pieces(IV, {0.0, 1.5}, fpieces);
        std::vector<Atom> atoms;
        for (int k = rng.integer(0, 2); k > 0; --k)
            atoms.push_back(Atom{rng.uniform(0.2, 2.8), rng.integer(0, 2), rng.complex_in(1.0),
                                 rng.complex_in(1.0)});
        CauchyProblem p;
        p.A = scalar_matrix(a);
        p.f = {Distribution(freg, atoms)};
        p.t0 = 0.0;
        p.x0 = {rng.complex_in(2.0)};
        const auto s = solve_cauchy(p);

        CHECK(residual_check(p, s).passed);
        CHECK(close(s.x[0].regular().limit(0.0, Side::right), p.x0[0], 1e-10));
        // classical check: x' = a x + f wherever everything is smooth
        const auto dx = s.x[0].regular().differentiate_ae();
        for (double t : {0.25, 0.5, 1.2, 2.3, 2.9}) {
            const Complex lhs = dx.eval(t);
            const Complex rhs = a.eval(t) * s.x[0].regular().eval(t) + freg.eval(t);
            CHECK(close(lhs, rhs, 1e-9));
        }
    }
}

TEST_CASE("solving is linear in the data") {
    Rng rng(504);
    const auto a = step_coefficient(IV, 1.0, 2.0);
    for (int rep = 0; rep < 10; ++rep) {
        auto problem = [&](Distribution f, const Complex& x0) {
            CauchyProblem p;
            p.A = scalar_matrix(a);
            p.f = {std::move(f)};
            p.t0 = 0.0;
            p.x0 = {x0};
            return p;
        };
        const auto f1 = alpha_delta(IV, rng.uniform(0.3, 2.5), rng.complex_in(1.0),
                                    rng.complex_in(1.0), rng.integer(0, 2));
        const auto f2 = alpha_delta(IV, rng.uniform(0.3, 2.5), rng.complex_in(1.0),
                                    rng.complex_in(1.0), rng.integer(0, 2));
        const Complex c = rng.complex_in(2.0);
        const Complex x01 = rng.complex_in(1.0), x02 = rng.complex_in(1.0);

        const auto s1 = solve_cauchy(problem(f1, x01));
        const auto s2 = solve_cauchy(problem(f2, x02));
        const auto s12 = solve_cauchy(problem(c * f1 + f2, c * x01 + x02));
        CHECK(equal(s12.x[0], c * s1.x[0] + s2.x[0], tol()));
    }
}

TEST_CASE("residual check flags corrupted solutions") {
    CauchyProblem p;
    p.A = scalar_matrix(step_coefficient(IV, 1.0, 2.0));
    p.f = {alpha_delta(IV, 1.0, {3.0, 0.0}, {1.0, 0.0})};
    p.t0 = 0.0;
    p.x0 = {Complex{0.0, 0.0}};
    const auto s = solve_cauchy(p);
    REQUIRE(residual_check(p, s).passed);

    // inject a stray delta into x
    auto bad = s;
    bad.x[0] = bad.x[0] + alpha_delta(IV, 1.0, {1.0, 0.0}, {1.0, 0.0});
    const auto r1 = residual_check(p, bad);
    CHECK_FALSE(r1.passed);
    CHECK(r1.equation_defect > 1.0);

    // shift the regular part
    auto shifted = s;
    shifted.x[0] = shifted.x[0] + Distribution(PiecewiseFunction::constant(IV, {1e-3, 0.0}));
    const auto r2 = residual_check(p, shifted);
    CHECK_FALSE(r2.passed);
    CHECK(r2.initial_defect > 5e-4);
}

TEST_CASE("ill-posed data is rejected") {
    CauchyProblem p;
    p.A = scalar_matrix(step_coefficient(IV, 1.0, 2.0));
    p.t0 = 1.5;
    p.x0 = {Complex{0.0, 0.0}};

    // atom left of t0
    p.f = {alpha_delta(IV, 1.0, {1.0, 0.0}, {1.0, 0.0})};
    CHECK_THROWS_AS(solve_cauchy(p), precondition_error);
    // regular support left of t0
    p.f = {Distribution(PiecewiseFunction::step(IV, 1.0))};
    CHECK_THROWS_AS(solve_cauchy(p), precondition_error);
    // t0 outside
    p.f = {Distribution::zero(IV)};
    p.t0 = 7.0;
    CHECK_THROWS_AS(solve_cauchy(p), domain_error);
    // mismatched sizes
    p.t0 = 0.0;
    p.f = {};
    CHECK_THROWS_AS(solve_cauchy(p), domain_error);
    // mismatched interval
    p.f = {Distribution::zero(Interval{-1.0, 2.0})};
    CHECK_THROWS_AS(solve_cauchy(p), domain_error);
}

TEST_CASE("second-order equation with delta forcing integrates twice") {
    // x'' = delta_1^alpha, zero initial values at t0 = 0: x = ramp_1, and the
    // derivative chain is (ramp_1, theta_1, delta_1^alpha).
    for (const Complex a : {Complex{0.0, 0.0}, Complex{0.5, 0.0}, Complex{1.0, 0.0}}) {
        HigherOrderProblem p;
        p.m = 2;
        p.coeffs = {PiecewiseFunction::zero(IV), PiecewiseFunction::zero(IV)};
        p.rhs = alpha_delta(IV, 1.0, {1.0, 0.0}, a);
        p.t0 = 0.0;
        p.ics = {Complex{0.0, 0.0}, Complex{0.0, 0.0}};
        const auto sol = solve_higher_order(p);
        REQUIRE(sol.derivatives.size() == 3);
        CHECK(equal(sol.derivatives[0], Distribution(PiecewiseFunction::ramp(IV, 1.0)), tol()));
        CHECK(equal(sol.derivatives[1], Distribution(PiecewiseFunction::step(IV, 1.0)), tol()));
        CHECK(equal(sol.derivatives[2], alpha_delta(IV, 1.0, {1.0, 0.0}, a), tol()));
        for (std::size_t k = 1; k < sol.derivatives.size(); ++k)
            CHECK(is_derivative_of(sol.derivatives[k], sol.derivatives[k - 1]));
    }
}

TEST_CASE("second-order equation carries initial values into the atom chain") {
    // x'' = 0 with x(0+) = c0, x'(0+) = c1: x = c0 theta_0 + c1 ramp_0
    const Complex c0{2.0, -1.0}, c1{0.5, 0.25};
    HigherOrderProblem p;
    p.m = 2;
    p.coeffs = {PiecewiseFunction::zero(IV), PiecewiseFunction::zero(IV)};
    p.rhs = Distribution::zero(IV);
    p.t0 = 0.0;
    p.ics = {c0, c1};
    p.alpha_ic = {0.5, 0.0};
    const auto sol = solve_higher_order(p);
    CHECK(equal(sol.derivatives[0],
                Distribution(c0 * PiecewiseFunction::step(IV, 0.0) +
                             c1 * PiecewiseFunction::ramp(IV, 0.0)),
                tol()));
    CHECK(equal(sol.derivatives[1],
                Distribution(c1 * PiecewiseFunction::step(IV, 0.0)) +
                    alpha_delta(IV, 0.0, c0, p.alpha_ic),
                tol()));
    CHECK(equal(sol.derivatives[2],
                alpha_delta(IV, 0.0, c1, p.alpha_ic) + alpha_delta(IV, 0.0, c0, p.alpha_ic, 1),
                tol()));
    for (std::size_t k = 1; k < sol.derivatives.size(); ++k)
        CHECK(is_derivative_of(sol.derivatives[k], sol.derivatives[k - 1]));
}

TEST_CASE("order one reduces to the first-order solver") {
    HigherOrderProblem p;
    p.m = 1;
    p.coeffs = {step_coefficient(IV, 1.0, 2.0)};
    p.rhs = alpha_delta(IV, 1.0, {3.0, 0.0}, {0.5, 0.0});
    p.t0 = 0.0;
    p.ics = {Complex{0.75, 0.0}};

    CauchyProblem q;
    q.A = scalar_matrix(p.coeffs[0]);
    q.f = {p.rhs};
    q.t0 = p.t0;
    q.x0 = p.ics;
    q.alpha_ic = p.alpha_ic;

    const auto sol = solve_higher_order(p);
    const auto ref = solve_cauchy(q);
    CHECK(equal(sol.derivatives[0], ref.x[0], tol()));
    CHECK(equal(sol.derivatives[1], ref.x_prime[0], tol()));

    HigherOrderProblem bad = p;
    bad.ics = {};
    CHECK_THROWS_AS(solve_higher_order(bad), domain_error);
}
