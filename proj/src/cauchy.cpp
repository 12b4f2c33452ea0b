#include "regudist/cauchy.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace regudist {

namespace {

using EMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

bool site_match(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
    double m = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= 1e-12 * m;
}

// Eigenvalues of M with near-coincident ones snapped to their cluster mean,
// so that downstream rate differences of a degenerate pair are exactly zero
// and the secular (polynomial) terms come out through the exact rate-0 path
// instead of dividing by a rounding-level gap.
std::vector<Complex> clustered_eigenvalues(const EMat& M) {
    Eigen::ComplexEigenSolver<EMat> es(M, false);
    if (es.info() != Eigen::Success)
        throw precondition_error("fundamental_matrix: eigenvalue computation failed");
    std::vector<Complex> eig(es.eigenvalues().data(), es.eigenvalues().data() + M.rows());
    std::sort(eig.begin(), eig.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    double scale = 1.0;
    for (const Complex& l : eig) scale = std::max(scale, std::abs(l));
    const double gap = 1e-8 * scale;

    std::size_t start = 0;
    for (std::size_t i = 1; i <= eig.size(); ++i) {
        if (i == eig.size() || std::abs(eig[i] - eig[start]) > gap) {
            Complex mean{0.0, 0.0};
            for (std::size_t j = start; j < i; ++j) mean += eig[j];
            mean /= double(i - start);
            for (std::size_t j = start; j < i; ++j) eig[j] = mean;
            start = i;
        }
    }
    return eig;
}

// e^{M s} as an n*n row-major array of term lists in s = t - anchor, by the
// recursive spectral form: with P_0 = I, P_j = (M - lambda_j I) P_{j-1},
//
//     e^{M s} = sum_{j=1..n} r_j(s) P_{j-1},
//     r_1 = e^{lambda_1 s},  r_{j+1}(s) = e^{lambda_{j+1} s}
//                                         int_0^s e^{-lambda_{j+1} u} r_j(u) du,
//
// which stays inside the exponential-polynomial class.
std::vector<TermList> matrix_exponential_terms(const EMat& M, double anchor) {
    const std::size_t n = std::size_t(M.rows());
    const std::vector<Complex> eig = clustered_eigenvalues(M);

    std::vector<TermList> out(n * n);
    EMat P = EMat::Identity(Eigen::Index(n), Eigen::Index(n));
    TermList r{{Complex{1.0, 0.0}, 0, eig[0], anchor}};
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
                out[k * n + l] = exppoly::add(out[k * n + l],
                                              exppoly::scale(r, P(Eigen::Index(k), Eigen::Index(l))));
        if (j + 1 == n) break;

        EMat shift = M;
        for (std::size_t d = 0; d < n; ++d) shift(Eigen::Index(d), Eigen::Index(d)) -= eig[j];
        P = shift * P;

        // r_{j+1}: shift rates by -lambda_{j+1}, integrate from s = 0,
        // shift back. Equal (clustered) eigenvalues hit the exact rate-0
        // polynomial path here.
        TermList shifted = r;
        for (auto& term : shifted) term.rate -= eig[j + 1];
        TermList anti = exppoly::antiderivative(shifted);
        const Complex at0 = exppoly::eval(anti, anchor);
        anti.push_back(ExpPolyTerm{-at0, 0, Complex{0.0, 0.0}, anchor});
        for (auto& term : anti) term.rate += eig[j + 1];
        r = std::move(anti);
    }
    for (auto& terms : out) terms = exppoly::canonical(terms, anchor, tol());
    return out;
}

struct PieceData {
    double left, right, anchor;
    EMat value;  // constant coefficient matrix on the piece
};

// Constant matrix from piece p of A.
EMat piece_matrix(const PiecewiseMatrix& A, std::size_t p) {
    const auto n = Eigen::Index(A.rows());
    EMat M(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            M(i, j) = A.piece_value(std::size_t(i), std::size_t(j), p);
    return M;
}

EMat eval_terms(const std::vector<TermList>& terms, std::size_t n, double t) {
    const auto ni = Eigen::Index(n);
    EMat M(ni, ni);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            M(Eigen::Index(i), Eigen::Index(j)) = exppoly::eval(terms[i * n + j], t);
    return M;
}

// n = 1 route: X = exp(G) with G the antiderivative of the single entry.
// The exponential stays representable exactly when G is piecewise affine.
FundamentalSystem scalar_fundamental(const PiecewiseMatrix& A, double t0) {
    const Interval iv = A.interval();
    const PiecewiseFunction G = A.at(0, 0).antiderivative(t0);
    std::vector<TermList> xp, xm;
    for (std::size_t i = 0; i < G.pieces().size(); ++i) {
        Complex c{0.0, 0.0}, slope{0.0, 0.0};
        const double anchor = G.piece_anchor(i);
        for (const auto& term : exppoly::canonical(G.pieces()[i], anchor, tol())) {
            if (term.power > 1 || !tol().zero(term.rate))
                throw precondition_error(
                    "fundamental_matrix: coefficient outside the representable class "
                    "(antiderivative must be piecewise affine)");
            (term.power == 0 ? c : slope) += term.coeff;
        }
        xp.push_back({ExpPolyTerm{std::exp(c), 0, slope, anchor}});
        xm.push_back({ExpPolyTerm{std::exp(-c), 0, -slope, anchor}});
    }
    auto X = PiecewiseFunction::from_pieces(iv, G.breakpoints(), std::move(xp));
    auto Xinv = PiecewiseFunction::from_pieces(iv, G.breakpoints(), std::move(xm));
    return FundamentalSystem{PiecewiseMatrix::from_entries(1, 1, {std::move(X)}),
                             PiecewiseMatrix::from_entries(1, 1, {std::move(Xinv)})};
}

std::vector<Distribution> impulsive_forcing(const CauchyProblem& p) {
    std::vector<Distribution> h = p.f;
    for (std::size_t i = 0; i < h.size(); ++i)
        h[i] = h[i] + Distribution::from_atoms(
                          h[i].interval(), {delta_atom(p.t0, p.x0[i], p.alpha_ic)});
    return h;
}

// Size of a distribution with its ambiguity-class component removed: the
// regular part sampled inside every piece and at the breakpoints, order-0
// atoms measured by their total weight, higher atoms by their full weights.
double defect_magnitude(const Distribution& d) {
    double m = 0.0;
    const PiecewiseFunction& g = d.regular();
    const Interval& iv = g.interval();
    for (std::size_t i = 0; i < g.pieces().size(); ++i) {
        const double left = i == 0 ? iv.lo : g.breakpoints()[i - 1];
        const double right = i == g.breakpoints().size() ? iv.hi : g.breakpoints()[i];
        const double a = std::isfinite(left) ? left : std::min(right - 1.0, -1e3);
        const double b = std::isfinite(right) ? right : std::max(left + 1.0, 1e3);
        for (double t : {0.75 * a + 0.25 * b, 0.5 * (a + b), 0.25 * a + 0.75 * b})
            m = std::max(m, std::abs(g.eval(t)));
    }
    for (double b : g.breakpoints())
        m = std::max({m, std::abs(g.limit(b, Side::left)), std::abs(g.limit(b, Side::right))});
    for (const Atom& a : d.atoms()) {
        if (a.order == 0)
            m = std::max(m, std::abs(a.plus + a.minus));
        else
            m = std::max({m, std::abs(a.plus), std::abs(a.minus)});
    }
    return m;
}

void validate_problem(const CauchyProblem& p) {
    const std::size_t n = p.A.rows();
    if (n == 0 || p.A.cols() != n) throw domain_error("solve_cauchy: A must be square");
    if (p.f.size() != n || p.x0.size() != n)
        throw domain_error("solve_cauchy: f and x0 must have one entry per equation");
    const Interval& iv = p.A.interval();
    for (const auto& fi : p.f)
        if (!fi.interval().same(iv))
            throw domain_error("solve_cauchy: forcing interval differs from the coefficient's");
    if (!iv.contains(p.t0)) throw domain_error("solve_cauchy: t0 outside the working interval");

    for (const auto& fi : p.f) {
        for (const Atom& a : fi.atoms())
            if (a.site < p.t0 && !site_match(a.site, p.t0))
                throw precondition_error("solve_cauchy: forcing atom left of t0");
        const auto split = fi.regular().resplit(
            merge_breakpoints(fi.regular().breakpoints(), std::vector<double>{p.t0}));
        for (std::size_t i = 0; i < split.pieces().size(); ++i) {
            const double left = i == 0 ? iv.lo : split.breakpoints()[i - 1];
            if (left < p.t0 && !site_match(left, p.t0) && !split.pieces()[i].empty())
                throw precondition_error("solve_cauchy: forcing supported left of t0");
        }
    }
}

}  // namespace

FundamentalSystem fundamental_matrix(const PiecewiseMatrix& A, double t0) {
    const std::size_t n = A.rows();
    if (n == 0 || A.cols() != n) throw domain_error("fundamental_matrix: A must be square");
    const Interval iv = A.interval();
    if (!iv.contains(t0)) throw domain_error("fundamental_matrix: t0 outside the working interval");
    if (n == 1) return scalar_fundamental(A, t0);
    if (!A.piecewise_constant(tol()))
        throw precondition_error(
            "fundamental_matrix: coefficient outside the representable class "
            "(piecewise constant matrices only)");

    const std::vector<double>& bps = A.breakpoints();
    const std::size_t pieces = bps.size() + 1;
    std::size_t home = 0;
    while (home < bps.size() && bps[home] <= t0) ++home;

    // Anchor the home piece at t0 with X = I there; chain X continuously
    // through the breakpoints, each piece anchored at the edge shared with
    // its already-built neighbour.
    std::vector<PieceData> data(pieces);
    for (std::size_t i = 0; i < pieces; ++i) {
        data[i].left = i == 0 ? iv.lo : bps[i - 1];
        data[i].right = i == bps.size() ? iv.hi : bps[i];
        data[i].value = piece_matrix(A, i);
    }
    data[home].anchor = t0;
    for (std::size_t i = home + 1; i < pieces; ++i) data[i].anchor = data[i].left;
    for (std::size_t i = home; i-- > 0;) data[i].anchor = data[i].right;

    std::vector<std::vector<TermList>> expo(pieces), expo_inv(pieces);
    std::vector<EMat> C(pieces), Cinv(pieces);
    for (std::size_t i = 0; i < pieces; ++i) {
        expo[i] = matrix_exponential_terms(data[i].value, data[i].anchor);
        expo_inv[i] = matrix_exponential_terms(EMat(-data[i].value), data[i].anchor);
    }
    C[home] = EMat::Identity(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t i = home + 1; i < pieces; ++i)
        C[i] = eval_terms(expo[i - 1], n, data[i].anchor) * C[i - 1];
    for (std::size_t i = home; i-- > 0;)
        C[i] = eval_terms(expo[i + 1], n, data[i].anchor) * C[i + 1];
    for (std::size_t i = 0; i < pieces; ++i)
        Cinv[i] = C[i].partialPivLu().inverse();

    // X = e^{A_i (t - anchor_i)} C_i, X^{-1} = C_i^{-1} e^{-A_i (t - anchor_i)}.
    std::vector<PiecewiseFunction> ex, ei;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<TermList> px(pieces), pi(pieces);
            for (std::size_t p = 0; p < pieces; ++p) {
                for (std::size_t k = 0; k < n; ++k) {
                    px[p] = exppoly::add(
                        px[p], exppoly::scale(expo[p][r * n + k], C[p](Eigen::Index(k), Eigen::Index(c))));
                    pi[p] = exppoly::add(
                        pi[p], exppoly::scale(expo_inv[p][k * n + c], Cinv[p](Eigen::Index(r), Eigen::Index(k))));
                }
            }
            ex.push_back(PiecewiseFunction::from_pieces(iv, bps, std::move(px)));
            ei.push_back(PiecewiseFunction::from_pieces(iv, bps, std::move(pi)));
        }
    }
    return FundamentalSystem{PiecewiseMatrix::from_entries(n, n, std::move(ex)),
                             PiecewiseMatrix::from_entries(n, n, std::move(ei))};
}

SolutionBundle solve_cauchy(const CauchyProblem& p) {
    validate_problem(p);

    SolutionBundle out;
    out.fundamental = fundamental_matrix(p.A, p.t0);
    const std::vector<Distribution> h = impulsive_forcing(p);

    // Freeze the frame: u = X^{-1} h vanishes left of t0 along with h, so it
    // has the primitive y with y = 0 there, and x = X y.
    out.u = multiply(out.fundamental.Xinv, h);
    out.y.reserve(out.u.size());
    for (const auto& ui : out.u) out.y.push_back(primitive(ui, p.t0));
    out.x = multiply(out.fundamental.X, out.y);

    // The representative that satisfies the equation verbatim.
    const std::vector<Distribution> Ax = multiply(p.A, out.x);
    out.x_prime.reserve(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) out.x_prime.push_back(Ax[i] + h[i]);
    return out;
}

ResidualReport residual_check(const CauchyProblem& p, const SolutionBundle& s) {
    ResidualReport rep;
    const std::vector<Distribution> h = impulsive_forcing(p);
    const std::vector<Distribution> Ax = multiply(p.A, s.x);

    bool derivative_ok = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        // x' must solve the equation identically and be a derivative of x.
        const Distribution eq = s.x_prime[i] - Ax[i] - h[i];
        const Distribution res = derivative(s.x[i], DerivativeSelection::with_alpha({1.0, 0.0})) -
                                 Ax[i] - h[i];
        rep.equation_defect =
            std::max({rep.equation_defect, defect_magnitude(eq), defect_magnitude(res)});
        derivative_ok = derivative_ok && is_derivative_of(s.x_prime[i], s.x[i]);

        const Complex at_t0 = s.x[i].regular().limit(p.t0, Side::right);
        rep.initial_defect = std::max(rep.initial_defect, std::abs(at_t0 - p.x0[i]));
    }

    // The yardstick includes the coefficient scale of the solution's
    // representation: near-resonant problems legitimately carry large
    // cancelling terms, and the residual is zero only relative to them.
    double scale = 1.0;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        scale = std::max({scale, defect_magnitude(s.x[i]), std::abs(p.x0[i])});
        for (const auto& piece : s.x[i].regular().pieces())
            scale = std::max(scale, exppoly::coeff_scale(piece));
    }
    rep.passed = derivative_ok && rep.equation_defect <= tol().abs + tol().rel * scale &&
                 rep.initial_defect <= tol().abs + tol().rel * scale;
    return rep;
}

AlphaIndependenceReport alpha_independence_check(const CauchyProblem& p,
                                                 const std::vector<Complex>& alphas) {
    AlphaIndependenceReport rep;
    if (alphas.empty()) throw domain_error("alpha_independence_check: no alphas given");
    std::vector<SolutionBundle> runs;
    runs.reserve(alphas.size());
    for (const Complex& a : alphas) {
        CauchyProblem q = p;
        q.alpha_ic = a;
        runs.push_back(solve_cauchy(q));
    }
    rep.passed = true;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        for (std::size_t i = 0; i < runs[r].x.size(); ++i) {
            rep.max_deviation =
                std::max(rep.max_deviation, defect_magnitude(runs[r].x[i] - runs[0].x[i]));
            rep.passed = rep.passed && equal(runs[r].x[i], runs[0].x[i], tol());
        }
    }
    return rep;
}

VerificationReport default_verification_suite(const CauchyProblem& p, const SolutionBundle& s) {
    VerificationReport rep;
    rep.residual = residual_check(p, s);
    rep.alpha = alpha_independence_check(
        p, {Complex{0.0, 0.0}, Complex{0.5, 0.0}, Complex{1.0, 0.0}});
    rep.passed = rep.residual.passed && rep.alpha.passed;
    return rep;
}

HigherOrderSolution solve_higher_order(const HigherOrderProblem& p) {
    if (p.m < 1) throw domain_error("solve_higher_order: order must be at least 1");
    const std::size_t m = std::size_t(p.m);
    if (p.coeffs.size() != m || p.ics.size() != m)
        throw domain_error("solve_higher_order: need m coefficients and m initial values");
    const Interval iv = p.rhs.interval();
    for (const auto& c : p.coeffs)
        if (!c.interval().same(iv))
            throw domain_error("solve_higher_order: coefficient interval differs from the forcing's");

    // Companion system in the natural unknowns Y = (x, x', ..., x^{(m-1)}).
    std::vector<PiecewiseFunction> entries(m * m, PiecewiseFunction::zero(iv));
    for (std::size_t k = 0; k + 1 < m; ++k)
        entries[k * m + k + 1] = PiecewiseFunction::constant(iv, {1.0, 0.0});
    for (std::size_t j = 0; j < m; ++j) entries[(m - 1) * m + j] = p.coeffs[j];

    CauchyProblem sys;
    sys.A = PiecewiseMatrix::from_entries(m, m, std::move(entries));
    sys.f.assign(m, Distribution::zero(iv));
    sys.f[m - 1] = p.rhs;
    sys.t0 = p.t0;
    sys.x0 = p.ics;
    sys.alpha_ic = p.alpha_ic;

    HigherOrderSolution sol;
    sol.system = solve_cauchy(sys);

    // x^{(k)} on the whole line: differentiating x = Y_1 extended by zero
    // picks up the initial-value impulses cumulatively,
    //     x^{(k)} = Y_k' + sum_{j <= k-2} ics_j delta_{t0}^{(k-1-j) alpha}
    // (the order-0 impulse ics_{k-1} delta^alpha is already part of Y_k').
    sol.derivatives.reserve(m + 1);
    sol.derivatives.push_back(sol.system.x[0]);
    for (std::size_t k = 1; k <= m; ++k) {
        Distribution d = sol.system.x_prime[k - 1];
        std::vector<Atom> tail;
        for (std::size_t j = 0; j + 2 <= k; ++j)
            tail.push_back(delta_atom(p.t0, p.ics[j], p.alpha_ic, int(k - 1 - j)));
        if (!tail.empty()) d = d + Distribution::from_atoms(iv, std::move(tail));
        sol.derivatives.push_back(std::move(d));
    }
    return sol;
}

}  // namespace regudist
