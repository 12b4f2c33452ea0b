#include "regudist/mollify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

namespace regudist {

namespace {

// Unit-mass bump c u^{s+1}(1-u)^{s+1}, u = (t-anchor)/eps, expanded into
// powers of (t-anchor); it lives on (anchor, anchor+eps). The carrier is
// symmetric under u -> 1-u, so the bump sitting left of a site is the same
// polynomial anchored at site-eps. Anchoring each piece at its own left
// edge matters: re-expanding these high-order-vanishing polynomials about
// any other point is badly conditioned.
TermList one_sided_bump(double anchor, double eps, int s) {
    TermList carrier;
    for (int j = 0; j <= s + 1; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        carrier.push_back(
            ExpPolyTerm{Complex{sign * exppoly::binom(s + 1, j), 0.0}, s + 1 + j, Complex{}, 0.0});
    }
    const double mass = exppoly::integral(carrier, 0.0, 1.0).real();
    TermList out;
    for (const ExpPolyTerm& term : carrier) {
        const double c = term.coeff.real() / mass;
        out.push_back(
            ExpPolyTerm{Complex{c / std::pow(eps, term.power + 1), 0.0}, term.power, Complex{}, anchor});
    }
    return out;
}

void require_inside(const Interval& iv, double lo, double hi, const char* who) {
    if (!(lo > iv.lo && hi < iv.hi))
        throw domain_error(std::string(who) + ": support of the member leaves the interval");
}

}  // namespace

PiecewiseFunction DeltaFamily::member(const Interval& iv, double eps) const {
    if (!(eps > 0.0)) throw domain_error("DeltaFamily: width must be positive");
    if (smoothness < 0) throw domain_error("DeltaFamily: negative smoothness");
    require_inside(iv, site - eps, site + eps, "DeltaFamily");
    TermList left =
        exppoly::scale(one_sided_bump(site - eps, eps, smoothness), Complex{1.0, 0.0} - alpha);
    TermList right = exppoly::scale(one_sided_bump(site, eps, smoothness), alpha);
    return PiecewiseFunction::from_pieces(iv, {site - eps, site, site + eps},
                                          {{}, std::move(left), std::move(right), {}});
}

PiecewiseFunction PCDeltaFamily::member(const Interval& iv, int k) const {
    if (k < 1) throw domain_error("PCDeltaFamily: index must be positive");
    const double w = 0.5 / k;
    require_inside(iv, site - w, site + w, "PCDeltaFamily");
    TermList left{ExpPolyTerm{2.0 * k * (Complex{1.0, 0.0} - alpha), 0, Complex{}, site}};
    TermList right{ExpPolyTerm{2.0 * k * alpha, 0, Complex{}, site}};
    return PiecewiseFunction::from_pieces(iv, {site - w, site, site + w},
                                          {{}, std::move(left), std::move(right), {}});
}

PiecewiseFunction regularize(const Distribution& f, double eps, int smoothness) {
    if (!(eps > 0.0)) throw domain_error("regularize: width must be positive");
    if (smoothness < 0) throw domain_error("regularize: negative smoothness");
    const Interval& iv = f.interval();
    PiecewiseFunction out = f.regular();
    for (const Atom& a : f.atoms()) {
        if (a.order > smoothness)
            throw precondition_error("regularize: atom order exceeds the family smoothness");
        require_inside(iv, a.site - eps, a.site + eps, "regularize");
        // plus weights the right bump, minus the left one; for a split delta
        // this is the family member scaled by the total weight, for a pure
        // jump it is the difference of the two one-sided bumps.
        TermList left = exppoly::scale(one_sided_bump(a.site - eps, eps, smoothness), a.minus);
        TermList right = exppoly::scale(one_sided_bump(a.site, eps, smoothness), a.plus);
        PiecewiseFunction bump = PiecewiseFunction::from_pieces(
            iv, {a.site - eps, a.site, a.site + eps}, {{}, std::move(left), std::move(right), {}});
        for (int j = 0; j < a.order; ++j) bump = bump.differentiate_ae();
        out = out + bump;
    }
    return out;
}

namespace {

// 20-point Gauss-Legendre rule on (-1, 1), nodes by Newton iteration.
struct GaussRule {
    std::array<double, 20> node{};
    std::array<double, 20> weight{};
};

const GaussRule& gauss20() {
    static const GaussRule rule = [] {
        GaussRule r{};
        const int n = 20;
        const double pi = std::acos(-1.0);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(pi * (i + 0.75) / (n + 0.5));
            double deriv = 1.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                deriv = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / deriv;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            r.node[i] = x;
            r.weight[i] = 2.0 / ((1.0 - x * x) * deriv * deriv);
        }
        return r;
    }();
    return rule;
}

// piece of f in force at t (right-limit convention at breakpoints)
const TermList& piece_at(const PiecewiseFunction& f, double t) {
    const auto& bps = f.breakpoints();
    const std::size_t idx = std::upper_bound(bps.begin(), bps.end(), t) - bps.begin();
    return f.pieces()[idx];
}

// Dormand-Prince 5(4) coefficients.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB[7] = {35.0 / 384,      0.0,        500.0 / 1113, 125.0 / 192,
                          -2187.0 / 6784, 11.0 / 84,  0.0};
constexpr double kE[7] = {71.0 / 57600,        0.0,         -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200,  22.0 / 525,  -1.0 / 40};

}  // namespace

std::vector<std::vector<Complex>> ode_solve_numeric(const PiecewiseMatrix& A,
                                                    const std::vector<PiecewiseFunction>& g,
                                                    double t0, const std::vector<Complex>& x0,
                                                    const std::vector<double>& queries,
                                                    const NumericOptions& opts) {
    const std::size_t n = x0.size();
    if (n == 0) throw domain_error("ode_solve_numeric: empty state");
    if (A.rows() != n || A.cols() != n) throw domain_error("ode_solve_numeric: dimension mismatch");
    if (g.size() != n) throw domain_error("ode_solve_numeric: forcing size mismatch");
    const Interval& iv = A.interval();
    for (const auto& gi : g)
        if (!gi.interval().same(iv)) throw domain_error("ode_solve_numeric: interval mismatch");
    if (!iv.contains(t0)) throw domain_error("ode_solve_numeric: t0 outside the interval");
    for (double q : queries) {
        if (q < t0) throw domain_error("ode_solve_numeric: query left of t0");
        if (q > t0 && !iv.contains(q)) throw domain_error("ode_solve_numeric: query outside the interval");
    }

    std::vector<std::vector<Complex>> result(queries.size(), std::vector<Complex>(n));
    if (queries.empty()) return result;

    // sorted query times, each carrying the output rows it fills
    std::vector<std::pair<double, std::size_t>> order(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) order[i] = {queries[i], i};
    std::sort(order.begin(), order.end());
    const double t_last = order.back().first;

    // march boundaries: query times plus every data breakpoint in between
    std::vector<double> cuts;
    for (const auto& [t, idx] : order)
        if (t > t0) cuts.push_back(t);
    auto add_bps = [&](const std::vector<double>& bps) {
        for (double b : bps)
            if (b > t0 && b < t_last) cuts.push_back(b);
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) add_bps(A.at(i, j).breakpoints());
        add_bps(g[i].breakpoints());
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Complex> y = x0;
    std::size_t next_query = 0;
    auto record_at = [&](double t) {
        while (next_query < order.size() && order[next_query].first == t) {
            result[order[next_query].second] = y;
            ++next_query;
        }
    };
    record_at(t0);

    std::size_t steps = 0;
    std::vector<Complex> stage[7];
    std::vector<Complex> ytmp(n), ynew(n);
    for (auto& s : stage) s.resize(n);

    double cur = t0;
    for (double end : cuts) {
        // freeze the piece of every data entry on (cur, end)
        const double mid = 0.5 * (cur + end);
        std::vector<const TermList*> aterm(n * n);
        std::vector<const TermList*> gterm(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aterm[i * n + j] = &piece_at(A.at(i, j), mid);
            gterm[i] = &piece_at(g[i], mid);
        }
        auto rhs = [&](double t, const std::vector<Complex>& v, std::vector<Complex>& out) {
            for (std::size_t i = 0; i < n; ++i) {
                Complex acc = exppoly::eval(*gterm[i], t);
                for (std::size_t j = 0; j < n; ++j) acc += exppoly::eval(*aterm[i * n + j], t) * v[j];
                out[i] = acc;
            }
        };

        double t = cur;
        double h = end - cur;
        while (t < end) {
            const bool last = (end - t <= h);
            if (last) h = end - t;
            if (++steps > opts.max_steps) throw error("ode_solve_numeric: step limit exceeded");

            rhs(t, y, stage[0]);
            for (int s = 1; s < 7; ++s) {
                for (std::size_t i = 0; i < n; ++i) {
                    Complex acc = y[i];
                    for (int j = 0; j < s; ++j) acc += h * kA[s][j] * stage[j][i];
                    ytmp[i] = acc;
                }
                rhs(t + kC[s] * h, ytmp, stage[s]);
            }
            double err = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                Complex acc = y[i];
                Complex dev{};
                for (int s = 0; s < 7; ++s) {
                    acc += h * kB[s] * stage[s][i];
                    dev += h * kE[s] * stage[s][i];
                }
                ynew[i] = acc;
                const double yard = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(acc));
                err = std::max(err, std::abs(dev) / yard);
            }
            if (err <= 1.0) {
                t = last ? end : t + h;
                y.swap(ynew);
            } else if (h <= 1e-14 * std::max(1.0, std::abs(t))) {
                throw error("ode_solve_numeric: step size underflow");
            }
            const double factor =
                std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
            h *= factor;
        }
        cur = end;
        record_at(cur);
    }
    return result;
}

ConvergenceReport convergence_report(const CauchyProblem& p, const SolutionBundle& s,
                                     const std::vector<TestFunction>& probes,
                                     const std::vector<double>& eps_grid, int smoothness) {
    const std::size_t n = p.x0.size();
    if (n == 0 || s.x.size() != n) throw domain_error("convergence_report: dimension mismatch");
    if (probes.empty()) throw domain_error("convergence_report: no probes");
    if (eps_grid.empty()) throw domain_error("convergence_report: empty width grid");
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        if (!(eps_grid[i] > 0.0)) throw domain_error("convergence_report: widths must be positive");
        if (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))
            throw domain_error("convergence_report: widths must decrease");
    }

    // the forcing the solver actually responds to: f plus the initial impulse
    std::vector<Distribution> h;
    h.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        h.push_back(p.f[i] + Distribution::from_atoms(p.f[i].interval(),
                                                      {delta_atom(p.t0, p.x0[i], p.alpha_ic)}));

    // symbolic pairings, once
    std::vector<Complex> sym(n * probes.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q = 0; q < probes.size(); ++q) sym[i * probes.size() + q] = pair(s.x[i], probes[q]);

    const GaussRule& rule = gauss20();
    ConvergenceReport report;
    for (double eps : eps_grid) {
        std::vector<PiecewiseFunction> hm;
        hm.reserve(n);
        for (std::size_t i = 0; i < n; ++i) hm.push_back(regularize(h[i], eps, smoothness));

        // integration starts left of every bump, where everything vanishes
        double start = p.t0;
        for (std::size_t i = 0; i < n; ++i)
            for (const Atom& a : h[i].atoms()) start = std::min(start, a.site - eps);

        // quadrature panels per probe: cut at every breakpoint in sight,
        // then keep panels short enough for the rule
        std::vector<std::vector<double>> panel_edges(probes.size());
        std::vector<double> nodes;
        std::vector<std::size_t> first_node(probes.size() + 1, 0);
        for (std::size_t q = 0; q < probes.size(); ++q) {
            const TestFunction& phi = probes[q];
            std::vector<double> edges{phi.support_lo, phi.support_hi};
            auto add_cut = [&](double b) {
                if (b > phi.support_lo && b < phi.support_hi) edges.push_back(b);
            };
            for (double b : phi.body.breakpoints()) add_cut(b);
            for (std::size_t i = 0; i < n; ++i)
                for (double b : hm[i].breakpoints()) add_cut(b);
            for (double b : p.A.breakpoints()) add_cut(b);
            std::sort(edges.begin(), edges.end());
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

            std::vector<double>& panels = panel_edges[q];
            panels.push_back(edges.front());
            for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
                const double len = edges[e + 1] - edges[e];
                const int parts = std::max(1, int(std::ceil(len / 0.5)));
                for (int j = 1; j <= parts; ++j) panels.push_back(edges[e] + len * j / parts);
            }
            first_node[q] = nodes.size();
            for (std::size_t e = 0; e + 1 < panels.size(); ++e) {
                const double c = 0.5 * (panels[e] + panels[e + 1]);
                const double r = 0.5 * (panels[e + 1] - panels[e]);
                for (int j = 0; j < 20; ++j) nodes.push_back(c + r * rule.node[j]);
            }
        }
        first_node[probes.size()] = nodes.size();

        // clamp node queries to the start of integration: left of it the
        // classical solution is identically zero and rows stay zero
        std::vector<double> qtimes;
        std::vector<std::size_t> qmap(nodes.size(), std::size_t(-1));
        for (std::size_t j = 0; j < nodes.size(); ++j)
            if (nodes[j] >= start) {
                qmap[j] = qtimes.size();
                qtimes.push_back(nodes[j]);
            }
        const std::vector<std::vector<Complex>> values = ode_solve_numeric(
            p.A, hm, start, std::vector<Complex>(n, Complex{}), qtimes);

        ConvergenceRow row{eps, 0.0};
        for (std::size_t q = 0; q < probes.size(); ++q) {
            const TestFunction& phi = probes[q];
            const std::vector<double>& panels = panel_edges[q];
            for (std::size_t i = 0; i < n; ++i) {
                Complex num{};
                std::size_t node_idx = first_node[q];
                for (std::size_t e = 0; e + 1 < panels.size(); ++e) {
                    const double r = 0.5 * (panels[e + 1] - panels[e]);
                    for (int j = 0; j < 20; ++j, ++node_idx) {
                        const std::size_t v = qmap[node_idx];
                        if (v == std::size_t(-1)) continue;
                        num += r * rule.weight[j] * values[v][i] * phi.body.eval(nodes[node_idx]);
                    }
                }
                const Complex ref = sym[i * probes.size() + q];
                const double rel = std::abs(num - ref) / std::max(1.0, std::abs(ref));
                row.max_rel_error = std::max(row.max_rel_error, rel);
            }
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace regudist
