#include "regudist/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace regudist {

namespace {

bool site_match(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

double atom_scale(const std::vector<Atom>& atoms) {
    double m = 0.0;
    for (const auto& a : atoms) m = std::max({m, std::abs(a.plus), std::abs(a.minus)});
    return m;
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

Atom delta_atom(double site, const Complex& amount, const Complex& alpha, int order) {
    return Atom{site, order, amount * alpha, amount * (Complex{1.0, 0.0} - alpha)};
}

Atom jump_atom(double site, const Complex& amount, int order) {
    return Atom{site, order, amount, -amount};
}

Distribution::Distribution(PiecewiseFunction regular) : regular_(std::move(regular)) { canonicalize(); }

Distribution::Distribution(PiecewiseFunction regular, std::vector<Atom> atoms)
    : regular_(std::move(regular)), atoms_(std::move(atoms)) {
    canonicalize();
}

Distribution Distribution::zero(Interval iv) { return Distribution(PiecewiseFunction::zero(iv)); }

Distribution Distribution::from_atoms(Interval iv, std::vector<Atom> atoms) {
    return Distribution(PiecewiseFunction::zero(iv), std::move(atoms));
}

void Distribution::canonicalize() {
    const Interval& iv = regular_.interval();
    for (const auto& a : atoms_) {
        if (!iv.contains(a.site)) throw domain_error("atom site outside the working interval");
        if (a.order < 0 || a.order > config().max_order)
            throw domain_error("atom order outside [0, max_order]");
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) {
        if (!site_match(a.site, b.site)) return a.site < b.site;
        return a.order < b.order;
    });
    std::vector<Atom> merged;
    for (const auto& a : atoms_) {
        if (!merged.empty() && site_match(merged.back().site, a.site) && merged.back().order == a.order) {
            merged.back().plus += a.plus;
            merged.back().minus += a.minus;
        } else {
            merged.push_back(a);
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Atom& a) {
                                    return a.plus == Complex{0.0, 0.0} && a.minus == Complex{0.0, 0.0};
                                }),
                 merged.end());
    atoms_ = std::move(merged);
}

int Distribution::max_atom_order() const {
    int k = -1;
    for (const auto& a : atoms_) k = std::max(k, a.order);
    return k;
}

bool Distribution::is_zero(const Tolerance& tol) const {
    if (!regular_.is_zero(tol)) return false;
    for (const auto& a : atoms_)
        if (!tol.zero(a.plus) || !tol.zero(a.minus)) return false;
    return true;
}

Distribution add(const Distribution& a, const Distribution& b) {
    std::vector<Atom> atoms = a.atoms();
    atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
    return Distribution(add(a.regular(), b.regular()), std::move(atoms));
}

Distribution scale(Distribution a, const Complex& c) {
    std::vector<Atom> atoms = a.atoms();
    for (auto& at : atoms) {
        at.plus *= c;
        at.minus *= c;
    }
    return Distribution(scale(a.regular(), c), std::move(atoms));
}

TestFunction TestFunction::cutoff(const PiecewiseFunction& body, double u, double v) {
    const Interval& iv = body.interval();
    if (!(u < v)) throw domain_error("test function: support bounds reversed");
    if (!iv.contains(u) || !iv.contains(v))
        throw domain_error("test function: support must lie strictly inside the interval");
    // body must vanish outside [u, v]
    const std::vector<double> bps = merge_breakpoints(body.breakpoints(), {u, v});
    const PiecewiseFunction split = body.resplit(bps);
    for (std::size_t i = 0; i < split.pieces().size(); ++i) {
        const double left = i == 0 ? iv.lo : bps[i - 1];
        const double right = i == bps.size() ? iv.hi : bps[i];
        const bool outside = right <= u + 1e-14 || left >= v - 1e-14;
        if (!outside) continue;
        for (const auto& term : split.pieces()[i])
            if (std::abs(term.coeff) > 0.0)
                throw domain_error("test function: body does not vanish outside its support");
    }
    return TestFunction{body, u, v};
}

Complex pair(const Distribution& f, const TestFunction& phi) {
    if (!f.interval().same(phi.body.interval())) throw domain_error("pair: interval mismatch");
    Complex total = mul(f.regular(), phi.body).definite_integral(phi.support_lo, phi.support_hi);
    for (const auto& a : f.atoms()) {
        const auto right = phi.body.one_sided_jet(a.site, Side::right, a.order);
        const auto left = phi.body.one_sided_jet(a.site, Side::left, a.order);
        const double sign = a.order % 2 == 0 ? 1.0 : -1.0;
        total += sign * (a.plus * right[std::size_t(a.order)] + a.minus * left[std::size_t(a.order)]);
    }
    return total;
}

ClassicalDistribution restrict_classical(const Distribution& f) {
    ClassicalDistribution out;
    out.regular = f.regular();
    for (const auto& a : f.atoms()) {
        const Complex w = a.plus + a.minus;
        if (!tol().zero(w, std::max(std::abs(a.plus), std::abs(a.minus)))) {
            out.deltas.push_back(ClassicalTerm{a.site, a.order, w});
        }
    }
    return out;
}

TestFunction probe(const Interval& iv, int order, double site, double u, double v) {
    if (order < 0 || order > config().max_order) throw domain_error("probe: order outside [0, max_order]");
    if (!(u < site && site < v)) throw domain_error("probe: need u < site < v");
    if (!iv.contains(u) || !iv.contains(v)) throw domain_error("probe: support outside the working interval");
    const TermList bump{ExpPolyTerm{Complex{1.0 / factorial(order), 0.0}, order, Complex{0.0, 0.0}, site}};
    const auto body = PiecewiseFunction::from_pieces(iv, {u, site, v}, {{}, {}, bump, {}});
    return TestFunction::cutoff(body, u, v);
}

std::vector<Complex> kernel_coefficients(const Distribution& f, double site, int max_order) {
    if (max_order < 0) max_order = config().max_order;
    if (!f.interval().contains(site)) throw domain_error("kernel_coefficients: site outside the working interval");
    if (!f.regular().is_zero(tol()))
        throw precondition_error("kernel_coefficients: distribution has a regular part");
    const double scale = atom_scale(f.atoms());
    for (const auto& a : f.atoms())
        if (!tol().zero(a.plus + a.minus, scale))
            throw precondition_error("kernel_coefficients: distribution is not in the restriction kernel");

    // shrink the probe support until `site` is isolated from the other atoms
    double dist = std::min(site - f.interval().lo, f.interval().hi - site);
    for (const auto& a : f.atoms())
        if (!site_match(a.site, site)) dist = std::min(dist, std::abs(a.site - site));
    dist = std::min(dist, 1.0);
    const double u = site - 0.5 * dist, v = site + 0.5 * dist;

    std::vector<Complex> out;
    out.reserve(std::size_t(max_order) + 1);
    for (int k = 0; k <= max_order; ++k) out.push_back(pair(f, probe(f.interval(), k, site, u, v)));
    return out;
}

std::vector<PointSupportComponent> normalize_point_support(const Distribution& f, double site) {
    if (!f.regular().is_zero(tol()))
        throw precondition_error("normalize_point_support: distribution has a regular part");
    for (const auto& a : f.atoms())
        if (!site_match(a.site, site))
            throw precondition_error("normalize_point_support: support is not the single given point");
    std::vector<PointSupportComponent> out;
    for (const auto& a : f.atoms()) {
        PointSupportComponent c;
        c.order = a.order;
        const Complex sum = a.plus + a.minus;
        if (tol().zero(sum, std::max(std::abs(a.plus), std::abs(a.minus)))) {
            c.amount = Complex{0.0, 0.0};
            c.alpha = Complex{0.0, 0.0};
            c.jump = a.plus;
        } else {
            c.amount = sum;
            c.alpha = a.plus / sum;
            c.jump = Complex{0.0, 0.0};
        }
        out.push_back(c);
    }
    return out;
}

bool equal(const Distribution& a, const Distribution& b, const Tolerance& tol) {
    if (!a.interval().same(b.interval())) return false;
    if (!equal(a.regular(), b.regular(), tol)) return false;
    const double scale = std::max(atom_scale(a.atoms()), atom_scale(b.atoms()));
    std::size_t i = 0, j = 0;
    const auto& xa = a.atoms();
    const auto& xb = b.atoms();
    auto key_less = [](const Atom& x, const Atom& y) {
        if (!site_match(x.site, y.site)) return x.site < y.site;
        return x.order < y.order;
    };
    while (i < xa.size() || j < xb.size()) {
        const bool both = i < xa.size() && j < xb.size();
        if (both && site_match(xa[i].site, xb[j].site) && xa[i].order == xb[j].order) {
            if (!tol.zero(xa[i].plus - xb[j].plus, scale) || !tol.zero(xa[i].minus - xb[j].minus, scale))
                return false;
            ++i, ++j;
        } else if (j >= xb.size() || (i < xa.size() && key_less(xa[i], xb[j]))) {
            if (!tol.zero(xa[i].plus, scale) || !tol.zero(xa[i].minus, scale)) return false;
            ++i;
        } else {
            if (!tol.zero(xb[j].plus, scale) || !tol.zero(xb[j].minus, scale)) return false;
            ++j;
        }
    }
    return true;
}

}  // namespace regudist
