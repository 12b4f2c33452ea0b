#include "regudist/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace regudist {

namespace {

bool site_match(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
    double m = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= 1e-12 * m;
}

double atom_magnitude(const std::vector<Atom>& atoms) {
    double m = 0.0;
    for (const Atom& a : atoms) m = std::max({m, std::abs(a.plus), std::abs(a.minus)});
    return m;
}

}  // namespace

std::vector<Atom> DeltaClassElement::to_atoms() const {
    std::vector<Atom> out;
    out.reserve(entries.size());
    for (const Entry& e : entries) out.push_back(jump_atom(e.site, e.weight, 0));
    return out;
}

Complex DerivativeSelection::alpha_at(double site) const {
    for (const auto& [s, a] : site_alphas)
        if (site_match(s, site)) return a;
    return default_alpha;
}

Distribution multiply(const PiecewiseFunction& g, const Distribution& f) {
    if (!g.interval().same(f.interval()))
        throw domain_error("multiply: operands live on different intervals");

    PiecewiseFunction regular = mul(g, f.regular());

    // (g * Atom, phi) = (Atom, g phi): expanding (g phi)^(k) by Leibniz and
    // reading the result back as atoms of orders 0..k,
    //
    //   (tau, k, p, m) -> sum_j (-1)^{k-j} C(k,j) *
    //                       (tau, j, p g^{(k-j)}(tau+), m g^{(k-j)}(tau-)).
    std::vector<Atom> atoms;
    for (const Atom& a : f.atoms()) {
        const int k = a.order;
        std::vector<Complex> right = g.one_sided_jet(a.site, Side::right, k);
        std::vector<Complex> left = g.one_sided_jet(a.site, Side::left, k);
        for (int j = 0; j <= k; ++j) {
            const double sgn = ((k - j) % 2 == 0) ? 1.0 : -1.0;
            const double c = sgn * exppoly::binom(k, j);
            atoms.push_back(Atom{a.site, j, c * a.plus * right[k - j], c * a.minus * left[k - j]});
        }
    }
    return Distribution(std::move(regular), std::move(atoms));
}

std::vector<Distribution> multiply(const PiecewiseMatrix& g, const std::vector<Distribution>& f) {
    if (g.cols() != f.size())
        throw domain_error("multiply: matrix width does not match vector length");
    std::vector<Distribution> out;
    out.reserve(g.rows());
    for (std::size_t i = 0; i < g.rows(); ++i) {
        Distribution row = Distribution::zero(g.interval());
        for (std::size_t j = 0; j < g.cols(); ++j) row = row + multiply(g.at(i, j), f[j]);
        out.push_back(std::move(row));
    }
    return out;
}

Distribution derivative(const Distribution& f, const DerivativeSelection& sel) {
    std::vector<Atom> atoms;

    // Each jump J of the regular part contributes J * delta^alpha at the
    // jump site, with the alpha the selection picks there.
    for (double b : f.regular().breakpoints()) {
        const Complex J = f.regular().jump(b, 0);
        const double local = std::max(std::abs(f.regular().limit(b, Side::left)),
                                      std::abs(f.regular().limit(b, Side::right)));
        if (!tol().zero(J, local)) atoms.push_back(delta_atom(b, J, sel.alpha_at(b)));
    }

    // Existing atoms move up one order with intact weights.
    for (const Atom& a : f.atoms()) {
        if (a.order + 1 > config().max_order)
            throw domain_error("derivative: atom order would exceed the configured maximum");
        atoms.push_back(Atom{a.site, a.order + 1, a.plus, a.minus});
    }

    if (sel.extra) {
        for (const Atom& a : sel.extra->to_atoms()) atoms.push_back(a);
    }
    return Distribution(f.regular().differentiate_ae(), std::move(atoms));
}

bool is_derivative_of(const Distribution& g, const Distribution& f) {
    if (!g.interval().same(f.interval()))
        throw domain_error("is_derivative_of: operands live on different intervals");

    const Distribution d = derivative(f, DerivativeSelection::with_alpha(Complex{1.0, 0.0}));
    // Compare the regular parts as functions (equal() measures against the
    // coefficient scale of both operands: representations with large
    // cancelling terms only agree up to that scale times rounding).
    if (!equal(g.regular(), d.regular(), tol())) return false;
    const Distribution r = g - d;

    // Whatever is left must be an ambiguity-class element: order-0 atoms
    // with cancelling one-sided weights. The yardstick is the size of the
    // atoms that went into the comparison, not of the residue.
    const double scale = std::max(atom_magnitude(g.atoms()), atom_magnitude(d.atoms()));
    for (const Atom& a : r.atoms()) {
        if (a.order == 0) {
            if (!tol().zero(a.plus + a.minus, scale)) return false;
        } else {
            if (!tol().zero(a.plus, scale) || !tol().zero(a.minus, scale)) return false;
        }
    }
    return true;
}

Distribution primitive(const Distribution& f, double t0) {
    const Interval& iv = f.interval();
    if (!iv.contains(t0)) throw domain_error("primitive: t0 outside the working interval");

    // The integrand must vanish left of t0: regular pieces meeting (lo, t0)
    // must be empty, atom sites must sit at or right of t0.
    const PiecewiseFunction split = f.regular().resplit(
        merge_breakpoints(f.regular().breakpoints(), std::vector<double>{t0}));
    for (std::size_t i = 0; i < split.pieces().size(); ++i) {
        const double left_edge = (i == 0) ? iv.lo : split.breakpoints()[i - 1];
        if (left_edge < t0 && !site_match(left_edge, t0) && !split.pieces()[i].empty())
            throw precondition_error("primitive: regular part does not vanish left of t0");
    }
    for (const Atom& a : f.atoms()) {
        if (a.site < t0 && !site_match(a.site, t0))
            throw precondition_error("primitive: atom left of t0");
    }

    // Orders drop by one; an order-0 atom integrates to a step of its total
    // weight (the jump component, plus+minus = 0, integrates to nothing).
    PiecewiseFunction regular = f.regular().antiderivative(t0);
    std::vector<Atom> atoms;
    for (const Atom& a : f.atoms()) {
        if (a.order >= 1) {
            atoms.push_back(Atom{a.site, a.order - 1, a.plus, a.minus});
        } else {
            const Complex w = a.plus + a.minus;
            if (w != Complex{0.0, 0.0})
                regular = regular + scale(PiecewiseFunction::step(iv, a.site), w);
        }
    }
    return Distribution(std::move(regular), std::move(atoms));
}

}  // namespace regudist
