#pragma once

#include <vector>

#include "regudist/piecewise.hpp"

namespace regudist {

// Point functional at `site`, derivative order `order`, with independent
// one-sided weights:
//
//     (Atom, phi) = (-1)^order * (plus * phi^(order)(site+) + minus * phi^(order)(site-))
//
// The (plus, minus) storage is linear and unique. The familiar alpha-split
// delta of weight a corresponds to (plus, minus) = (a*alpha, a*(1-alpha)); a
// pure jump functional of weight b is (b, -b).
struct Atom {
    double site = 0.0;
    int order = 0;
    Complex plus{0.0, 0.0};
    Complex minus{0.0, 0.0};
};

Atom delta_atom(double site, const Complex& amount, const Complex& alpha, int order = 0);
Atom jump_atom(double site, const Complex& amount, int order = 0);

// Distribution over regulated test functions, desk-scale model: a regular
// piecewise part plus finitely many atoms. Canonical form keeps atoms sorted
// by (site, order) with one atom per key and no all-zero atoms.
class Distribution {
public:
    Distribution() = default;
    explicit Distribution(PiecewiseFunction regular);
    Distribution(PiecewiseFunction regular, std::vector<Atom> atoms);
    static Distribution zero(Interval iv);
    static Distribution from_atoms(Interval iv, std::vector<Atom> atoms);

    const PiecewiseFunction& regular() const { return regular_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const Interval& interval() const { return regular_.interval(); }

    bool has_atoms() const { return !atoms_.empty(); }
    int max_atom_order() const;
    bool is_zero(const Tolerance& tol) const;

private:
    void canonicalize();

    PiecewiseFunction regular_;
    std::vector<Atom> atoms_;
};

Distribution add(const Distribution& a, const Distribution& b);
Distribution scale(Distribution a, const Complex& c);
inline Distribution operator+(const Distribution& a, const Distribution& b) { return add(a, b); }
inline Distribution operator-(const Distribution& a, const Distribution& b) {
    return add(a, scale(b, Complex{-1.0, 0.0}));
}
inline Distribution operator*(const Complex& c, const Distribution& a) { return scale(a, c); }
inline Distribution operator*(double c, const Distribution& a) { return scale(a, Complex{c, 0.0}); }

// Compactly supported regulated test function: a piecewise body that
// vanishes outside [support_lo, support_hi], with the support strictly
// inside the working interval. Jumps anywhere, including at the support
// edges, are allowed.
struct TestFunction {
    PiecewiseFunction body;
    double support_lo = 0.0;
    double support_hi = 0.0;

    // Validates that `body` vanishes outside [u, v].
    static TestFunction cutoff(const PiecewiseFunction& body, double u, double v);
};

// The defining pairing (f, phi).
Complex pair(const Distribution& f, const TestFunction& phi);

// Image of f under restriction to smooth test functions: the regular part
// plus classical delta derivatives of weight plus+minus (pure jump atoms
// vanish). Zero-weight entries are dropped.
struct ClassicalTerm {
    double site = 0.0;
    int order = 0;
    Complex weight{0.0, 0.0};
};
struct ClassicalDistribution {
    PiecewiseFunction regular;
    std::vector<ClassicalTerm> deltas;
};
ClassicalDistribution restrict_classical(const Distribution& f);

// Polynomial probe of the given order at `site`: zero outside (u, v),
// (t - site)^order / order! right of site. Its order-th derivative jumps by
// exactly 1 at site and all other derivative jumps at site are 0.
TestFunction probe(const Interval& iv, int order, double site, double u, double v);

// For f in the kernel of the restriction (zero regular part, pure jump
// atoms): the coefficients (f, probe(k, site)) for k = 0..max_order. The
// probe support is shrunk automatically to isolate `site` from the other
// atom sites. An atom (site, k, p, -p) yields coefficient (-1)^k p.
std::vector<Complex> kernel_coefficients(const Distribution& f, double site, int max_order = -1);

// Decomposition of a point-supported distribution at `site` into
// amount * alpha-split delta + jump * (plus-delta minus minus-delta), one
// entry per order present. When plus+minus vanishes the amount is zero and
// the jump carries the atom.
struct PointSupportComponent {
    int order = 0;
    Complex amount{0.0, 0.0};
    Complex alpha{0.0, 0.0};
    Complex jump{0.0, 0.0};
};
std::vector<PointSupportComponent> normalize_point_support(const Distribution& f, double site);

bool equal(const Distribution& a, const Distribution& b, const Tolerance& tol);

}  // namespace regudist
