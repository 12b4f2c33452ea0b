#pragma once

#include <optional>
#include <utility>

#include "regudist/distribution.hpp"

namespace regudist {

// Finite element of the derivative ambiguity class: a sum of order-0 pure
// jump functionals  sum_i c_i (delta_{s_i}^+ - delta_{s_i}^-). Adding one of
// these to a derivative gives another derivative of the same distribution.
struct DeltaClassElement {
    struct Entry {
        double site = 0.0;
        Complex weight{0.0, 0.0};
    };
    std::vector<Entry> entries;

    std::vector<Atom> to_atoms() const;
};

// Which representative of the derivative class to produce: the alpha used
// for the order-0 atom created at each jump of the regular part (per-site
// overrides beat the default), plus an optional extra ambiguity element.
struct DerivativeSelection {
    Complex default_alpha = config().default_alpha;
    std::vector<std::pair<double, Complex>> site_alphas;
    std::optional<DeltaClassElement> extra;

    static DerivativeSelection with_alpha(const Complex& a) {
        DerivativeSelection s;
        s.default_alpha = a;
        return s;
    }
    Complex alpha_at(double site) const;
};

// Product with a piecewise-smooth coefficient, defined through the pairing
// (g f, phi) = (f, g phi). Atoms expand by the Leibniz rule on the one-sided
// jets of g; the regular parts multiply pointwise.
Distribution multiply(const PiecewiseFunction& g, const Distribution& f);

// Matrix coefficient acting on a vector of distributions.
std::vector<Distribution> multiply(const PiecewiseMatrix& g, const std::vector<Distribution>& f);

// A derivative of f: the a.e. derivative of the regular part, an order-0
// atom J * delta^alpha at every jump J of the regular part, every existing
// atom pushed up one order, plus whatever extra ambiguity element the
// selection requests.
Distribution derivative(const Distribution& f, const DerivativeSelection& sel = {});

// Whether g is one of the derivatives of f, i.e. whether g differs from the
// canonical derivative by an ambiguity-class element only.
bool is_derivative_of(const Distribution& g, const Distribution& f);

// The primitive of f vanishing left of t0 (f itself must vanish there).
// Atom orders drop by one; order-0 atoms integrate to steps carrying their
// total weight (the pure-jump component has primitive zero, so this map
// forgets it).
Distribution primitive(const Distribution& f, double t0);

}  // namespace regudist
