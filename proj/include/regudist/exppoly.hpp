#pragma once

#include <vector>

#include "regudist/config.hpp"

namespace regudist {

// One term of an exponential polynomial:
//
//     coeff * (t - anchor)^power * exp(rate * (t - anchor))
//
// Sums of these are closed under addition, multiplication, differentiation
// and antidifferentiation, which is what makes the rest of the library exact.
// Anchors are per term; re-anchoring is an exact binomial expansion.
struct ExpPolyTerm {
    Complex coeff{0.0, 0.0};
    int power = 0;      // >= 0
    Complex rate{0.0, 0.0};
    double anchor = 0.0;
};

// A term list denotes the sum of its terms. Empty list = zero function.
using TermList = std::vector<ExpPolyTerm>;

namespace exppoly {

Complex eval(const ExpPolyTerm& term, double t);
Complex eval(const TermList& terms, double t);

// Exact rewrite of a term onto a new anchor (binomial expansion).
TermList reanchor(const ExpPolyTerm& term, double anchor);
TermList reanchor(const TermList& terms, double anchor);

TermList add(TermList a, const TermList& b);
TermList scale(TermList terms, const Complex& c);
// Product; every resulting term is anchored at `anchor`.
TermList mul(const TermList& a, const TermList& b, double anchor);

TermList derivative(const TermList& terms);
// k-fold derivative.
TermList derivative(const TermList& terms, int k);

// Termwise antiderivative, no integration constant chosen (each output term
// keeps its input's anchor; the piecewise layer fixes constants).
TermList antiderivative(const TermList& terms);

// Integral over [lo, hi]. Computed by a cancellation-free panel scheme
// rather than by evaluating the antiderivative at the ends (whose ladder
// coefficients blow up for small rates against high powers).
Complex integral(const TermList& terms, double lo, double hi);

// Re-anchor onto `anchor`, sort by (power, rate), merge terms whose keys
// coincide under `tol`, drop terms with zero coefficient.
TermList canonical(const TermList& terms, double anchor, const Tolerance& tol);

// Largest coefficient magnitude of the canonical form (scale for relative
// comparisons).
double coeff_scale(const TermList& terms);

// Tolerance equality of the functions the two lists denote (both are put on
// the same anchor and compared key by key).
bool equal(const TermList& a, const TermList& b, const Tolerance& tol);

// Exact binomial coefficient as double (arguments stay desk-scale).
double binom(int n, int k);

}  // namespace exppoly
}  // namespace regudist
