#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "regudist/calculus.hpp"

namespace regudist {

// Expression language over distributions.
//
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := primary ('^' UINT)?
//   primary := NUMBER ['i'] | 'i' | 't' | '(' expr ')' | '-' primary
//            | theta(SITE) | ramp(SITE) | exp(expr)
//            | delta(SITE [; alpha=COMPLEX] [; order=UINT])
//            | deltaplus(SITE [; order=UINT])
//            | deltaminus(SITE [; order=UINT])
//            | jump(SITE [; order=UINT])
//
// theta is the unit step, ramp its primitive, delta the unit point mass
// (deltaplus/deltaminus pin the split to the right/left side), jump the unit
// two-sided jump annihilating classical arguments. A minus directly in front
// of a numeric literal folds into it; otherwise unary minus binds tighter
// than '^', so -a^2 squares -a. Products may contain at most one singular
// factor, and exp takes piecewise affine classical arguments only.

struct Expr {
    enum class Kind {
        number,
        time,
        add,
        sub,
        neg,
        mul,
        pow,
        exp_fn,
        theta,
        ramp,
        delta,
        delta_plus,
        delta_minus,
        jump_fn,
    };

    Kind kind = Kind::number;
    Complex value{0.0, 0.0};  // number
    double site = 0.0;        // theta/ramp/delta*/jump
    Complex alpha{0.0, 0.0};  // delta with an explicit alpha
    bool has_alpha = false;
    int order = 0;            // delta*/jump order, pow exponent
    std::vector<Expr> kids;   // operands
};

// Structural equality with exact numeric comparison.
bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

// Throws parse_error (with the offending offset) on bad input.
Expr parse_expression(std::string_view src);

// Prints a tree the parser produced so that parsing it again gives the same
// tree back.
std::string print_expression(const Expr& e);

// Breakpoint and atom sites mentioned by the expression, sorted, deduplicated.
std::vector<double> expression_sites(const Expr& e);

// Hull of the expression's sites padded by config().interval_padding; the
// fallback for site-free expressions is (-1, 1).
Interval natural_interval(const Expr& e);

Distribution evaluate(const Expr& e, const Interval& iv);
Distribution evaluate(const Expr& e);  // on natural_interval(e)

// Shortest numeric literal that parses back to the same value.
std::string format_number(double x);
std::string format_number(const Complex& z);

// Render values back into the language: the regular part as pieces switched
// by theta factors, atoms through delta/deltaplus/deltaminus/jump. Evaluating
// the printed expression on the same interval reproduces the value up to
// tolerance.
std::string format_piecewise(const PiecewiseFunction& f);
std::string format_distribution(const Distribution& f);

}  // namespace regudist
