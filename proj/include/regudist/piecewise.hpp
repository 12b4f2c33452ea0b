#pragma once

#include <limits>
#include <vector>

#include "regudist/exppoly.hpp"

namespace regudist {

// Open working interval; endpoints may be +-infinity.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    static Interval whole() { return {}; }
    static Interval around(const std::vector<double>& sites, double padding);

    bool contains(double t) const { return t > lo && t < hi; }
    bool finite_lo() const { return lo > -std::numeric_limits<double>::infinity(); }
    bool finite_hi() const { return hi < std::numeric_limits<double>::infinity(); }
    bool same(const Interval& other) const;
    void validate() const;  // lo < hi
};

enum class Side { left, right };

// Piecewise exponential polynomial on an open interval: strictly increasing
// interior breakpoints b_1 < ... < b_n split it into n+1 pieces, each a
// TermList. Values at the breakpoints themselves are not part of the object;
// only one-sided limits are meaningful there.
class PiecewiseFunction {
public:
    PiecewiseFunction() = default;  // zero on the whole line

    static PiecewiseFunction zero(Interval iv);
    static PiecewiseFunction constant(Interval iv, const Complex& c);
    // Heaviside-type step: 0 left of site, 1 right of it.
    static PiecewiseFunction step(Interval iv, double site);
    // Continuous ramp: 0 left of site, (t - site) right of it.
    static PiecewiseFunction ramp(Interval iv, double site);
    // Single piece from a term list.
    static PiecewiseFunction single(Interval iv, TermList terms);
    static PiecewiseFunction from_pieces(Interval iv, std::vector<double> breakpoints,
                                         std::vector<TermList> pieces);

    const Interval& interval() const { return iv_; }
    const std::vector<double>& breakpoints() const { return bps_; }
    const std::vector<TermList>& pieces() const { return pieces_; }

    // Value at t; at a breakpoint this is the right limit by convention.
    Complex eval(double t) const;
    Complex limit(double t, Side side) const;
    // One-sided values of g, g', ..., g^{(k)} at t (k+1 entries).
    std::vector<Complex> one_sided_jet(double t, Side side, int k) const;
    // jump of the order-th a.e. derivative across t: right jet - left jet.
    Complex jump(double t, int order) const;

    bool is_zero(const Tolerance& tol) const;

    PiecewiseFunction differentiate_ae() const;
    // G(t) = integral from t0 to t, continuous across breakpoints, G(t0) = 0.
    PiecewiseFunction antiderivative(double t0) const;
    Complex definite_integral(double u, double v) const;

    // Shared canonical form: per-piece canonical term lists on the piece
    // anchor; breakpoints whose two sides carry the same germ are dropped.
    void canonicalize();

    // Rebuild on a superset of breakpoints (used to align operands).
    PiecewiseFunction resplit(const std::vector<double>& breakpoints) const;

    friend PiecewiseFunction add(const PiecewiseFunction& a, const PiecewiseFunction& b);
    friend PiecewiseFunction mul(const PiecewiseFunction& a, const PiecewiseFunction& b);
    friend PiecewiseFunction scale(PiecewiseFunction a, const Complex& c);

    double piece_anchor(std::size_t i) const;

private:
    std::size_t piece_index(double t, Side side) const;

    Interval iv_ = Interval::whole();
    std::vector<double> bps_;
    std::vector<TermList> pieces_{TermList{}};
};

PiecewiseFunction add(const PiecewiseFunction& a, const PiecewiseFunction& b);
PiecewiseFunction mul(const PiecewiseFunction& a, const PiecewiseFunction& b);
PiecewiseFunction scale(PiecewiseFunction a, const Complex& c);
bool equal(const PiecewiseFunction& a, const PiecewiseFunction& b, const Tolerance& tol);

inline PiecewiseFunction operator+(const PiecewiseFunction& a, const PiecewiseFunction& b) { return add(a, b); }
inline PiecewiseFunction operator-(const PiecewiseFunction& a, const PiecewiseFunction& b) {
    return add(a, scale(b, Complex{-1.0, 0.0}));
}
inline PiecewiseFunction operator*(const PiecewiseFunction& a, const PiecewiseFunction& b) { return mul(a, b); }
inline PiecewiseFunction operator*(const Complex& c, const PiecewiseFunction& a) { return scale(a, c); }
inline PiecewiseFunction operator*(double c, const PiecewiseFunction& a) { return scale(a, Complex{c, 0.0}); }

// Merge two breakpoint lists, deduplicating sites that coincide under the
// breakpoint tolerance.
std::vector<double> merge_breakpoints(const std::vector<double>& a, const std::vector<double>& b);

// Matrix with PiecewiseFunction entries, all sharing one interval and one
// breakpoint set (factories resplit to enforce this).
class PiecewiseMatrix {
public:
    PiecewiseMatrix() = default;
    static PiecewiseMatrix from_entries(std::size_t rows, std::size_t cols,
                                        std::vector<PiecewiseFunction> entries);
    static PiecewiseMatrix constant(Interval iv, std::size_t rows, std::size_t cols,
                                    const std::vector<Complex>& values);
    static PiecewiseMatrix zero(Interval iv, std::size_t rows, std::size_t cols);
    static PiecewiseMatrix identity(Interval iv, std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Interval& interval() const;
    const std::vector<double>& breakpoints() const;

    const PiecewiseFunction& at(std::size_t i, std::size_t j) const;
    // Row-major dense values at t (right-limit convention at breakpoints).
    std::vector<Complex> eval(double t) const;

    // True when every entry is constant on every piece.
    bool piecewise_constant(const Tolerance& tol) const;
    // Constant value of entry (i,j) on piece p (requires piecewise_constant).
    Complex piece_value(std::size_t i, std::size_t j, std::size_t piece) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<PiecewiseFunction> entries_;
};

}  // namespace regudist
