#include "regudist/piecewise.hpp"

#include <algorithm>
#include <cmath>

namespace regudist {

namespace {

// Breakpoints and sites are t-axis values; coincidence is judged on an
// absolute scale (widened a little for large magnitudes).
bool site_close(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

double piece_point(double left, double right) {
    const bool fl = std::isfinite(left), fr = std::isfinite(right);
    if (fl && fr) return 0.5 * (left + right);
    if (fl) return left + 1.0;
    if (fr) return right - 1.0;
    return 0.0;
}

}  // namespace

Interval Interval::around(const std::vector<double>& sites, double padding) {
    if (sites.empty()) return {-padding, padding};
    double lo = sites.front(), hi = sites.front();
    for (double s : sites) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return {lo - padding, hi + padding};
}

bool Interval::same(const Interval& other) const {
    const bool lo_ok = (!finite_lo() && !other.finite_lo()) ||
                       (finite_lo() && other.finite_lo() && site_close(lo, other.lo));
    const bool hi_ok = (!finite_hi() && !other.finite_hi()) ||
                       (finite_hi() && other.finite_hi() && site_close(hi, other.hi));
    return lo_ok && hi_ok;
}

void Interval::validate() const {
    if (!(lo < hi)) throw domain_error("interval: lo must be strictly less than hi");
}

PiecewiseFunction PiecewiseFunction::zero(Interval iv) {
    iv.validate();
    PiecewiseFunction f;
    f.iv_ = iv;
    return f;
}

PiecewiseFunction PiecewiseFunction::constant(Interval iv, const Complex& c) {
    return single(iv, {ExpPolyTerm{c, 0, Complex{0.0, 0.0}, 0.0}});
}

PiecewiseFunction PiecewiseFunction::step(Interval iv, double site) {
    return from_pieces(iv, {site}, {{}, {ExpPolyTerm{Complex{1.0, 0.0}, 0, Complex{0.0, 0.0}, site}}});
}

PiecewiseFunction PiecewiseFunction::ramp(Interval iv, double site) {
    return from_pieces(iv, {site}, {{}, {ExpPolyTerm{Complex{1.0, 0.0}, 1, Complex{0.0, 0.0}, site}}});
}

PiecewiseFunction PiecewiseFunction::single(Interval iv, TermList terms) {
    return from_pieces(iv, {}, {std::move(terms)});
}

PiecewiseFunction PiecewiseFunction::from_pieces(Interval iv, std::vector<double> breakpoints,
                                                 std::vector<TermList> pieces) {
    iv.validate();
    if (pieces.size() != breakpoints.size() + 1)
        throw domain_error("from_pieces: need exactly one more piece than breakpoints");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!iv.contains(breakpoints[i]))
            throw domain_error("from_pieces: breakpoint outside the working interval");
        if (i > 0 && (breakpoints[i] <= breakpoints[i - 1] || site_close(breakpoints[i], breakpoints[i - 1])))
            throw domain_error("from_pieces: breakpoints must be strictly increasing");
    }
    PiecewiseFunction f;
    f.iv_ = iv;
    f.bps_ = std::move(breakpoints);
    f.pieces_ = std::move(pieces);
    f.canonicalize();
    return f;
}

double PiecewiseFunction::piece_anchor(std::size_t i) const {
    const double left = i == 0 ? iv_.lo : bps_[i - 1];
    const double right = i == bps_.size() ? iv_.hi : bps_[i];
    if (std::isfinite(left)) return left;
    if (std::isfinite(right)) return right;
    return 0.0;
}

std::size_t PiecewiseFunction::piece_index(double t, Side side) const {
    std::size_t i = 0;
    for (double b : bps_) {
        if (side == Side::right ? (b < t || site_close(b, t)) : (b < t && !site_close(b, t))) ++i;
    }
    return i;
}

Complex PiecewiseFunction::limit(double t, Side side) const {
    if (!std::isfinite(t)) throw domain_error("limit: site must be finite");
    const bool inside_right = side == Side::right && (t < iv_.hi && !site_close(t, iv_.hi)) &&
                              (t > iv_.lo || site_close(t, iv_.lo));
    const bool inside_left = side == Side::left && (t > iv_.lo && !site_close(t, iv_.lo)) &&
                             (t < iv_.hi || site_close(t, iv_.hi));
    if (!inside_right && !inside_left) throw domain_error("limit: site outside the working interval");
    return exppoly::eval(pieces_[piece_index(t, side)], t);
}

Complex PiecewiseFunction::eval(double t) const {
    if (iv_.finite_hi() && (t > iv_.hi || site_close(t, iv_.hi))) return limit(iv_.hi, Side::left);
    if (iv_.finite_lo() && (t < iv_.lo || site_close(t, iv_.lo))) return limit(iv_.lo, Side::right);
    return exppoly::eval(pieces_[piece_index(t, Side::right)], t);
}

std::vector<Complex> PiecewiseFunction::one_sided_jet(double t, Side side, int k) const {
    if (k < 0) throw domain_error("one_sided_jet: negative order");
    if (!std::isfinite(t)) throw domain_error("one_sided_jet: site must be finite");
    const bool ok = side == Side::right
                        ? (t < iv_.hi && !site_close(t, iv_.hi)) && (t > iv_.lo || site_close(t, iv_.lo))
                        : (t > iv_.lo && !site_close(t, iv_.lo)) && (t < iv_.hi || site_close(t, iv_.hi));
    if (!ok) throw domain_error("one_sided_jet: site outside the working interval");
    TermList terms = pieces_[piece_index(t, side)];
    std::vector<Complex> jet;
    jet.reserve(std::size_t(k) + 1);
    for (int j = 0; j <= k; ++j) {
        jet.push_back(exppoly::eval(terms, t));
        if (j < k) terms = exppoly::derivative(terms);
    }
    return jet;
}

Complex PiecewiseFunction::jump(double t, int order) const {
    return one_sided_jet(t, Side::right, order)[std::size_t(order)] -
           one_sided_jet(t, Side::left, order)[std::size_t(order)];
}

bool PiecewiseFunction::is_zero(const Tolerance& tol) const {
    for (const auto& piece : pieces_)
        for (const auto& term : piece)
            if (!tol.zero(term.coeff)) return false;
    return true;
}

PiecewiseFunction PiecewiseFunction::differentiate_ae() const {
    PiecewiseFunction f = *this;
    for (auto& piece : f.pieces_) piece = exppoly::derivative(piece);
    f.canonicalize();
    return f;
}

PiecewiseFunction PiecewiseFunction::antiderivative(double t0) const {
    if (!std::isfinite(t0)) throw domain_error("antiderivative: t0 must be finite");
    const bool inside = (t0 > iv_.lo || site_close(t0, iv_.lo)) && (t0 < iv_.hi || site_close(t0, iv_.hi));
    if (!inside) throw domain_error("antiderivative: t0 outside the working interval");

    PiecewiseFunction g = *this;
    for (auto& piece : g.pieces_) piece = exppoly::antiderivative(piece);

    // Fix the integration constants: zero at t0, continuous at breakpoints.
    const std::size_t i0 = piece_index(t0, Side::right);
    std::vector<Complex> consts(g.pieces_.size(), Complex{0.0, 0.0});
    consts[i0] = -exppoly::eval(g.pieces_[i0], t0);
    for (std::size_t i = i0 + 1; i < g.pieces_.size(); ++i) {
        const double b = bps_[i - 1];
        consts[i] = exppoly::eval(g.pieces_[i - 1], b) + consts[i - 1] - exppoly::eval(g.pieces_[i], b);
    }
    for (std::size_t i = i0; i-- > 0;) {
        const double b = bps_[i];
        consts[i] = exppoly::eval(g.pieces_[i + 1], b) + consts[i + 1] - exppoly::eval(g.pieces_[i], b);
    }
    for (std::size_t i = 0; i < g.pieces_.size(); ++i) {
        if (consts[i] != Complex{0.0, 0.0})
            g.pieces_[i].push_back(ExpPolyTerm{consts[i], 0, Complex{0.0, 0.0}, g.piece_anchor(i)});
    }
    g.canonicalize();
    return g;
}

Complex PiecewiseFunction::definite_integral(double u, double v) const {
    if (!(u <= v)) throw domain_error("definite_integral: reversed bounds");
    const bool inside = (u > iv_.lo || site_close(u, iv_.lo)) && (v < iv_.hi || site_close(v, iv_.hi));
    if (!inside) throw domain_error("definite_integral: bounds outside the working interval");
    Complex total{0.0, 0.0};
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const double left = i == 0 ? iv_.lo : bps_[i - 1];
        const double right = i == bps_.size() ? iv_.hi : bps_[i];
        const double a = std::max(u, left), b = std::min(v, right);
        if (a < b) total += exppoly::integral(pieces_[i], a, b);
    }
    return total;
}

void PiecewiseFunction::canonicalize() {
    const Tolerance& t = tol();
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        pieces_[i] = exppoly::canonical(pieces_[i], piece_anchor(i), t);
    // Drop breakpoints that separate identical germs. Exact structural
    // comparison of the canonical term lists, so discontinuities of any
    // order survive.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < bps_.size(); ++i) {
            if (exppoly::equal(pieces_[i], pieces_[i + 1], t)) {
                bps_.erase(bps_.begin() + long(i));
                pieces_.erase(pieces_.begin() + long(i + 1));
                for (std::size_t j = 0; j < pieces_.size(); ++j)
                    pieces_[j] = exppoly::canonical(pieces_[j], piece_anchor(j), t);
                changed = true;
                break;
            }
        }
    }
}

PiecewiseFunction PiecewiseFunction::resplit(const std::vector<double>& breakpoints) const {
    PiecewiseFunction f;
    f.iv_ = iv_;
    f.bps_ = breakpoints;
    f.pieces_.assign(breakpoints.size() + 1, TermList{});
    for (std::size_t i = 0; i < f.pieces_.size(); ++i) {
        const double left = i == 0 ? iv_.lo : breakpoints[i - 1];
        const double right = i == breakpoints.size() ? iv_.hi : breakpoints[i];
        const std::size_t src = piece_index(piece_point(left, right), Side::right);
        f.pieces_[i] = exppoly::reanchor(pieces_[src], f.piece_anchor(i));
    }
    return f;
}

std::vector<double> merge_breakpoints(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        double next;
        if (i < a.size() && j < b.size() && site_close(a[i], b[j])) {
            next = a[i];
            ++i, ++j;
        } else if (j >= b.size() || (i < a.size() && a[i] < b[j])) {
            next = a[i++];
        } else {
            next = b[j++];
        }
        if (out.empty() || !site_close(out.back(), next)) out.push_back(next);
    }
    return out;
}

PiecewiseFunction add(const PiecewiseFunction& a, const PiecewiseFunction& b) {
    if (!a.iv_.same(b.iv_)) throw domain_error("add: interval mismatch");
    const std::vector<double> bps = merge_breakpoints(a.bps_, b.bps_);
    PiecewiseFunction ra = a.resplit(bps), rb = b.resplit(bps);
    for (std::size_t i = 0; i < ra.pieces_.size(); ++i)
        ra.pieces_[i] = exppoly::add(std::move(ra.pieces_[i]), rb.pieces_[i]);
    ra.canonicalize();
    return ra;
}

PiecewiseFunction mul(const PiecewiseFunction& a, const PiecewiseFunction& b) {
    if (!a.iv_.same(b.iv_)) throw domain_error("mul: interval mismatch");
    const std::vector<double> bps = merge_breakpoints(a.bps_, b.bps_);
    PiecewiseFunction ra = a.resplit(bps), rb = b.resplit(bps);
    for (std::size_t i = 0; i < ra.pieces_.size(); ++i)
        ra.pieces_[i] = exppoly::mul(ra.pieces_[i], rb.pieces_[i], ra.piece_anchor(i));
    ra.canonicalize();
    return ra;
}

PiecewiseFunction scale(PiecewiseFunction a, const Complex& c) {
    for (auto& piece : a.pieces_) piece = exppoly::scale(std::move(piece), c);
    a.canonicalize();
    return a;
}

bool equal(const PiecewiseFunction& a, const PiecewiseFunction& b, const Tolerance& tol) {
    if (!a.interval().same(b.interval())) return false;
    const std::vector<double> bps = merge_breakpoints(a.breakpoints(), b.breakpoints());
    PiecewiseFunction ra = a.resplit(bps), rb = b.resplit(bps);
    for (std::size_t i = 0; i < ra.pieces().size(); ++i)
        if (!exppoly::equal(ra.pieces()[i], rb.pieces()[i], tol)) return false;
    return true;
}

PiecewiseMatrix PiecewiseMatrix::from_entries(std::size_t rows, std::size_t cols,
                                              std::vector<PiecewiseFunction> entries) {
    if (entries.size() != rows * cols) throw domain_error("PiecewiseMatrix: wrong entry count");
    if (entries.empty()) throw domain_error("PiecewiseMatrix: empty shape");
    std::vector<double> bps;
    for (const auto& e : entries) {
        if (!e.interval().same(entries.front().interval()))
            throw domain_error("PiecewiseMatrix: interval mismatch among entries");
        bps = merge_breakpoints(bps, e.breakpoints());
    }
    PiecewiseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.entries_.reserve(entries.size());
    for (const auto& e : entries) m.entries_.push_back(e.resplit(bps));
    return m;
}

PiecewiseMatrix PiecewiseMatrix::constant(Interval iv, std::size_t rows, std::size_t cols,
                                          const std::vector<Complex>& values) {
    if (values.size() != rows * cols) throw domain_error("PiecewiseMatrix: wrong value count");
    std::vector<PiecewiseFunction> entries;
    entries.reserve(values.size());
    for (const auto& v : values) entries.push_back(PiecewiseFunction::constant(iv, v));
    return from_entries(rows, cols, std::move(entries));
}

PiecewiseMatrix PiecewiseMatrix::zero(Interval iv, std::size_t rows, std::size_t cols) {
    return constant(iv, rows, cols, std::vector<Complex>(rows * cols, Complex{0.0, 0.0}));
}

PiecewiseMatrix PiecewiseMatrix::identity(Interval iv, std::size_t n) {
    std::vector<Complex> v(n * n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = Complex{1.0, 0.0};
    return constant(iv, n, n, v);
}

const Interval& PiecewiseMatrix::interval() const {
    if (entries_.empty()) throw domain_error("PiecewiseMatrix: empty");
    return entries_.front().interval();
}

const std::vector<double>& PiecewiseMatrix::breakpoints() const {
    if (entries_.empty()) throw domain_error("PiecewiseMatrix: empty");
    return entries_.front().breakpoints();
}

const PiecewiseFunction& PiecewiseMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw domain_error("PiecewiseMatrix: index out of range");
    return entries_[i * cols_ + j];
}

std::vector<Complex> PiecewiseMatrix::eval(double t) const {
    std::vector<Complex> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.eval(t));
    return out;
}

bool PiecewiseMatrix::piecewise_constant(const Tolerance& tol) const {
    for (const auto& e : entries_)
        for (const auto& piece : e.pieces())
            for (const auto& term : piece)
                if (term.power != 0 || !tol.zero(term.rate)) return false;
    return true;
}

Complex PiecewiseMatrix::piece_value(std::size_t i, std::size_t j, std::size_t piece) const {
    const auto& terms = at(i, j).pieces().at(piece);
    Complex v{0.0, 0.0};
    for (const auto& term : terms) {
        if (term.power != 0 || !tol().zero(term.rate))
            throw precondition_error("piece_value: entry not constant on this piece");
        v += term.coeff;
    }
    return v;
}

}  // namespace regudist
