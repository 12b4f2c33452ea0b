#include "regudist/exppoly.hpp"

#include <algorithm>
#include <cmath>

namespace regudist {

Config& config() {
    static Config cfg;
    return cfg;
}

namespace exppoly {

namespace {

bool rate_is_zero(const Complex& r) {
    // Rates are structural keys; an exactly-zero rate selects the polynomial
    // integration branch. Tiny nonzero rates are legal but never produced by
    // the library itself, so exact comparison is right here.
    return r.real() == 0.0 && r.imag() == 0.0;
}

}  // namespace

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

Complex eval(const ExpPolyTerm& term, double t) {
    const double s = t - term.anchor;
    Complex v = term.coeff;
    for (int i = 0; i < term.power; ++i) v *= s;
    if (!rate_is_zero(term.rate)) v *= std::exp(term.rate * s);
    return v;
}

Complex eval(const TermList& terms, double t) {
    Complex v{0.0, 0.0};
    for (const auto& term : terms) v += eval(term, t);
    return v;
}

TermList reanchor(const ExpPolyTerm& term, double anchor) {
    if (term.anchor == anchor) return {term};
    // t - old = (t - new) + d with d = new - old... careful with orientation:
    // s_old = t - a_old = (t - a_new) + (a_new - a_old) = s_new + d.
    const double d = anchor - term.anchor;
    const Complex efac = rate_is_zero(term.rate) ? Complex{1.0, 0.0} : std::exp(term.rate * d);
    TermList out;
    out.reserve(std::size_t(term.power) + 1);
    for (int j = 0; j <= term.power; ++j) {
        ExpPolyTerm t2;
        t2.coeff = term.coeff * efac * binom(term.power, j) * std::pow(d, term.power - j);
        t2.power = j;
        t2.rate = term.rate;
        t2.anchor = anchor;
        out.push_back(t2);
    }
    return out;
}

TermList reanchor(const TermList& terms, double anchor) {
    TermList out;
    for (const auto& term : terms) {
        TermList r = reanchor(term, anchor);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

TermList add(TermList a, const TermList& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

TermList scale(TermList terms, const Complex& c) {
    for (auto& term : terms) term.coeff *= c;
    return terms;
}

TermList mul(const TermList& a, const TermList& b, double anchor) {
    TermList ra = reanchor(a, anchor);
    TermList rb = reanchor(b, anchor);
    TermList out;
    out.reserve(ra.size() * rb.size());
    for (const auto& ta : ra)
        for (const auto& tb : rb) {
            ExpPolyTerm t;
            t.coeff = ta.coeff * tb.coeff;
            t.power = ta.power + tb.power;
            t.rate = ta.rate + tb.rate;
            t.anchor = anchor;
            out.push_back(t);
        }
    return out;
}

TermList derivative(const TermList& terms) {
    TermList out;
    for (const auto& term : terms) {
        if (term.power > 0) {
            ExpPolyTerm t = term;
            t.coeff *= double(term.power);
            t.power -= 1;
            out.push_back(t);
        }
        if (!rate_is_zero(term.rate)) {
            ExpPolyTerm t = term;
            t.coeff *= term.rate;
            out.push_back(t);
        }
    }
    return out;
}

TermList derivative(const TermList& terms, int k) {
    TermList out = terms;
    for (int i = 0; i < k; ++i) out = derivative(out);
    return out;
}

namespace {

// Antiderivative of one term, same anchor. For rate != 0 the classic
// integration-by-parts ladder:  ∫ s^p e^{rs} ds = e^{rs} Σ_{j<=p} (-1)^j p!/(p-j)! s^{p-j} / r^{j+1}.
TermList antiderivative_term(const ExpPolyTerm& term) {
    TermList out;
    if (rate_is_zero(term.rate)) {
        ExpPolyTerm t = term;
        t.power += 1;
        t.coeff /= double(t.power);
        out.push_back(t);
        return out;
    }
    double fall = 1.0;  // p! / (p-j)!
    Complex rpow = term.rate;
    double sign = 1.0;
    for (int j = 0; j <= term.power; ++j) {
        ExpPolyTerm t = term;
        t.power = term.power - j;
        t.coeff = term.coeff * sign * fall / rpow;
        out.push_back(t);
        fall *= double(term.power - j);
        rpow *= term.rate;
        sign = -sign;
    }
    return out;
}

}  // namespace

TermList antiderivative(const TermList& terms) {
    TermList out;
    for (const auto& term : terms) {
        TermList a = antiderivative_term(term);
        out.insert(out.end(), a.begin(), a.end());
    }
    return out;
}

namespace {

// integral of x^k e^{r x} over the symmetric panel [-h, h]. Power series in
// r; odd moments vanish, the rest decay factorially once |r h| <= 1/2, so
// there is no cancellation at that panel size.
Complex panel_moment(int k, const Complex& r, double h) {
    Complex sum{0.0, 0.0};
    Complex rn{1.0, 0.0};  // r^n / n!
    for (int n = 0; n <= 60; ++n) {
        if ((k + n) % 2 == 0) {
            const double moment = 2.0 * std::pow(h, k + n + 1) / (k + n + 1);
            const Complex inc = rn * moment;
            sum += inc;
            if (n > 0 && std::abs(inc) <= 1e-18 * std::abs(sum)) break;
        }
        rn *= r / double(n + 1);
    }
    return sum;
}

// integral of s^p e^{r s} over [a, b] (anchored coordinates). Evaluating the
// closed-form antiderivative at the two ends cancels catastrophically when
// |r| is small against the power (its coefficients grow like p!/r^{p+1}), so
// integrate directly instead: split until |r| * panel <= 1 and expand the
// power about each panel midpoint.
Complex term_integral(int p, const Complex& r, double a, double b) {
    const double len = b - a;
    if (!(len > 0.0)) return {0.0, 0.0};
    const int panels = std::clamp(1 + int(std::abs(r) * len), 1, 4096);
    Complex total{0.0, 0.0};
    for (int i = 0; i < panels; ++i) {
        const double u = a + len * i / panels;
        const double v = a + len * (i + 1) / panels;
        const double m = 0.5 * (u + v), h = 0.5 * (v - u);
        Complex inner{0.0, 0.0};
        for (int k = 0; k <= p; ++k)
            inner += binom(p, k) * std::pow(m, p - k) * panel_moment(k, r, h);
        total += std::exp(r * m) * inner;
    }
    return total;
}

}  // namespace

Complex integral(const TermList& terms, double lo, double hi) {
    if (lo > hi) throw domain_error("integral: reversed bounds");
    Complex total{0.0, 0.0};
    for (const auto& term : terms)
        total += term.coeff * term_integral(term.power, term.rate, lo - term.anchor, hi - term.anchor);
    return total;
}

TermList canonical(const TermList& terms, double anchor, const Tolerance& tol) {
    TermList list = reanchor(terms, anchor);
    std::sort(list.begin(), list.end(), [](const ExpPolyTerm& a, const ExpPolyTerm& b) {
        if (a.power != b.power) return a.power < b.power;
        if (a.rate.real() != b.rate.real()) return a.rate.real() < b.rate.real();
        return a.rate.imag() < b.rate.imag();
    });
    TermList out;
    for (const auto& term : list) {
        if (!out.empty() && out.back().power == term.power && tol.close(out.back().rate, term.rate)) {
            out.back().coeff += term.coeff;
        } else {
            out.push_back(term);
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const ExpPolyTerm& t) { return t.coeff == Complex{0.0, 0.0}; }),
              out.end());
    return out;
}

double coeff_scale(const TermList& terms) {
    double m = 0.0;
    for (const auto& term : terms) m = std::max(m, std::abs(term.coeff));
    return m;
}

bool equal(const TermList& a, const TermList& b, const Tolerance& tol) {
    const double anchor = a.empty() ? (b.empty() ? 0.0 : b.front().anchor) : a.front().anchor;
    TermList ca = canonical(a, anchor, tol);
    TermList cb = canonical(b, anchor, tol);
    const double scale = std::max(coeff_scale(ca), coeff_scale(cb));
    std::size_t i = 0, j = 0;
    while (i < ca.size() || j < cb.size()) {
        const bool same_key = i < ca.size() && j < cb.size() && ca[i].power == cb[j].power &&
                              tol.close(ca[i].rate, cb[j].rate);
        if (same_key) {
            if (!tol.zero(ca[i].coeff - cb[j].coeff, scale)) return false;
            ++i, ++j;
            continue;
        }
        // keys diverge: the lesser key exists on one side only, its
        // coefficient must be negligible
        auto key_less = [&](const ExpPolyTerm& x, const ExpPolyTerm& y) {
            if (x.power != y.power) return x.power < y.power;
            if (x.rate.real() != y.rate.real()) return x.rate.real() < y.rate.real();
            return x.rate.imag() < y.rate.imag();
        };
        if (j >= cb.size() || (i < ca.size() && key_less(ca[i], cb[j]))) {
            if (!tol.zero(ca[i].coeff, scale)) return false;
            ++i;
        } else {
            if (!tol.zero(cb[j].coeff, scale)) return false;
            ++j;
        }
    }
    return true;
}

}  // namespace exppoly
}  // namespace regudist
