#include "regudist/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <utility>

namespace regudist {

namespace {

// ---- lexing ----

struct Token {
    enum class Kind { number, ident, punct, end };
    Kind kind = Kind::end;
    double num = 0.0;
    std::string ident;
    char punct = 0;
    std::size_t pos = 0;
};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < src_.size() && (src_[i_] == ' ' || src_[i_] == '\t' || src_[i_] == '\n' || src_[i_] == '\r'))
            ++i_;
        tok_ = Token{};
        tok_.pos = i_;
        if (i_ >= src_.size()) return;
        const char c = src_[i_];
        if (digit(c) || (c == '.' && i_ + 1 < src_.size() && digit(src_[i_ + 1]))) {
            lex_number();
        } else if (ident_start(c)) {
            std::size_t j = i_;
            while (j < src_.size() && ident_char(src_[j])) ++j;
            tok_.kind = Token::Kind::ident;
            tok_.ident.assign(src_.substr(i_, j - i_));
            i_ = j;
        } else if (c == '+' || c == '-' || c == '*' || c == '^' || c == '(' || c == ')' || c == ';' ||
                   c == '=') {
            tok_.kind = Token::Kind::punct;
            tok_.punct = c;
            ++i_;
        } else {
            throw parse_error("unexpected character", i_);
        }
    }

    void lex_number() {
        std::size_t j = i_;
        while (j < src_.size() && digit(src_[j])) ++j;
        if (j < src_.size() && src_[j] == '.') {
            ++j;
            while (j < src_.size() && digit(src_[j])) ++j;
        }
        if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
            std::size_t k = j + 1;
            if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
            if (k < src_.size() && digit(src_[k])) {
                while (k < src_.size() && digit(src_[k])) ++k;
                j = k;
            }
        }
        double v = 0.0;
        const auto res = std::from_chars(src_.data() + i_, src_.data() + j, v);
        if (res.ec != std::errc{} || res.ptr != src_.data() + j)
            throw parse_error("malformed number", i_);
        tok_.kind = Token::Kind::number;
        tok_.num = v;
        i_ = j;
    }

    std::string_view src_;
    std::size_t i_ = 0;
    Token tok_;
};

// ---- parsing ----

Expr make_node(Expr::Kind kind) {
    Expr e;
    e.kind = kind;
    return e;
}

Expr make_number(const Complex& v) {
    Expr e;
    e.kind = Expr::Kind::number;
    e.value = v;
    return e;
}

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    Expr parse() {
        Expr e = expr();
        if (lex_.peek().kind != Token::Kind::end)
            throw parse_error("unexpected trailing input", lex_.peek().pos);
        return e;
    }

private:
    bool at_punct(char c) const {
        return lex_.peek().kind == Token::Kind::punct && lex_.peek().punct == c;
    }

    void expect(char c, const char* what) {
        if (!at_punct(c)) throw parse_error(std::string("expected ") + what, lex_.peek().pos);
        lex_.take();
    }

    Expr expr() {
        Expr left = term();
        while (at_punct('+') || at_punct('-')) {
            const char op = lex_.take().punct;
            Expr node = make_node(op == '+' ? Expr::Kind::add : Expr::Kind::sub);
            node.kids.push_back(std::move(left));
            node.kids.push_back(term());
            left = std::move(node);
        }
        return left;
    }

    Expr term() {
        Expr left = factor();
        while (at_punct('*')) {
            lex_.take();
            Expr node = make_node(Expr::Kind::mul);
            node.kids.push_back(std::move(left));
            node.kids.push_back(factor());
            left = std::move(node);
        }
        return left;
    }

    Expr factor() {
        Expr base = primary();
        if (at_punct('^')) {
            lex_.take();
            Expr node = make_node(Expr::Kind::pow);
            node.order = take_uint("exponent");
            node.kids.push_back(std::move(base));
            return node;
        }
        return base;
    }

    Expr primary() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::number) return number_literal(1.0);
        if (t.kind == Token::Kind::punct && t.punct == '-') {
            lex_.take();
            // a minus immediately in front of a literal folds into it
            if (lex_.peek().kind == Token::Kind::number) return number_literal(-1.0);
            Expr node = make_node(Expr::Kind::neg);
            node.kids.push_back(primary());
            return node;
        }
        if (t.kind == Token::Kind::punct && t.punct == '(') {
            lex_.take();
            Expr inner = expr();
            expect(')', "')'");
            return inner;
        }
        if (t.kind == Token::Kind::ident) return named();
        throw parse_error("expected an expression", t.pos);
    }

    Expr number_literal(double sign) {
        const Token t = lex_.take();
        const double v = sign * t.num;
        if (lex_.peek().kind == Token::Kind::ident && lex_.peek().ident == "i") {
            lex_.take();
            return make_number({0.0, v});
        }
        return make_number({v, 0.0});
    }

    Expr named() {
        const Token t = lex_.take();
        const std::string& name = t.ident;
        if (name == "t") return make_node(Expr::Kind::time);
        if (name == "i") return make_number({0.0, 1.0});
        if (name == "theta") return site_call(Expr::Kind::theta, false, false);
        if (name == "ramp") return site_call(Expr::Kind::ramp, false, false);
        if (name == "delta") return site_call(Expr::Kind::delta, true, true);
        if (name == "deltaplus") return site_call(Expr::Kind::delta_plus, false, true);
        if (name == "deltaminus") return site_call(Expr::Kind::delta_minus, false, true);
        if (name == "jump") return site_call(Expr::Kind::jump_fn, false, true);
        if (name == "exp") {
            expect('(', "'('");
            Expr node = make_node(Expr::Kind::exp_fn);
            node.kids.push_back(expr());
            expect(')', "')'");
            return node;
        }
        throw parse_error("unknown name '" + name + "'", t.pos);
    }

    Expr site_call(Expr::Kind kind, bool allow_alpha, bool allow_order) {
        Expr node = make_node(kind);
        expect('(', "'('");
        node.site = take_site();
        while (at_punct(';')) {
            lex_.take();
            if (lex_.peek().kind != Token::Kind::ident)
                throw parse_error("expected an argument name", lex_.peek().pos);
            const Token name = lex_.take();
            expect('=', "'='");
            if (allow_alpha && name.ident == "alpha") {
                node.alpha = take_complex_literal();
                node.has_alpha = true;
            } else if (allow_order && name.ident == "order") {
                node.order = take_uint("order");
            } else {
                throw parse_error("unknown argument '" + name.ident + "'", name.pos);
            }
        }
        expect(')', "')'");
        return node;
    }

    double take_site() {
        double sign = 1.0;
        if (at_punct('-')) {
            lex_.take();
            sign = -1.0;
        } else if (at_punct('+')) {
            lex_.take();
        }
        if (lex_.peek().kind != Token::Kind::number)
            throw parse_error("expected a site", lex_.peek().pos);
        return sign * lex_.take().num;
    }

    int take_uint(const char* what) {
        const Token t = lex_.peek();
        if (t.kind != Token::Kind::number)
            throw parse_error(std::string("expected ") + what, t.pos);
        lex_.take();
        if (t.num < 0.0 || t.num != std::floor(t.num) || t.num > 1e6)
            throw parse_error(std::string(what) + " must be a small nonnegative integer", t.pos);
        return static_cast<int>(t.num);
    }

    // [sign] (NUM ['i'] | 'i') [('+'|'-') (NUM 'i' | 'i')]
    Complex take_complex_literal() {
        const std::size_t pos = lex_.peek().pos;
        auto part = [&](double sign) -> std::pair<double, bool> {
            if (lex_.peek().kind == Token::Kind::ident && lex_.peek().ident == "i") {
                lex_.take();
                return {sign, true};
            }
            if (lex_.peek().kind != Token::Kind::number)
                throw parse_error("expected a number", lex_.peek().pos);
            const double v = sign * lex_.take().num;
            if (lex_.peek().kind == Token::Kind::ident && lex_.peek().ident == "i") {
                lex_.take();
                return {v, true};
            }
            return {v, false};
        };
        double sign = 1.0;
        if (at_punct('-')) {
            lex_.take();
            sign = -1.0;
        } else if (at_punct('+')) {
            lex_.take();
        }
        const auto [v1, imag1] = part(sign);
        Complex out = imag1 ? Complex{0.0, v1} : Complex{v1, 0.0};
        if (at_punct('+') || at_punct('-')) {
            const double s2 = lex_.take().punct == '+' ? 1.0 : -1.0;
            const auto [v2, imag2] = part(s2);
            if (imag1 == imag2) throw parse_error("malformed complex literal", pos);
            out += imag2 ? Complex{0.0, v2} : Complex{v2, 0.0};
        }
        return out;
    }

    Lexer lex_;
};

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
    switch (a.kind) {
        case Expr::Kind::number:
            if (!(a.value == b.value)) return false;
            break;
        case Expr::Kind::theta:
        case Expr::Kind::ramp:
            if (a.site != b.site) return false;
            break;
        case Expr::Kind::delta:
            if (a.site != b.site || a.has_alpha != b.has_alpha || a.order != b.order) return false;
            if (a.has_alpha && !(a.alpha == b.alpha)) return false;
            break;
        case Expr::Kind::delta_plus:
        case Expr::Kind::delta_minus:
        case Expr::Kind::jump_fn:
            if (a.site != b.site || a.order != b.order) return false;
            break;
        case Expr::Kind::pow:
            if (a.order != b.order) return false;
            break;
        default:
            break;
    }
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!(a.kids[i] == b.kids[i])) return false;
    return true;
}

Expr parse_expression(std::string_view src) { return Parser(src).parse(); }

// ---- printing ----

std::string format_number(double x) {
    if (!std::isfinite(x)) throw domain_error("format_number: value is not finite");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_number(const Complex& z) {
    if (z.imag() == 0.0) return format_number(z.real());
    if (z.real() == 0.0) return format_number(z.imag()) + "i";
    std::string out = format_number(z.real());
    out += z.imag() < 0.0 ? " - " : " + ";
    out += format_number(std::abs(z.imag()));
    out += 'i';
    return out;
}

namespace {

// grammar level: 1 sums, 2 products, 3 powers, 4 primaries
int print_level(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::add:
        case Expr::Kind::sub:
            return 1;
        case Expr::Kind::mul:
            return 2;
        case Expr::Kind::pow:
            return 3;
        default:
            return 4;
    }
}

std::string print_node(const Expr& e);

std::string print_wrapped(const Expr& e, int min_level) {
    std::string s = print_node(e);
    if (print_level(e) < min_level) return "(" + s + ")";
    return s;
}

std::string print_number_node(const Complex& v) {
    if (v.imag() == 0.0) return format_number(v.real());
    if (v.real() == 0.0) return format_number(v.imag()) + "i";
    // the parser never produces a mixed literal in one node; print a value
    // equivalent anyway
    return "(" + format_number(v) + ")";
}

std::string print_complex_literal(const Complex& v) {
    if (v.imag() == 0.0) return format_number(v.real());
    std::string out;
    if (v.real() != 0.0) {
        out += format_number(v.real());
        if (v.imag() >= 0.0) out += '+';
    }
    out += format_number(v.imag());
    out += 'i';
    return out;
}

std::string print_site_call(const char* name, const Expr& e, bool with_alpha) {
    std::string out = name;
    out += '(';
    out += format_number(e.site);
    if (with_alpha && e.has_alpha) {
        out += "; alpha=";
        out += print_complex_literal(e.alpha);
    }
    if (e.order != 0) {
        out += "; order=";
        out += std::to_string(e.order);
    }
    out += ')';
    return out;
}

std::string print_node(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::number:
            return print_number_node(e.value);
        case Expr::Kind::time:
            return "t";
        case Expr::Kind::add:
            return print_wrapped(e.kids[0], 1) + " + " + print_wrapped(e.kids[1], 2);
        case Expr::Kind::sub:
            return print_wrapped(e.kids[0], 1) + " - " + print_wrapped(e.kids[1], 2);
        case Expr::Kind::mul:
            return print_wrapped(e.kids[0], 2) + "*" + print_wrapped(e.kids[1], 3);
        case Expr::Kind::pow:
            return print_wrapped(e.kids[0], 4) + "^" + std::to_string(e.order);
        case Expr::Kind::neg:
            return "-" + print_wrapped(e.kids[0], 4);
        case Expr::Kind::exp_fn:
            return "exp(" + print_node(e.kids[0]) + ")";
        case Expr::Kind::theta:
            return print_site_call("theta", e, false);
        case Expr::Kind::ramp:
            return print_site_call("ramp", e, false);
        case Expr::Kind::delta:
            return print_site_call("delta", e, true);
        case Expr::Kind::delta_plus:
            return print_site_call("deltaplus", e, false);
        case Expr::Kind::delta_minus:
            return print_site_call("deltaminus", e, false);
        case Expr::Kind::jump_fn:
            return print_site_call("jump", e, false);
    }
    throw domain_error("print_expression: unknown node");
}

}  // namespace

std::string print_expression(const Expr& e) { return print_node(e); }

// ---- interval inference ----

namespace {

void collect_sites(const Expr& e, std::vector<double>& out) {
    switch (e.kind) {
        case Expr::Kind::theta:
        case Expr::Kind::ramp:
        case Expr::Kind::delta:
        case Expr::Kind::delta_plus:
        case Expr::Kind::delta_minus:
        case Expr::Kind::jump_fn:
            out.push_back(e.site);
            break;
        default:
            break;
    }
    for (const Expr& kid : e.kids) collect_sites(kid, out);
}

}  // namespace

std::vector<double> expression_sites(const Expr& e) {
    std::vector<double> out;
    collect_sites(e, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Interval natural_interval(const Expr& e) {
    const std::vector<double> sites = expression_sites(e);
    if (sites.empty()) return Interval{-1.0, 1.0};
    const double pad = config().interval_padding;
    return Interval{sites.front() - pad, sites.back() + pad};
}

// ---- evaluation ----

namespace {

Distribution mul_dist(const Distribution& a, const Distribution& b) {
    if (!a.has_atoms()) return multiply(a.regular(), b);
    if (!b.has_atoms()) return multiply(b.regular(), a);
    throw domain_error("product of two singular expressions");
}

PiecewiseFunction exp_piecewise(const PiecewiseFunction& g) {
    std::vector<TermList> out;
    for (std::size_t i = 0; i < g.pieces().size(); ++i) {
        const double anchor = g.piece_anchor(i);
        Complex c0{0.0, 0.0}, c1{0.0, 0.0};
        for (const ExpPolyTerm& term : g.pieces()[i]) {
            if (!tol().zero(term.rate) || term.power > 1)
                throw domain_error("exp: argument must be piecewise affine");
            for (const ExpPolyTerm& rt : exppoly::reanchor(term, anchor)) {
                if (rt.power == 0)
                    c0 += rt.coeff;
                else
                    c1 += rt.coeff;
            }
        }
        out.push_back(TermList{ExpPolyTerm{std::exp(c0), 0, c1, anchor}});
    }
    return PiecewiseFunction::from_pieces(g.interval(), g.breakpoints(), std::move(out));
}

}  // namespace

Distribution evaluate(const Expr& e, const Interval& iv) {
    switch (e.kind) {
        case Expr::Kind::number:
            return Distribution(PiecewiseFunction::constant(iv, e.value));
        case Expr::Kind::time:
            return Distribution(
                PiecewiseFunction::single(iv, {ExpPolyTerm{{1.0, 0.0}, 1, {0.0, 0.0}, 0.0}}));
        case Expr::Kind::add:
            return evaluate(e.kids[0], iv) + evaluate(e.kids[1], iv);
        case Expr::Kind::sub:
            return evaluate(e.kids[0], iv) + scale(evaluate(e.kids[1], iv), Complex{-1.0, 0.0});
        case Expr::Kind::neg:
            return scale(evaluate(e.kids[0], iv), Complex{-1.0, 0.0});
        case Expr::Kind::mul:
            return mul_dist(evaluate(e.kids[0], iv), evaluate(e.kids[1], iv));
        case Expr::Kind::pow: {
            if (e.order == 0) return Distribution(PiecewiseFunction::constant(iv, {1.0, 0.0}));
            Distribution base = evaluate(e.kids[0], iv);
            Distribution out = base;
            for (int k = 1; k < e.order; ++k) out = mul_dist(out, base);
            return out;
        }
        case Expr::Kind::exp_fn: {
            const Distribution arg = evaluate(e.kids[0], iv);
            if (arg.has_atoms()) throw domain_error("exp of a singular expression");
            return Distribution(exp_piecewise(arg.regular()));
        }
        case Expr::Kind::theta:
            return Distribution(PiecewiseFunction::step(iv, e.site));
        case Expr::Kind::ramp:
            return Distribution(PiecewiseFunction::ramp(iv, e.site));
        case Expr::Kind::delta: {
            const Complex alpha = e.has_alpha ? e.alpha : config().default_alpha;
            return Distribution::from_atoms(iv, {delta_atom(e.site, {1.0, 0.0}, alpha, e.order)});
        }
        case Expr::Kind::delta_plus:
            return Distribution::from_atoms(iv, {delta_atom(e.site, {1.0, 0.0}, {1.0, 0.0}, e.order)});
        case Expr::Kind::delta_minus:
            return Distribution::from_atoms(iv, {delta_atom(e.site, {1.0, 0.0}, {0.0, 0.0}, e.order)});
        case Expr::Kind::jump_fn:
            return Distribution::from_atoms(iv, {jump_atom(e.site, {1.0, 0.0}, e.order)});
    }
    throw domain_error("evaluate: unknown node");
}

Distribution evaluate(const Expr& e) { return evaluate(e, natural_interval(e)); }

// ---- value printing ----

namespace {

// The value printer guarantees tolerance-level fidelity only (it already
// drops tolerance-level terms), so it shows 15 significant digits (muting
// last-ulp noise such as eigenvalues a hair off 1) and zeroes component
// noise far below each coefficient's own magnitude. The exact term data
// lives in the JSON records, not here.
std::string display_number(double v) {
    if (v == 0.0) return "0";
    if (!std::isfinite(v)) throw domain_error("format: value is not finite");
    char buf[48];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
    return std::string(buf, r.ptr);
}

Complex clean_components(const Complex& c) {
    const double mag = std::abs(c);
    Complex out = c;
    if (std::abs(out.imag()) <= tol().rel * mag) out.imag(0.0);
    if (std::abs(out.real()) <= tol().rel * mag) out.real(0.0);
    return out;
}

std::string display_literal(const Complex& z0) {
    const Complex z = clean_components(z0);
    if (z.imag() == 0.0) return display_number(z.real());
    std::string out;
    if (z.real() != 0.0) {
        out += display_number(z.real());
        if (z.imag() >= 0.0) out += '+';
    }
    out += display_number(z.imag());
    out += 'i';
    return out;
}

// numeric factor usable on the left of '*'
std::string display_factor(const Complex& z0) {
    const Complex z = clean_components(z0);
    if (z.imag() == 0.0) return display_number(z.real());
    if (z.real() == 0.0) return display_number(z.imag()) + "i";
    return "(" + display_literal(z) + ")";
}

std::string time_shift_string(double anchor) {
    if (anchor == 0.0) return "t";
    if (anchor > 0.0) return "(t - " + display_number(anchor) + ")";
    return "(t + " + display_number(-anchor) + ")";
}

std::string term_string(const ExpPolyTerm& term) {
    std::vector<std::string> parts;
    if (term.power >= 1) {
        std::string p = time_shift_string(term.anchor);
        if (term.power >= 2) p += "^" + std::to_string(term.power);
        parts.push_back(std::move(p));
    }
    if (clean_components(term.rate) != Complex{0.0, 0.0}) {
        const std::string shift = time_shift_string(term.anchor);
        const std::string rate = display_factor(term.rate);
        std::string arg;
        if (rate == "1") {
            arg = shift;
        } else if (rate == "-1") {
            arg = "-" + shift;
        } else {
            arg = rate + "*" + shift;
        }
        parts.push_back("exp(" + arg + ")");
    }
    std::string out;
    if (parts.empty()) return display_factor(term.coeff);
    const std::string coeff = display_factor(term.coeff);
    if (coeff != "1") out = coeff + "*";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "*";
        out += parts[i];
    }
    return out;
}

// terms joined into one expression item, switched by an optional theta gate
void append_terms_item(std::vector<std::string>& items, const TermList& raw, double anchor,
                       const std::string& gate) {
    TermList terms = exppoly::canonical(raw, anchor, tol());
    const double scale = exppoly::coeff_scale(terms);
    TermList kept;
    for (const ExpPolyTerm& t : terms)
        if (!tol().zero(t.coeff, scale)) kept.push_back(t);
    if (kept.empty()) return;
    std::string body = term_string(kept[0]);
    for (std::size_t i = 1; i < kept.size(); ++i) body += " + " + term_string(kept[i]);
    if (gate.empty()) {
        items.push_back(std::move(body));
    } else if (kept.size() == 1) {
        items.push_back(body == "1" ? gate : body + "*" + gate);
    } else {
        items.push_back("(" + body + ")*" + gate);
    }
}

std::vector<std::string> piecewise_items(const PiecewiseFunction& f) {
    std::vector<std::string> items;
    const std::vector<double>& bps = f.breakpoints();
    const TermList& base = f.pieces()[0];
    append_terms_item(items, base, base.empty() ? 0.0 : base.front().anchor, "");
    for (std::size_t i = 0; i < bps.size(); ++i) {
        const TermList step =
            exppoly::add(f.pieces()[i + 1], exppoly::scale(f.pieces()[i], {-1.0, 0.0}));
        append_terms_item(items, step, bps[i], "theta(" + display_number(bps[i]) + ")");
    }
    return items;
}

void append_atom_items(std::vector<std::string>& items, const Distribution& f) {
    const std::vector<Atom>& atoms = f.atoms();
    std::size_t i = 0;
    while (i < atoms.size()) {
        std::size_t j = i;
        while (j < atoms.size() && atoms[j].site == atoms[i].site) ++j;
        const double site = atoms[i].site;
        const std::vector<Atom> at_site(atoms.begin() + std::ptrdiff_t(i),
                                        atoms.begin() + std::ptrdiff_t(j));
        for (const PointSupportComponent& c :
             normalize_point_support(Distribution::from_atoms(f.interval(), at_site), site)) {
            std::string call;
            Complex amount;
            if (c.jump != Complex{0.0, 0.0}) {
                call = "jump(" + display_number(site);
                amount = c.jump;
            } else if (tol().zero(c.alpha - Complex{1.0, 0.0}, 1.0)) {
                call = "deltaplus(" + display_number(site);
                amount = c.amount;
            } else if (tol().zero(c.alpha, 1.0)) {
                call = "deltaminus(" + display_number(site);
                amount = c.amount;
            } else {
                call = "delta(" + display_number(site) + "; alpha=" + display_literal(c.alpha);
                amount = c.amount;
            }
            if (c.order != 0) call += "; order=" + std::to_string(c.order);
            call += ")";
            const std::string factor = display_factor(amount);
            if (factor == "1")
                items.push_back(std::move(call));
            else
                items.push_back(factor + "*" + call);
        }
        i = j;
    }
}

std::string join_items(std::vector<std::string> items) {
    if (items.empty()) return "0";
    std::string out = std::move(items[0]);
    for (std::size_t i = 1; i < items.size(); ++i) out += " + " + items[i];
    return out;
}

}  // namespace

std::string format_piecewise(const PiecewiseFunction& f) { return join_items(piecewise_items(f)); }

std::string format_distribution(const Distribution& f) {
    std::vector<std::string> items = piecewise_items(f.regular());
    append_atom_items(items, f);
    return join_items(std::move(items));
}

}  // namespace regudist
