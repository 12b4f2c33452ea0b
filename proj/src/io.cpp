#include "regudist/io.hpp"

#include <algorithm>
#include <utility>

#include "json.hpp"
#include "regudist/expr.hpp"

namespace regudist {

using nlohmann::json;

namespace {

json interval_record(const Interval& iv) {
    json j = json::array();
    j.push_back(iv.finite_lo() ? json(iv.lo) : json("-inf"));
    j.push_back(iv.finite_hi() ? json(iv.hi) : json("inf"));
    return j;
}

json piecewise_record(const PiecewiseFunction& f) {
    json pieces = json::array();
    for (const TermList& piece : f.pieces()) {
        json terms = json::array();
        for (const ExpPolyTerm& t : piece)
            terms.push_back(json{{"coeff_re", t.coeff.real()},
                                 {"coeff_im", t.coeff.imag()},
                                 {"power", t.power},
                                 {"rate_re", t.rate.real()},
                                 {"rate_im", t.rate.imag()},
                                 {"anchor", t.anchor}});
        pieces.push_back(std::move(terms));
    }
    return json{{"interval", interval_record(f.interval())},
                {"breakpoints", f.breakpoints()},
                {"pieces", std::move(pieces)},
                {"text", format_piecewise(f)}};
}

json distribution_record(const Distribution& f) {
    json atoms = json::array();
    for (const Atom& a : f.atoms())
        atoms.push_back(json{{"site", a.site},
                             {"order", a.order},
                             {"plus_re", a.plus.real()},
                             {"plus_im", a.plus.imag()},
                             {"minus_re", a.minus.real()},
                             {"minus_im", a.minus.imag()}});
    return json{{"regular", piecewise_record(f.regular())},
                {"atoms", std::move(atoms)},
                {"text", format_distribution(f)}};
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw domain_error(std::string("invalid JSON: ") + e.what());
    }
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const char* what) {
    for (const auto& item : j.items()) {
        bool ok = item.key() == "comment";
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) throw domain_error(std::string(what) + ": unknown key '" + item.key() + "'");
    }
}

double number_field(const json& j, const char* what) {
    if (!j.is_number()) throw domain_error(std::string(what) + ": expected a number");
    return j.get<double>();
}

Complex complex_field(const json& j, const char* what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_string()) return constant_from_text(j.get<std::string>());
    throw domain_error(std::string(what) + ": expected a number or a constant expression string");
}

std::string expr_field(const json& j, const char* what) {
    if (j.is_number()) return format_number(j.get<double>());
    if (j.is_string()) return j.get<std::string>();
    throw domain_error(std::string(what) + ": expected an expression string");
}

Interval interval_field(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw domain_error("interval: expected [lo, hi]");
    Interval iv;
    if (!(j[0].is_string() && j[0].get<std::string>() == "-inf"))
        iv.lo = number_field(j[0], "interval lo");
    if (!(j[1].is_string() && j[1].get<std::string>() == "inf"))
        iv.hi = number_field(j[1], "interval hi");
    iv.validate();
    return iv;
}

// One interval for the whole problem: explicit, or the padded hull of every
// site mentioned in the expressions plus t0.
Interval choose_interval(const json& j, const std::vector<Expr>& exprs, double t0) {
    if (j.contains("interval")) return interval_field(j.at("interval"));
    std::vector<double> sites{t0};
    for (const Expr& e : exprs)
        for (const double s : expression_sites(e)) sites.push_back(s);
    return Interval::around(sites, config().interval_padding);
}

PiecewiseFunction classical_entry(const Expr& e, const Interval& iv, const char* what) {
    const Distribution d = evaluate(e, iv);
    if (d.has_atoms())
        throw precondition_error(std::string(what) + ": coefficient entries must be classical");
    return d.regular();
}

}  // namespace

std::string piecewise_json(const PiecewiseFunction& f) { return piecewise_record(f).dump(2); }

std::string distribution_json(const Distribution& f) { return distribution_record(f).dump(2); }

std::string solution_json(const CauchyProblem& p, const SolutionBundle& s,
                          const VerificationReport& v) {
    json x = json::array();
    json xp = json::array();
    for (const Distribution& d : s.x) x.push_back(distribution_record(d));
    for (const Distribution& d : s.x_prime) xp.push_back(distribution_record(d));
    return json{{"t0", p.t0},
                {"x", std::move(x)},
                {"x_prime", std::move(xp)},
                {"residual",
                 {{"passed", v.residual.passed},
                  {"equation_defect", v.residual.equation_defect},
                  {"initial_defect", v.residual.initial_defect}}},
                {"alpha_independence",
                 {{"passed", v.alpha.passed}, {"max_deviation", v.alpha.max_deviation}}},
                {"passed", v.passed}}
        .dump(2);
}

std::string convergence_json(const ConvergenceReport& r) {
    json rows = json::array();
    for (const ConvergenceRow& row : r.rows)
        rows.push_back(json{{"eps", row.eps}, {"max_rel_error", row.max_rel_error}});
    return json{{"rows", std::move(rows)}}.dump(2);
}

Complex constant_from_text(const std::string& text) {
    const Distribution d = evaluate(parse_expression(text), Interval{-1.0, 1.0});
    if (d.has_atoms() || !d.regular().breakpoints().empty())
        throw domain_error("expected a constant expression: " + text);
    Complex v{0.0, 0.0};
    for (const ExpPolyTerm& t : d.regular().pieces()[0]) {
        if (t.power != 0 || t.rate != Complex{0.0, 0.0})
            throw domain_error("expected a constant expression: " + text);
        v += t.coeff;
    }
    return v;
}

CauchyProblem problem_from_json(const std::string& text) {
    const json j = parse_text(text);
    if (!j.is_object()) throw domain_error("problem: expected a JSON object");
    reject_unknown_keys(j, {"interval", "A", "f", "t0", "x0", "alpha"}, "problem");
    for (const char* key : {"A", "f", "t0"})
        if (!j.contains(key))
            throw domain_error(std::string("problem: missing key '") + key + "'");

    // A: single expression string for n = 1, or an n x n array of them
    std::vector<std::vector<std::string>> a_rows;
    if (j.at("A").is_array()) {
        for (const json& row : j.at("A")) {
            if (!row.is_array()) throw domain_error("problem: A rows must be arrays");
            std::vector<std::string> r;
            for (const json& cell : row) r.push_back(expr_field(cell, "A entry"));
            a_rows.push_back(std::move(r));
        }
    } else {
        a_rows.push_back({expr_field(j.at("A"), "A")});
    }
    const std::size_t n = a_rows.size();
    if (n == 0) throw domain_error("problem: A is empty");
    for (const auto& row : a_rows)
        if (row.size() != n) throw domain_error("problem: A must be square");

    std::vector<std::string> f_entries;
    if (j.at("f").is_array()) {
        for (const json& cell : j.at("f")) f_entries.push_back(expr_field(cell, "f entry"));
    } else {
        f_entries.push_back(expr_field(j.at("f"), "f"));
    }
    if (f_entries.size() != n) throw domain_error("problem: f must have one entry per row of A");

    const double t0 = number_field(j.at("t0"), "t0");

    std::vector<Expr> parsed;
    for (const auto& row : a_rows)
        for (const std::string& cell : row) parsed.push_back(parse_expression(cell));
    for (const std::string& cell : f_entries) parsed.push_back(parse_expression(cell));
    const Interval iv = choose_interval(j, parsed, t0);

    CauchyProblem p;
    std::vector<PiecewiseFunction> entries;
    for (std::size_t k = 0; k < n * n; ++k)
        entries.push_back(classical_entry(parsed[k], iv, "problem"));
    p.A = PiecewiseMatrix::from_entries(n, n, std::move(entries));
    for (std::size_t k = 0; k < n; ++k) p.f.push_back(evaluate(parsed[n * n + k], iv));
    p.t0 = t0;

    p.x0.assign(n, Complex{0.0, 0.0});
    if (j.contains("x0")) {
        const json& x0 = j.at("x0");
        if (!x0.is_array() || x0.size() != n)
            throw domain_error("problem: x0 must list one value per row of A");
        for (std::size_t k = 0; k < n; ++k) p.x0[k] = complex_field(x0[k], "x0 entry");
    }
    if (j.contains("alpha")) p.alpha_ic = complex_field(j.at("alpha"), "alpha");
    return p;
}

HigherOrderProblem higher_order_from_json(const std::string& text) {
    const json j = parse_text(text);
    if (!j.is_object()) throw domain_error("problem: expected a JSON object");
    reject_unknown_keys(j, {"interval", "coeffs", "f", "t0", "ics", "alpha"}, "problem");
    for (const char* key : {"coeffs", "f", "t0"})
        if (!j.contains(key))
            throw domain_error(std::string("problem: missing key '") + key + "'");

    if (!j.at("coeffs").is_array() || j.at("coeffs").empty())
        throw domain_error("problem: coeffs must be a nonempty array (a_0 first)");
    std::vector<Expr> parsed;
    for (const json& cell : j.at("coeffs"))
        parsed.push_back(parse_expression(expr_field(cell, "coeffs entry")));
    const std::size_t m = parsed.size();
    parsed.push_back(parse_expression(expr_field(j.at("f"), "f")));

    const double t0 = number_field(j.at("t0"), "t0");
    const Interval iv = choose_interval(j, parsed, t0);

    HigherOrderProblem p;
    p.m = static_cast<int>(m);
    for (std::size_t k = 0; k < m; ++k)
        p.coeffs.push_back(classical_entry(parsed[k], iv, "problem"));
    p.rhs = evaluate(parsed[m], iv);
    p.t0 = t0;
    p.ics.assign(m, Complex{0.0, 0.0});
    if (j.contains("ics")) {
        const json& ics = j.at("ics");
        if (!ics.is_array() || ics.size() != m)
            throw domain_error("problem: ics must list one value per order");
        for (std::size_t k = 0; k < m; ++k) p.ics[k] = complex_field(ics[k], "ics entry");
    }
    if (j.contains("alpha")) p.alpha_ic = complex_field(j.at("alpha"), "alpha");
    return p;
}

void apply_config_json(const std::string& text) {
    const json j = parse_text(text);
    if (!j.is_object()) throw domain_error("config: expected a JSON object");
    reject_unknown_keys(
        j, {"tol_rel", "tol_abs", "max_order", "default_alpha", "eps_grid", "interval_padding"},
        "config");
    Config& c = config();
    if (j.contains("tol_rel")) {
        const double v = number_field(j.at("tol_rel"), "tol_rel");
        if (v <= 0.0) throw domain_error("config: tol_rel must be positive");
        c.tol.rel = v;
    }
    if (j.contains("tol_abs")) {
        const double v = number_field(j.at("tol_abs"), "tol_abs");
        if (v <= 0.0) throw domain_error("config: tol_abs must be positive");
        c.tol.abs = v;
    }
    if (j.contains("max_order")) {
        const double v = number_field(j.at("max_order"), "max_order");
        if (v < 1.0 || v != static_cast<int>(v))
            throw domain_error("config: max_order must be a positive integer");
        c.max_order = static_cast<int>(v);
    }
    if (j.contains("default_alpha")) c.default_alpha = complex_field(j.at("default_alpha"), "default_alpha");
    if (j.contains("eps_grid")) {
        const json& g = j.at("eps_grid");
        if (!g.is_array() || g.empty()) throw domain_error("config: eps_grid must be a nonempty array");
        std::vector<double> grid;
        for (const json& cell : g) grid.push_back(number_field(cell, "eps_grid entry"));
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (grid[k] <= 0.0) throw domain_error("config: eps_grid entries must be positive");
            if (k > 0 && grid[k] >= grid[k - 1])
                throw domain_error("config: eps_grid must be strictly decreasing");
        }
        c.eps_grid = std::move(grid);
    }
    if (j.contains("interval_padding")) {
        const double v = number_field(j.at("interval_padding"), "interval_padding");
        if (v <= 0.0) throw domain_error("config: interval_padding must be positive");
        c.interval_padding = v;
    }
}

}  // namespace regudist
