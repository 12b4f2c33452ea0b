#include "regudist/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "regudist/expr.hpp"
#include "regudist/io.hpp"
#include "regudist/mollify.hpp"

namespace regudist {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double strict_double(const std::string& s, const char* what) {
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && *b == ' ') ++b;
    while (e > b && e[-1] == ' ') --e;
    double v = 0.0;
    const auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc{} || r.ptr != e)
        throw domain_error(std::string(what) + ": expected a number");
    return v;
}

std::string sci3(double v) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 3);
    return std::string(buf, r.ptr);
}

std::optional<Interval> interval_flag(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw domain_error("--interval expects \"lo,hi\"");
    Interval iv{strict_double(s.substr(0, comma), "--interval lo"),
                strict_double(s.substr(comma + 1), "--interval hi")};
    iv.validate();
    return iv;
}

Interval infer_interval(const std::vector<const Expr*>& exprs, std::vector<double> anchors) {
    for (const Expr* e : exprs)
        for (const double s : expression_sites(*e)) anchors.push_back(s);
    if (anchors.empty()) return Interval{-1.0, 1.0};
    return Interval::around(anchors, config().interval_padding);
}

// Polynomial window (t-u)^3 (v-t)^3, peak-normalized to 1; `jumped` scales
// the left half by 0.4 so the probe has a genuine jump at the midpoint.
TestFunction window_probe(const Interval& iv, double u, double v, bool jumped) {
    const int s = 2;
    const double w = v - u;
    const double norm = std::pow(w / 2.0, 2 * (s + 1));
    TermList terms;
    for (int j = 0; j <= s + 1; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        terms.push_back(
            ExpPolyTerm{Complex{sign * exppoly::binom(s + 1, j) * std::pow(w, s + 1 - j) / norm, 0.0},
                        s + 1 + j,
                        Complex{0.0, 0.0},
                        u});
    }
    std::vector<double> bps{u, v};
    std::vector<TermList> pieces{{}, terms, {}};
    if (jumped) {
        const double mid = 0.5 * (u + v);
        bps = {u, mid, v};
        pieces = {{}, exppoly::scale(terms, {0.4, 0.0}), std::move(terms), {}};
    }
    return TestFunction::cutoff(PiecewiseFunction::from_pieces(iv, bps, pieces), u, v);
}

// Deterministic probe suite: sliding windows of two widths, every third one
// jumped, plus a smooth and a jumped window centered on every atom site and
// on t0.
std::vector<TestFunction> probe_suite(const CauchyProblem& p, int count) {
    const Interval iv = p.f.at(0).interval();
    const double margin = 0.02 * (iv.hi - iv.lo);
    const double ulo = iv.lo + margin;
    const double uhi = iv.hi - margin;
    const double uspan = uhi - ulo;

    std::vector<TestFunction> probes;
    for (int j = 0; j < count; ++j) {
        const double c = ulo + (j + 0.5) * uspan / count;
        const double w = (j % 2 == 0) ? uspan / 3.0 : uspan / 6.0;
        const double u = std::max(ulo, c - w / 2.0);
        const double v = std::min(uhi, c + w / 2.0);
        probes.push_back(window_probe(iv, u, v, j % 3 == 2));
    }

    std::vector<double> sites{p.t0};
    for (const Distribution& f : p.f)
        for (const Atom& a : f.atoms()) sites.push_back(a.site);
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    for (const double s : sites) {
        const double room = std::min(s - ulo, uhi - s);
        if (room < uspan * 1e-3) continue;
        const double w = std::min(uspan / 4.0, room);
        probes.push_back(window_probe(iv, s - w, s + w, false));
        probes.push_back(window_probe(iv, s - w, s + w, true));
    }
    return probes;
}

std::vector<double> eps_grid_flag(const std::string& s) {
    if (s == "default") return config().eps_grid;
    std::vector<double> grid;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = std::min(s.find(',', pos), s.size());
        grid.push_back(strict_double(s.substr(pos, comma - pos), "--eps-grid entry"));
        pos = comma + 1;
    }
    return grid;
}

struct ProblemFlags {
    std::string file;
    std::string a_text;
    std::string f_text;
    std::string x0_text = "0";
    std::string alpha_text;
    std::string interval_text;
    double t0 = 0.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--problem", file, "problem JSON file (A, f, t0, x0, alpha, interval)");
        cmd->add_option("--a", a_text, "coefficient expression (scalar problems)");
        cmd->add_option("--f", f_text, "forcing expression (scalar problems)");
        cmd->add_option("--t0", t0, "initial time (scalar problems; default 0)");
        cmd->add_option("--x0", x0_text, "initial value (scalar problems; default 0)");
        cmd->add_option("--alpha", alpha_text, "alpha for the initial-condition impulse");
        cmd->add_option("--interval", interval_text, "working interval \"lo,hi\"");
    }

    CauchyProblem load() const {
        if (!file.empty()) {
            if (!a_text.empty() || !f_text.empty() || !interval_text.empty())
                throw domain_error("give either --problem or inline --a/--f flags, not both");
            return problem_from_json(read_file(file));
        }
        if (a_text.empty() || f_text.empty())
            throw domain_error("need --problem, or both --a and --f");
        const Expr ea = parse_expression(a_text);
        const Expr ef = parse_expression(f_text);
        const auto given = interval_flag(interval_text);
        const Interval iv = given ? *given : infer_interval({&ea, &ef}, {t0});

        CauchyProblem p;
        const Distribution a = evaluate(ea, iv);
        if (a.has_atoms()) throw precondition_error("--a must be a classical coefficient");
        p.A = PiecewiseMatrix::from_entries(1, 1, {a.regular()});
        p.f = {evaluate(ef, iv)};
        p.t0 = t0;
        p.x0 = {constant_from_text(x0_text)};
        if (!alpha_text.empty()) p.alpha_ic = constant_from_text(alpha_text);
        return p;
    }
};

std::string component_name(const char* base, std::size_t i, std::size_t n) {
    if (n == 1) return base;
    return std::string(base) + "[" + std::to_string(i) + "]";
}

void print_solution(std::ostream& out, const SolutionBundle& s, const VerificationReport& v) {
    const std::size_t n = s.x.size();
    for (std::size_t i = 0; i < n; ++i)
        out << component_name("x", i, n) << " = " << format_distribution(s.x[i]) << "\n";
    for (std::size_t i = 0; i < n; ++i)
        out << component_name("x'", i, n) << " = " << format_distribution(s.x_prime[i]) << "\n";
    if (v.residual.passed)
        out << "residual: passed\n";
    else
        out << "residual: FAILED (equation defect " << sci3(v.residual.equation_defect)
            << ", initial defect " << sci3(v.residual.initial_defect) << ")\n";
    if (v.alpha.passed)
        out << "alpha independence: passed\n";
    else
        out << "alpha independence: FAILED (max deviation " << sci3(v.alpha.max_deviation)
            << ")\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    struct ConfigGuard {
        Config saved = config();
        ~ConfigGuard() { config() = saved; }
    } guard;

    bool as_json = false;
    std::string config_path;
    bool checks_passed = true;

    CLI::App app{"calculus of distributions over regulated test functions"};
    app.require_subcommand(1);
    app.add_flag("--json", as_json, "print structured JSON instead of expression text");
    app.add_option("--config", config_path,
                   "JSON config file; REGUDIST_TOL then overrides the relative tolerance");

    const auto apply_settings = [&]() {
        if (!config_path.empty()) apply_config_json(read_file(config_path));
        if (const char* env = std::getenv("REGUDIST_TOL")) {
            const double v = strict_double(env, "REGUDIST_TOL");
            if (v <= 0.0) throw domain_error("REGUDIST_TOL: expected a positive number");
            config().tol.rel = v;
            config().tol.abs = v * 1e-2;
        }
    };

    // eval
    std::string eval_text, eval_interval;
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate an expression to a distribution");
    eval_cmd->fallthrough();
    eval_cmd->add_option("expr", eval_text, "expression")->required();
    eval_cmd->add_option("--interval", eval_interval, "working interval \"lo,hi\"");
    eval_cmd->callback([&]() {
        apply_settings();
        const Expr e = parse_expression(eval_text);
        const auto iv = interval_flag(eval_interval);
        const Distribution d = iv ? evaluate(e, *iv) : evaluate(e);
        out << (as_json ? distribution_json(d) : format_distribution(d)) << "\n";
    });

    // mul
    std::string mul_g, mul_f, mul_interval;
    CLI::App* mul_cmd =
        app.add_subcommand("mul", "product of a classical coefficient and a distribution");
    mul_cmd->fallthrough();
    mul_cmd->add_option("--g", mul_g, "coefficient expression")->required();
    mul_cmd->add_option("--f", mul_f, "distribution expression")->required();
    mul_cmd->add_option("--interval", mul_interval, "working interval \"lo,hi\"");
    mul_cmd->callback([&]() {
        apply_settings();
        Expr prod;
        prod.kind = Expr::Kind::mul;
        prod.kids.push_back(parse_expression(mul_g));
        prod.kids.push_back(parse_expression(mul_f));
        const auto iv = interval_flag(mul_interval);
        const Distribution d = iv ? evaluate(prod, *iv) : evaluate(prod);
        out << (as_json ? distribution_json(d) : format_distribution(d)) << "\n";
    });

    // diff
    std::string diff_text, diff_alpha, diff_interval;
    int diff_order = 1;
    CLI::App* diff_cmd = app.add_subcommand("diff", "derivative of a distribution");
    diff_cmd->fallthrough();
    diff_cmd->add_option("expr", diff_text, "expression")->required();
    diff_cmd->add_option("--alpha", diff_alpha, "alpha for atoms born at jumps");
    diff_cmd->add_option("--order", diff_order, "how many derivatives to take (default 1)");
    diff_cmd->add_option("--interval", diff_interval, "working interval \"lo,hi\"");
    diff_cmd->callback([&]() {
        apply_settings();
        if (diff_order < 0) throw domain_error("--order must be nonnegative");
        const Expr e = parse_expression(diff_text);
        const auto iv = interval_flag(diff_interval);
        Distribution d = iv ? evaluate(e, *iv) : evaluate(e);
        const DerivativeSelection sel = diff_alpha.empty()
                                            ? DerivativeSelection{}
                                            : DerivativeSelection::with_alpha(
                                                  constant_from_text(diff_alpha));
        for (int k = 0; k < diff_order; ++k) d = derivative(d, sel);
        out << (as_json ? distribution_json(d) : format_distribution(d)) << "\n";
    });

    // prim
    std::string prim_text, prim_interval;
    double prim_t0 = 0.0;
    CLI::App* prim_cmd =
        app.add_subcommand("prim", "primitive vanishing left of t0 (the input must too)");
    prim_cmd->fallthrough();
    prim_cmd->add_option("expr", prim_text, "expression")->required();
    prim_cmd->add_option("--t0", prim_t0, "left normalization point")->required();
    prim_cmd->add_option("--interval", prim_interval, "working interval \"lo,hi\"");
    prim_cmd->callback([&]() {
        apply_settings();
        const Expr e = parse_expression(prim_text);
        const auto given = interval_flag(prim_interval);
        const Interval iv = given ? *given : infer_interval({&e}, {prim_t0});
        const Distribution d = primitive(evaluate(e, iv), prim_t0);
        out << (as_json ? distribution_json(d) : format_distribution(d)) << "\n";
    });

    // solve
    ProblemFlags solve_flags;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve x' - A x = f with impulsive forcing");
    solve_cmd->fallthrough();
    solve_flags.add_to(solve_cmd);
    solve_cmd->callback([&]() {
        apply_settings();
        const CauchyProblem p = solve_flags.load();
        const SolutionBundle s = solve_cauchy(p);
        const VerificationReport v = default_verification_suite(p, s);
        if (as_json)
            out << solution_json(p, s, v) << "\n";
        else
            print_solution(out, s, v);
        if (!v.passed) checks_passed = false;
    });

    // solve-ho
    std::string ho_file, ho_f, ho_alpha, ho_interval;
    std::vector<std::string> ho_coeffs, ho_ics;
    double ho_t0 = 0.0;
    CLI::App* ho_cmd = app.add_subcommand(
        "solve-ho", "solve x^(m) = a_{m-1} x^(m-1) + ... + a_0 x + f via the companion system");
    ho_cmd->fallthrough();
    ho_cmd->add_option("--problem", ho_file, "problem JSON file (coeffs, f, t0, ics, alpha)");
    ho_cmd->add_option("--coeff", ho_coeffs, "coefficient expressions a_0, a_1, ... (repeat)");
    ho_cmd->add_option("--f", ho_f, "forcing expression");
    ho_cmd->add_option("--t0", ho_t0, "initial time (default 0)");
    ho_cmd->add_option("--ic", ho_ics, "initial values x(t0+), x'(t0+), ... (repeat)");
    ho_cmd->add_option("--alpha", ho_alpha, "alpha for the initial-condition impulse");
    ho_cmd->add_option("--interval", ho_interval, "working interval \"lo,hi\"");
    ho_cmd->callback([&]() {
        apply_settings();
        HigherOrderProblem hp;
        if (!ho_file.empty()) {
            if (!ho_coeffs.empty() || !ho_f.empty() || !ho_interval.empty())
                throw domain_error("give either --problem or inline flags, not both");
            hp = higher_order_from_json(read_file(ho_file));
        } else {
            if (ho_coeffs.empty() || ho_f.empty())
                throw domain_error("need --problem, or --coeff (repeatable) and --f");
            std::vector<Expr> parsed;
            for (const std::string& c : ho_coeffs) parsed.push_back(parse_expression(c));
            const Expr ef = parse_expression(ho_f);
            std::vector<const Expr*> all;
            for (const Expr& e : parsed) all.push_back(&e);
            all.push_back(&ef);
            const auto given = interval_flag(ho_interval);
            const Interval iv = given ? *given : infer_interval(all, {ho_t0});
            hp.m = static_cast<int>(parsed.size());
            for (const Expr& e : parsed) {
                const Distribution d = evaluate(e, iv);
                if (d.has_atoms())
                    throw precondition_error("--coeff entries must be classical");
                hp.coeffs.push_back(d.regular());
            }
            hp.rhs = evaluate(ef, iv);
            hp.t0 = ho_t0;
            hp.ics.assign(parsed.size(), Complex{0.0, 0.0});
            if (!ho_ics.empty()) {
                if (ho_ics.size() != parsed.size())
                    throw domain_error("--ic must be given once per order");
                for (std::size_t k = 0; k < ho_ics.size(); ++k)
                    hp.ics[k] = constant_from_text(ho_ics[k]);
            }
            if (!ho_alpha.empty()) hp.alpha_ic = constant_from_text(ho_alpha);
        }
        const HigherOrderSolution hs = solve_higher_order(hp);
        bool chain_ok = true;
        for (std::size_t k = 0; k + 1 < hs.derivatives.size(); ++k)
            chain_ok = chain_ok && is_derivative_of(hs.derivatives[k + 1], hs.derivatives[k]);
        if (as_json) {
            nlohmann::json derivs = nlohmann::json::array();
            for (const Distribution& d : hs.derivatives)
                derivs.push_back(nlohmann::json::parse(distribution_json(d)));
            out << nlohmann::json{{"derivatives", std::move(derivs)}, {"chain_ok", chain_ok}}
                       .dump(2)
                << "\n";
        } else {
            for (std::size_t k = 0; k < hs.derivatives.size(); ++k) {
                if (k == 0)
                    out << "x = ";
                else
                    out << "x^(" << k << ") = ";
                out << format_distribution(hs.derivatives[k]) << "\n";
            }
            out << "derivative chain: " << (chain_ok ? "ok" : "FAILED") << "\n";
        }
        if (!chain_ok) checks_passed = false;
    });

    // verify
    ProblemFlags verify_flags;
    std::string verify_grid = "default";
    int verify_probes = 10;
    int verify_smoothness = 4;
    double verify_max_final = 5e-2;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "cross-check a solve against the mollified numerical problem");
    verify_cmd->fallthrough();
    verify_flags.add_to(verify_cmd);
    verify_cmd->add_option("--eps-grid", verify_grid,
                           "\"default\" or comma list of decreasing widths");
    verify_cmd->add_option("--probes", verify_probes, "sliding-window probe count (default 10)");
    verify_cmd->add_option("--smoothness", verify_smoothness,
                           "mollifier smoothness (default 4)");
    verify_cmd->add_option("--max-final", verify_max_final,
                           "bound on the finest-grid error (default 5e-2)");
    verify_cmd->callback([&]() {
        apply_settings();
        if (verify_probes < 1) throw domain_error("--probes must be positive");
        const CauchyProblem p = verify_flags.load();
        const SolutionBundle s = solve_cauchy(p);
        const VerificationReport v = default_verification_suite(p, s);
        const ConvergenceReport r = convergence_report(
            p, s, probe_suite(p, verify_probes), eps_grid_flag(verify_grid), verify_smoothness);
        const double final_error = r.rows.back().max_rel_error;
        const bool converged = final_error <= verify_max_final;
        if (as_json) {
            nlohmann::json jr = nlohmann::json::parse(convergence_json(r));
            jr["residual"] = {{"passed", v.residual.passed},
                              {"equation_defect", v.residual.equation_defect},
                              {"initial_defect", v.residual.initial_defect}};
            jr["alpha_independence"] = {{"passed", v.alpha.passed},
                                        {"max_deviation", v.alpha.max_deviation}};
            jr["converged"] = converged;
            jr["passed"] = v.passed && converged;
            out << jr.dump(2) << "\n";
        } else {
            if (v.residual.passed)
                out << "residual: passed\n";
            else
                out << "residual: FAILED (equation defect " << sci3(v.residual.equation_defect)
                    << ", initial defect " << sci3(v.residual.initial_defect) << ")\n";
            out << "alpha independence: " << (v.alpha.passed ? "passed" : "FAILED") << "\n";
            for (const ConvergenceRow& row : r.rows)
                out << "eps=" << format_number(row.eps)
                    << "  max_rel_error=" << sci3(row.max_rel_error) << "\n";
            out << "convergence: " << (converged ? "passed" : "FAILED") << " (final error "
                << sci3(final_error) << ", bound " << format_number(verify_max_final) << ")\n";
        }
        if (!(v.passed && converged)) checks_passed = false;
    });

    // kernel
    std::string kernel_text, kernel_site, kernel_interval;
    int kernel_max_order = -1;
    CLI::App* kernel_cmd = app.add_subcommand(
        "kernel", "coefficients of a pure point-support distribution, probed per site");
    kernel_cmd->fallthrough();
    kernel_cmd->add_option("expr", kernel_text, "expression (jump atoms only)")->required();
    kernel_cmd->add_option("--site", kernel_site, "only this site (default: every atom site)");
    kernel_cmd->add_option("--max-order", kernel_max_order,
                           "highest order to report (default: the configured max order)");
    kernel_cmd->add_option("--interval", kernel_interval, "working interval \"lo,hi\"");
    kernel_cmd->callback([&]() {
        apply_settings();
        const Expr e = parse_expression(kernel_text);
        const auto iv = interval_flag(kernel_interval);
        const Distribution f = iv ? evaluate(e, *iv) : evaluate(e);
        std::vector<double> sites;
        if (!kernel_site.empty()) {
            sites.push_back(strict_double(kernel_site, "--site"));
        } else {
            for (const Atom& a : f.atoms()) sites.push_back(a.site);
            sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
        }
        if (sites.empty()) {
            out << (as_json ? "{\n  \"sites\": []\n}" : "no point support") << "\n";
            return;
        }
        nlohmann::json jsites = nlohmann::json::array();
        for (const double site : sites) {
            const std::vector<Complex> cs = kernel_coefficients(f, site, kernel_max_order);
            if (as_json) {
                nlohmann::json coeffs = nlohmann::json::array();
                for (const Complex& c : cs)
                    coeffs.push_back({{"re", c.real()}, {"im", c.imag()}});
                jsites.push_back({{"site", site}, {"coefficients", std::move(coeffs)}});
            } else {
                out << "site " << format_number(site) << ":";
                for (std::size_t k = 0; k < cs.size(); ++k)
                    out << " c" << k << "=" << format_number(cs[k]);
                out << "\n";
            }
        }
        if (as_json) out << nlohmann::json{{"sites", std::move(jsites)}}.dump(2) << "\n";
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return checks_passed ? 0 : 3;
}

}  // namespace regudist
