#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace regudist {

using Complex = std::complex<double>;

// Base class for everything this library throws.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments: sites outside the working interval, reversed integration
// bounds, operands living on different intervals, malformed records.
struct domain_error : error {
    using error::error;
};

// Contract violations: operation applied to an object that does not satisfy
// the operation's stated preconditions (e.g. primitive of something that does
// not vanish left of t0, kernel extraction from a distribution with a regular
// part, unsupported coefficient class in the solver).
struct precondition_error : error {
    using error::error;
};

// Expression-text errors, with the byte offset that made the parser give up.
struct parse_error : error {
    std::size_t position;
    parse_error(const std::string& what, std::size_t pos)
        : error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

// Comparison tolerances. These enter equality predicates only; the algebra
// itself is exact (closed-form term manipulation).
struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-12;

    bool close(double a, double b) const {
        double d = a > b ? a - b : b - a;
        double m = std::abs(a) > std::abs(b) ? std::abs(a) : std::abs(b);
        return d <= abs + rel * m;
    }
    bool close(const Complex& a, const Complex& b) const {
        return std::abs(a - b) <= abs + rel * std::max(std::abs(a), std::abs(b));
    }
    // |x| small relative to a given scale (used when comparing aggregates
    // where the natural scale is the largest coefficient involved).
    bool zero(const Complex& x, double scale = 0.0) const {
        return std::abs(x) <= abs + rel * scale;
    }
};

struct Config {
    Tolerance tol;
    int max_order = 8;              // highest atom order the engine will carry
    Complex default_alpha{1.0, 0.0};// derivative selection when none is given
    std::vector<double> eps_grid{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
    double interval_padding = 1.0;  // hull padding when inferring intervals
};

// Process-wide settings. Set once at startup (the CLI honours REGUDIST_TOL
// and --config through this); the library reads it for defaults.
Config& config();

inline const Tolerance& tol() { return config().tol; }

}  // namespace regudist
