#pragma once

#include <string>

#include "regudist/cauchy.hpp"
#include "regudist/mollify.hpp"

namespace regudist {

// JSON records, pretty-printed with two-space indent and sorted keys, so
// files diff cleanly. Structured fields carry the exact term data; a "text"
// field carries the same object in expression syntax for human eyes.
std::string piecewise_json(const PiecewiseFunction& f);
std::string distribution_json(const Distribution& f);
std::string solution_json(const CauchyProblem& p, const SolutionBundle& s,
                          const VerificationReport& v);
std::string convergence_json(const ConvergenceReport& r);

// Problem files. Matrix entries and forcing components are expression
// strings; initial values and alpha accept numbers or constant expression
// strings. The working interval may be given as "interval": [lo, hi] or is
// inferred from the expression sites and t0, padded by
// config().interval_padding. Unknown keys are rejected ("comment" excepted).
CauchyProblem problem_from_json(const std::string& text);
HigherOrderProblem higher_order_from_json(const std::string& text);

// Config file: any of {"tol_rel", "tol_abs", "max_order", "default_alpha",
// "eps_grid", "interval_padding"}; applies onto config().
void apply_config_json(const std::string& text);

// A constant expression ("0.5", "1+2i", "-(0.3)") as a complex value.
Complex constant_from_text(const std::string& text);

}  // namespace regudist
