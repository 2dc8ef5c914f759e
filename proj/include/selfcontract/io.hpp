#pragma once

#include "selfcontract/curves.hpp"
#include "selfcontract/foliation.hpp"
#include "selfcontract/prox.hpp"

#include <iosfwd>
#include <string>

namespace selfcontract {

// Curve CSV: one vertex per line, comma-separated coordinates, with an
// optional leading "t=<param>" column (all rows or none). Lines starting
// with '#' and blank lines are skipped. The dimension is fixed by the first
// vertex and enforced afterwards. Errors carry the offending line number.
DiscreteCurve read_curve_csv(std::istream& in);
DiscreteCurve read_curve_csv_file(const std::string& path);

void write_curve_csv(std::ostream& out, const DiscreteCurve& curve);
void write_curve_csv_file(const std::string& path, const DiscreteCurve& curve);

// Trace JSON object: {"dimension", "points", "values", "steps", "residuals"}
// with steps and residuals one shorter than points. Orbits use
// {"dimension", "points", "levels", "level_tol"}.
ProxTrace read_trace_json(std::istream& in);
ProxTrace read_trace_json_file(const std::string& path);

void write_trace_json(std::ostream& out, const ProxTrace& trace);
void write_trace_json_file(const std::string& path, const ProxTrace& trace);

FoliationOrbit read_orbit_json(std::istream& in);
FoliationOrbit read_orbit_json_file(const std::string& path);

void write_orbit_json(std::ostream& out, const FoliationOrbit& orbit);
void write_orbit_json_file(const std::string& path, const FoliationOrbit& orbit);

} // namespace selfcontract
