#pragma once

#include <iosfwd>
#include <string>

#include "randmil/diagnostics.hpp"

namespace randmil {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// CSV with header scheme,n,h,samples,p,error,stderr,cpu_seconds,eoc_slope,
/// one row per entry, numbers in round-trip precision, rows ordered by
/// scheme name then descending h. Pure function of the report.
void emit_csv(const ErrorReport& report, std::ostream& out);
void emit_csv(const ErrorReport& report, const std::string& destination);

/// Self-contained SVG: one data polyline and one fitted regression line per
/// scheme on log-scaled axes, with a legend carrying the fitted slopes.
/// Convergence-style reports plot error against the dyadic level n; timing
/// reports plot cpu seconds against error. Entries that cannot be drawn on
/// log axes (non-positive values) are skipped; if nothing remains the call
/// fails and no file is written.
void emit_svg(const ErrorReport& report, const std::string& destination);
std::string render_svg(const ErrorReport& report);

/// Parses a CSV produced by emit_csv back into a report (fits are
/// reconstructed from the eoc_slope column).
ErrorReport parse_csv(std::istream& in);

}  // namespace randmil
