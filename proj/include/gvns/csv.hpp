#pragma once

#include <iosfwd>
#include <string>

#include "gvns/diagnostics.hpp"

namespace gvns {

// Diagnostics CSV: a "# gvns-diagnostics schema=N key=value ..." line with
// the series metadata, a header with the column names of
// diagnostics_columns(), then one row per sample printed with %.17g.
inline constexpr int kCsvSchemaVersion = 1;

void write_csv_header(std::ostream& out, const SeriesMeta& meta);
void write_csv_row(std::ostream& out, const DiagnosticsRow& r);
void write_csv(const std::string& path, const DiagnosticsSeries& s);

// Throws std::runtime_error on schema mismatch or malformed rows.
DiagnosticsSeries read_csv(const std::string& path);
DiagnosticsSeries parse_csv(std::istream& in);

}  // namespace gvns
