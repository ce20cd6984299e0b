#pragma once

#include "maximin/model.hpp"
#include "maximin/variance.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace maximin {

// RFC 4180 records: quoted fields, doubled quotes, CRLF or LF line ends.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

struct CsvData {
  Dataset dataset;
  std::optional<GroupSpec> groups;
  std::vector<std::string> x_names;
  std::string y_name;
};

// Y comes from y_column (a header name, or a 1-based column number without a
// header). All other columns except the group column form X. Group labels are
// integers ordered by value, or strings ordered lexicographically.
// Throws ParseError naming row and column, RaggedRows, MissingColumn, IoError.
CsvData read_csv(const std::string& path, bool has_header, const std::string& y_column,
                 const std::optional<std::string>& group_column = std::nullopt, bool standardize = false);

// Writes "y,x1,...,xp" (or the given predictor names) with %.17g values.
void write_csv(const Dataset& dataset, const std::string& path, const std::vector<std::string>& x_names = {});

// Numeric matrix without a header, one row per line.
Matrix read_matrix_csv(const std::string& path);

// Deterministic JSON: sorted keys, reals printed with %.17g.
std::string canonical_json(const nlohmann::json& value);

nlohmann::json fit_to_json(const MaximinFit& fit);
MaximinFit fit_from_json(const nlohmann::json& value);

// The fit is stored under "fit"; metadata keys sit beside it.
void write_fit(const MaximinFit& fit, const std::string& path, const nlohmann::json& metadata = nlohmann::json::object());
MaximinFit read_fit(const std::string& path, nlohmann::json* metadata = nullptr);

// CSV with header "t,cumsum" and 1-based t.
void write_series(const SeriesReport& report, const std::string& path);
SeriesReport read_series(const std::string& path);

// {"points": [[...], ...], "weights": [...] (optional)}.
struct SupportFile {
  std::vector<Vector> points;
  std::optional<Vector> weights;
};
SupportFile read_support_json(const std::string& path);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace maximin
