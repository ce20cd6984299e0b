#include "maximin/io.hpp"

#include "maximin/error.hpp"
#include "maximin/grouping.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace maximin {
namespace {

std::string format_real(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::IoError, "cannot write a non-finite real");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool parse_real(const std::string& field, double& out) {
  std::string s = trim(field);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty()) return false;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

bool parse_integer(const std::string& field, long long& out) {
  const std::string s = trim(field);
  if (s.empty()) return false;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

void emit(const nlohmann::json& v, std::string& out) {
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(key).dump();
        out += ':';
        emit(item, out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        emit(v[i], out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float:
      out += format_real(v.get<double>());
      break;
    default:
      out += v.dump();
  }
}

nlohmann::json vector_json(const Vector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vector json_vector(const nlohmann::json& arr, const std::string& field) {
  if (!arr.is_array()) throw Error(ErrorCode::ParseError, field + ": expected an array of numbers");
  Vector v(static_cast<Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw Error(ErrorCode::ParseError, field + "[" + std::to_string(i + 1) + "]: expected a number");
    }
    v(static_cast<Index>(i)) = arr[i].get<double>();
  }
  return v;
}

nlohmann::json parse_json_file(const std::string& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw Error(ErrorCode::IoError, "failed writing " + path);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line;
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
      any = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
      ++line;
    } else {
      field += ch;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::ParseError, "unterminated quoted field starting before line " + std::to_string(line));
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

CsvData read_csv(const std::string& path, bool has_header, const std::string& y_column,
                 const std::optional<std::string>& group_column, bool standardize) {
  const auto rows = parse_csv(read_text(path));
  if (rows.empty() || (has_header && rows.size() < 2)) {
    throw Error(ErrorCode::ParseError, path + ": no data rows");
  }
  const std::size_t width = rows.front().size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw Error(ErrorCode::RaggedRows, path + ": row " + std::to_string(r + 1) + " has " +
                                             std::to_string(rows[r].size()) + " fields, expected " +
                                             std::to_string(width));
    }
  }
  std::vector<std::string> names;
  if (has_header) {
    for (const auto& h : rows.front()) names.push_back(trim(h));
  } else {
    for (std::size_t c = 0; c < width; ++c) names.push_back(std::to_string(c + 1));
  }
  auto find_column = [&](const std::string& name) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(ErrorCode::MissingColumn, path + ": no column named '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
  };
  const std::size_t y_col = find_column(y_column);
  std::optional<std::size_t> g_col;
  if (group_column) {
    g_col = find_column(*group_column);
    if (*g_col == y_col) throw Error(ErrorCode::InvalidArgument, "group column and y column coincide");
  }

  CsvData out;
  out.y_name = names[y_col];
  std::vector<std::size_t> x_cols;
  for (std::size_t c = 0; c < width; ++c) {
    if (c != y_col && (!g_col || c != *g_col)) {
      x_cols.push_back(c);
      out.x_names.push_back(names[c]);
    }
  }
  const std::size_t first = has_header ? 1 : 0;
  const auto n = static_cast<Index>(rows.size() - first);
  out.dataset.X.resize(n, static_cast<Index>(x_cols.size()));
  out.dataset.Y.resize(n);
  auto number = [&](std::size_t r, std::size_t c) {
    double v = 0.0;
    if (!parse_real(rows[r][c], v)) {
      throw Error(ErrorCode::ParseError, path + ": row " + std::to_string(r + 1) + ", column " +
                                             std::to_string(c + 1) + " ('" + names[c] +
                                             "'): not a number: '" + rows[r][c] + "'");
    }
    return v;
  };
  for (Index i = 0; i < n; ++i) {
    const std::size_t r = first + static_cast<std::size_t>(i);
    out.dataset.Y(i) = number(r, y_col);
    for (std::size_t k = 0; k < x_cols.size(); ++k) out.dataset.X(i, static_cast<Index>(k)) = number(r, x_cols[k]);
  }

  if (g_col) {
    std::vector<long long> labels(static_cast<std::size_t>(n));
    bool numeric = true;
    for (Index i = 0; i < n && numeric; ++i) {
      numeric = parse_integer(rows[first + static_cast<std::size_t>(i)][*g_col], labels[static_cast<std::size_t>(i)]);
    }
    if (!numeric) {
      std::map<std::string, long long> codes;
      for (Index i = 0; i < n; ++i) codes.emplace(trim(rows[first + static_cast<std::size_t>(i)][*g_col]), 0);
      long long next = 0;
      for (auto& [label, code] : codes) code = next++;
      for (Index i = 0; i < n; ++i) {
        labels[static_cast<std::size_t>(i)] = codes.at(trim(rows[first + static_cast<std::size_t>(i)][*g_col]));
      }
    }
    out.groups = groups_from_labels(labels);
  }

  if (standardize) {
    for (Index j = 0; j < out.dataset.p(); ++j) out.dataset.X.col(j) = maximin::standardize(out.dataset.X.col(j));
  }
  validate(out.dataset);
  return out;
}

void write_csv(const Dataset& dataset, const std::string& path, const std::vector<std::string>& x_names) {
  std::string text = "y";
  for (Index j = 0; j < dataset.p(); ++j) {
    text += ',';
    text += static_cast<std::size_t>(j) < x_names.size() ? x_names[static_cast<std::size_t>(j)]
                                                         : "x" + std::to_string(j + 1);
  }
  text += '\n';
  for (Index i = 0; i < dataset.n(); ++i) {
    text += format_real(dataset.Y(i));
    for (Index j = 0; j < dataset.p(); ++j) {
      text += ',';
      text += format_real(dataset.X(i, j));
    }
    text += '\n';
  }
  write_text(path, text);
}

Matrix read_matrix_csv(const std::string& path) {
  const auto rows = parse_csv(read_text(path));
  if (rows.empty()) throw Error(ErrorCode::ParseError, path + ": empty matrix");
  const std::size_t width = rows.front().size();
  Matrix M(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw Error(ErrorCode::RaggedRows, path + ": row " + std::to_string(r + 1) + " has " +
                                             std::to_string(rows[r].size()) + " fields, expected " +
                                             std::to_string(width));
    }
    for (std::size_t c = 0; c < width; ++c) {
      double v = 0.0;
      if (!parse_real(rows[r][c], v)) {
        throw Error(ErrorCode::ParseError, path + ": row " + std::to_string(r + 1) + ", column " +
                                               std::to_string(c + 1) + ": not a number: '" + rows[r][c] + "'");
      }
      M(static_cast<Index>(r), static_cast<Index>(c)) = v;
    }
  }
  return M;
}

std::string canonical_json(const nlohmann::json& value) {
  std::string out;
  emit(value, out);
  return out;
}

nlohmann::json fit_to_json(const MaximinFit& fit) {
  nlohmann::json j = nlohmann::json::object();
  j["beta"] = vector_json(fit.beta);
  j["coefficients"] = vector_json(fit.coefficients());
  j["converged"] = fit.converged;
  j["duality_gap"] = fit.duality_gap;
  j["group_V"] = vector_json(fit.group_V);
  j["iterations"] = fit.iterations;
  j["lambda"] = fit.lambda;
  j["scale"] = fit.scale;
  return j;
}

MaximinFit fit_from_json(const nlohmann::json& value) {
  if (!value.is_object()) throw Error(ErrorCode::ParseError, "fit: expected an object");
  auto field = [&](const char* name) -> const nlohmann::json& {
    if (!value.contains(name)) throw Error(ErrorCode::MissingColumn, std::string("fit: missing field '") + name + "'");
    return value.at(name);
  };
  try {
    MaximinFit fit;
    fit.beta = json_vector(field("beta"), "beta");
    fit.group_V = json_vector(field("group_V"), "group_V");
    fit.scale = field("scale").get<double>();
    fit.converged = field("converged").get<bool>();
    fit.iterations = field("iterations").get<int>();
    fit.lambda = field("lambda").get<double>();
    fit.duality_gap = field("duality_gap").get<double>();
    return fit;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("fit: ") + e.what());
  }
}

void write_fit(const MaximinFit& fit, const std::string& path, const nlohmann::json& metadata) {
  nlohmann::json doc = metadata.is_object() ? metadata : nlohmann::json::object();
  doc["fit"] = fit_to_json(fit);
  write_text(path, canonical_json(doc) + "\n");
}

MaximinFit read_fit(const std::string& path, nlohmann::json* metadata) {
  const nlohmann::json doc = parse_json_file(path);
  if (!doc.is_object() || !doc.contains("fit")) throw Error(ErrorCode::ParseError, path + ": no 'fit' object");
  if (metadata != nullptr) {
    *metadata = doc;
    metadata->erase("fit");
  }
  return fit_from_json(doc.at("fit"));
}

void write_series(const SeriesReport& report, const std::string& path) {
  std::string text = "t,cumsum\n";
  for (std::size_t t = 0; t < report.cumsum.size(); ++t) {
    text += std::to_string(t + 1);
    text += ',';
    text += format_real(report.cumsum[t]);
    text += '\n';
  }
  write_text(path, text);
}

SeriesReport read_series(const std::string& path) {
  const auto rows = parse_csv(read_text(path));
  if (rows.empty() || rows.front().size() != 2) throw Error(ErrorCode::ParseError, path + ": expected header t,cumsum");
  SeriesReport report;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    double v = 0.0;
    if (rows[r].size() != 2) throw Error(ErrorCode::RaggedRows, path + ": row " + std::to_string(r + 1));
    if (!parse_real(rows[r][1], v)) {
      throw Error(ErrorCode::ParseError, path + ": row " + std::to_string(r + 1) + ", column 2: not a number");
    }
    report.cumsum.push_back(v);
  }
  return report;
}

SupportFile read_support_json(const std::string& path) {
  const nlohmann::json doc = parse_json_file(path);
  if (!doc.is_object() || !doc.contains("points") || !doc.at("points").is_array()) {
    throw Error(ErrorCode::ParseError, path + ": expected an object with a 'points' array");
  }
  SupportFile out;
  const auto& pts = doc.at("points");
  for (std::size_t j = 0; j < pts.size(); ++j) {
    out.points.push_back(json_vector(pts[j], "points[" + std::to_string(j + 1) + "]"));
  }
  if (doc.contains("weights")) out.weights = json_vector(doc.at("weights"), "weights");
  return out;
}

}  // namespace maximin
