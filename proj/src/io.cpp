#include "entrokit/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "entrokit/errors.hpp"

namespace entrokit::io {

namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_json(const std::string& text) { return trim(text).starts_with('{'); }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ValidationError(std::string("expected a JSON object with key \"") + key + "\"");
  }
  return doc.at(key);
}

std::vector<double> as_vector(const json& v) {
  if (!v.is_array()) throw ValidationError("expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw ValidationError("expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> as_matrix(const json& v) {
  if (!v.is_array()) throw ValidationError("expected an array of rows");
  std::vector<std::vector<double>> out;
  for (const auto& row : v) out.push_back(as_vector(row));
  return out;
}

double parse_real(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ValidationError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

struct CsvTable {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> comments;
};

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto s = trim(line);
    if (s.empty()) continue;
    if (s.starts_with('#')) {
      t.comments.emplace_back(s.substr(1));
      continue;
    }
    std::vector<double> row;
    std::size_t pos = 0;
    while (true) {
      const auto comma = s.find(',', pos);
      row.push_back(parse_real(s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    t.rows.push_back(std::move(row));
  }
  if (t.rows.empty()) throw ValidationError("CSV input has no data rows");
  return t;
}

std::string csv_row(std::span<const double> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_real(v[i]);
  }
  out += '\n';
  return out;
}

std::vector<std::vector<double>> rows_of(std::span<const double> flat, std::size_t width) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < flat.size(); i += width) {
    rows.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(i),
                      flat.begin() + static_cast<std::ptrdiff_t>(i + width));
  }
  return rows;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_source(const std::string& arg) {
  if (is_json(arg)) return arg;
  std::ifstream f(arg, std::ios::binary);
  if (!f) throw ValidationError("cannot read input file: " + arg);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool looks_like_joint3(const std::string& text) {
  if (!is_json(text)) {
    return text.find("# shape=") != std::string::npos;
  }
  try {
    const auto doc = json::parse(text);
    return doc.is_object() && doc.contains("t");
  } catch (const json::parse_error&) {
    return false;
  }
}

Distribution parse_distribution(const std::string& text, bool normalize) {
  if (is_json(text)) return Distribution::make(as_vector(field(parse_json(text), "p")), normalize);
  auto t = parse_csv(text);
  if (t.rows.size() != 1) throw ValidationError("distribution CSV must have exactly one row");
  return Distribution::make(std::move(t.rows.front()), normalize);
}

JointDistribution2 parse_joint2(const std::string& text, bool normalize) {
  if (is_json(text)) return JointDistribution2::from_rows(as_matrix(field(parse_json(text), "m")), normalize);
  return JointDistribution2::from_rows(parse_csv(text).rows, normalize);
}

JointDistribution3 parse_joint3(const std::string& text, bool normalize) {
  if (is_json(text)) {
    const auto doc = parse_json(text);
    const auto& t = field(doc, "t");
    if (!t.is_array()) throw ValidationError("\"t\" must be a nested array");
    std::vector<std::vector<std::vector<double>>> nested;
    for (const auto& slab : t) nested.push_back(as_matrix(slab));
    return JointDistribution3::from_nested(nested, normalize);
  }
  // "# shape=nx,ny,nz" followed by nx*ny rows of nz values
  const auto table = parse_csv(text);
  std::size_t nx = 0, ny = 0, nz = 0;
  bool found = false;
  for (const auto& c : table.comments) {
    if (std::sscanf(c.c_str(), " shape=%zu,%zu,%zu", &nx, &ny, &nz) == 3) found = true;
  }
  if (!found) throw ValidationError("three-way CSV needs a '# shape=nx,ny,nz' header");
  if (table.rows.size() != nx * ny) throw ValidationError("row count does not match shape");
  std::vector<double> flat;
  for (const auto& row : table.rows) {
    if (row.size() != nz) throw ValidationError("row length does not match shape");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return JointDistribution3::make(nx, ny, nz, std::move(flat), normalize);
}

Channel parse_channel(const std::string& text) {
  if (is_json(text)) return Channel::from_rows(as_matrix(field(parse_json(text), "w")));
  return Channel::from_rows(parse_csv(text).rows);
}

std::string write(const Distribution& p, Format format) {
  if (format == Format::csv) return csv_row(p.probs());
  return json{{"p", p.vec()}}.dump() + "\n";
}

std::string write(const JointDistribution2& j, Format format) {
  if (format == Format::csv) {
    std::string out;
    for (std::size_t x = 0; x < j.rows(); ++x) out += csv_row(j.row(x));
    return out;
  }
  return json{{"m", rows_of(j.flat(), j.cols())}}.dump() + "\n";
}

std::string write(const JointDistribution3& j, Format format) {
  const auto rows = rows_of(j.flat(), j.nz());
  if (format == Format::csv) {
    std::string out = "# shape=" + std::to_string(j.nx()) + "," + std::to_string(j.ny()) + "," +
                      std::to_string(j.nz()) + "\n";
    for (const auto& r : rows) out += csv_row(r);
    return out;
  }
  json t = json::array();
  for (std::size_t x = 0; x < j.nx(); ++x) {
    json slab = json::array();
    for (std::size_t y = 0; y < j.ny(); ++y) slab.push_back(rows[x * j.ny() + y]);
    t.push_back(std::move(slab));
  }
  return json{{"t", std::move(t)}}.dump() + "\n";
}

std::string write(const Channel& w, Format format) {
  const auto rows = rows_of(w.flat(), w.inputs());
  if (format == Format::csv) {
    std::string out;
    for (const auto& r : rows) out += csv_row(r);
    return out;
  }
  return json{{"w", rows}}.dump() + "\n";
}

}  // namespace entrokit::io
