#include "aeq/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace aeq {

InputFormat parse_input_format(const std::string& name) {
  if (name.empty() || name == "auto") return InputFormat::automatic;
  if (name == "json") return InputFormat::json;
  if (name == "csv") return InputFormat::csv;
  throw InputError("unknown input format '" + name + "'");
}

namespace {

std::string slurp(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool looks_like_json(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && (text[first] == '{' || text[first] == '[');
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

double json_double(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
  throw InputError("coordinate must be a number or a rational string");
}

Rational json_rational(const Json& v) {
  if (v.is_number_integer()) return Rational(v.dump());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number()) throw InputError("exact coordinates must be integers or \"p/q\" strings, got " + v.dump());
  throw InputError("coordinate must be a number or a rational string");
}

template <class T, class Convert>
BasicPointSet<T> rows_from_json(const Json& points, Convert convert) {
  if (!points.is_array()) throw InputError("\"points\" must be an array of coordinate arrays");
  if (points.empty()) throw InputError("point set is empty");
  std::vector<std::vector<T>> rows;
  rows.reserve(points.size());
  for (const auto& p : points) {
    if (!p.is_array()) throw InputError("each point must be an array of coordinates");
    std::vector<T> row;
    row.reserve(p.size());
    for (const auto& c : p) row.push_back(convert(c));
    rows.push_back(std::move(row));
  }
  const std::size_t dim = rows.front().size();
  return BasicPointSet<T>(dim, std::move(rows));
}

const Json* locate_points(const Json& j) {
  if (j.is_array()) return &j;
  if (!j.is_object()) return nullptr;
  if (j.contains("points")) return &j;
  if (j.contains("payload")) {
    const auto& payload = j["payload"];
    for (const char* key : {"point_set", "best_points", "points"}) {
      if (payload.is_object() && payload.contains(key)) {
        const auto& inner = payload[key];
        return inner.is_array() ? &payload : &inner;
      }
    }
  }
  return nullptr;
}

std::vector<std::vector<std::string>> csv_cells(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

double cell_double(const std::string& cell) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used == cell.size()) return v;
  } catch (const std::exception&) {
  }
  if (cell.find('/') != std::string::npos) return to_double(parse_rational(cell));
  throw InputError("not a number: '" + cell + "'");
}

}  // namespace

AnyPointSet point_set_from_json(const Json& j, bool exact) {
  const Json* holder = locate_points(j);
  if (!holder) throw InputError("no point set found in JSON input");
  const Json& points = holder->is_array() ? *holder : (*holder)["points"];
  if (holder->is_object()) {
    if (holder->contains("mode")) {
      const auto mode = (*holder)["mode"].get<std::string>();
      if (mode == "exact") exact = true;
      else if (mode != "float") throw InputError("mode must be \"float\" or \"exact\"");
    }
  }
  AnyPointSet out = exact ? AnyPointSet(rows_from_json<Rational>(points, json_rational))
                          : AnyPointSet(rows_from_json<double>(points, json_double));
  if (holder->is_object() && holder->contains("dim")) {
    const auto dim = (*holder)["dim"];
    const std::size_t actual = std::visit([](const auto& s) { return s.dim(); }, out);
    if (!dim.is_number_integer() || dim.get<long long>() != static_cast<long long>(actual)) {
      throw InputError("\"dim\" does not match the coordinate length");
    }
  }
  return out;
}

AnyPointSet read_point_set(std::istream& in, InputFormat format, bool exact) {
  const std::string text = slurp(in);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw InputError("empty input");
  if (format == InputFormat::json || (format == InputFormat::automatic && looks_like_json(text))) {
    return point_set_from_json(parse_json(text), exact);
  }
  const auto rows = csv_cells(text);
  if (rows.empty()) throw InputError("point set is empty");
  if (exact) {
    std::vector<std::vector<Rational>> pts;
    for (const auto& r : rows) {
      std::vector<Rational> p;
      for (const auto& c : r) p.push_back(parse_rational(c));
      pts.push_back(std::move(p));
    }
    const std::size_t dim = pts.front().size();
    return ExactPointSet(dim, std::move(pts));
  }
  std::vector<std::vector<double>> pts;
  for (const auto& r : rows) {
    std::vector<double> p;
    for (const auto& c : r) p.push_back(cell_double(c));
    pts.push_back(std::move(p));
  }
  const std::size_t dim = pts.front().size();
  return PointSet(dim, std::move(pts));
}

Json to_json(const PointSet& s) {
  Json points = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) points.push_back(Json(std::vector<double>(s[i].begin(), s[i].end())));
  return Json{{"dim", s.dim()}, {"mode", "float"}, {"points", std::move(points)}};
}

Json to_json(const ExactPointSet& s) {
  Json points = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    Json row = Json::array();
    for (const auto& c : s[i]) row.push_back(to_string(c));
    points.push_back(std::move(row));
  }
  return Json{{"dim", s.dim()}, {"mode", "exact"}, {"points", std::move(points)}};
}

Json to_json(const AnyPointSet& s) {
  return std::visit([](const auto& p) { return to_json(p); }, s);
}

void write_csv(std::ostream& out, const PointSet& s) {
  char buf[32];
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t c = 0; c < s.dim(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", s[i][c]);
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
}

void write_csv(std::ostream& out, const ExactPointSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t c = 0; c < s.dim(); ++c) out << (c ? "," : "") << to_string(s[i][c]);
    out << '\n';
  }
}

std::vector<std::vector<double>> read_matrix(std::istream& in, InputFormat format) {
  const std::string text = slurp(in);
  std::vector<std::vector<double>> rows;
  if (format == InputFormat::json || (format == InputFormat::automatic && looks_like_json(text))) {
    Json j = parse_json(text);
    if (j.is_object() && j.contains("matrix")) j = j["matrix"];
    if (!j.is_array()) throw InputError("matrix JSON must be an array of rows");
    for (const auto& r : j) {
      if (!r.is_array()) throw InputError("matrix rows must be arrays");
      std::vector<double> row;
      for (const auto& v : r) row.push_back(json_double(v));
      rows.push_back(std::move(row));
    }
  } else {
    for (const auto& r : csv_cells(text)) {
      std::vector<double> row;
      for (const auto& c : r) row.push_back(cell_double(c));
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) throw InputError("matrix is empty");
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw InputError("matrix is not square");
  }
  return rows;
}

namespace {

void dump_value(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_value(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Rows of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump_value(out, v, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_value(out, j, indent, 0);
  return out;
}

}  // namespace aeq
