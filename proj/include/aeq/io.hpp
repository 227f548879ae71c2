#pragma once

// Point sets and matrices in and out of JSON / CSV.
//
// Point-set JSON: {"dim": 2, "mode": "float" | "exact", "points": [[...], ...]}.
// Exact coordinates are integers or "p/q" strings. A run report whose payload
// holds "point_set" or "best_points" is accepted too, so one command's output
// can be piped into the next. CSV is one point per line; '#' starts a comment.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "aeq/point_set.hpp"

namespace aeq {

using Json = nlohmann::ordered_json;

enum class InputFormat { automatic, json, csv };

InputFormat parse_input_format(const std::string& name);

// exact forces rational parsing; otherwise a JSON "mode": "exact" selects it.
AnyPointSet read_point_set(std::istream& in, InputFormat format = InputFormat::automatic, bool exact = false);
AnyPointSet point_set_from_json(const Json& j, bool exact = false);

Json to_json(const PointSet& s);
Json to_json(const ExactPointSet& s);
Json to_json(const AnyPointSet& s);

void write_csv(std::ostream& out, const PointSet& s);
void write_csv(std::ostream& out, const ExactPointSet& s);

// Square numeric matrix from CSV rows or a JSON array of rows.
std::vector<std::vector<double>> read_matrix(std::istream& in, InputFormat format = InputFormat::automatic);

// Serializes with every floating value printed as %.17g; non-finite values
// become null.
std::string dump_json(const Json& j, int indent = 2);

}  // namespace aeq
