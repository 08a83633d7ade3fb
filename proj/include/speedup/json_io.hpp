#pragma once

#include "speedup/closure.hpp"

#include <json.hpp>

#include <string>

namespace speedup {

using Json = nlohmann::json;

// All *_from_json functions throw ParseError on malformed input.

Json value_to_json(Value v);
Value value_from_json(const Json& j);

Json vertex_to_json(const Vertex& v);
Vertex vertex_from_json(const Json& j);

Json simplex_to_json(const Simplex& s);
Simplex simplex_from_json(const Json& j);

/// {"n": int, "facets": [[vertex, ...], ...]}
Json complex_to_json(const ChromaticComplex& k);
ChromaticComplex complex_from_json(const Json& j);

/// Named family tasks serialize as their parameters; others as
/// {"kind": "custom", "inputs", "outputs", "delta": [[sigma, [tau, ...]], ...]}.
Json task_to_json(const Task& task);
Task task_from_json(const Json& j);

/// {"comm": "iis|snapshot|collect", "box": "none|ts|bc",
///  "bc_inputs": {"<id>": {"<round>" | "*": 0|1}}}
Json model_to_json(const ModelSpec& m);
ModelSpec model_from_json(const Json& j);

/// {"<id>": 0|1, ...}
std::map<ProcessId, int> beta_from_json(const Json& j);

/// [{"from": vertex, "to": vertex}, ...] in canonical order.
Json map_to_json(const SimplicialMap& f);
SimplicialMap map_from_json(const Json& j);

/// Undirected graph of the 1-skeleton, vertices labeled "id:value".
std::string to_dot(const ChromaticComplex& k);

/// One line per input simplex listing its legal outputs.
std::string delta_table(const Task& task);

/// Reads and parses a JSON file; ParseError on I/O or syntax errors.
Json read_json_file(const std::string& path);
/// Writes `j` with two-space indentation and a trailing newline.
void write_json_file(const std::string& path, const Json& j);

}  // namespace speedup
