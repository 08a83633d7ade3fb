#include "speedup/json_io.hpp"

#include "speedup/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace speedup {

namespace {

// Runs `body`, turning library and structural errors into ParseError.
template <class F>
auto parsing(const std::string& what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const ParseError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed " + what + ": " + e.what());
  } catch (const Error& e) {
    throw ParseError("invalid " + what + ": " + e.what());
  }
}

int parse_id(const std::string& key) {
  std::size_t used = 0;
  int id = 0;
  try {
    id = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty()) throw ParseError("process id '" + key + "' is not an integer");
  return id;
}

int parse_bit(const Json& j) {
  const int b = j.get<int>();
  if (b != 0 && b != 1) throw ParseError("expected a bit, got " + j.dump());
  return b;
}

}  // namespace

Json value_to_json(Value v) {
  switch (v.kind()) {
    case Value::Kind::Rational: return {{"q", {v.numerator(), v.denominator()}}};
    case Value::Kind::Bit: return {{"b", v.bit_value()}};
    case Value::Kind::Symbol: return {{"s", v.symbol_name()}};
    case Value::Kind::View: {
      Json seen = Json::array();
      for (const auto& s : v.seen()) seen.push_back(vertex_to_json(s));
      Json box = v.box() ? Json(*v.box()) : Json(nullptr);
      return {{"v", {{"box", box}, {"seen", seen}}}};
    }
  }
  throw Error("unknown value kind");
}

Value value_from_json(const Json& j) {
  return parsing("value", [&] {
    if (!j.is_object() || j.size() != 1) throw ParseError("value must be a one-key object: " + j.dump());
    if (j.contains("q")) {
      const auto& q = j.at("q");
      if (!q.is_array() || q.size() != 2) throw ParseError("rational must be [num, den]");
      return Value::rational(q.at(0).get<std::int64_t>(), q.at(1).get<std::int64_t>());
    }
    if (j.contains("b")) return Value::bit(parse_bit(j.at("b")));
    if (j.contains("s")) return Value::symbol(j.at("s").get<std::string>());
    if (j.contains("v")) {
      const auto& v = j.at("v");
      std::optional<int> box;
      if (!v.at("box").is_null()) box = parse_bit(v.at("box"));
      std::vector<Vertex> seen;
      for (const auto& s : v.at("seen")) seen.push_back(vertex_from_json(s));
      return Value::view(box, std::move(seen));
    }
    throw ParseError("unknown value tag in " + j.dump());
  });
}

Json vertex_to_json(const Vertex& v) { return {{"id", v.id.value}, {"value", value_to_json(v.value)}}; }

Vertex vertex_from_json(const Json& j) {
  return parsing("vertex", [&] {
    return Vertex{ProcessId{j.at("id").get<int>()}, value_from_json(j.at("value"))};
  });
}

Json simplex_to_json(const Simplex& s) {
  Json out = Json::array();
  for (const auto& v : s.vertices()) out.push_back(vertex_to_json(v));
  return out;
}

Simplex simplex_from_json(const Json& j) {
  return parsing("simplex", [&] {
    if (!j.is_array()) throw ParseError("simplex must be an array of vertices");
    std::vector<Vertex> vs;
    for (const auto& v : j) vs.push_back(vertex_from_json(v));
    return Simplex(std::move(vs));
  });
}

Json complex_to_json(const ChromaticComplex& k) {
  Json facets = Json::array();
  for (const auto& f : k.facets()) facets.push_back(simplex_to_json(f));
  return {{"n", k.n()}, {"facets", facets}};
}

ChromaticComplex complex_from_json(const Json& j) {
  return parsing("complex", [&] {
    std::vector<Simplex> facets;
    for (const auto& f : j.at("facets")) facets.push_back(simplex_from_json(f));
    return make_complex(std::move(facets), j.value("n", 0));
  });
}

Json task_to_json(const Task& task) {
  if (task.family) {
    const auto& f = *task.family;
    Json out = {{"kind", f.kind}, {"n", f.n}};
    if (f.kind == "approx" || f.kind == "liberal_approx") {
      out["m"] = f.m;
      out["eps_num"] = f.eps_num;
    }
    return out;
  }
  Json delta = Json::array();
  for (const auto& [sigma, legal] : task.delta) {
    Json taus = Json::array();
    for (const auto& tau : legal) taus.push_back(simplex_to_json(tau));
    delta.push_back({simplex_to_json(sigma), taus});
  }
  return {{"kind", "custom"},
          {"inputs", complex_to_json(task.inputs)},
          {"outputs", complex_to_json(task.outputs)},
          {"delta", delta}};
}

Task task_from_json(const Json& j) {
  return parsing("task", [&] {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "custom") {
      TaskFamily family{kind, j.at("n").get<int>(), j.value("m", 0), j.value("eps_num", 0)};
      if (kind != "consensus" && kind != "weak_consensus" && kind != "approx" &&
          kind != "liberal_approx") {
        throw ParseError("unknown task kind '" + kind + "'");
      }
      return task_from_family(family);
    }
    std::map<Simplex, std::vector<Simplex>> delta;
    for (const auto& entry : j.at("delta")) {
      if (!entry.is_array() || entry.size() != 2) throw ParseError("delta entries are [sigma, [tau, ...]]");
      std::vector<Simplex> legal;
      for (const auto& tau : entry.at(1)) legal.push_back(simplex_from_json(tau));
      if (!delta.emplace(simplex_from_json(entry.at(0)), std::move(legal)).second) {
        throw ParseError("delta lists an input simplex twice");
      }
    }
    return make_task(complex_from_json(j.at("inputs")), complex_from_json(j.at("outputs")),
                     std::move(delta));
  });
}

Json model_to_json(const ModelSpec& m) {
  static const char* comms[] = {"collect", "snapshot", "iis"};
  static const char* boxes[] = {"none", "ts", "bc"};
  Json out = {{"comm", comms[static_cast<int>(m.communication)]},
              {"box", boxes[static_cast<int>(m.blackbox)]}};
  if (!m.bc_inputs.empty()) {
    Json inputs = Json::object();
    for (const auto& [id, rounds] : m.bc_inputs) {
      Json per = Json::object();
      for (const auto& [round, bit] : rounds) per[round == 0 ? "*" : std::to_string(round)] = bit;
      inputs[std::to_string(id.value)] = per;
    }
    out["bc_inputs"] = inputs;
  }
  return out;
}

ModelSpec model_from_json(const Json& j) {
  return parsing("model", [&] {
    ModelSpec m;
    const std::string comm = j.value("comm", std::string("iis"));
    if (comm == "iis") m.communication = Communication::ImmediateSnapshot;
    else if (comm == "snapshot") m.communication = Communication::Snapshot;
    else if (comm == "collect") m.communication = Communication::Collect;
    else throw ParseError("unknown communication '" + comm + "'");
    const std::string box = j.value("box", std::string("none"));
    if (box == "none") m.blackbox = BlackBox::None;
    else if (box == "ts") m.blackbox = BlackBox::TestAndSet;
    else if (box == "bc") m.blackbox = BlackBox::BinaryConsensus;
    else throw ParseError("unknown box '" + box + "'");
    if (j.contains("bc_inputs")) {
      for (const auto& [id, rounds] : j.at("bc_inputs").items()) {
        auto& per = m.bc_inputs[ProcessId{parse_id(id)}];
        for (const auto& [round, bit] : rounds.items()) {
          const int r = round == "*" ? 0 : parse_id(round);
          if (r < 0) throw ParseError("negative round in bc_inputs");
          per[r] = parse_bit(bit);
        }
      }
    }
    m.validate();
    return m;
  });
}

std::map<ProcessId, int> beta_from_json(const Json& j) {
  return parsing("beta", [&] {
    if (!j.is_object()) throw ParseError("beta must map process ids to bits");
    std::map<ProcessId, int> beta;
    for (const auto& [id, bit] : j.items()) beta[ProcessId{parse_id(id)}] = parse_bit(bit);
    return beta;
  });
}

Json map_to_json(const SimplicialMap& f) {
  Json out = Json::array();
  for (const auto& [from, to] : f.assignment) {
    out.push_back({{"from", vertex_to_json(from)}, {"to", vertex_to_json(to)}});
  }
  return out;
}

SimplicialMap map_from_json(const Json& j) {
  return parsing("map", [&] {
    SimplicialMap f;
    for (const auto& e : j) {
      if (!f.assignment.emplace(vertex_from_json(e.at("from")), vertex_from_json(e.at("to"))).second) {
        throw ParseError("map assigns a vertex twice");
      }
    }
    return f;
  });
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const ChromaticComplex& k) {
  const auto vertices = k.vertices();
  std::map<Vertex, std::size_t> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace(vertices[i], i);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& f : k.facets()) {
    const auto& vs = f.vertices();
    for (std::size_t a = 0; a < vs.size(); ++a) {
      for (std::size_t b = a + 1; b < vs.size(); ++b) edges.emplace(index.at(vs[a]), index.at(vs[b]));
    }
  }
  std::ostringstream out;
  out << "graph complex {\n";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    out << "  v" << i << " [label=\"" << dot_escape(vertices[i].to_string()) << "\"];\n";
  }
  for (const auto& [a, b] : edges) out << "  v" << a << " -- v" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string delta_table(const Task& task) {
  std::ostringstream out;
  for (const auto& [sigma, legal] : task.delta) {
    out << sigma.to_string() << " ->";
    if (legal.empty()) out << " (none)";
    for (const auto& tau : legal) out << ' ' << tau.to_string();
    out << '\n';
  }
  return out.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace speedup
