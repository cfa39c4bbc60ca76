#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ctrlobs/errors.hpp"
#include "ctrlobs/placement.hpp"
#include "ctrlobs/structure.hpp"
#include "ctrlobs/verify.hpp"

namespace ctrlobs {

enum class InstanceFormat { json, edge_list };

/// A parsed instance: the dynamics pattern plus optional bookkeeping that
/// rides along into reports.
struct InstanceDocument {
  StructuralMatrix matrix;
  std::string name;                 // empty when absent
  nlohmann::ordered_json metadata;  // null when absent
};

/// Picks the format from a file name: ".json" means JSON, anything else is
/// the plain edge-list format.
inline InstanceFormat guess_format(const std::string& path) {
  const std::string suffix = ".json";
  if (path.size() >= suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return InstanceFormat::json;
  }
  return InstanceFormat::edge_list;
}

namespace detail {

inline std::vector<std::pair<int, int>> edge_pairs_from_json(
    const nlohmann::ordered_json& j) {
  if (!j.is_array()) throw input_error("\"edges\" must be an array");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw input_error("each edge must be a pair of integers [from, to]");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return edges;
}

inline InstanceDocument parse_instance_json(const std::string& text,
                                            bool reject_duplicates) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw input_error("instance must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw input_error("instance needs an integer field \"n\"");
  }
  if (!j.contains("edges")) {
    throw input_error("instance needs an \"edges\" array");
  }
  InstanceDocument doc;
  doc.matrix = structural_from_edge_list(
      j["n"].get<int>(), edge_pairs_from_json(j["edges"]), reject_duplicates);
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw input_error("\"name\" must be a string");
    doc.name = j["name"].get<std::string>();
  }
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) {
      throw input_error("\"metadata\" must be an object");
    }
    doc.metadata = j["metadata"];
  }
  return doc;
}

/// Edge-list format: comment lines start with '#', blank lines are skipped,
/// the first content line is the node count, every later content line is an
/// edge "from to". Errors cite 1-based line numbers.
inline InstanceDocument parse_instance_edge_list(const std::string& text,
                                                 bool reject_duplicates) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (n < 0) {
      if (!(fields >> n) || n < 1) {
        throw input_error("line " + std::to_string(line_no) +
                          ": expected the node count");
      }
    } else {
      int from = 0, to = 0;
      if (!(fields >> from >> to)) {
        throw input_error("line " + std::to_string(line_no) +
                          ": expected an edge \"from to\"");
      }
      if (from < 1 || from > n || to < 1 || to > n) {
        throw input_error("line " + std::to_string(line_no) + ": edge " +
                          std::to_string(from) + " -> " + std::to_string(to) +
                          " is out of range for n=" + std::to_string(n));
      }
      edges.emplace_back(from, to);
    }
    std::string rest;
    if (fields >> rest) {
      throw input_error("line " + std::to_string(line_no) +
                        ": unexpected trailing content \"" + rest + "\"");
    }
  }
  if (n < 0) throw input_error("edge list is empty: the node count is missing");
  InstanceDocument doc;
  doc.matrix = structural_from_edge_list(n, edges, reject_duplicates);
  return doc;
}

}  // namespace detail

/// Parses an instance from text. Duplicate edges collapse silently unless
/// `reject_duplicates` is set.
inline InstanceDocument parse_instance(const std::string& text,
                                       InstanceFormat format,
                                       bool reject_duplicates = false) {
  if (format == InstanceFormat::json) {
    return detail::parse_instance_json(text, reject_duplicates);
  }
  return detail::parse_instance_edge_list(text, reject_duplicates);
}

/// Serializes an instance. Output is byte-stable: fixed key order, edges
/// sorted, two-space indentation, trailing newline.
inline std::string serialize_instance(const InstanceDocument& doc,
                                      InstanceFormat format) {
  const Digraph g = digraph_of(doc.matrix);
  if (format == InstanceFormat::json) {
    nlohmann::ordered_json j;
    if (!doc.name.empty()) j["name"] = doc.name;
    j["n"] = g.n;
    auto& edges = j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [u, v] : g.edges) edges.push_back({u, v});
    if (doc.metadata.is_object() && !doc.metadata.empty()) {
      j["metadata"] = doc.metadata;
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  if (!doc.name.empty()) out << "# " << doc.name << "\n";
  out << g.n << "\n";
  for (const auto& [u, v] : g.edges) out << u << " " << v << "\n";
  return out.str();
}

/// Parses a placement file: a JSON object with "inputs" and "outputs" arrays
/// of state indices. Input order does not matter; lists are normalized.
inline Placement parse_placement(const std::string& text, int n) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("inputs") || !j.contains("outputs")) {
    throw input_error(
        "placement must be a JSON object with \"inputs\" and \"outputs\"");
  }
  auto states = [n](const nlohmann::ordered_json& arr, const char* what) {
    if (!arr.is_array()) {
      throw input_error(std::string("\"") + what + "\" must be an array");
    }
    std::vector<int> s;
    for (const auto& v : arr) {
      if (!v.is_number_integer()) {
        throw input_error(std::string("\"") + what +
                          "\" must hold integer state indices");
      }
      s.push_back(v.get<int>());
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    detail::check_state_set(s, n, what);
    return s;
  };
  Placement p;
  p.n = n;
  p.inputs = states(j["inputs"], "input");
  p.outputs = states(j["outputs"], "output");
  return p;
}

inline std::string serialize_placement(const Placement& p) {
  nlohmann::ordered_json j;
  j["inputs"] = p.inputs;
  j["outputs"] = p.outputs;
  return j.dump(2) + "\n";
}

/// Renders a verification report. Key order is fixed (and so byte-stable):
/// n, inputs, outputs, cost, controllable, observable, strongly_connected,
/// algorithm, metadata. `extra_metadata` entries are appended to the
/// metadata object after the built-in diagnostics, in their given order.
inline std::string serialize_report(
    const VerificationReport& r, const Placement& p,
    const std::string& algorithm,
    const nlohmann::ordered_json& extra_metadata =
        nlohmann::ordered_json::object()) {
  nlohmann::ordered_json j;
  j["n"] = p.n;
  j["inputs"] = p.inputs;
  j["outputs"] = p.outputs;
  j["cost"] = r.cost;
  j["controllable"] = r.controllable;
  j["observable"] = r.observable;
  j["strongly_connected"] = r.strongly_connected;
  j["algorithm"] = algorithm;
  nlohmann::ordered_json meta;
  meta["matching_deficiency_inputs"] = r.matching_deficiency_inputs;
  meta["notes"] = r.notes;
  if (extra_metadata.is_object()) {
    for (const auto& [key, value] : extra_metadata.items()) meta[key] = value;
  }
  j["metadata"] = meta;
  return j.dump(2) + "\n";
}

/// Graphviz rendering: states as circles x1..xn, dedicated inputs as blue
/// squares u1..u|I| with blue arrows into their states, dedicated outputs as
/// green squares y1..y|J| fed by green arrows. Inputs and outputs are
/// renumbered 1.. in ascending state order. Deterministic output.
inline std::string export_dot(const StructuralMatrix& a,
                              const Placement* placement = nullptr) {
  const Digraph g = digraph_of(a);
  std::ostringstream out;
  out << "digraph network {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (int i = 1; i <= g.n; ++i) out << "  x" << i << ";\n";
  for (const auto& [u, v] : g.edges) {
    out << "  x" << u << " -> x" << v << ";\n";
  }
  if (placement != nullptr) {
    detail::check_state_set(placement->inputs, g.n, "input");
    detail::check_state_set(placement->outputs, g.n, "output");
    for (std::size_t t = 0; t < placement->inputs.size(); ++t) {
      out << "  u" << (t + 1) << " [shape=square, color=blue];\n";
      out << "  u" << (t + 1) << " -> x" << placement->inputs[t]
          << " [color=blue];\n";
    }
    for (std::size_t t = 0; t < placement->outputs.size(); ++t) {
      out << "  y" << (t + 1) << " [shape=square, color=green];\n";
      out << "  x" << placement->outputs[t] << " -> y" << (t + 1)
          << " [color=green];\n";
    }
  }
  out << "}\n";
  return out.str();
}

/// Whole-file read, throwing input_error with the path on failure.
inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write file: " + path);
  out << content;
  if (!out) throw input_error("failed while writing file: " + path);
}

}  // namespace ctrlobs
