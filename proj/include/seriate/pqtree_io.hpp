#pragma once

#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "seriate/error.hpp"
#include "seriate/pqtree.hpp"

namespace seriate {

enum class TreeFormat { Json, Dot, Ascii };

namespace detail {

inline nlohmann::json node_to_json(const PQNode& node) {
  nlohmann::json j;
  switch (node.kind) {
    case PQNode::Kind::Leaf:
      j["kind"] = "leaf";
      j["label"] = node.label;
      return j;
    case PQNode::Kind::P:
      j["kind"] = "p";
      break;
    case PQNode::Kind::Q:
      j["kind"] = "q";
      break;
  }
  j["children"] = nlohmann::json::array();
  for (const PQNode& c : node.children) j["children"].push_back(node_to_json(c));
  return j;
}

inline PQNode node_from_json(const nlohmann::json& j, const std::string& path) {
  auto fail = [&](const std::string& why) {
    throw ParseError("invalid tree json: " + why + " at " + (path.empty() ? "/" : path));
  };
  if (!j.is_object()) fail("expected an object");
  if (!j.contains("kind") || !j["kind"].is_string()) fail("missing string field 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "leaf") {
    if (!j.contains("label") || !j["label"].is_number_integer())
      fail("leaf requires integer field 'label'");
    return leaf(j["label"].get<Label>());
  }
  if (kind != "p" && kind != "q") fail("'kind' must be one of leaf/p/q, got '" + kind + "'");
  if (!j.contains("children") || !j["children"].is_array() || j["children"].empty())
    fail("'" + kind + "' node requires non-empty array field 'children'");
  std::vector<PQNode> children;
  for (std::size_t i = 0; i < j["children"].size(); ++i)
    children.push_back(node_from_json(j["children"][i], path + "/children/" + std::to_string(i)));
  return kind == "p" ? pnode(std::move(children)) : qnode(std::move(children));
}

// P-nodes draw as circles, Q-nodes as boxes, leaves as triangles.
inline void node_to_dot(const PQNode& node, std::ostringstream& os, int& next_id) {
  const int id = next_id++;
  switch (node.kind) {
    case PQNode::Kind::Leaf:
      os << "  n" << id << " [shape=triangle, label=\"" << node.label << "\"];\n";
      break;
    case PQNode::Kind::P:
      os << "  n" << id << " [shape=circle, label=\"P\"];\n";
      break;
    case PQNode::Kind::Q:
      os << "  n" << id << " [shape=box, label=\"Q\"];\n";
      break;
  }
  for (const PQNode& c : node.children) {
    const int child_id = next_id;
    node_to_dot(c, os, next_id);
    os << "  n" << id << " -> n" << child_id << ";\n";
  }
}

inline void node_to_ascii(const PQNode& node, std::ostringstream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
  switch (node.kind) {
    case PQNode::Kind::Leaf:
      os << node.label << '\n';
      return;
    case PQNode::Kind::P:
      os << "P\n";
      break;
    case PQNode::Kind::Q:
      os << "Q\n";
      break;
  }
  for (const PQNode& c : node.children) node_to_ascii(c, os, depth + 1);
}

}  // namespace detail

inline nlohmann::json to_json(const PQTree& t) { return detail::node_to_json(t.root()); }

inline PQTree tree_from_json(const nlohmann::json& j) {
  return PQTree(detail::node_from_json(j, ""));
}

inline std::string to_text(const PQTree& t, TreeFormat format) {
  switch (format) {
    case TreeFormat::Json:
      return to_json(t).dump(2) + "\n";
    case TreeFormat::Dot: {
      std::ostringstream os;
      os << "digraph pqtree {\n  ordering=out;\n";
      int next_id = 0;
      detail::node_to_dot(t.root(), os, next_id);
      os << "}\n";
      return os.str();
    }
    case TreeFormat::Ascii: {
      std::ostringstream os;
      detail::node_to_ascii(t.root(), os, 0);
      return os.str();
    }
  }
  throw DomainError("unknown tree format");
}

/// Inverse of to_text for the json format.
inline PQTree from_text(std::string_view json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid tree json: not parseable as JSON");
  return tree_from_json(j);
}

}  // namespace seriate
