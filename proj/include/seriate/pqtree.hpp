#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "seriate/error.hpp"
#include "seriate/matrix.hpp"

namespace seriate {

/// Exact frontier count. The case-study tree already encodes
/// 23! * 4 ~ 1.03e23 permutations, so 64 bits are not enough.
using FrontierCount = boost::multiprecision::cpp_int;

/// Node of a PQ-tree. A P-node's children may be reordered arbitrarily;
/// a Q-node's children only read left-to-right or right-to-left. Leaves
/// carry unit labels.
struct PQNode {
  enum class Kind { Leaf, P, Q };

  Kind kind = Kind::Leaf;
  Label label = 0;
  std::vector<PQNode> children;

  bool is_leaf() const { return kind == Kind::Leaf; }

  friend bool operator==(const PQNode&, const PQNode&) = default;
};

inline PQNode leaf(Label label) { return PQNode{PQNode::Kind::Leaf, label, {}}; }

inline PQNode pnode(std::vector<PQNode> children) {
  return PQNode{PQNode::Kind::P, 0, std::move(children)};
}

inline PQNode qnode(std::vector<PQNode> children) {
  return PQNode{PQNode::Kind::Q, 0, std::move(children)};
}

namespace detail {

inline void collect_leaves(const PQNode& node, std::vector<Label>& out) {
  if (node.is_leaf()) {
    out.push_back(node.label);
    return;
  }
  for (const PQNode& c : node.children) collect_leaves(c, out);
}

inline void validate_node(const PQNode& node) {
  if (node.is_leaf()) {
    if (!node.children.empty()) throw DomainError("leaf node must not have children");
    return;
  }
  if (node.children.empty()) throw DomainError("internal node must have at least one child");
  for (const PQNode& c : node.children) validate_node(c);
}

inline Label min_leaf(const PQNode& node) {
  if (node.is_leaf()) return node.label;
  Label best = min_leaf(node.children.front());
  for (std::size_t i = 1; i < node.children.size(); ++i)
    best = std::min(best, min_leaf(node.children[i]));
  return best;
}

}  // namespace detail

/// A rooted PQ-tree over a universe of unit labels. Immutable after
/// construction; every operation below is read-only.
class PQTree {
 public:
  explicit PQTree(PQNode root) : root_(std::move(root)) {
    detail::validate_node(root_);
    detail::collect_leaves(root_, universe_);
    std::sort(universe_.begin(), universe_.end());
    if (std::adjacent_find(universe_.begin(), universe_.end()) != universe_.end())
      throw DomainError("duplicate leaf label in PQ-tree");
  }

  const PQNode& root() const { return root_; }

  /// Sorted leaf labels.
  const std::vector<Label>& universe() const { return universe_; }

  std::size_t size() const { return universe_.size(); }

  friend bool operator==(const PQTree& a, const PQTree& b) { return a.root_ == b.root_; }

 private:
  PQNode root_;
  std::vector<Label> universe_;
};

/// Leaf labels in current left-to-right order.
inline std::vector<Label> frontier(const PQTree& t) {
  std::vector<Label> out;
  out.reserve(t.size());
  detail::collect_leaves(t.root(), out);
  return out;
}

namespace detail {

inline FrontierCount count_frontiers(const PQNode& node) {
  if (node.is_leaf()) return 1;
  FrontierCount n = 1;
  for (const PQNode& c : node.children) n *= count_frontiers(c);
  const std::size_t k = node.children.size();
  if (node.kind == PQNode::Kind::P) {
    for (std::size_t i = 2; i <= k; ++i) n *= i;
  } else {
    if (k >= 2) n *= 2;
  }
  return n;
}

inline std::vector<std::vector<Label>> enumerate_node(const PQNode& node) {
  if (node.is_leaf()) return {{node.label}};
  std::vector<std::vector<std::vector<Label>>> child_sets;
  child_sets.reserve(node.children.size());
  for (const PQNode& c : node.children) child_sets.push_back(enumerate_node(c));

  const std::size_t k = node.children.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);

  std::vector<std::vector<std::size_t>> orders;
  if (node.kind == PQNode::Kind::P) {
    do {
      orders.push_back(order);
    } while (std::next_permutation(order.begin(), order.end()));
  } else {
    orders.push_back(order);
    if (k >= 2) orders.emplace_back(order.rbegin(), order.rend());
  }

  std::vector<std::vector<Label>> out;
  for (const auto& od : orders) {
    // Odometer over the per-child frontier sets in this arrangement.
    std::vector<std::size_t> idx(k, 0);
    bool done = false;
    while (!done) {
      std::vector<Label> seq;
      for (std::size_t c = 0; c < k; ++c) {
        const auto& part = child_sets[od[c]][idx[c]];
        seq.insert(seq.end(), part.begin(), part.end());
      }
      out.push_back(std::move(seq));
      done = true;
      for (std::size_t c = k; c-- > 0;) {
        if (++idx[c] < child_sets[od[c]].size()) {
          done = false;
          break;
        }
        idx[c] = 0;
      }
    }
  }
  return out;
}

}  // namespace detail

/// Exact number of admissible frontiers: the product over internal nodes
/// of k! for P-nodes and 2 for Q-nodes (arity >= 2).
inline FrontierCount count_frontiers(const PQTree& t) {
  return detail::count_frontiers(t.root());
}

/// The complete frontier set, each permutation once, sorted
/// lexicographically. Refuses (with the exact count) when the set would
/// exceed `cap`.
inline std::vector<std::vector<Label>> enumerate_frontiers(const PQTree& t,
                                                           std::uint64_t cap = 1000000) {
  FrontierCount n = count_frontiers(t);
  if (n > cap) {
    std::ostringstream os;
    os << "frontier count " << n << " exceeds enumeration cap " << cap;
    throw CapacityError(os.str(), n.str());
  }
  std::vector<std::vector<Label>> out = detail::enumerate_node(t.root());
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

struct Segment {
  std::size_t lo = 0, hi = 0, size = 0;
  bool ok = true;
};

inline Segment check_contiguous(const PQNode& node, const std::map<Label, std::size_t>& pos) {
  if (node.is_leaf()) {
    std::size_t p = pos.at(node.label);
    return {p, p, 1, true};
  }
  Segment seg{~std::size_t{0}, 0, 0, true};
  std::vector<std::size_t> child_mins;
  child_mins.reserve(node.children.size());
  for (const PQNode& c : node.children) {
    Segment cs = check_contiguous(c, pos);
    if (!cs.ok) return {0, 0, 0, false};
    seg.lo = std::min(seg.lo, cs.lo);
    seg.hi = std::max(seg.hi, cs.hi);
    seg.size += cs.size;
    child_mins.push_back(cs.lo);
  }
  if (seg.hi - seg.lo + 1 != seg.size) return {0, 0, 0, false};
  if (node.kind == PQNode::Kind::Q) {
    // Children must appear in the stored order or its exact reversal.
    bool fwd = std::is_sorted(child_mins.begin(), child_mins.end());
    bool rev = std::is_sorted(child_mins.rbegin(), child_mins.rend());
    if (!fwd && !rev) return {0, 0, 0, false};
  }
  return seg;
}

}  // namespace detail

/// Structural membership test: true iff `perm` is an admissible frontier.
/// Works in O(n log n) regardless of how many frontiers the tree encodes.
inline bool contains(const PQTree& t, std::span<const Label> perm) {
  std::vector<Label> sorted(perm.begin(), perm.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted != t.universe())
    throw DomainError("sequence is not a permutation of the tree universe");
  std::map<Label, std::size_t> pos;
  for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = i;
  return detail::check_contiguous(t.root(), pos).ok;
}

inline bool contains(const PQTree& t, const std::vector<Label>& perm) {
  return contains(t, std::span<const Label>(perm));
}

namespace detail {

inline PQNode canonicalize_node(const PQNode& node) {
  if (node.is_leaf()) return node;
  std::vector<PQNode> children;
  children.reserve(node.children.size());
  for (const PQNode& c : node.children) children.push_back(canonicalize_node(c));
  if (children.size() == 1) return std::move(children.front());
  PQNode::Kind kind = node.kind;
  if (kind == PQNode::Kind::Q && children.size() == 2) kind = PQNode::Kind::P;
  if (kind == PQNode::Kind::P) {
    std::stable_sort(children.begin(), children.end(), [](const PQNode& a, const PQNode& b) {
      return min_leaf(a) < min_leaf(b);
    });
  }
  return PQNode{kind, 0, std::move(children)};
}

// Canonical form plus a deterministic orientation for every Q-node, used
// for structural equivalence checks (Q reversal preserves the frontier
// set, so orientation must not distinguish trees).
inline PQNode normalize_node(const PQNode& node) {
  PQNode n = canonicalize_node(node);
  struct Rec {
    static void orient(PQNode& node) {
      for (PQNode& c : node.children) orient(c);
      if (node.kind == PQNode::Kind::Q) {
        std::vector<Label> fwd, rev;
        for (const PQNode& c : node.children) fwd.push_back(min_leaf(c));
        rev.assign(fwd.rbegin(), fwd.rend());
        if (rev < fwd) std::reverse(node.children.begin(), node.children.end());
      }
    }
  };
  Rec::orient(n);
  return n;
}

}  // namespace detail

/// Normal form with the same frontier set: single-child nodes spliced
/// out, 2-child Q-nodes rewritten as P-nodes, P-children sorted by their
/// smallest contained leaf. Idempotent.
inline PQTree canonicalize(const PQTree& t) {
  return PQTree(detail::canonicalize_node(t.root()));
}

/// True iff the two trees encode the same frontier set. Decided by
/// comparing canonical forms up to Q reversal, then (for structurally
/// different trees) by full enumeration when the counts stay small.
inline bool equivalent(const PQTree& a, const PQTree& b) {
  if (a.universe() != b.universe()) return false;
  if (detail::normalize_node(a.root()) == detail::normalize_node(b.root())) return true;
  FrontierCount ca = count_frontiers(a), cb = count_frontiers(b);
  if (ca != cb) return false;
  constexpr std::uint64_t kEnumLimit = 10000;
  if (ca <= kEnumLimit) return enumerate_frontiers(a, kEnumLimit) == enumerate_frontiers(b, kEnumLimit);
  return false;
}

}  // namespace seriate
