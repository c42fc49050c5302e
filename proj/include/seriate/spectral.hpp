#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "seriate/error.hpp"
#include "seriate/matrix.hpp"
#include "seriate/pqtree.hpp"

namespace seriate {

/// Thresholds governing the spectral analysis. All relative: they are
/// scaled by max(1, |reference|) at the point of use.
struct Tolerances {
  /// Accepted eigensolver residual, and the zero threshold used to
  /// recognize disconnected Laplacians.
  double eig_tol = 1e-8;
  /// Relative gap below which consecutive eigenvalues count as one
  /// multiple Fiedler value.
  double mult_tol = 1e-8;
  /// Relative gap below which Fiedler-vector entries count as tied.
  double tie_tol = 1e-8;
};

namespace detail {

inline void check_tolerances(const Tolerances& tol) {
  if (!(tol.eig_tol > 0) || !(tol.mult_tol > 0) || !(tol.tie_tol > 0))
    throw DomainError("tolerances must be strictly positive");
}

}  // namespace detail

/// Symmetric unit-by-unit matrix of shared-feature counts, S = B B^T
/// over binary data. s_ii is the number of features of unit i and
/// dominates its row.
class SimilarityMatrix {
 public:
  SimilarityMatrix(std::size_t order, std::vector<std::int64_t> entries,
                   std::vector<Label> labels = {})
      : n_(order),
        entries_(std::move(entries)),
        labels_(labels.empty() ? detail::default_labels(order) : std::move(labels)) {
    if (entries_.size() != n_ * n_) throw ShapeError("similarity entries must form a square");
    if (labels_.size() != n_) throw ShapeError("label count does not match order");
    detail::check_labels_unique(labels_, "unit");
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (at(i, j) != at(j, i)) throw DomainError("similarity matrix must be symmetric");
        if (at(i, j) < 0) throw DomainError("similarity entries must be non-negative");
        if (at(i, j) > std::min(at(i, i), at(j, j)))
          throw DomainError("similarity off-diagonal exceeds a diagonal entry");
      }
      if (at(i, i) < 0) throw DomainError("similarity entries must be non-negative");
    }
  }

  std::size_t order() const { return n_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<std::int64_t>& entries() const { return entries_; }
  const std::vector<Label>& labels() const { return labels_; }

  std::int64_t row_sum(std::size_t i) const {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += at(i, j);
    return s;
  }

  SimilarityMatrix principal_submatrix(std::span<const std::size_t> idx) const {
    std::vector<std::int64_t> sub(idx.size() * idx.size());
    std::vector<Label> labels(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
      labels[a] = labels_[idx[a]];
      for (std::size_t b = 0; b < idx.size(); ++b) sub[a * idx.size() + b] = at(idx[a], idx[b]);
    }
    return SimilarityMatrix(idx.size(), std::move(sub), std::move(labels));
  }

  friend bool operator==(const SimilarityMatrix&, const SimilarityMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::int64_t> entries_;
  std::vector<Label> labels_;
};

/// S = B B^T with exact integer arithmetic.
inline SimilarityMatrix similarity(const BinaryMatrix& b) {
  const std::size_t n = b.rows(), m = b.cols();
  std::vector<std::int64_t> s(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::int64_t dot = 0;
      for (std::size_t k = 0; k < m; ++k) dot += b(i, k) * b(j, k);
      s[i * n + j] = s[j * n + i] = dot;
    }
  }
  return SimilarityMatrix(n, std::move(s), b.row_labels());
}

/// Rejects non-binary data; binarize() first when working with counts.
inline SimilarityMatrix similarity(const AbundanceMatrix& m) {
  return similarity(BinaryMatrix(m));
}

/// Combinatorial graph Laplacian L = diag(S 1) - S. Rows sum to zero
/// exactly (entries stay integral, held in doubles for the eigensolver).
class LaplacianMatrix {
 public:
  LaplacianMatrix(std::size_t order, std::vector<double> entries, std::vector<Label> labels = {})
      : n_(order),
        entries_(std::move(entries)),
        labels_(labels.empty() ? detail::default_labels(order) : std::move(labels)) {
    if (entries_.size() != n_ * n_) throw ShapeError("laplacian entries must form a square");
    if (labels_.size() != n_) throw ShapeError("label count does not match order");
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (at(i, j) != at(j, i)) throw DomainError("laplacian matrix must be symmetric");
  }

  std::size_t order() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<double>& entries() const { return entries_; }
  const std::vector<Label>& labels() const { return labels_; }

  double inf_norm() const {
    double best = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      double row = 0;
      for (std::size_t j = 0; j < n_; ++j) row += std::abs(at(i, j));
      best = std::max(best, row);
    }
    return best;
  }

 private:
  std::size_t n_;
  std::vector<double> entries_;
  std::vector<Label> labels_;
};

inline LaplacianMatrix laplacian(const SimilarityMatrix& s) {
  const std::size_t n = s.order();
  std::vector<double> l(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t d = s.row_sum(i);
    for (std::size_t j = 0; j < n; ++j)
      l[i * n + j] = static_cast<double>((i == j ? d : 0) - s.at(i, j));
  }
  return LaplacianMatrix(n, std::move(l), s.labels());
}

/// Connected components of the graph with an edge wherever an
/// off-diagonal entry is positive. Ordered by smallest member; indices
/// within a component ascend.
inline std::vector<std::vector<std::size_t>> connected_components(const SimilarityMatrix& s) {
  const std::size_t n = s.order();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp, stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (std::size_t v = 0; v < n; ++v) {
        if (!seen[v] && v != u && s.at(u, v) > 0) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

struct EigenPairs {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[i] pairs with values[i]
};

namespace detail {

inline EigenPairs full_eigh(const LaplacianMatrix& l, const Tolerances& tol) {
  const auto n = static_cast<Eigen::Index>(l.order());
  Eigen::MatrixXd mat(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) mat(i, j) = l.at(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat);
  if (solver.info() != Eigen::Success)
    throw NumericError("symmetric eigensolver failed to converge");

  const double scale = std::max(1.0, l.inf_norm());
  EigenPairs out;
  out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  out.vectors.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd v = solver.eigenvectors().col(i);
    const double residual = (mat * v - out.values[i] * v).cwiseAbs().maxCoeff();
    if (residual > tol.eig_tol * scale) {
      std::ostringstream os;
      os << "eigenpair residual " << residual << " exceeds tolerance for eigenvalue index " << i;
      throw NumericError(os.str());
    }
    out.vectors[i].assign(v.data(), v.data() + n);
  }
  return out;
}

}  // namespace detail

/// The k smallest eigenpairs of a symmetric PSD Laplacian, eigenvalues
/// ascending, eigenvectors orthonormal.
inline EigenPairs smallest_eigenpairs(const LaplacianMatrix& l, std::size_t k,
                                      const Tolerances& tol = {}) {
  detail::check_tolerances(tol);
  if (k == 0 || k > l.order()) throw DomainError("requested eigenpair count must be in [1, n]");
  EigenPairs all = detail::full_eigh(l, tol);
  all.values.resize(k);
  all.vectors.resize(k);
  return all;
}

/// Fiedler analysis of a connected component's Laplacian.
struct FiedlerInfo {
  /// Second-smallest eigenvalue.
  double value = 0;
  /// Number of eigenvalues within mult_tol of the Fiedler value.
  std::size_t multiplicity = 1;
  /// Representative eigenvector, sign-fixed: the first entry whose
  /// magnitude exceeds tie_tol * max|v| is positive.
  std::vector<double> vector;
  /// Gap to the next distinct eigenvalue (infinity when none remains).
  double eigengap = 0;
  /// Orthonormal eigenvectors spanning the Fiedler eigenspace;
  /// basis.front() == vector.
  std::vector<std::vector<double>> basis;
};

namespace detail {

inline void fix_sign(std::vector<double>& v, double tie_tol) {
  double vinf = 0;
  for (double x : v) vinf = std::max(vinf, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > tie_tol * vinf) {
      if (x < 0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

}  // namespace detail

inline FiedlerInfo fiedler_info(const LaplacianMatrix& l, const Tolerances& tol = {}) {
  detail::check_tolerances(tol);
  const std::size_t n = l.order();
  if (n < 3) throw DomainError("fiedler analysis requires order >= 3; sizes 1 and 2 are trivial");
  EigenPairs eig = detail::full_eigh(l, tol);
  const double zero_thresh = tol.eig_tol * std::max(1.0, l.inf_norm());
  if (eig.values[1] <= zero_thresh)
    throw DomainError(
        "laplacian has more than one (near-)zero eigenvalue: the graph is disconnected; "
        "decompose into connected components first");

  FiedlerInfo info;
  info.value = eig.values[1];
  const double mult_scale = tol.mult_tol * std::max(1.0, std::abs(info.value));
  std::size_t mult = 1;
  while (1 + mult < n && eig.values[1 + mult] - info.value <= mult_scale) ++mult;
  info.multiplicity = mult;
  info.eigengap = (1 + mult < n) ? eig.values[1 + mult] - info.value
                                 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= mult; ++i) info.basis.push_back(eig.vectors[i]);
  detail::fix_sign(info.basis.front(), tol.tie_tol);
  info.vector = info.basis.front();
  return info;
}

enum class IllPosedPolicy {
  /// Replace the component by a P-node over its units (all orders
  /// admissible) and warn.
  PCollapse,
  /// Order by the representative eigenvector anyway, still warning.
  FirstVector,
};

struct Warning {
  enum class Code { InputBinarized, IllPosedComponent };

  Code code = Code::InputBinarized;
  std::vector<Label> units;  // ascending; empty for InputBinarized
  std::string message;
  std::vector<std::vector<double>> basis;  // Fiedler eigenspace, ill-posed only
};

struct ComponentInfo {
  std::vector<Label> units;             // ascending
  std::optional<FiedlerInfo> fiedler;   // engaged for components of size >= 3
};

struct SeriationResult {
  PQTree tree;
  std::vector<ComponentInfo> components;
  std::vector<Warning> warnings;

  bool ill_posed() const {
    return std::any_of(warnings.begin(), warnings.end(), [](const Warning& w) {
      return w.code == Warning::Code::IllPosedComponent;
    });
  }
};

namespace detail {

struct SeriationContext {
  Tolerances tol;
  IllPosedPolicy policy;
  std::vector<Warning>* warnings;
};

inline PQNode seriate_component(const SimilarityMatrix& s, SeriationContext& ctx,
                                std::optional<FiedlerInfo>* record);

// Entry point for unit subsets whose connectivity is unknown (tie
// blocks): splits into components first, as the top level does.
inline PQNode seriate_set(const SimilarityMatrix& s, SeriationContext& ctx) {
  auto comps = connected_components(s);
  if (comps.size() == 1) return seriate_component(s, ctx, nullptr);
  std::vector<PQNode> children;
  children.reserve(comps.size());
  for (const auto& c : comps)
    children.push_back(seriate_component(s.principal_submatrix(c), ctx, nullptr));
  return pnode(std::move(children));
}

// Indices grouped into blocks of (near-)equal eigenvector entries,
// blocks ordered by ascending entry, members ascending within a block.
inline std::vector<std::vector<std::size_t>> tie_blocks(const std::vector<double>& v,
                                                        const std::vector<Label>& labels,
                                                        double tie_tol) {
  double vinf = 0;
  for (double x : v) vinf = std::max(vinf, std::abs(x));
  const double tol = tie_tol * vinf;

  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return v[a] != v[b] ? v[a] < v[b] : labels[a] < labels[b];
  });

  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i : order) {
    // Compare against the block's first (anchor) entry, not the previous
    // one, so a chain of sub-threshold gaps cannot merge distinct values.
    if (!blocks.empty() && std::abs(v[i] - v[blocks.back().front()]) <= tol)
      blocks.back().push_back(i);
    else
      blocks.push_back({i});
  }
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  return blocks;
}

inline PQNode ill_posed_component(const SimilarityMatrix& s, SeriationContext& ctx,
                                  const FiedlerInfo& fi, const char* reason) {
  std::vector<Label> units = s.labels();
  std::sort(units.begin(), units.end());

  const bool collapse = ctx.policy == IllPosedPolicy::PCollapse;
  std::ostringstream os;
  os << "ill-posed component {";
  for (std::size_t i = 0; i < units.size(); ++i) os << (i ? "," : "") << units[i];
  os << "}: " << reason << "; "
     << (collapse ? "p-collapse applied" : "ordering by representative eigenvector");
  ctx.warnings->push_back(
      Warning{Warning::Code::IllPosedComponent, units, os.str(), fi.basis});

  if (!collapse) {
    auto blocks = tie_blocks(fi.vector, s.labels(), ctx.tol.tie_tol);
    if (blocks.size() > 1) {
      std::vector<PQNode> children;
      for (const auto& b : blocks) {
        if (b.size() == 1)
          children.push_back(leaf(s.labels()[b.front()]));
        else
          children.push_back(seriate_set(s.principal_submatrix(b), ctx));
      }
      return qnode(std::move(children));
    }
    // Every entry tied: nothing to order by, fall through to a P-node.
  }
  std::vector<PQNode> leaves;
  leaves.reserve(units.size());
  for (Label u : units) leaves.push_back(leaf(u));
  return pnode(std::move(leaves));
}

inline PQNode seriate_component(const SimilarityMatrix& s, SeriationContext& ctx,
                                std::optional<FiedlerInfo>* record) {
  const std::size_t n = s.order();
  if (n == 1) return leaf(s.labels()[0]);
  if (n == 2) return pnode({leaf(s.labels()[0]), leaf(s.labels()[1])});

  FiedlerInfo fi = fiedler_info(laplacian(s), ctx.tol);
  if (record) *record = fi;

  if (fi.multiplicity > 1)
    return ill_posed_component(s, ctx, fi, "Fiedler value is multiple");

  auto blocks = tie_blocks(fi.vector, s.labels(), ctx.tol.tie_tol);
  if (blocks.size() == 1)
    return ill_posed_component(s, ctx, fi, "all Fiedler-vector entries are tied");

  std::vector<PQNode> children;
  children.reserve(blocks.size());
  for (const auto& b : blocks) {
    if (b.size() == 1)
      children.push_back(leaf(s.labels()[b.front()]));
    else
      children.push_back(seriate_set(s.principal_submatrix(b), ctx));
  }
  return qnode(std::move(children));
}

}  // namespace detail

/// Recursive spectral seriation of a similarity matrix. Connected
/// components become children of a P-node; each component of size >= 3
/// is ordered by its Fiedler vector into a Q-node, recursing on blocks
/// of tied entries; a multiple Fiedler value marks the component
/// ill-posed and is resolved by `policy` with a warning either way.
inline SeriationResult seriate_similarity(const SimilarityMatrix& s, const Tolerances& tol = {},
                                          IllPosedPolicy policy = IllPosedPolicy::PCollapse) {
  detail::check_tolerances(tol);
  if (s.order() == 0) throw DomainError("cannot seriate an empty matrix");

  std::vector<Warning> warnings;
  detail::SeriationContext ctx{tol, policy, &warnings};

  auto comps = connected_components(s);
  std::vector<ComponentInfo> infos;
  std::vector<PQNode> children;
  infos.reserve(comps.size());
  children.reserve(comps.size());
  for (const auto& c : comps) {
    SimilarityMatrix sub = s.principal_submatrix(c);
    ComponentInfo info{sub.labels(), std::nullopt};
    children.push_back(detail::seriate_component(sub, ctx, &info.fiedler));
    infos.push_back(std::move(info));
  }
  PQNode root = comps.size() == 1 ? std::move(children.front()) : pnode(std::move(children));
  PQTree tree = canonicalize(PQTree(std::move(root)));
  return SeriationResult{std::move(tree), std::move(infos), std::move(warnings)};
}

/// Full pipeline from a binary unit/feature matrix.
inline SeriationResult spectral_seriation(const BinaryMatrix& b, const Tolerances& tol = {},
                                          IllPosedPolicy policy = IllPosedPolicy::PCollapse) {
  if (b.rows() == 0) throw DomainError("cannot seriate an empty matrix");
  return seriate_similarity(similarity(b), tol, policy);
}

/// Full pipeline from abundance counts. Non-binary input is binarized
/// with a recorded warning.
inline SeriationResult spectral_seriation(const AbundanceMatrix& m, const Tolerances& tol = {},
                                          IllPosedPolicy policy = IllPosedPolicy::PCollapse) {
  if (m.rows() == 0) throw DomainError("cannot seriate an empty matrix");
  const bool already_binary = m.is_binary();
  SeriationResult result = spectral_seriation(binarize(m), tol, policy);
  if (!already_binary) {
    Warning w;
    w.code = Warning::Code::InputBinarized;
    w.message = "input has non-binary abundance entries; binarized before similarity";
    result.warnings.insert(result.warnings.begin(), std::move(w));
  }
  return result;
}

/// True iff entries never increase moving away from the diagonal along
/// any row or column (Robinson form).
inline bool robinson_check(const SimilarityMatrix& s) {
  const std::size_t n = s.order();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j + 1 < n; ++j)
      if (s.at(i, j) < s.at(i, j + 1)) return false;
    for (std::size_t j = 0; j + 1 <= i; ++j)
      if (s.at(i, j) > s.at(i, j + 1)) return false;
  }
  return true;
}

}  // namespace seriate
