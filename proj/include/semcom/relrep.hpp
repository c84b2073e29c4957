#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Relative representations: a sample is described by its similarity to an
// ordered set of anchor embeddings instead of by its raw latent coordinates.
// Anchor order is part of the set identity; receivers decode positionally.

namespace semcom {

using Embedding = Eigen::VectorXd;

struct AnchorSet {
  std::string id;
  std::vector<std::string> anchor_ids;  // one per row, fixed order
  Eigen::MatrixXd anchors;              // one anchor per row

  int size() const { return static_cast<int>(anchors.rows()); }
  int dim() const { return static_cast<int>(anchors.cols()); }
};

struct RelRep {
  std::string anchor_set_id;
  Eigen::VectorXd scores;  // length == anchor set size, entries in [-1, 1]
};

// Pluggable similarity; cosine is the only shipped implementation.
using SimilarityFn = std::function<double(const Embedding&, const Embedding&)>;

// <a,b>/(|a||b|), clamped to [-1, 1]. Either norm below 1e-12 yields 0
// (degenerate-vector rule). Throws std::invalid_argument on dimension
// mismatch.
double cosine_sim(const Embedding& a, const Embedding& b);

RelRep encode_relative(const Embedding& x, const AnchorSet& set);
RelRep encode_relative(const Embedding& x, const AnchorSet& set,
                       const SimilarityFn& sim);

// Row i of the result is the relative representation of row i of xs.
Eigen::MatrixXd encode_relative_rows(const Eigen::MatrixXd& xs,
                                     const AnchorSet& set);

// n distinct row indices drawn uniformly without replacement, deterministic
// in (row count, n, seed). Throws std::invalid_argument if n is out of
// [1, rows].
std::vector<int> select_anchor_indices(int rows, int n, std::uint64_t seed);

// Builds the anchor set from uniformly selected dataset rows. Anchor ids
// record the source row indices; the set id is derived from (n, seed) unless
// given.
AnchorSet select_anchors_uniform(const Eigen::MatrixXd& dataset, int n,
                                 std::uint64_t seed, std::string set_id = "");

}  // namespace semcom
