#include "semcom/relrep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "semcom/rng.hpp"

namespace semcom {

namespace {
constexpr double kDegenerateNorm = 1e-12;
}

double cosine_sim(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("cosine_sim: dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  const double na = a.norm();
  const double nb = b.norm();
  if (na < kDegenerateNorm || nb < kDegenerateNorm) return 0.0;
  const double c = a.dot(b) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

RelRep encode_relative(const Embedding& x, const AnchorSet& set) {
  if (x.size() != set.dim())
    throw std::invalid_argument(
        "encode_relative: sample dimension " + std::to_string(x.size()) +
        " does not match anchor dimension " + std::to_string(set.dim()));
  RelRep rep;
  rep.anchor_set_id = set.id;
  rep.scores.resize(set.size());
  const double nx = x.norm();
  if (nx < kDegenerateNorm) {
    rep.scores.setZero();
    return rep;
  }
  for (int j = 0; j < set.size(); ++j) {
    const double nj = set.anchors.row(j).norm();
    if (nj < kDegenerateNorm) {
      rep.scores[j] = 0.0;
      continue;
    }
    const double c = set.anchors.row(j).dot(x) / (nx * nj);
    rep.scores[j] = std::clamp(c, -1.0, 1.0);
  }
  return rep;
}

RelRep encode_relative(const Embedding& x, const AnchorSet& set,
                       const SimilarityFn& sim) {
  if (x.size() != set.dim())
    throw std::invalid_argument("encode_relative: dimension mismatch");
  RelRep rep;
  rep.anchor_set_id = set.id;
  rep.scores.resize(set.size());
  for (int j = 0; j < set.size(); ++j)
    rep.scores[j] = sim(x, set.anchors.row(j).transpose());
  return rep;
}

Eigen::MatrixXd encode_relative_rows(const Eigen::MatrixXd& xs,
                                     const AnchorSet& set) {
  if (xs.cols() != set.dim())
    throw std::invalid_argument("encode_relative_rows: dimension mismatch");
  Eigen::MatrixXd out(xs.rows(), set.size());
  for (Eigen::Index i = 0; i < xs.rows(); ++i)
    out.row(i) = encode_relative(xs.row(i).transpose(), set).scores.transpose();
  return out;
}

std::vector<int> select_anchor_indices(int rows, int n, std::uint64_t seed) {
  if (rows < 1) throw std::invalid_argument("select_anchor_indices: empty dataset");
  if (n < 1 || n > rows)
    throw std::invalid_argument("select_anchor_indices: n=" + std::to_string(n) +
                                " out of [1, " + std::to_string(rows) + "]");
  std::vector<int> idx(static_cast<std::size_t>(rows));
  std::iota(idx.begin(), idx.end(), 0);
  rng::SeededRng gen(rng::combine(seed, 0x616e63686f7273ULL));  // "anchors"
  // Partial Fisher-Yates: the first n entries are the draw.
  for (int i = 0; i < n; ++i) {
    const auto j = i + static_cast<int>(gen.bounded(static_cast<std::uint64_t>(rows - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(n));
  return idx;
}

AnchorSet select_anchors_uniform(const Eigen::MatrixXd& dataset, int n,
                                 std::uint64_t seed, std::string set_id) {
  const auto indices = select_anchor_indices(static_cast<int>(dataset.rows()), n, seed);
  AnchorSet set;
  set.id = set_id.empty()
               ? "u" + std::to_string(n) + "s" + std::to_string(seed)
               : std::move(set_id);
  set.anchors.resize(n, dataset.cols());
  set.anchor_ids.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    set.anchors.row(i) = dataset.row(indices[static_cast<std::size_t>(i)]);
    set.anchor_ids.push_back("x" + std::to_string(indices[static_cast<std::size_t>(i)]));
  }
  return set;
}

}  // namespace semcom
