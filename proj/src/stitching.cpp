#include "semcom/stitching.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "semcom/rng.hpp"

namespace semcom {

Eigen::MatrixXd LabeledLatentDataset::rows(const std::vector<int>& indices) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(indices.size()), latents.cols());
  for (std::size_t i = 0; i < indices.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = latents.row(indices[i]);
  return out;
}

std::vector<int> LabeledLatentDataset::labels_at(const std::vector<int>& indices) const {
  std::vector<int> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(labels[static_cast<std::size_t>(i)]);
  return out;
}

Eigen::MatrixXd random_orthogonal(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_orthogonal: dim must be >= 1");
  rng::SeededRng gen(rng::combine(seed, 0x6f727468ULL));  // "orth"
  Eigen::MatrixXd gauss(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) gauss(i, j) = gen.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the sign ambiguity of the decomposition so the result is unique.
  for (int j = 0; j < dim; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

SyntheticEncoder make_synthetic_encoder(std::string id, int dim, double scale,
                                        double noise_sigma, std::uint64_t seed) {
  if (scale <= 0)
    throw std::invalid_argument("make_synthetic_encoder: scale must be > 0");
  if (noise_sigma < 0)
    throw std::invalid_argument("make_synthetic_encoder: noise_sigma must be >= 0");
  SyntheticEncoder enc;
  enc.id = std::move(id);
  enc.transform = random_orthogonal(dim, seed);
  enc.scale = scale;
  enc.noise_sigma = noise_sigma;
  return enc;
}

LabeledLatentDataset generate_dataset(int num_classes, int per_class, int dim,
                                      double spread, std::uint64_t seed) {
  if (num_classes < 2)
    throw std::invalid_argument("generate_dataset: need at least 2 classes");
  if (per_class < 2)
    throw std::invalid_argument("generate_dataset: need at least 2 samples per class");
  if (dim < 2) throw std::invalid_argument("generate_dataset: need dim >= 2");
  if (spread < 0) throw std::invalid_argument("generate_dataset: spread must be >= 0");

  rng::SeededRng gen(rng::combine(seed, 0x64617461ULL));  // "data"
  LabeledLatentDataset ds;
  ds.num_classes = num_classes;
  ds.latents.resize(static_cast<Eigen::Index>(num_classes) * per_class, dim);
  ds.labels.reserve(static_cast<std::size_t>(num_classes) * per_class);

  const int train_per_class = std::max(1, 3 * per_class / 4);
  Eigen::VectorXd mean(dim);
  int row = 0;
  for (int c = 0; c < num_classes; ++c) {
    do {
      for (int j = 0; j < dim; ++j) mean[j] = gen.normal();
    } while (mean.norm() < 1e-12);
    mean.normalize();
    for (int s = 0; s < per_class; ++s, ++row) {
      for (int j = 0; j < dim; ++j)
        ds.latents(row, j) = mean[j] + spread * gen.normal();
      ds.labels.push_back(c);
      if (s < train_per_class)
        ds.train_indices.push_back(row);
      else
        ds.val_indices.push_back(row);
    }
  }
  return ds;
}

std::uint64_t encoder_noise_seed(const SyntheticEncoder& enc,
                                 std::uint64_t base_seed,
                                 std::uint64_t sample_index) {
  return rng::combine(rng::combine(base_seed, rng::hash_str(enc.id)), sample_index);
}

Embedding apply_encoder(const SyntheticEncoder& enc, const Embedding& x,
                        std::uint64_t noise_seed) {
  if (x.size() != enc.transform.cols())
    throw std::invalid_argument("apply_encoder: dimension mismatch");
  Embedding y = enc.scale * (enc.transform * x);
  if (enc.noise_sigma > 0) {
    for (Eigen::Index j = 0; j < y.size(); ++j)
      y[j] += enc.noise_sigma *
              rng::counter_normal(noise_seed, static_cast<std::uint64_t>(j), 0x6e6f697365ULL);
  }
  return y;
}

Eigen::MatrixXd apply_encoder_rows(const SyntheticEncoder& enc,
                                   const Eigen::MatrixXd& xs,
                                   std::uint64_t base_seed) {
  Eigen::MatrixXd out(xs.rows(), xs.cols());
  for (Eigen::Index i = 0; i < xs.rows(); ++i)
    out.row(i) = apply_encoder(enc, xs.row(i).transpose(),
                               encoder_noise_seed(enc, base_seed,
                                                  static_cast<std::uint64_t>(i)))
                     .transpose();
  return out;
}

RelativeDecoder train_decoder(const Eigen::MatrixXd& relreps,
                              const std::vector<int>& labels, int num_classes,
                              double ridge_lambda, std::string anchor_set_id) {
  const Eigen::Index n = relreps.rows();
  const Eigen::Index m = relreps.cols();
  if (n == 0) throw std::invalid_argument("train_decoder: no training samples");
  if (static_cast<Eigen::Index>(labels.size()) != n)
    throw std::invalid_argument("train_decoder: labels/relreps size mismatch");
  if (ridge_lambda < 0)
    throw std::invalid_argument("train_decoder: ridge_lambda must be >= 0");

  std::vector<int> counts(static_cast<std::size_t>(num_classes), 0);
  for (int y : labels) {
    if (y < 0 || y >= num_classes)
      throw std::invalid_argument("train_decoder: label out of range");
    ++counts[static_cast<std::size_t>(y)];
  }
  for (int c = 0; c < num_classes; ++c)
    if (counts[static_cast<std::size_t>(c)] == 0)
      throw std::invalid_argument("train_decoder: class " + std::to_string(c) +
                                  " has no training samples");

  // Augmented design [X 1]; one-hot targets.
  Eigen::MatrixXd design(n, m + 1);
  design.leftCols(m) = relreps;
  design.col(m).setOnes();
  Eigen::MatrixXd targets = Eigen::MatrixXd::Zero(n, num_classes);
  for (Eigen::Index i = 0; i < n; ++i)
    targets(i, labels[static_cast<std::size_t>(i)]) = 1.0;

  const Eigen::MatrixXd gram =
      design.transpose() * design +
      ridge_lambda * Eigen::MatrixXd::Identity(m + 1, m + 1);
  const Eigen::MatrixXd rhs = design.transpose() * targets;

  Eigen::MatrixXd solution;  // (m+1) x C
  if (ridge_lambda > 0) {
    solution = gram.ldlt().solve(rhs);
  } else {
    // Minimum-norm least squares when the normal equations are singular.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
    solution = cod.solve(targets);
  }

  RelativeDecoder dec;
  dec.anchor_set_id = std::move(anchor_set_id);
  dec.weights = solution.topRows(m).transpose();
  dec.bias = solution.row(m).transpose();
  return dec;
}

int predict_class(const RelativeDecoder& decoder, const Eigen::VectorXd& scores) {
  const Eigen::VectorXd out = decoder.weights * scores + decoder.bias;
  int best = 0;
  for (Eigen::Index c = 1; c < out.size(); ++c)
    if (out[c] > out[best]) best = static_cast<int>(c);
  return best;
}

double evaluate_accuracy(const RelativeDecoder& decoder,
                         const SyntheticEncoder& enc, const AnchorSet& anchors,
                         const LabeledLatentDataset& dataset,
                         std::uint64_t noise_base_seed) {
  if (decoder.anchor_set_id != anchors.id)
    throw std::invalid_argument("evaluate_accuracy: decoder was trained for anchor set '" +
                                decoder.anchor_set_id + "', got '" + anchors.id + "'");
  if (dataset.val_indices.empty())
    throw std::invalid_argument("evaluate_accuracy: empty validation split");

  // The transmitter encodes anchors and samples in its own latent space.
  AnchorSet encoded = anchors;
  encoded.anchors = apply_encoder_rows(enc, anchors.anchors,
                                       rng::combine(noise_base_seed, 0x616e63ULL));

  int correct = 0;
  for (std::size_t k = 0; k < dataset.val_indices.size(); ++k) {
    const int idx = dataset.val_indices[k];
    const Embedding sample = apply_encoder(
        enc, dataset.latents.row(idx).transpose(),
        encoder_noise_seed(enc, noise_base_seed, static_cast<std::uint64_t>(idx)));
    const RelRep rep = encode_relative(sample, encoded);
    if (predict_class(decoder, rep.scores) == dataset.labels[static_cast<std::size_t>(idx)])
      ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(dataset.val_indices.size());
}

ProfileTable build_accuracy_profile(const std::vector<SyntheticEncoder>& encoders,
                                    const std::vector<double>& flops,
                                    const std::vector<int>& anchor_sizes,
                                    const LabeledLatentDataset& dataset,
                                    const std::vector<std::uint64_t>& seeds,
                                    double ridge_lambda) {
  if (encoders.empty()) throw std::invalid_argument("build_accuracy_profile: no encoders");
  if (flops.size() != encoders.size())
    throw std::invalid_argument("build_accuracy_profile: flops list must match encoders");
  if (anchor_sizes.empty())
    throw std::invalid_argument("build_accuracy_profile: no anchor sizes");
  if (seeds.empty()) throw std::invalid_argument("build_accuracy_profile: no seeds");
  const int train_count = static_cast<int>(dataset.train_indices.size());
  for (int n : anchor_sizes)
    if (n < 1 || n > train_count)
      throw std::invalid_argument("build_accuracy_profile: anchor size " +
                                  std::to_string(n) + " exceeds train split (" +
                                  std::to_string(train_count) + ")");

  const int dim = static_cast<int>(dataset.latents.cols());
  // Decoders are trained in the reference latent space itself (identity
  // encoder, no noise); every synthetic encoder is then evaluated zero-shot.
  const Eigen::MatrixXd train = dataset.rows(dataset.train_indices);
  const std::vector<int> train_labels = dataset.labels_at(dataset.train_indices);

  ProfileTable table;
  table.anchor_sizes = anchor_sizes;
  table.accuracy = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(encoders.size()),
      static_cast<Eigen::Index>(anchor_sizes.size()));
  for (std::size_t e = 0; e < encoders.size(); ++e)
    table.encoders.push_back({encoders[e].id, flops[e], dim});

  for (std::uint64_t seed : seeds) {
    for (std::size_t a = 0; a < anchor_sizes.size(); ++a) {
      const AnchorSet anchors =
          select_anchors_uniform(train, anchor_sizes[a], seed);
      const Eigen::MatrixXd train_reps = encode_relative_rows(train, anchors);
      const RelativeDecoder decoder = train_decoder(
          train_reps, train_labels, dataset.num_classes, ridge_lambda, anchors.id);
      for (std::size_t e = 0; e < encoders.size(); ++e)
        table.accuracy(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(a)) +=
            evaluate_accuracy(decoder, encoders[e], anchors, dataset, seed);
    }
  }
  table.accuracy /= static_cast<double>(seeds.size());
  return table;
}

ActionSpace to_action_space(const ProfileTable& table) {
  ActionSpace space;
  space.encoders = table.encoders;
  for (int n : table.anchor_sizes)
    space.anchor_options.push_back({std::to_string(n), n});
  space.accuracy = table.accuracy;
  space.validate();
  return space;
}

}  // namespace semcom
