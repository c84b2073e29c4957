#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "semcom/relrep.hpp"
#include "semcom/system_model.hpp"

// Desk-scale zero-shot stitching study: heterogeneous synthetic encoders over
// a shared latent space, relative decoders trained once in closed form, and
// an accuracy profile G(encoder, anchor size) fed to the simulator.

namespace semcom {

// An encoder is an isometry of the shared latent space (orthogonal transform
// plus scale) with optional additive Gaussian noise per encoded sample.
struct SyntheticEncoder {
  std::string id;
  Eigen::MatrixXd transform;  // d x d, orthogonal
  double scale = 1.0;
  double noise_sigma = 0.0;
};

struct LabeledLatentDataset {
  Eigen::MatrixXd latents;  // one sample per row
  std::vector<int> labels;  // in [0, num_classes)
  int num_classes = 0;
  std::vector<int> train_indices;
  std::vector<int> val_indices;

  Eigen::MatrixXd rows(const std::vector<int>& indices) const;
  std::vector<int> labels_at(const std::vector<int>& indices) const;
};

// One-vs-all linear head over relative representations.
struct RelativeDecoder {
  std::string anchor_set_id;
  Eigen::MatrixXd weights;  // num_classes x n_anchors
  Eigen::VectorXd bias;     // num_classes
};

// Deterministic orthogonal matrix: QR of a seeded Gaussian matrix with the
// sign convention diag(R) > 0.
Eigen::MatrixXd random_orthogonal(int dim, std::uint64_t seed);

SyntheticEncoder make_synthetic_encoder(std::string id, int dim, double scale,
                                        double noise_sigma, std::uint64_t seed);

// Class means on the unit sphere, samples = mean + N(0, spread^2 I).
// Per class, the first ~3/4 of the samples are tagged train, the rest val
// (both splits always non-empty).
LabeledLatentDataset generate_dataset(int num_classes, int per_class, int dim,
                                      double spread, std::uint64_t seed);

// noise seed for a given (encoder, sample) pair; makes batch and single-sample
// encoding agree.
std::uint64_t encoder_noise_seed(const SyntheticEncoder& enc,
                                 std::uint64_t base_seed, std::uint64_t sample_index);

// scale * transform * x + N(0, noise_sigma^2), noise drawn from noise_seed.
Embedding apply_encoder(const SyntheticEncoder& enc, const Embedding& x,
                        std::uint64_t noise_seed);

// Applies the encoder to every row; row i uses encoder_noise_seed(enc, base_seed, i).
Eigen::MatrixXd apply_encoder_rows(const SyntheticEncoder& enc,
                                   const Eigen::MatrixXd& xs,
                                   std::uint64_t base_seed);

// One-vs-all ridge regression on one-hot targets via normal equations
// (pseudo-inverse solve when lambda == 0). Every class must appear in the
// labels. The bias column is regularized along with the weights.
RelativeDecoder train_decoder(const Eigen::MatrixXd& relreps,
                              const std::vector<int>& labels, int num_classes,
                              double ridge_lambda, std::string anchor_set_id);

// argmax with ties broken toward the lowest class index.
int predict_class(const RelativeDecoder& decoder, const Eigen::VectorXd& scores);

// Validation accuracy of `decoder` when samples and anchors are both encoded
// through `enc`. The decoder must have been trained against `anchors`.
double evaluate_accuracy(const RelativeDecoder& decoder,
                         const SyntheticEncoder& enc, const AnchorSet& anchors,
                         const LabeledLatentDataset& dataset,
                         std::uint64_t noise_base_seed);

struct ProfileTable {
  std::vector<EncoderProfile> encoders;   // flops metadata for the simulator
  std::vector<int> anchor_sizes;
  Eigen::MatrixXd accuracy;               // encoders x sizes, mean over seeds
};

// Full study: per seed, select anchors from the train split, train one decoder
// per anchor size through the reference encoder (identity by default, standing
// in for "an arbitrary encoder"), then evaluate every synthetic encoder
// zero-shot on the val split. flops[i] annotates encoders[i] in the output.
ProfileTable build_accuracy_profile(const std::vector<SyntheticEncoder>& encoders,
                                    const std::vector<double>& flops,
                                    const std::vector<int>& anchor_sizes,
                                    const LabeledLatentDataset& dataset,
                                    const std::vector<std::uint64_t>& seeds,
                                    double ridge_lambda);

ActionSpace to_action_space(const ProfileTable& table);

}  // namespace semcom
