#pragma once

#include <filesystem>

#include "semcom/stitching.hpp"
#include "semcom/system_model.hpp"

// Profile file: the discrete action space as line-oriented CSV.
//
//   encoder,<id>,<flops>,<latent_dim>
//   accuracy,<encoder_id>,<anchor_size>,<G>
//
// Comments start with '#'. Every encoder must carry an accuracy entry for
// every anchor size appearing in the file (the accuracy matrix is dense).
// Anchor options are ordered by ascending size; their id is the size itself.

namespace semcom {

ActionSpace load_profile(const std::filesystem::path& path);

void save_profile(const std::filesystem::path& path, const ProfileTable& table);
void save_profile(const std::filesystem::path& path, const ActionSpace& space);

}  // namespace semcom
