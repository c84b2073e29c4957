#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <vector>

#include "semcom/relrep.hpp"

// Columnar text files for embeddings and anchor sets.
//
// Format: an optional leading comment (`# anchor_set <set_id>` for anchor
// sets), then a header row `<d>,<id_1>,...,<id_n>`, then n rows of d
// comma-separated reals each. Values are written with shortest round-trip
// formatting, so save/load/save is byte-identical.

namespace semcom {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

struct EmbeddingFile {
  std::vector<std::string> ids;  // one per row
  Eigen::MatrixXd vectors;       // one embedding per row
};

void save_embeddings(const std::filesystem::path& path, const EmbeddingFile& data);
EmbeddingFile load_embeddings(const std::filesystem::path& path);

void save_anchor_set(const std::filesystem::path& path, const AnchorSet& set);
AnchorSet load_anchor_set(const std::filesystem::path& path);

}  // namespace semcom
