#include "semcom/profile.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "semcom/errors.hpp"
#include "semcom/io.hpp"

namespace semcom {

namespace {

struct AccuracyEntry {
  std::string encoder_id;
  int anchor_size;
  double g;
};

double parse_num(const std::string& field, const std::filesystem::path& path,
                 int line_no) {
  double v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                      ": not a number: '" + field + "'");
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    // trim surrounding blanks
    const auto b = field.find_first_not_of(" \t");
    const auto e = field.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

ActionSpace load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile file: " + path.string());

  std::vector<EncoderProfile> encoders;
  std::vector<AccuracyEntry> entries;
  std::set<int> sizes;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_fields(line);
    if (fields[0] == "encoder") {
      if (fields.size() != 4)
        throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                          ": encoder rows need 4 fields (encoder,id,flops,latent_dim)");
      EncoderProfile enc;
      enc.id = fields[1];
      enc.flops = parse_num(fields[2], path, line_no);
      enc.latent_dim = static_cast<int>(parse_num(fields[3], path, line_no));
      for (const auto& existing : encoders)
        if (existing.id == enc.id)
          throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                            ": duplicate encoder id '" + enc.id + "'");
      if (enc.flops <= 0)
        throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                          ": encoder flops must be > 0");
      encoders.push_back(std::move(enc));
    } else if (fields[0] == "accuracy") {
      if (fields.size() != 4)
        throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                          ": accuracy rows need 4 fields (accuracy,encoder_id,anchor_size,G)");
      AccuracyEntry e;
      e.encoder_id = fields[1];
      e.anchor_size = static_cast<int>(parse_num(fields[2], path, line_no));
      e.g = parse_num(fields[3], path, line_no);
      if (e.anchor_size < 1)
        throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                          ": anchor size must be >= 1");
      if (!(e.g >= 0.0 && e.g <= 1.0))
        throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                          ": accuracy G=" + fields[3] + " out of [0, 1]");
      sizes.insert(e.anchor_size);
      entries.push_back(std::move(e));
    } else {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": unknown row type '" + fields[0] + "'");
    }
  }

  if (encoders.empty())
    throw ConfigError(path.string() + ": profile defines no encoders");
  if (sizes.empty())
    throw ConfigError(path.string() + ": profile defines no accuracy entries");

  ActionSpace space;
  space.encoders = std::move(encoders);
  for (int n : sizes) space.anchor_options.push_back({std::to_string(n), n});
  space.accuracy.resize(static_cast<Eigen::Index>(space.encoders.size()),
                        static_cast<Eigen::Index>(space.anchor_options.size()));
  space.accuracy.setConstant(-1.0);

  std::map<std::string, std::size_t> enc_index;
  for (std::size_t i = 0; i < space.encoders.size(); ++i)
    enc_index[space.encoders[i].id] = i;
  std::map<int, std::size_t> size_index;
  for (std::size_t j = 0; j < space.anchor_options.size(); ++j)
    size_index[space.anchor_options[j].size] = j;

  for (const auto& e : entries) {
    const auto it = enc_index.find(e.encoder_id);
    if (it == enc_index.end())
      throw ConfigError(path.string() + ": accuracy row references unknown encoder '" +
                        e.encoder_id + "'");
    const auto i = static_cast<Eigen::Index>(it->second);
    const auto j = static_cast<Eigen::Index>(size_index.at(e.anchor_size));
    if (space.accuracy(i, j) >= 0.0)
      throw ConfigError(path.string() + ": duplicate accuracy cell (" +
                        e.encoder_id + ", " + std::to_string(e.anchor_size) + ")");
    space.accuracy(i, j) = e.g;
  }

  for (std::size_t i = 0; i < space.encoders.size(); ++i)
    for (std::size_t j = 0; j < space.anchor_options.size(); ++j)
      if (space.accuracy(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) < 0.0)
        throw ConfigError(path.string() + ": missing accuracy cell (" +
                          space.encoders[i].id + ", " +
                          space.anchor_options[j].id + ")");

  space.validate();
  return space;
}

namespace {

void write_profile(std::ofstream& out, const std::vector<EncoderProfile>& encoders,
                   const std::vector<int>& sizes, const Eigen::MatrixXd& accuracy) {
  out << "# semcom action-space profile\n";
  for (const auto& enc : encoders)
    out << "encoder," << enc.id << ',' << format_double(enc.flops) << ','
        << enc.latent_dim << '\n';
  for (std::size_t i = 0; i < encoders.size(); ++i)
    for (std::size_t j = 0; j < sizes.size(); ++j)
      out << "accuracy," << encoders[i].id << ',' << sizes[j] << ','
          << format_double(accuracy(static_cast<Eigen::Index>(i),
                                    static_cast<Eigen::Index>(j)))
          << '\n';
}

}  // namespace

void save_profile(const std::filesystem::path& path, const ProfileTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write profile file: " + path.string());
  write_profile(out, table.encoders, table.anchor_sizes, table.accuracy);
  if (!out) throw IoError("write failed: " + path.string());
}

void save_profile(const std::filesystem::path& path, const ActionSpace& space) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write profile file: " + path.string());
  std::vector<int> sizes;
  for (const auto& a : space.anchor_options) sizes.push_back(a.size);
  write_profile(out, space.encoders, sizes, space.accuracy);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace semcom
