#include "semcom/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "semcom/errors.hpp"

namespace semcom {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_real(const std::string& field, const std::filesystem::path& path,
                  int line_no) {
  double v = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw IoError(path.string() + ":" + std::to_string(line_no) +
                  ": not a real number: '" + field + "'");
  return v;
}

struct ParsedEmbeddings {
  std::string set_id;  // empty unless an anchor_set comment was present
  EmbeddingFile data;
};

ParsedEmbeddings load_embedding_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embeddings file: " + path.string());

  ParsedEmbeddings parsed;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int dim = 0;
  std::vector<std::vector<double>> rows;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream c(line.substr(1));
      std::string tag;
      c >> tag;
      if (tag == "anchor_set") c >> parsed.set_id;
      continue;
    }
    const auto fields = split_csv(line);
    if (!have_header) {
      dim = static_cast<int>(parse_real(fields[0], path, line_no));
      if (dim < 1)
        throw IoError(path.string() + ":" + std::to_string(line_no) +
                      ": header dimension must be >= 1");
      for (std::size_t i = 1; i < fields.size(); ++i)
        parsed.data.ids.push_back(fields[i]);
      have_header = true;
      continue;
    }
    if (static_cast<int>(fields.size()) != dim)
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(dim) + " values, got " +
                    std::to_string(fields.size()));
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i)
      row[i] = parse_real(fields[i], path, line_no);
    rows.push_back(std::move(row));
  }
  if (!have_header) throw IoError(path.string() + ": missing header row");
  if (rows.size() != parsed.data.ids.size())
    throw IoError(path.string() + ": header lists " +
                  std::to_string(parsed.data.ids.size()) + " ids but file has " +
                  std::to_string(rows.size()) + " rows");

  parsed.data.vectors.resize(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < dim; ++j)
      parsed.data.vectors(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
  return parsed;
}

void write_embedding_body(std::ofstream& out, const EmbeddingFile& data) {
  out << data.vectors.cols();
  for (const auto& id : data.ids) out << ',' << id;
  out << '\n';
  for (Eigen::Index i = 0; i < data.vectors.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.vectors.cols(); ++j) {
      if (j) out << ',';
      out << format_double(data.vectors(i, j));
    }
    out << '\n';
  }
}

}  // namespace

void save_embeddings(const std::filesystem::path& path, const EmbeddingFile& data) {
  if (static_cast<Eigen::Index>(data.ids.size()) != data.vectors.rows())
    throw std::invalid_argument("save_embeddings: one id per row required");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write embeddings file: " + path.string());
  write_embedding_body(out, data);
  if (!out) throw IoError("write failed: " + path.string());
}

EmbeddingFile load_embeddings(const std::filesystem::path& path) {
  return load_embedding_file(path).data;
}

void save_anchor_set(const std::filesystem::path& path, const AnchorSet& set) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write anchor set file: " + path.string());
  out << "# anchor_set " << set.id << '\n';
  EmbeddingFile data{set.anchor_ids, set.anchors};
  write_embedding_body(out, data);
  if (!out) throw IoError("write failed: " + path.string());
}

AnchorSet load_anchor_set(const std::filesystem::path& path) {
  const ParsedEmbeddings parsed = load_embedding_file(path);
  AnchorSet set;
  set.id = parsed.set_id.empty() ? path.stem().string() : parsed.set_id;
  set.anchor_ids = parsed.data.ids;
  set.anchors = parsed.data.vectors;
  if (set.size() < 1) throw IoError(path.string() + ": anchor set is empty");
  return set;
}

}  // namespace semcom
