#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace pmelab {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Stages output files in a sibling temp directory; promote() moves them
/// into the final directory in one pass. Without promote() the stage is
/// removed on destruction, so failed runs leave no partial artifacts.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(const std::filesystem::path& out_dir)
      : final_dir_(out_dir) {
    std::random_device rd;
    stage_ = out_dir;
    stage_ += ".stage-" + std::to_string(rd());
    std::filesystem::create_directories(stage_);
  }

  ArtifactWriter(const ArtifactWriter&) = delete;
  ArtifactWriter& operator=(const ArtifactWriter&) = delete;

  ~ArtifactWriter() {
    if (!promoted_) {
      std::error_code ec;
      std::filesystem::remove_all(stage_, ec);
    }
  }

  std::filesystem::path staged(const std::string& name) const {
    return stage_ / name;
  }

  void write_text(const std::string& name, const std::string& content) {
    std::ofstream os(staged(name));
    if (!os) throw std::runtime_error("cannot open " + name);
    os << content;
  }

  void write_json(const std::string& name, const nlohmann::json& j) {
    write_text(name, j.dump(2) + "\n");
  }

  void promote() {
    std::filesystem::create_directories(final_dir_);
    for (const auto& entry : std::filesystem::directory_iterator(stage_)) {
      const auto target = final_dir_ / entry.path().filename();
      std::filesystem::remove(target);
      std::filesystem::rename(entry.path(), target);
    }
    std::filesystem::remove_all(stage_);
    promoted_ = true;
  }

 private:
  std::filesystem::path final_dir_;
  std::filesystem::path stage_;
  bool promoted_ = false;
};

/// CSV table with a fixed header; all numeric cells at 17 significant
/// digits so outputs are byte-identical across runs.
inline std::string csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv_table: row width mismatch");
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += fmt17(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace pmelab
