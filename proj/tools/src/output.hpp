#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace credal::cli {

using Json = nlohmann::ordered_json;

enum class Format { kCsv, kJson };

/// Column-major-agnostic table; cells are JSON scalars.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  Table& add(std::vector<Json> row);
  std::string to_csv() const;
  Json to_json() const;  // array of objects keyed by column
};

std::string sha256_hex(const std::string& bytes);

/// Collects a command's outputs and writes manifest.json last.
class RunContext {
 public:
  RunContext(std::string command, std::filesystem::path out_dir, Format format, std::uint64_t seed, unsigned threads);

  Format format() const noexcept { return format_; }
  std::uint64_t seed() const noexcept { return seed_; }
  unsigned threads() const noexcept { return threads_; }
  const std::filesystem::path& out_dir() const noexcept { return out_dir_; }

  void set_flags(Json flags) { flags_ = std::move(flags); }
  void set_argv(std::vector<std::string> argv) { argv_ = std::move(argv); }

  /// Writes `stem`.csv or `stem`.json depending on the format.
  void write_table(const std::string& stem, const Table& table);
  void write_file(const std::string& name, const std::string& contents);
  void write_manifest();

 private:
  std::string command_;
  std::filesystem::path out_dir_;
  Format format_;
  std::uint64_t seed_;
  unsigned threads_;
  Json flags_ = Json::object();
  std::vector<std::string> argv_;
  std::vector<std::pair<std::string, std::string>> digests_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace credal::cli
