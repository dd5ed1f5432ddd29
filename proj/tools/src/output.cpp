#include "output.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "credal/error.hpp"
#include "credal/io.hpp"
#include "credal/version.hpp"

namespace credal::cli {

namespace {

std::string cell_text(const Json& cell) {
  if (cell.is_number_float()) return format_double(cell.get<double>());
  if (cell.is_string()) return cell.get<std::string>();
  return cell.dump();
}

}  // namespace

Table& Table::add(std::vector<Json> row) {
  if (row.size() != columns.size()) fail(Errc::kLengthMismatch, "table row does not match its columns");
  rows.push_back(std::move(row));
  return *this;
}

std::string Table::to_csv() const {
  CsvWriter w(columns);
  std::vector<std::string> cells(columns.size());
  for (const auto& row : rows) {
    std::transform(row.begin(), row.end(), cells.begin(), cell_text);
    w.row(cells);
  }
  return w.str();
}

Json Table::to_json() const {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json obj = Json::object();
    for (std::size_t c = 0; c < columns.size(); ++c) obj[columns[c]] = row[c];
    out.push_back(std::move(obj));
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

RunContext::RunContext(std::string command, std::filesystem::path out_dir, Format format, std::uint64_t seed,
                       unsigned threads)
    : command_(std::move(command)),
      out_dir_(std::move(out_dir)),
      format_(format),
      seed_(seed),
      threads_(threads),
      start_(std::chrono::steady_clock::now()) {}

void RunContext::write_table(const std::string& stem, const Table& table) {
  if (format_ == Format::kCsv) {
    write_file(stem + ".csv", table.to_csv());
  } else {
    write_file(stem + ".json", table.to_json().dump(2) + "\n");
  }
}

void RunContext::write_file(const std::string& name, const std::string& contents) {
  std::filesystem::create_directories(out_dir_);
  const auto path = out_dir_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  out.close();
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  digests_.emplace_back(name, sha256_hex(contents));
}

void RunContext::write_manifest() {
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  auto digests = digests_;
  std::sort(digests.begin(), digests.end());
  Json outputs = Json::object();
  for (const auto& [name, hex] : digests) outputs[name] = "sha256:" + hex;

  Json manifest = Json::object();
  manifest["command"] = command_;
  manifest["flags"] = flags_;
  manifest["argv"] = argv_;
  manifest["seed"] = seed_;
  manifest["threads"] = threads_;
  manifest["version"] = kVersion;
  manifest["duration_seconds"] = seconds;
  manifest["outputs"] = std::move(outputs);

  std::filesystem::create_directories(out_dir_);
  std::ofstream out(out_dir_ / "manifest.json", std::ios::binary | std::ios::trunc);
  out << manifest.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write manifest.json");
}

}  // namespace credal::cli
