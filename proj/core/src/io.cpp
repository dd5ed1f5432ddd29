#include "credal/io.hpp"

#include <cerrno>
#include <cstdlib>
#include <ostream>

#include <fmt/format.h>

#include "credal/error.hpp"
#include "json.hpp"

namespace credal {

using json = nlohmann::ordered_json;

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

double parse_double(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    fail(Errc::kParseError, fmt::format("'{}' is not a number", s));
  }
  return v;
}

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& ex) {
    fail(Errc::kParseError, ex.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(Errc::kParseError, fmt::format("missing field '{}'", key));
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& ex) {
    fail(Errc::kParseError, fmt::format("field '{}': {}", key, ex.what()));
  }
}

}  // namespace

std::string to_json(const FiniteDistribution& d) {
  json j;
  j["labels"] = d.space().labels();
  j["probs"] = std::vector<double>(d.probs().begin(), d.probs().end());
  return j.dump();
}

FiniteDistribution distribution_from_json(std::string_view text) {
  const json j = parse_json(text);
  return FiniteDistribution(OutcomeSpace(field<std::vector<std::string>>(j, "labels")),
                            field<std::vector<double>>(j, "probs"));
}

std::string to_csv(const FiniteDistribution& d) {
  CsvWriter w({"label", "prob"});
  for (std::size_t i = 0; i < d.size(); ++i) w.row({d.space().label(i), format_double(d[i])});
  return w.str();
}

FiniteDistribution distribution_from_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty() || rows.front() != std::vector<std::string>{"label", "prob"}) {
    fail(Errc::kParseError, "expected header 'label,prob'");
  }
  std::vector<std::string> labels;
  std::vector<double> probs;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 2) fail(Errc::kParseError, fmt::format("row {} has {} cells", r, rows[r].size()));
    labels.push_back(rows[r][0]);
    probs.push_back(parse_double(rows[r][1]));
  }
  return FiniteDistribution(OutcomeSpace(std::move(labels)), std::move(probs));
}

std::string to_json(const CredalSet& c) {
  json j;
  j["labels"] = c.space().labels();
  json members = json::array();
  for (const auto& m : c.members()) members.push_back(std::vector<double>(m.probs().begin(), m.probs().end()));
  j["members"] = std::move(members);
  j["member_labels"] = c.member_labels();
  j["multiplicity"] = c.multiplicities();
  return j.dump();
}

CredalSet credal_set_from_json(std::string_view text) {
  const json j = parse_json(text);
  OutcomeSpace space(field<std::vector<std::string>>(j, "labels"));
  std::vector<FiniteDistribution> members;
  for (auto& probs : field<std::vector<std::vector<double>>>(j, "members")) members.emplace_back(space, std::move(probs));
  std::vector<std::string> labels;
  if (j.contains("member_labels")) labels = field<std::vector<std::string>>(j, "member_labels");
  std::vector<std::size_t> multiplicity;
  if (j.contains("multiplicity")) multiplicity = field<std::vector<std::size_t>>(j, "multiplicity");
  return CredalSet(space, std::move(members), std::move(labels), std::move(multiplicity));
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  if (header.empty()) fail(Errc::kInvalidArgument, "CSV header must not be empty");
  row(header);
}

CsvWriter& CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) fail(Errc::kLengthMismatch, fmt::format("{} cells for {} columns", cells.size(), columns_));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].find_first_of(",\n\"") != std::string::npos) {
      fail(Errc::kInvalidArgument, fmt::format("CSV cell '{}' needs quoting, which is not supported", cells[i]));
    }
    if (i > 0) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
  return *this;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) {
      std::vector<std::string> cells;
      std::size_t start = 0;
      while (true) {
        const std::size_t comma = line.find(',', start);
        cells.emplace_back(line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      rows.push_back(std::move(cells));
    }
    pos = end + 1;
  }
  return rows;
}

void write_tower_jsonl(std::ostream& out, const Tower& t) {
  for (std::size_t k = 0; k < t.base().size(); ++k) {
    const auto p = t.base()[k].probs();
    json line{{"order", 1}, {"index", k}, {"label", t.base_labels()[k]}, {"probs", std::vector<double>(p.begin(), p.end())}};
    out << line.dump() << '\n';
  }
  for (int order = 2; order <= t.max_order(); ++order) {
    const auto& level = t.weights(order);
    for (std::size_t j = 0; j < level.rows(); ++j) {
      const auto w = level.row(j);
      json line{{"order", order}, {"index", j}, {"weights", std::vector<double>(w.begin(), w.end())}};
      out << line.dump() << '\n';
    }
  }
}

std::string implied_csv(const ImpliedProbabilities& implied) {
  CsvWriter w({"order", "particle_index", "value"});
  for (std::size_t i = 0; i < implied.by_order.size(); ++i) {
    for (std::size_t j = 0; j < implied.by_order[i].size(); ++j) {
      w.row({std::to_string(i + 1), std::to_string(j), format_double(implied.by_order[i][j])});
    }
  }
  return w.str();
}

}  // namespace credal
