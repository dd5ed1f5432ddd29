#pragma once

// Text formats. CSV: comma separated, header row, LF endings, doubles at 17
// significant digits so every value round-trips exactly.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "credal/credal_set.hpp"
#include "credal/prob.hpp"
#include "credal/tower.hpp"

namespace credal {

std::string format_double(double value);
double parse_double(std::string_view text);

/// {"labels": [...], "probs": [...]}
std::string to_json(const FiniteDistribution& d);
FiniteDistribution distribution_from_json(std::string_view json);

/// label,prob
std::string to_csv(const FiniteDistribution& d);
FiniteDistribution distribution_from_csv(std::string_view csv);

/// {"labels": [...], "members": [[...], ...], "member_labels": [...], "multiplicity": [...]}
std::string to_json(const CredalSet& c);
CredalSet credal_set_from_json(std::string_view json);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  CsvWriter& row(const std::vector<std::string>& cells);
  std::string str() const { return text_; }
  std::size_t columns() const noexcept { return columns_; }

 private:
  std::size_t columns_;
  std::string text_;
};

/// Rows of a CSV document (header included); no quoting support.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// One JSON object per line: base particles {"order":1,"index":k,"label":...,"probs":[...]}
/// then every higher-order particle {"order":i,"index":j,"weights":[...]}.
void write_tower_jsonl(std::ostream& out, const Tower& t);

/// order,particle_index,value for every particle of every order (unsorted).
std::string implied_csv(const ImpliedProbabilities& implied);

}  // namespace credal
