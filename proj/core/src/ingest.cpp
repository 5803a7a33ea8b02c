#include "banditsim/ingest.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "banditsim/errors.hpp"

namespace banditsim {
namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && (s[begin] == ' ' || s[begin] == '\t')) ++begin;
  while (end > begin && (s[end - 1] == ' ' || s[end - 1] == '\t')) --end;
  return s.substr(begin, end - begin);
}

// Splits CSV text into rows of fields: comma separators, double-quoted
// fields with "" escapes, embedded newlines inside quotes, CRLF or LF line
// endings. Completely blank lines are skipped.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  auto end_field = [&] {
    row.push_back(trim(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.size() == 1 && row[0].empty();
    if (!blank) rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        field.push_back(c);
        field_started = true;
        break;
    }
  }
  if (in_quotes) throw SchemaError("unterminated quoted field at end of file");
  if (field_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  std::size_t found = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) {
      if (found != header.size()) throw SchemaError("column appears twice in header: " + name);
      found = i;
    }
  }
  if (found == header.size()) throw SchemaError("column not found in header: " + name);
  return found;
}

}  // namespace

void validate_mapping(const ColumnMapping& mapping) {
  std::vector<std::string> consulted{mapping.aspirin_col, mapping.heparin_col,
                                     mapping.outcome_col};
  consulted.insert(consulted.end(), mapping.context_cols.begin(), mapping.context_cols.end());

  std::set<std::string> distinct;
  for (const std::string& name : consulted) {
    if (name.empty()) throw SchemaError("column mapping names an empty column");
    if (!distinct.insert(name).second) {
      throw SchemaError("column mapped more than once: " + name);
    }
    const auto it = mapping.value_maps.find(name);
    if (it == mapping.value_maps.end() || it->second.empty()) {
      throw SchemaError("no value map for column: " + name);
    }
    for (const auto& [raw, bit] : it->second) {
      if (bit != 0 && bit != 1) {
        throw SchemaError("value map for column " + name + " sends '" + raw +
                          "' to " + std::to_string(bit) + "; targets must be 0 or 1");
      }
    }
  }
}

std::size_t encode_arm(int aspirin, int heparin) {
  if ((aspirin != 0 && aspirin != 1) || (heparin != 0 && heparin != 1)) {
    throw std::invalid_argument("encode_arm: inputs must be 0 or 1");
  }
  return static_cast<std::size_t>(aspirin) + 2 * static_cast<std::size_t>(heparin);
}

int encode_outcome(int dead) {
  if (dead != 0 && dead != 1) {
    throw std::invalid_argument("encode_outcome: input must be 0 or 1");
  }
  return 1 - dead;
}

Dataset load_csv(const std::string& path, const ColumnMapping& mapping) {
  validate_mapping(mapping);

  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open dataset: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  const std::vector<std::vector<std::string>> rows = parse_csv(buffer.str());
  if (rows.empty()) throw SchemaError("dataset has no header row: " + path);

  const std::vector<std::string>& header = rows.front();
  const std::size_t aspirin_idx = column_index(header, mapping.aspirin_col);
  const std::size_t heparin_idx = column_index(header, mapping.heparin_col);
  const std::size_t outcome_idx = column_index(header, mapping.outcome_col);
  std::vector<std::size_t> context_idx;
  context_idx.reserve(mapping.context_cols.size());
  for (const std::string& name : mapping.context_cols) {
    context_idx.push_back(column_index(header, name));
  }

  Dataset dataset;
  dataset.d = mapping.context_cols.size();

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::vector<std::string>& row = rows[r];
    if (row.size() != header.size()) {
      throw SchemaError("row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                        " fields, expected " + std::to_string(header.size()));
    }

    // Missing means the cell is empty and the column's map has no explicit
    // entry for the empty string.
    bool missing = false;
    auto lookup = [&](const std::string& column, std::size_t idx) -> int {
      const std::string& raw = row[idx];
      const std::map<std::string, int>& vmap = mapping.value_maps.at(column);
      const auto it = vmap.find(raw);
      if (it != vmap.end()) return it->second;
      if (raw.empty()) {
        if (mapping.missing_policy == MissingPolicy::Error) {
          throw ValueError("column " + column + ": missing value at row " + std::to_string(r));
        }
        missing = true;
        return 0;
      }
      throw ValueError("column " + column + ": unmapped value '" + raw + "' at row " +
                       std::to_string(r));
    };

    const int aspirin = lookup(mapping.aspirin_col, aspirin_idx);
    const int heparin = lookup(mapping.heparin_col, heparin_idx);
    const int dead = lookup(mapping.outcome_col, outcome_idx);
    std::vector<int> context;
    context.reserve(context_idx.size());
    for (std::size_t j = 0; j < context_idx.size(); ++j) {
      context.push_back(lookup(mapping.context_cols[j], context_idx[j]));
    }

    if (missing) {
      dataset.excluded += 1;
      continue;
    }
    TrialRecord rec;
    rec.context = std::move(context);
    rec.arm = encode_arm(aspirin, heparin);
    rec.outcome = encode_outcome(dead);
    rec.sequence = dataset.records.size();
    dataset.records.push_back(std::move(rec));
  }
  return dataset;
}

}  // namespace banditsim
