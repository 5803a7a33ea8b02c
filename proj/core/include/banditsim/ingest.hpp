#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "banditsim/environment.hpp"

namespace banditsim {

// What to do with a row whose consulted cell is empty: silently drop the row
// (counting it) or fail the whole load.
enum class MissingPolicy { Drop, Error };

// Names the CSV columns holding the two drug indicators, the 14-day death
// indicator, and the binary context features, together with explicit
// raw-string-to-bit maps per column. Nothing is inferred from the data: a
// non-empty cell value absent from its column's map is always an error.
struct ColumnMapping {
  std::string aspirin_col;
  std::string heparin_col;
  std::string outcome_col;
  std::vector<std::string> context_cols;
  std::map<std::string, std::map<std::string, int>> value_maps;
  MissingPolicy missing_policy = MissingPolicy::Drop;
};

// Checks structural soundness: distinct column names, a value map for every
// consulted column, all map targets binary. Throws SchemaError.
void validate_mapping(const ColumnMapping& mapping);

// An ordered trial dataset: one record per retained row, in file order.
// The arm space is the fixed 2x2 drug design, so k is always 4.
struct Dataset {
  std::vector<TrialRecord> records;
  std::size_t d = 0;
  std::size_t k = 4;
  std::uint64_t excluded = 0;
};

// Treatment cell of the 2x2 design: 0 neither, 1 aspirin only, 2 heparin
// only, 3 both.
std::size_t encode_arm(int aspirin, int heparin);

// Success means surviving the two-week window, so the outcome is the negated
// death indicator.
int encode_outcome(int dead);

// Loads a header-first CSV and maps it through the column mapping. Rows keep
// file order; surrounding spaces and tabs are trimmed from every field
// before map lookup; an empty consulted cell follows the missing policy.
// Throws SchemaError for absent/duplicated columns or ragged rows and
// ValueError for unmapped values (naming column, value, and 1-based data
// row).
Dataset load_csv(const std::string& path, const ColumnMapping& mapping);

}  // namespace banditsim
