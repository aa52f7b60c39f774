#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fgt/sample.hpp"

namespace fgt {

struct RowError {
  std::size_t line = 0; // 1-based
  std::string message;
};

struct IncomeFile {
  std::string path;
  std::vector<double> values;
  std::vector<RowError> row_errors;
};

struct CsvOptions {
  bool header = false;     // skip the first non-blank line
  std::size_t column = 0;  // 0-based column index
  char delimiter = '\0';   // '\0' = auto-detect (comma/semicolon/tab/whitespace)
};

// One income per row (or selected column). Blank lines are skipped; bad rows
// (unparseable, negative, non-finite) are collected as RowError entries with
// their line number. Throws IoError when the file cannot be read and
// InvalidArgumentError when no valid rows remain.
IncomeFile load_income_file(const std::string& path, const CsvOptions& options = {});

IncomeSample to_sample(const IncomeFile& file);

} // namespace fgt
