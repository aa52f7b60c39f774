#include "fgt/csv.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fgt/errors.hpp"

namespace fgt {

namespace {

std::string trim(const std::string& s)
{
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1])))
    --end;
  return s.substr(begin, end - begin);
}

char detect_delimiter(const std::string& line)
{
  if (line.find(',') != std::string::npos)
    return ',';
  if (line.find(';') != std::string::npos)
    return ';';
  if (line.find('\t') != std::string::npos)
    return '\t';
  return ' ';
}

std::vector<std::string> split_fields(const std::string& line, char delimiter)
{
  std::vector<std::string> fields;
  if (delimiter == ' ') {
    // whitespace-tolerant: any run of blanks separates fields
    std::istringstream in(line);
    std::string field;
    while (in >> field)
      fields.push_back(field);
    return fields;
  }
  std::string field;
  for (char c : line) {
    if (c == delimiter) {
      fields.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(trim(field));
  return fields;
}

bool parse_double(const std::string& text, double& out)
{
  if (text.empty())
    return false;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size();
}

} // namespace

IncomeFile load_income_file(const std::string& path, const CsvOptions& options)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open income file '" + path + "'");

  IncomeFile file;
  file.path = path;

  std::string line;
  std::size_t line_no = 0;
  bool header_pending = options.header;
  char delimiter = options.delimiter;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (trim(line).empty())
      continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    if (delimiter == '\0')
      delimiter = detect_delimiter(line);

    const std::vector<std::string> fields = split_fields(line, delimiter);
    if (options.column >= fields.size()) {
      file.row_errors.push_back({ line_no, "missing column " + std::to_string(options.column) });
      continue;
    }
    double value = 0.0;
    if (!parse_double(fields[options.column], value)) {
      file.row_errors.push_back(
        { line_no, "unparseable value '" + fields[options.column] + "'" });
      continue;
    }
    if (!std::isfinite(value)) {
      file.row_errors.push_back({ line_no, "non-finite income" });
      continue;
    }
    if (value < 0.0) {
      file.row_errors.push_back(
        { line_no, "negative income at line " + std::to_string(line_no) });
      continue;
    }
    file.values.push_back(value);
  }

  if (file.values.empty()) {
    if (file.row_errors.empty())
      throw InvalidArgumentError("income file '" + path + "' contains no data rows");
    throw InvalidArgumentError("income file '" + path + "' has no valid rows (" +
                               std::to_string(file.row_errors.size()) + " row errors)");
  }
  return file;
}

IncomeSample to_sample(const IncomeFile& file)
{
  return IncomeSample(file.values);
}

} // namespace fgt
