#include "qllg/timeseries.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qllg {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_cell(const std::string& cell, int line_no) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::runtime_error("CSV line " + std::to_string(line_no) +
                             ": cannot parse number '" + cell + "'");
  }
  return v;
}

}  // namespace

const std::vector<double>& TimeSeries::column(const std::string& name) const {
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j] == name) return columns[j];
  }
  throw std::invalid_argument("no column named '" + name + "'");
}

bool TimeSeries::has_column(const std::string& name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

void validate_series(const TimeSeries& series) {
  if (series.names.size() != series.columns.size()) {
    throw std::invalid_argument("series has " + std::to_string(series.names.size()) +
                                " names but " + std::to_string(series.columns.size()) +
                                " columns");
  }
  std::set<std::string> seen;
  for (const auto& name : series.names) {
    if (name.empty()) throw std::invalid_argument("empty column name");
    if (!seen.insert(name).second) {
      throw std::invalid_argument("duplicate column name '" + name + "'");
    }
  }
  for (std::size_t j = 0; j < series.columns.size(); ++j) {
    if (series.columns[j].size() != series.times.size()) {
      throw std::invalid_argument("column '" + series.names[j] + "' has " +
                                  std::to_string(series.columns[j].size()) +
                                  " rows, expected " + std::to_string(series.times.size()));
    }
  }
  for (std::size_t i = 1; i < series.times.size(); ++i) {
    if (!(series.times[i] > series.times[i - 1])) {
      throw std::invalid_argument("times are not strictly increasing");
    }
  }
}

std::string to_csv(const TimeSeries& series) {
  validate_series(series);
  std::string out = "t_ps";
  for (const auto& name : series.names) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out += format_double(series.times[i]);
    for (const auto& col : series.columns) {
      out += ',';
      out += format_double(col[i]);
    }
    out += '\n';
  }
  return out;
}

TimeSeries from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("CSV line 1: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_commas(line);
  if (header.empty() || header[0] != "t_ps") {
    throw std::runtime_error("CSV line 1: header must start with 't_ps'");
  }
  TimeSeries series;
  series.names.assign(header.begin() + 1, header.end());
  series.columns.assign(series.names.size(), {});
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_commas(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error("CSV line " + std::to_string(line_no) + ": expected " +
                               std::to_string(header.size()) + " cells, got " +
                               std::to_string(cells.size()));
    }
    series.times.push_back(parse_cell(cells[0], line_no));
    for (std::size_t j = 0; j < series.names.size(); ++j) {
      series.columns[j].push_back(parse_cell(cells[j + 1], line_no));
    }
  }
  validate_series(series);
  return series;
}

void write_csv(const TimeSeries& series, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: keep LF newlines everywhere
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << to_csv(series);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

TimeSeries read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_csv(buf.str());
}

}  // namespace qllg
