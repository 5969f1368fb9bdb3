#pragma once
//
// Sampled times plus named observable columns, serialized as CSV with the
// header row `t_ps,<names...>`. Floats are written with 17 significant digits
// so a read-back reproduces the in-memory doubles bit-exactly.
//

#include <string>
#include <vector>

namespace qllg {

struct TimeSeries {
  std::vector<double> times;                  // ps, strictly increasing
  std::vector<std::string> names;             // column names, no "t_ps"
  std::vector<std::vector<double>> columns;   // columns[j].size() == times.size()

  const std::vector<double>& column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

// Throws std::invalid_argument when lengths disagree, names are empty or
// duplicated, or times are not strictly increasing.
void validate_series(const TimeSeries& series);

std::string to_csv(const TimeSeries& series);
TimeSeries from_csv(const std::string& text);  // throws std::runtime_error with line numbers

void write_csv(const TimeSeries& series, const std::string& path);
TimeSeries read_csv(const std::string& path);

}  // namespace qllg
