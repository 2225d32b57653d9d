#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sdwave {

enum class Field { u, ut };

/// Column name for ‖∂_t^j u‖_{Ḣ^s}: "u_L2", "ut_L2", "u_H1.1", "ut_H1.1".
std::string norm_quantity(Field which, double s);

/// Norm time series with named columns. `contaminated[i]` marks samples past
/// the trusted window of a periodic run.
struct NormSeries {
  std::vector<double> times;
  std::vector<bool> contaminated;
  std::vector<std::pair<std::string, std::vector<double>>> columns;

  bool has(const std::string& name) const;
  /// Throws InvalidArgument naming the missing column.
  const std::vector<double>& column(const std::string& name) const;
  std::vector<double>& add_column(const std::string& name);
  /// Appends a time; every existing column must be pushed by the caller.
  void push_time(double t, bool is_contaminated = false);
  std::size_t size() const { return times.size(); }
};

struct ProfileResidualSeries {
  std::vector<double> times;
  std::vector<double> residual;
  std::vector<double> leading;  // (1+t)^{-n/8+1/4}
};

/// t_min · 10^{k/per_decade}, k = 0..K, last point == t_max.
std::vector<double> geometric_ladder(double t_min, double t_max, int per_decade);

}  // namespace sdwave
