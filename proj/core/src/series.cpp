#include "sdwave/series.hpp"

#include <cmath>
#include <cstdio>

#include "sdwave/params.hpp"

namespace sdwave {

std::string norm_quantity(Field which, double s) {
  const char* base = which == Field::u ? "u" : "ut";
  if (s == 0.0) return std::string(base) + "_L2";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s_H%g", base, s);
  return buf;
}

bool NormSeries::has(const std::string& name) const {
  for (const auto& [key, _] : columns) {
    if (key == name) return true;
  }
  return false;
}

const std::vector<double>& NormSeries::column(const std::string& name) const {
  for (const auto& [key, values] : columns) {
    if (key == name) return values;
  }
  throw InvalidArgument("missing norm component: " + name);
}

std::vector<double>& NormSeries::add_column(const std::string& name) {
  if (has(name)) throw InvalidArgument("duplicate norm column: " + name);
  columns.emplace_back(name, std::vector<double>{});
  return columns.back().second;
}

void NormSeries::push_time(double t, bool is_contaminated) {
  times.push_back(t);
  contaminated.push_back(is_contaminated);
}

std::vector<double> geometric_ladder(double t_min, double t_max, int per_decade) {
  require_finite(t_min, "t_min");
  require_finite(t_max, "t_max");
  if (!(t_min > 0.0) || !(t_max >= t_min)) {
    throw InvalidArgument("time ladder needs 0 < t_min <= t_max");
  }
  if (per_decade < 1) throw InvalidArgument("points per decade must be >= 1");
  const double decades = std::log10(t_max / t_min);
  const int steps = std::max(0, static_cast<int>(std::ceil(decades * per_decade - 1e-9)));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    out.push_back(k == steps ? t_max : t_min * std::pow(10.0, static_cast<double>(k) / per_decade));
  }
  return out;
}

}  // namespace sdwave
