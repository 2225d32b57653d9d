#pragma once
// File formats shared by the command-line front-end.
//
//   norm series   CSV  t,quantity,value,band        (band: valid | contaminated)
//   check results CSV  id,param_json,measured,refinement_ratio,pass
//   fit results   CSV  quantity,model,t_a,t_b,samples,slope,theory,tolerance,band,gated,pass
//   snapshots     text header terminated by "end\n", then raw little-endian
//                 float64 arrays, one per field, row-major (last axis fastest)
//
// Numbers are written with %.17g so that reruns are byte-identical.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sdwave/analysis.hpp"
#include "sdwave/series.hpp"
#include "sdwave/verifier.hpp"

namespace sdwave {

/// Shortest round-tripping decimal form; "nan", "inf", "-inf" otherwise.
std::string format_number(double x);

/// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_field(const std::string& text);

void write_norm_csv(std::ostream& out, const NormSeries& series);
/// Reads the long format back. Throws InvalidArgument on a malformed row
/// (the message carries the line number).
NormSeries read_norm_csv(std::istream& in);

/// Residual series in the norm layout: quantities "residual" and "leading".
void write_profile_csv(std::ostream& out, const ProfileResidualSeries& series);

void write_check_csv(std::ostream& out, const std::vector<BoundCheckReport>& reports);
void write_fit_csv(std::ostream& out, const std::vector<RateComparison>& comparisons);

/// Fixed-width human-readable tables.
std::string comparison_table(const std::vector<RateComparison>& comparisons);
std::string check_table(const std::vector<BoundCheckReport>& reports);

struct SnapshotHeader {
  int dim = 1;
  int points = 0;
  double half_width = 0.0;
  double time = 0.0;
  std::vector<std::string> fields;

  std::size_t values_per_field() const;
};

struct Snapshot {
  SnapshotHeader header;
  std::vector<std::vector<double>> data;  // one array per field
};

void write_snapshot(std::ostream& out, const Snapshot& snapshot);
Snapshot read_snapshot(std::istream& in);

/// Theoretical guide line drawn through (anchor_t, anchor_value).
struct PlotGuide {
  std::string label;
  RateKind kind = RateKind::power;  // power: (1+t)^exponent, sqrt_log: √log(t+e)
  double exponent = 0.0;
  double anchor_t = 1.0;
  double anchor_value = 1.0;
};

struct PlotRequest {
  std::string title;
  std::string csv_path;       // long-format norm CSV, relative to the script
  std::string output_image;   // e.g. "norms.png"
  std::vector<std::string> quantities;
  std::vector<PlotGuide> guides;
};

/// A gnuplot script with log-log axes; nothing is rendered here.
std::string gnuplot_script(const PlotRequest& request);

}  // namespace sdwave
