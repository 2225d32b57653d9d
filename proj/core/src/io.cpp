#include "sdwave/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "sdwave/params.hpp"

namespace sdwave {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

// Splits one CSV record; handles quoted fields but not embedded newlines.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

double parse_number(const std::string& s, std::size_t line) {
  if (s == "nan") return NAN;
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InvalidArgument("line " + std::to_string(line) + ": not a number: '" + s + "'");
  }
  return x;
}

const char* band_label(bool contaminated) { return contaminated ? "contaminated" : "valid"; }

std::string pad(const std::string& s, std::size_t width) {
  // Width in code points, so the ± and ε in formulas do not break alignment.
  std::size_t cps = 0;
  for (unsigned char c : s) cps += (c & 0xC0) != 0x80;
  return cps >= width ? s + " " : s + std::string(width - cps, ' ');
}

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

void write_norm_csv(std::ostream& out, const NormSeries& series) {
  out << "t,quantity,value,band\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::string t = format_number(series.times[i]);
    const char* band = band_label(i < series.contaminated.size() && series.contaminated[i]);
    for (const auto& [name, values] : series.columns) {
      out << t << ',' << csv_field(name) << ',' << format_number(values[i]) << ',' << band << '\n';
    }
  }
}

NormSeries read_norm_csv(std::istream& in) {
  NormSeries s;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line) || line != "t,quantity,value,band") {
    throw InvalidArgument("line 1: expected header t,quantity,value,band");
  }
  ++lineno;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 4) throw InvalidArgument("line " + std::to_string(lineno) + ": expected 4 fields");
    const double t = parse_number(f[0], lineno);
    if (f[3] != "valid" && f[3] != "contaminated") {
      throw InvalidArgument("line " + std::to_string(lineno) + ": band must be valid or contaminated");
    }
    if (s.times.empty() || s.times.back() != t) s.push_time(t, f[3] == "contaminated");
    std::vector<double>* found = nullptr;
    for (auto& [name, values] : s.columns) {
      if (name == f[1]) found = &values;
    }
    auto& col = found ? *found : s.add_column(f[1]);
    if (col.size() + 1 != s.size()) {
      throw InvalidArgument("line " + std::to_string(lineno) + ": quantity '" + f[1] +
                            "' out of step with the time column");
    }
    col.push_back(parse_number(f[2], lineno));
  }
  for (const auto& [name, values] : s.columns) {
    if (values.size() != s.size()) throw InvalidArgument("quantity '" + name + "' is missing samples");
  }
  return s;
}

void write_profile_csv(std::ostream& out, const ProfileResidualSeries& series) {
  out << "t,quantity,value,band\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const std::string t = format_number(series.times[i]);
    out << t << ",residual," << format_number(series.residual[i]) << ",valid\n";
    out << t << ",leading," << format_number(series.leading[i]) << ",valid\n";
  }
}

void write_check_csv(std::ostream& out, const std::vector<BoundCheckReport>& reports) {
  out << "id,param_json,measured,refinement_ratio,pass\n";
  for (const auto& r : reports) {
    out << csv_field(r.id) << ',' << csv_field(r.param_json()) << ',' << format_number(r.measured)
        << ',' << format_number(r.refinement_ratio) << ','
        << (r.unsupported ? "unsupported" : (r.pass ? "true" : "false")) << '\n';
  }
}

void write_fit_csv(std::ostream& out, const std::vector<RateComparison>& comparisons) {
  out << "quantity,model,t_a,t_b,samples,slope,theory,tolerance,band,gated,pass\n";
  for (const auto& c : comparisons) {
    out << csv_field(c.quantity) << ',' << to_string(c.fit.model) << ','
        << format_number(c.fit.window.t_a) << ',' << format_number(c.fit.window.t_b) << ','
        << c.fit.samples << ',' << format_number(c.fit.slope) << ',' << format_number(c.expected)
        << ',' << format_number(c.tolerance) << ',' << format_number(c.fit.band) << ','
        << (c.gated ? "true" : "false") << ',' << (c.pass ? "true" : "false") << '\n';
  }
}

std::string comparison_table(const std::vector<RateComparison>& comparisons) {
  std::ostringstream out;
  out << pad("quantity", 12) << pad("theory", 26) << pad("observed", 12) << pad("tolerance", 11)
      << "result\n";
  for (const auto& c : comparisons) {
    std::string observed = "-";
    if (c.gated) {
      observed = c.theory.kind == RateKind::sqrt_log ? "band " + short_number(c.fit.band)
                                                     : short_number(c.fit.slope);
    }
    const std::string theory = c.theory.supported() ? c.theory.formula : "(none)";
    const std::string result = !c.gated ? "vacuous" : (c.pass ? "PASS" : "FAIL");
    out << pad(c.quantity, 12) << pad(theory, 26) << pad(observed, 12)
        << pad(c.gated ? short_number(c.tolerance) : "-", 11) << result << '\n';
  }
  return out.str();
}

std::string check_table(const std::vector<BoundCheckReport>& reports) {
  std::ostringstream out;
  out << pad("check", 20) << pad("measured", 12) << pad("growth", 10) << "result  parameters\n";
  for (const auto& r : reports) {
    const std::string result = r.unsupported ? "UNSUP" : (r.pass ? "PASS" : "FAIL");
    out << pad(r.id, 20) << pad(short_number(r.measured), 12)
        << pad(short_number(r.refinement_ratio), 10) << pad(result, 8) << r.param_json();
    if (!r.pass && !r.detail.empty()) out << "  -- " << r.detail;
    out << '\n';
  }
  return out.str();
}

// --------------------------------------------------------------- snapshots --

std::size_t SnapshotHeader::values_per_field() const {
  std::size_t n = 1;
  for (int d = 0; d < dim; ++d) n *= static_cast<std::size_t>(points);
  return n;
}

void write_snapshot(std::ostream& out, const Snapshot& snap) {
  const auto& h = snap.header;
  if (snap.data.size() != h.fields.size()) throw InvalidArgument("snapshot: one array per field");
  for (const auto& d : snap.data) {
    if (d.size() != h.values_per_field()) throw InvalidArgument("snapshot: array size != N^dim");
  }
  out << "sdwave-snapshot 1\n"
      << "dim " << h.dim << '\n'
      << "N " << h.points << '\n'
      << "L " << format_number(h.half_width) << '\n'
      << "t " << format_number(h.time) << '\n'
      << "fields";
  for (const auto& f : h.fields) out << ' ' << f;
  out << "\nbyte_order little-endian\ndtype float64\nend\n";
  for (const auto& d : snap.data) {
    for (double x : d) {
      auto bits = std::bit_cast<std::uint64_t>(x);
      char bytes[8];
      for (int b = 0; b < 8; ++b) {
        bytes[b] = static_cast<char>(bits & 0xFF);
        bits >>= 8;
      }
      out.write(bytes, 8);
    }
  }
}

Snapshot read_snapshot(std::istream& in) {
  Snapshot s;
  std::string line;
  if (!std::getline(in, line) || line != "sdwave-snapshot 1") {
    throw InvalidArgument("not an sdwave snapshot (bad magic line)");
  }
  bool have_order = false;
  while (std::getline(in, line) && line != "end") {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "dim") ls >> s.header.dim;
    else if (key == "N") ls >> s.header.points;
    else if (key == "L") { std::string v; ls >> v; s.header.half_width = parse_number(v, 0); }
    else if (key == "t") { std::string v; ls >> v; s.header.time = parse_number(v, 0); }
    else if (key == "fields") {
      std::string f;
      while (ls >> f) s.header.fields.push_back(f);
    } else if (key == "byte_order") {
      std::string v;
      ls >> v;
      if (v != "little-endian") throw InvalidArgument("snapshot: unsupported byte order " + v);
      have_order = true;
    } else if (key == "dtype") {
      std::string v;
      ls >> v;
      if (v != "float64") throw InvalidArgument("snapshot: unsupported dtype " + v);
    } else {
      throw InvalidArgument("snapshot: unknown header key '" + key + "'");
    }
  }
  if (line != "end" || !have_order) throw InvalidArgument("snapshot: truncated header");
  if (s.header.dim < 1 || s.header.dim > 3 || s.header.points < 1) {
    throw InvalidArgument("snapshot: bad dimensions");
  }
  const auto count = s.header.values_per_field();
  for (std::size_t f = 0; f < s.header.fields.size(); ++f) {
    std::vector<double> d(count);
    for (auto& x : d) {
      unsigned char bytes[8];
      if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw InvalidArgument("snapshot: truncated data");
      std::uint64_t bits = 0;
      for (int b = 7; b >= 0; --b) bits = (bits << 8) | bytes[b];
      x = std::bit_cast<double>(bits);
    }
    s.data.push_back(std::move(d));
  }
  return s;
}

// ------------------------------------------------------------------ plots --

std::string gnuplot_script(const PlotRequest& req) {
  std::ostringstream out;
  out << "# gnuplot " << csv_field(req.title) << "\n"
      << "set datafile separator ','\n"
      << "set logscale xy\n"
      << "set format y '%.0e'\n"
      << "set xlabel 't'\n"
      << "set ylabel 'norm'\n"
      << "set key outside right\n"
      << "set title '" << req.title << "'\n";
  if (!req.output_image.empty()) {
    out << "set terminal pngcairo size 1000,650\n"
        << "set output '" << req.output_image << "'\n";
  }
  std::vector<std::string> items;
  for (const auto& q : req.quantities) {
    items.push_back("'" + req.csv_path + "' every ::1 using 1:(strcol(2) eq '" + q +
                    "' && $3 > 0 ? $3 : 1/0) with linespoints pt 7 ps 0.4 title '" + q + "'");
  }
  int k = 0;
  for (const auto& g : req.guides) {
    const std::string f = "g" + std::to_string(k++);
    if (g.kind == RateKind::sqrt_log) {
      out << f << "(x) = " << format_number(g.anchor_value) << " * sqrt(log(x + exp(1)) / log("
          << format_number(g.anchor_t) << " + exp(1)))\n";
    } else {
      out << f << "(x) = " << format_number(g.anchor_value) << " * ((1 + x) / (1 + "
          << format_number(g.anchor_t) << "))**(" << format_number(g.exponent) << ")\n";
    }
    items.push_back(f + "(x) with lines dashtype 2 title '" + g.label + "'");
  }
  out << "plot ";
  for (std::size_t i = 0; i < items.size(); ++i) out << (i ? ", \\\n     " : "") << items[i];
  out << '\n';
  return out.str();
}

}  // namespace sdwave
