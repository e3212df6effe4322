#include "emoa/report_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "emoa/error.hpp"

namespace emoa {

namespace {

constexpr std::string_view kReportHeader =
    "sequence_id,algorithm,problem,M,N,g_max,strategy,s,T,X,truncation,final_archive_size,peak_cardinality,"
    "removal_s,truncation_s,selection_s,total_s,hv_selected,hv_final_population,timed_out";

constexpr std::string_view kAggregateHeader =
    "algorithm,problem,M,N,strategy,s,T,X,truncation,runs,timeouts,errors,mean_hv_selected,"
    "mean_hv_final_population,mean_removal_s,mean_truncation_s,mean_selection_s,mean_total_s,median_total_s,"
    "mean_final_archive_size,max_peak_cardinality";

std::string number(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string fixed(double v, int precision) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, precision);
  return std::string(buf.data(), ptr);
}

std::string optional_number(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

template <typename T>
T parse_field(const std::string& token, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw FormatError(std::string("bad ") + what + " '" + token + "' in report CSV");
  }
  return value;
}

std::optional<double> parse_optional(const std::string& token, const char* what) {
  if (token.empty()) return std::nullopt;
  return parse_field<double>(token, what);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

std::string_view report_csv_header() { return kReportHeader; }

void write_reports_csv(std::ostream& out, const std::vector<RunReport>& reports) {
  out << kReportHeader << '\n';
  for (const RunReport& r : reports) {
    const bool scored = !r.timed_out && !r.error;
    const ArchiveStrategyConfig& c = r.strategy;
    out << csv_field(r.sequence_id) << ',' << csv_field(r.algorithm) << ',' << family_name(r.problem.family()) << ','
        << r.problem.objectives() << ',' << r.population_size << ',' << r.generations << ','
        << strategy_name(c.kind) << ',' << size_label(c) << ','
        << (c.kind == StrategyKind::LazyPeriodical ? std::to_string(c.interval) : "") << ','
        << (r.window ? std::to_string(*r.window) : "") << ',' << truncation_name(c.truncation) << ','
        << r.final_archive_size << ',' << r.peak_cardinality << ',' << number(r.timing.removal_seconds) << ','
        << number(r.timing.truncation_seconds) << ',' << number(r.timing.selection_seconds) << ','
        << number(r.timing.total_seconds) << ',' << (scored ? optional_number(r.hv_selected) : "") << ','
        << (scored ? optional_number(r.hv_final_population) : "") << ',' << (r.timed_out ? 1 : 0) << '\n';
  }
}

std::vector<RunReport> read_reports_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("report CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kReportHeader) throw FormatError("report CSV header does not match the expected columns");
  std::vector<RunReport> reports;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 20) {
      throw FormatError("report CSV row " + std::to_string(row) + " has " + std::to_string(f.size()) +
                        " fields, expected 20");
    }
    RunReport r;
    r.sequence_id = f[0];
    r.algorithm = f[1];
    try {
      r.problem = ProblemSpec(parse_family(f[2]), parse_field<std::size_t>(f[3], "M"));
      r.strategy.kind = parse_strategy(f[6]);
      r.strategy.truncation = parse_truncation(f[10]);
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      throw FormatError("report CSV row " + std::to_string(row) + ": " + e.what());
    }
    r.population_size = parse_field<std::size_t>(f[4], "N");
    r.generations = parse_field<std::size_t>(f[5], "g_max");
    r.strategy.capacity = f[7] == "inf" ? kUnboundedCapacity : parse_field<std::size_t>(f[7], "s");
    if (!f[8].empty()) r.strategy.interval = parse_field<std::size_t>(f[8], "T");
    if (!f[9].empty()) r.window = parse_field<std::size_t>(f[9], "X");
    r.final_archive_size = parse_field<std::size_t>(f[11], "final_archive_size");
    r.peak_cardinality = parse_field<std::size_t>(f[12], "peak_cardinality");
    r.timing.removal_seconds = parse_field<double>(f[13], "removal_s");
    r.timing.truncation_seconds = parse_field<double>(f[14], "truncation_s");
    r.timing.selection_seconds = parse_field<double>(f[15], "selection_s");
    r.timing.total_seconds = parse_field<double>(f[16], "total_s");
    r.hv_selected = parse_optional(f[17], "hv_selected");
    r.hv_final_population = parse_optional(f[18], "hv_final_population");
    if (f[19] != "0" && f[19] != "1") throw FormatError("bad timed_out '" + f[19] + "' in report CSV");
    r.timed_out = f[19] == "1";
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<RunReport> read_reports_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_reports_csv(in);
}

void write_aggregate_csv(std::ostream& out, const AggregateTable& table) {
  out << kAggregateHeader << '\n';
  for (const AggregateRow& r : table.rows) {
    out << csv_field(r.algorithm) << ',' << r.problem << ',' << r.objectives << ',' << r.population_size << ','
        << r.strategy << ',' << r.size << ',' << r.interval << ',' << r.window << ',' << r.truncation << ','
        << r.runs << ',' << r.timeouts << ',' << r.errors << ',' << optional_number(r.mean_hv_selected) << ','
        << optional_number(r.mean_hv_final_population) << ',' << optional_number(r.mean_removal_seconds) << ','
        << optional_number(r.mean_truncation_seconds) << ',' << optional_number(r.mean_selection_seconds) << ','
        << optional_number(r.mean_total_seconds) << ',' << optional_number(r.median_total_seconds) << ','
        << optional_number(r.mean_final_archive_size) << ',' << r.max_peak_cardinality << '\n';
  }
}

std::string view_name(PlotView view) {
  switch (view) {
    case PlotView::QualityVsSize: return "quality-vs-size";
    case PlotView::TimeVsSize: return "time-vs-size";
    case PlotView::QualityTime: return "quality-time";
    case PlotView::QualityMemory: return "quality-memory";
  }
  return "view";
}

namespace {

struct PlotPoint {
  double order;
  double x;
  double y;
};

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::optional<PlotPoint> point_for(const AggregateRow& r, PlotView view) {
  std::optional<double> x;
  std::optional<double> y;
  switch (view) {
    case PlotView::QualityVsSize:
      x = r.size_over_population;
      y = r.mean_hv_selected;
      break;
    case PlotView::TimeVsSize:
      x = r.size_over_population;
      y = r.mean_total_seconds;
      break;
    case PlotView::QualityTime:
      x = r.mean_total_seconds;
      y = r.mean_hv_selected;
      break;
    case PlotView::QualityMemory:
      x = static_cast<double>(r.max_peak_cardinality);
      y = r.mean_hv_selected;
      break;
  }
  if (!x || !y || !(*x > 0.0) || !std::isfinite(*x) || !std::isfinite(*y)) return std::nullopt;
  return PlotPoint{r.size_over_population, *x, *y};
}

std::string axis_label(PlotView view, bool x_axis) {
  switch (view) {
    case PlotView::QualityVsSize: return x_axis ? "archive size (multiples of N)" : "hypervolume of selected set";
    case PlotView::TimeVsSize: return x_axis ? "archive size (multiples of N)" : "total time (s)";
    case PlotView::QualityTime: return x_axis ? "total time (s)" : "hypervolume of selected set";
    case PlotView::QualityMemory: return x_axis ? "peak archive cardinality" : "hypervolume of selected set";
  }
  return {};
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string file_token(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
  }
  return s.empty() ? "all" : s;
}

}  // namespace

std::string render_svg(const std::vector<AggregateRow>& rows, PlotView view, const std::string& title) {
  std::vector<std::string> labels;
  std::map<std::string, std::vector<PlotPoint>> series;
  for (const AggregateRow& r : rows) {
    const std::string label = r.strategy + (r.interval.empty() ? "" : " T=" + r.interval);
    auto p = point_for(r, view);
    if (!series.count(label)) labels.push_back(label);
    auto& pts = series[label];
    if (p) pts.push_back(*p);
  }
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  bool any = false;
  for (auto& [label, pts] : series) {
    std::stable_sort(pts.begin(), pts.end(), [](const PlotPoint& a, const PlotPoint& b) { return a.order < b.order; });
    for (const PlotPoint& p : pts) {
      const double lx = std::log10(p.x);
      if (!any) {
        x_lo = x_hi = lx;
        y_lo = y_hi = p.y;
        any = true;
      }
      x_lo = std::min(x_lo, lx);
      x_hi = std::max(x_hi, lx);
      y_lo = std::min(y_lo, p.y);
      y_hi = std::max(y_hi, p.y);
    }
  }
  x_lo = std::floor(x_lo);
  x_hi = std::max(std::ceil(x_hi), x_lo + 1.0);
  if (y_hi - y_lo <= 0.0) {
    y_lo -= 0.5;
    y_hi += 0.5;
  } else {
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
  }

  constexpr double width = 720, height = 440, left = 80, right = 200, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto px = [&](double x) { return left + (std::log10(x) - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << left << "\" y=\"24\" font-size=\"14\">" << escape_xml(title) << "</text>\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(x_lo); d <= static_cast<int>(x_hi); ++d) {
    const double x = left + (d - x_lo) / (x_hi - x_lo) * plot_w;
    svg << "<line x1=\"" << fixed(x, 2) << "\" y1=\"" << top + plot_h << "\" x2=\"" << fixed(x, 2) << "\" y2=\""
        << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fixed(x, 2) << "\" y=\"" << top + plot_h + 20 << "\" text-anchor=\"middle\">1e" << d
        << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = y_lo + (y_hi - y_lo) * i / 4.0;
    const double y = py(v);
    svg << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(y, 2) << "\" x2=\"" << left << "\" y2=\"" << fixed(y, 2)
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << fixed(y + 4, 2) << "\" text-anchor=\"end\">" << fixed(v, 4)
        << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">"
      << escape_xml(axis_label(view, true)) << "</text>\n";
  svg << "<text transform=\"translate(18," << top + plot_h / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape_xml(axis_label(view, false)) << "</text>\n";

  for (std::size_t s = 0; s < labels.size(); ++s) {
    const char* color = kPalette[s % kPalette.size()];
    const auto& pts = series[labels[s]];
    if (!pts.empty()) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        svg << (i ? " " : "") << fixed(px(pts[i].x), 2) << ',' << fixed(py(pts[i].y), 2);
      }
      svg << "\"/>\n";
      for (const PlotPoint& p : pts) {
        svg << "<circle cx=\"" << fixed(px(p.x), 2) << "\" cy=\"" << fixed(py(p.y), 2) << "\" r=\"3\" fill=\"" << color
            << "\"/>\n";
      }
    }
    const double ly = top + 10 + 18.0 * static_cast<double>(s);
    svg << "<line x1=\"" << width - right + 15 << "\" y1=\"" << fixed(ly, 2) << "\" x2=\"" << width - right + 35
        << "\" y2=\"" << fixed(ly, 2) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << width - right + 40 << "\" y=\"" << fixed(ly + 4, 2) << "\">" << escape_xml(labels[s])
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::filesystem::path> emit(const AggregateTable& table, EmitFormat format,
                                        const std::filesystem::path& path) {
  if (table.rows.empty()) throw InputError("nothing to emit: the table has no rows");
  std::vector<std::filesystem::path> written;
  if (format == EmitFormat::CSV) {
    std::ofstream out = open_output(path);
    write_aggregate_csv(out, table);
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
    written.push_back(path);
    return written;
  }

  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec || !std::filesystem::is_directory(path)) throw IoError("cannot create directory '" + path.string() + "'");
  std::vector<std::string> order;
  std::map<std::string, std::vector<AggregateRow>> charts;
  for (const AggregateRow& r : table.rows) {
    const std::string key = file_token(r.algorithm) + "_" + file_token(r.problem) + "_M" + file_token(r.objectives);
    if (!charts.count(key)) order.push_back(key);
    charts[key].push_back(r);
  }
  for (const std::string& key : order) {
    const auto& rows = charts[key];
    for (PlotView view : {PlotView::QualityVsSize, PlotView::TimeVsSize, PlotView::QualityTime,
                          PlotView::QualityMemory}) {
      const std::filesystem::path file = path / (key + "_" + view_name(view) + ".svg");
      std::ofstream out = open_output(file);
      const std::string title =
          rows.front().algorithm + " on " + rows.front().problem + " (M=" + rows.front().objectives + ")";
      out << render_svg(rows, view, title);
      out.close();
      if (!out) throw IoError("failed writing '" + file.string() + "'");
      written.push_back(file);
    }
  }
  return written;
}

}  // namespace emoa
