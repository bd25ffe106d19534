#include "cheeger/error.hpp"
#include "cheeger/harness.hpp"
#include "cheeger/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace cheeger {

namespace fs = std::filesystem;

namespace {

struct Canvas {
  double x0, x1, y0, y1;
  static constexpr double kW = 480, kH = 360, kL = 60, kR = 20, kT = 30, kB = 50;
  double px(double lx) const { return kL + (lx - x0) / (x1 - x0) * (kW - kL - kR); }
  double py(double ly) const { return kH - kB - (ly - y0) / (y1 - y0) * (kH - kT - kB); }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string render_svg(const PlotData& d, const std::string& title, const std::string& ylabel) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    if (d.x[i] > 0.0 && d.y[i] > 0.0) {
      lx.push_back(std::log10(d.x[i]));
      ly.push_back(std::log10(d.y[i]));
    }
  }
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Canvas::kW << "\" height=\"" << Canvas::kH
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << Canvas::kW / 2 << "\" y=\"18\" text-anchor=\"middle\">" << title << "</text>\n";
  if (lx.empty()) {
    s << "<text x=\"240\" y=\"180\" text-anchor=\"middle\">no positive data</text>\n</svg>\n";
    return s.str();
  }
  auto [xmin, xmax] = std::minmax_element(lx.begin(), lx.end());
  auto [ymin, ymax] = std::minmax_element(ly.begin(), ly.end());
  Canvas c{*xmin - 0.1, *xmax + 0.1, *ymin - 0.2, *ymax + 0.2};
  const double l = Canvas::kL, r = Canvas::kW - Canvas::kR, t = Canvas::kT, b = Canvas::kH - Canvas::kB;
  s << "<polyline fill=\"none\" stroke=\"black\" points=\"" << l << "," << t << " " << l << "," << b << " " << r
    << "," << b << "\"/>\n";
  s << "<text x=\"" << (l + r) / 2 << "\" y=\"" << Canvas::kH - 12 << "\" text-anchor=\"middle\">log10 n</text>\n";
  s << "<text x=\"14\" y=\"" << (t + b) / 2 << "\" transform=\"rotate(-90 14," << (t + b) / 2
    << ")\" text-anchor=\"middle\">log10 " << ylabel << "</text>\n";
  for (double v : {c.x0, c.x1}) {
    s << "<text x=\"" << c.px(v) << "\" y=\"" << b + 14 << "\" text-anchor=\"middle\">" << num(v) << "</text>\n";
  }
  for (double v : {c.y0, c.y1}) {
    s << "<text x=\"" << l - 4 << "\" y=\"" << c.py(v) + 4 << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    if (!(d.x[i] > 0.0 && d.y[i] > 0.0)) continue;
    const double x = c.px(std::log10(d.x[i]));
    const double lo = std::max(d.y[i] - d.sigma[i], d.y[i] * 1e-3);
    const double hi = d.y[i] + d.sigma[i];
    s << "<line x1=\"" << x << "\" x2=\"" << x << "\" y1=\"" << c.py(std::log10(lo)) << "\" y2=\""
      << c.py(std::log10(hi)) << "\" stroke=\"gray\"/>\n";
    s << "<circle cx=\"" << x << "\" cy=\"" << c.py(std::log10(d.y[i])) << "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  // Fitted line in natural logs converted to base 10.
  auto fit = [&](double l10x) { return (d.intercept + d.slope * l10x * std::log(10.0)) / std::log(10.0); };
  s << "<line x1=\"" << c.px(*xmin) << "\" y1=\"" << c.py(fit(*xmin)) << "\" x2=\"" << c.px(*xmax)
    << "\" y2=\"" << c.py(fit(*xmax)) << "\" stroke=\"firebrick\" stroke-dasharray=\"4 3\"/>\n";
  s << "<text x=\"" << r - 4 << "\" y=\"" << t + 12 << "\" text-anchor=\"end\">slope " << num(d.slope)
    << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace

PlotKind plot_kind_from_name(const std::string& name) {
  if (name == "rate_loglog") return PlotKind::RateLogLog;
  if (name == "cut_error") return PlotKind::CutError;
  if (name == "concentration") return PlotKind::Concentration;
  throw Error(ErrorCode::Config, "unknown plot kind '" + name + "' (expected rate_loglog | cut_error | concentration)");
}

std::string to_string(PlotKind k) {
  switch (k) {
    case PlotKind::RateLogLog: return "rate_loglog";
    case PlotKind::CutError: return "cut_error";
    case PlotKind::Concentration: return "concentration";
  }
  return "";
}

PlotData emit_plot_data(const fs::path& summary, PlotKind kind, const fs::path& out_dir) {
  const Table t = read_table(summary);
  std::string ycol;
  switch (kind) {
    case PlotKind::RateLogLog: ycol = "abs_error"; break;
    case PlotKind::CutError: ycol = "l1_cut_error"; break;
    case PlotKind::Concentration: ycol = "gtv"; break;
  }
  const int xi = t.column("n");
  const int yi = t.column(ycol);
  if (xi < 0 || yi < 0) {
    std::string missing;
    if (xi < 0) missing += " n";
    if (yi < 0) missing += " " + ycol;
    throw Error(ErrorCode::MissingColumns, summary.string() + " lacks column(s):" + missing);
  }
  std::map<double, std::vector<double>> groups;
  for (const auto& row : t.rows) {
    if (static_cast<int>(row.size()) <= std::max(xi, yi)) continue;
    if (row[xi].empty() || row[yi].empty()) continue;
    groups[std::stod(row[xi])].push_back(std::stod(row[yi]));
  }
  PlotData d;
  for (const auto& [x, ys] : groups) {
    double mean = 0.0;
    for (double y : ys) mean += y;
    mean /= static_cast<double>(ys.size());
    double ss = 0.0;
    for (double y : ys) ss += (y - mean) * (y - mean);
    d.x.push_back(x);
    d.y.push_back(kind == PlotKind::Concentration ? mean : median(ys));
    d.sigma.push_back(ys.size() > 1 ? std::sqrt(ss / static_cast<double>(ys.size() - 1)) : 0.0);
    d.count.push_back(ys.size());
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    if (d.x[i] > 0.0 && d.y[i] > 0.0) {
      lx.push_back(std::log(d.x[i]));
      ly.push_back(std::log(d.y[i]));
    }
  }
  if (lx.size() >= 2) std::tie(d.slope, d.intercept) = ols(lx, ly);
  for (std::size_t i = 1; i < d.y.size(); ++i) d.non_increasing_steps += d.y[i] <= d.y[i - 1] ? 1 : 0;

  const std::string name = to_string(kind);
  std::ostringstream tsv;
  tsv << "# kind\t" << name << "\n";
  tsv << "# slope\t" << format_double(d.slope) << "\n";
  tsv << "# intercept\t" << format_double(d.intercept) << "\n";
  const std::size_t steps = d.y.empty() ? 0 : d.y.size() - 1;
  tsv << "# non_increasing_steps\t" << d.non_increasing_steps << "/" << steps << "\n";
  if (kind == PlotKind::CutError) {
    tsv << "# monotone_trend\t" << (steps > 0 && d.non_increasing_steps == static_cast<int>(steps) ? "yes" : "no")
        << "\n";
  }
  tsv << "x\ty\tsigma\tcount\n";
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    tsv << format_double(d.x[i]) << "\t" << format_double(d.y[i]) << "\t" << format_double(d.sigma[i]) << "\t"
        << d.count[i] << "\n";
  }
  write_text(out_dir / (name + ".tsv"), tsv.str());
  write_text(out_dir / (name + ".svg"), render_svg(d, name, ycol));
  return d;
}

}  // namespace cheeger
