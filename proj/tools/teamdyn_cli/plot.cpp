// Copyright 2026 The teamdyn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "teamdyn_cli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "teamdyn/errors.hpp"

namespace teamdyn::cli {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr int kTicks = 5;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

std::string escape(const std::string& s) {
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

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void widen_if_flat() {
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(lo))) {
      const double pad = std::max(0.5, 0.05 * std::abs(lo));
      lo -= pad;
      hi += pad;
    }
  }
};

Range range_of(const std::vector<const std::vector<double>*>& series) {
  Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto* s : series) {
    for (double v : *s) {
      if (!std::isfinite(v)) continue;
      r.lo = std::min(r.lo, v);
      r.hi = std::max(r.hi, v);
    }
  }
  if (r.lo > r.hi) r = {0.0, 1.0};
  r.widen_if_flat();
  return r;
}

std::vector<double> running_average(const std::vector<double>& t,
                                    const std::vector<double>& v) {
  std::vector<double> out(v.size());
  double integral = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) integral += 0.5 * (v[k] + v[k - 1]) * (t[k] - t[k - 1]);
    const double span = t[k] - t[0];
    out[k] = span > 0.0 ? integral / span : v[k];
  }
  return out;
}

class Canvas {
 public:
  Canvas(Range x, Range y) : x_(x), y_(y) {}

  double px(double v) const {
    return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight);
  }
  double py(double v) const {
    return kHeight - kBottom - (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom);
  }

  void axes(const std::string& title, const std::string& xlabel,
            const std::string& ylabel) {
    out_ << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
         << "\" fill=\"white\"/>\n";
    out_ << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
         << kWidth - kLeft - kRight << "\" height=\"" << kHeight - kTop - kBottom
         << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= kTicks; ++i) {
      const double xv = x_.lo + (x_.hi - x_.lo) * i / kTicks;
      const double yv = y_.lo + (y_.hi - y_.lo) * i / kTicks;
      out_ << "<text x=\"" << fmt("%.2f", px(xv)) << "\" y=\""
           << fmt("%.2f", kHeight - kBottom + 18) << "\" font-size=\"11\" "
           << "text-anchor=\"middle\">" << fmt("%.4g", xv) << "</text>\n";
      out_ << "<text x=\"" << fmt("%.2f", kLeft - 6) << "\" y=\"" << fmt("%.2f", py(yv) + 4)
           << "\" font-size=\"11\" text-anchor=\"end\">" << fmt("%.4g", yv) << "</text>\n";
    }
    out_ << "<text x=\"" << kWidth / 2 << "\" y=\"22\" font-size=\"14\" "
         << "text-anchor=\"middle\">" << escape(title) << "</text>\n";
    out_ << "<text x=\"" << fmt("%.2f", (kLeft + kWidth - kRight) / 2) << "\" y=\""
         << kHeight - 12 << "\" font-size=\"12\" text-anchor=\"middle\">"
         << escape(xlabel) << "</text>\n";
    out_ << "<text x=\"16\" y=\"" << fmt("%.2f", (kTop + kHeight - kBottom) / 2)
         << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
         << fmt("%.2f", (kTop + kHeight - kBottom) / 2) << ")\">" << escape(ylabel)
         << "</text>\n";
  }

  void curve(const std::vector<double>& xs, const std::vector<double>& ys,
             const char* color) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (!std::isfinite(xs[k]) || !std::isfinite(ys[k])) continue;
      const std::pair<double, double> p{std::round(px(xs[k]) * 100) / 100,
                                        std::round(py(ys[k]) * 100) / 100};
      // Consecutive duplicates add nothing at this resolution.
      if (pts.empty() || pts.back() != p) pts.push_back(p);
    }
    if (pts.empty()) return;
    if (pts.size() == 1) {
      out_ << "<circle cx=\"" << fmt("%.2f", pts[0].first) << "\" cy=\""
           << fmt("%.2f", pts[0].second) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      return;
    }
    out_ << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      out_ << (k ? " " : "") << fmt("%.2f", pts[k].first) << ','
           << fmt("%.2f", pts[k].second);
    }
    out_ << "\"/>\n";
  }

  void marker(double x, double y, const char* color) {
    out_ << "<circle cx=\"" << fmt("%.2f", px(x)) << "\" cy=\"" << fmt("%.2f", py(y))
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  }

  void legend(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      const double y = kTop + 16 + 16 * static_cast<double>(i);
      out_ << "<line x1=\"" << kWidth - kRight - 90 << "\" y1=\"" << y - 4 << "\" x2=\""
           << kWidth - kRight - 70 << "\" y2=\"" << y - 4 << "\" stroke=\""
           << kPalette[i % 8] << "\" stroke-width=\"2\"/>\n";
      out_ << "<text x=\"" << kWidth - kRight - 64 << "\" y=\"" << y
           << "\" font-size=\"11\">" << escape(names[i]) << "</text>\n";
    }
  }

  std::string str() const {
    std::ostringstream doc;
    doc << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\">\n"
        << out_.str() << "</svg>\n";
    return doc.str();
  }

 private:
  Range x_, y_;
  std::ostringstream out_;
};

}  // namespace

std::string render_svg(const CsvTable& table, const std::string& mode,
                       const std::vector<std::string>& columns,
                       const std::string& title) {
  if (columns.empty()) throw InputError("plot needs at least one column");
  std::vector<const std::vector<double>*> data;
  for (const auto& c : columns) data.push_back(&table.column(c));

  if (mode == "phase") {
    if (columns.size() != 2) throw InputError("phase plot needs exactly two columns");
    Canvas canvas(range_of({data[0]}), range_of({data[1]}));
    canvas.axes(title, columns[0], columns[1]);
    canvas.curve(*data[0], *data[1], kPalette[0]);
    if (table.rows() > 0) canvas.marker((*data[0])[0], (*data[1])[0], kPalette[1]);
    return canvas.str();
  }
  if (mode != "series" && mode != "running_average") {
    throw InputError("unknown plot mode '" + mode + "' (phase, series, running_average)");
  }
  const auto& t = table.column("t");
  std::vector<std::vector<double>> averaged;
  if (mode == "running_average") {
    for (const auto* d : data) averaged.push_back(running_average(t, *d));
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = &averaged[i];
  }
  Canvas canvas(range_of({&t}), range_of(data));
  std::vector<std::string> names;
  for (const auto& c : columns) {
    names.push_back(mode == "running_average" ? "avg " + c : c);
  }
  canvas.axes(title, "t", mode == "running_average" ? "running average" : "value");
  for (std::size_t i = 0; i < data.size(); ++i) canvas.curve(t, *data[i], kPalette[i % 8]);
  canvas.legend(names);
  return canvas.str();
}

CommandResult run_plot(const ExperimentConfig& config) {
  const std::filesystem::path csv =
      config.plot.csv.empty() ? config.output_dir / "trajectory.csv"
                              : std::filesystem::path(config.plot.csv);
  const CsvTable table = read_csv(csv);
  const std::string svg = render_svg(table, config.plot.mode, config.plot.columns,
                                     config.name + " (" + config.plot.mode + ")");
  std::filesystem::create_directories(config.output_dir);
  const auto path = config.output_dir / "plot.svg";
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << svg;
  CommandResult result;
  result.report = {{"csv", csv.string()}, {"svg", path.string()}, {"rows", table.rows()}};
  return result;
}

}  // namespace teamdyn::cli
