#include "dotcavity/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "dotcavity/error.hpp"

namespace dotcavity {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

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

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v, bool log_axis) {
  char buf[32];
  if (log_axis) {
    const int e = static_cast<int>(std::floor(std::log10(v) + 1e-9));
    const double m = v / std::pow(10.0, e);
    if (e >= -2 && e <= 3) {
      std::snprintf(buf, sizeof buf, "%g", v);
    } else if (std::abs(m - 1.0) < 1e-9) {
      std::snprintf(buf, sizeof buf, "1e%d", e);
    } else {
      std::snprintf(buf, sizeof buf, "%.0fe%d", m, e);
    }
  } else {
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  }
  return buf;
}

std::string axis_label(const Column& c) {
  return c.unit.empty() ? c.name : c.name + " [" + c.unit + "]";
}

struct Axis {
  double lo;
  double hi;
  bool log;

  double transform(double v) const { return log ? std::log10(v) : v; }
  double fraction(double v) const { return (transform(v) - lo) / (hi - lo); }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      // Decades, then 1-2-5 and finally 1..9 subdivisions on short ranges.
      for (const std::vector<double>& mantissas :
           {std::vector<double>{1}, {1, 2, 5}, {1, 2, 3, 4, 5, 6, 7, 8, 9}}) {
        out.clear();
        for (int e = static_cast<int>(std::floor(lo)); e <= static_cast<int>(std::ceil(hi)); ++e) {
          for (double m : mantissas) {
            const double t = m * std::pow(10.0, e);
            const double lt = std::log10(t);
            if (lt >= lo - 1e-9 && lt <= hi + 1e-9) out.push_back(t);
          }
        }
        if (out.size() >= 3) break;
      }
      return out;
    }
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      step = m * mag;
      if (step >= raw) break;
    }
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
      out.push_back(t);
    }
    return out;
  }
};

Axis make_axis(double lo, double hi, bool log_axis) {
  Axis a{log_axis ? std::log10(lo) : lo, log_axis ? std::log10(hi) : hi, log_axis};
  if (a.hi - a.lo <= 0.0) {
    const double pad = log_axis ? 0.5 : (a.lo == 0.0 ? 1.0 : 0.1 * std::abs(a.lo));
    a.lo -= pad;
    a.hi += pad;
  } else {
    const double pad = 0.04 * (a.hi - a.lo);
    a.lo -= pad;
    a.hi += pad;
  }
  return a;
}

}  // namespace

void write_svg(const ResultTable& table, const PlotSpec& spec, std::ostream& out) {
  if (table.columns.size() < 2) throw InvalidInput("a plot needs at least two columns");
  if (spec.x_column >= table.columns.size()) throw InvalidInput("plot x column out of range");
  std::vector<std::size_t> ys = spec.y_columns;
  if (ys.empty()) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i != spec.x_column) ys.push_back(i);
    }
  }
  for (std::size_t y : ys) {
    if (y >= table.columns.size()) throw InvalidInput("plot y column out of range");
  }

  const auto usable = [](double v, bool log_axis) {
    return std::isfinite(v) && (!log_axis || v > 0.0);
  };
  std::vector<std::size_t> bad_rows;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  std::vector<double> distinct_x;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    bool row_bad = false;
    const double x = row[spec.x_column];
    for (std::size_t y : ys) {
      if (!usable(x, spec.x_log) || !usable(row[y], spec.y_log)) {
        row_bad = true;
        continue;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, row[y]);
      ymax = std::max(ymax, row[y]);
      distinct_x.push_back(x);
    }
    if (row_bad) bad_rows.push_back(r + 1);
  }
  if (!bad_rows.empty() && !spec.skip_missing) {
    std::ostringstream msg;
    msg << "non-finite" << (spec.x_log || spec.y_log ? " or non-positive (log axis)" : "")
        << " plot data in row" << (bad_rows.size() > 1 ? "s" : "");
    for (std::size_t i = 0; i < bad_rows.size(); ++i) msg << (i ? ", " : " ") << bad_rows[i];
    throw InvalidInput(msg.str());
  }
  std::sort(distinct_x.begin(), distinct_x.end());
  distinct_x.erase(std::unique(distinct_x.begin(), distinct_x.end()), distinct_x.end());
  if (distinct_x.empty()) throw InvalidInput("no plottable data");
  if (distinct_x.size() < 2 && !spec.allow_single_point) {
    throw InvalidInput("single-point table: nothing to draw a line through");
  }

  const Axis xa = make_axis(xmin, xmax, spec.x_log);
  const Axis ya = make_axis(ymin, ymax, spec.y_log);
  std::size_t longest = 0;
  for (std::size_t y : ys) longest = std::max(longest, table.columns[y].name.size());
  const double left = 90.0, top = 50.0, bottom = 70.0;
  const double right = 60.0 + 7.0 * static_cast<double>(longest);
  const double width = std::max(spec.width, left + right + 320.0);
  const double pw = width - left - right;
  const double ph = spec.height - top - bottom;
  const auto px = [&](double v) { return left + xa.fraction(v) * pw; };
  const auto py = [&](double v) { return top + (1.0 - ya.fraction(v)) * ph; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(spec.height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(spec.height)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    out << "<text x=\"" << num(left + pw / 2) << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-size=\"15\">" << escape(spec.title) << "</text>\n";
  }

  out << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double t : xa.ticks()) {
    out << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(top) << "\" x2=\"" << num(px(t))
        << "\" y2=\"" << num(top + ph) << "\"/>\n";
  }
  for (double t : ya.ticks()) {
    out << "<line x1=\"" << num(left) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(left + pw)
        << "\" y2=\"" << num(py(t)) << "\"/>\n";
  }
  out << "</g>\n";
  out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : xa.ticks()) {
    out << "<text x=\"" << num(px(t)) << "\" y=\"" << num(top + ph + 18)
        << "\" text-anchor=\"middle\">" << tick_label(t, xa.log) << "</text>\n";
  }
  for (double t : ya.ticks()) {
    out << "<text x=\"" << num(left - 8) << "\" y=\"" << num(py(t) + 4)
        << "\" text-anchor=\"end\">" << tick_label(t, ya.log) << "</text>\n";
  }
  out << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(spec.height - 20)
      << "\" text-anchor=\"middle\">" << escape(axis_label(table.columns[spec.x_column]))
      << "</text>\n";
  std::string ylabel = axis_label(table.columns[ys.front()]);
  if (ys.size() > 1) {
    // Shared stem of the series names, e.g. "pump_th" for pump_th(...).
    std::string stem = table.columns[ys.front()].name;
    for (std::size_t y : ys) {
      const std::string& n = table.columns[y].name;
      std::size_t k = 0;
      while (k < stem.size() && k < n.size() && stem[k] == n[k]) ++k;
      stem.resize(k);
    }
    if (const auto paren = stem.find('('); paren != std::string::npos) stem.resize(paren);
    while (!stem.empty() && stem.back() == '_') stem.pop_back();
    const std::string& unit = table.columns[ys.front()].unit;
    ylabel = stem + (unit.empty() ? "" : " [" + unit + "]");
  }
  out << "<text transform=\"translate(22 " << num(top + ph / 2) << ") rotate(-90)\" "
      << "text-anchor=\"middle\">" << escape(ylabel) << "</text>\n";

  for (std::size_t s = 0; s < ys.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    std::ostringstream path;
    std::ostringstream marks;
    bool pen_down = false;
    for (const auto& row : table.rows) {
      const double x = row[spec.x_column];
      const double y = row[ys[s]];
      if (!usable(x, spec.x_log) || !usable(y, spec.y_log)) {
        pen_down = false;
        continue;
      }
      path << (pen_down ? " L" : " M") << num(px(x)) << ' ' << num(py(y));
      pen_down = true;
      marks << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"2.5\"/>";
    }
    out << "<g fill=\"" << color << "\" stroke=\"" << color << "\">\n";
    if (!path.str().empty()) {
      out << "<path fill=\"none\" stroke-width=\"1.8\" d=\"" << path.str().substr(1) << "\"/>\n";
    }
    out << marks.str() << "\n</g>\n";
    const double ly = top + 14 + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << num(left + pw + 14) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(left + pw + 36) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << num(left + pw + 42) << "\" y=\"" << num(ly + 4) << "\">"
        << escape(table.columns[ys[s]].name) << "</text>\n";
  }
  out << "</svg>\n";
}

void save_svg(const ResultTable& table, const PlotSpec& spec, const std::string& path) {
  std::ostringstream buffer;
  write_svg(table, spec, buffer);
  std::ofstream file(path);
  if (!file) throw Error("cannot write plot file '" + path + "'");
  file << buffer.str();
}

}  // namespace dotcavity
