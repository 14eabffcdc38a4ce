#include "vmt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vmt::io {

namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string format_double(double v) { return fmt(v, "%.17g"); }

std::string profile_csv(const mono::DensityProfile& profile) {
  std::ostringstream out;
  out << "rho,I,raw_ratio,corrected\n";
  for (std::size_t i = 0; i < profile.rho.size(); ++i) {
    out << format_double(profile.rho[i]) << ',' << format_double(profile.I[i]) << ','
        << format_double(profile.raw_ratio[i]) << ','
        << format_double(i < profile.corrected.size() ? profile.corrected[i] : 0.0) << '\n';
  }
  return out.str();
}

std::string obj_mesh(const std::vector<Vec>& vertices,
                     const std::vector<std::array<int, 3>>& triangles) {
  std::ostringstream out;
  for (const Vec& v : vertices) {
    out << 'v';
    for (int i = 0; i < v.size(); ++i) out << ' ' << format_double(v(i));
    if (v.size() == 2) out << " 0";
    out << '\n';
  }
  for (const auto& t : triangles)
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  return out.str();
}

std::string polyline_csv(const std::vector<Vec>& points) {
  std::ostringstream out;
  for (const Vec& p : points) {
    for (int i = 0; i < p.size(); ++i) out << (i ? "," : "") << format_double(p(i));
    out << '\n';
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_file: cannot open " + path);
  f << content;
  if (!f) throw std::runtime_error("write_file: short write to " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_file: cannot open " + path);
  std::ostringstream out;
  out << f.rdbuf();
  return out.str();
}

std::string line_plot_svg(const std::string& title, const std::vector<Series>& series,
                          bool log_x) {
  const double width = 720, height = 480;
  const double left = 80, right = 700, top = 48, bottom = 428;

  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  bool have = false;
  for (const Series& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      const double xv = log_x ? (s.x[i] > 0 ? std::log10(s.x[i]) : NAN) : s.x[i];
      if (!std::isfinite(xv) || !std::isfinite(s.y[i])) continue;
      if (!have) {
        x_lo = x_hi = xv;
        y_lo = y_hi = s.y[i];
        have = true;
      } else {
        x_lo = std::min(x_lo, xv);
        x_hi = std::max(x_hi, xv);
        y_lo = std::min(y_lo, s.y[i]);
        y_hi = std::max(y_hi, s.y[i]);
      }
    }
  if (x_hi - x_lo < 1e-12) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  const double pad = std::max(1e-12, 0.05 * (y_hi - y_lo));
  y_lo -= pad;
  y_hi += pad;

  const auto px = [&](double x) {
    const double u = log_x ? std::log10(x) : x;
    return left + (u - x_lo) / (x_hi - x_lo) * (right - left);
  };
  const auto py = [&](double y) { return bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" "
      << "font-family=\"sans-serif\">" << escape_xml(title) << "</text>\n"
      << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
      << bottom << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
      << "\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    const double u = x_lo + (x_hi - x_lo) * i / 5.0;
    const double x = log_x ? std::pow(10.0, u) : u;
    const double X = left + (u - x_lo) / (x_hi - x_lo) * (right - left);
    out << "<line x1=\"" << fmt(X, "%.2f") << "\" y1=\"" << bottom << "\" x2=\"" << fmt(X, "%.2f")
        << "\" y2=\"" << bottom + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt(X, "%.2f") << "\" y=\"" << bottom + 20
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
        << fmt(x, "%.3g") << "</text>\n";
    const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
    const double Y = py(yv);
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << fmt(Y, "%.2f") << "\" x2=\"" << left
        << "\" y2=\"" << fmt(Y, "%.2f") << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << left - 8 << "\" y=\"" << fmt(Y + 4, "%.2f")
        << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << fmt(yv, "%.4g")
        << "</text>\n";
  }

  int ci = 0;
  for (const Series& s : series) {
    const std::string color = s.color.empty() ? kPalette[ci % 6] : s.color;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (log_x && !(s.x[i] > 0)) continue;
      out << fmt(px(s.x[i]), "%.2f") << ',' << fmt(py(s.y[i]), "%.2f") << ' ';
    }
    out << "\"/>\n"
        << "<text x=\"" << right - 8 << "\" y=\"" << top + 16 + 16 * ci
        << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\" fill=\"" << color
        << "\">" << escape_xml(s.label) << "</text>\n";
    ++ci;
  }
  out << "</svg>\n";
  return out.str();
}

std::string bar_chart_svg(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<double>& values) {
  const double width = 720, height = 480;
  const double left = 80, right = 700, top = 48, bottom = 400;
  const std::size_t n = std::min(labels.size(), values.size());
  double v_hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) v_hi = std::max(v_hi, values[i]);
  if (v_hi <= 0.0) v_hi = 1.0;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" "
      << "font-family=\"sans-serif\">" << escape_xml(title) << "</text>\n"
      << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
      << bottom << "\" stroke=\"black\"/>\n";
  if (n == 0) {
    out << "</svg>\n";
    return out.str();
  }
  const double slot = (right - left) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = std::max(0.0, values[i]) / v_hi * (bottom - top);
    const double x = left + slot * i + 0.15 * slot;
    out << "<rect x=\"" << fmt(x, "%.2f") << "\" y=\"" << fmt(bottom - h, "%.2f") << "\" width=\""
        << fmt(0.7 * slot, "%.2f") << "\" height=\"" << fmt(h, "%.2f")
        << "\" fill=\"#1f77b4\"/>\n"
        << "<text x=\"" << fmt(left + slot * (i + 0.5), "%.2f") << "\" y=\""
        << fmt(bottom - h - 6, "%.2f")
        << "\" text-anchor=\"middle\" font-size=\"10\" font-family=\"sans-serif\">"
        << fmt(values[i], "%.3g") << "</text>\n"
        << "<text x=\"" << fmt(left + slot * (i + 0.5), "%.2f") << "\" y=\"" << bottom + 16
        << "\" text-anchor=\"middle\" font-size=\"10\" font-family=\"sans-serif\">"
        << escape_xml(labels[i]) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace vmt::io
