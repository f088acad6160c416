#include "output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "hst/errors.hpp"

namespace hst::cli {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string num(long long v) { return std::to_string(v); }

namespace {

std::string field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += field(r[i]);
    }
    out += "\r\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

std::string emit_plot(const Table& t, PlotKind kind, const std::string& x_col,
                      const std::vector<std::string>& y_cols, const std::string& title) {
  if (t.rows.empty()) throw EmptyDataError("emit_plot: empty table");
  auto col = [&](const std::string& name) {
    auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) throw NotFoundError("emit_plot: no column '" + name + "'");
    return static_cast<std::size_t>(it - t.header.begin());
  };
  const std::size_t xc = col(x_col);
  struct Series {
    std::string name;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Series> series;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& yname : y_cols) {
    const std::size_t yc = col(yname);
    Series s{yname, {}};
    for (const auto& r : t.rows) {
      const double x = std::strtod(r[xc].c_str(), nullptr), y = std::strtod(r[yc].c_str(), nullptr);
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      s.pts.emplace_back(x, y);
      x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    series.push_back(std::move(s));
  }
  if (!std::isfinite(x0)) throw EmptyDataError("emit_plot: no finite data");
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double W = 640, H = 400, ml = 60, mr = 20, mt = 30, mb = 40;
  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"400\" "
        "viewBox=\"0 0 640 400\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n"
     << "<text x=\"320\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
     << escape_xml(title) << "</text>\n"
     << "<rect x=\"" << fixed(ml) << "\" y=\"" << fixed(mt) << "\" width=\"" << fixed(W - ml - mr)
     << "\" height=\"" << fixed(H - mt - mb) << "\" fill=\"none\" stroke=\"black\"/>\n";
  auto label = [&](double x, double y, const std::string& s, const char* anchor) {
    os << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" text-anchor=\"" << anchor
       << "\" font-family=\"sans-serif\" font-size=\"10\">" << escape_xml(s) << "</text>\n";
  };
  char buf[32];
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    std::snprintf(buf, sizeof buf, "%.3g", xv);
    label(px(xv), H - mb + 14, buf, "middle");
    std::snprintf(buf, sizeof buf, "%.3g", yv);
    label(ml - 4, py(yv) + 3, buf, "end");
  }
  label((ml + W - mr) / 2, H - 6, x_col, "middle");
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = kColours[s % 6];
    const auto& pts = series[s].pts;
    if (kind == PlotKind::Line) {
      os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i)
        os << (i ? " " : "") << fixed(px(pts[i].first)) << ',' << fixed(py(pts[i].second));
      os << "\"/>\n";
    } else {
      for (const auto& [x, y] : pts)
        os << "<circle cx=\"" << fixed(px(x)) << "\" cy=\"" << fixed(py(y)) << "\" r=\"2\" fill=\"" << colour
           << "\"/>\n";
    }
    os << "<text x=\"" << fixed(W - mr - 4) << "\" y=\"" << fixed(mt + 14 + 12.0 * s)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\" fill=\"" << colour << "\">"
       << escape_xml(series[s].name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw ResourceError("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace hst::cli
