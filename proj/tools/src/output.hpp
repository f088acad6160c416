#pragma once

#include <string>
#include <vector>

namespace hst::cli {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

// Shortest round-trip text for a double; "nan"/"inf" spelled out.
std::string num(double v);
std::string num(long long v);

// RFC-4180: CRLF line ends, fields with comma, quote or line breaks quoted.
std::string to_csv(const Table& t);

enum class PlotKind { Line, Scatter };

// Fixed 640x400 SVG 1.1 with one series per y column; throws EmptyDataError.
std::string emit_plot(const Table& t, PlotKind kind, const std::string& x_col,
                      const std::vector<std::string>& y_cols, const std::string& title);

// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace hst::cli
