#include "lorenzlab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include "json.hpp"
#include <sstream>

#include "lorenzlab/error.hpp"

namespace lorenzlab::io {

using nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string_view to_string(Format f) {
  switch (f) {
    case Format::csv: return "csv";
    case Format::json: return "json";
    case Format::both: return "both";
  }
  return "csv";
}

Format format_from_string(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "both") return Format::both;
  throw ValidationError("unknown output format '" + std::string(s) + "' (csv, json, both)");
}

std::string csv_table(std::span<const std::string> header,
                      std::span<const std::vector<double>> columns) {
  if (header.size() != columns.size()) throw ValidationError("csv: header/column count mismatch");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw ValidationError("csv: columns differ in length");
  std::string out;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) out += ',';
    out += header[j];
  }
  out += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) out += ',';
      out += format_double(columns[j][i]);
    }
    out += '\n';
  }
  return out;
}

std::string density_csv(const DensityField& density) {
  const std::vector<std::string> header{"x", "rho"};
  const std::vector<std::vector<double>> cols{
      {density.grid.nodes().begin(), density.grid.nodes().end()}, density.values};
  return csv_table(header, cols);
}

std::string curve_csv(const LorenzCurve& curve) {
  std::vector<double> f(curve.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = curve.f(i);
  const std::vector<std::string> header{"f", "L"};
  const std::vector<std::vector<double>> cols{f, {curve.values().begin(), curve.values().end()}};
  return csv_table(header, cols);
}

std::string wealth_csv(std::span<const double> wealth) {
  std::string out = "agent,wealth\n";
  for (std::size_t i = 0; i < wealth.size(); ++i)
    out += std::to_string(i) + ',' + format_double(wealth[i]) + '\n';
  return out;
}

std::string metrics_csv(const MetricSeries& s) {
  const std::vector<std::string> header{"time", "gini",       "hoover",          "mean",
                                        "std",  "mass_error", "convexity_margin"};
  const std::vector<std::vector<double>> cols{s.times, s.gini,       s.hoover,          s.mean,
                                              s.std,   s.mass_error, s.convexity_margin};
  return csv_table(header, cols);
}

namespace {

// nlohmann writes NaN as null; keep the explicit strings for round trips.
ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

ordered_json array(std::span<const double> v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

}  // namespace

std::string density_json(const DensityField& d) {
  ordered_json j;
  j["kind"] = "density";
  j["time"] = number(d.time);
  j["domain"] = std::string(to_string(d.grid.domain()));
  j["x_min"] = number(d.grid.nodes().front());
  j["x_max"] = number(d.grid.nodes().back());
  j["mass"] = number(d.mass());
  j["mean"] = number(d.mean());
  j["x"] = array(d.grid.nodes());
  j["rho"] = array(d.values);
  return j.dump(1) + '\n';
}

std::string curve_json(const LorenzCurve& c) {
  ordered_json j;
  j["kind"] = "lorenz";
  j["time"] = number(c.time());
  j["f_count"] = c.size();
  j["right_boundary"] = number(c.right_boundary());
  j["convexity_margin"] = number(c.convexity_margin());
  j["L"] = array(c.values());
  return j.dump(1) + '\n';
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw OutputError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw OutputError("write failed for " + path.string());
}

std::string snapshot_stem(std::string_view prefix, std::size_t index, std::size_t total) {
  const std::size_t width = std::max<std::size_t>(4, std::to_string(total ? total - 1 : 0).size());
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(prefix) + '_' + digits;
}

void write_index(const std::filesystem::path& dir, std::span<const IndexEntry> entries) {
  ordered_json j;
  ordered_json files = ordered_json::array();
  for (const auto& e : entries) files.push_back({{"file", e.file}, {"kind", e.kind}, {"time", number(e.time)}});
  j["files"] = std::move(files);
  write_text(dir / "index.json", j.dump(1) + '\n');
}

namespace {

template <class Snapshot, class Time, class Csv, class Json>
std::vector<IndexEntry> emit(std::span<const Snapshot> snaps, const MetricSeries& metrics,
                             const std::filesystem::path& dir, Format format,
                             std::string_view prefix, Time time_of, Csv to_csv, Json to_json) {
  std::vector<IndexEntry> entries;
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const std::string stem = snapshot_stem(prefix, k, snaps.size());
    const double t = time_of(snaps[k]);
    if (format != Format::json) {
      write_text(dir / (stem + ".csv"), to_csv(snaps[k]));
      entries.push_back({stem + ".csv", std::string(prefix), t});
    }
    if (format != Format::csv) {
      write_text(dir / (stem + ".json"), to_json(snaps[k]));
      entries.push_back({stem + ".json", std::string(prefix), t});
    }
  }
  write_text(dir / "metrics.csv", metrics_csv(metrics));
  entries.push_back({"metrics.csv", "metrics", metrics.size() ? metrics.times.back() : 0.0});
  write_index(dir, entries);
  return entries;
}

}  // namespace

std::vector<IndexEntry> emit_plot_data(std::span<const DensityField> densities,
                                       const MetricSeries& metrics,
                                       const std::filesystem::path& dir, Format format) {
  return emit(densities, metrics, dir, format, "density",
              [](const DensityField& d) { return d.time; }, density_csv, density_json);
}

std::vector<IndexEntry> emit_plot_data(std::span<const LorenzCurve> curves,
                                       const MetricSeries& metrics,
                                       const std::filesystem::path& dir, Format format) {
  return emit(curves, metrics, dir, format, "curve",
              [](const LorenzCurve& c) { return c.time(); }, curve_csv, curve_json);
}

}  // namespace lorenzlab::io
