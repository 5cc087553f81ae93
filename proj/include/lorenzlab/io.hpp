#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lorenzlab/fields.hpp"

namespace lorenzlab::io {

/// Shortest decimal string that parses back to the same double; "nan",
/// "inf", "-inf" for the non-finite values.
std::string format_double(double v);

enum class Format { csv, json, both };
std::string_view to_string(Format f);
Format format_from_string(std::string_view s);

/// Header row plus one row per index; all columns must share a length.
std::string csv_table(std::span<const std::string> header,
                      std::span<const std::vector<double>> columns);

std::string density_csv(const DensityField& density);   // x,rho
std::string curve_csv(const LorenzCurve& curve);        // f,L
std::string wealth_csv(std::span<const double> wealth);  // agent,wealth
/// time,gini,hoover,mean,std,mass_error,convexity_margin
std::string metrics_csv(const MetricSeries& series);

/// JSON documents with metadata (time, bounds, domain, normalization).
std::string density_json(const DensityField& density);
std::string curve_json(const LorenzCurve& curve);

/// Creates parent directories; throws OutputError on failure.
void write_text(const std::filesystem::path& path, std::string_view text);

/// Zero-padded snapshot file stem, e.g. ("curve", 3, 12) -> "curve_0003".
std::string snapshot_stem(std::string_view prefix, std::size_t index, std::size_t total);

/// One entry per snapshot; `time` is the snapshot time.
struct IndexEntry {
  std::string file;
  std::string kind;
  double time;
};

/// Writes one file per snapshot (per format), metrics.csv and index.json
/// into `dir`. Returns the entries written.
std::vector<IndexEntry> emit_plot_data(std::span<const DensityField> densities,
                                       const MetricSeries& metrics,
                                       const std::filesystem::path& dir, Format format);
std::vector<IndexEntry> emit_plot_data(std::span<const LorenzCurve> curves,
                                       const MetricSeries& metrics,
                                       const std::filesystem::path& dir, Format format);

/// Writes index.json from already-written entries (plus metrics.csv).
void write_index(const std::filesystem::path& dir, std::span<const IndexEntry> entries);

}  // namespace lorenzlab::io
