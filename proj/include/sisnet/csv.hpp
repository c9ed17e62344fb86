#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sisnet/meanfield.hpp"
#include "sisnet/micro_sim.hpp"

namespace sisnet {

inline constexpr const char* kTrajectoryHeader = "time,island,strain,count,fraction";
inline constexpr const char* kPlotHeader = "time,series,value";

class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shortest-round-trip-safe decimal: 17 significant digits.
std::string format_double(double v);

using CsvMetadata = std::map<std::string, std::string>;

/// Rows island-major within each time; islands and strains are written
/// 1-based. Metadata lines precede the header as "# key=value".
void write_trajectory_csv(std::ostream& out, const MicroTrajectory& traj,
                          const CsvMetadata& meta);
void write_trajectory_csv(std::ostream& out, const OdeTrajectory& traj,
                          const CsvMetadata& meta);
void write_file(const std::filesystem::path& path, const std::string& contents);

struct TrajectoryRow {
  double time;
  std::size_t island;  // 1-based, as in the file
  std::size_t strain;  // 1-based
  std::optional<std::int64_t> count;
  double fraction;
};

struct TrajectoryTable {
  CsvMetadata metadata;
  std::vector<TrajectoryRow> rows;
  /// True when every row has an empty count column (mean-field output).
  bool is_meanfield() const;
};

TrajectoryTable read_trajectory_csv(std::istream& in);
TrajectoryTable read_trajectory_csv(const std::filesystem::path& path);

enum class PlotMode {
  /// One series per (file, island, strain).
  Series,
  /// Count-level files are averaged: micro_mean and micro_stderr series per
  /// (island, strain); mean-field files contribute an ode series.
  MeanOverlay,
};

struct PlotInput {
  std::string label;
  TrajectoryTable table;
};

/// Long-format (time, series, value) CSV. Empty input gives the header only.
std::string emit_plot_data(const std::vector<PlotInput>& inputs, PlotMode mode);

}  // namespace sisnet
