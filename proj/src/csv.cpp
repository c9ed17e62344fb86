#include "sisnet/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

namespace sisnet {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

void write_metadata(std::ostream& out, const CsvMetadata& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
  out << kTrajectoryHeader << '\n';
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <class T>
T parse_number(const std::string& s, std::size_t line_no) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw SchemaError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const MicroTrajectory& traj,
                          const CsvMetadata& meta) {
  write_metadata(out, meta);
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    const auto& c = traj.samples[s];
    const std::string t = format_double(traj.times[s]);
    for (std::size_t i = 0; i < c.num_islands(); ++i) {
      for (std::size_t k = 0; k < c.num_strains(); ++k) {
        out << t << ',' << i + 1 << ',' << k + 1 << ',' << c.at(i, k) << ','
            << format_double(c.fraction(i, k)) << '\n';
      }
    }
  }
}

void write_trajectory_csv(std::ostream& out, const OdeTrajectory& traj,
                          const CsvMetadata& meta) {
  write_metadata(out, meta);
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    const auto& y = traj.samples[s];
    const std::string t = format_double(traj.times[s]);
    for (std::size_t i = 0; i < y.num_islands(); ++i) {
      for (std::size_t k = 0; k < y.num_strains(); ++k) {
        out << t << ',' << i + 1 << ',' << k + 1 << ",," << format_double(y.at(i, k))
            << '\n';
      }
    }
  }
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << contents;
}

bool TrajectoryTable::is_meanfield() const {
  for (const auto& r : rows) {
    if (r.count) return false;
  }
  return true;
}

TrajectoryTable read_trajectory_csv(std::istream& in) {
  TrajectoryTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line.rfind("# ", 0) == 0) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
          table.metadata[line.substr(2, eq - 2)] = line.substr(eq + 1);
        }
        continue;
      }
      if (line != kTrajectoryHeader) {
        throw SchemaError("expected header '" + std::string(kTrajectoryHeader) +
                          "', got '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 5) {
      throw SchemaError("line " + std::to_string(line_no) + ": expected 5 columns");
    }
    TrajectoryRow row{};
    row.time = parse_number<double>(cells[0], line_no);
    row.island = parse_number<std::size_t>(cells[1], line_no);
    row.strain = parse_number<std::size_t>(cells[2], line_no);
    if (!cells[3].empty()) row.count = parse_number<std::int64_t>(cells[3], line_no);
    row.fraction = parse_number<double>(cells[4], line_no);
    table.rows.push_back(row);
  }
  if (!header_seen) throw SchemaError("trajectory file has no header");
  return table;
}

TrajectoryTable read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  return read_trajectory_csv(f);
}

namespace {

std::string cell_label(const std::string& prefix, std::size_t island, std::size_t strain) {
  return prefix + "/i" + std::to_string(island) + "/s" + std::to_string(strain);
}


}  // namespace

std::string emit_plot_data(const std::vector<PlotInput>& inputs, PlotMode mode) {
  std::ostringstream out;
  out << kPlotHeader << '\n';
  const auto emit = [&out](double t, const std::string& label, double v) {
    out << format_double(t) << ',' << label << ',' << format_double(v) << '\n';
  };

  if (mode == PlotMode::Series) {
    for (const auto& in : inputs) {
      for (const auto& r : in.table.rows) {
        emit(r.time, cell_label(in.label, r.island, r.strain), r.fraction);
      }
    }
    return out.str();
  }

  const TrajectoryTable* reference = nullptr;
  std::vector<double> sum, sum_sq;
  std::size_t replicas = 0;
  for (const auto& in : inputs) {
    if (in.table.is_meanfield()) continue;
    if (!reference) {
      reference = &in.table;
      sum.assign(in.table.rows.size(), 0.0);
      sum_sq.assign(in.table.rows.size(), 0.0);
    }
    const auto& rows = in.table.rows;
    if (rows.size() != reference->rows.size()) {
      throw SchemaError("micro trajectory '" + in.label + "' has a different grid");
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& ref = reference->rows[r];
      if (rows[r].time != ref.time || rows[r].island != ref.island ||
          rows[r].strain != ref.strain) {
        throw SchemaError("micro trajectory '" + in.label + "' has a different grid");
      }
      sum[r] += rows[r].fraction;
      sum_sq[r] += rows[r].fraction * rows[r].fraction;
    }
    ++replicas;
  }
  if (reference) {
    const double n = static_cast<double>(replicas);
    for (std::size_t r = 0; r < reference->rows.size(); ++r) {
      const auto& ref = reference->rows[r];
      const double mean = sum[r] / n;
      const double var = replicas > 1 ? std::max(0.0, (sum_sq[r] - n * mean * mean) / (n - 1.0)) : 0.0;
      emit(ref.time, cell_label("micro_mean", ref.island, ref.strain), mean);
      emit(ref.time, cell_label("micro_stderr", ref.island, ref.strain), std::sqrt(var / n));
    }
  }
  const auto cells = [](const TrajectoryTable& t) {
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (const auto& r : t.rows) out.emplace(r.island, r.strain);
    return out;
  };
  for (const auto& in : inputs) {
    if (!in.table.is_meanfield()) continue;
    if (reference && cells(in.table) != cells(*reference)) {
      throw SchemaError("'" + in.label + "' covers different islands or strains");
    }
    for (const auto& r : in.table.rows) {
      emit(r.time, cell_label("ode", r.island, r.strain), r.fraction);
    }
  }
  return out.str();
}

}  // namespace sisnet
