#pragma once

// Command-line front end. `run` is the whole program minus main(); the
// remaining declarations are the pieces it is built from.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "frogsim/analysis.hpp"

namespace frogsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapped = 3;

// Runs a command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// %.12g, with "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double x);

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int steps = 200;
  double at(int i) const;
};

enum class SweepMode { Classify, Simulate };

struct SweepSpec {
  int d = 2;
  GridSpec p_grid;
  GridSpec q_grid;
  SweepMode mode = SweepMode::Classify;
  int t = 52;                      // depth for lb / threshold
  std::size_t trials = 200;        // simulate mode only
  int depth_cap = 10;
  std::int64_t round_cap = 100'000;
  std::uint64_t seed = 1;
  // Throws std::invalid_argument.
  void validate() const;
};

struct SweepSimulation {
  std::size_t trials = 0;
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t capped = 0;
};

struct SweepRow {
  int d = 2;
  double p = 0.0;
  double q = 0.0;
  double rho = 0.0;
  double frak_q = 0.0;
  Region cls = Region::Unknown;
  double branching_mean = 0.0;
  double all_awake_visits = 0.0;
  double lb = 0.0;
  double threshold = 0.0;
  std::optional<SweepSimulation> sim;
};

inline constexpr const char* kSweepHeader =
    "d,p,q,rho,frak_q,class,branching_mean,all_awake_visits,lb,threshold";
inline constexpr const char* kSweepSimHeader = ",fm_trials,fm_mean,fm_std_err,fm_capped";

// Row for a single cell, analysis columns only.
SweepRow classify_cell(int d, double p, double q, int t,
                       const std::vector<Certificate>& certificates);

// p-major grid, p and q both ascending.
std::vector<SweepRow> sweep(const SweepSpec& spec, unsigned threads = 0);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct CsvError : std::runtime_error {
  CsvError(std::size_t line, const std::string& what);
  std::size_t line;
};

// Parses a sweep CSV. Only the analysis columns are read back; extra
// columns are allowed. Throws CsvError.
std::vector<SweepRow> read_sweep_csv(std::istream& is);

// Fill colour of each class in the phase diagram.
std::string class_fill(Region cls);

// Heatmap over the grid with the certified rectangles outlined. One <rect>
// per cell, centred on its grid point and clipped to the plot area.
std::string render_phase_svg(const std::vector<SweepRow>& rows,
                             const std::vector<Certificate>& certificates);

// Serialised form used for reproducibility comparisons: keys sorted, no
// whitespace, every "timestamp" member dropped.
std::string canonical_form(const nlohmann::json& doc);

}  // namespace frogsim::cli
