#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "frogsim/cli.hpp"

namespace frogsim::cli {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s, std::size_t line, const char* column) {
  double x = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw CsvError(line, std::string("bad number in column ") + column + ": '" + s + "'");
  }
  return x;
}

}  // namespace

CsvError::CsvError(std::size_t line_no, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  const bool with_sim = !rows.empty() && rows.front().sim.has_value();
  os << kSweepHeader;
  if (with_sim) os << kSweepSimHeader;
  os << '\n';
  for (const auto& r : rows) {
    os << r.d << ',' << format_number(r.p) << ',' << format_number(r.q) << ','
       << format_number(r.rho) << ',' << format_number(r.frak_q) << ','
       << to_string(r.cls) << ',' << format_number(r.branching_mean) << ','
       << format_number(r.all_awake_visits) << ',' << format_number(r.lb) << ','
       << format_number(r.threshold);
    if (with_sim) {
      const SweepSimulation s = r.sim.value_or(SweepSimulation{});
      os << ',' << s.trials << ',' << format_number(s.mean) << ','
         << format_number(s.std_err) << ',' << s.capped;
    }
    os << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(is, line)) throw CsvError(1, "empty file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind(kSweepHeader, 0) != 0) throw CsvError(line_no, "unexpected header");

  static constexpr const char* kColumns[] = {"d", "p", "q", "rho", "frak_q", "class",
                                             "branching_mean", "all_awake_visits",
                                             "lb", "threshold"};
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() < 10) throw CsvError(line_no, "expected at least 10 fields");
    SweepRow r;
    const double d = parse_double(f[0], line_no, kColumns[0]);
    if (d != static_cast<int>(d) || d < 2) throw CsvError(line_no, "d must be an integer >= 2");
    r.d = static_cast<int>(d);
    r.p = parse_double(f[1], line_no, kColumns[1]);
    r.q = parse_double(f[2], line_no, kColumns[2]);
    if (!(r.p >= 0.0 && r.p <= 1.0 && r.q >= 0.0 && r.q <= 1.0)) {
      throw CsvError(line_no, "p and q must lie in [0, 1]");
    }
    r.rho = parse_double(f[3], line_no, kColumns[3]);
    r.frak_q = parse_double(f[4], line_no, kColumns[4]);
    try {
      r.cls = region_from_string(f[5]);
    } catch (const std::invalid_argument& e) {
      throw CsvError(line_no, e.what());
    }
    r.branching_mean = parse_double(f[6], line_no, kColumns[6]);
    r.all_awake_visits = parse_double(f[7], line_no, kColumns[7]);
    r.lb = parse_double(f[8], line_no, kColumns[8]);
    r.threshold = parse_double(f[9], line_no, kColumns[9]);
    rows.push_back(r);
  }
  if (rows.empty()) throw CsvError(line_no, "no data rows");
  return rows;
}

}  // namespace frogsim::cli
