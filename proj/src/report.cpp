#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "mobiprod/errors.hpp"
#include "mobiprod/harness.hpp"

namespace mobiprod {

namespace {

constexpr const char* kReportHeader =
    "instance_id,policy,theta,mode,mean_cost,savings_vs_dnf_pct,"
    "sec_per_trajectory";
constexpr const char* kKeyColumns = "instance_id,policy,theta,mode,";
constexpr const char* kTrajectoryHeader =
    "instance_id,policy,theta,mode,trajectory,seed,discounted_cost,"
    "undiscounted_cost,seconds";

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("csv: bad number '" + s + "' in " + what);
  }
}

// Data lines of a CSV whose header starts with `expected`.
std::vector<std::vector<std::string>> read_rows(const std::string& text,
                                                const std::string& expected,
                                                std::size_t min_fields) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind(expected, 0) != 0)
    throw ValidationError("csv: unexpected header '" + line + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto f = split(line);
    if (f.size() < min_fields)
      throw ValidationError("csv: short line '" + line + "'");
    rows.push_back(std::move(f));
  }
  return rows;
}

}  // namespace

void fill_savings(ExperimentReport& report) {
  for (ReportRow& row : report.rows) {
    const ReportRow* exact = nullptr;
    const ReportRow* fallback = nullptr;
    for (const ReportRow& base : report.rows) {
      if (base.policy != PolicyId::kDNF || base.instance_id != row.instance_id ||
          base.mode != row.mode)
        continue;
      if (base.theta == row.theta && exact == nullptr) exact = &base;
      if (fallback == nullptr) fallback = &base;
    }
    const ReportRow* base = exact != nullptr ? exact : fallback;
    row.savings_vs_dnf =
        base != nullptr ? savings(row.mean_cost, base->mean_cost) : std::nullopt;
  }
}

std::string report_csv(const ExperimentReport& report) {
  std::string out = std::string(kReportHeader) + "\n";
  for (const ReportRow& r : report.rows) {
    out += r.instance_id + "," + to_string(r.policy) + "," + fmt("%.6g", r.theta) +
           "," + to_string(r.mode) + "," + fmt("%.6f", r.mean_cost) + "," +
           (r.savings_vs_dnf ? fmt("%.4f", *r.savings_vs_dnf) : std::string()) +
           "," + fmt("%.6f", r.sec_per_trajectory) + "\n";
  }
  return out;
}

ExperimentReport parse_report_csv(const std::string& text) {
  ExperimentReport report;
  for (const auto& f : read_rows(text, kKeyColumns, 7)) {
    ReportRow r;
    r.instance_id = f[0];
    r.policy = parse_policy(f[1]);
    r.theta = to_double(f[2], "theta");
    r.mode = parse_mode(f[3]);
    r.mean_cost = to_double(f[4], "mean_cost");
    if (!f[5].empty()) r.savings_vs_dnf = to_double(f[5], "savings_vs_dnf_pct");
    r.sec_per_trajectory = to_double(f[6], "sec_per_trajectory");
    report.rows.push_back(std::move(r));
  }
  return report;
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  std::string out = std::string(kTrajectoryHeader) + "\n";
  for (const TrajectoryRow& r : rows) {
    out += r.instance_id + "," + to_string(r.policy) + "," + fmt("%.6g", r.theta) +
           "," + to_string(r.mode) + "," + std::to_string(r.trajectory) + "," +
           std::to_string(r.seed) + "," + fmt("%.9f", r.discounted_cost) + "," +
           fmt("%.9f", r.undiscounted_cost) + "," + fmt("%.6f", r.seconds) + "\n";
  }
  return out;
}

std::vector<TrajectoryRow> parse_trajectory_csv(const std::string& text) {
  std::vector<TrajectoryRow> rows;
  for (const auto& f : read_rows(text, kKeyColumns, 9)) {
    TrajectoryRow r;
    r.instance_id = f[0];
    r.policy = parse_policy(f[1]);
    r.theta = to_double(f[2], "theta");
    r.mode = parse_mode(f[3]);
    r.trajectory = static_cast<int>(to_double(f[4], "trajectory"));
    try {
      r.seed = std::stoull(f[5]);
    } catch (const std::exception&) {
      throw ValidationError("csv: bad seed '" + f[5] + "'");
    }
    r.discounted_cost = to_double(f[6], "discounted_cost");
    r.undiscounted_cost = to_double(f[7], "undiscounted_cost");
    r.seconds = to_double(f[8], "seconds");
    rows.push_back(std::move(r));
  }
  return rows;
}

ExperimentReport aggregate_trajectories(const std::vector<TrajectoryRow>& rows) {
  using Key = std::tuple<std::string, int, double, int>;
  std::map<Key, std::size_t> index;
  ExperimentReport report;
  std::vector<double> seconds;
  for (const TrajectoryRow& t : rows) {
    const Key key{t.instance_id, static_cast<int>(t.policy), t.theta,
                  static_cast<int>(t.mode)};
    auto [it, fresh] = index.emplace(key, report.rows.size());
    if (fresh) {
      ReportRow r;
      r.instance_id = t.instance_id;
      r.policy = t.policy;
      r.theta = t.theta;
      r.mode = t.mode;
      report.rows.push_back(r);
      seconds.push_back(0.0);
    }
    ReportRow& r = report.rows[it->second];
    r.trajectories += 1;
    r.mean_cost += t.discounted_cost;
    r.mean_undiscounted += t.undiscounted_cost;
    seconds[it->second] += t.seconds;
  }
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    ReportRow& r = report.rows[i];
    r.mean_cost /= r.trajectories;
    r.mean_undiscounted /= r.trajectories;
    r.sec_per_trajectory = seconds[i] / r.trajectories;
  }
  fill_savings(report);
  return report;
}

}  // namespace mobiprod
