#ifndef DECLAB_EXPERIMENTS_HPP
#define DECLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "declab/pnorm.hpp"

namespace declab {

struct ExpOptions {
  std::uint64_t seed = 42;
  int trials = 0;       // 0 = per-suite default
  int restarts = 8;     // ascent restarts inside suites
  double sdp_tol = 1e-8;
  int sdp_maxiter = 500;
  double tol_scale = 1.0;
  bool quick = false;
  std::string out_dir;
};

struct Assertion {
  std::string id;      // stable identifier for traceability
  bool pass = false;
  double value = 0.0;  // measured quantity
  double bound = 0.0;  // limit or expected value it is held against
  std::string detail;
  double seconds = 0.0;
};

struct SuiteResult {
  std::string suite;
  std::vector<Assertion> assertions;
  double wall_seconds = 0.0;
  bool passed() const {
    for (const auto& a : assertions)
      if (!a.pass) return false;
    return true;
  }
  const Assertion* find(const std::string& id) const {
    for (const auto& a : assertions)
      if (a.id == id) return &a;
    return nullptr;
  }
};

struct MatsaevRow {
  int pair_index = 0;
  std::string group;
  int degree = 0;
  double lhs_d1 = 0.0, lhs_d2 = 0.0, rhs_circle = 0.0, rhs_shift = 0.0;
  double margin = 0.0;
  bool violated = false;
};

struct Report {
  std::vector<SuiteResult> suites;
  std::vector<TruncationRow> truncation_table;
  std::vector<MatsaevRow> matsaev_table;
  double wall_seconds = 0.0;
  bool passed() const {
    for (const auto& s : suites)
      if (!s.passed()) return false;
    return true;
  }
  const SuiteResult* find_suite(const std::string& name) const {
    for (const auto& s : suites)
      if (s.suite == name) return &s;
    return nullptr;
  }
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const ExpOptions& opts);

// Runs every suite and collects the CSV tables.
Report run_report(const ExpOptions& opts);

std::string suite_to_json(const SuiteResult& r, const ExpOptions& opts);
std::string report_to_json(const Report& r, const ExpOptions& opts);
std::string truncation_csv(const Report& r);
std::string matsaev_csv(const Report& r);

// Writes report.json, truncation.csv, matsaev.csv into out_dir.
void write_report_files(const Report& r, const ExpOptions& opts,
                        const std::string& out_dir);

}  // namespace declab

#endif
