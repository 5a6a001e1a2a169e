// Acceptance battery: runs the full experiment report and grades it against
// the pinned criteria, one line per criterion. Exit status 0 only when every
// criterion holds.
//
//   acceptance [--quick] [--seed N] [--out DIR]

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "declab/experiments.hpp"

using namespace declab;

namespace {

struct Criterion {
  int index;
  std::string name;
  bool pass;
  std::string detail;
};

const Assertion* need(const Report& rep, const std::string& suite,
                      const std::string& id) {
  const SuiteResult* s = rep.find_suite(suite);
  if (!s) return nullptr;
  return s->find(id);
}

bool all_pass(const Report& rep, const std::string& suite,
              const std::vector<std::string>& ids, double* seconds) {
  *seconds = 0.0;
  for (const auto& id : ids) {
    const Assertion* a = need(rep, suite, id);
    if (!a || !a->pass) return false;
    *seconds += a->seconds;
  }
  return true;
}

bool suite_pass(const Report& rep, const std::string& suite, double* seconds) {
  const SuiteResult* s = rep.find_suite(suite);
  if (!s) return false;
  *seconds = s->wall_seconds;
  return s->passed();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  ExpOptions opts;
  std::string out_dir;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0)
      opts.quick = true;
    else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    else if (std::strcmp(argv[i], "--out") == 0 && i + 1 < argc)
      out_dir = argv[++i];
    else {
      std::fprintf(stderr, "usage: acceptance [--quick] [--seed N] [--out DIR]\n");
      return 2;
    }
  }

  std::printf("running the %s battery (seed %llu)...\n",
              opts.quick ? "quick" : "full",
              static_cast<unsigned long long>(opts.seed));
  std::fflush(stdout);

  Report rep = run_report(opts);
  if (!out_dir.empty()) write_report_files(rep, opts, out_dir);

  std::vector<Criterion> crits;
  double secs = 0.0;

  {
    bool ok = suite_pass(rep, "unitary-row", &secs);
    bool timed = secs < 10.0;
    crits.push_back({1, "unitary-row dec norm equals n",
                     ok && timed,
                     "values at n=1,2,3; " + fmt(secs) + " s (budget 10 s)"});
  }
  {
    bool ok = all_pass(rep, "dec-axioms",
                       {"dec-axioms.transpose", "dec-axioms.cb-below-dec"}, &secs);
    bool timed = secs < 60.0;
    crits.push_back({2, "transpose dec = cb = n; cb below dec on random maps",
                     ok && timed, fmt(secs) + " s (budget 60 s)"});
  }
  {
    bool ok = all_pass(rep, "dec-axioms",
                       {"dec-axioms.homogeneity", "dec-axioms.triangle",
                        "dec-axioms.composition", "dec-axioms.adjoint",
                        "dec-axioms.opposite", "dec-axioms.tilde"},
                       &secs);
    bool timed = secs < 300.0;
    crits.push_back({3, "decomposable norm axioms", ok && timed,
                     fmt(secs) + " s (budget 300 s)"});
  }
  {
    bool ok = all_pass(rep, "dec-axioms", {"dec-axioms.selfadjoint-two-programs"}, &secs);
    crits.push_back({4, "two selfadjoint programs agree", ok, ""});
  }
  {
    bool ok = suite_pass(rep, "projections", &secs);
    crits.push_back({5, "projections: idempotent, CP- and cb-preserving", ok, ""});
  }
  {
    bool ok = suite_pass(rep, "cocycle", &secs);
    crits.push_back({6, "cocycle invariance of CP and cb", ok, ""});
  }
  {
    bool ok = all_pass(rep, "schur-dec", {"schur-dec.identity"}, &secs);
    crits.push_back({7, "Schur dec norm equals the Haagerup program", ok, ""});
  }
  {
    bool ok = suite_pass(rep, "modulus", &secs);
    crits.push_back({8, "modulus block maps are CP", ok, ""});
  }
  {
    bool ok = all_pass(rep, "schur-dec",
                       {"schur-dec.amplified-below-dec", "schur-dec.p2-exact"}, &secs);
    crits.push_back({9, "amplified lower bounds consistent with dec", ok, ""});
  }
  {
    bool ok = suite_pass(rep, "property-p", &secs);
    crits.push_back({10, "property (P) witnesses exist", ok, ""});
  }
  {
    bool ok = suite_pass(rep, "matsaev", &secs);
    crits.push_back({11, "polynomial bound at p = 2", ok, ""});
  }
  {
    bool ok = suite_pass(rep, "truncation", &secs);
    bool full_time = rep.wall_seconds < 1200.0;
    double quick_secs = 0.0;
    if (!opts.quick) {
      ExpOptions q = opts;
      q.quick = true;
      Report qrep = run_report(q);
      quick_secs = qrep.wall_seconds;
    } else {
      quick_secs = rep.wall_seconds;
    }
    bool quick_time = quick_secs < 60.0;
    crits.push_back({12, "truncation growth; battery runtimes",
                     ok && full_time && quick_time,
                     "battery " + fmt(rep.wall_seconds) + " s (budget 1200), quick " +
                         fmt(quick_secs) + " s (budget 60)"});
  }

  bool all_ok = true;
  for (const auto& c : crits) {
    std::printf("%s  criterion-%02d  %s%s%s\n", c.pass ? "PASS" : "FAIL", c.index,
                c.name.c_str(), c.detail.empty() ? "" : "  -- ", c.detail.c_str());
    if (!c.pass) all_ok = false;
  }
  std::printf("%s (%d/%d criteria, %.1f s total)\n", all_ok ? "ACCEPTED" : "REJECTED",
              static_cast<int>(std::count_if(crits.begin(), crits.end(),
                                             [](const Criterion& c) { return c.pass; })),
              static_cast<int>(crits.size()), rep.wall_seconds);
  if (!all_ok) {
    // surface the failing assertions with their witnesses
    for (const auto& s : rep.suites)
      for (const auto& a : s.assertions)
        if (!a.pass)
          std::printf("  failed: %s value=%.12g bound=%.12g %s\n", a.id.c_str(),
                      a.value, a.bound, a.detail.c_str());
  }
  return all_ok ? 0 : 1;
}
