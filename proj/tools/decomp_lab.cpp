// decomp-lab: command-line front end. Talks to the core exclusively through
// the C API in declab.h.
//
// Exit codes: 0 all pass, 1 assertion failure, 2 input error, 3 solver
// failure.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "declab.h"

namespace {

int exit_code_for(declab_status st) {
  switch (st) {
    case DECLAB_OK:
      return 0;
    case DECLAB_ERR_ASSERTION:
      return 1;
    case DECLAB_ERR_SOLVER:
    case DECLAB_ERR_NO_CONVERGENCE:
      return 3;
    default:
      return 2;  // input / usage problems
  }
}

struct Flags {
  declab_options opts;
  std::string out_dir;
  std::string p_text = "inf";
};

void add_common_flags(CLI::App* cmd, Flags* f) {
  cmd->add_option("--seed", f->opts.seed, "seed for all randomness");
  cmd->add_option("--trials", f->opts.trials, "trial count override (0 = default)");
  cmd->add_option("--restarts", f->opts.restarts, "ascent restarts");
  cmd->add_option("--sdp-tol", f->opts.sdp_tol, "solver gap tolerance");
  cmd->add_option("--sdp-maxiter", f->opts.sdp_maxiter, "solver iteration cap");
  cmd->add_option("--tol-scale", f->opts.tol_scale, "scale on assertion tolerances");
  cmd->add_flag("--quick", f->opts.quick, "reduced battery");
  cmd->add_option("--out", f->out_dir, "output directory");
  cmd->add_option("--p", f->p_text, "exponent p (number or 'inf')");
}

bool parse_p(Flags* f) {
  if (f->p_text == "inf" || f->p_text == "Inf" || f->p_text == "INF") {
    f->opts.p_is_inf = 1;
    return true;
  }
  try {
    f->opts.p_value = std::stod(f->p_text);
    f->opts.p_is_inf = 0;
  } catch (...) {
    return false;
  }
  return f->opts.p_value >= 1.0;
}

int report_outcome(declab_status st, declab_report* rep) {
  if (st != DECLAB_OK) {
    std::fprintf(stderr, "error: %s\n", declab_last_error());
    return exit_code_for(st);
  }
  std::printf("%s\n", declab_report_json(rep));
  int ok = declab_report_passed(rep);
  declab_report_free(rep);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decomp-lab: norms of maps on matrix and finite group algebras"};
  app.require_subcommand(1);

  Flags f;
  declab_options_init(&f.opts);

  std::string map_file;
  auto* dec = app.add_subcommand("dec-norm", "decomposable and cb norm of a map file");
  dec->add_option("map", map_file, "superoperator JSON file")->required();
  add_common_flags(dec, &f);

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run one identity-catalog suite");
  verify->add_option("suite", suite,
                     "one of: dec-axioms, projections, cocycle, schur-dec, modulus, "
                     "property-p, matsaev, truncation, unitary-row")
      ->required();
  add_common_flags(verify, &f);

  auto* report = app.add_subcommand("report", "run the full battery and write files");
  add_common_flags(report, &f);

  CLI11_PARSE(app, argc, argv);

  if (!parse_p(&f)) {
    std::fprintf(stderr, "error: invalid exponent '%s'\n", f.p_text.c_str());
    return 2;
  }

  if (dec->parsed()) {
    declab_report* rep = nullptr;
    declab_status st = declab_dec_norm_report(
        map_file.c_str(), &f.opts, f.out_dir.empty() ? nullptr : f.out_dir.c_str(),
        &rep);
    return report_outcome(st, rep);
  }
  if (verify->parsed()) {
    declab_report* rep = nullptr;
    declab_status st = declab_run_suite(suite.c_str(), &f.opts, &rep);
    return report_outcome(st, rep);
  }
  if (report->parsed()) {
    declab_report* rep = nullptr;
    const char* out = f.out_dir.empty() ? "." : f.out_dir.c_str();
    declab_status st = declab_run_report(&f.opts, out, &rep);
    return report_outcome(st, rep);
  }
  return 2;
}
