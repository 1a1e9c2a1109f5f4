// pentagram CLI: verify theorem suites, solve for concyclic-center
// configurations, and render SVG figures. Talks to libpentagram through the
// C API only.
//
// Exit codes: 0 all assertions pass, 1 any failure, 2 only degenerate or
// indeterminate issues, 3 usage error.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "pentagram/pentagram.h"

namespace {

struct ReportDeleter {
  void operator()(pentagram_report* r) const { pentagram_report_free(r); }
};
struct ConfigDeleter {
  void operator()(pentagram_config* c) const { pentagram_config_free(c); }
};
using ReportPtr = std::unique_ptr<pentagram_report, ReportDeleter>;
using ConfigPtr = std::unique_ptr<pentagram_config, ConfigDeleter>;

int complain(pentagram_status status) {
  std::cerr << "error (" << pentagram_status_name(status) << "): " << pentagram_last_error()
            << "\n";
  switch (status) {
    case PENTAGRAM_ERR_USAGE:
    case PENTAGRAM_ERR_PARSE:
    case PENTAGRAM_ERR_IO:
      return 3;
    case PENTAGRAM_ERR_DEGENERATE:
      return 2;
    default:
      return 1;
  }
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pentagram: verification engine for pentagon/pentagram incidence theorems"};
  app.set_version_flag("--version", std::string(pentagram_version()));
  app.require_subcommand(1);

  // verify
  std::string theorem, mode = "exact", json_path, input_path;
  int bits = 0, trials = 1;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  CLI::App* verify = app.add_subcommand("verify", "run a theorem suite or check one configuration");
  verify->add_option("--theorem", theorem,
                     "miquel|takada|eleven|dual|collinear-b|collinear-a|five-circles-chain")
      ->required();
  verify->add_option("--mode", mode, "exact|float (default exact)");
  verify->add_option("--bits", bits, "float mantissa bits (default 53; chain default 256)");
  verify->add_option("--trials", trials, "seeded trials (default 1)");
  verify->add_option("--seed", seed, "suite seed (default 0)");
  verify->add_option("--tolerance", tolerance, "rel_pass override");
  verify->add_option("--json", json_path, "write the aggregate JSON report here");
  verify->add_option("--input", input_path, "check this configuration document instead");

  // solve
  int count = 1, max_iter = 0;
  std::uint64_t solve_seed = 0;
  std::string out_path;
  CLI::App* solve = app.add_subcommand("solve", "find pentagons with concyclic Miquel centers");
  solve->add_option("--count", count, "configurations to solve (default 1)");
  solve->add_option("--seed", solve_seed, "seed (default 0)");
  solve->add_option("--max-iter", max_iter, "iteration cap (default 200)");
  solve->add_option("--out", out_path, "write the solved-batch JSON here");

  // render
  std::string render_in, render_out, show;
  CLI::App* render = app.add_subcommand("render", "render a configuration to SVG");
  render->add_option("--input", render_in, "configuration document")->required();
  render->add_option("--out", render_out, "output SVG path")->required();
  render->add_option("--show", show, "comma list of A,B,C,K,L,D,E,O,J,X,circles,klines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help/--version
    std::cerr << e.what() << "\n";
    return 3;
  }

  if (verify->parsed()) {
    pentagram_verify_options opts{};
    opts.theorem = theorem.c_str();
    opts.mode = mode.c_str();
    opts.bits = bits;
    opts.seed = seed;
    opts.trials = trials;
    opts.tolerance = tolerance;

    pentagram_report* raw = nullptr;
    pentagram_status status;
    if (!input_path.empty()) {
      pentagram_config* cfg_raw = nullptr;
      status = pentagram_config_read(input_path.c_str(), &cfg_raw);
      if (status != PENTAGRAM_OK) return complain(status);
      ConfigPtr cfg(cfg_raw);
      status = pentagram_verify_config(&opts, cfg.get(), &raw);
    } else {
      status = pentagram_verify_suite(&opts, &raw);
    }
    if (status != PENTAGRAM_OK) return complain(status);
    ReportPtr report(raw);
    std::cout << pentagram_report_summary(report.get());
    if (!json_path.empty() && !write_file(json_path, pentagram_report_json(report.get()))) {
      std::cerr << "error: cannot write '" << json_path << "'\n";
      return 3;
    }
    return pentagram_report_exit_code(report.get());
  }

  if (solve->parsed()) {
    pentagram_report* raw = nullptr;
    pentagram_status status = pentagram_solve(count, solve_seed, max_iter, &raw);
    if (status != PENTAGRAM_OK && status != PENTAGRAM_ERR_NO_CONVERGENCE) {
      return complain(status);
    }
    ReportPtr report(raw);
    std::cout << pentagram_report_summary(report.get());
    if (status == PENTAGRAM_ERR_NO_CONVERGENCE) {
      std::cerr << "error (" << pentagram_status_name(status) << "): " << pentagram_last_error()
                << "\n";
    }
    if (!out_path.empty() && !write_file(out_path, pentagram_report_json(report.get()))) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 3;
    }
    return pentagram_report_exit_code(report.get());
  }

  if (render->parsed()) {
    pentagram_config* cfg_raw = nullptr;
    pentagram_status status = pentagram_config_read(render_in.c_str(), &cfg_raw);
    if (status != PENTAGRAM_OK) return complain(status);
    ConfigPtr cfg(cfg_raw);
    char* svg = nullptr;
    status = pentagram_render_svg(cfg.get(), show.c_str(), &svg);
    if (status != PENTAGRAM_OK && status != PENTAGRAM_ERR_DEGENERATE) return complain(status);
    bool ok = svg != nullptr && write_file(render_out, svg);
    pentagram_free(svg);
    if (!ok) {
      std::cerr << "error: cannot write '" << render_out << "'\n";
      return 3;
    }
    if (status == PENTAGRAM_ERR_DEGENERATE) {
      std::cerr << "warning: " << pentagram_last_error() << "\n";
      return 2;
    }
    return 0;
  }

  return 3;
}
