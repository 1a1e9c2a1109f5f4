// extern-C surface of libpentagram. Exceptions stop here and become status
// codes plus a thread-local error message.

#include "pentagram/pentagram.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "core/config_io.hpp"
#include "core/harness.hpp"
#include "core/svg.hpp"

using namespace pentagram;

struct pentagram_config {
  ConfigDocument doc;
};

struct pentagram_report {
  std::string json;
  std::string summary;
  int exit_code = 0;
};

namespace {

thread_local std::string g_last_error;

pentagram_status fail(pentagram_status s, const std::string& message) {
  g_last_error = message;
  return s;
}

template <class Fn>
pentagram_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    return fail(PENTAGRAM_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PENTAGRAM_ERR_USAGE, e.what());
  } catch (const GeomError& e) {
    return fail(PENTAGRAM_ERR_DEGENERATE, e.what());
  } catch (const std::exception& e) {
    return fail(PENTAGRAM_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pentagram_status make_suite_options(const pentagram_verify_options* options, SuiteOptions& opt,
                                    Theorem& theorem) {
  if (options == nullptr || options->theorem == nullptr) {
    return fail(PENTAGRAM_ERR_USAGE, "missing verify options or theorem name");
  }
  std::optional<Theorem> t = theorem_from_name(options->theorem);
  if (!t) return fail(PENTAGRAM_ERR_USAGE, std::string("unknown theorem '") + options->theorem + "'");
  theorem = *t;
  opt.theorem = *t;
  std::string mode = options->mode ? options->mode : "exact";
  if (mode == "exact") {
    opt.mode = Mode{true, 0};
  } else if (mode == "float") {
    unsigned defaults = *t == Theorem::FiveCirclesChain ? 256u : 53u;
    opt.mode = Mode{false, options->bits > 0 ? static_cast<unsigned>(options->bits) : defaults};
  } else {
    return fail(PENTAGRAM_ERR_USAGE, "mode must be 'exact' or 'float'");
  }
  opt.generator.seed = options->seed;
  if (options->trials < 1) return fail(PENTAGRAM_ERR_USAGE, "trials must be >= 1");
  opt.trials = options->trials;
  if (options->tolerance > 0) opt.rel_pass_override = options->tolerance;
  opt.workers = options->workers;
  return PENTAGRAM_OK;
}

pentagram_report* report_from_suite(const SuiteReport& suite) {
  auto* rep = new pentagram_report;
  rep->json = to_json(suite).dump(2) + "\n";
  rep->summary = summary(suite);
  rep->exit_code = suite.exit_code();
  return rep;
}

}  // namespace

extern "C" {

const char* pentagram_version(void) { return "1.0.0"; }

const char* pentagram_status_name(pentagram_status status) {
  switch (status) {
    case PENTAGRAM_OK: return "ok";
    case PENTAGRAM_ERR_USAGE: return "usage error";
    case PENTAGRAM_ERR_PARSE: return "parse error";
    case PENTAGRAM_ERR_DEGENERATE: return "degenerate configuration";
    case PENTAGRAM_ERR_NO_CONVERGENCE: return "no convergence";
    case PENTAGRAM_ERR_IO: return "io error";
    case PENTAGRAM_ERR_INTERNAL: return "internal error";
  }
  return "?";
}

const char* pentagram_last_error(void) { return g_last_error.c_str(); }

void pentagram_free(char* text) { std::free(text); }

pentagram_status pentagram_config_parse(const char* json_text, pentagram_config** out) {
  if (json_text == nullptr || out == nullptr) {
    return fail(PENTAGRAM_ERR_USAGE, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    auto* cfg = new pentagram_config{parse_config(json_text)};
    *out = cfg;
    return PENTAGRAM_OK;
  });
}

pentagram_status pentagram_config_read(const char* path, pentagram_config** out) {
  if (path == nullptr || out == nullptr) return fail(PENTAGRAM_ERR_USAGE, "null argument");
  *out = nullptr;
  std::ifstream in(path);
  if (!in) return fail(PENTAGRAM_ERR_IO, std::string("cannot read '") + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return pentagram_config_parse(buf.str().c_str(), out);
}

char* pentagram_config_emit(const pentagram_config* config) {
  if (config == nullptr) return nullptr;
  return dup_string(emit_config(config->doc));
}

void pentagram_config_free(pentagram_config* config) { delete config; }

pentagram_status pentagram_verify_suite(const pentagram_verify_options* options,
                                        pentagram_report** out) {
  if (out == nullptr) return fail(PENTAGRAM_ERR_USAGE, "null report sink");
  *out = nullptr;
  SuiteOptions opt;
  Theorem theorem;
  if (pentagram_status s = make_suite_options(options, opt, theorem); s != PENTAGRAM_OK) return s;
  return guarded([&] {
    SuiteReport suite = run_suite(opt);
    *out = report_from_suite(suite);
    return PENTAGRAM_OK;
  });
}

pentagram_status pentagram_verify_config(const pentagram_verify_options* options,
                                         const pentagram_config* config, pentagram_report** out) {
  if (out == nullptr || config == nullptr) return fail(PENTAGRAM_ERR_USAGE, "null argument");
  *out = nullptr;
  SuiteOptions opt;
  Theorem theorem;
  if (pentagram_status s = make_suite_options(options, opt, theorem); s != PENTAGRAM_OK) return s;
  opt.input_label = "document";
  return guarded([&] {
    opt.validate();
    SuiteReport suite;
    if (opt.mode.exact) {
      Penta<Rat> A = config->doc.rational_points();
      std::optional<Penta<Rat>> B = config->doc.rational_derived("B");
      suite = check_single_exact(theorem, A, B, opt);
    } else {
      Penta<double> A = config->doc.double_points();
      std::optional<Penta<double>> B = config->doc.double_derived("B");
      suite = check_single_float(theorem, A, B, opt);
    }
    *out = report_from_suite(suite);
    return PENTAGRAM_OK;
  });
}

const char* pentagram_report_json(const pentagram_report* report) {
  return report ? report->json.c_str() : "";
}

const char* pentagram_report_summary(const pentagram_report* report) {
  return report ? report->summary.c_str() : "";
}

int pentagram_report_exit_code(const pentagram_report* report) {
  return report ? report->exit_code : 3;
}

void pentagram_report_free(pentagram_report* report) { delete report; }

pentagram_status pentagram_solve(int count, uint64_t seed, int max_iterations,
                                 pentagram_report** out) {
  if (out == nullptr) return fail(PENTAGRAM_ERR_USAGE, "null report sink");
  *out = nullptr;
  if (count < 1) return fail(PENTAGRAM_ERR_USAGE, "count must be >= 1");
  return guarded([&] {
    std::vector<ConfigDocument> configs;
    std::ostringstream sum;
    int failures = 0;
    for (int i = 0; i < count; ++i) {
      SolveOptions sopt;
      sopt.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
      if (max_iterations > 0) sopt.max_iterations = max_iterations;
      SolveResult solved = solve_concyclic_centers(sopt);
      ConfigDocument doc = document_from_points(solved.pentagon);
      doc.solve = solved.report;
      configs.push_back(std::move(doc));
      sum << "start " << i << ": " << (solved.report.converged ? "converged" : "NoConvergence")
          << " residual=" << solved.report.final_residual
          << " iterations=" << solved.report.iterations << "\n";
      if (!solved.report.converged) ++failures;
    }
    auto* rep = new pentagram_report;
    rep->json = emit_solved_batch(seed, configs);
    rep->summary = sum.str();
    rep->exit_code = failures == 0 ? 0 : 1;
    *out = rep;
    if (failures > 0) {
      g_last_error = std::to_string(failures) + " of " + std::to_string(count) +
                     " starts did not converge";
      return PENTAGRAM_ERR_NO_CONVERGENCE;
    }
    return PENTAGRAM_OK;
  });
}

pentagram_status pentagram_render_svg(const pentagram_config* config, const char* show_csv,
                                      char** svg_out) {
  if (config == nullptr || svg_out == nullptr) return fail(PENTAGRAM_ERR_USAGE, "null argument");
  *svg_out = nullptr;
  return guarded([&] {
    std::vector<std::string> show = parse_show_list(show_csv ? show_csv : "");
    RenderResult r = render_svg(config->doc, show);
    *svg_out = dup_string(r.svg);
    if (r.partial) {
      std::string skipped;
      for (const auto& s : r.skipped) skipped += (skipped.empty() ? "" : ", ") + s;
      g_last_error = "degenerate configuration; skipped layers: " + skipped;
      return PENTAGRAM_ERR_DEGENERATE;
    }
    return PENTAGRAM_OK;
  });
}

}  // extern "C"
