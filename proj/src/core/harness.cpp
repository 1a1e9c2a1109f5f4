#include "harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

namespace pentagram {

const char* theorem_name(Theorem t) {
  switch (t) {
    case Theorem::Miquel: return "miquel";
    case Theorem::Takada: return "takada";
    case Theorem::FiveCircles: return "five-circles";
    case Theorem::Eleven: return "eleven";
    case Theorem::CollinearB: return "collinear-b";
    case Theorem::CollinearA: return "collinear-a";
    case Theorem::FiveCirclesChain: return "five-circles-chain";
    case Theorem::Dual: return "dual";
  }
  return "?";
}

std::optional<Theorem> theorem_from_name(const std::string& name) {
  for (Theorem t : {Theorem::Miquel, Theorem::Takada, Theorem::FiveCircles, Theorem::Eleven,
                    Theorem::CollinearB, Theorem::CollinearA, Theorem::FiveCirclesChain,
                    Theorem::Dual}) {
    if (name == theorem_name(t)) return t;
  }
  return std::nullopt;
}

Tolerance SuiteOptions::tolerance() const {
  Tolerance tol;
  if (mode.exact) {
    tol = Tolerance{};  // never consulted on exact paths
  } else if (theorem == Theorem::FiveCirclesChain) {
    // residuals are bounded by the 53-bit solver accuracy, not by the
    // evaluation precision
    tol = Tolerance{1e-9, 1e-6};
  } else {
    tol = Tolerance::for_bits(mode.bits);
  }
  if (rel_pass_override) tol.rel_pass = *rel_pass_override;
  tol.validate();
  return tol;
}

void SuiteOptions::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (theorem == Theorem::FiveCircles) {
    throw std::invalid_argument(
        "five-circles (T2) has no standalone suite; it is the circle-identity assertion of "
        "five-circles-chain");
  }
  if (theorem == Theorem::FiveCirclesChain && mode.exact) {
    throw std::invalid_argument(
        "five-circles-chain requires float mode: its hypothesis is only numerically "
        "constructible");
  }
  if (!mode.exact && (mode.bits < 24 || mode.bits > 4096)) {
    throw std::invalid_argument("float mode supports 24..4096 mantissa bits");
  }
  generator.validate();
  tolerance();
}

namespace {

template <class S>
Penta<S> convert_penta(const Penta<Rat>& A) {
  Penta<S> out;
  for (int i = 0; i < 5; ++i) {
    if constexpr (std::is_same_v<S, BigFloat>) {
      out[i] = Point<S>{bigfloat_from_rat(A[i].x), bigfloat_from_rat(A[i].y)};
    } else {
      out[i] = Point<S>{to_double(A[i].x), to_double(A[i].y)};
    }
  }
  return out;
}

Penta<BigFloat> lift_penta(const Penta<double>& A) {
  Penta<BigFloat> out;
  for (int i = 0; i < 5; ++i) out[i] = Point<BigFloat>{BigFloat(A[i].x), BigFloat(A[i].y)};
  return out;
}

template <class S>
TheoremReport dispatch_check(Theorem t, const Penta<S>& A, const std::optional<Penta<S>>& B,
                             const Tolerance& tol, const NegativeControl* nc) {
  switch (t) {
    case Theorem::Miquel: return check_miquel(A, tol, nc);
    case Theorem::Eleven: return check_eleven(A, tol, nc);
    case Theorem::Dual: return check_dual(A, tol, nc);
    case Theorem::Takada: return check_takada(A, tol, nc);
    case Theorem::CollinearB: return check_collinear_b(A, tol, B, nc);
    case Theorem::CollinearA: return check_collinear_a(A, tol, nc);
    default: throw std::invalid_argument("no direct checker for this theorem");
  }
}

}  // namespace

TheoremReport check_five_circles_chain(const Penta<double>& A_in, unsigned bits,
                                       const Tolerance& tol, const NegativeControl* control) {
  namespace cd = checker_detail;
  TheoremReport rep;
  rep.theorem = Theorem::FiveCirclesChain;
  rep.mode = Mode{false, bits};

  auto evaluate = [&](const Penta<double>& Ad) {
    BigFloat::set_working_precision(bits);
    using S = BigFloat;
    Penta<S> A = lift_penta(Ad);
    PentagramConfig<S> cfg = build_pentagram(A, tol);
    std::vector<AssertionResult> out;

    CircleCheck<S> k_check = concyclic_many<S>(cd::span5(cfg.K), tol);
    out.push_back(cd::named("K-concyclic", k_check));

    // circle through the C points; by the pentagram theorem they are
    // concyclic for any five points, so this is a witness, not an assertion
    Circle<S> c_circle = circumcircle(cfg.C[0], cfg.C[1], cfg.C[2]);
    S r_c = sqrt(c_circle.r2);
    double center_gap =
        to_double(sqrt(detail::dist2(k_check.witness.center, c_circle.center)) / r_c);
    double radius_gap = to_double(abs(k_check.witness.r2 - c_circle.r2) / c_circle.r2);
    double identity_res = std::max(center_gap, radius_gap);
    out.push_back(AssertionResult{"KC-circle-identity", tol.classify(identity_res), identity_res});

    KStarPoints<S> ks = k_star_points(cfg.K, tol);
    CircleCheck<S> e_check = concyclic_many<S>(cd::span5(ks.E), tol);
    out.push_back(cd::named("E-concyclic", e_check));

    double scale = std::sqrt(to_double(c_circle.r2));
    for (int i = 0; i < 5; ++i) {
      out.push_back(cd::named(
          "KLE-collinear-" + std::to_string(i + 1),
          cd::collinear_collapsed(cfg.K[i], cfg.L[i], ks.E[i], scale, tol)));
    }

    std::array<Line<S>, 5> lines = kl_lines(cfg);
    Point<S> X = concurrent_lines<S>(std::span<const Line<S>>(lines.data(), 5), kl_scale(cfg), tol)
                     .witness;
    Point<S> O = c_circle.center;
    Point<S> J = e_check.witness.center;
    out.push_back(cd::named("OJX-collinear", cd::collinear_collapsed(O, J, X, scale, tol)));
    return out;
  };

  try {
    if (control) {
      double delta = control->magnitude * diameter<double>(std::span<const Point<double>>(A_in.data(), 5));
      Penta<double> dummy = A_in;
      std::vector<AssertionResult> best;
      double best_res = -1.0;
      int best_k = -1;
      for (int k = 0; k < 5; ++k) {
        Penta<double> cand = perturb(dummy, k, delta);
        std::vector<AssertionResult> out;
        try {
          out = evaluate(cand);
        } catch (const GeomError&) {
          continue;
        }
        double worst = 0.0;
        for (const auto& a : out) worst = std::max(worst, a.residual);
        if (worst > best_res) {
          best_res = worst;
          best = std::move(out);
          best_k = k;
        }
      }
      if (best_k < 0) {
        throw GeomError(GeomErrc::DegenerateTriple, "every control perturbation degenerated");
      }
      rep.assertions = std::move(best);
      rep.note = "control: vertex " + std::to_string(best_k + 1) + " perturbed by " +
                 std::to_string(delta);
    } else {
      rep.assertions = evaluate(A_in);
    }
  } catch (const GeomError& e) {
    return cd::degenerate_report<BigFloat>(Theorem::FiveCirclesChain, e);
  }
  return rep;
}

TheoremReport run_trial(const SuiteOptions& options, std::uint64_t trial_index) {
  const Tolerance tol = options.tolerance();
  NegativeControl nc{options.control_magnitude};
  const NegativeControl* ncp = options.negative_control ? &nc : nullptr;
  if (!options.mode.exact) BigFloat::set_working_precision(options.mode.bits);
  auto t0 = std::chrono::steady_clock::now();

  auto finish = [&](TheoremReport rep) {
    rep.seed = derive_seed(options.generator.seed, trial_index);
    rep.trial = trial_index;
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  };

  try {
    if (options.theorem == Theorem::FiveCirclesChain) {
      SolveOptions sopt;
      sopt.seed = derive_seed(options.generator.seed, trial_index);
      SolveResult solved = solve_concyclic_centers(sopt);
      TheoremReport rep;
      if (!solved.report.converged) {
        rep.theorem = options.theorem;
        rep.mode = options.mode;
        rep.assertions.push_back({"construction", Verdict::Degenerate, 0.0});
        rep.note = "NoConvergence: solver residual " + std::to_string(solved.report.final_residual);
      } else {
        rep = check_five_circles_chain(solved.pentagon, options.mode.bits, tol, ncp);
      }
      rep.solve = solved.report;
      return finish(std::move(rep));
    }

    Penta<Rat> A;
    std::optional<Penta<Rat>> B;
    switch (options.theorem) {
      case Theorem::Miquel:
      case Theorem::Eleven:
      case Theorem::Dual:
        A = random_pentagon(options.generator, trial_index);
        break;
      case Theorem::Takada:
      case Theorem::CollinearA:
        A = cyclic_pentagon(options.generator, trial_index);
        break;
      case Theorem::CollinearB: {
        StarPentagon sp = pentagon_from_star(options.generator, trial_index);
        A = sp.A;
        B = sp.B;
        break;
      }
      default:
        throw std::invalid_argument("unsupported theorem in run_trial");
    }

    if (options.mode.exact) {
      return finish(dispatch_check<Rat>(options.theorem, A, B, tol, ncp));
    }
    Penta<BigFloat> Af = convert_penta<BigFloat>(A);
    std::optional<Penta<BigFloat>> Bf;
    if (B) Bf = convert_penta<BigFloat>(*B);
    return finish(dispatch_check<BigFloat>(options.theorem, Af, Bf, tol, ncp));
  } catch (const GeomError& e) {
    TheoremReport rep;
    rep.theorem = options.theorem;
    rep.mode = options.mode;
    rep.assertions.push_back({"construction", Verdict::Degenerate, 0.0});
    rep.note = e.what();
    return finish(std::move(rep));
  }
}

int resolve_workers(int requested, int trials) {
  int workers = requested;
  if (workers <= 0) {
    if (const char* env = std::getenv("PENTAGRAM_WORKERS")) {
      workers = std::atoi(env);
    }
  }
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 0) workers = 1;
  return std::max(1, std::min(workers, trials));
}

SuiteReport run_suite(const SuiteOptions& options) {
  options.validate();
  auto t0 = std::chrono::steady_clock::now();

  SuiteReport suite;
  suite.options = options;
  suite.tolerance = options.tolerance();
  suite.trials.resize(options.trials);

  int workers = resolve_workers(options.workers, options.trials);
  if (workers == 1) {
    for (int i = 0; i < options.trials; ++i) {
      suite.trials[i] = run_trial(options, static_cast<std::uint64_t>(i));
    }
  } else {
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= options.trials) return;
        try {
          suite.trials[i] = run_trial(options, static_cast<std::uint64_t>(i));
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  for (const auto& rep : suite.trials) {
    switch (rep.overall()) {
      case Verdict::Pass: ++suite.pass; break;
      case Verdict::Fail: ++suite.fail; break;
      case Verdict::Indeterminate: ++suite.indeterminate; break;
      case Verdict::Degenerate: ++suite.degenerate; break;
    }
    suite.max_residual = std::max(suite.max_residual, rep.max_residual());
  }
  suite.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return suite;
}

SuiteReport check_single_exact(Theorem t, const Penta<Rat>& A, const std::optional<Penta<Rat>>& B,
                               const SuiteOptions& options) {
  SuiteOptions opt = options;
  opt.theorem = t;
  opt.trials = 1;
  Tolerance tol = opt.tolerance();
  SuiteReport suite;
  suite.options = opt;
  suite.tolerance = tol;
  TheoremReport rep = dispatch_check<Rat>(t, A, B, tol, nullptr);
  rep.seed = opt.generator.seed;
  suite.trials.push_back(std::move(rep));
  SuiteReport& s = suite;
  switch (s.trials[0].overall()) {
    case Verdict::Pass: ++s.pass; break;
    case Verdict::Fail: ++s.fail; break;
    case Verdict::Indeterminate: ++s.indeterminate; break;
    case Verdict::Degenerate: ++s.degenerate; break;
  }
  s.max_residual = s.trials[0].max_residual();
  return suite;
}

SuiteReport check_single_float(Theorem t, const Penta<double>& A,
                               const std::optional<Penta<double>>& B,
                               const SuiteOptions& options) {
  SuiteOptions opt = options;
  opt.theorem = t;
  opt.trials = 1;
  Tolerance tol = opt.tolerance();
  BigFloat::set_working_precision(opt.mode.bits);
  SuiteReport suite;
  suite.options = opt;
  suite.tolerance = tol;
  TheoremReport rep;
  if (t == Theorem::FiveCirclesChain) {
    rep = check_five_circles_chain(A, opt.mode.bits, tol, nullptr);
  } else {
    std::optional<Penta<BigFloat>> Bf;
    if (B) Bf = lift_penta(*B);
    rep = dispatch_check<BigFloat>(t, lift_penta(A), Bf, tol, nullptr);
  }
  rep.seed = opt.generator.seed;
  suite.trials.push_back(std::move(rep));
  switch (suite.trials[0].overall()) {
    case Verdict::Pass: ++suite.pass; break;
    case Verdict::Fail: ++suite.fail; break;
    case Verdict::Indeterminate: ++suite.indeterminate; break;
    case Verdict::Degenerate: ++suite.degenerate; break;
  }
  suite.max_residual = suite.trials[0].max_residual();
  return suite;
}

ordered_json to_json(const SolveReport& rep) {
  ordered_json j;
  j["iterations"] = rep.iterations;
  j["converged"] = rep.converged;
  j["final_residual"] = rep.final_residual;
  j["step_norms"] = rep.step_norms;
  j["residual_history"] = rep.residual_history;
  return j;
}

ordered_json to_json(const TheoremReport& rep) {
  ordered_json j;
  j["trial"] = rep.trial;
  j["seed"] = rep.seed;
  j["verdict"] = verdict_name(rep.overall());
  ordered_json asserts = ordered_json::array();
  for (const auto& a : rep.assertions) {
    ordered_json aj;
    aj["name"] = a.name;
    aj["verdict"] = verdict_name(a.verdict);
    aj["residual"] = a.residual;
    asserts.push_back(std::move(aj));
  }
  j["assertions"] = std::move(asserts);
  if (!rep.note.empty()) j["note"] = rep.note;
  if (rep.solve) j["solve"] = to_json(*rep.solve);
  return j;
}

ordered_json to_json(const SuiteReport& rep) {
  const SuiteOptions& o = rep.options;
  ordered_json j;
  j["schema_version"] = "1";
  j["kind"] = "suite-report";
  j["theorem"] = theorem_name(o.theorem);
  j["mode"] = o.mode.to_string();
  if (!o.mode.exact) j["bits"] = o.mode.bits;
  j["seed"] = o.generator.seed;
  j["trials"] = o.trials;
  j["negative_control"] = o.negative_control;
  if (o.input_label.empty()) {
    ordered_json g;
    g["seed"] = o.generator.seed;
    g["coord_bound"] = o.generator.coord_bound;
    g["denom_bound"] = o.generator.denom_bound;
    g["convex_required"] = o.generator.convex_required;
    g["max_rejections"] = o.generator.max_rejections;
    j["generator"] = std::move(g);
  } else {
    j["input"] = o.input_label;
  }
  if (!o.mode.exact) {
    ordered_json t;
    t["rel_pass"] = rep.tolerance.rel_pass;
    t["rel_fail_floor"] = rep.tolerance.rel_fail_floor;
    j["tolerance"] = std::move(t);
  }
  ordered_json counts;
  counts["PASS"] = rep.pass;
  counts["FAIL"] = rep.fail;
  counts["INDETERMINATE"] = rep.indeterminate;
  counts["DEGENERATE"] = rep.degenerate;
  j["counts"] = std::move(counts);
  j["max_residual"] = rep.max_residual;
  j["verdict"] = verdict_name(rep.overall());
  ordered_json trials = ordered_json::array();
  for (const auto& t : rep.trials) trials.push_back(to_json(t));
  j["trial_reports"] = std::move(trials);
  return j;
}

std::string summary(const SuiteReport& rep) {
  const SuiteOptions& o = rep.options;
  std::ostringstream os;
  os << "theorem=" << theorem_name(o.theorem) << " mode=" << o.mode.to_string();
  if (!o.mode.exact) os << " bits=" << o.mode.bits;
  if (o.input_label.empty()) {
    os << " trials=" << o.trials << " seed=" << o.generator.seed;
  } else {
    os << " input=" << o.input_label;
  }
  if (o.negative_control) os << " negative-control";
  os << "\n";
  os << "  PASS=" << rep.pass << " FAIL=" << rep.fail << " INDETERMINATE=" << rep.indeterminate
     << " DEGENERATE=" << rep.degenerate << " max_residual=" << rep.max_residual << "\n";
  os << "  verdict: " << verdict_name(rep.overall());
  char buf[64];
  std::snprintf(buf, sizeof(buf), " (%.2fs)", rep.elapsed_seconds);
  os << buf << "\n";
  return os.str();
}

}  // namespace pentagram
