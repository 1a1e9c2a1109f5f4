#pragma once

// One checker per theorem. Each consumes an input pentagon, runs the
// relevant construction, and emits named assertions with verdicts and
// normalized residuals. Chain checkers re-verify upstream claims (the C
// concyclicity inside the collinearity theorems, for instance) so a single
// report localizes a failure.
//
// Negative controls perturb one vertex of the theorem-relevant point set by
// a magnitude relative to the configuration scale, choosing the vertex with
// the strongest response; for hypothesis-based theorems that breaks the
// hypothesis (DEGENERATE), for universally-true ones it breaks an assertion
// (FAIL). Either way no perturbed trial may pass.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "construct.hpp"
#include "generate.hpp"
#include "solve.hpp"

namespace pentagram {

enum class Theorem {
  Miquel,           // T1
  Takada,           // T1a
  FiveCircles,      // verified inside the chain suite, no standalone checker
  Eleven,           // T3
  CollinearB,       // T4
  CollinearA,       // T5
  FiveCirclesChain, // T6
  Dual,             // T7
};

const char* theorem_name(Theorem t);
std::optional<Theorem> theorem_from_name(const std::string& name);

struct AssertionResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  double residual = 0.0;
};

struct Mode {
  bool exact = true;
  unsigned bits = 53;  // float mode mantissa bits

  std::string to_string() const { return exact ? "exact" : "float"; }
};

struct TheoremReport {
  Theorem theorem = Theorem::Miquel;
  Mode mode;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::vector<AssertionResult> assertions;
  std::string note;  // degeneracy reason, control description
  std::optional<SolveReport> solve;
  double elapsed_seconds = 0.0;  // in-memory only, never serialized

  Verdict overall() const {
    bool any_fail = false, any_deg = false, any_ind = false;
    for (const auto& a : assertions) {
      any_fail |= a.verdict == Verdict::Fail;
      any_deg |= a.verdict == Verdict::Degenerate;
      any_ind |= a.verdict == Verdict::Indeterminate;
    }
    if (assertions.empty()) return Verdict::Degenerate;
    if (any_fail) return Verdict::Fail;
    if (any_deg) return Verdict::Degenerate;
    if (any_ind) return Verdict::Indeterminate;
    return Verdict::Pass;
  }

  double max_residual() const {
    double worst = 0.0;
    for (const auto& a : assertions) worst = std::max(worst, a.residual);
    return worst;
  }
};

struct NegativeControl {
  double magnitude = 1e-3;  // relative to the checked set's own scale
};

namespace checker_detail {

template <class S>
Mode mode_of() {
  if constexpr (is_exact_v<S>) {
    return Mode{true, 0};
  } else {
    return Mode{false, scalar_traits<S>::mantissa_bits()};
  }
}

template <class S>
TheoremReport degenerate_report(Theorem t, const GeomError& e) {
  TheoremReport rep;
  rep.theorem = t;
  rep.mode = mode_of<S>();
  rep.assertions.push_back({"construction", Verdict::Degenerate, 0.0});
  rep.note = e.what();
  return rep;
}

template <class S>
S scalar_delta(double magnitude) {
  if constexpr (is_exact_v<S>) {
    return rat_from_double(magnitude);
  } else {
    return S(magnitude);
  }
}

// Perturbs pts[k] for each k, evaluates, and keeps the strongest responder.
// `evaluate` returns the full assertion list for a candidate point set.
template <class S, class Eval>
std::vector<AssertionResult> strongest_control(const Penta<S>& pts, double delta,
                                               std::string& note, Eval&& evaluate) {
  std::vector<AssertionResult> best;
  double best_res = -1.0;
  int best_k = -1;
  for (int k = 0; k < 5; ++k) {
    Penta<S> tampered = perturb(pts, k, scalar_delta<S>(delta));
    std::vector<AssertionResult> out;
    try {
      out = evaluate(tampered);
    } catch (const GeomError&) {
      continue;  // tampering produced a degenerate construction; next vertex
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
  note = "control: vertex " + std::to_string(best_k + 1) + " perturbed by " +
         std::to_string(delta);
  return best;
}

// Control variant for hypothesis-based checkers: returns the tampered anchor
// set whose concyclicity residual responds the most; the caller then runs its
// normal (gated) path on it.
template <class S>
Penta<S> strongest_anchor_tamper(const Penta<S>& anchor, double magnitude, std::string& note,
                                 const Tolerance& tol) {
  Circle<S> w = circumcircle(anchor[0], anchor[1], anchor[2]);
  double delta = magnitude * std::sqrt(to_double(w.r2));
  Penta<S> best{};
  double best_res = -1.0;
  int best_k = -1;
  for (int k = 0; k < 5; ++k) {
    Penta<S> cand = perturb(anchor, k, scalar_delta<S>(delta));
    double res;
    try {
      res = concyclic_many<S>(std::span<const Point<S>>(cand.data(), 5), tol).residual;
    } catch (const GeomError&) {
      continue;
    }
    if (res > best_res) {
      best_res = res;
      best = cand;
      best_k = k;
    }
  }
  if (best_k < 0) {
    throw GeomError(GeomErrc::DegenerateTriple, "every control perturbation degenerated");
  }
  note = "control: vertex " + std::to_string(best_k + 1) + " perturbed by " +
         std::to_string(delta);
  return best;
}

// The duplicate-point convention extended to float mode: when the points sit
// within roundoff of each other (the regular pentagon's O = J = X), the
// collinearity statement holds in the degenerate limit and the normalized
// residual is pure noise.
template <class S>
Check collinear_collapsed(const Point<S>& p, const Point<S>& q, const Point<S>& r, double scale,
                          const Tolerance& tol) {
  if constexpr (!is_exact_v<S>) {
    double eps = detail::eps_degenerate<S>() * scale;
    double d_pq = to_double(detail::dist2(p, q));
    double d_pr = to_double(detail::dist2(p, r));
    double d_qr = to_double(detail::dist2(q, r));
    if (std::min({d_pq, d_pr, d_qr}) <= eps * eps) return Check{Verdict::Pass, 0.0};
  }
  return collinear3(p, q, r, tol);
}

inline AssertionResult named(const std::string& name, const Check& c) {
  return AssertionResult{name, c.verdict, c.residual};
}

template <class S>
std::span<const Point<S>> span5(const Penta<S>& p) {
  return std::span<const Point<S>>(p.data(), 5);
}

}  // namespace checker_detail

// Miquel pentagram: the five second points C of a pentagon's Miquel circles
// are concyclic.
template <class S>
TheoremReport check_miquel(const Penta<S>& A, const Tolerance& tol = {},
                           const NegativeControl* control = nullptr) {
  namespace cd = checker_detail;
  TheoremReport rep;
  rep.theorem = Theorem::Miquel;
  rep.mode = cd::mode_of<S>();
  try {
    PentagramConfig<S> cfg = build_pentagram(A, tol);
    auto evaluate = [&](const Penta<S>& C) {
      std::vector<AssertionResult> out;
      out.push_back(cd::named("C-concyclic", concyclic_many<S>(cd::span5(C), tol)));
      return out;
    };
    if (control) {
      Circle<S> w = circumcircle(cfg.C[0], cfg.C[1], cfg.C[2]);
      double delta = control->magnitude * std::sqrt(to_double(w.r2));
      rep.assertions = cd::strongest_control<S>(cfg.C, delta, rep.note, evaluate);
    } else {
      rep.assertions = evaluate(cfg.C);
    }
  } catch (const GeomError& e) {
    return cd::degenerate_report<S>(Theorem::Miquel, e);
  }
  return rep;
}

// Eleven circles: the five lines K_i L_i are concurrent.
template <class S>
TheoremReport check_eleven(const Penta<S>& A, const Tolerance& tol = {},
                           const NegativeControl* control = nullptr) {
  namespace cd = checker_detail;
  TheoremReport rep;
  rep.theorem = Theorem::Eleven;
  rep.mode = cd::mode_of<S>();
  try {
    PentagramConfig<S> cfg = build_pentagram(A, tol);
    double scale = kl_scale(cfg);
    auto evaluate = [&](const Penta<S>& L) {
      PentagramConfig<S> c2 = cfg;
      c2.L = L;
      std::array<Line<S>, 5> lines = kl_lines(c2);
      std::vector<AssertionResult> out;
      out.push_back(cd::named(
          "KL-concurrent",
          concurrent_lines<S>(std::span<const Line<S>>(lines.data(), 5), scale, tol)));
      return out;
    };
    if (control) {
      rep.assertions = cd::strongest_control<S>(cfg.L, control->magnitude * scale, rep.note, evaluate);
    } else {
      rep.assertions = evaluate(cfg.L);
    }
  } catch (const GeomError& e) {
    return cd::degenerate_report<S>(Theorem::Eleven, e);
  }
  return rep;
}

// Dual variant: each dual circle through (B_{i+1}, C_i, A_{i+1}) also passes
// through C_{i+2} and B_{i+4}, and the dual K'L' lines are concurrent.
template <class S>
TheoremReport check_dual(const Penta<S>& A, const Tolerance& tol = {},
                         const NegativeControl* control = nullptr) {
  namespace cd = checker_detail;
  TheoremReport rep;
  rep.theorem = Theorem::Dual;
  rep.mode = cd::mode_of<S>();
  try {
    PentagramConfig<S> cfg = build_pentagram(A, tol);
    auto evaluate = [&](const Penta<S>& C) {
      DualCenters<S> dual = dual_centers(cfg.A, cfg.B, C, tol);
      std::vector<AssertionResult> out;
      for (int i = 0; i < 5; ++i) {
        out.push_back(cd::named("five-point-circle-" + std::to_string(i + 1), dual.five_point[i]));
      }
      std::array<Line<S>, 5> lines;
      std::array<Point<S>, 10> anchors;
      for (int i = 0; i < 5; ++i) {
        if (dual.K2[i] == dual.L2[i]) {
          throw GeomError(GeomErrc::CoincidentCenters, "dual K and L centers coincide", i);
        }
        lines[i] = line_through(dual.K2[i], dual.L2[i]);
        anchors[i] = dual.K2[i];
        anchors[5 + i] = dual.L2[i];
      }
      out.push_back(cd::named(
          "dual-KL-concurrent",
          concurrent_lines<S>(std::span<const Line<S>>(lines.data(), 5),
                              diameter<S>(std::span<const Point<S>>(anchors.data(), 10)), tol)));
      return out;
    };
    if (control) {
      DualCenters<S> base = dual_centers(cfg.A, cfg.B, cfg.C, tol);
      double scale = 0.0;
      for (const auto& c : base.circles) scale = std::max(scale, std::sqrt(to_double(c.r2)));
      rep.assertions = cd::strongest_control<S>(cfg.C, control->magnitude * scale, rep.note, evaluate);
    } else {
      rep.assertions = evaluate(cfg.C);
    }
  } catch (const GeomError& e) {
    return cd::degenerate_report<S>(Theorem::Dual, e);
  }
  return rep;
}

// Takada: the second points of adjacent corner-triangle circumcircles of
// a cyclic pentagon are concyclic. An unmet hypothesis is DEGENERATE.
template <class S>
TheoremReport check_takada(const Penta<S>& A_in, const Tolerance& tol = {},
                           const NegativeControl* control = nullptr) {
  namespace cd = checker_detail;
  TheoremReport rep;
  rep.theorem = Theorem::Takada;
  rep.mode = cd::mode_of<S>();
  try {
    Penta<S> A = A_in;
    if (control) A = cd::strongest_anchor_tamper(A, control->magnitude, rep.note, tol);
    CircleCheck<S> hyp = concyclic_many<S>(cd::span5(A), tol);
    rep.assertions.push_back(cd::named("A-concyclic", hyp));
    if (hyp.verdict != Verdict::Pass) {
      rep.assertions.back().verdict = Verdict::Degenerate;
      return rep;
    }
    TakadaConfig<S> t = takada_build(A, tol);
    for (int i = 0; i < 5; ++i) {
      rep.assertions.push_back(cd::named("Q-incidence-" + std::to_string(i + 1), t.q_incidence[i]));
    }
    rep.assertions.push_back(cd::named("S-concyclic", concyclic_many<S>(cd::span5(t.second_pts), tol)));
  } catch (const GeomError& e) {
    return cd::degenerate_report<S>(Theorem::Takada, e);
  }
  return rep;
}

namespace checker_detail {

// Shared body of the two collinearity theorems: hypothesis that the anchor
// set (B or A) is concyclic, re-checks of the upstream chain (C concyclic,
// K_i L_i concurrent), then collinearity of O, J, X.
template <class S>
void collinearity_chain(TheoremReport& rep, const Penta<S>& A, const Circle<S>& anchor_circle,
                        const Tolerance& tol) {
  PentagramConfig<S> cfg = build_pentagram(A, tol);
  CircleCheck<S> c_check = concyclic_many<S>(span5(cfg.C), tol);
  rep.assertions.push_back(named("C-concyclic", c_check));
  std::array<Line<S>, 5> lines = kl_lines(cfg);
  PointCheck<S> x_check =
      concurrent_lines<S>(std::span<const Line<S>>(lines.data(), 5), kl_scale(cfg), tol);
  rep.assertions.push_back(named("KL-concurrent", x_check));
  Point<S> O = anchor_circle.center;
  Point<S> J = c_check.witness.center;
  Point<S> X = x_check.witness;
  double scale = std::sqrt(to_double(anchor_circle.r2));
  rep.assertions.push_back(named("OJX-collinear", collinear_collapsed(O, J, X, scale, tol)));
}

}  // namespace checker_detail

// Star collinearity: when the star points B are concyclic on (O), the centers O, J
// (of the C circle) and X (the K_i L_i concurrency point) are collinear.
// `B_expected` enables the exact star round-trip assertion.
template <class S>
TheoremReport check_collinear_b(const Penta<S>& A_in, const Tolerance& tol = {},
                                const std::optional<Penta<S>>& B_expected = std::nullopt,
                                const NegativeControl* control = nullptr) {
  namespace cd = checker_detail;
  TheoremReport rep;
  rep.theorem = Theorem::CollinearB;
  rep.mode = cd::mode_of<S>();
  try {
    Penta<S> A = A_in;
    std::optional<Penta<S>> B_exp = B_expected;
    if (control) {
      // Tamper the star points and rebuild A from the tampered star, so the
      // round-trip stays intact and the concyclicity hypothesis breaks.
      Penta<S> B0 = B_exp ? *B_exp : side_intersections(A);
      Penta<S> Bt = cd::strongest_anchor_tamper(B0, control->magnitude, rep.note, tol);
      for (int i = 0; i < 5; ++i) {
        Line<S> d1 = line_through(Bt[i], Bt[mod5(i + 2)]);
        Line<S> d2 = line_through(Bt[mod5(i + 1)], Bt[mod5(i + 3)]);
        A[i] = intersect_lines(d1, d2);
      }
      B_exp = Bt;
    }
    Penta<S> B = side_intersections(A);
    CircleCheck<S> hyp = concyclic_many<S>(cd::span5(B), tol);
    rep.assertions.push_back(cd::named("B-concyclic", hyp));
    if (hyp.verdict != Verdict::Pass) {
      rep.assertions.back().verdict = Verdict::Degenerate;
      return rep;
    }
    if (B_exp) {
      if constexpr (is_exact_v<S>) {
        bool same = B == *B_exp;
        rep.assertions.push_back({"star-roundtrip", same ? Verdict::Pass : Verdict::Fail, 0.0});
      } else {
        double scale2 = 0.0, worst2 = 0.0;
        for (int i = 0; i < 5; ++i) {
          worst2 = std::max(worst2, to_double(detail::dist2(B[i], (*B_exp)[i])));
          scale2 = std::max(scale2, to_double(detail::dist2(B[i], B[mod5(i + 1)])));
        }
        double res = std::sqrt(worst2 / scale2);
        rep.assertions.push_back({"star-roundtrip", tol.classify(res), res});
      }
    }
    cd::collinearity_chain(rep, A, hyp.witness, tol);
  } catch (const GeomError& e) {
    return cd::degenerate_report<S>(Theorem::CollinearB, e);
  }
  return rep;
}

// Cyclic collinearity: as above with the pentagon itself concyclic on (O).
template <class S>
TheoremReport check_collinear_a(const Penta<S>& A_in, const Tolerance& tol = {},
                                const NegativeControl* control = nullptr) {
  namespace cd = checker_detail;
  TheoremReport rep;
  rep.theorem = Theorem::CollinearA;
  rep.mode = cd::mode_of<S>();
  try {
    Penta<S> A = A_in;
    if (control) A = cd::strongest_anchor_tamper(A, control->magnitude, rep.note, tol);
    CircleCheck<S> hyp = concyclic_many<S>(cd::span5(A), tol);
    rep.assertions.push_back(cd::named("A-concyclic", hyp));
    if (hyp.verdict != Verdict::Pass) {
      rep.assertions.back().verdict = Verdict::Degenerate;
      return rep;
    }
    cd::collinearity_chain(rep, A, hyp.witness, tol);
  } catch (const GeomError& e) {
    return cd::degenerate_report<S>(Theorem::CollinearA, e);
  }
  return rep;
}

// Five-circles chain at extended precision, on a solver-produced (or otherwise
// K-concyclic) pentagon given as exact binary doubles:
//   (a) K concyclic, (b) circle(K) = circle(C) (the five-circles link),
//   (c) E concyclic on (J), (d) K_i, L_i, E_i collinear, (e) O, J, X collinear.
TheoremReport check_five_circles_chain(const Penta<double>& A, unsigned bits,
                                       const Tolerance& tol,
                                       const NegativeControl* control = nullptr);

}  // namespace pentagram
