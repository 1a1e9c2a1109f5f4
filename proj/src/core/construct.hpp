#pragma once

// Derived objects of the pentagon/pentagram configurations. Every mod-5
// index convention lives here and nowhere else. With subscripts mod 5 and
// i running over 0..4:
//
//   B[i+3] = line(A_i, A_{i+1}) x line(A_{i+2}, A_{i+3})
//   C[i+1] = second intersection of circles (A_i A_{i+1} B_{i+2}) and
//            (A_{i+1} A_{i+2} B_{i+3}); their common constructed point is A_{i+1}
//   K[i+2] = center of (A_i A_{i+1} B_{i+2})
//   L[i]   = center of (C_{i+1} B_{i+2} B_{i+3})
//
// The five lines K_i L_i are concurrent (eleven circles); the dual variant
// replaces L by the centers of (A_i C_{i+1} A_{i+2}) and K by the centers of
// the five-point circles (B_{i+1} C_i A_{i+1} C_{i+2} B_{i+4}).
//
// K-star points: D[i] = line(K_i, K_{i+2}) x line(K_{i+1}, K_{i+3});
// E[i] = second intersection of (D_i D_{i+1} K_{i+2}) and
// (D_{i+1} D_{i+2} K_{i+3}), common point D_{i+1}. With this labeling each
// E[i] is on both of its defining circles and K_i, L_i, E_i are collinear.

#include <array>
#include <optional>

#include "geometry.hpp"

namespace pentagram {

template <class S>
using Penta = std::array<Point<S>, 5>;

inline constexpr int mod5(int i) { return ((i % 5) + 5) % 5; }

template <class S>
struct PentagramConfig {
  Penta<S> A, B, C, K, L;
  std::array<Circle<S>, 5> miquel_circles;  // circle[i] = (A_i A_{i+1} B_{i+2}), center K[i+2]
};

template <class S>
Penta<S> side_intersections(const Penta<S>& A) {
  Penta<S> B;
  for (int i = 0; i < 5; ++i) {
    try {
      Line<S> l1 = line_through(A[i], A[mod5(i + 1)]);
      Line<S> l2 = line_through(A[mod5(i + 2)], A[mod5(i + 3)]);
      B[mod5(i + 3)] = intersect_lines(l1, l2);
    } catch (const GeomError& e) {
      GeomError::rethrow_with_index(e, i);
    }
  }
  return B;
}

template <class S>
std::array<Circle<S>, 5> miquel_circles(const Penta<S>& A, const Penta<S>& B) {
  std::array<Circle<S>, 5> circ;
  for (int i = 0; i < 5; ++i) {
    try {
      circ[i] = circumcircle(A[i], A[mod5(i + 1)], B[mod5(i + 2)]);
    } catch (const GeomError& e) {
      GeomError::rethrow_with_index(e, i);
    }
  }
  return circ;
}

template <class S>
Penta<S> miquel_points(const Penta<S>& A, const std::array<Circle<S>, 5>& circ,
                       const Tolerance& tol = {}) {
  Penta<S> C;
  for (int i = 0; i < 5; ++i) {
    try {
      C[mod5(i + 1)] = second_intersection(circ[i], circ[mod5(i + 1)], A[mod5(i + 1)], tol);
    } catch (const GeomError& e) {
      GeomError::rethrow_with_index(e, i);
    }
  }
  return C;
}

template <class S>
Penta<S> centers_k(const std::array<Circle<S>, 5>& circ) {
  Penta<S> K;
  for (int i = 0; i < 5; ++i) K[mod5(i + 2)] = circ[i].center;
  return K;
}

template <class S>
Penta<S> centers_l(const Penta<S>& B, const Penta<S>& C) {
  Penta<S> L;
  for (int i = 0; i < 5; ++i) {
    try {
      L[i] = circumcircle(C[mod5(i + 1)], B[mod5(i + 2)], B[mod5(i + 3)]).center;
    } catch (const GeomError& e) {
      GeomError::rethrow_with_index(e, i);
    }
  }
  return L;
}

template <class S>
PentagramConfig<S> build_pentagram(const Penta<S>& A, const Tolerance& tol = {}) {
  PentagramConfig<S> cfg;
  cfg.A = A;
  cfg.B = side_intersections(A);
  cfg.miquel_circles = miquel_circles(A, cfg.B);
  cfg.C = miquel_points(A, cfg.miquel_circles, tol);
  cfg.K = centers_k(cfg.miquel_circles);
  cfg.L = centers_l(cfg.B, cfg.C);
  return cfg;
}

// Dual construction: L2[i] = circumcenter(A_i, C_{i+1}, A_{i+2}) and the
// five-point circles (B_{i+1} C_i A_{i+1}), which per the dual theorem also
// pass through C_{i+2} and B_{i+4}. The membership checks are part of the
// result because they are themselves a theorem assertion.
template <class S>
struct DualCenters {
  Penta<S> L2, K2;
  std::array<Circle<S>, 5> circles;
  std::array<Check, 5> five_point;  // worst of the C_{i+2} and B_{i+4} memberships
};

template <class S>
DualCenters<S> dual_centers(const Penta<S>& A, const Penta<S>& B, const Penta<S>& C,
                            const Tolerance& tol = {}) {
  DualCenters<S> d;
  for (int i = 0; i < 5; ++i) {
    try {
      d.L2[i] = circumcircle(A[i], C[mod5(i + 1)], A[mod5(i + 2)]).center;
      d.circles[i] = circumcircle(B[mod5(i + 1)], C[i], A[mod5(i + 1)]);
      d.K2[i] = d.circles[i].center;
    } catch (const GeomError& e) {
      GeomError::rethrow_with_index(e, i);
    }
    double res = std::max(detail::fit_residual(d.circles[i], C[mod5(i + 2)]),
                          detail::fit_residual(d.circles[i], B[mod5(i + 4)]));
    if constexpr (is_exact_v<S>) {
      bool ok = d.circles[i].gap(C[mod5(i + 2)]) == S(0) && d.circles[i].gap(B[mod5(i + 4)]) == S(0);
      d.five_point[i] = Check{ok ? Verdict::Pass : Verdict::Fail, ok ? 0.0 : res};
    } else {
      d.five_point[i] = Check{tol.classify(res), res};
    }
  }
  return d;
}

// Exact-mode canary: the five-point concyclicity is a theorem, so a violation
// on non-degenerate exact input means the construction itself is wrong.
template <class S>
void require_five_point_circles(const DualCenters<S>& d) {
  static_assert(is_exact_v<S>);
  for (int i = 0; i < 5; ++i) {
    if (d.five_point[i].verdict != Verdict::Pass) {
      throw GeomError(GeomErrc::FivePointCircleViolation,
                      "dual five-point circle fails on exact input", i);
    }
  }
}

template <class S>
struct KStarPoints {
  Penta<S> D, E;
  std::array<Circle<S>, 5> circles;  // circle[i] = (D_i D_{i+1} K_{i+2})
};

template <class S>
KStarPoints<S> k_star_points(const Penta<S>& K, const Tolerance& tol = {}) {
  KStarPoints<S> ks;
  for (int i = 0; i < 5; ++i) {
    try {
      Line<S> l1 = line_through(K[i], K[mod5(i + 2)]);
      Line<S> l2 = line_through(K[mod5(i + 1)], K[mod5(i + 3)]);
      ks.D[i] = intersect_lines(l1, l2);
    } catch (const GeomError& e) {
      GeomError::rethrow_with_index(e, i);
    }
  }
  for (int i = 0; i < 5; ++i) {
    try {
      ks.circles[i] = circumcircle(ks.D[i], ks.D[mod5(i + 1)], K[mod5(i + 2)]);
    } catch (const GeomError& e) {
      GeomError::rethrow_with_index(e, i);
    }
  }
  for (int i = 0; i < 5; ++i) {
    try {
      ks.E[i] = second_intersection(ks.circles[i], ks.circles[mod5(i + 1)], ks.D[mod5(i + 1)], tol);
    } catch (const GeomError& e) {
      GeomError::rethrow_with_index(e, i);
    }
  }
  return ks;
}

// Takada: a cyclic pentagon's diagonal intersections Q_i = A_iA_{i+2} x
// A_{i+1}A_{i+3}, the corner triangles (A_i, Q_{i-1}, Q_{i-2}), and the
// second intersections of adjacent circumcircles, which share Q_{i-1}.
// The shared-Q incidence is asserted at runtime so a wrong reading of the
// construction fails loudly instead of silently.
template <class S>
struct TakadaConfig {
  Penta<S> A, Q, second_pts;
  std::array<Circle<S>, 5> circles;       // circumcircle of (A_i, Q_{i-1}, Q_{i-2})
  std::array<Check, 5> q_incidence;       // Q_{i-1} on circles[i] and circles[i+1]
  Circle<S> a_circle;                     // witness for the cyclic hypothesis
};

template <class S>
TakadaConfig<S> takada_build(const Penta<S>& A, const Tolerance& tol = {}) {
  TakadaConfig<S> t;
  t.A = A;
  CircleCheck<S> hyp = concyclic_many<S>(std::span<const Point<S>>(A.data(), 5), tol);
  if (hyp.verdict != Verdict::Pass) {
    throw GeomError(GeomErrc::NotConcyclic, "takada input pentagon is not concyclic");
  }
  t.a_circle = hyp.witness;
  for (int i = 0; i < 5; ++i) {
    try {
      Line<S> d1 = line_through(A[i], A[mod5(i + 2)]);
      Line<S> d2 = line_through(A[mod5(i + 1)], A[mod5(i + 3)]);
      t.Q[i] = intersect_lines(d1, d2);
    } catch (const GeomError& e) {
      GeomError::rethrow_with_index(e, i);
    }
  }
  for (int i = 0; i < 5; ++i) {
    try {
      t.circles[i] = circumcircle(A[i], t.Q[mod5(i - 1)], t.Q[mod5(i - 2)]);
    } catch (const GeomError& e) {
      GeomError::rethrow_with_index(e, i);
    }
  }
  for (int i = 0; i < 5; ++i) {
    const Point<S>& shared = t.Q[mod5(i - 1)];
    double res = std::max(detail::fit_residual(t.circles[i], shared),
                          detail::fit_residual(t.circles[mod5(i + 1)], shared));
    if constexpr (is_exact_v<S>) {
      bool ok = t.circles[i].gap(shared) == S(0) && t.circles[mod5(i + 1)].gap(shared) == S(0);
      t.q_incidence[i] = Check{ok ? Verdict::Pass : Verdict::Fail, ok ? 0.0 : res};
      if (!ok) {
        throw GeomError(GeomErrc::CommonPointNotOnCircles,
                        "takada shared vertex is not on both adjacent circles", i);
      }
    } else {
      t.q_incidence[i] = Check{tol.classify(res), res};
    }
    try {
      t.second_pts[i] =
          second_intersection(t.circles[i], t.circles[mod5(i + 1)], shared, tol);
    } catch (const GeomError& e) {
      GeomError::rethrow_with_index(e, i);
    }
  }
  return t;
}

enum class Anchor { BCircle, ACircle, KCircle };

inline const char* anchor_name(Anchor a) {
  switch (a) {
    case Anchor::BCircle: return "B";
    case Anchor::ACircle: return "A";
    case Anchor::KCircle: return "K";
  }
  return "?";
}

template <class S>
struct Distinguished {
  Point<S> O, J, X;
  Circle<S> anchor_circle;  // (O)
  Circle<S> j_circle;       // (J): the C-circle, or the E-circle for the K anchor
};

template <class S>
double diameter(std::span<const Point<S>> pts) {
  double worst = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      worst = std::max(worst, to_double(detail::dist2(pts[i], pts[j])));
    }
  }
  return std::sqrt(worst);
}

template <class S>
std::array<Line<S>, 5> kl_lines(const PentagramConfig<S>& cfg) {
  std::array<Line<S>, 5> lines;
  for (int i = 0; i < 5; ++i) {
    if (cfg.K[i] == cfg.L[i]) {
      throw GeomError(GeomErrc::CoincidentCenters, "K and L centers coincide", i);
    }
    lines[i] = line_through(cfg.K[i], cfg.L[i]);
  }
  return lines;
}

template <class S>
double kl_scale(const PentagramConfig<S>& cfg) {
  std::array<Point<S>, 10> anchors;
  for (int i = 0; i < 5; ++i) {
    anchors[i] = cfg.K[i];
    anchors[5 + i] = cfg.L[i];
  }
  return diameter<S>(anchors);
}

// O = center of the witness circle through the anchor set, J = center of the
// circle through the C points (the E points for the K anchor), X = the
// concurrency witness of the five K_i L_i lines.
template <class S>
Distinguished<S> distinguished_points(const PentagramConfig<S>& cfg, Anchor anchor,
                                      const Tolerance& tol = {}) {
  Distinguished<S> out;
  auto span_of = [](const Penta<S>& p) { return std::span<const Point<S>>(p.data(), 5); };

  const Penta<S>& anchor_pts = anchor == Anchor::BCircle ? cfg.B
                               : anchor == Anchor::ACircle ? cfg.A
                                                           : cfg.K;
  CircleCheck<S> hyp = concyclic_many<S>(span_of(anchor_pts), tol);
  if (hyp.verdict != Verdict::Pass) {
    throw GeomError(GeomErrc::NotConcyclic,
                    std::string("anchor point set ") + anchor_name(anchor) + " is not concyclic");
  }
  out.anchor_circle = hyp.witness;
  out.O = hyp.witness.center;

  if (anchor == Anchor::KCircle) {
    KStarPoints<S> ks = k_star_points(cfg.K, tol);
    CircleCheck<S> e = concyclic_many<S>(span_of(ks.E), tol);
    if (e.verdict != Verdict::Pass) {
      throw GeomError(GeomErrc::NotConcyclic, "E points are not concyclic");
    }
    out.j_circle = e.witness;
  } else {
    CircleCheck<S> c = concyclic_many<S>(span_of(cfg.C), tol);
    if (c.verdict != Verdict::Pass) {
      throw GeomError(GeomErrc::NotConcyclic, "C points are not concyclic");
    }
    out.j_circle = c.witness;
  }
  out.J = out.j_circle.center;

  std::array<Line<S>, 5> lines = kl_lines(cfg);
  PointCheck<S> x = concurrent_lines<S>(std::span<const Line<S>>(lines.data(), 5),
                                        kl_scale(cfg), tol);
  if (x.verdict != Verdict::Pass) {
    throw GeomError(GeomErrc::NotConcurrent, "K_i L_i lines are not concurrent");
  }
  out.X = x.witness;
  return out;
}

}  // namespace pentagram
