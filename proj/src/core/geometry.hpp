#pragma once

// Plane-geometry kernel: points, homogeneous lines, circles stored as
// center + squared radius, and the incidence predicates every theorem
// check reduces to. All constructions stay in the rational field when
// instantiated with Rat: second intersections of circles are computed by
// reflecting the known common point across the line of centers, never by
// radical formulas, so exact zero-testing works end to end.
//
// Exact instantiations never consult a tolerance; verdicts come from
// exact zero tests and the reported residual is a double-precision
// rendering of the same normalized quantity the float path uses.

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace pentagram {

enum class Verdict { Pass, Fail, Indeterminate, Degenerate };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Indeterminate: return "INDETERMINATE";
    case Verdict::Degenerate: return "DEGENERATE";
  }
  return "?";
}

enum class GeomErrc {
  CoincidentPoints,
  ParallelLines,
  CollinearPoints,
  ConcentricCircles,
  TangentCircles,
  CommonPointNotOnCircles,
  DegenerateTriple,
  CoincidentCenters,
  NotConcyclic,
  NotConcurrent,
  FivePointCircleViolation,
  RejectionBudgetExhausted,
  NoConvergence,
  DegenerateDuringSolve,
};

inline const char* geom_errc_name(GeomErrc c) {
  switch (c) {
    case GeomErrc::CoincidentPoints: return "CoincidentPoints";
    case GeomErrc::ParallelLines: return "ParallelLines";
    case GeomErrc::CollinearPoints: return "CollinearPoints";
    case GeomErrc::ConcentricCircles: return "ConcentricCircles";
    case GeomErrc::TangentCircles: return "TangentCircles";
    case GeomErrc::CommonPointNotOnCircles: return "CommonPointNotOnCircles";
    case GeomErrc::DegenerateTriple: return "DegenerateTriple";
    case GeomErrc::CoincidentCenters: return "CoincidentCenters";
    case GeomErrc::NotConcyclic: return "NotConcyclic";
    case GeomErrc::NotConcurrent: return "NotConcurrent";
    case GeomErrc::FivePointCircleViolation: return "FivePointCircleViolation";
    case GeomErrc::RejectionBudgetExhausted: return "RejectionBudgetExhausted";
    case GeomErrc::NoConvergence: return "NoConvergence";
    case GeomErrc::DegenerateDuringSolve: return "DegenerateDuringSolve";
  }
  return "?";
}

class GeomError : public std::runtime_error {
 public:
  GeomError(GeomErrc code, std::string what, int index = -1)
      : std::runtime_error(index >= 0 ? std::string(geom_errc_name(code)) + "(" +
                                            std::to_string(index + 1) + "): " + what
                                      : std::string(geom_errc_name(code)) + ": " + what),
        code_(code),
        index_(index) {}

  GeomErrc code() const { return code_; }
  int index() const { return index_; }  // 0-based slot in a 5-cycle, -1 if n/a

  [[noreturn]] static void rethrow_with_index(const GeomError& e, int index) {
    throw GeomError(e.code(), e.what(), index);
  }

 private:
  GeomErrc code_;
  int index_;
};

template <class S>
struct Point {
  S x{};
  S y{};

  friend bool operator==(const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; }
  friend bool operator!=(const Point& p, const Point& q) { return !(p == q); }
};

// The locus a*x + b*y + c = 0 with (a, b) != (0, 0). In exact mode the
// coefficients are canonical (coprime integers, first nonzero of (a, b)
// positive), so equal lines compare equal component-wise. Float mode
// normalizes to a unit normal with the same sign rule.
template <class S>
struct Line {
  S a{};
  S b{};
  S c{};

  S eval(const Point<S>& p) const { return a * p.x + b * p.y + c; }

  friend bool operator==(const Line& l, const Line& m) {
    return l.a == m.a && l.b == m.b && l.c == m.c;
  }
  friend bool operator!=(const Line& l, const Line& m) { return !(l == m); }
};

template <class S>
struct Circle {
  Point<S> center;
  S r2{};  // squared radius; the radius itself is irrational in general

  // |p - center|^2 - r2: zero exactly when p is on the circle
  S gap(const Point<S>& p) const {
    S dx = p.x - center.x;
    S dy = p.y - center.y;
    return dx * dx + dy * dy - r2;
  }

  friend bool operator==(const Circle& u, const Circle& v) {
    return u.center == v.center && u.r2 == v.r2;
  }
};

// Residual classification bands for float mode. Residuals below rel_pass
// pass, above rel_fail_floor fail, anything between is INDETERMINATE and
// signals that the run needs more precision.
struct Tolerance {
  double rel_pass = 1e-8;
  double rel_fail_floor = 1e-4;

  static Tolerance for_bits(unsigned bits) {
    Tolerance t;
    t.rel_pass = bits <= 64 ? 1e-8 : 1e-40;
    return t;
  }

  Verdict classify(double residual) const {
    if (residual < rel_pass) return Verdict::Pass;
    if (residual > rel_fail_floor) return Verdict::Fail;
    return Verdict::Indeterminate;
  }

  void validate() const {
    if (!(0 < rel_pass && rel_pass < rel_fail_floor)) {
      throw std::invalid_argument("tolerance bands must satisfy 0 < rel_pass < rel_fail_floor");
    }
  }
};

struct Check {
  Verdict verdict = Verdict::Pass;
  double residual = 0.0;  // normalized, see each predicate's contract
};

template <class S>
struct CircleCheck : Check {
  Circle<S> witness;
};

template <class S>
struct PointCheck : Check {
  Point<S> witness;
};

namespace detail {

// Degeneracy threshold for float instantiations: halfway through the
// mantissa, so construction roundoff never trips it and genuinely
// ill-posed inputs do.
template <class S>
double eps_degenerate() {
  static_assert(!is_exact_v<S>);
  return std::ldexp(1.0, -static_cast<int>(scalar_traits<S>::mantissa_bits()) / 2);
}

template <class S>
S dist2(const Point<S>& p, const Point<S>& q) {
  S dx = p.x - q.x;
  S dy = p.y - q.y;
  return dx * dx + dy * dy;
}

template <class S>
S orient(const Point<S>& p, const Point<S>& q, const Point<S>& r) {
  return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

inline void canonicalize_exact(Rat& a, Rat& b, Rat& c) {
  Int d = lcm(lcm(denominator(a), denominator(b)), denominator(c));
  Int na = numerator(a) * (d / denominator(a));
  Int nb = numerator(b) * (d / denominator(b));
  Int nc = numerator(c) * (d / denominator(c));
  Int g = gcd(gcd(abs(na), abs(nb)), abs(nc));
  if (g == 0) g = 1;
  na /= g;
  nb /= g;
  nc /= g;
  bool flip = na != 0 ? na < 0 : nb < 0;
  if (flip) {
    na = -na;
    nb = -nb;
    nc = -nc;
  }
  a = Rat(na);
  b = Rat(nb);
  c = Rat(nc);
}

template <class S>
void canonicalize(Line<S>& l) {
  if constexpr (is_exact_v<S>) {
    canonicalize_exact(l.a, l.b, l.c);
  } else {
    using std::sqrt;
    S n = sqrt(l.a * l.a + l.b * l.b);
    l.a = l.a / n;
    l.b = l.b / n;
    l.c = l.c / n;
    bool flip = !(l.a == S(0)) ? l.a < S(0) : l.b < S(0);
    if (flip) {
      l.a = -l.a;
      l.b = -l.b;
      l.c = -l.c;
    }
  }
}

}  // namespace detail

template <class S>
Line<S> line_through(const Point<S>& p, const Point<S>& q) {
  if (p == q) throw GeomError(GeomErrc::CoincidentPoints, "line through coincident points");
  Line<S> l{p.y - q.y, q.x - p.x, p.x * q.y - q.x * p.y};
  detail::canonicalize(l);
  return l;
}

template <class S>
Point<S> intersect_lines(const Line<S>& l1, const Line<S>& l2) {
  S d = l1.a * l2.b - l2.a * l1.b;
  if constexpr (is_exact_v<S>) {
    if (d == S(0)) throw GeomError(GeomErrc::ParallelLines, "lines are parallel or coincident");
  } else {
    // canonical lines have unit normals, so d is the sine of their angle
    using std::abs;
    if (to_double(abs(d)) < detail::eps_degenerate<S>()) {
      throw GeomError(GeomErrc::ParallelLines, "lines are (numerically) parallel");
    }
  }
  return Point<S>{(l1.b * l2.c - l2.b * l1.c) / d, (l1.c * l2.a - l2.c * l1.a) / d};
}

template <class S>
Circle<S> circumcircle(const Point<S>& p, const Point<S>& q, const Point<S>& r) {
  if (p == q || q == r || p == r) {
    throw GeomError(GeomErrc::CoincidentPoints, "circumcircle needs three distinct points");
  }
  S det = detail::orient(p, q, r);
  if constexpr (is_exact_v<S>) {
    if (det == S(0)) throw GeomError(GeomErrc::CollinearPoints, "circumcircle of collinear points");
  } else {
    using std::abs;
    using std::sqrt;
    S norm = sqrt(detail::dist2(p, q) * detail::dist2(p, r));
    if (to_double(abs(det) / norm) < detail::eps_degenerate<S>()) {
      throw GeomError(GeomErrc::CollinearPoints, "circumcircle of (nearly) collinear points");
    }
  }
  // perpendicular-bisector linear system, Cramer's rule
  S two(2);
  S u = q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y;
  S v = r.x * r.x + r.y * r.y - p.x * p.x - p.y * p.y;
  S den = two * two * det;  // 4 * orient
  Point<S> center{(u * two * (r.y - p.y) - v * two * (q.y - p.y)) / den,
                  (v * two * (q.x - p.x) - u * two * (r.x - p.x)) / den};
  Circle<S> circ{center, detail::dist2(p, center)};
  return circ;
}

template <class S>
Point<S> reflect_across_line(const Point<S>& p, const Line<S>& l) {
  S t = l.eval(p) / (l.a * l.a + l.b * l.b);
  S two(2);
  return Point<S>{p.x - two * t * l.a, p.y - two * t * l.b};
}

// The other intersection point of two circles known to share `common`.
// Computed as the reflection of `common` across the line of centers, which
// keeps rational inputs rational and is an involution in the point argument.
template <class S>
Point<S> second_intersection(const Circle<S>& c1, const Circle<S>& c2, const Point<S>& common,
                             const Tolerance& tol = {}) {
  if constexpr (is_exact_v<S>) {
    if (c1.center == c2.center) {
      throw GeomError(GeomErrc::ConcentricCircles, "second intersection of concentric circles");
    }
    if (!(c1.gap(common) == S(0)) || !(c2.gap(common) == S(0))) {
      throw GeomError(GeomErrc::CommonPointNotOnCircles, "claimed common point is not on both circles");
    }
  } else {
    using std::abs;
    double eps = detail::eps_degenerate<S>();
    double scale2 = std::max(to_double(c1.r2), to_double(c2.r2));
    if (to_double(detail::dist2(c1.center, c2.center)) <= eps * eps * scale2) {
      throw GeomError(GeomErrc::ConcentricCircles, "second intersection of (nearly) concentric circles");
    }
    double g1 = to_double(abs(c1.gap(common))) / to_double(c1.r2);
    double g2 = to_double(abs(c2.gap(common))) / to_double(c2.r2);
    if (g1 > tol.rel_pass || g2 > tol.rel_pass) {
      throw GeomError(GeomErrc::CommonPointNotOnCircles, "claimed common point is not on both circles");
    }
  }
  Point<S> result = reflect_across_line(common, line_through(c1.center, c2.center));
  if constexpr (is_exact_v<S>) {
    if (result == common) {
      throw GeomError(GeomErrc::TangentCircles, "circles are tangent at the common point");
    }
  } else {
    double eps = detail::eps_degenerate<S>();
    double scale2 = std::max(to_double(c1.r2), to_double(c2.r2));
    if (to_double(detail::dist2(result, common)) <= eps * eps * scale2) {
      throw GeomError(GeomErrc::TangentCircles, "circles are (numerically) tangent at the common point");
    }
  }
  return result;
}

// Residual: |det[[q-p],[r-p]]| / (|pq| * |pr|). Duplicate points count as
// collinear (the determinant's degenerate limit).
template <class S>
Check collinear3(const Point<S>& p, const Point<S>& q, const Point<S>& r,
                 const Tolerance& tol = {}) {
  if (p == q || p == r || q == r) return Check{Verdict::Pass, 0.0};
  S det = detail::orient(p, q, r);
  if constexpr (is_exact_v<S>) {
    if (det == S(0)) return Check{Verdict::Pass, 0.0};
    double res = std::abs(to_double(det)) /
                 std::sqrt(to_double(detail::dist2(p, q)) * to_double(detail::dist2(p, r)));
    return Check{Verdict::Fail, res};
  } else {
    using std::abs;
    using std::sqrt;
    S res = abs(det) / sqrt(detail::dist2(p, q) * detail::dist2(p, r));
    double r_d = to_double(res);
    return Check{tol.classify(r_d), r_d};
  }
}

namespace detail {

// 4x4 determinant with rows (x^2+y^2, x, y, 1); zero iff the four points
// lie on a common circle or line.
template <class S>
S concyclic_det(const Point<S>& p1, const Point<S>& p2, const Point<S>& p3, const Point<S>& p4) {
  auto row = [](const Point<S>& p) {
    return std::array<S, 3>{p.x * p.x + p.y * p.y, p.x, p.y};
  };
  std::array<std::array<S, 3>, 4> m{row(p1), row(p2), row(p3), row(p4)};
  // expand along the all-ones column
  auto det3 = [](const std::array<S, 3>& a, const std::array<S, 3>& b, const std::array<S, 3>& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
  };
  return -det3(m[1], m[2], m[3]) + det3(m[0], m[2], m[3]) - det3(m[0], m[1], m[3]) +
         det3(m[0], m[1], m[2]);
}

template <class S>
double fit_residual(const Circle<S>& w, const Point<S>& p) {
  using std::abs;
  if constexpr (is_exact_v<S>) {
    return std::abs(to_double(w.gap(p))) / to_double(w.r2);
  } else {
    return to_double(abs(w.gap(p)) / w.r2);
  }
}

}  // namespace detail

// Exact mode decides by the (x^2+y^2, x, y, 1) determinant; the residual is
// the circle-fit one either way: fit through the first three points,
// max over the rest of ||P-center|^2 - r2| / r2.
template <class S>
Check concyclic4(const Point<S>& p1, const Point<S>& p2, const Point<S>& p3, const Point<S>& p4,
                 const Tolerance& tol = {}) {
  Circle<S> w;
  try {
    w = circumcircle(p1, p2, p3);
  } catch (const GeomError& e) {
    throw GeomError(GeomErrc::DegenerateTriple, e.what());
  }
  double res = detail::fit_residual(w, p4);
  if constexpr (is_exact_v<S>) {
    bool zero = detail::concyclic_det(p1, p2, p3, p4) == S(0);
    return Check{zero ? Verdict::Pass : Verdict::Fail, zero ? 0.0 : res};
  } else {
    return Check{tol.classify(res), res};
  }
}

template <class S>
CircleCheck<S> concyclic_many(std::span<const Point<S>> pts, const Tolerance& tol = {}) {
  if (pts.size() < 4) throw std::invalid_argument("concyclic_many needs at least 4 points");
  CircleCheck<S> out;
  try {
    out.witness = circumcircle(pts[0], pts[1], pts[2]);
  } catch (const GeomError& e) {
    throw GeomError(GeomErrc::DegenerateTriple, e.what());
  }
  bool exact_ok = true;
  double worst = 0.0;
  for (size_t i = 3; i < pts.size(); ++i) {
    if constexpr (is_exact_v<S>) {
      if (!(out.witness.gap(pts[i]) == S(0))) exact_ok = false;
    }
    worst = std::max(worst, detail::fit_residual(out.witness, pts[i]));
  }
  if constexpr (is_exact_v<S>) {
    out.verdict = exact_ok ? Verdict::Pass : Verdict::Fail;
    out.residual = exact_ok ? 0.0 : worst;
  } else {
    out.verdict = tol.classify(worst);
    out.residual = worst;
  }
  return out;
}

// Witness X = lines[0] x lines[1]; residual = max over the rest of
// distance(X, line) / scale, where scale is the diameter of the point set
// the lines were anchored to (supplied by the caller; exact mode ignores it
// for the verdict).
template <class S>
PointCheck<S> concurrent_lines(std::span<const Line<S>> lines, double scale,
                               const Tolerance& tol = {}) {
  if (lines.size() < 3) throw std::invalid_argument("concurrent_lines needs at least 3 lines");
  if (!(scale > 0)) scale = 1.0;
  PointCheck<S> out;
  out.witness = intersect_lines(lines[0], lines[1]);
  bool exact_ok = true;
  double worst = 0.0;
  for (size_t i = 2; i < lines.size(); ++i) {
    const Line<S>& l = lines[i];
    if constexpr (is_exact_v<S>) {
      S e = l.eval(out.witness);
      if (!(e == S(0))) exact_ok = false;
      double dist = std::abs(to_double(e)) /
                    std::sqrt(to_double(l.a * l.a + l.b * l.b));
      worst = std::max(worst, dist / scale);
    } else {
      using std::abs;
      using std::sqrt;
      // canonical float lines carry unit normals already
      double dist = to_double(abs(l.eval(out.witness)));
      worst = std::max(worst, dist / scale);
    }
  }
  if constexpr (is_exact_v<S>) {
    out.verdict = exact_ok ? Verdict::Pass : Verdict::Fail;
    out.residual = exact_ok ? 0.0 : worst;
  } else {
    out.verdict = tol.classify(worst);
    out.residual = worst;
  }
  return out;
}

}  // namespace pentagram
