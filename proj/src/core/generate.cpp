#include "generate.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace pentagram {

void GeneratorSpec::validate() const {
  if (coord_bound < 0) throw std::invalid_argument("coord_bound must be nonnegative");
  if (denom_bound < 1) throw std::invalid_argument("denom_bound must be positive");
  if (max_rejections < 1) throw std::invalid_argument("max_rejections must be positive");
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

Rat Rng::rational(int coord_bound, int denom_bound) {
  std::int64_t d = uniform(1, denom_bound);
  std::int64_t n = uniform(-static_cast<std::int64_t>(coord_bound) * d,
                           static_cast<std::int64_t>(coord_bound) * d);
  return Rat(n, d);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over a golden-ratio stride
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// exact angular order around a rational center: half-plane first, then cross product
bool angle_less(const Point<Rat>& center, const Point<Rat>& p, const Point<Rat>& q) {
  Rat px = p.x - center.x, py = p.y - center.y;
  Rat qx = q.x - center.x, qy = q.y - center.y;
  auto half = [](const Rat& x, const Rat& y) {
    return (y > 0 || (y == 0 && x > 0)) ? 0 : 1;  // sweep from the +x axis
  };
  int hp = half(px, py), hq = half(qx, qy);
  if (hp != hq) return hp < hq;
  Rat cross = px * qy - py * qx;
  return cross > 0;
}

bool main_pipeline_ok(const Penta<Rat>& A) {
  try {
    PentagramConfig<Rat> cfg = build_pentagram(A);
    DualCenters<Rat> dual = dual_centers(cfg.A, cfg.B, cfg.C);
    require_five_point_circles(dual);
    for (int i = 0; i < 5; ++i) {
      if (cfg.K[i] == cfg.L[i] || dual.K2[i] == dual.L2[i]) return false;
    }
    kl_lines(cfg);
    return true;
  } catch (const GeomError&) {
    return false;
  }
}

bool takada_pipeline_ok(const Penta<Rat>& A) {
  try {
    takada_build(A);
    return true;
  } catch (const GeomError&) {
    return false;
  }
}

// Distinct rational points on a rational circle via t -> (c + r(1-t^2)/(1+t^2),
// c_y + 2rt/(1+t^2)); sorting by t sorts by angle, which puts concyclic points
// in convex cyclic order.
std::optional<Penta<Rat>> draw_cyclic(Rng& rng, const GeneratorSpec& spec) {
  Point<Rat> center{rng.rational(spec.coord_bound, spec.denom_bound),
                    rng.rational(spec.coord_bound, spec.denom_bound)};
  int radius_bound = std::max(spec.coord_bound, 1);
  std::int64_t dq = rng.uniform(1, spec.denom_bound);
  Rat radius(rng.uniform(dq, static_cast<std::int64_t>(radius_bound) * dq), dq);
  std::set<Rat> ts;
  for (int k = 0; k < 5; ++k) ts.insert(rng.rational(spec.coord_bound, spec.denom_bound));
  if (ts.size() != 5) return std::nullopt;  // equal parameters drawn: redraw
  Penta<Rat> A;
  int k = 0;
  for (const Rat& t : ts) {
    Rat denom = 1 + t * t;
    A[k].x = center.x + radius * (1 - t * t) / denom;
    A[k].y = center.y + radius * (2 * t) / denom;
    ++k;
  }
  return A;
}

}  // namespace

bool convex_cyclic_order(Penta<Rat>& pts) {
  Point<Rat> centroid;
  for (const auto& p : pts) {
    centroid.x += p.x;
    centroid.y += p.y;
  }
  centroid.x /= 5;
  centroid.y /= 5;
  for (const auto& p : pts) {
    if (p == centroid) return false;
  }
  std::sort(pts.begin(), pts.end(),
            [&](const Point<Rat>& p, const Point<Rat>& q) { return angle_less(centroid, p, q); });
  for (int i = 0; i < 5; ++i) {
    if (!(detail::orient(pts[i], pts[mod5(i + 1)], pts[mod5(i + 2)]) > 0)) return false;
  }
  return true;
}

Penta<Rat> random_pentagon(const GeneratorSpec& spec, std::uint64_t draw_index) {
  spec.validate();
  Rng rng(derive_seed(spec.seed, draw_index));
  for (int attempt = 0; attempt < spec.max_rejections; ++attempt) {
    Penta<Rat> A;
    for (auto& p : A) {
      p.x = rng.rational(spec.coord_bound, spec.denom_bound);
      p.y = rng.rational(spec.coord_bound, spec.denom_bound);
    }
    bool distinct = true;
    for (int i = 0; i < 5 && distinct; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        if (A[i] == A[j]) {
          distinct = false;
          break;
        }
      }
    }
    if (!distinct) continue;
    if (spec.convex_required && !convex_cyclic_order(A)) continue;
    if (!main_pipeline_ok(A)) continue;
    return A;
  }
  throw GeomError(GeomErrc::RejectionBudgetExhausted, "random_pentagon rejection budget exhausted");
}

Penta<Rat> cyclic_pentagon(const GeneratorSpec& spec, std::uint64_t draw_index) {
  spec.validate();
  Rng rng(derive_seed(spec.seed, draw_index) ^ 0xC2B2AE3D27D4EB4FULL);
  for (int attempt = 0; attempt < spec.max_rejections; ++attempt) {
    std::optional<Penta<Rat>> A = draw_cyclic(rng, spec);
    if (!A) continue;
    if (!main_pipeline_ok(*A) || !takada_pipeline_ok(*A)) continue;
    return *A;
  }
  throw GeomError(GeomErrc::RejectionBudgetExhausted, "cyclic_pentagon rejection budget exhausted");
}

StarPentagon pentagon_from_star(const GeneratorSpec& spec, std::uint64_t draw_index) {
  spec.validate();
  Rng rng(derive_seed(spec.seed, draw_index) ^ 0xA0761D6478BD642FULL);
  for (int attempt = 0; attempt < spec.max_rejections; ++attempt) {
    std::optional<Penta<Rat>> B = draw_cyclic(rng, spec);
    if (!B) continue;
    StarPentagon sp;
    sp.B = *B;
    try {
      for (int i = 0; i < 5; ++i) {
        Line<Rat> d1 = line_through(sp.B[i], sp.B[mod5(i + 2)]);
        Line<Rat> d2 = line_through(sp.B[mod5(i + 1)], sp.B[mod5(i + 3)]);
        sp.A[i] = intersect_lines(d1, d2);
      }
    } catch (const GeomError&) {
      continue;  // parallel diagonals: redraw
    }
    if (side_intersections(sp.A) != sp.B) {
      // cannot happen for accepted draws: A_i and A_{i+1} both lie on
      // line(B_{i+1}, B_{i+3}), so the side lines of A are diagonals of B
      throw GeomError(GeomErrc::CommonPointNotOnCircles, "star round-trip violated");
    }
    if (!main_pipeline_ok(sp.A)) continue;
    return sp;
  }
  throw GeomError(GeomErrc::RejectionBudgetExhausted,
                  "pentagon_from_star rejection budget exhausted");
}

}  // namespace pentagram
