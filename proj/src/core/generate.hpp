#pragma once

// Input pentagons for each theorem's hypothesis class: unconstrained random
// rational pentagons, rational cyclic pentagons (tangent-half-angle
// parametrization, exactly concyclic), and star-derived pentagons whose B
// points are concyclic by construction. Generation is a pure function of
// (spec, draw index); rejection sampling guarantees that accepted draws run
// the full construction pipeline without degeneracy errors.

#include <cstdint>
#include <random>

#include "construct.hpp"

namespace pentagram {

struct GeneratorSpec {
  std::uint64_t seed = 0;
  int coord_bound = 10;
  int denom_bound = 64;
  bool convex_required = true;
  int max_rejections = 10000;

  void validate() const;
};

// mt19937_64 with explicit rejection sampling for bounded draws; std
// distributions are not pinned by the standard, these outputs are.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::int64_t uniform(std::int64_t lo, std::int64_t hi);  // inclusive bounds

  Rat rational(int coord_bound, int denom_bound);  // |value| <= coord_bound

 private:
  std::mt19937_64 engine_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Penta<Rat> random_pentagon(const GeneratorSpec& spec, std::uint64_t draw_index = 0);

Penta<Rat> cyclic_pentagon(const GeneratorSpec& spec, std::uint64_t draw_index = 0);

struct StarPentagon {
  Penta<Rat> A;  // diagonal-intersection pentagon of B
  Penta<Rat> B;  // concyclic star points; side_intersections(A) == B exactly
};

StarPentagon pentagon_from_star(const GeneratorSpec& spec, std::uint64_t draw_index = 0);

template <class S>
Penta<S> perturb(Penta<S> pts, int index, const S& delta) {
  if (index < 0 || index >= 5) throw std::invalid_argument("perturb index out of range");
  if (delta == S(0)) throw std::invalid_argument("perturb delta must be nonzero");
  pts[index].x = pts[index].x + delta;
  return pts;
}

// Sorts rational points into cyclic order around their centroid using exact
// comparisons only. Returns false when the sorted order is not strictly
// convex.
bool convex_cyclic_order(Penta<Rat>& pts);

}  // namespace pentagram
