#include <doctest.h>

#include "core/generate.hpp"
#include "test_util.hpp"

using namespace pentagram;
using namespace pentagram::testing;

namespace {

Point<Rat> rp(long nx, long dx, long ny, long dy) {
  return Point<Rat>{Rat(nx, dx), Rat(ny, dy)};
}

template <class S>
Penta<S> rotated(const Penta<S>& a, int shift) {
  Penta<S> out;
  for (int i = 0; i < 5; ++i) out[i] = a[mod5(i + shift)];
  return out;
}

}  // namespace

TEST_CASE("side_intersections matches the direct two-line solve on the fixture") {
  Penta<Rat> B = side_intersections(fixture_pentagon());
  // frozen from solving each line pair independently (B_1..B_5 = B[0..4])
  CHECK(B[0] == rp(-19, 7, 57, 7));
  CHECK(B[1] == rp(-11, 2, 0, 1));
  CHECK(B[2] == rp(2, 1, -6, 1));
  CHECK(B[3] == rp(19, 2, 0, 1));
  CHECK(B[4] == rp(47, 7, 57, 7));
  // every B lies on both of its defining side lines
  const Penta<Rat> A = fixture_pentagon();
  for (int i = 0; i < 5; ++i) {
    Line<Rat> l1 = line_through(A[i], A[mod5(i + 1)]);
    Line<Rat> l2 = line_through(A[mod5(i + 2)], A[mod5(i + 3)]);
    CHECK(l1.eval(B[mod5(i + 3)]) == 0);
    CHECK(l2.eval(B[mod5(i + 3)]) == 0);
  }
}

TEST_CASE("side_intersections axis-aligned pair fixture") {
  // A1A2 on y=0 and A3A4 on x=2 force B_4 = (2, 0)
  Penta<Rat> A{Point<Rat>{Rat(0), Rat(0)}, Point<Rat>{Rat(1), Rat(0)}, Point<Rat>{Rat(2), Rat(1)},
               Point<Rat>{Rat(2), Rat(3)}, Point<Rat>{Rat(-1), Rat(2)}};
  Penta<Rat> B = side_intersections(A);
  CHECK(B[3] == Point<Rat>{Rat(2), Rat(0)});
}

TEST_CASE("side_intersections reports the failing index") {
  // A_1 = A_2 makes the first side line undefined
  Penta<Rat> A = fixture_pentagon();
  A[1] = A[0];
  try {
    side_intersections(A);
    FAIL("expected CoincidentPoints");
  } catch (const GeomError& e) {
    CHECK(e.code() == GeomErrc::CoincidentPoints);
    CHECK(e.index() == 0);
  }
}

TEST_CASE("miquel points lie exactly on both defining circles") {
  GeneratorSpec spec;
  spec.seed = 555;
  for (int trial = 0; trial < 10; ++trial) {
    Penta<Rat> A = random_pentagon(spec, trial);
    PentagramConfig<Rat> cfg = build_pentagram(A);
    for (int i = 0; i < 5; ++i) {
      CHECK(cfg.miquel_circles[i].gap(cfg.C[mod5(i + 1)]) == 0);
      CHECK(cfg.miquel_circles[mod5(i + 1)].gap(cfg.C[mod5(i + 1)]) == 0);
    }
  }
}

TEST_CASE("the C points of random rational pentagons are exactly concyclic") {
  GeneratorSpec spec;
  spec.seed = 5550;
  for (int trial = 0; trial < 10; ++trial) {
    PentagramConfig<Rat> cfg = build_pentagram(random_pentagon(spec, trial));
    // oracle: every 4-subset determinant is the exact rational zero
    CHECK(all_subsets_concyclic(cfg.C));
    CircleCheck<Rat> w = concyclic_many<Rat>(std::span<const Point<Rat>>(cfg.C.data(), 5));
    CHECK(w.verdict == Verdict::Pass);
    CHECK(w.residual == 0.0);
  }
}

TEST_CASE("miquel circle construction reports the index of a collinear triple") {
  Penta<Rat> A = fixture_pentagon();
  Penta<Rat> B = side_intersections(A);
  B[2] = Point<Rat>{Rat(7), Rat(0)};  // on line A_1 A_2, so (A_1, A_2, B_3) is collinear
  try {
    miquel_circles(A, B);
    FAIL("expected CollinearPoints");
  } catch (const GeomError& e) {
    CHECK(e.code() == GeomErrc::CollinearPoints);
    CHECK(e.index() == 0);
  }
}

TEST_CASE("K and L centers are exactly equidistant from their defining triples") {
  GeneratorSpec spec;
  spec.seed = 556;
  for (int trial = 0; trial < 10; ++trial) {
    Penta<Rat> A = random_pentagon(spec, trial);
    PentagramConfig<Rat> cfg = build_pentagram(A);
    for (int i = 0; i < 5; ++i) {
      const Point<Rat>& K = cfg.K[mod5(i + 2)];
      Rat d1 = detail::dist2(K, A[i]);
      CHECK(d1 == detail::dist2(K, A[mod5(i + 1)]));
      CHECK(d1 == detail::dist2(K, cfg.B[mod5(i + 2)]));
      const Point<Rat>& L = cfg.L[i];
      Rat d2 = detail::dist2(L, cfg.C[mod5(i + 1)]);
      CHECK(d2 == detail::dist2(L, cfg.B[mod5(i + 2)]));
      CHECK(d2 == detail::dist2(L, cfg.B[mod5(i + 3)]));
    }
  }
}

TEST_CASE("dual five-point circles hold exactly and the canary stays quiet") {
  GeneratorSpec spec;
  spec.seed = 557;
  for (int trial = 0; trial < 10; ++trial) {
    Penta<Rat> A = random_pentagon(spec, trial);
    PentagramConfig<Rat> cfg = build_pentagram(A);
    DualCenters<Rat> dual = dual_centers(cfg.A, cfg.B, cfg.C);
    CHECK_NOTHROW(require_five_point_circles(dual));
    for (int i = 0; i < 5; ++i) {
      CHECK(dual.five_point[i].verdict == Verdict::Pass);
      CHECK(dual.circles[i].gap(cfg.C[mod5(i + 2)]) == 0);
      CHECK(dual.circles[i].gap(cfg.B[mod5(i + 4)]) == 0);
      CHECK(dual.circles[i].center == dual.K2[i]);
    }
  }
}

TEST_CASE("takada construction on the frozen unit-circle fixture") {
  // t in {-1, -1/3, 0, 1/2, 1}: already sorted, hence convex cyclic order
  Penta<Rat> A{on_circle(Rat(-1)), on_circle(Rat(-1, 3)), on_circle(Rat(0)),
               on_circle(Rat(1, 2)), on_circle(Rat(1))};
  CHECK(A[0] == rp(0, 1, -1, 1));
  CHECK(A[1] == rp(4, 5, -3, 5));
  CHECK(A[2] == rp(1, 1, 0, 1));
  CHECK(A[3] == rp(3, 5, 4, 5));
  CHECK(A[4] == rp(0, 1, 1, 1));

  TakadaConfig<Rat> t = takada_build(A);
  for (int i = 0; i < 5; ++i) {
    // Q_i on both of its defining diagonals
    Line<Rat> d1 = line_through(A[i], A[mod5(i + 2)]);
    Line<Rat> d2 = line_through(A[mod5(i + 1)], A[mod5(i + 3)]);
    CHECK(d1.eval(t.Q[i]) == 0);
    CHECK(d2.eval(t.Q[i]) == 0);
    CHECK(t.q_incidence[i].verdict == Verdict::Pass);
  }
  // the five second points are exactly concyclic (all 4-subset determinants)
  CHECK(all_subsets_concyclic(t.second_pts));
}

TEST_CASE("takada rejects a non-cyclic pentagon") {
  CHECK_THROWS_AS(takada_build(fixture_pentagon()), GeomError);
  try {
    takada_build(fixture_pentagon());
  } catch (const GeomError& e) {
    CHECK(e.code() == GeomErrc::NotConcyclic);
  }
}

TEST_CASE("k-star points satisfy their line and circle incidences exactly") {
  GeneratorSpec spec;
  spec.seed = 558;
  Penta<Rat> A = random_pentagon(spec, 0);
  PentagramConfig<Rat> cfg = build_pentagram(A);
  KStarPoints<Rat> ks = k_star_points(cfg.K);
  for (int i = 0; i < 5; ++i) {
    CHECK(line_through(cfg.K[i], cfg.K[mod5(i + 2)]).eval(ks.D[i]) == 0);
    CHECK(line_through(cfg.K[mod5(i + 1)], cfg.K[mod5(i + 3)]).eval(ks.D[i]) == 0);
    // E_i on circles (D_i D_{i+1} K_{i+2}) and (D_{i+1} D_{i+2} K_{i+3})
    CHECK(ks.circles[i].gap(ks.E[i]) == 0);
    CHECK(ks.circles[mod5(i + 1)].gap(ks.E[i]) == 0);
  }
}

TEST_CASE("k-star rejects coincident centers") {
  Penta<Rat> K = fixture_pentagon();
  K[2] = K[0];
  CHECK_THROWS_AS(k_star_points(K), GeomError);
}

TEST_CASE("construction is equivariant under rational similarities") {
  // rotation by the 3-4-5 angle, scaling by 2, then a translation
  Rat c(3, 5), s(4, 5);
  auto map = [&](const Point<Rat>& p) {
    return Point<Rat>{Rat(2) * (c * p.x - s * p.y) + Rat(1, 3),
                      Rat(2) * (s * p.x + c * p.y) - Rat(5, 7)};
  };
  GeneratorSpec spec;
  spec.seed = 559;
  for (int trial = 0; trial < 5; ++trial) {
    Penta<Rat> A = random_pentagon(spec, trial);
    Penta<Rat> Am;
    for (int i = 0; i < 5; ++i) Am[i] = map(A[i]);
    PentagramConfig<Rat> cfg = build_pentagram(A);
    PentagramConfig<Rat> cfm = build_pentagram(Am);
    for (int i = 0; i < 5; ++i) {
      CHECK(cfm.B[i] == map(cfg.B[i]));
      CHECK(cfm.C[i] == map(cfg.C[i]));
      CHECK(cfm.K[i] == map(cfg.K[i]));
      CHECK(cfm.L[i] == map(cfg.L[i]));
    }
    KStarPoints<Rat> ks = k_star_points(cfg.K);
    KStarPoints<Rat> ksm = k_star_points(cfm.K);
    for (int i = 0; i < 5; ++i) {
      CHECK(ksm.D[i] == map(ks.D[i]));
      CHECK(ksm.E[i] == map(ks.E[i]));
    }
  }
}

TEST_CASE("cyclic relabeling of A shifts every derived array by the same amount") {
  GeneratorSpec spec;
  spec.seed = 560;
  Penta<Rat> A = random_pentagon(spec, 0);
  PentagramConfig<Rat> base = build_pentagram(A);
  for (int shift = 1; shift < 5; ++shift) {
    PentagramConfig<Rat> moved = build_pentagram(rotated(A, shift));
    CHECK(moved.B == rotated(base.B, shift));
    CHECK(moved.C == rotated(base.C, shift));
    CHECK(moved.K == rotated(base.K, shift));
    CHECK(moved.L == rotated(base.L, shift));
  }
}

TEST_CASE("distinguished points: star anchor gives exactly collinear O, J, X") {
  GeneratorSpec spec;
  spec.seed = 561;
  for (int trial = 0; trial < 5; ++trial) {
    StarPentagon sp = pentagon_from_star(spec, trial);
    PentagramConfig<Rat> cfg = build_pentagram(sp.A);
    Distinguished<Rat> d = distinguished_points(cfg, Anchor::BCircle);
    CHECK(collinear3(d.O, d.J, d.X).verdict == Verdict::Pass);
  }
}

TEST_CASE("distinguished points report a non-concyclic anchor") {
  PentagramConfig<Rat> cfg = build_pentagram(fixture_pentagon());
  CHECK_THROWS_AS(distinguished_points(cfg, Anchor::BCircle), GeomError);
  try {
    distinguished_points(cfg, Anchor::BCircle);
  } catch (const GeomError& e) {
    CHECK(e.code() == GeomErrc::NotConcyclic);
  }
}

TEST_CASE("regular pentagon: five-fold symmetric orbits in float mode") {
  Penta<double> A;
  for (int k = 0; k < 5; ++k) {
    double th = 2.0 * 3.14159265358979323846 * k / 5.0;
    A[k] = Point<double>{std::cos(th), std::sin(th)};
  }
  PentagramConfig<double> cfg = build_pentagram(A);
  auto radius_spread = [](const Penta<double>& pts) {
    double lo = 1e300, hi = 0;
    for (const auto& p : pts) {
      double r = std::hypot(p.x, p.y);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return hi - lo;
  };
  CHECK(radius_spread(cfg.B) < 1e-12);
  CHECK(radius_spread(cfg.C) < 1e-12);
  CHECK(radius_spread(cfg.K) < 1e-12);
  CHECK(radius_spread(cfg.L) < 1e-12);
  // C orbit concyclic about the center
  Circle<double> w = circumcircle(cfg.C[0], cfg.C[1], cfg.C[2]);
  CHECK(std::hypot(w.center.x, w.center.y) < 1e-12);
}
