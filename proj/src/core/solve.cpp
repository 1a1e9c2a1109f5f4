#include "solve.hpp"

#include <cmath>

#include "generate.hpp"

namespace pentagram {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::array<double, 10> flatten(const Penta<double>& A) {
  std::array<double, 10> x{};
  for (int i = 0; i < 5; ++i) {
    x[2 * i] = A[i].x;
    x[2 * i + 1] = A[i].y;
  }
  return x;
}

Penta<double> unflatten(const std::array<double, 10>& x) {
  Penta<double> A;
  for (int i = 0; i < 5; ++i) A[i] = Point<double>{x[2 * i], x[2 * i + 1]};
  return A;
}

double config_diameter(const Penta<double>& A) {
  return diameter<double>(std::span<const Point<double>>(A.data(), 5));
}

double max_abs(const std::array<double, 2>& r) { return std::max(std::fabs(r[0]), std::fabs(r[1])); }

}  // namespace

Penta<double> regular_pentagon(double radius) {
  Penta<double> A;
  for (int k = 0; k < 5; ++k) {
    double th = 2.0 * kPi * k / 5.0;
    A[k] = Point<double>{radius * std::cos(th), radius * std::sin(th)};
  }
  return A;
}

std::array<double, 2> k_concyclicity_gaps(const Penta<double>& A) {
  Penta<double> B = side_intersections(A);
  Penta<double> K = centers_k(miquel_circles(A, B));
  Circle<double> w = circumcircle(K[0], K[1], K[2]);
  return {w.gap(K[3]) / w.r2, w.gap(K[4]) / w.r2};
}

SolveResult solve_concyclic_centers(const SolveOptions& opts,
                                    const std::optional<Penta<double>>& start) {
  Penta<double> A;
  if (start) {
    A = *start;
  } else {
    A = regular_pentagon();
    Rng rng(derive_seed(opts.seed, 0) ^ 0xE7037ED1A0B428DBULL);
    for (auto& p : A) {
      // uniform in [-noise, noise], from the raw 53-bit mantissa
      auto u = [&] { return (static_cast<double>(rng.next() >> 11) / 9007199254740992.0) * 2.0 - 1.0; };
      p.x += opts.start_noise * u();
      p.y += opts.start_noise * u();
    }
  }

  auto eval = [](const Penta<double>& P) -> std::array<double, 2> {
    try {
      return k_concyclicity_gaps(P);
    } catch (const GeomError& e) {
      throw GeomError(GeomErrc::DegenerateDuringSolve, e.what(), e.index());
    }
  };

  SolveResult out;
  SolveReport& rep = out.report;
  std::array<double, 10> x = flatten(A);
  std::array<double, 2> r = eval(A);
  double rn = max_abs(r);
  // iterate a little past the convergence tolerance so downstream residuals
  // inherit slack
  const double stop_floor = std::min(opts.tolerance * 1e-2, 1e-14);

  for (rep.iterations = 0; rep.iterations < opts.max_iterations && rn >= stop_floor;
       ++rep.iterations) {
    double h = 1e-6 * config_diameter(unflatten(x));
    double J[2][10];
    for (int j = 0; j < 10; ++j) {
      std::array<double, 10> xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      std::array<double, 2> rp = eval(unflatten(xp));
      std::array<double, 2> rm = eval(unflatten(xm));
      J[0][j] = (rp[0] - rm[0]) / (2 * h);
      J[1][j] = (rp[1] - rm[1]) / (2 * h);
    }
    // minimum-norm Gauss-Newton step for the underdetermined system:
    // delta = -J^T (J J^T)^{-1} r
    double a = 0, b = 0, c = 0;
    for (int j = 0; j < 10; ++j) {
      a += J[0][j] * J[0][j];
      b += J[0][j] * J[1][j];
      c += J[1][j] * J[1][j];
    }
    double det = a * c - b * b;
    if (!(std::fabs(det) > 0)) {
      throw GeomError(GeomErrc::DegenerateDuringSolve, "singular Gauss-Newton normal matrix");
    }
    double w0 = (c * r[0] - b * r[1]) / det;
    double w1 = (-b * r[0] + a * r[1]) / det;
    std::array<double, 10> d;
    for (int j = 0; j < 10; ++j) d[j] = -(J[0][j] * w0 + J[1][j] * w1);

    // damp by halving until the residual decreases
    double lambda = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 30; ++halvings, lambda *= 0.5) {
      std::array<double, 10> xn = x;
      for (int j = 0; j < 10; ++j) xn[j] += lambda * d[j];
      std::array<double, 2> rn2;
      try {
        rn2 = eval(unflatten(xn));
      } catch (const GeomError&) {
        continue;  // stepped into a degenerate configuration: shorten
      }
      if (max_abs(rn2) < rn) {
        double norm2 = 0;
        for (int j = 0; j < 10; ++j) norm2 += lambda * d[j] * lambda * d[j];
        rep.step_norms.push_back(std::sqrt(norm2));
        x = xn;
        r = rn2;
        rn = max_abs(rn2);
        rep.residual_history.push_back(rn);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // stalled
  }

  rep.final_residual = rn;
  rep.converged = rn < opts.tolerance;
  out.pentagon = unflatten(x);
  return out;
}

}  // namespace pentagram
