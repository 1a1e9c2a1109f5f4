#pragma once

// Numeric search for the five-circles-chain hypothesis class: pentagons whose
// five Miquel-circle centers K are concyclic (a codimension-2 manifold in the
// 10-dimensional pentagon space). Gauss-Newton with minimum-norm steps from
// a perturbed-regular start; the regular pentagon sits on the manifold by
// symmetry, so the basin is nonempty.

#include <cstdint>
#include <optional>
#include <vector>

#include "construct.hpp"

namespace pentagram {

struct SolveOptions {
  std::uint64_t seed = 0;
  int max_iterations = 200;
  double tolerance = 1e-12;   // converged := final_residual < tolerance
  double start_noise = 0.1;   // per-coordinate, uniform, applied to the regular pentagon
};

struct SolveReport {
  int iterations = 0;
  double final_residual = 0.0;
  std::vector<double> step_norms;          // accepted damped-step 2-norms
  std::vector<double> residual_history;    // residual after each accepted step
  bool converged = false;
};

struct SolveResult {
  Penta<double> pentagon;
  SolveReport report;
};

// Residual pair driven to zero: the signed normalized gaps of K_4 and K_5
// against the circle through K_1, K_2, K_3 (max |.| is the reported
// residual, i.e. the concyclic4 fit residual of the two 4-subsets).
std::array<double, 2> k_concyclicity_gaps(const Penta<double>& A);

SolveResult solve_concyclic_centers(const SolveOptions& opts,
                                    const std::optional<Penta<double>>& start = std::nullopt);

Penta<double> regular_pentagon(double radius = 1.0);

}  // namespace pentagram
