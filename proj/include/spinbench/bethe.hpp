#pragma once

// Bethe-equation residuals in the general and distinguished-gradation
// forms, the transfer-matrix eigenvalue function, residue-based
// analyticity checks, and a damped multi-start Newton solver for the
// nested system.

#include <cstdint>
#include <vector>

#include "spinbench/chain.hpp"

namespace spinbench {

// Root families u_j^{(k)}, one list per nesting level k = 1..m+n-1.
struct BetheRootSet {
  std::vector<std::vector<Complex>> levels;

  static BetheRootSet empty(int num_levels);

  int num_levels() const { return static_cast<int>(levels.size()); }
  int count(int k) const;  // M_k, 1-based level, 0 outside 1..num_levels
  int total() const;
  std::vector<int> counts() const;

  // sort each level by (re, im)
  void canonicalize();
  // true if two roots of one level coincide within tol
  bool has_level_collision(double tol = 1e-8) const;
};

struct SolverConfig {
  int seeds = 64;
  double seed_radius = 3.0;
  int max_iterations = 200;
  double residual_tol = 1e-10;
  double dedupe_tol = 1e-8;
  std::uint64_t rng_seed = 12345;
};

struct BetheSolution {
  BetheRootSet roots;
  double residual = 0.0;   // max |LHS - RHS| over all equations
  bool singular = false;   // a root collides with an inhomogeneity
};

// Thrown when a residual denominator vanishes; the message names the
// offending factor.
struct SingularConfigurationError : std::domain_error {
  using std::domain_error::domain_error;
};

// One complex residual LHS - RHS per root (level-major order).
std::vector<Complex> bethe_residual_general(const ChainSpec& spec,
                                            const BetheRootSet& roots);

// Same system written through the single function f of the distinguished
// gradation (first level / bosonic bulk / fermionic node / fermionic bulk /
// last level).
std::vector<Complex> bethe_residual_distinguished(const ChainSpec& spec,
                                                  const BetheRootSet& roots);

// Transfer-matrix eigenvalue at spectral point u for the given roots.
Complex eigenvalue_lambda(const ChainSpec& spec, const BetheRootSet& roots,
                          Complex u);

// Same eigenvalue through the distinguished-gradation expression.
Complex eigenvalue_lambda_distinguished(const ChainSpec& spec,
                                        const BetheRootSet& roots, Complex u);

// |residue| of eigenvalue_lambda at u = u_j^{(k)} (1-based level and root
// index), estimated by a small contour integral.
double analyticity_check(const ChainSpec& spec, const BetheRootSet& roots,
                         int level, int j);

// All distinct root sets found by damped multi-start Newton, canonicalized
// and deduplicated. No completeness claim is made.
std::vector<BetheSolution> solve_bethe(const ChainSpec& spec,
                                       const std::vector<int>& counts,
                                       const SolverConfig& cfg);

}  // namespace spinbench
