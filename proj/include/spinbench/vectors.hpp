#pragma once

// Bethe vector constructors: the explicit rank-2/3/4 operator-product
// formulas, the general supertrace formula, the Shapovalov pairing and the
// orthogonality test built on it.

#include <string>

#include "spinbench/bethe.hpp"

namespace spinbench {

struct BetheVector {
  Vector state;
  std::string provenance;

  double norm() const { return state.norm(); }
};

struct PairingReport {
  Complex value{0.0, 0.0};
  bool shapovalov_verified = false;
};

struct OrthogonalityReport {
  PairingReport pairing;
  bool distinct_multisets = false;
  bool pass = false;
  std::string detail;
};

// (-1)^{M [2]} t_12(u_1) ... t_12(u_M) Omega; requires only level-1
// excitations.
BetheVector phi_rank2(const ChainSpec& spec,
                      const std::vector<Complex>& level1);

// Two-term sum for one level-2 excitation on top of M level-1 ones
// (m+n >= 3; higher counts zero).
BetheVector phi_rank3(const ChainSpec& spec, const std::vector<Complex>& level1,
                      Complex level2);

// Four-term sum for one level-2 and one level-3 excitation (m+n >= 4).
BetheVector phi_rank4(const ChainSpec& spec, const std::vector<Complex>& level1,
                      Complex level2, Complex level3);

inline constexpr Eigen::Index kDefaultSupertraceCap = 2187;

// General constructor: supertrace over M auxiliary spaces of the ordered
// monodromy product times the normalized exchange factors and the lowering
// string. Requires (m+n)^{M+L} <= cap.
BetheVector phi_supertrace(const ChainSpec& spec, const BetheRootSet& roots,
                           Eigen::Index cap = kDefaultSupertraceCap);

// Coordinate bilinear pairing composed with site-order reversal; the
// report carries the numerical verification of the exchange property
// <t_ij(u) x, y> = <x, t_ji(u) y> for this chain.
PairingReport shapovalov_pairing(const ChainSpec& spec, const BetheVector& x,
                                 const BetheVector& y);

// Pairing of the Bethe vectors of two on-shell root sets, with the
// Prop-5.1 zero/nonzero assertion. Inputs are normalized before pairing.
OrthogonalityReport orthogonality_check(const ChainSpec& spec,
                                        const BetheRootSet& rootsA,
                                        const BetheRootSet& rootsB);

// Constructor dispatch: the explicit formula when the counts pattern
// admits one, otherwise the supertrace formula.
BetheVector bethe_vector(const ChainSpec& spec, const BetheRootSet& roots);

}  // namespace spinbench
