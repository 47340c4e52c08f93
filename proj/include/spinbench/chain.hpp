#pragma once

// Closed chain of L fundamental-representation sites with inhomogeneities:
// monodromy and transfer matrices, generator blocks t_ij(u), pseudo-vacuum,
// weight functions and the Cartan action on excitation sectors.

#include <vector>

#include "spinbench/rmatrix.hpp"

namespace spinbench {

struct ChainSpec {
  AlgebraFamily family;
  int L = 1;
  std::vector<Complex> inhomogeneities;  // a_l, length L

  ChainSpec(AlgebraFamily family_, int L_, std::vector<Complex> a);

  int site_dim() const { return family.dim(); }
  // factors of the quantum space (L copies of the site space)
  std::vector<GradedSpaceSpec> site_factors() const;
  // dimension of the quantum space, (m+n)^L
  Eigen::Index hilbert_dim() const;
};

// Per-site weights Lambda_j(u) = prod_l Lambda_j^{(l)}(u) of the
// fundamental evaluation representations.
class WeightFunctions {
 public:
  explicit WeightFunctions(ChainSpec spec);
  Complex lambda(int j, Complex u) const;

 private:
  ChainSpec spec_;
  StructureFunctions s_;
};

WeightFunctions weight_lambda(const ChainSpec& spec);

// Two-factor matrix R(u, a_l): the fundamental evaluation of T(u) at site l
// (1-based l).
OperatorMatrix site_factor(const ChainSpec& spec, int l, Complex u);

// Monodromy on factors [aux, site1, ..., siteL]. The site-1 factor acts
// first on states (it sits rightmost in the matrix product).
OperatorMatrix build_monodromy(const ChainSpec& spec, Complex u);

// Quantum-space block <e_i| T |e_j> of a monodromy whose auxiliary space is
// factor 0, with the grading sign restoring the algebra generator.
OperatorMatrix extract_tij(const OperatorMatrix& T, int i, int j);

// Supertrace of the monodromy over the auxiliary space.
OperatorMatrix build_transfer(const ChainSpec& spec, Complex u);

// Pseudo-vacuum e_1^{(x) L}.
Vector vacuum(const ChainSpec& spec);

// Predicted Cartan eigenvalue on a Bethe vector with excitation counts M_k
// (k = 1..m+n-1). For rational kinds this is the eigenvalue of the degree-1
// generator; for trig kinds the eigenvalue of q^{h_j}.
Complex cartan_eigenvalue(const ChainSpec& spec, int j,
                          const std::vector<int>& counts);

// Matrix of the Cartan generator used by cartan_eigenvalue: the u^{L-1}
// coefficient of t_jj(u) shifted by sum_l a_l for rational kinds, the
// diagonal operator q^{h_j} for trig kinds.
OperatorMatrix cartan_generator(const ChainSpec& spec, int j);

// Finite-dimensional-irreducibility test for a highest weight tuple:
// lambda_i - lambda_{i+1} must be a nonnegative integer on every index
// range required by the kind (the fermionic gap i = m is unconstrained).
bool validate_weights(FamilyKind kind, const GradedSpaceSpec& space,
                      const std::vector<double>& lambda);

}  // namespace spinbench
