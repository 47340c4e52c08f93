#pragma once

// Dense complex linear algebra on ordered tensor products of Z2-graded
// spaces. All Koszul signs are applied when operators are constructed
// (kron_graded / embed_at), so OperatorMatrix entries are plain complex
// numbers and downstream matrix products need no sign bookkeeping.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace spinbench {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// A C^{m|n} factor with the distinguished grading: indices 1..m are even,
// m+1..m+n are odd.
struct GradedSpaceSpec {
  int m = 0;
  int n = 0;

  GradedSpaceSpec() = default;
  GradedSpaceSpec(int m_, int n_);

  int dim() const { return m + n; }

  // grade of basis index i, 1-based
  int grade(int i) const;

  bool operator==(const GradedSpaceSpec&) const = default;
};

// Dense operator on an ordered tensor product of graded factors. The basis
// is the lexicographic product basis, factor 0 most significant. Factor
// order is fixed at construction.
class OperatorMatrix {
 public:
  OperatorMatrix(std::vector<GradedSpaceSpec> factors, Matrix entries);

  // zero operator
  explicit OperatorMatrix(std::vector<GradedSpaceSpec> factors);

  static OperatorMatrix identity(std::vector<GradedSpaceSpec> factors);

  const std::vector<GradedSpaceSpec>& factors() const { return factors_; }
  int num_factors() const { return static_cast<int>(factors_.size()); }
  Eigen::Index dim() const { return mat_.rows(); }

  const Matrix& matrix() const { return mat_; }
  Matrix& matrix() { return mat_; }

  // total Z2 grade of a basis multi-index (flat, 0-based)
  int basis_grade(Eigen::Index idx) const;

  // decode flat index into per-factor digits (0-based)
  void decode(Eigen::Index idx, std::vector<int>& digits) const;
  Eigen::Index encode(const std::vector<int>& digits) const;

  bool same_shape(const OperatorMatrix& other) const;

 private:
  std::vector<GradedSpaceSpec> factors_;
  Matrix mat_;
};

// Single-factor elementary matrix E_ij (1 at (i,j), zero elsewhere),
// i, j 1-based. Its grade is grade(i)+grade(j).
OperatorMatrix elementary(const GradedSpaceSpec& space, int i, int j);

// Graded tensor product. Entries pick up the Koszul sign
// (-1)^{[k]([i]+[j])} where i,j are row/column indices of A and k the row
// index of B. For purely even spaces this is the ordinary Kronecker
// product.
OperatorMatrix kron_graded(const OperatorMatrix& A, const OperatorMatrix& B);

// Embed A (acting on the factors listed in `positions`, strictly
// increasing, 0-based) into the chain of `chain_factors`, identity on the
// remaining slots. Koszul signs are applied for odd-grade components of A
// straddling intermediate factors.
OperatorMatrix embed_at(const OperatorMatrix& A,
                        const std::vector<GradedSpaceSpec>& chain_factors,
                        const std::vector<int>& positions);

// Graded permutation P = sum_ij (-1)^{[j]} E_ij (x) E_ji on space (x) space,
// P(a (x) b) = (-1)^{[a][b]} b (x) a on homogeneous vectors.
OperatorMatrix permutation_operator(const GradedSpaceSpec& space);

// Contract one factor with weight (-1)^{[i]} on its diagonal index; the
// result acts on the remaining factors in their original order.
OperatorMatrix partial_supertrace(const OperatorMatrix& A, int factor);

// Full supertrace of a single- or multi-factor operator.
Complex supertrace(const OperatorMatrix& A);

double frobenius_norm(const OperatorMatrix& A);
double frobenius_distance(const OperatorMatrix& A, const OperatorMatrix& B);

// ||A-B||_F <= tol * max(1, ||A||_F, ||B||_F)
bool approx_equal(const OperatorMatrix& A, const OperatorMatrix& B,
                  double tol = 1e-10);

}  // namespace spinbench
