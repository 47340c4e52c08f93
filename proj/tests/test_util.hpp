#pragma once

#include <random>

#include "spinbench/graded.hpp"

namespace spinbench::testing {

inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Complex rand_complex(std::mt19937_64& rng, double spread = 2.0) {
  return {spread * (u01(rng) - 0.5), spread * (u01(rng) - 0.5)};
}

// random operator with homogeneous Z2 grade on a single factor
inline OperatorMatrix random_homogeneous(const GradedSpaceSpec& space,
                                         int grade, std::mt19937_64& rng) {
  OperatorMatrix out({space});
  for (int i = 1; i <= space.dim(); ++i)
    for (int j = 1; j <= space.dim(); ++j)
      if (((space.grade(i) + space.grade(j)) & 1) == grade)
        out.matrix()(i - 1, j - 1) = rand_complex(rng);
  return out;
}

inline OperatorMatrix random_operator(const GradedSpaceSpec& space,
                                      std::mt19937_64& rng) {
  OperatorMatrix out({space});
  for (int i = 0; i < space.dim(); ++i)
    for (int j = 0; j < space.dim(); ++j)
      out.matrix()(i, j) = rand_complex(rng);
  return out;
}

// ungraded reference Kronecker product
inline Matrix plain_kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b;
  return out;
}

}  // namespace spinbench::testing
