#include "spinbench/graded.hpp"

#include <stdexcept>
#include <string>

namespace spinbench {

namespace {

Eigen::Index product_dim(const std::vector<GradedSpaceSpec>& factors) {
  Eigen::Index d = 1;
  for (const auto& f : factors) d *= f.dim();
  return d;
}

}  // namespace

GradedSpaceSpec::GradedSpaceSpec(int m_, int n_) : m(m_), n(n_) {
  if (m < 0 || n < 0 || m + n < 1)
    throw std::invalid_argument("GradedSpaceSpec: need m,n >= 0 and m+n >= 1");
}

int GradedSpaceSpec::grade(int i) const {
  if (i < 1 || i > m + n)
    throw std::out_of_range("GradedSpaceSpec::grade: index " +
                            std::to_string(i) + " outside 1.." +
                            std::to_string(m + n));
  return i <= m ? 0 : 1;
}

OperatorMatrix::OperatorMatrix(std::vector<GradedSpaceSpec> factors,
                               Matrix entries)
    : factors_(std::move(factors)), mat_(std::move(entries)) {
  const Eigen::Index d = product_dim(factors_);
  if (mat_.rows() != d || mat_.cols() != d)
    throw std::invalid_argument("OperatorMatrix: entries must be " +
                                std::to_string(d) + " x " + std::to_string(d));
}

OperatorMatrix::OperatorMatrix(std::vector<GradedSpaceSpec> factors)
    : factors_(std::move(factors)) {
  const Eigen::Index d = product_dim(factors_);
  mat_ = Matrix::Zero(d, d);
}

OperatorMatrix OperatorMatrix::identity(std::vector<GradedSpaceSpec> factors) {
  const Eigen::Index d = product_dim(factors);
  return OperatorMatrix(std::move(factors), Matrix::Identity(d, d));
}

int OperatorMatrix::basis_grade(Eigen::Index idx) const {
  int g = 0;
  for (int f = num_factors() - 1; f >= 0; --f) {
    const int d = factors_[f].dim();
    const int digit = static_cast<int>(idx % d);
    g += factors_[f].grade(digit + 1);
    idx /= d;
  }
  return g & 1;
}

void OperatorMatrix::decode(Eigen::Index idx, std::vector<int>& digits) const {
  digits.resize(factors_.size());
  for (int f = num_factors() - 1; f >= 0; --f) {
    const int d = factors_[f].dim();
    digits[f] = static_cast<int>(idx % d);
    idx /= d;
  }
}

Eigen::Index OperatorMatrix::encode(const std::vector<int>& digits) const {
  Eigen::Index idx = 0;
  for (size_t f = 0; f < factors_.size(); ++f)
    idx = idx * factors_[f].dim() + digits[f];
  return idx;
}

bool OperatorMatrix::same_shape(const OperatorMatrix& other) const {
  return factors_ == other.factors_;
}

OperatorMatrix elementary(const GradedSpaceSpec& space, int i, int j) {
  const int d = space.dim();
  if (i < 1 || i > d || j < 1 || j > d)
    throw std::out_of_range("elementary: index outside 1.." +
                            std::to_string(d));
  Matrix m = Matrix::Zero(d, d);
  m(i - 1, j - 1) = 1.0;
  return OperatorMatrix({space}, std::move(m));
}

OperatorMatrix kron_graded(const OperatorMatrix& A, const OperatorMatrix& B) {
  std::vector<GradedSpaceSpec> factors = A.factors();
  factors.insert(factors.end(), B.factors().begin(), B.factors().end());

  const Eigen::Index da = A.dim(), db = B.dim();
  Matrix out = Matrix::Zero(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    const int gi = A.basis_grade(i);
    for (Eigen::Index j = 0; j < da; ++j) {
      const Complex aij = A.matrix()(i, j);
      if (aij == 0.0) continue;
      const int gij = (gi + A.basis_grade(j)) & 1;
      for (Eigen::Index k = 0; k < db; ++k) {
        const double sign = (gij && B.basis_grade(k)) ? -1.0 : 1.0;
        for (Eigen::Index l = 0; l < db; ++l) {
          const Complex bkl = B.matrix()(k, l);
          if (bkl == 0.0) continue;
          out(i * db + k, j * db + l) = sign * aij * bkl;
        }
      }
    }
  }
  return OperatorMatrix(std::move(factors), std::move(out));
}

OperatorMatrix embed_at(const OperatorMatrix& A,
                        const std::vector<GradedSpaceSpec>& chain_factors,
                        const std::vector<int>& positions) {
  const int nf = static_cast<int>(chain_factors.size());
  if (positions.size() != A.factors().size())
    throw std::invalid_argument("embed_at: positions/factors count mismatch");
  for (size_t p = 0; p < positions.size(); ++p) {
    if (positions[p] < 0 || positions[p] >= nf)
      throw std::out_of_range("embed_at: position out of range");
    if (p > 0 && positions[p] <= positions[p - 1])
      throw std::invalid_argument("embed_at: positions must strictly increase");
    if (!(chain_factors[positions[p]] == A.factors()[p]))
      throw std::invalid_argument("embed_at: factor shape mismatch at slot " +
                                  std::to_string(positions[p]));
  }

  std::vector<bool> is_target(nf, false);
  for (int p : positions) is_target[p] = true;

  OperatorMatrix out(chain_factors);
  const Eigen::Index D = out.dim();
  const Eigen::Index dA = A.dim();

  // strides of each chain factor in the flat index
  std::vector<Eigen::Index> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f)
    stride[f] = stride[f + 1] * chain_factors[f + 1].dim();

  std::vector<int> xd, ra, ca;
  for (Eigen::Index x = 0; x < D; ++x) {
    out.decode(x, xd);
    // row multi-index of A read off the target slots
    Eigen::Index rowA = 0;
    for (size_t p = 0; p < positions.size(); ++p)
      rowA = rowA * A.factors()[p].dim() + xd[positions[p]];

    for (Eigen::Index colA = 0; colA < dA; ++colA) {
      const Complex a = A.matrix()(rowA, colA);
      if (a == 0.0) continue;
      A.decode(rowA, ra);
      A.decode(colA, ca);

      // column index: x with target digits replaced by colA digits
      Eigen::Index y = x;
      for (size_t p = 0; p < positions.size(); ++p)
        y += (ca[p] - ra[p]) * stride[positions[p]];

      // Koszul sign: odd components of A crossing intermediate factors.
      // For each non-target slot q, weight grade(x_q) by the total grade of
      // A components sitting at positions before q.
      int s = 0;
      int gprefix = 0;
      size_t p = 0;
      for (int q = 0; q < nf; ++q) {
        if (is_target[q]) {
          const auto& f = A.factors()[p];
          gprefix ^= (f.grade(ra[p] + 1) ^ f.grade(ca[p] + 1));
          ++p;
        } else if (gprefix) {
          s ^= chain_factors[q].grade(xd[q] + 1);
        }
      }
      out.matrix()(x, y) = s ? -a : a;
    }
  }
  return out;
}

OperatorMatrix permutation_operator(const GradedSpaceSpec& space) {
  const int d = space.dim();
  OperatorMatrix out({space, space});
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      const double sign =
          (space.grade(i) && space.grade(j)) ? -1.0 : 1.0;
      out.matrix()((i - 1) * d + (j - 1), (j - 1) * d + (i - 1)) = sign;
    }
  return out;
}

OperatorMatrix partial_supertrace(const OperatorMatrix& A, int factor) {
  const int nf = A.num_factors();
  if (factor < 0 || factor >= nf)
    throw std::out_of_range("partial_supertrace: invalid factor index");

  std::vector<GradedSpaceSpec> rest;
  for (int f = 0; f < nf; ++f)
    if (f != factor) rest.push_back(A.factors()[f]);
  if (rest.empty())
    throw std::invalid_argument(
        "partial_supertrace: use supertrace() for the last factor");

  OperatorMatrix out(rest);
  const int dt = A.factors()[factor].dim();

  std::vector<int> xd(rest.size()), full(nf);
  for (Eigen::Index x = 0; x < out.dim(); ++x) {
    out.decode(x, xd);
    for (Eigen::Index y = 0; y < out.dim(); ++y) {
      std::vector<int> yd;
      out.decode(y, yd);
      Complex acc = 0.0;
      for (int t = 0; t < dt; ++t) {
        const double w = A.factors()[factor].grade(t + 1) ? -1.0 : 1.0;
        int r = 0;
        for (int f = 0; f < nf; ++f)
          full[f] = (f == factor) ? t : xd[r++];
        const Eigen::Index row = A.encode(full);
        r = 0;
        for (int f = 0; f < nf; ++f)
          full[f] = (f == factor) ? t : yd[r++];
        const Eigen::Index col = A.encode(full);
        acc += w * A.matrix()(row, col);
      }
      out.matrix()(x, y) = acc;
    }
  }
  return out;
}

Complex supertrace(const OperatorMatrix& A) {
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < A.dim(); ++i)
    acc += (A.basis_grade(i) ? -1.0 : 1.0) * A.matrix()(i, i);
  return acc;
}

double frobenius_norm(const OperatorMatrix& A) { return A.matrix().norm(); }

double frobenius_distance(const OperatorMatrix& A, const OperatorMatrix& B) {
  if (A.dim() != B.dim())
    throw std::invalid_argument("frobenius_distance: shape mismatch");
  return (A.matrix() - B.matrix()).norm();
}

bool approx_equal(const OperatorMatrix& A, const OperatorMatrix& B,
                  double tol) {
  const double scale =
      std::max({1.0, A.matrix().norm(), B.matrix().norm()});
  return frobenius_distance(A, B) <= tol * scale;
}

}  // namespace spinbench
