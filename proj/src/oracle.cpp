#include "spinbench/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace spinbench {

SpectrumReport spectrum(const ChainSpec& spec, Complex u0, Eigen::Index cap) {
  if (spec.hilbert_dim() > cap)
    throw std::invalid_argument("spectrum: (m+n)^L exceeds cap");
  const OperatorMatrix t = build_transfer(spec, u0);
  Eigen::ComplexEigenSolver<Matrix> solver(t.matrix(), false);
  SpectrumReport report;
  report.sample_point = u0;
  report.diagonalizable = solver.info() == Eigen::Success;
  const auto& ev = solver.eigenvalues();
  report.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  return report;
}

bool match_eigenvalue(const SpectrumReport& report, Complex value,
                      double tol) {
  for (const Complex& x : report.eigenvalues)
    if (std::abs(x - value) <= tol * (1.0 + std::abs(value))) return true;
  return false;
}

double eigenvector_residual(const ChainSpec& spec, const Vector& phi,
                            const std::function<Complex(Complex)>& lambda_fun,
                            const std::vector<Complex>& samples) {
  const double norm = phi.norm();
  if (norm == 0.0)
    throw std::invalid_argument("eigenvector_residual: zero vector");
  double worst = 0.0;
  for (const Complex& u0 : samples) {
    const OperatorMatrix t = build_transfer(spec, u0);
    const double r = (t.matrix() * phi - lambda_fun(u0) * phi).norm() / norm;
    worst = std::max(worst, r);
  }
  return worst;
}

double check_commuting(const ChainSpec& spec, Complex u, Complex v) {
  const Matrix tu = build_transfer(spec, u).matrix();
  const Matrix tv = build_transfer(spec, v).matrix();
  return (tu * tv - tv * tu).norm();
}

}  // namespace spinbench
