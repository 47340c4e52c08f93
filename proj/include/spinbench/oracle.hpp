#pragma once

// Independent brute-force verification: dense transfer-matrix spectra,
// eigenvalue matching and eigenvector residuals.

#include <functional>
#include <vector>

#include "spinbench/chain.hpp"

namespace spinbench {

struct SpectrumReport {
  Complex sample_point;
  std::vector<Complex> eigenvalues;
  bool diagonalizable = true;
};

inline constexpr Eigen::Index kDefaultSpectrumCap = 2187;

SpectrumReport spectrum(const ChainSpec& spec, Complex u0,
                        Eigen::Index cap = kDefaultSpectrumCap);

// true iff some eigenvalue satisfies |x - value| <= tol (1 + |value|)
bool match_eigenvalue(const SpectrumReport& report, Complex value, double tol);

// max over sampled points u0 of ||t(u0) phi - lambda(u0) phi|| / ||phi||
double eigenvector_residual(const ChainSpec& spec, const Vector& phi,
                            const std::function<Complex(Complex)>& lambda_fun,
                            const std::vector<Complex>& samples);

// ||t(u) t(v) - t(v) t(u)||_F
double check_commuting(const ChainSpec& spec, Complex u, Complex v);

}  // namespace spinbench
