#include "spinbench/chain.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spinbench {

ChainSpec::ChainSpec(AlgebraFamily family_, int L_, std::vector<Complex> a)
    : family(std::move(family_)), L(L_), inhomogeneities(std::move(a)) {
  if (L < 1) throw std::invalid_argument("ChainSpec: L >= 1 required");
  if (static_cast<int>(inhomogeneities.size()) != L)
    throw std::invalid_argument("ChainSpec: need L inhomogeneities");
}

std::vector<GradedSpaceSpec> ChainSpec::site_factors() const {
  return std::vector<GradedSpaceSpec>(L, family.space);
}

Eigen::Index ChainSpec::hilbert_dim() const {
  Eigen::Index d = 1;
  for (int l = 0; l < L; ++l) d *= family.dim();
  return d;
}

WeightFunctions::WeightFunctions(ChainSpec spec)
    : spec_(std::move(spec)), s_(spec_.family) {}

Complex WeightFunctions::lambda(int j, Complex u) const {
  const int d = spec_.family.dim();
  if (j < 1 || j > d)
    throw std::out_of_range("WeightFunctions::lambda: index out of range");
  Complex out = 1.0;
  for (const Complex& al : spec_.inhomogeneities)
    out *= (j == 1) ? s_.a(1, u, al) : s_.b(u, al);
  return out;
}

WeightFunctions weight_lambda(const ChainSpec& spec) {
  return WeightFunctions(spec);
}

OperatorMatrix site_factor(const ChainSpec& spec, int l, Complex u) {
  if (l < 1 || l > spec.L)
    throw std::out_of_range("site_factor: site index out of range");
  return build_r(spec.family, u, spec.inhomogeneities[l - 1]);
}

OperatorMatrix build_monodromy(const ChainSpec& spec, Complex u) {
  std::vector<GradedSpaceSpec> factors{spec.family.space};
  for (int l = 0; l < spec.L; ++l) factors.push_back(spec.family.space);

  // T = R_{a,L} ... R_{a,1}: site 1 applied first.
  OperatorMatrix T = embed_at(site_factor(spec, spec.L, u), factors,
                              {0, spec.L});
  for (int l = spec.L - 1; l >= 1; --l) {
    const OperatorMatrix Rl =
        embed_at(site_factor(spec, l, u), factors, {0, l});
    T.matrix() = T.matrix() * Rl.matrix();
  }
  return T;
}

OperatorMatrix extract_tij(const OperatorMatrix& T, int i, int j) {
  if (T.num_factors() < 2)
    throw std::invalid_argument("extract_tij: need an auxiliary factor");
  const GradedSpaceSpec aux = T.factors()[0];
  const int d = aux.dim();
  if (i < 1 || i > d || j < 1 || j > d)
    throw std::out_of_range("extract_tij: index out of range");

  std::vector<GradedSpaceSpec> rest(T.factors().begin() + 1,
                                    T.factors().end());
  OperatorMatrix out(rest);
  const Eigen::Index dh = out.dim();
  const int gij = (aux.grade(i) + aux.grade(j)) & 1;
  for (Eigen::Index x = 0; x < dh; ++x) {
    const double sign = (gij && out.basis_grade(x)) ? -1.0 : 1.0;
    for (Eigen::Index y = 0; y < dh; ++y)
      out.matrix()(x, y) =
          sign * T.matrix()((i - 1) * dh + x, (j - 1) * dh + y);
  }
  return out;
}

OperatorMatrix build_transfer(const ChainSpec& spec, Complex u) {
  return partial_supertrace(build_monodromy(spec, u), 0);
}

Vector vacuum(const ChainSpec& spec) {
  Vector v = Vector::Zero(spec.hilbert_dim());
  v(0) = 1.0;
  return v;
}

Complex cartan_eigenvalue(const ChainSpec& spec, int j,
                          const std::vector<int>& counts) {
  const int d = spec.family.dim();
  if (j < 1 || j > d)
    throw std::out_of_range("cartan_eigenvalue: index out of range");
  if (static_cast<int>(counts.size()) != d - 1)
    throw std::invalid_argument("cartan_eigenvalue: need m+n-1 counts");
  const auto M = [&](int k) { return (k <= 0 || k >= d) ? 0 : counts[k - 1]; };
  const int g = spec.family.grade(j);
  const double weight_sum = (j == 1) ? static_cast<double>(spec.L) : 0.0;
  if (is_rational(spec.family.kind)) {
    const double sign = g ? 1.0 : -1.0;
    return sign * spec.family.hbar *
           (static_cast<double>(M(j - 1) - M(j)) + weight_sum);
  }
  // q^{(1-2[j]) (M_{j-1} - M_j + sum_l lambda_j^{(l)})}, eta_l = 1
  const int expo =
      (g ? -1 : 1) * (M(j - 1) - M(j) + static_cast<int>(weight_sum));
  return std::pow(spec.family.q, expo);
}

OperatorMatrix cartan_generator(const ChainSpec& spec, int j) {
  const int d = spec.family.dim();
  if (j < 1 || j > d)
    throw std::out_of_range("cartan_generator: index out of range");
  const auto sites = spec.site_factors();
  OperatorMatrix out(sites);
  const Eigen::Index dh = out.dim();
  const int g = spec.family.grade(j);

  if (is_rational(spec.family.kind)) {
    // u^{L-1} coefficient of t_jj(u) plus (sum_l a_l) I equals
    // -(-1)^{[j]} hbar sum_l E_jj^{(l)}
    const double sign = g ? 1.0 : -1.0;
    std::vector<int> digits;
    for (Eigen::Index x = 0; x < dh; ++x) {
      out.decode(x, digits);
      int occ = 0;
      for (int dig : digits) occ += (dig == j - 1);
      out.matrix()(x, x) = sign * spec.family.hbar * static_cast<double>(occ);
    }
    return out;
  }

  // q^{h_j} with per-site H_j = (-1)^{[j]} E_jj
  std::vector<int> digits;
  for (Eigen::Index x = 0; x < dh; ++x) {
    out.decode(x, digits);
    int occ = 0;
    for (int dig : digits) occ += (dig == j - 1);
    out.matrix()(x, x) = std::pow(spec.family.q, (g ? -occ : occ));
  }
  return out;
}

bool validate_weights(FamilyKind kind, const GradedSpaceSpec& space,
                      const std::vector<double>& lambda) {
  const int d = space.dim();
  if (static_cast<int>(lambda.size()) != d)
    throw std::invalid_argument("validate_weights: need m+n entries");
  const auto ok_gap = [&](int i) {  // 1-based i, checks lambda_i - lambda_{i+1}
    const double diff = lambda[i - 1] - lambda[i];
    const double r = std::round(diff);
    return diff >= -1e-9 && std::abs(diff - r) < 1e-9;
  };
  const bool super = is_super(kind);
  for (int i = 1; i <= d - 1; ++i) {
    if (super && i == space.m) continue;  // no constraint across the gap
    if (!ok_gap(i)) return false;
  }
  return true;
}

}  // namespace spinbench
