#include "spinbench/vectors.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace spinbench {

namespace {

double parity(int exponent) { return (exponent & 1) ? -1.0 : 1.0; }

std::string format_roots(const BetheRootSet& roots) {
  std::ostringstream os;
  os.precision(10);
  for (int k = 1; k <= roots.num_levels(); ++k) {
    if (roots.count(k) == 0) continue;
    os << " level" << k << ":";
    for (const Complex& r : roots.levels[k - 1])
      os << " (" << r.real() << "," << r.imag() << ")";
  }
  return os.str();
}

// t_ij(u) as an operator on the quantum space
OperatorMatrix generator_block(const ChainSpec& spec, Complex u, int i,
                               int j) {
  return extract_tij(build_monodromy(spec, u), i, j);
}

void require_regular(Complex denom, const std::string& what) {
  if (std::abs(denom) < 1e-13)
    throw SingularConfigurationError("singular Bethe-vector configuration: " +
                                     what);
}

}  // namespace

BetheVector phi_rank2(const ChainSpec& spec,
                      const std::vector<Complex>& level1) {
  if (spec.family.dim() < 2)
    throw std::invalid_argument("phi_rank2: need m+n >= 2");
  Vector v = vacuum(spec);
  for (auto it = level1.rbegin(); it != level1.rend(); ++it)
    v = generator_block(spec, *it, 1, 2).matrix() * v;
  const int g2 = spec.family.grade(2);
  v *= parity(static_cast<int>(level1.size()) * g2);

  BetheVector out;
  out.state = std::move(v);
  BetheRootSet r = BetheRootSet::empty(spec.family.dim() - 1);
  r.levels[0] = level1;
  out.provenance = "phi_rank2" + format_roots(r);
  return out;
}

BetheVector phi_rank3(const ChainSpec& spec,
                      const std::vector<Complex>& level1, Complex level2) {
  if (spec.family.dim() < 3)
    throw std::invalid_argument("phi_rank3: need m+n >= 3");
  const StructureFunctions s(spec.family);
  const int M = static_cast<int>(level1.size());
  const auto g = [&](int i) { return spec.family.grade(i); };

  // t_12(u_1) .. t_13(u_special) .. t_12(u_M) t_{2,c}(u^{(2)}) Omega,
  // applied right-to-left
  const auto string_apply = [&](int special, int c) -> Vector {
    Vector v = vacuum(spec);
    v = generator_block(spec, level2, 2, c).matrix() * v;
    for (int i = M - 1; i >= 0; --i)
      v = generator_block(spec, level1[i], 1, (i == special) ? 3 : 2)
              .matrix() * v;
    return v;
  };

  // first term: t_12 ... t_12 t_23(u^{(2)})
  Vector acc = string_apply(-1, 3) * parity(g(3));

  // corrections: replace t_12(u_i) by t_13(u_i), tail a_2/b products
  for (int i = 0; i < M; ++i) {
    const Complex bvu = s.b(level2, level1[i]);
    require_regular(bvu, "b(u^(2), u_i^(1))");
    Complex coef = s.c(2, 3, level2, level1[i]) / bvu * parity(g(2));
    for (int k = i + 1; k < M; ++k) {
      const Complex bk = s.b(level2, level1[k]);
      require_regular(bk, "b(u^(2), u_k^(1))");
      coef *= s.a(2, level2, level1[k]) / bk;
    }
    acc += coef * string_apply(i, 2);
  }

  Complex pref = parity((M + 1) * M / 2 * g(1) + M * g(2));
  for (int i = 0; i < M; ++i) {
    const Complex a2 = s.a(2, level2, level1[i]);
    require_regular(a2, "a_2(u^(2), u_i^(1))");
    pref *= s.b(level2, level1[i]) / a2;
  }

  BetheVector out;
  out.state = pref * acc;
  BetheRootSet r = BetheRootSet::empty(spec.family.dim() - 1);
  r.levels[0] = level1;
  r.levels[1] = {level2};
  out.provenance = "phi_rank3" + format_roots(r);
  return out;
}

BetheVector phi_rank4(const ChainSpec& spec,
                      const std::vector<Complex>& level1, Complex level2,
                      Complex level3) {
  if (spec.family.dim() < 4)
    throw std::invalid_argument("phi_rank4: need m+n >= 4");
  const StructureFunctions s(spec.family);
  const int M = static_cast<int>(level1.size());
  const auto g = [&](int i) { return spec.family.grade(i); };

  // t_12(u_1)...t_1c(u_k)...t_12(u_M) t_2b(v) t_3d(w) Omega
  const auto string_apply = [&](int special, int c, int b, int d) -> Vector {
    Vector v = vacuum(spec);
    v = generator_block(spec, level3, 3, d).matrix() * v;
    v = generator_block(spec, level2, 2, b).matrix() * v;
    for (int i = M - 1; i >= 0; --i)
      v = generator_block(spec, level1[i], 1, (i == special) ? c : 2)
              .matrix() * v;
    return v;
  };

  const Complex b32 = s.b(level3, level2);
  require_regular(b32, "b(u^(3), u^(2))");
  const Complex c34_ratio = s.c(3, 4, level3, level2) / b32;

  Vector acc = string_apply(-1, 2, 3, 4) * parity(g(3));
  acc += parity(g(4)) * c34_ratio * string_apply(-1, 2, 4, 3);

  for (int k = 0; k < M; ++k) {
    const Complex bvk = s.b(level2, level1[k]);
    require_regular(bvk, "b(u^(2), u_k^(1))");
    Complex tail = 1.0;
    for (int j = k + 1; j < M; ++j) {
      const Complex bj = s.b(level2, level1[j]);
      require_regular(bj, "b(u^(2), u_j^(1))");
      tail *= s.a(2, level2, level1[j]) / bj;
    }
    acc += parity(g(2)) * (s.c(2, 3, level2, level1[k]) / bvk) * tail *
           string_apply(k, 3, 2, 4);
    acc += parity(g(2)) * (s.c(2, 4, level2, level1[k]) / bvk) * c34_ratio *
           tail * string_apply(k, 4, 2, 3);
  }

  // printed prefactor with A_1 evaluated at counts (M, 1, 1)
  int a1 = M * (M + 1) / 2 * g(1) + 1 * g(2);
  if (spec.family.dim() >= 5) a1 += 1 * g(3);  // M_3 (M_3+1)/2 [3] term
  Complex pref = parity(a1 + g(2) * M + g(4));
  for (int j = 0; j < M; ++j) {
    const Complex a3 = s.a(3, level3, level1[j]);
    const Complex a2 = s.a(2, level2, level1[j]);
    require_regular(a3, "a_3(u^(3), u_j^(1))");
    require_regular(a2, "a_2(u^(2), u_j^(1))");
    pref *= (s.b(level3, level1[j]) / a3) * (s.b(level2, level1[j]) / a2);
  }
  const Complex a32 = s.a(3, level3, level2);
  require_regular(a32, "a_3(u^(3), u^(2))");
  pref *= s.b(level3, level2) / a32;

  BetheVector out;
  out.state = pref * acc;
  BetheRootSet r = BetheRootSet::empty(spec.family.dim() - 1);
  r.levels[0] = level1;
  r.levels[1] = {level2};
  r.levels[2] = {level3};
  out.provenance = "phi_rank4" + format_roots(r);
  return out;
}

namespace {

// Apply an operator, embedded at the given slots of the full factor list,
// to a block of column vectors.
void apply_embedded(const OperatorMatrix& op,
                    const std::vector<GradedSpaceSpec>& factors,
                    const std::vector<int>& positions, Matrix& block) {
  const OperatorMatrix full = embed_at(op, factors, positions);
  block = full.matrix() * block;
}

// Embed a two-factor operator with its first factor at p and second at q,
// p != q; when p > q the roles are exchanged by conjugating with the
// graded permutation.
void apply_embedded_pair(const OperatorMatrix& op,
                         const std::vector<GradedSpaceSpec>& factors, int p,
                         int q, Matrix& block) {
  if (p < q) {
    apply_embedded(op, factors, {p, q}, block);
    return;
  }
  const Matrix perm = permutation_operator(op.factors()[0]).matrix();
  OperatorMatrix swapped(op.factors(), perm * op.matrix() * perm);
  apply_embedded(swapped, factors, {q, p}, block);
}

}  // namespace

BetheVector phi_supertrace(const ChainSpec& spec, const BetheRootSet& roots,
                           Eigen::Index cap) {
  const int d = spec.family.dim();
  const int levels = d - 1;
  if (roots.num_levels() != levels)
    throw std::invalid_argument("phi_supertrace: need m+n-1 root levels");
  const int M = roots.total();

  Eigen::Index full_dim = spec.hilbert_dim();
  for (int i = 0; i < M; ++i) {
    if (full_dim > cap / d)
      throw std::invalid_argument(
          "phi_supertrace: (m+n)^{M+L} exceeds the tractability cap");
    full_dim *= d;
  }

  if (M == 0) {
    BetheVector out;
    out.state = vacuum(spec);
    out.provenance = "phi_supertrace (vacuum)";
    return out;
  }

  // factor list: aux_1 .. aux_M, site_1 .. site_L; auxiliary space j
  // carries the level and root read off in level-major order
  std::vector<GradedSpaceSpec> factors(M + spec.L, spec.family.space);
  std::vector<int> aux_level(M);
  std::vector<Complex> aux_root(M);
  {
    int p = 0;
    for (int k = 1; k <= levels; ++k)
      for (const Complex& r : roots.levels[k - 1]) {
        aux_level[p] = k;
        aux_root[p] = r;
        ++p;
      }
  }
  // position of the first root of each level in the auxiliary sequence
  std::vector<int> level_base(levels + 2, 0);
  for (int k = 1; k <= levels; ++k)
    level_base[k + 1] = level_base[k] + roots.count(k);

  const StructureFunctions s(spec.family);
  const Eigen::Index naux = full_dim / spec.hilbert_dim();

  // columns: e_dd (x) Omega for every auxiliary diagonal index dd
  Matrix block = Matrix::Zero(full_dim, naux);
  for (Eigen::Index dd = 0; dd < naux; ++dd)
    block(dd * spec.hilbert_dim(), dd) = 1.0;

  // rightmost part first: the lowering string, one E_{k+1,k} per auxiliary
  // space, realized as the graded tensor product in ascending auxiliary
  // order. The application loop composes the embedded factors in the
  // opposite order, which costs one Koszul sign per odd-odd pair.
  for (int j = 0; j < M; ++j) {
    const int k = aux_level[j];
    apply_embedded(elementary(spec.family.space, k + 1, k), factors, {j},
                   block);
  }
  {
    int swaps = 0;
    for (int p = 0; p < M; ++p)
      for (int q = p + 1; q < M; ++q) {
        const int gp = (spec.family.grade(aux_level[p]) +
                        spec.family.grade(aux_level[p] + 1)) & 1;
        const int gq = (spec.family.grade(aux_level[q]) +
                        spec.family.grade(aux_level[q] + 1)) & 1;
        swaps += gp * gq;
      }
    if (swaps & 1) block = -block;
  }

  // normalized exchange factors, outer levels j < k ascending, within a
  // pair block the level-k roots ascend and the level-j roots descend;
  // applied right-to-left
  struct PairFactor {
    int pos_hi, pos_lo;
    Complex u_hi, u_lo;
    int level_hi;
  };
  std::vector<PairFactor> order;
  for (int j = 1; j <= levels; ++j)
    for (int k = j + 1; k <= levels; ++k)
      for (int l = 0; l < roots.count(k); ++l)
        for (int i = roots.count(j) - 1; i >= 0; --i)
          order.push_back({level_base[k] + l, level_base[j] + i,
                           roots.levels[k - 1][l], roots.levels[j - 1][i],
                           k});
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    OperatorMatrix r = build_r(spec.family, it->u_hi, it->u_lo);
    const Complex ak = s.a(it->level_hi, it->u_hi, it->u_lo);
    require_regular(ak, "a_k(u^(k), u^(j)) in the exchange factor");
    r.matrix() /= ak;
    apply_embedded_pair(r, factors, it->pos_hi, it->pos_lo, block);
  }

  // monodromies T_M ... T_1, each an ordered product of site factors with
  // site 1 applied first
  for (int j = M - 1; j >= 0; --j)
    for (int l = 1; l <= spec.L; ++l)
      apply_embedded_pair(site_factor(spec, l, aux_root[j]), factors, j,
                          M + l - 1, block);

  // graded trace over the auxiliary indices, prefactor (-1)^{A_1}
  int a1 = 0;
  for (int i = 1; i <= d - 2; ++i)
    a1 += roots.count(i) * (roots.count(i) + 1) / 2 * spec.family.grade(i);

  const Eigen::Index dh = spec.hilbert_dim();
  Vector phi = Vector::Zero(dh);
  std::vector<GradedSpaceSpec> aux_factors(M, spec.family.space);
  OperatorMatrix aux_probe(aux_factors);
  for (Eigen::Index dd = 0; dd < naux; ++dd) {
    const double w = aux_probe.basis_grade(dd) ? -1.0 : 1.0;
    phi += w * block.block(dd * dh, dd, dh, 1);
  }
  phi *= parity(a1);

  BetheVector out;
  out.state = std::move(phi);
  out.provenance = "phi_supertrace" + format_roots(roots);
  return out;
}

PairingReport shapovalov_pairing(const ChainSpec& spec, const BetheVector& x,
                                 const BetheVector& y) {
  const Eigen::Index dh = spec.hilbert_dim();
  if (x.state.size() != dh || y.state.size() != dh)
    throw std::invalid_argument("shapovalov_pairing: dimension mismatch");

  // site-order reversal permutation of the product basis
  const auto sites = spec.site_factors();
  OperatorMatrix probe(sites);
  std::vector<int> digits;
  std::vector<Eigen::Index> rev(dh);
  for (Eigen::Index idx = 0; idx < dh; ++idx) {
    probe.decode(idx, digits);
    std::reverse(digits.begin(), digits.end());
    rev[idx] = probe.encode(digits);
  }

  PairingReport report;
  Complex acc = 0.0;
  for (Eigen::Index idx = 0; idx < dh; ++idx)
    acc += x.state(idx) * y.state(rev[idx]);
  report.value = acc;

  // numerical check of the exchange property for this chain
  std::mt19937_64 rng(0x5eedULL);
  const auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  };
  const int dim = spec.family.dim();
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const Complex u(1.0 + unit(), unit());
    const OperatorMatrix T = build_monodromy(spec, u);
    Vector a(dh), b(dh);
    for (Eigen::Index p = 0; p < dh; ++p) {
      a(p) = Complex(unit(), unit());
      b(p) = Complex(unit(), unit());
    }
    for (int i = 1; i <= dim; ++i)
      for (int j = 1; j <= dim; ++j) {
        const Matrix tij = extract_tij(T, i, j).matrix();
        const Matrix tji = extract_tij(T, j, i).matrix();
        Complex lhs = 0.0, rhs = 0.0;
        const Vector ta = tij * a;
        const Vector tb = tji * b;
        for (Eigen::Index p = 0; p < dh; ++p) {
          lhs += ta(p) * b(rev[p]);
          rhs += a(p) * tb(rev[p]);
        }
        const double scale =
            std::max(1.0, std::max(std::abs(lhs), std::abs(rhs)));
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
      }
  }
  report.shapovalov_verified = worst < 1e-10;
  return report;
}

BetheVector bethe_vector(const ChainSpec& spec, const BetheRootSet& roots) {
  const auto counts = roots.counts();
  const int levels = static_cast<int>(counts.size());
  bool only_level1 = true;
  for (int k = 2; k <= levels; ++k)
    if (counts[k - 1] != 0) only_level1 = false;
  if (only_level1) return phi_rank2(spec, roots.levels[0]);

  bool tail_zero_after2 = true;
  for (int k = 3; k <= levels; ++k)
    if (counts[k - 1] != 0) tail_zero_after2 = false;
  if (levels >= 2 && counts[1] == 1 && tail_zero_after2)
    return phi_rank3(spec, roots.levels[0], roots.levels[1][0]);

  bool tail_zero_after3 = true;
  for (int k = 4; k <= levels; ++k)
    if (counts[k - 1] != 0) tail_zero_after3 = false;
  if (levels >= 3 && counts[1] == 1 && counts[2] == 1 && tail_zero_after3)
    return phi_rank4(spec, roots.levels[0], roots.levels[1][0],
                     roots.levels[2][0]);

  return phi_supertrace(spec, roots);
}

OrthogonalityReport orthogonality_check(const ChainSpec& spec,
                                        const BetheRootSet& rootsA,
                                        const BetheRootSet& rootsB) {
  OrthogonalityReport report;

  BetheVector a = bethe_vector(spec, rootsA);
  BetheVector b = bethe_vector(spec, rootsB);
  if (a.norm() == 0.0 || b.norm() == 0.0) {
    report.detail = "zero Bethe vector";
    return report;
  }
  a.state /= a.norm();
  b.state /= b.norm();

  report.pairing = shapovalov_pairing(spec, a, b);
  if (!report.pairing.shapovalov_verified) {
    report.detail = "exchange-property check failed for this chain";
    return report;
  }

  // level-wise multiset comparison
  BetheRootSet ca = rootsA, cb = rootsB;
  ca.canonicalize();
  cb.canonicalize();
  bool same = ca.counts() == cb.counts();
  if (same)
    for (int k = 0; k < ca.num_levels() && same; ++k)
      for (size_t i = 0; i < ca.levels[k].size() && same; ++i)
        if (std::abs(ca.levels[k][i] - cb.levels[k][i]) > 1e-8) same = false;
  report.distinct_multisets = !same;

  const double mag = std::abs(report.pairing.value);
  report.pass = report.distinct_multisets ? (mag < 1e-8) : (mag > 1e-6);
  report.detail = report.distinct_multisets ? "distinct multisets"
                                            : "identical multisets";
  return report;
}

}  // namespace spinbench
