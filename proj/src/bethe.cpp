#include "spinbench/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "spinbench/vectors.hpp"

namespace spinbench {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool lex_less(const Complex& x, const Complex& y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

void require_nonzero(Complex value, const std::string& what) {
  if (std::abs(value) < 1e-13)
    throw SingularConfigurationError("singular denominator: " + what);
}

std::string root_name(int level, int index) {
  return "u_" + std::to_string(index + 1) + "^(" + std::to_string(level) + ")";
}

}  // namespace

BetheRootSet BetheRootSet::empty(int num_levels) {
  BetheRootSet r;
  r.levels.assign(static_cast<size_t>(num_levels), {});
  return r;
}

int BetheRootSet::count(int k) const {
  if (k < 1 || k > num_levels()) return 0;
  return static_cast<int>(levels[k - 1].size());
}

int BetheRootSet::total() const {
  int t = 0;
  for (const auto& lv : levels) t += static_cast<int>(lv.size());
  return t;
}

std::vector<int> BetheRootSet::counts() const {
  std::vector<int> c;
  for (const auto& lv : levels) c.push_back(static_cast<int>(lv.size()));
  return c;
}

void BetheRootSet::canonicalize() {
  for (auto& lv : levels) std::sort(lv.begin(), lv.end(), lex_less);
}

bool BetheRootSet::has_level_collision(double tol) const {
  for (const auto& lv : levels)
    for (size_t i = 0; i < lv.size(); ++i)
      for (size_t j = i + 1; j < lv.size(); ++j)
        if (std::abs(lv[i] - lv[j]) < tol) return true;
  return false;
}

std::vector<Complex> bethe_residual_general(const ChainSpec& spec,
                                            const BetheRootSet& roots) {
  const int levels = spec.family.dim() - 1;
  if (roots.num_levels() != levels)
    throw std::invalid_argument("bethe_residual_general: need m+n-1 levels");
  const StructureFunctions s(spec.family);
  const WeightFunctions wf(spec);

  std::vector<Complex> out;
  for (int k = 1; k <= levels; ++k) {
    const auto& uk = roots.levels[k - 1];
    const int Mk = static_cast<int>(uk.size());
    for (int j = 0; j < Mk; ++j) {
      const Complex w = uk[j];

      const Complex lk = wf.lambda(k, w);
      require_nonzero(lk, "Lambda_" + std::to_string(k) + "(" +
                              root_name(k, j) + ")");
      const Complex lhs = wf.lambda(k + 1, w) / lk;

      Complex rhs = (Mk % 2 == 0) ? -1.0 : 1.0;  // (-1)^{M_k - 1}
      if (k >= 2) {
        for (const Complex& up : roots.levels[k - 2]) {
          const Complex bb = s.b(w, up);
          require_nonzero(bb, "b(" + root_name(k, j) + ", u^(k-1))");
          rhs *= s.a(k, w, up) / bb;
        }
      }
      for (int i = 0; i < Mk; ++i) {
        if (i == j) continue;
        const Complex den = s.a(k + 1, w, uk[i]);
        require_nonzero(den, "a_" + std::to_string(k + 1) + "(" +
                                 root_name(k, j) + ", " + root_name(k, i) +
                                 ")");
        rhs *= s.a(k, uk[i], w) / den;
      }
      if (k < levels) {
        for (const Complex& un : roots.levels[k]) {
          const Complex den = s.a(k + 1, un, w);
          require_nonzero(den, "a_" + std::to_string(k + 1) +
                                   "(u^(k+1), " + root_name(k, j) + ")");
          rhs *= s.b(un, w) / den;
        }
      }
      out.push_back(lhs - rhs);
    }
  }
  return out;
}

namespace {

// Denominator-cleared form of the same equations,
//   G = Lambda_{k+1}(w) D - sign Lambda_k(w) N,
// polynomial in the roots and free of poles; the solver iterates on G and
// candidates are accepted against the published ratio residual. `scale`
// carries |Lambda_{k+1} D| + |Lambda_k N| for relative convergence tests.
void cleared_residual(const ChainSpec& spec, const BetheRootSet& roots,
                      Eigen::VectorXcd& G, Eigen::VectorXd& scale) {
  const int levels = spec.family.dim() - 1;
  const StructureFunctions s(spec.family);
  const WeightFunctions wf(spec);
  std::vector<Complex> g;
  std::vector<double> sc;
  for (int k = 1; k <= levels; ++k) {
    const auto& uk = roots.levels[k - 1];
    const int Mk = static_cast<int>(uk.size());
    for (int j = 0; j < Mk; ++j) {
      const Complex w = uk[j];
      Complex num = (Mk % 2 == 0) ? -1.0 : 1.0;  // (-1)^{M_k - 1}
      Complex den = 1.0;
      if (k >= 2)
        for (const Complex& up : roots.levels[k - 2]) {
          num *= s.a(k, w, up);
          den *= s.b(w, up);
        }
      for (int i = 0; i < Mk; ++i) {
        if (i == j) continue;
        num *= s.a(k, uk[i], w);
        den *= s.a(k + 1, w, uk[i]);
      }
      if (k < levels)
        for (const Complex& un : roots.levels[k]) {
          num *= s.b(un, w);
          den *= s.a(k + 1, un, w);
        }
      const Complex t1 = wf.lambda(k + 1, w) * den;
      const Complex t2 = wf.lambda(k, w) * num;
      g.push_back(t1 - t2);
      sc.push_back(std::abs(t1) + std::abs(t2));
    }
  }
  G.resize(static_cast<Eigen::Index>(g.size()));
  scale.resize(static_cast<Eigen::Index>(sc.size()));
  for (size_t i = 0; i < g.size(); ++i) {
    G(static_cast<Eigen::Index>(i)) = g[i];
    scale(static_cast<Eigen::Index>(i)) = sc[i];
  }
}

}  // namespace

std::vector<Complex> bethe_residual_distinguished(const ChainSpec& spec,
                                                  const BetheRootSet& roots) {
  const int levels = spec.family.dim() - 1;
  if (roots.num_levels() != levels)
    throw std::invalid_argument(
        "bethe_residual_distinguished: need m+n-1 levels");
  const int m = spec.family.space.m;
  const StructureFunctions s(spec.family);
  const WeightFunctions wf(spec);
  const auto f = [&](Complex u, Complex v) { return s.fdist(u, v); };

  std::vector<Complex> out;
  for (int k = 1; k <= levels; ++k) {
    const auto& uk = roots.levels[k - 1];
    const int Mk = static_cast<int>(uk.size());
    for (int j = 0; j < Mk; ++j) {
      const Complex w = uk[j];
      const Complex lk = wf.lambda(k, w);
      require_nonzero(lk, "Lambda_" + std::to_string(k) + "(" +
                              root_name(k, j) + ")");
      const Complex lhs = wf.lambda(k + 1, w) / lk;

      Complex rhs = 1.0;
      if (k < m) {
        if (k >= 2)
          for (const Complex& up : roots.levels[k - 2]) rhs *= f(up, w);
        for (int i = 0; i < Mk; ++i)
          if (i != j) rhs *= f(w, uk[i]) / f(uk[i], w);
        if (k < levels)
          for (const Complex& un : roots.levels[k]) rhs /= f(w, un);
      } else if (k == m) {
        // fermionic node: no self-interaction term
        if (k >= 2)
          for (const Complex& up : roots.levels[k - 2]) rhs *= f(up, w);
        if (k < levels)
          for (const Complex& un : roots.levels[k]) rhs /= f(un, w);
      } else {
        if (k >= 2)
          for (const Complex& up : roots.levels[k - 2]) rhs *= f(w, up);
        for (int i = 0; i < Mk; ++i)
          if (i != j) rhs *= f(uk[i], w) / f(w, uk[i]);
        if (k < levels)
          for (const Complex& un : roots.levels[k]) rhs /= f(un, w);
      }
      out.push_back(lhs - rhs);
    }
  }
  return out;
}

namespace {

Complex eigenvalue_impl(const ChainSpec& spec, const BetheRootSet& roots,
                        Complex u, bool distinguished) {
  const int d = spec.family.dim();
  const int m = spec.family.space.m;
  const int levels = d - 1;
  if (roots.num_levels() != levels)
    throw std::invalid_argument("eigenvalue_lambda: need m+n-1 levels");
  const StructureFunctions s(spec.family);
  const WeightFunctions wf(spec);

  for (int k = 1; k <= levels; ++k)
    for (const Complex& r : roots.levels[k - 1])
      if (std::abs(s.b(r, u)) < 1e-12)
        throw std::domain_error(
            "eigenvalue_lambda: u coincides with a Bethe root (pole)");

  Complex acc = 0.0;
  for (int k = 1; k <= d; ++k) {
    Complex term = wf.lambda(k, u);
    if (!distinguished) {
      if (spec.family.grade(k)) term = -term;
      if (k >= 2)
        for (const Complex& up : roots.levels[k - 2]) term *= s.f(k, up, u);
      if (k <= levels)
        for (const Complex& uk : roots.levels[k - 1]) term *= s.f(k, u, uk);
    } else {
      if (k > m) term = -term;
      if (k >= 2)
        for (const Complex& up : roots.levels[k - 2])
          term *= (k <= m) ? s.fdist(up, u) : s.fdist(u, up);
      if (k <= levels)
        for (const Complex& uk : roots.levels[k - 1])
          term *= (k <= m) ? s.fdist(u, uk) : s.fdist(uk, u);
    }
    acc += term;
  }
  return acc;
}

}  // namespace

Complex eigenvalue_lambda(const ChainSpec& spec, const BetheRootSet& roots,
                          Complex u) {
  return eigenvalue_impl(spec, roots, u, false);
}

Complex eigenvalue_lambda_distinguished(const ChainSpec& spec,
                                        const BetheRootSet& roots,
                                        Complex u) {
  return eigenvalue_impl(spec, roots, u, true);
}

double analyticity_check(const ChainSpec& spec, const BetheRootSet& roots,
                         int level, int j) {
  if (level < 1 || level > roots.num_levels())
    throw std::out_of_range("analyticity_check: level out of range");
  if (j < 1 || j > roots.count(level))
    throw std::out_of_range("analyticity_check: root index out of range");
  const Complex w = roots.levels[level - 1][j - 1];

  // keep the contour clear of the other poles of Lambda(u); in the
  // multiplicative case b(r, u) also vanishes at u = -r and at u = 0
  const bool trig = !is_rational(spec.family.kind);
  double clearance = 1e30;
  for (int k = 1; k <= roots.num_levels(); ++k)
    for (int i = 0; i < roots.count(k); ++i) {
      const Complex r = roots.levels[k - 1][i];
      if (!(k == level && i == j - 1))
        clearance = std::min(clearance, std::abs(w - r));
      if (trig) clearance = std::min(clearance, std::abs(w + r));
    }
  if (trig) clearance = std::min(clearance, std::abs(w));
  const double scale = std::max(1.0, std::abs(w));
  if (clearance < 1e-9 * scale)
    throw std::domain_error(
        "analyticity_check: root sits on top of another pole of Lambda");
  const double radius = std::min(1e-3 * scale, 0.4 * clearance);

  constexpr int kNodes = 64;
  Complex acc = 0.0;
  for (int t = 0; t < kNodes; ++t) {
    const double theta = 2.0 * kPi * t / kNodes;
    const Complex dir(std::cos(theta), std::sin(theta));
    acc += eigenvalue_lambda(spec, roots, w + radius * dir) * dir;
  }
  return std::abs(acc * radius / static_cast<double>(kNodes));
}

namespace {

// portable uniform double in [0,1) from mt19937_64 bits
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct StackedSystem {
  const ChainSpec& spec;
  std::vector<int> counts;
  int size;

  BetheRootSet unpack(const Eigen::VectorXcd& z) const {
    BetheRootSet r = BetheRootSet::empty(static_cast<int>(counts.size()));
    int p = 0;
    for (size_t k = 0; k < counts.size(); ++k)
      for (int i = 0; i < counts[k]; ++i) r.levels[k].push_back(z(p++));
    return r;
  }

  // cleared residual; false on non-finite values only
  bool eval(const Eigen::VectorXcd& z, Eigen::VectorXcd& G,
            Eigen::VectorXd& scale) const {
    cleared_residual(spec, unpack(z), G, scale);
    for (int i = 0; i < size; ++i)
      if (!std::isfinite(G(i).real()) || !std::isfinite(G(i).imag()))
        return false;
    return true;
  }

  bool small(const Eigen::VectorXcd& G, const Eigen::VectorXd& scale) const {
    for (int i = 0; i < size; ++i)
      if (std::abs(G(i)) > 1e-13 * (1.0 + scale(i))) return false;
    return true;
  }
};

}  // namespace

std::vector<BetheSolution> solve_bethe(const ChainSpec& spec,
                                       const std::vector<int>& counts,
                                       const SolverConfig& cfg) {
  const int levels = spec.family.dim() - 1;
  if (static_cast<int>(counts.size()) != levels)
    throw std::invalid_argument("solve_bethe: need m+n-1 counts");
  for (int c : counts)
    if (c < 0) throw std::invalid_argument("solve_bethe: negative count");

  int total = 0;
  for (int c : counts) total += c;
  if (total == 0) {
    BetheSolution empty;
    empty.roots = BetheRootSet::empty(levels);
    return {empty};
  }

  const StructureFunctions s(spec.family);
  const StackedSystem sys{spec, counts, total};

  // seed disk center
  Complex center;
  if (is_rational(spec.family.kind)) {
    for (const Complex& a : spec.inhomogeneities) center += a;
    center /= static_cast<double>(spec.L);
  } else {
    double logsum = 0.0;
    for (const Complex& a : spec.inhomogeneities)
      logsum += std::log(std::max(1e-12, std::abs(a)));
    center = std::exp(logsum / spec.L);
  }

  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<BetheSolution> found;

  const auto already_found = [&](const BetheRootSet& r) {
    for (const auto& sol : found) {
      bool close = true;
      for (int k = 0; k < levels && close; ++k)
        for (size_t i = 0; i < r.levels[k].size() && close; ++i)
          if (std::abs(r.levels[k][i] - sol.roots.levels[k][i]) >
              cfg.dedupe_tol)
            close = false;
      if (close) return true;
    }
    return false;
  };

  for (int seed = 0; seed < cfg.seeds; ++seed) {
    Eigen::VectorXcd z(total);
    for (int p = 0; p < total; ++p) {
      const double rr = cfg.seed_radius * std::sqrt(uniform01(rng));
      const double th = 2.0 * kPi * uniform01(rng);
      z(p) = center + Complex(rr * std::cos(th), rr * std::sin(th));
      // nudge seeds away from found roots (light deflation)
      for (const auto& sol : found)
        for (const auto& lv : sol.roots.levels)
          for (const Complex& r : lv)
            if (std::abs(z(p) - r) < 1e-2)
              z(p) += Complex(5e-2, 5e-2);
    }

    Eigen::VectorXcd G;
    Eigen::VectorXd gscale;
    if (!sys.eval(z, G, gscale)) continue;

    bool converged = false;
    for (int it = 0; it < cfg.max_iterations; ++it) {
      if (sys.small(G, gscale)) {
        converged = true;
        break;
      }
      // finite-difference Jacobian (holomorphic system)
      Eigen::MatrixXcd J(total, total);
      bool jac_ok = true;
      for (int q = 0; q < total && jac_ok; ++q) {
        const double h = 1e-7 * std::max(1.0, std::abs(z(q)));
        Eigen::VectorXcd zp = z, zm = z, Gp, Gm;
        Eigen::VectorXd sp, sm;
        zp(q) += h;
        zm(q) -= h;
        if (!sys.eval(zp, Gp, sp) || !sys.eval(zm, Gm, sm)) {
          jac_ok = false;
          break;
        }
        J.col(q) = (Gp - Gm) / (2.0 * h);
      }
      if (!jac_ok) break;

      const Eigen::VectorXcd step = J.colPivHouseholderQr().solve(-G);
      if (!step.allFinite()) break;

      const double gnorm = G.norm();
      double lambda = 1.0;
      bool improved = false;
      while (lambda > 1e-4) {
        Eigen::VectorXcd z_new = z + lambda * step;
        Eigen::VectorXcd G_new;
        Eigen::VectorXd s_new;
        if (sys.eval(z_new, G_new, s_new) &&
            G_new.norm() < gnorm * (1.0 - 1e-4 * lambda)) {
          z = z_new;
          G = G_new;
          gscale = s_new;
          improved = true;
          break;
        }
        lambda *= 0.5;
      }
      if (!improved) break;
    }
    if (!converged) continue;

    // a few full-step polish iterations push the accepted candidates to
    // machine precision
    for (int polish = 0; polish < 3; ++polish) {
      Eigen::MatrixXcd J(total, total);
      bool ok = true;
      for (int q = 0; q < total && ok; ++q) {
        const double h = 1e-7 * std::max(1.0, std::abs(z(q)));
        Eigen::VectorXcd zp = z, zm = z, Gp, Gm;
        Eigen::VectorXd sp, sm;
        zp(q) += h;
        zm(q) -= h;
        ok = sys.eval(zp, Gp, sp) && sys.eval(zm, Gm, sm);
        if (ok) J.col(q) = (Gp - Gm) / (2.0 * h);
      }
      if (!ok) break;
      const Eigen::VectorXcd step = J.colPivHouseholderQr().solve(-G);
      Eigen::VectorXcd G_new;
      Eigen::VectorXd s_new;
      if (!step.allFinite() || !sys.eval(z + step, G_new, s_new)) break;
      if (G_new.norm() >= G.norm()) break;
      z += step;
      G = G_new;
      gscale = s_new;
    }

    BetheRootSet roots = sys.unpack(z);
    roots.canonicalize();
    // coincident roots within a level are degenerate; in the
    // multiplicative case b also vanishes on mirror pairs u, -u, which
    // carry a double pole of the eigenvalue
    bool collision = roots.has_level_collision(cfg.dedupe_tol);
    for (const auto& lv : roots.levels)
      for (size_t i = 0; i < lv.size() && !collision; ++i)
        for (size_t j = i + 1; j < lv.size() && !collision; ++j)
          if (std::abs(s.b(lv[i], lv[j])) < cfg.dedupe_tol) collision = true;
    if (collision) continue;
    if (already_found(roots)) continue;

    // The residual LHS - RHS also tends to zero as roots escape to
    // infinity; discard those runaway configurations.
    double data_scale = std::max(1.0, std::abs(center));
    for (const Complex& a : spec.inhomogeneities)
      data_scale = std::max(data_scale, std::abs(a));
    bool runaway = false;
    for (const auto& lv : roots.levels)
      for (const Complex& r : lv)
        if (std::abs(r) > 1e6 * data_scale) runaway = true;
    if (runaway) continue;

    BetheSolution sol;
    sol.roots = roots;
    double res = 0.0;
    try {
      for (const Complex& c : bethe_residual_general(spec, roots))
        res = std::max(res, std::abs(c));
    } catch (const SingularConfigurationError&) {
      continue;  // ratio form undefined: a degenerate configuration
    }
    if (res > cfg.residual_tol) continue;
    sol.residual = res;
    sol.singular = false;
    for (const auto& lv : roots.levels)
      for (const Complex& r : lv)
        for (const Complex& a : spec.inhomogeneities)
          if (std::abs(s.b(r, a)) < 1e-8) sol.singular = true;

    // Residue gate: genuine solutions leave the eigenvalue analytic at
    // every root; near-solutions of a degenerating system do not. Sets
    // where the residue cannot be estimated (root on top of another pole)
    // pass through and are judged by the later gates.
    if (!sol.singular) {
      const WeightFunctions wf(spec);
      bool analytic = true;
      try {
        for (int k = 1; k <= levels && analytic; ++k)
          for (int j = 1; j <= roots.count(k) && analytic; ++j) {
            const Complex w = roots.levels[k - 1][j - 1];
            double lam_scale = 1.0;
            for (int p = 1; p <= spec.family.dim(); ++p)
              lam_scale = std::max(lam_scale, std::abs(wf.lambda(p, w)));
            if (analyticity_check(spec, roots, k, j) > 1e-8 * lam_scale)
              analytic = false;
          }
      } catch (const std::domain_error&) {
      }
      if (!analytic) continue;
    }

    // Some exact solutions of the equations have an identically vanishing
    // Bethe vector; flag them like singular configurations. The scale is
    // set by rebuilding the vector at slightly shifted roots.
    if (!sol.singular) {
      try {
        const BetheVector phi = bethe_vector(spec, roots);
        BetheRootSet shifted = roots;
        for (auto& lv : shifted.levels)
          for (Complex& r : lv) r += Complex(1.3e-3, 0.7e-3);
        const BetheVector ref = bethe_vector(spec, shifted);
        if (phi.norm() < 1e-6 * std::max(1e-300, ref.norm()))
          sol.singular = true;
      } catch (const std::exception&) {
        // cap exceeded or a degenerate construction: leave unflagged
      }
    }
    found.push_back(std::move(sol));
  }

  // canonical order of the returned list
  std::sort(found.begin(), found.end(),
            [](const BetheSolution& x, const BetheSolution& y) {
              for (size_t k = 0; k < x.roots.levels.size(); ++k) {
                const auto& a = x.roots.levels[k];
                const auto& b = y.roots.levels[k];
                for (size_t i = 0; i < a.size(); ++i) {
                  if (a[i].real() != b[i].real())
                    return a[i].real() < b[i].real();
                  if (a[i].imag() != b[i].imag())
                    return a[i].imag() < b[i].imag();
                }
              }
              return false;
            });
  return found;
}

}  // namespace spinbench
