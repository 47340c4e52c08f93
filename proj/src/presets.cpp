#include "spinbench/presets.hpp"

#include <random>
#include <stdexcept>

namespace spinbench {

namespace {

using Residual = std::vector<Complex>;
using Roots = BetheRootSet;

Complex lam_ratio(const ChainSpec& spec, int k, Complex w) {
  const WeightFunctions wf(spec);
  return wf.lambda(k + 1, w) / wf.lambda(k, w);
}

// rank-1 block: Lambda_1/Lambda_2 = prod_{i != j} f_2(u_i, u_j)/f_1(u_j, u_i)
Residual rank1_residual(const ChainSpec& spec, const Roots& r) {
  const StructureFunctions s(spec.family);
  const auto& u = r.levels[0];
  Residual out;
  for (size_t j = 0; j < u.size(); ++j) {
    Complex rhs = 1.0;
    for (size_t i = 0; i < u.size(); ++i) {
      if (i == j) continue;
      rhs *= s.f(1, u[j], u[i]) / s.f(2, u[i], u[j]);
    }
    out.push_back(lam_ratio(spec, 1, u[j]) - rhs);
  }
  return out;
}

Residual gl21_residual(const ChainSpec& spec, const Roots& r) {
  const Complex h = spec.family.hbar;
  const auto& u = r.levels[0];
  const auto& v = r.levels[1];
  Residual out;
  for (size_t j = 0; j < u.size(); ++j) {
    Complex rhs = 1.0;
    for (size_t i = 0; i < u.size(); ++i)
      if (i != j) rhs *= (u[i] - u[j] - h) / (u[i] - u[j] + h);
    for (const Complex& vi : v) rhs *= (vi - u[j]) / (vi - u[j] - h);
    out.push_back(lam_ratio(spec, 1, u[j]) - rhs);
  }
  for (size_t j = 0; j < v.size(); ++j) {
    Complex rhs = 1.0;
    for (const Complex& ui : u) rhs *= (v[j] - ui - h) / (v[j] - ui);
    out.push_back(lam_ratio(spec, 2, v[j]) - rhs);
  }
  return out;
}

Residual uq_gl21_residual(const ChainSpec& spec, const Roots& r) {
  const Complex q = spec.family.q, qi = 1.0 / spec.family.q;
  const auto sq = [](Complex z) { return z * z; };
  const auto& u = r.levels[0];
  const auto& v = r.levels[1];
  Residual out;
  for (size_t j = 0; j < u.size(); ++j) {
    Complex rhs = 1.0;
    for (size_t i = 0; i < u.size(); ++i)
      if (i != j)
        rhs *= (q * sq(u[i]) - qi * sq(u[j])) /
               (qi * sq(u[i]) - q * sq(u[j]));
    for (const Complex& vi : v)
      rhs *= (sq(vi) - sq(u[j])) / (q * sq(vi) - qi * sq(u[j]));
    out.push_back(lam_ratio(spec, 1, u[j]) - rhs);
  }
  for (size_t j = 0; j < v.size(); ++j) {
    Complex rhs = 1.0;
    for (const Complex& ui : u)
      rhs *= (q * sq(v[j]) - qi * sq(ui)) / (sq(v[j]) - sq(ui));
    out.push_back(lam_ratio(spec, 2, v[j]) - rhs);
  }
  return out;
}

Residual gl22_residual(const ChainSpec& spec, const Roots& r) {
  const Complex h = spec.family.hbar;
  const auto& u = r.levels[0];
  const auto& v = r.levels[1];
  const auto& w = r.levels[2];
  Residual out;
  for (size_t j = 0; j < u.size(); ++j) {
    Complex rhs = 1.0;
    for (size_t i = 0; i < u.size(); ++i)
      if (i != j) rhs *= (u[i] - u[j] - h) / (u[i] - u[j] + h);
    for (const Complex& vi : v) rhs *= (vi - u[j]) / (vi - u[j] - h);
    out.push_back(lam_ratio(spec, 1, u[j]) - rhs);
  }
  for (size_t j = 0; j < v.size(); ++j) {
    Complex rhs = 1.0;
    for (const Complex& ui : u) rhs *= (v[j] - ui - h) / (v[j] - ui);
    for (const Complex& wi : w) rhs *= (wi - v[j]) / (wi - v[j] + h);
    out.push_back(lam_ratio(spec, 2, v[j]) - rhs);
  }
  for (size_t j = 0; j < w.size(); ++j) {
    Complex rhs = 1.0;
    for (const Complex& vi : v) rhs *= (w[j] - vi + h) / (w[j] - vi);
    for (size_t i = 0; i < w.size(); ++i)
      if (i != j) rhs *= (w[i] - w[j] + h) / (w[i] - w[j] - h);
    out.push_back(lam_ratio(spec, 3, w[j]) - rhs);
  }
  return out;
}

Residual uq_gl22_residual(const ChainSpec& spec, const Roots& r) {
  const Complex q = spec.family.q, qi = 1.0 / spec.family.q;
  const auto sq = [](Complex z) { return z * z; };
  const auto& u = r.levels[0];
  const auto& v = r.levels[1];
  const auto& w = r.levels[2];
  Residual out;
  for (size_t j = 0; j < u.size(); ++j) {
    Complex rhs = 1.0;
    for (size_t i = 0; i < u.size(); ++i)
      if (i != j)
        rhs *= (q * sq(u[i]) - qi * sq(u[j])) /
               (qi * sq(u[i]) - q * sq(u[j]));
    for (const Complex& vi : v)
      rhs *= (sq(vi) - sq(u[j])) / (q * sq(vi) - qi * sq(u[j]));
    out.push_back(lam_ratio(spec, 1, u[j]) - rhs);
  }
  for (size_t j = 0; j < v.size(); ++j) {
    Complex rhs = 1.0;
    for (const Complex& ui : u)
      rhs *= (q * sq(v[j]) - qi * sq(ui)) / (sq(v[j]) - sq(ui));
    for (const Complex& wi : w)
      rhs *= (sq(wi) - sq(v[j])) / (qi * sq(wi) - q * sq(v[j]));
    out.push_back(lam_ratio(spec, 2, v[j]) - rhs);
  }
  for (size_t j = 0; j < w.size(); ++j) {
    Complex rhs = 1.0;
    for (const Complex& vi : v)
      rhs *= (qi * sq(w[j]) - q * sq(vi)) / (sq(w[j]) - sq(vi));
    for (size_t i = 0; i < w.size(); ++i)
      if (i != j)
        rhs *= (qi * sq(w[i]) - q * sq(w[j])) /
               (q * sq(w[i]) - qi * sq(w[j]));
    out.push_back(lam_ratio(spec, 3, w[j]) - rhs);
  }
  return out;
}

Residual gl44_residual(const ChainSpec& spec, const Roots& r) {
  const Complex h = spec.family.hbar;
  Residual out;
  const auto level = [&](int k) -> const std::vector<Complex>& {
    static const std::vector<Complex> none;
    return (k >= 1 && k <= 7) ? r.levels[k - 1] : none;
  };
  for (int k = 1; k <= 7; ++k) {
    const auto& uk = level(k);
    for (size_t j = 0; j < uk.size(); ++j) {
      const Complex wj = uk[j];
      Complex rhs = 1.0;
      if (k == 1) {
        for (size_t i = 0; i < uk.size(); ++i)
          if (i != j) rhs *= (uk[i] - wj - h) / (uk[i] - wj + h);
        for (const Complex& x : level(2)) rhs *= (x - wj) / (x - wj - h);
      } else if (k <= 3) {
        for (const Complex& x : level(k - 1)) rhs *= (wj - x - h) / (wj - x);
        for (size_t i = 0; i < uk.size(); ++i)
          if (i != j) rhs *= (uk[i] - wj - h) / (uk[i] - wj + h);
        for (const Complex& x : level(k + 1)) rhs *= (x - wj) / (x - wj - h);
      } else if (k == 4) {
        for (const Complex& x : level(3)) rhs *= (wj - x - h) / (wj - x);
        for (const Complex& x : level(5)) rhs *= (x - wj) / (x - wj + h);
      } else if (k <= 6) {
        for (const Complex& x : level(k - 1)) rhs *= (wj - x + h) / (wj - x);
        for (size_t i = 0; i < uk.size(); ++i)
          if (i != j) rhs *= (uk[i] - wj + h) / (uk[i] - wj - h);
        for (const Complex& x : level(k + 1)) rhs *= (x - wj) / (x - wj + h);
      } else {
        for (const Complex& x : level(6)) rhs *= (wj - x + h) / (wj - x);
        for (size_t i = 0; i < uk.size(); ++i)
          if (i != j) rhs *= (uk[i] - wj + h) / (uk[i] - wj - h);
      }
      out.push_back(lam_ratio(spec, k, wj) - rhs);
    }
  }
  return out;
}

Residual uq_gl44_residual(const ChainSpec& spec, const Roots& r) {
  const Complex q = spec.family.q, qi = 1.0 / spec.family.q;
  const auto sq = [](Complex z) { return z * z; };
  Residual out;
  const auto level = [&](int k) -> const std::vector<Complex>& {
    static const std::vector<Complex> none;
    return (k >= 1 && k <= 7) ? r.levels[k - 1] : none;
  };
  for (int k = 1; k <= 7; ++k) {
    const auto& uk = level(k);
    for (size_t j = 0; j < uk.size(); ++j) {
      const Complex wj = uk[j];
      Complex rhs = 1.0;
      const auto self_bosonic = [&]() {
        for (size_t i = 0; i < uk.size(); ++i)
          if (i != j)
            rhs *= (q * sq(uk[i]) - qi * sq(wj)) /
                   (qi * sq(uk[i]) - q * sq(wj));
      };
      const auto self_fermionic = [&]() {
        for (size_t i = 0; i < uk.size(); ++i)
          if (i != j)
            rhs *= (qi * sq(uk[i]) - q * sq(wj)) /
                   (q * sq(uk[i]) - qi * sq(wj));
      };
      if (k == 1) {
        self_bosonic();
        for (const Complex& x : level(2))
          rhs *= (sq(x) - sq(wj)) / (q * sq(x) - qi * sq(wj));
      } else if (k <= 3) {
        for (const Complex& x : level(k - 1))
          rhs *= (q * sq(wj) - qi * sq(x)) / (sq(wj) - sq(x));
        self_bosonic();
        for (const Complex& x : level(k + 1))
          rhs *= (sq(x) - sq(wj)) / (q * sq(x) - qi * sq(wj));
      } else if (k == 4) {
        for (const Complex& x : level(3))
          rhs *= (q * sq(wj) - qi * sq(x)) / (sq(wj) - sq(x));
        for (const Complex& x : level(5))
          rhs *= (sq(x) - sq(wj)) / (qi * sq(x) - q * sq(wj));
      } else if (k <= 6) {
        for (const Complex& x : level(k - 1))
          rhs *= (qi * sq(wj) - q * sq(x)) / (sq(wj) - sq(x));
        self_fermionic();
        for (const Complex& x : level(k + 1))
          rhs *= (sq(x) - sq(wj)) / (qi * sq(x) - q * sq(wj));
      } else {
        for (const Complex& x : level(6))
          rhs *= (qi * sq(wj) - q * sq(x)) / (sq(wj) - sq(x));
        self_fermionic();
      }
      out.push_back(lam_ratio(spec, k, wj) - rhs);
    }
  }
  return out;
}

const Complex kDefaultQ{0.8, 0.3};

ChainSpec make_spec(FamilyKind kind, GradedSpaceSpec space, int L) {
  const bool rational = is_rational(kind);
  const Complex param = rational ? Complex(1.0) : kDefaultQ;
  const Complex a0 = rational ? Complex(0.0) : Complex(1.0);
  return ChainSpec(AlgebraFamily(kind, space, param), L,
                   std::vector<Complex>(static_cast<size_t>(L), a0));
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{
      "gl2",  "gl11",    "uq-gl2",  "uq-gl11", "gl21",
      "uq-gl21", "gl22", "uq-gl22", "gl44",    "uq-gl44"};
  return names;
}

Preset preset(const std::string& name) {
  if (name == "gl2")
    return {name, make_spec(FamilyKind::Rational, {2, 0}, 2), {1},
            rank1_residual, "XXX chain, hbar=1, homogeneous"};
  if (name == "gl11")
    return {name, make_spec(FamilyKind::RationalSuper, {1, 1}, 2), {1},
            rank1_residual, "free-fermion super chain, hbar=1, homogeneous"};
  if (name == "uq-gl2")
    return {name, make_spec(FamilyKind::Trig, {2, 0}, 2), {1},
            rank1_residual, "XXZ chain, q=0.8+0.3i, sites at a_l=1"};
  if (name == "uq-gl11")
    return {name, make_spec(FamilyKind::TrigSuper, {1, 1}, 2), {1},
            rank1_residual, "deformed free-fermion chain"};
  if (name == "gl21")
    return {name, make_spec(FamilyKind::RationalSuper, {2, 1}, 2), {1, 0},
            gl21_residual, "rational gl(2|1) chain"};
  if (name == "uq-gl21")
    return {name, make_spec(FamilyKind::TrigSuper, {2, 1}, 2), {1, 1},
            uq_gl21_residual, "deformed gl(2|1) chain"};
  if (name == "gl22")
    return {name, make_spec(FamilyKind::RationalSuper, {2, 2}, 2), {1, 0, 0},
            gl22_residual, "rational gl(2|2) chain"};
  if (name == "uq-gl22")
    return {name, make_spec(FamilyKind::TrigSuper, {2, 2}, 2), {1, 1, 1},
            uq_gl22_residual, "deformed gl(2|2) chain"};
  if (name == "gl44")
    return {name, make_spec(FamilyKind::RationalSuper, {4, 4}, 1),
            {1, 0, 0, 0, 0, 0, 0}, gl44_residual,
            "rational gl(4|4) chain, single site"};
  if (name == "uq-gl44")
    return {name, make_spec(FamilyKind::TrigSuper, {4, 4}, 1),
            {1, 0, 0, 0, 0, 0, 0}, uq_gl44_residual,
            "deformed gl(4|4) chain, single site"};
  throw std::invalid_argument("preset: unknown name '" + name + "'");
}

double cross_check_preset(const std::string& name, int trials,
                          std::uint64_t rng_seed) {
  const Preset p = preset(name);
  if (!p.specialized_residual) return 0.0;

  std::mt19937_64 rng(rng_seed);
  const auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const int levels = p.spec.family.dim() - 1;
  const StructureFunctions s(p.spec.family);

  // keep every denominator of both forms away from zero
  const double margin = 0.05;
  const auto well_separated = [&](const BetheRootSet& r) {
    std::vector<Complex> all;
    for (const auto& lv : r.levels)
      all.insert(all.end(), lv.begin(), lv.end());
    for (size_t i = 0; i < all.size(); ++i) {
      for (const Complex& a : p.spec.inhomogeneities) {
        if (std::abs(s.b(all[i], a)) < margin) return false;
        if (std::abs(s.a(1, all[i], a)) < margin) return false;
      }
      for (size_t j = 0; j < all.size(); ++j) {
        if (i == j) continue;
        if (std::abs(s.b(all[i], all[j])) < margin) return false;
        for (int k = 1; k <= p.spec.family.dim(); ++k)
          if (std::abs(s.a(k, all[i], all[j])) < margin) return false;
      }
    }
    return true;
  };

  double worst = 0.0;
  int done = 0;
  int attempts = 0;
  while (done < trials && attempts < trials * 50) {
    ++attempts;
    BetheRootSet r = BetheRootSet::empty(levels);
    for (int k = 0; k < levels; ++k) {
      const int mk = static_cast<int>(rng() % 3);  // 0..2 roots per level
      for (int i = 0; i < mk; ++i)
        r.levels[k].push_back(
            Complex(2.0 * unit() - 1.0 + (is_rational(p.spec.family.kind)
                                              ? 0.0
                                              : 1.5),
                    2.0 * unit() - 1.0));
    }
    if (!well_separated(r)) continue;
    const auto general = bethe_residual_general(p.spec, r);
    const auto special = p.specialized_residual(p.spec, r);
    if (general.size() != special.size())
      throw std::logic_error("residual layout mismatch");
    for (size_t i = 0; i < general.size(); ++i)
      worst = std::max(worst, std::abs(general[i] - special[i]));
    ++done;
  }
  if (done < trials)
    throw std::runtime_error("cross_check_preset: too many singular draws");
  return worst;
}

}  // namespace spinbench
