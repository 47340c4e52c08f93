#include "spinbench/rmatrix.hpp"

#include <stdexcept>
#include <string>

namespace spinbench {

bool is_rational(FamilyKind k) {
  return k == FamilyKind::Rational || k == FamilyKind::RationalSuper;
}

bool is_super(FamilyKind k) {
  return k == FamilyKind::RationalSuper || k == FamilyKind::TrigSuper;
}

const char* family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Rational: return "rational";
    case FamilyKind::RationalSuper: return "rational-super";
    case FamilyKind::Trig: return "trig";
    case FamilyKind::TrigSuper: return "trig-super";
  }
  return "?";
}

AlgebraFamily::AlgebraFamily(FamilyKind kind_, GradedSpaceSpec space_,
                             Complex param)
    : kind(kind_), space(space_) {
  if (is_super(kind) != (space.n > 0))
    throw std::invalid_argument(
        "AlgebraFamily: super kinds require n > 0, non-super require n = 0");
  if (is_rational(kind)) {
    if (param == 0.0)
      throw std::invalid_argument("AlgebraFamily: hbar must be nonzero");
    hbar = param;
  } else {
    if (param == 0.0 || param == Complex(1.0) || param == Complex(-1.0))
      throw std::invalid_argument("AlgebraFamily: q must not be 0 or +-1");
    q = param;
  }
}

StructureFunctions::StructureFunctions(AlgebraFamily family)
    : fam_(std::move(family)) {}

StructureFunctions structure(const AlgebraFamily& family) {
  return StructureFunctions(family);
}

Complex StructureFunctions::a(int level, Complex u, Complex v) const {
  const int g = fam_.grade(level);
  switch (fam_.kind) {
    case FamilyKind::Rational:
      return u - v - fam_.hbar;
    case FamilyKind::RationalSuper:
      return u - v - (g ? -fam_.hbar : fam_.hbar);
    case FamilyKind::Trig:
      return u * fam_.q / v - v / (u * fam_.q);
    case FamilyKind::TrigSuper: {
      const Complex qe = g ? 1.0 / fam_.q : fam_.q;
      return (u / v) * qe - (v / u) / qe;
    }
  }
  throw std::logic_error("unreachable");
}

Complex StructureFunctions::b(Complex u, Complex v) const {
  if (is_rational(fam_.kind)) return u - v;
  return u / v - v / u;
}

Complex StructureFunctions::c(int ia, int ib, Complex u, Complex v) const {
  if (ia == ib)
    throw std::invalid_argument("StructureFunctions::c: need a != b");
  switch (fam_.kind) {
    case FamilyKind::Rational:
      return -fam_.hbar;
    case FamilyKind::RationalSuper:
      return fam_.grade(ib) ? fam_.hbar : -fam_.hbar;
    case FamilyKind::Trig:
    case FamilyKind::TrigSuper: {
      const Complex pw = ib > ia ? u / v : v / u;
      Complex val = (fam_.q - 1.0 / fam_.q) * pw;
      if (fam_.kind == FamilyKind::TrigSuper && fam_.grade(ib)) val = -val;
      return val;
    }
  }
  throw std::logic_error("unreachable");
}

Complex StructureFunctions::zeta(Complex u, Complex v) const {
  return a(1, u, v) * a(1, v, u);
}

Complex StructureFunctions::f(int i, Complex u, Complex v) const {
  return a(i, v, u) / b(v, u);
}

Complex StructureFunctions::gplus(int i, Complex u, Complex v) const {
  return c(i + 1, i, u, v) / b(u, v);
}

Complex StructureFunctions::gminus(int i, Complex u, Complex v) const {
  return c(i - 1, i, u, v) / b(u, v);
}

Complex StructureFunctions::h(Complex u, Complex v) const {
  const double sign = ((fam_.grade(1) + fam_.grade(2)) & 1) ? -1.0 : 1.0;
  return sign * a(2, u, v) / a(1, u, v);
}

Complex StructureFunctions::fdist(Complex u, Complex v) const {
  return a(1, v, u) / b(v, u);
}

OperatorMatrix build_reduced_r(const AlgebraFamily& family, int level,
                               Complex u, Complex v) {
  const int d = family.dim();
  if (level < 1 || level > d)
    throw std::out_of_range("build_reduced_r: level outside 1.." +
                            std::to_string(d));
  const StructureFunctions s(family);
  OperatorMatrix out({family.space, family.space});
  auto& mat = out.matrix();

  const Complex bval = s.b(u, v);
  for (int ia = level; ia <= d; ++ia) {
    for (int ib = level; ib <= d; ++ib) {
      if (ia == ib) {
        mat((ia - 1) * d + (ia - 1), (ia - 1) * d + (ia - 1)) = s.a(ia, u, v);
        continue;
      }
      // b(u,v) E_aa (x) E_bb: diagonal, no Koszul sign
      mat((ia - 1) * d + (ib - 1), (ia - 1) * d + (ib - 1)) = bval;
      // c_ab(u,v) E_ab (x) E_ba: entry at ((a,b),(b,a)) with Koszul sign
      // (-1)^{[b]([a]+[b])}
      const int ga = family.grade(ia), gb = family.grade(ib);
      const double sign = (gb && ((ga ^ gb) != 0)) ? -1.0 : 1.0;
      mat((ia - 1) * d + (ib - 1), (ib - 1) * d + (ia - 1)) =
          sign * s.c(ia, ib, u, v);
    }
  }
  return out;
}

OperatorMatrix build_r(const AlgebraFamily& family, Complex u, Complex v) {
  return build_reduced_r(family, 1, u, v);
}

OperatorMatrix build_normalized_r(const AlgebraFamily& family, int level,
                                  Complex u, Complex v) {
  const StructureFunctions s(family);
  const Complex ak = s.a(level, u, v);
  if (std::abs(ak) < 1e-14)
    throw std::domain_error(
        "build_normalized_r: a_" + std::to_string(level) +
        "(u,v) vanishes (spectral-parameter singularity)");
  OperatorMatrix out = build_reduced_r(family, level, u, v);
  out.matrix() /= ak;
  // identity on the suppressed part of the two-factor basis
  const int d = family.dim();
  for (int ia = 1; ia <= d; ++ia)
    for (int ib = 1; ib <= d; ++ib)
      if (ia < level || ib < level) {
        const Eigen::Index k = (ia - 1) * d + (ib - 1);
        out.matrix()(k, k) = 1.0;
      }
  return out;
}

double check_ybe(const AlgebraFamily& family, Complex u1, Complex u2,
                 Complex u3) {
  const std::vector<GradedSpaceSpec> three{family.space, family.space,
                                           family.space};
  const OperatorMatrix r12 = embed_at(build_r(family, u1, u2), three, {0, 1});
  const OperatorMatrix r13 = embed_at(build_r(family, u1, u3), three, {0, 2});
  const OperatorMatrix r23 = embed_at(build_r(family, u2, u3), three, {1, 2});
  const Matrix lhs = r12.matrix() * r13.matrix() * r23.matrix();
  const Matrix rhs = r23.matrix() * r13.matrix() * r12.matrix();
  return (lhs - rhs).norm();
}

double check_unitarity(const AlgebraFamily& family, Complex u, Complex v) {
  const StructureFunctions s(family);
  const OperatorMatrix r = build_r(family, u, v);
  const OperatorMatrix rvu = build_r(family, v, u);
  const Matrix p = permutation_operator(family.space).matrix();
  const Matrix r21 = p * rvu.matrix() * p;
  const Eigen::Index d = r.dim();
  const Matrix delta =
      r.matrix() * r21 - s.zeta(u, v) * Matrix::Identity(d, d);
  return delta.norm();
}

}  // namespace spinbench
