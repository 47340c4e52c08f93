#pragma once

// The four R-matrix families (rational / trigonometric, graded or not),
// their reduced and normalized variants, the scalar structure functions,
// and numerical certification of the Yang-Baxter and unitarity relations.

#include "spinbench/graded.hpp"

namespace spinbench {

enum class FamilyKind { Rational, RationalSuper, Trig, TrigSuper };

bool is_rational(FamilyKind k);
bool is_super(FamilyKind k);
const char* family_name(FamilyKind k);

struct AlgebraFamily {
  FamilyKind kind;
  GradedSpaceSpec space;
  Complex hbar{1.0, 0.0};  // rational kinds, nonzero
  Complex q{0.0, 0.0};     // trig kinds, not 0 or +-1

  AlgebraFamily(FamilyKind kind_, GradedSpaceSpec space_, Complex param);

  int dim() const { return space.dim(); }
  int grade(int i) const { return space.grade(i); }
};

// Scalar structure functions of the unified R-matrix: diagonal a_a, b,
// exchange c_ab, the unitarity factor zeta, and the derived combinations
// used by the Bethe machinery.
class StructureFunctions {
 public:
  explicit StructureFunctions(AlgebraFamily family);

  const AlgebraFamily& family() const { return fam_; }

  Complex a(int level, Complex u, Complex v) const;
  Complex b(Complex u, Complex v) const;
  Complex c(int ia, int ib, Complex u, Complex v) const;
  Complex zeta(Complex u, Complex v) const;

  // f_i(u,v) = a_i(v,u)/b(v,u)
  Complex f(int i, Complex u, Complex v) const;
  // g_i^+(u,v) = c_{i+1,i}(u,v)/b(u,v), g_i^-(u,v) = c_{i-1,i}(u,v)/b(u,v)
  Complex gplus(int i, Complex u, Complex v) const;
  Complex gminus(int i, Complex u, Complex v) const;
  // h(u,v) = (-1)^{[1]+[2]} a_2(u,v)/a_1(u,v)
  Complex h(Complex u, Complex v) const;
  // single function of the distinguished-gradation equations,
  // f(u,v) = a(v,u)/b(v,u) built from the level-1 diagonal function
  Complex fdist(Complex u, Complex v) const;

 private:
  AlgebraFamily fam_;
};

StructureFunctions structure(const AlgebraFamily& family);

// Unified two-factor R-matrix of the family.
OperatorMatrix build_r(const AlgebraFamily& family, Complex u, Complex v);

// Reduced R-matrix: all terms with an index below `level` suppressed.
OperatorMatrix build_reduced_r(const AlgebraFamily& family, int level,
                               Complex u, Complex v);

// Reduced R-matrix divided by a_level(u,v), embedded as the identity on the
// suppressed part of the two-factor space.
OperatorMatrix build_normalized_r(const AlgebraFamily& family, int level,
                                  Complex u, Complex v);

// Frobenius norm of R12 R13 R23 - R23 R13 R12 on three factors.
double check_ybe(const AlgebraFamily& family, Complex u1, Complex u2,
                 Complex u3);

// Frobenius norm of R12(u,v) R21(v,u) - zeta(u,v) I, with R21 = P R P.
double check_unitarity(const AlgebraFamily& family, Complex u, Complex v);

}  // namespace spinbench
