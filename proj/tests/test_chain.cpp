#include "doctest.h"
#include "spinbench/chain.hpp"
#include "test_util.hpp"

using namespace spinbench;
using namespace spinbench::testing;

namespace {

const Complex kQ{0.8, 0.3};

ChainSpec gl2_chain(int L) {
  return ChainSpec(AlgebraFamily(FamilyKind::Rational, {2, 0}, Complex(1.0)),
                   L, std::vector<Complex>(L, Complex(0.0)));
}

std::vector<ChainSpec> small_chains() {
  return {
      gl2_chain(2),
      ChainSpec(AlgebraFamily(FamilyKind::RationalSuper, {1, 1},
                              Complex(1.0)),
                2, {Complex(0.0), Complex(0.3)}),
      ChainSpec(AlgebraFamily(FamilyKind::RationalSuper, {2, 1},
                              Complex(1.0)),
                2, {Complex(0.0), Complex(0.0)}),
      ChainSpec(AlgebraFamily(FamilyKind::Trig, {2, 0}, kQ), 2,
                {Complex(1.0), Complex(1.3)}),
      ChainSpec(AlgebraFamily(FamilyKind::TrigSuper, {2, 2}, kQ), 1,
                {Complex(1.0)}),
  };
}

Complex draw_point(const ChainSpec& spec, std::mt19937_64& rng) {
  return rand_complex(rng) + (is_rational(spec.family.kind)
                                  ? Complex(0.0)
                                  : Complex(2.0));
}

}  // namespace

TEST_CASE("site factor") {
  const ChainSpec spec = gl2_chain(2);
  const Complex u(0.8, 0.4);
  const auto rf = site_factor(spec, 1, u);
  const Matrix expect =
      u.real() * Matrix::Identity(4, 4) + u.imag() * Complex(0, 1) *
          Matrix::Identity(4, 4) -
      permutation_operator(spec.family.space).matrix();
  CHECK((rf.matrix() - expect).norm() < 1e-15);

  // u at the inhomogeneity collapses to the graded permutation
  ChainSpec inhom(spec.family, 2, {Complex(0.6), Complex(0.0)});
  const auto at = site_factor(inhom, 1, Complex(0.6));
  CHECK((at.matrix() +
         permutation_operator(spec.family.space).matrix()).norm() == 0.0);

  const ChainSpec trig(AlgebraFamily(FamilyKind::Trig, {2, 0}, kQ), 1,
                       {Complex(1.0)});
  const Complex w(1.4, 0.2);
  const auto rt = site_factor(trig, 1, w);
  CHECK(std::abs(rt.matrix()(0, 0) - (w * kQ - 1.0 / (w * kQ))) < 1e-14);

  CHECK_THROWS_AS(site_factor(spec, 3, u), std::out_of_range);
}

TEST_CASE("monodromy basics") {
  const ChainSpec one(AlgebraFamily(FamilyKind::Rational, {2, 0},
                                    Complex(1.0)),
                      1, {Complex(0.2, 0.1)});
  const Complex u(0.9, -0.3);
  CHECK(frobenius_distance(build_monodromy(one, u), site_factor(one, 1, u)) ==
        0.0);

  // frozen generator action on the vacuum
  const ChainSpec spec = gl2_chain(2);
  const auto t12 = extract_tij(build_monodromy(spec, u), 1, 2);
  const Vector v = t12.matrix() * vacuum(spec);
  CHECK(std::abs(v(1) - (-u)) < 1e-15);         // e1 (x) e2
  CHECK(std::abs(v(2) - (1.0 - u)) < 1e-15);    // e2 (x) e1
  CHECK(std::abs(v(0)) + std::abs(v(3)) == 0.0);
}

TEST_CASE("RTT relation") {
  std::mt19937_64 rng(51);
  for (const auto& spec : small_chains()) {
    const Complex u = draw_point(spec, rng), v = draw_point(spec, rng);
    std::vector<GradedSpaceSpec> fs(spec.L + 2, spec.family.space);
    std::vector<int> pos1{0}, pos2{1};
    for (int l = 0; l < spec.L; ++l) {
      pos1.push_back(2 + l);
      pos2.push_back(2 + l);
    }
    const auto T1 = embed_at(build_monodromy(spec, u), fs, pos1);
    const auto T2 = embed_at(build_monodromy(spec, v), fs, pos2);
    const auto R12 = embed_at(build_r(spec.family, u, v), fs, {0, 1});
    const double res = (R12.matrix() * T1.matrix() * T2.matrix() -
                        T2.matrix() * T1.matrix() * R12.matrix())
                           .norm();
    CHECK(res < 1e-10);
  }
}

TEST_CASE("generator blocks") {
  const auto id = OperatorMatrix::identity({{2, 1}, {2, 1}});
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const auto block = extract_tij(id, i, j);
      if (i == j)
        CHECK((block.matrix() - Matrix::Identity(3, 3)).norm() == 0.0);
      else
        CHECK(block.matrix().norm() == 0.0);
    }

  // single rational-super site: t_ij(u) = u delta_ij - hbar (-1)^{[j]} E_ji
  const ChainSpec one(AlgebraFamily(FamilyKind::RationalSuper, {1, 1},
                                    Complex(1.0)),
                      1, {Complex(0.0)});
  const Complex u(0.4, 0.9);
  const auto T = build_monodromy(one, u);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      Matrix expect = Matrix::Zero(2, 2);
      if (i == j) expect += u * Matrix::Identity(2, 2);
      const double sign = one.family.grade(j) ? 1.0 : -1.0;
      expect(j - 1, i - 1) += sign;
      CHECK((extract_tij(T, i, j).matrix() - expect).norm() < 1e-15);
    }

  // annihilation on the pseudo-vacuum
  std::mt19937_64 rng(53);
  for (const auto& spec : small_chains()) {
    const auto Tm = build_monodromy(spec, draw_point(spec, rng));
    const Vector omega = vacuum(spec);
    for (int i = 1; i <= spec.family.dim(); ++i)
      for (int j = 1; j < i; ++j)
        CHECK((extract_tij(Tm, i, j).matrix() * omega).norm() < 1e-12);
  }
}

TEST_CASE("transfer matrix values") {
  const ChainSpec one(AlgebraFamily(FamilyKind::Rational, {2, 0},
                                    Complex(1.0)),
                      1, {Complex(0.0)});
  const Complex u(1.7, 0.5);
  const auto t = build_transfer(one, u);
  CHECK((t.matrix() - (2.0 * u - 1.0) * Matrix::Identity(2, 2)).norm() <
        1e-14);

  const ChainSpec ferm(AlgebraFamily(FamilyKind::RationalSuper, {1, 1},
                                     Complex(0.7, 0.2)),
                       1, {Complex(0.4)});
  const auto tf = build_transfer(ferm, u);
  CHECK((tf.matrix() + Complex(0.7, 0.2) * Matrix::Identity(2, 2)).norm() <
        1e-14);
}

TEST_CASE("transfer matrices commute") {
  std::mt19937_64 rng(59);
  for (const auto& spec : small_chains()) {
    for (int t = 0; t < 5; ++t) {
      const Matrix tu =
          build_transfer(spec, draw_point(spec, rng)).matrix();
      const Matrix tv =
          build_transfer(spec, draw_point(spec, rng)).matrix();
      CHECK((tu * tv - tv * tu).norm() < 1e-9);
    }
  }
}

TEST_CASE("weight functions") {
  const ChainSpec spec = gl2_chain(2);
  const WeightFunctions wf = weight_lambda(spec);
  const Complex u(0.8, 1.2);
  CHECK(std::abs(wf.lambda(1, u) - (u - 1.0) * (u - 1.0)) < 1e-14);
  CHECK(std::abs(wf.lambda(2, u) - u * u) < 1e-14);

  const ChainSpec trig(AlgebraFamily(FamilyKind::Trig, {2, 0}, kQ), 1,
                       {Complex(1.0)});
  const WeightFunctions wt = weight_lambda(trig);
  CHECK(std::abs(wt.lambda(1, u) - (kQ * u - 1.0 / (kQ * u))) < 1e-14);

  // highest-weight action with the product weights
  std::mt19937_64 rng(61);
  for (const auto& sc : small_chains()) {
    const WeightFunctions w(sc);
    const Complex x = draw_point(sc, rng);
    const auto T = build_monodromy(sc, x);
    const Vector omega = vacuum(sc);
    for (int j = 1; j <= sc.family.dim(); ++j) {
      const Vector act = extract_tij(T, j, j).matrix() * omega;
      CHECK((act - w.lambda(j, x) * omega).norm() < 1e-12);
    }
  }
}

TEST_CASE("vacuum") {
  const ChainSpec one(AlgebraFamily(FamilyKind::Rational, {2, 0},
                                    Complex(1.0)),
                      1, {Complex(0.0)});
  const Vector v = vacuum(one);
  CHECK(v(0) == Complex(1.0));
  CHECK(v.norm() == 1.0);
}

TEST_CASE("transfer entries are polynomial of degree L in u") {
  const ChainSpec spec = gl2_chain(2);
  // divided differences of order L+1 vanish for a degree-L polynomial
  const int L = spec.L;
  std::vector<Complex> nodes;
  std::vector<Matrix> values;
  for (int p = 0; p <= L + 1; ++p) {
    nodes.push_back(Complex(0.3 * p, 0.1 * p));
    values.push_back(build_transfer(spec, nodes.back()).matrix());
  }
  for (int order = 1; order <= L + 1; ++order)
    for (int i = 0; i + order < static_cast<int>(values.size()); ++i)
      values[i] = (values[i + 1] - values[i]) /
                  (nodes[i + order] - nodes[i]);
  CHECK(values[0].norm() < 1e-10);
}

TEST_CASE("cartan eigenvalues and generators") {
  const ChainSpec spec = gl2_chain(2);
  CHECK(std::abs(cartan_eigenvalue(spec, 1, {1}) - Complex(-1.0)) < 1e-15);
  CHECK(std::abs(cartan_eigenvalue(spec, 2, {1}) - Complex(-1.0)) < 1e-15);
  CHECK(std::abs(cartan_eigenvalue(spec, 1, {0}) - Complex(-2.0)) < 1e-15);

  // vacuum weight for a graded chain
  const ChainSpec g21(AlgebraFamily(FamilyKind::RationalSuper, {2, 1},
                                    Complex(1.0)),
                      2, {Complex(0.0), Complex(0.0)});
  CHECK(std::abs(cartan_eigenvalue(g21, 1, {0, 0}) - Complex(-2.0)) <
        1e-15);
  CHECK(std::abs(cartan_eigenvalue(g21, 3, {0, 0})) < 1e-15);

  // the rational generator is the u^{L-1} monodromy coefficient shifted by
  // the inhomogeneity sum
  const ChainSpec inhom(g21.family, 2, {Complex(0.2, 0.1), Complex(-0.4)});
  for (int j = 1; j <= 3; ++j) {
    // Newton interpolation of the degree-2 block t_jj(u) at three nodes;
    // p(u) = d0 + d1 (u-x0) + d2 (u-x0)(u-x1), so the u-coefficient is
    // d1 - (x0+x1) d2
    const std::vector<Complex> nodes{{0.0, 0.0}, {0.7, 0.1}, {1.3, -0.2}};
    std::vector<Matrix> dd;
    for (const Complex& x : nodes)
      dd.push_back(extract_tij(build_monodromy(inhom, x), j, j).matrix());
    for (int order = 1; order < 3; ++order)
      for (int i = 2; i >= order; --i)
        dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - order]);
    const Matrix coeff_u1 = dd[1] - (nodes[0] + nodes[1]) * dd[2];
    const Complex ashift =
        inhom.inhomogeneities[0] + inhom.inhomogeneities[1];
    const Matrix gen = coeff_u1 + ashift * Matrix::Identity(9, 9);
    CHECK((gen - cartan_generator(inhom, j).matrix()).norm() < 1e-10);
  }

  // the Cartan generators commute with the transfer matrix
  std::mt19937_64 rng(67);
  for (const auto& sc : small_chains()) {
    const Matrix t = build_transfer(sc, draw_point(sc, rng)).matrix();
    for (int j = 1; j <= sc.family.dim(); ++j) {
      const Matrix c = cartan_generator(sc, j).matrix();
      CHECK((t * c - c * t).norm() < 1e-10);
    }
  }
}

TEST_CASE("weight admissibility") {
  CHECK(validate_weights(FamilyKind::Rational, {2, 0}, {1.0, 0.0}));
  CHECK_FALSE(validate_weights(FamilyKind::Rational, {2, 0}, {0.0, 1.0}));
  CHECK(validate_weights(FamilyKind::RationalSuper, {2, 1},
                         {3.0, 1.0, 7.0}));
  CHECK_FALSE(validate_weights(FamilyKind::RationalSuper, {2, 1},
                               {1.0, 3.0, 7.0}));
  CHECK_FALSE(
      validate_weights(FamilyKind::Rational, {2, 0}, {1.5, 0.0}));
  CHECK(validate_weights(FamilyKind::TrigSuper, {1, 1}, {4.0, -2.0}));
  CHECK_THROWS_AS(validate_weights(FamilyKind::Rational, {2, 0}, {1.0}),
                  std::invalid_argument);
}
