#include "sievelab/quadforms.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sievelab/errors.hpp"

namespace sievelab::quad {
namespace {

const TernaryForm kAniso = TernaryForm::diagonal(1, 1, -3);
const TernaryForm kPythagoras = TernaryForm::diagonal(1, 1, -1);

TEST(TernaryForm, ParseAndPrint) {
  const auto f = TernaryForm::parse("1,1,-3,0,0,0");
  EXPECT_EQ(f, kAniso);
  EXPECT_EQ(f.to_string(), "1,1,-3,0,0,0");
  EXPECT_EQ(TernaryForm::parse(" 2, -1, 4, +3, 0, 1"), (TernaryForm{2, -1, 4, 3, 0, 1}));
  EXPECT_THROW(TernaryForm::parse("1,1,-3"), DomainError);
  EXPECT_THROW(TernaryForm::parse("1,1,-3,0,0,x"), DomainError);
  EXPECT_THROW(TernaryForm::parse("1,1,-3,0,0,0,7"), DomainError);
}

TEST(EvalForm, Examples) {
  EXPECT_EQ(eval_form(kAniso, {1, 0, 0}), 1);
  EXPECT_EQ(eval_form(kPythagoras, {3, 4, 5}), 0);
  EXPECT_EQ(eval_form(kAniso, {2, 0, 1}), 1);
}

TEST(EvalForm, NoOverflowForLargeInputs) {
  const TernaryForm f{std::int64_t{1} << 40, 0, 0, 0, 0, 0};
  const Integer expected = Integer(1) << 100;
  EXPECT_EQ(eval_form(f, {std::int64_t{1} << 30, 0, 0}), expected);
}

TEST(EvalFormProperty, CoefficientsAgreeWithGram) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> c(-50, 50), x(-1000, 1000);
  for (int trial = 0; trial < 1000; ++trial) {
    const TernaryForm f{c(rng), c(rng), c(rng), c(rng), c(rng), c(rng)};
    const Vec3 v{x(rng), x(rng), x(rng)};
    const Matrix3Q g = f.gram();
    Rational via_gram = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) via_gram += g[i][j] * v[i] * v[j];
    EXPECT_EQ(Rational(eval_form(f, v)), via_gram);
    EXPECT_EQ(Integer(static_cast<long long>(eval_form_i128(f, v))), eval_form(f, v));
  }
}

TEST(Determinant, Examples) {
  EXPECT_EQ(det_form(kAniso).value, -3);
  EXPECT_TRUE(det_form(kAniso).integral);
  EXPECT_EQ(det_form(kPythagoras).value, -1);
  const Determinant cross = det_form(TernaryForm{0, 0, 1, 1, 0, 0});
  EXPECT_EQ(cross.value, Rational(-1, 4));
  EXPECT_FALSE(cross.integral);
}

// Coefficients of x -> U x applied to f, i.e. Gram U^T G U.
TernaryForm transform(const TernaryForm& f, const Matrix3I& u) {
  const Matrix3I g2 = f.doubled_gram();
  Matrix3I h{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) h[i][j] += u[k][i] * g2[k][l] * u[l][j];
  return {h[0][0] / 2, h[1][1] / 2, h[2][2] / 2, h[0][1], h[0][2], h[1][2]};
}

TEST(DeterminantProperty, InvariantUnderUnimodularChange) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> c(-9, 9), idx(0, 2), m(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const TernaryForm f{c(rng), c(rng), c(rng), c(rng), c(rng), c(rng)};
    Matrix3I u{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int step = 0; step < 4; ++step) {
      const auto i = idx(rng), j = (i + 1 + idx(rng) % 2) % 3;
      const auto k = m(rng);
      for (int r = 0; r < 3; ++r) u[r][j] += k * u[r][i];  // column op: e_j += k e_i
    }
    EXPECT_EQ(det_form(transform(f, u)).value, det_form(f).value);
  }
}

TEST(Signature, Examples) {
  EXPECT_EQ(signature(kAniso).pos, 2);
  EXPECT_EQ(signature(kAniso).neg, 1);
  EXPECT_TRUE(signature(kAniso).indefinite());
  EXPECT_EQ(signature(TernaryForm::diagonal(1, 1, 1)).pos, 3);
  const auto negative = signature(TernaryForm::diagonal(-1, -2, -3));
  EXPECT_EQ(negative.pos, 0);
  EXPECT_EQ(negative.neg, 3);
  EXPECT_THROW(signature(TernaryForm{1, 1, 0, 2, 0, 0}), DegenerateError);
}

void expect_diagonalizes(const TernaryForm& f) {
  const Diagonalization d = diagonalize(f);
  const Matrix3Q g = f.gram();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Rational entry = 0;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) entry += d.basis[k][i] * g[k][l] * d.basis[l][j];
      EXPECT_EQ(entry, i == j ? d.d[i] : Rational(0)) << f.to_string() << " entry " << i << j;
    }
    EXPECT_NE(d.d[i], 0);
  }
}

TEST(Diagonalize, DiagonalInputIsFixed) {
  const Diagonalization d = diagonalize(kAniso);
  EXPECT_EQ(d.d[0], 1);
  EXPECT_EQ(d.d[1], 1);
  EXPECT_EQ(d.d[2], -3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(d.basis[i][j], i == j ? 1 : 0);
}

TEST(Diagonalize, CrossTermsAndZeroDiagonal) {
  const TernaryForm completing{1, 3, -5, 2, 0, 1};
  expect_diagonalizes(completing);
  EXPECT_EQ(diagonalize(completing).d[0], 1);
  expect_diagonalizes(TernaryForm{0, 0, 1, 1, 0, 0});
  expect_diagonalizes(TernaryForm{0, 0, 0, 1, 1, 1});
  expect_diagonalizes(TernaryForm{0, 5, 0, 0, 3, 0});
}

TEST(DiagonalizeProperty, RandomForms) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> c(-6, 6);
  int checked = 0;
  while (checked < 200) {
    const TernaryForm f{c(rng), c(rng), c(rng), c(rng), c(rng), c(rng)};
    if (det_form(f).value == 0) {
      EXPECT_THROW(diagonalize(f), DegenerateError);
      continue;
    }
    expect_diagonalizes(f);
    ++checked;
  }
}

TEST(Hilbert, Examples) {
  for (Place v : {Place::infinity(), Place::at(2), Place::at(3), Place::at(5), Place::at(13)}) {
    EXPECT_EQ(hilbert_symbol(1, Rational(-7, 3), v), 1);
  }
  EXPECT_EQ(hilbert_symbol(-1, -1, Place::infinity()), -1);
  EXPECT_EQ(hilbert_symbol(-1, -1, Place::at(2)), -1);
  EXPECT_EQ(hilbert_symbol(-1, -1, Place::at(3)), 1);
  EXPECT_THROW(hilbert_symbol(0, 1, Place::at(3)), DomainError);
  EXPECT_THROW(hilbert_symbol(1, 1, Place::at(9)), DomainError);
}

// (a,b)_p = 1 iff z^2 = a x^2 + b y^2 has a primitive solution mod p^k, for
// k large enough relative to the valuations of a and b.
int brute_hilbert(std::int64_t a, std::int64_t b, std::int64_t p, int k) {
  std::int64_t m = 1;
  for (int i = 0; i < k; ++i) m *= p;
  for (std::int64_t x = 0; x < m; ++x)
    for (std::int64_t y = 0; y < m; ++y)
      for (std::int64_t z = 0; z < m; ++z) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        if (oracle::mod(a * x * x + b * y * y - z * z, m) == 0) return 1;
      }
  return -1;
}

TEST(Hilbert, ThreeAdicExampleAgainstBruteForce) {
  EXPECT_EQ(hilbert_symbol(3, -1, Place::at(3)), brute_hilbert(3, -1, 3, 5));
  EXPECT_EQ(hilbert_symbol(3, -1, Place::at(3)), -1);
}

TEST(Hilbert, SmallIntegersAgainstBruteForce) {
  const std::vector<std::int64_t> values{-15, -7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 14};
  const std::vector<std::pair<std::int64_t, int>> places{{2, 6}, {3, 4}, {5, 3}, {7, 3}};
  for (auto [p, k] : places) {
    for (std::int64_t a : values) {
      for (std::int64_t b : values) {
        if (a > b) continue;
        EXPECT_EQ(hilbert_symbol(a, b, Place::at(static_cast<std::uint64_t>(p))), brute_hilbert(a, b, p, k))
            << "(" << a << "," << b << ")_" << p;
      }
    }
  }
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> n(-300, 300), d(1, 60);
  std::int64_t num = 0;
  while (num == 0) num = n(rng);
  return Rational(num, d(rng));
}

std::vector<Place> relevant_places(const Rational& a, const Rational& b) {
  std::vector<Place> out{Place::infinity()};
  for (std::uint64_t p = 2; p <= 300; ++p) {
    if (!oracle::is_prime_td(p)) continue;
    bool divides = p == 2;
    for (const Integer& n : {numerator(a), denominator(a), numerator(b), denominator(b)}) {
      if (n % p == 0) divides = true;
    }
    if (divides) out.push_back(Place::at(p));
  }
  return out;
}

TEST(HilbertProperty, ProductFormula) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational a = random_rational(rng), b = random_rational(rng);
    int product = 1;
    for (Place v : relevant_places(a, b)) product *= hilbert_symbol(a, b, v);
    EXPECT_EQ(product, 1) << a << " " << b;
  }
}

TEST(HilbertProperty, SquareClassesOnly) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    for (Place v : relevant_places(a * c * c, b)) {
      EXPECT_EQ(hilbert_symbol(a * c * c, b, v), hilbert_symbol(a, b, v));
      EXPECT_EQ(hilbert_symbol(a, b, v), hilbert_symbol(b, a, v));
    }
  }
}

TEST(Isotropy, AnisotropicWithThreeAdicObstruction) {
  const auto cert = is_isotropic_Q(kAniso, 50);
  EXPECT_EQ(cert.verdict, Verdict::kAnisotropic);
  EXPECT_FALSE(cert.witness);
  bool at3 = false;
  for (Place v : cert.obstructions) at3 |= v == Place::at(3);
  EXPECT_TRUE(at3);
  // Independent check of the 3-adic obstruction: no primitive solution of
  // x^2 + y^2 = 3 z^2 mod 9.
  int primitive = 0;
  for (int x = 0; x < 9; ++x)
    for (int y = 0; y < 9; ++y)
      for (int z = 0; z < 9; ++z)
        if ((x % 3 || y % 3 || z % 3) && (x * x + y * y - 3 * z * z) % 9 == 0) ++primitive;
  EXPECT_EQ(primitive, 0);
}

TEST(Isotropy, PythagoreanWitness) {
  const auto cert = is_isotropic_Q(kPythagoras, 10);
  EXPECT_EQ(cert.verdict, Verdict::kIsotropic);
  ASSERT_TRUE(cert.witness);
  EXPECT_EQ(eval_form(kPythagoras, *cert.witness), 0);
  EXPECT_TRUE(cert.obstructions.empty());
}

TEST(Isotropy, OneOneMinusTwo) {
  const TernaryForm f = TernaryForm::diagonal(1, 1, -2);
  const auto cert = is_isotropic_Q(f, 5);
  EXPECT_EQ(cert.verdict, Verdict::kIsotropic);
  ASSERT_TRUE(cert.witness);
  EXPECT_EQ(eval_form(f, *cert.witness), 0);
  EXPECT_EQ(find_zero(f, 5), (Vec3{-1, -1, -1}));
}

TEST(Isotropy, InconclusiveOnlyWithoutLocalTests) {
  const auto cert = is_isotropic_Q(kAniso, 20, {.use_local_tests = false});
  EXPECT_EQ(cert.verdict, Verdict::kInconclusive);
  EXPECT_TRUE(cert.local_data.empty());
  EXPECT_EQ(is_isotropic_Q(kPythagoras, 20, {.use_local_tests = false}).verdict, Verdict::kIsotropic);
}

TEST(Isotropy, DegenerateFormRejected) {
  EXPECT_THROW(is_isotropic_Q(TernaryForm{1, 1, 0, 2, 0, 0}, 5), DegenerateError);
}

TEST(IsotropyProperty, AgreesWithExhaustiveSearchOnBattery) {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::int64_t> c(-4, 4);
  int tested = 0, isotropic = 0;
  while (tested < 30) {
    TernaryForm f{c(rng), c(rng), c(rng), c(rng), c(rng), c(rng)};
    if (tested % 3 == 0) f.a12 = f.a13 = f.a23 = 0;
    if (det_form(f).value == 0) continue;
    const auto cert = is_isotropic_Q(f, 50);
    ASSERT_NE(cert.verdict, Verdict::kInconclusive) << f.to_string();
    const bool brute = oracle::brute_has_zero({f.a11, f.a22, f.a33, f.a12, f.a13, f.a23}, 50);
    EXPECT_EQ(cert.verdict == Verdict::kIsotropic, brute) << f.to_string();
    if (cert.witness) EXPECT_EQ(eval_form(f, *cert.witness), 0);
    isotropic += cert.verdict == Verdict::kIsotropic;
    ++tested;
  }
  EXPECT_GT(isotropic, 0);
  EXPECT_LT(isotropic, 30);
}

TEST(CoordinateSolver, PivotSelection) {
  EXPECT_EQ(CoordinateSolver(kAniso, 1).pivot(), 2);
  EXPECT_EQ(CoordinateSolver(TernaryForm{1, 2, 0, 0, 0, 1}, 1).pivot(), 1);
  const CoordinateSolver linear(TernaryForm{0, 0, 0, 1, 1, 1}, 1);
  EXPECT_EQ(linear.pivot(), 2);
  // x1 x2 + x3 (x1 + x2) = 1 at (1, 0): x3 = 1
  const auto roots = linear.solve(1, 0);
  ASSERT_EQ(roots.count, 1);
  EXPECT_EQ(roots.values[0], 1);
}

}  // namespace
}  // namespace sievelab::quad
