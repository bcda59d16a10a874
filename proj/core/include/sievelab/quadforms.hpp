#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sievelab/rational.hpp"

namespace sievelab::quad {

using Vec3 = std::array<std::int64_t, 3>;
using Matrix3Q = std::array<std::array<Rational, 3>, 3>;
using Matrix3I = std::array<std::array<std::int64_t, 3>, 3>;

/// f(x) = a11 x1^2 + a22 x2^2 + a33 x3^2 + a12 x1x2 + a13 x1x3 + a23 x2x3.
struct TernaryForm {
  std::int64_t a11 = 0, a22 = 0, a33 = 0, a12 = 0, a13 = 0, a23 = 0;

  static TernaryForm diagonal(std::int64_t a, std::int64_t b, std::int64_t c) { return {a, b, c, 0, 0, 0}; }
  /// Parses "a11,a22,a33,a12,a13,a23".
  static TernaryForm parse(std::string_view text);
  std::string to_string() const;

  /// Half-integral Gram matrix G with f(x) = x^T G x.
  Matrix3Q gram() const;
  /// 2G, which is always integral.
  Matrix3I doubled_gram() const;
  /// Coefficient of x_i^2.
  std::int64_t diag(int i) const;
  /// Coefficient of x_i x_j for i != j.
  std::int64_t cross(int i, int j) const;

  friend bool operator==(const TernaryForm&, const TernaryForm&) = default;
};

Integer eval_form(const TernaryForm& f, const Vec3& x);
/// Same value in 128-bit arithmetic; exact while |coefficients| |x|^2 < 2^120.
__int128 eval_form_i128(const TernaryForm& f, const Vec3& x);

struct Determinant {
  Rational value;
  bool integral = false;
};
/// det of the half-integral Gram matrix.
Determinant det_form(const TernaryForm& f);

struct Signature {
  int pos = 0;
  int neg = 0;
  bool indefinite() const { return pos >= 1 && neg >= 1; }
};
/// Throws DegenerateError for singular forms.
Signature signature(const TernaryForm& f);

struct Diagonalization {
  std::array<Rational, 3> d;
  Matrix3Q basis;  // columns are the new basis vectors; basis^T G basis = diag(d)
};
/// Congruence diagonalization over Q. Throws DegenerateError for singular forms.
Diagonalization diagonalize(const TernaryForm& f);

/// A place of Q: the real place or a prime.
struct Place {
  std::uint64_t prime = 0;  // 0 encodes the real place

  static Place infinity() { return {0}; }
  static Place at(std::uint64_t p) { return {p}; }
  bool is_infinite() const { return prime == 0; }
  std::string to_string() const;
  friend bool operator==(const Place&, const Place&) = default;
};

/// Hilbert symbol (a, b)_v for nonzero rationals. Throws DomainError for a
/// zero argument or a non-prime place.
int hilbert_symbol(const Rational& a, const Rational& b, Place v);

enum class Verdict { kIsotropic, kAnisotropic, kInconclusive };
std::string to_string(Verdict v);

struct IsotropyCertificate {
  Verdict verdict = Verdict::kInconclusive;
  std::optional<Vec3> witness;
  std::vector<std::pair<Place, int>> local_data;  // (place, Hilbert value) for every place checked
  std::vector<Place> obstructions;                // places where the form is locally anisotropic
};

struct IsotropyOptions {
  bool use_local_tests = true;
};

/// Isotropy over Q. Anisotropy is certified by a local obstruction from the
/// Hilbert symbols of the diagonalized form; isotropy by an explicit zero.
/// Without the local path only a found witness can decide.
IsotropyCertificate is_isotropic_Q(const TernaryForm& f, int search_height, IsotropyOptions options = {});

/// Smallest-height primitive nonzero x with max |x_i| <= height and f(x) = 0
/// (ties broken lexicographically), if any.
std::optional<Vec3> find_zero(const TernaryForm& f, int height);

/// Solves f(x) = t for one pivot coordinate given the other two.
///
/// The pivot is the highest-index coordinate with a nonzero square
/// coefficient; if all three vanish, the form is linear in x3 and x3 is the
/// pivot.
class CoordinateSolver {
 public:
  CoordinateSolver(const TernaryForm& f, std::int64_t t);

  int pivot() const { return pivot_; }
  /// Indices of the two free coordinates, ascending.
  std::array<int, 2> free() const { return free_; }

  struct Roots {
    int count = 0;
    std::array<std::int64_t, 2> values{};
    bool every_value = false;  // the equation holds for every pivot value
  };
  /// Integer pivot values solving f = t with the free coordinates set to (u, w).
  Roots solve(std::int64_t u, std::int64_t w) const;

 private:
  TernaryForm form_;
  std::int64_t t_;
  int pivot_;
  std::array<int, 2> free_;
};

}  // namespace sievelab::quad
