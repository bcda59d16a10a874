#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sievelab/quadforms.hpp"
#include "sievelab/rational.hpp"

namespace sievelab::local {

/// Exceptional primes B excluded from sieving.
inline const std::vector<std::uint64_t> kExceptionalPrimes{2, 3, 5, 7};
bool in_exceptional_set(std::uint64_t p);

/// Which coordinate product is sieved: x1, x1*x2 or x1*x2*x3.
enum class Variant { kX1, kX1X2, kX1X2X3 };
std::string to_string(Variant v);
Variant parse_variant(std::string_view text);
int degree(Variant v);

/// Largest prime accepted by the O(p^2) counting routines.
inline constexpr std::uint64_t kMaxCountPrime = 1u << 15;
/// Largest p_max accepted when tabulating over all primes up to p_max.
inline constexpr std::uint64_t kMaxTablePrime = 5000;

/// Legendre symbol (n/p) for an odd prime p.
int legendre(std::int64_t n, std::uint64_t p);

/// |V_t(Z/pZ)|: solutions of f(x) = t mod p, in O(p^2).
std::uint64_t count_Vt_mod_p(const quad::TernaryForm& f, std::int64_t t, std::uint64_t p);

/// p^2 + ((-d t)/p) p. Requires p odd, d(f) integral, p not dividing d(f) t,
/// and |d(f) t| square-free.
std::uint64_t cassels_count(const quad::TernaryForm& f, std::int64_t t, std::uint64_t p);

/// Points of V_t(Z/pZ) whose variant product vanishes mod p.
std::uint64_t count_V0_mod_p(const quad::TernaryForm& f, std::int64_t t, std::uint64_t p, Variant variant);

struct OmegaEntry {
  std::uint64_t p = 0;
  std::uint64_t count_V = 0;
  std::uint64_t count_V0 = 0;
  Rational raw;    // count_V0 / count_V
  Rational sieve;  // raw, or 0 for p in B
  bool is_bad = false;  // count_V0 == count_V
};

/// omega(p)/p. Throws DegenerateError when V_t(Z/pZ) is empty.
OmegaEntry omega_over_p(const quad::TernaryForm& f, std::int64_t t, std::uint64_t p, Variant variant);

/// omega(d)/d: multiplicative extension of the sieve densities to square-free d.
Rational omega_d(const quad::TernaryForm& f, std::int64_t t, std::uint64_t d, Variant variant);

struct BadPrimeReport {
  std::vector<std::uint64_t> bad;
  bool theorem_applies = false;  // d(f) integral and d(f) t square-free
  bool subset_of_B = true;
  /// True when the theorem applies but a bad prime lies outside B.
  bool finding() const { return theorem_applies && !subset_of_B; }
};

BadPrimeReport bad_primes(const quad::TernaryForm& f, std::int64_t t, Variant variant, std::uint64_t p_max);

/// V_t(Z/dZ) is nonempty. Each prime power of d must be at most 10^6.
bool solvable_mod(const quad::TernaryForm& f, std::int64_t t, std::uint64_t d);

/// True iff d(f) is integral and |d(f) t| is a nonzero square-free integer.
bool det_t_squarefree(const quad::TernaryForm& f, std::int64_t t);

struct LocalDensityTable {
  quad::TernaryForm form;
  std::int64_t t = 0;
  Variant variant = Variant::kX1;
  std::uint64_t p_max = 0;
  std::map<std::uint64_t, OmegaEntry> entries;
  std::vector<std::uint64_t> bad_set;
  std::string caveat;

  /// omega(d)/d as the product of sieve densities over p | d. Throws DomainError when d is not
  /// square-free or has a prime factor beyond p_max.
  Rational omega_d(std::uint64_t d) const;
  /// Columns p,count_V,count_V0,omega_num,omega_den,is_bad.
  std::string to_csv() const;
};

LocalDensityTable build_density_table(const quad::TernaryForm& f, std::int64_t t, Variant variant,
                                      std::uint64_t p_max);

}  // namespace sievelab::local
