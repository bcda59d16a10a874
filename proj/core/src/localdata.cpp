#include "sievelab/localdata.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "sievelab/arith.hpp"
#include "sievelab/errors.hpp"

namespace sievelab::local {

using quad::TernaryForm;

bool in_exceptional_set(std::uint64_t p) {
  return std::find(kExceptionalPrimes.begin(), kExceptionalPrimes.end(), p) != kExceptionalPrimes.end();
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kX1: return "x1";
    case Variant::kX1X2: return "x1x2";
    default: return "x1x2x3";
  }
}

Variant parse_variant(std::string_view text) {
  if (text == "x1") return Variant::kX1;
  if (text == "x1x2") return Variant::kX1X2;
  if (text == "x1x2x3") return Variant::kX1X2X3;
  throw DomainError("unknown projection '" + std::string(text) + "' (expected x1|x1x2|x1x2x3)");
}

int degree(Variant v) {
  switch (v) {
    case Variant::kX1: return 1;
    case Variant::kX1X2: return 2;
    default: return 3;
  }
}

namespace {

void require_prime(std::uint64_t p) {
  if (!arith::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (p > kMaxCountPrime) {
    throw ResourceError("prime " + std::to_string(p) + " exceeds the counting limit", static_cast<double>(p),
                        static_cast<double>(kMaxCountPrime));
  }
}

std::uint64_t reduce(std::int64_t n, std::uint64_t p) {
  const auto m = static_cast<std::int64_t>(p);
  const std::int64_t r = n % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

// The form and t reduced mod p, with a quadratic-character table.
class ModularForm {
 public:
  ModularForm(const TernaryForm& f, std::int64_t t, std::uint64_t p) : p_(p), t_(reduce(t, p)) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) coef_[i][j] = i == j ? reduce(f.diag(i), p) : reduce(f.cross(i, j), p);
    }
    if (p > 2) {
      chi_.assign(p, -1);
      chi_[0] = 0;
      for (std::uint64_t x = 1; x <= p / 2; ++x) chi_[x * x % p] = 1;
    }
  }

  // Solutions with x_i = 0 for every i set in zero_mask.
  std::uint64_t count(unsigned zero_mask) const {
    std::vector<int> free;
    for (int i = 0; i < 3; ++i) {
      if (!(zero_mask & (1u << i))) free.push_back(i);
    }
    if (free.empty()) return t_ == 0 ? 1 : 0;

    int pivot = free.back();
    for (int i : free) {
      if (coef_[i][i] != 0) pivot = i;
    }
    std::vector<int> loop;
    for (int i : free) {
      if (i != pivot) loop.push_back(i);
    }

    if (loop.size() == 2 && p_ > 2 && coef_[pivot][pivot] != 0) return count_plane(pivot, loop[0], loop[1]);

    std::array<std::uint64_t, 3> x{0, 0, 0};
    std::uint64_t total = 0;
    const std::uint64_t combos = loop.size() == 0 ? 1 : loop.size() == 1 ? p_ : p_ * p_;
    for (std::uint64_t k = 0; k < combos; ++k) {
      if (loop.size() >= 1) x[loop[0]] = k % p_;
      if (loop.size() == 2) x[loop[1]] = k / p_;
      // A z^2 + B z + C with z the pivot coordinate.
      const std::uint64_t a = coef_[pivot][pivot];
      std::uint64_t b = 0, c = (p_ - t_) % p_;
      for (int i : loop) {
        b = (b + coef_[pivot][i] * x[i]) % p_;
        c = (c + coef_[i][i] * x[i] % p_ * x[i]) % p_;
      }
      if (loop.size() == 2) c = (c + coef_[loop[0]][loop[1]] * x[loop[0]] % p_ * x[loop[1]]) % p_;
      total += roots(a, b, c);
    }
    return total;
  }

 private:
  // Odd p, pivot square coefficient a != 0. Along each row x_j = const the
  // discriminant b^2 - 4ac is a quadratic in x_i, stepped by forward
  // differences.
  std::uint64_t count_plane(int pv, int i, int j) const {
    const std::uint64_t P = p_;
    const auto md = [P](std::uint64_t v) { return v % P; };
    const std::uint64_t fa = md(4 * coef_[pv][pv]);
    const std::uint64_t s = coef_[pv][i];
    const std::uint64_t D2 = md(s * s + P * P - fa * coef_[i][i] % P);
    const std::uint64_t dd = md(2 * D2);
    std::uint64_t total = 0;
    for (std::uint64_t xj = 0; xj < P; ++xj) {
      const std::uint64_t bj = md(coef_[pv][j] * xj);
      const std::uint64_t C0 = md(md(coef_[j][j] * xj) * xj + P - t_);
      const std::uint64_t L = md(coef_[i][j] * xj);
      std::uint64_t disc = md(bj * bj + P * P - fa * C0 % P);
      const std::uint64_t D1 = md(2 * bj % P * s + P * P - fa * L % P);
      std::uint64_t delta = md(D1 + D2);
      for (std::uint64_t xi = 0; xi < P; ++xi) {
        total += static_cast<std::uint64_t>(1 + chi_[disc]);
        disc += delta;
        if (disc >= P) disc -= P;
        delta += dd;
        if (delta >= P) delta -= P;
      }
    }
    return total;
  }

  std::uint64_t roots(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    if (p_ == 2) {
      return (c == 0 ? 1 : 0) + ((a + b + c) % 2 == 0 ? 1 : 0);
    }
    if (a == 0) {
      if (b != 0) return 1;
      return c == 0 ? p_ : 0;
    }
    const std::uint64_t disc = (b * b % p_ + p_ - 4 * a % p_ * c % p_) % p_;
    return static_cast<std::uint64_t>(1 + chi_[disc]);
  }

  std::uint64_t p_;
  std::uint64_t t_;
  std::array<std::array<std::uint64_t, 3>, 3> coef_{};
  std::vector<int> chi_;
};

}  // namespace

int legendre(std::int64_t n, std::uint64_t p) {
  if (p < 3 || !arith::is_prime(p)) throw DomainError("legendre requires an odd prime, got " + std::to_string(p));
  const std::uint64_t r = reduce(n, p);
  if (r == 0) return 0;
  return arith::pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::uint64_t count_Vt_mod_p(const TernaryForm& f, std::int64_t t, std::uint64_t p) {
  require_prime(p);
  return ModularForm(f, t, p).count(0);
}

bool det_t_squarefree(const TernaryForm& f, std::int64_t t) {
  const quad::Determinant det = quad::det_form(f);
  if (!det.integral || t == 0) return false;
  const Integer dt = abs(numerator(det.value) * t);
  if (dt == 0 || dt > Integer(std::numeric_limits<std::uint64_t>::max())) return false;
  return arith::is_squarefree(dt.convert_to<std::uint64_t>());
}

std::uint64_t cassels_count(const TernaryForm& f, std::int64_t t, std::uint64_t p) {
  if (p < 3 || !arith::is_prime(p)) throw DomainError("cassels_count requires an odd prime p");
  const quad::Determinant det = quad::det_form(f);
  if (!det.integral) throw DomainError("cassels_count requires an integral determinant d(f)");
  const Integer dt = numerator(det.value) * t;
  if (dt % p == 0) throw DomainError("cassels_count requires p not dividing d(f) t");
  if (!det_t_squarefree(f, t)) throw DomainError("cassels_count requires |d(f) t| square-free");
  Integer residue = (-dt) % p;
  if (residue < 0) residue += p;
  const int symbol = legendre(residue.convert_to<std::int64_t>(), p);
  return symbol > 0 ? p * p + p : p * p - p;
}

std::uint64_t count_V0_mod_p(const TernaryForm& f, std::int64_t t, std::uint64_t p, Variant variant) {
  require_prime(p);
  const ModularForm m(f, t, p);
  switch (variant) {
    case Variant::kX1:
      return m.count(0b001);
    case Variant::kX1X2:
      return m.count(0b001) + m.count(0b010) - m.count(0b011);
    default:
      return m.count(0b001) + m.count(0b010) + m.count(0b100) - m.count(0b011) - m.count(0b101) -
             m.count(0b110) + m.count(0b111);
  }
}

OmegaEntry omega_over_p(const TernaryForm& f, std::int64_t t, std::uint64_t p, Variant variant) {
  OmegaEntry e;
  e.p = p;
  e.count_V = count_Vt_mod_p(f, t, p);
  if (e.count_V == 0) {
    throw DegenerateError("V_t(Z/" + std::to_string(p) + "Z) is empty; omega(p)/p undefined");
  }
  e.count_V0 = count_V0_mod_p(f, t, p, variant);
  e.raw = Rational(e.count_V0, e.count_V);
  e.sieve = in_exceptional_set(p) ? Rational(0) : e.raw;
  e.is_bad = e.count_V0 == e.count_V;
  return e;
}

Rational omega_d(const TernaryForm& f, std::int64_t t, std::uint64_t d, Variant variant) {
  if (d == 0 || !arith::is_squarefree(d)) throw DomainError("omega_d requires square-free d >= 1");
  Rational out = 1;
  for (const auto& [p, e] : arith::factorize(d)) {
    out *= omega_over_p(f, t, p, variant).sieve;
    if (out == 0) break;
  }
  return out;
}

BadPrimeReport bad_primes(const TernaryForm& f, std::int64_t t, Variant variant, std::uint64_t p_max) {
  if (p_max < 7) throw DomainError("bad_primes requires p_max >= 7");
  if (p_max > kMaxTablePrime) {
    throw ResourceError("p_max exceeds the tabulation limit", static_cast<double>(p_max),
                        static_cast<double>(kMaxTablePrime));
  }
  BadPrimeReport report;
  for (std::uint64_t p : arith::primes_in(2, p_max)) {
    if (count_V0_mod_p(f, t, p, variant) == count_Vt_mod_p(f, t, p)) report.bad.push_back(p);
  }
  report.theorem_applies = det_t_squarefree(f, t);
  report.subset_of_B = std::all_of(report.bad.begin(), report.bad.end(), in_exceptional_set);
  return report;
}

namespace {

constexpr std::uint64_t kMaxPrimePower = 1'000'000;
constexpr std::uint64_t kLiftBudget = 200'000'000;

int valuation(__int128 n, std::uint64_t p) {
  if (n == 0) return 1 << 20;
  int v = 0;
  while (n % static_cast<__int128>(p) == 0) {
    n /= static_cast<__int128>(p);
    ++v;
  }
  return v;
}

class PrimePowerSearch {
 public:
  PrimePowerSearch(const TernaryForm& f, std::int64_t t, std::uint64_t p, int k)
      : f_(f), t_(t), p_(p), k_(k), twice_gram_(f.doubled_gram()) {}

  bool run() { return descend({0, 0, 0}, 0, 1); }

 private:
  // x solves f = t mod p^level; modulus = p^level.
  bool descend(const quad::Vec3& base, int level, std::uint64_t modulus) {
    for (std::uint64_t y = 0; y < p_ * p_ * p_; ++y) {
      if (++visited_ > kLiftBudget) {
        throw ResourceError("solvable_mod: lifting search exceeded its budget", static_cast<double>(visited_),
                            static_cast<double>(kLiftBudget));
      }
      quad::Vec3 x = base;
      const std::uint64_t digits[3] = {y % p_, y / p_ % p_, y / (p_ * p_)};
      for (int i = 0; i < 3; ++i) x[i] += static_cast<std::int64_t>(digits[i] * modulus);
      const int v = valuation(quad::eval_form_i128(f_, x) - t_, p_);
      if (v < level + 1) continue;
      if (v >= k_) return true;
      int g = 1 << 20;
      for (int i = 0; i < 3; ++i) {
        __int128 partial = 0;
        for (int j = 0; j < 3; ++j) partial += static_cast<__int128>(twice_gram_[i][j]) * x[j];
        g = std::min(g, valuation(partial, p_));
      }
      if (v > 2 * g) return true;  // Hensel lift to a p-adic zero
      if (descend(x, level + 1, modulus * p_)) return true;
    }
    return false;
  }

  TernaryForm f_;
  std::int64_t t_;
  std::uint64_t p_;
  int k_;
  quad::Matrix3I twice_gram_;
  std::uint64_t visited_ = 0;
};

}  // namespace

bool solvable_mod(const TernaryForm& f, std::int64_t t, std::uint64_t d) {
  if (d == 0) throw DomainError("solvable_mod requires d >= 1");
  for (const auto& [p, k] : arith::factorize(d)) {
    std::uint64_t power = 1;
    for (int i = 0; i < k; ++i) power *= p;
    if (power > kMaxPrimePower) {
      throw ResourceError("solvable_mod: prime power " + std::to_string(power) + " exceeds 10^6",
                          static_cast<double>(power), static_cast<double>(kMaxPrimePower));
    }
    if (!PrimePowerSearch(f, t, p, k).run()) return false;
  }
  return true;
}

Rational LocalDensityTable::omega_d(std::uint64_t d) const {
  if (d == 0 || !arith::is_squarefree(d)) throw DomainError("omega_d requires square-free d >= 1");
  Rational out = 1;
  for (const auto& [p, e] : arith::factorize(d)) {
    const auto it = entries.find(p);
    if (it == entries.end()) {
      throw DomainError("prime " + std::to_string(p) + " is beyond the density table (p_max=" +
                        std::to_string(p_max) + ")");
    }
    out *= it->second.sieve;
  }
  return out;
}

std::string LocalDensityTable::to_csv() const {
  std::ostringstream os;
  os << "p,count_V,count_V0,omega_num,omega_den,is_bad\n";
  for (const auto& [p, e] : entries) {
    os << p << ',' << e.count_V << ',' << e.count_V0 << ',' << numerator(e.sieve) << ','
       << denominator(e.sieve) << ',' << (e.is_bad ? 1 : 0) << '\n';
  }
  return os.str();
}

LocalDensityTable build_density_table(const TernaryForm& f, std::int64_t t, Variant variant, std::uint64_t p_max) {
  if (p_max > kMaxTablePrime) {
    throw ResourceError("p_max exceeds the tabulation limit", static_cast<double>(p_max),
                        static_cast<double>(kMaxTablePrime));
  }
  LocalDensityTable table;
  table.form = f;
  table.t = t;
  table.variant = variant;
  table.p_max = p_max;
  table.caveat =
      "densities are taken over all of V(Z/pZ); the decomposition into orbits is not computed, so "
      "per-orbit densities may differ";
  for (std::uint64_t p : arith::primes_in(2, p_max)) {
    OmegaEntry e = omega_over_p(f, t, p, variant);
    if (e.is_bad) table.bad_set.push_back(p);
    table.entries.emplace(p, std::move(e));
  }
  return table;
}

}  // namespace sievelab::local
