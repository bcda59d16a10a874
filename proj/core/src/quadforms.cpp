#include "sievelab/quadforms.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "sievelab/arith.hpp"
#include "sievelab/errors.hpp"

namespace sievelab::quad {

TernaryForm TernaryForm::parse(std::string_view text) {
  std::array<std::int64_t, 6> c{};
  std::size_t start = 0;
  for (int i = 0; i < 6; ++i) {
    const std::size_t end = i < 5 ? text.find(',', start) : text.size();
    if (end == std::string_view::npos) {
      throw DomainError("form needs six comma-separated integers a11,a22,a33,a12,a13,a23: '" +
                        std::string(text) + "'");
    }
    std::string_view field = text.substr(start, end - start);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), c[i]);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
      throw DomainError("bad coefficient '" + std::string(field) + "' in form '" + std::string(text) + "'");
    }
    start = end + 1;
  }
  return {c[0], c[1], c[2], c[3], c[4], c[5]};
}

std::string TernaryForm::to_string() const {
  std::ostringstream os;
  os << a11 << ',' << a22 << ',' << a33 << ',' << a12 << ',' << a13 << ',' << a23;
  return os.str();
}

std::int64_t TernaryForm::diag(int i) const {
  switch (i) {
    case 0: return a11;
    case 1: return a22;
    default: return a33;
  }
}

std::int64_t TernaryForm::cross(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i == 0 && j == 1) return a12;
  if (i == 0 && j == 2) return a13;
  return a23;
}

Matrix3I TernaryForm::doubled_gram() const {
  Matrix3I g{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g[i][j] = i == j ? 2 * diag(i) : cross(i, j);
  }
  return g;
}

Matrix3Q TernaryForm::gram() const {
  const Matrix3I twice = doubled_gram();
  Matrix3Q g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g[i][j] = Rational(twice[i][j], 2);
  }
  return g;
}

Integer eval_form(const TernaryForm& f, const Vec3& x) {
  const Integer x1 = x[0], x2 = x[1], x3 = x[2];
  return f.a11 * x1 * x1 + f.a22 * x2 * x2 + f.a33 * x3 * x3 + f.a12 * x1 * x2 + f.a13 * x1 * x3 +
         f.a23 * x2 * x3;
}

__int128 eval_form_i128(const TernaryForm& f, const Vec3& x) {
  const __int128 x1 = x[0], x2 = x[1], x3 = x[2];
  return f.a11 * x1 * x1 + f.a22 * x2 * x2 + f.a33 * x3 * x3 + f.a12 * x1 * x2 + f.a13 * x1 * x3 +
         f.a23 * x2 * x3;
}

namespace {

Rational det3(const Matrix3Q& g) {
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

}  // namespace

Determinant det_form(const TernaryForm& f) {
  Determinant d;
  d.value = det3(f.gram());
  d.integral = denominator(d.value) == 1;
  return d;
}

Diagonalization diagonalize(const TernaryForm& f) {
  Matrix3Q g = f.gram();
  Matrix3Q p;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) p[i][j] = i == j ? 1 : 0;
  }
  auto swap_index = [&](int a, int b) {
    std::swap(g[a], g[b]);
    for (auto& row : g) std::swap(row[a], row[b]);
    for (auto& row : p) std::swap(row[a], row[b]);
  };
  // e_k <- e_k + c e_j on the basis, with the matching congruence on g.
  auto add_index = [&](int k, int j, const Rational& c) {
    for (auto& row : p) row[k] += c * row[j];
    for (int i = 0; i < 3; ++i) g[k][i] += c * g[j][i];
    for (int i = 0; i < 3; ++i) g[i][k] += c * g[i][j];
  };

  for (int k = 0; k < 3; ++k) {
    if (g[k][k] == 0) {
      int nonzero_diag = -1;
      for (int j = k + 1; j < 3 && nonzero_diag < 0; ++j) {
        if (g[j][j] != 0) nonzero_diag = j;
      }
      if (nonzero_diag >= 0) {
        swap_index(k, nonzero_diag);
      } else {
        int partner = -1;
        for (int j = k + 1; j < 3 && partner < 0; ++j) {
          if (g[k][j] != 0) partner = j;
        }
        if (partner < 0) throw DegenerateError("quadratic form " + f.to_string() + " is degenerate");
        add_index(k, partner, 1);
      }
    }
    for (int i = k + 1; i < 3; ++i) {
      if (g[i][k] == 0) continue;
      add_index(i, k, -g[i][k] / g[k][k]);
    }
  }
  Diagonalization out;
  for (int i = 0; i < 3; ++i) out.d[i] = g[i][i];
  out.basis = p;
  return out;
}

Signature signature(const TernaryForm& f) {
  const Diagonalization diag = diagonalize(f);
  Signature s;
  for (const Rational& d : diag.d) (d > 0 ? s.pos : s.neg)++;
  return s;
}

std::string Place::to_string() const { return is_infinite() ? "inf" : std::to_string(prime); }

namespace {

// Integer in the same square class as q.
Integer square_class_integer(const Rational& q) { return numerator(q) * denominator(q); }

int legendre_unit(const Integer& u, std::uint64_t p) {
  Integer r = u % p;
  if (r < 0) r += p;
  const auto residue = r.convert_to<std::uint64_t>();
  return arith::pow_mod(residue, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int mod8(const Integer& u) {
  Integer r = u % 8;
  if (r < 0) r += 8;
  return r.convert_to<int>();
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, Place v) {
  if (a == 0 || b == 0) throw DomainError("hilbert_symbol requires nonzero arguments");
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  const std::uint64_t p = v.prime;
  if (!arith::is_prime(p)) throw DomainError("hilbert_symbol: place " + std::to_string(p) + " is not prime");

  Integer u = square_class_integer(a);
  Integer w = square_class_integer(b);
  int alpha = 0, beta = 0;
  while (u % p == 0) {
    u /= p;
    ++alpha;
  }
  while (w % p == 0) {
    w /= p;
    ++beta;
  }
  if (p == 2) {
    const int um = mod8(u), wm = mod8(w);
    const int eps_u = ((um - 1) / 2) & 1, eps_w = ((wm - 1) / 2) & 1;
    const int om_u = ((um * um - 1) / 8) & 1, om_w = ((wm * wm - 1) / 8) & 1;
    const int e = eps_u * eps_w + alpha * om_w + beta * om_u;
    return (e & 1) ? -1 : 1;
  }
  int sign = 1;
  if ((alpha * beta) % 2 == 1 && p % 4 == 3) sign = -sign;
  if (beta % 2 == 1) sign *= legendre_unit(u, p);
  if (alpha % 2 == 1) sign *= legendre_unit(w, p);
  return sign;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kIsotropic: return "isotropic";
    case Verdict::kAnisotropic: return "anisotropic";
    default: return "inconclusive";
  }
}

CoordinateSolver::CoordinateSolver(const TernaryForm& f, std::int64_t t) : form_(f), t_(t), pivot_(2) {
  for (int i = 2; i >= 0; --i) {
    if (f.diag(i) != 0) {
      pivot_ = i;
      break;
    }
  }
  int k = 0;
  for (int i = 0; i < 3; ++i) {
    if (i != pivot_) free_[k++] = i;
  }
}

namespace {

__int128 divide_exact(__int128 num, __int128 den, bool& exact) {
  exact = num % den == 0;
  return num / den;
}

}  // namespace

CoordinateSolver::Roots CoordinateSolver::solve(std::int64_t u, std::int64_t w) const {
  const int i = free_[0], j = free_[1];
  const __int128 a = form_.diag(pivot_);
  const __int128 b = static_cast<__int128>(form_.cross(pivot_, i)) * u + static_cast<__int128>(form_.cross(pivot_, j)) * w;
  const __int128 c = static_cast<__int128>(form_.diag(i)) * u * u + static_cast<__int128>(form_.diag(j)) * w * w +
                     static_cast<__int128>(form_.cross(i, j)) * u * w - t_;
  Roots roots;
  if (a == 0) {
    // b * x + c = 0
    if (b == 0) {
      roots.every_value = c == 0;
      return roots;
    }
    bool exact = false;
    const __int128 x = divide_exact(-c, b, exact);
    if (exact) roots.values[roots.count++] = static_cast<std::int64_t>(x);
    return roots;
  }
  const __int128 disc = b * b - 4 * a * c;
  __int128 s = 0;
  if (!arith::perfect_square(disc, s)) return roots;
  const __int128 den = 2 * a;
  bool exact = false;
  const __int128 lo = divide_exact(-b - s, den, exact);
  if (exact) roots.values[roots.count++] = static_cast<std::int64_t>(lo);
  if (s != 0) {
    const __int128 hi = divide_exact(-b + s, den, exact);
    if (exact) roots.values[roots.count++] = static_cast<std::int64_t>(hi);
  }
  if (roots.count == 2 && roots.values[0] > roots.values[1]) std::swap(roots.values[0], roots.values[1]);
  return roots;
}

namespace {

std::int64_t height(const Vec3& x) {
  return std::max({std::llabs(x[0]), std::llabs(x[1]), std::llabs(x[2])});
}

bool primitive(const Vec3& x) {
  return std::gcd(std::gcd(std::llabs(x[0]), std::llabs(x[1])), std::llabs(x[2])) == 1;
}

bool better(const Vec3& candidate, const std::optional<Vec3>& best) {
  if (!best) return true;
  const auto hc = height(candidate), hb = height(*best);
  return hc != hb ? hc < hb : candidate < *best;
}

}  // namespace

std::optional<Vec3> find_zero(const TernaryForm& f, int height_bound) {
  if (height_bound < 1) return std::nullopt;
  const CoordinateSolver solver(f, 0);
  const auto [fi, fj] = solver.free();
  const int piv = solver.pivot();
  std::optional<Vec3> best;
  const std::int64_t h = height_bound;
  for (std::int64_t u = -h; u <= h; ++u) {
    for (std::int64_t w = -h; w <= h; ++w) {
      const auto roots = solver.solve(u, w);
      auto consider = [&](std::int64_t z) {
        if (std::llabs(z) > h) return;
        Vec3 x{};
        x[fi] = u;
        x[fj] = w;
        x[piv] = z;
        if (x == Vec3{0, 0, 0} || !primitive(x)) return;
        if (better(x, best)) best = x;
      };
      if (roots.every_value) {
        for (std::int64_t z = -h; z <= h; ++z) consider(z);
      } else {
        for (int r = 0; r < roots.count; ++r) consider(roots.values[r]);
      }
    }
  }
  return best;
}

namespace {

std::vector<std::uint64_t> odd_prime_divisors(const Integer& n) {
  Integer m = abs(n);
  if (m > Integer(std::numeric_limits<std::uint64_t>::max())) {
    throw ResourceError("local isotropy test: coefficient exceeds 64 bits", 64, 64);
  }
  std::vector<std::uint64_t> out;
  for (const auto& [p, e] : arith::factorize(m.convert_to<std::uint64_t>())) {
    if (p != 2) out.push_back(p);
  }
  return out;
}

}  // namespace

IsotropyCertificate is_isotropic_Q(const TernaryForm& f, int search_height, IsotropyOptions options) {
  const Diagonalization diag = diagonalize(f);
  IsotropyCertificate cert;

  if (options.use_local_tests) {
    // <d1,d2,d3> is isotropic at v iff (-d1 d3, -d2 d3)_v = 1.
    const Rational a = -diag.d[0] * diag.d[2];
    const Rational b = -diag.d[1] * diag.d[2];
    std::vector<Place> places{Place::infinity(), Place::at(2)};
    std::vector<std::uint64_t> odd;
    for (const Rational* q : {&a, &b}) {
      for (auto p : odd_prime_divisors(numerator(*q))) odd.push_back(p);
      for (auto p : odd_prime_divisors(denominator(*q))) odd.push_back(p);
    }
    std::sort(odd.begin(), odd.end());
    odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
    for (auto p : odd) places.push_back(Place::at(p));

    for (const Place& v : places) {
      const int h = hilbert_symbol(a, b, v);
      cert.local_data.emplace_back(v, h);
      if (h == -1) cert.obstructions.push_back(v);
    }
    if (!cert.obstructions.empty()) {
      cert.verdict = Verdict::kAnisotropic;
      return cert;
    }
  }

  if (auto w = find_zero(f, search_height)) {
    cert.verdict = Verdict::kIsotropic;
    cert.witness = w;
    return cert;
  }
  if (options.use_local_tests) {
    // Locally isotropy everywhere guarantees a rational zero; widen the search.
    if (auto w = find_zero(f, std::max(4 * search_height, 64))) {
      cert.verdict = Verdict::kIsotropic;
      cert.witness = w;
      return cert;
    }
  }
  cert.verdict = Verdict::kInconclusive;
  return cert;
}

}  // namespace sievelab::quad
