#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sievelab::arith {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Prime factorization with multiplicity as (prime, exponent), ascending.
/// Trial division by small primes, then Pollard rho (Brent) on the cofactor.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

/// Primes p with lo <= p <= hi.
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi);

/// Floor of the square root.
std::uint64_t isqrt(std::uint64_t n);
/// Returns true and sets root when n is a perfect square.
bool perfect_square(__int128 n, __int128& root);

}  // namespace sievelab::arith
