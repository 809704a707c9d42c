#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace overlat::congruence {

using Bigint = boost::multiprecision::cpp_int;

/// Jacobi symbol (a/n) for odd positive n; equals the Legendre symbol when
/// n is prime. Throws if n is even or nonpositive.
int jacobi(Bigint a, Bigint n);

enum class Primality { composite, prime, probable_prime };

/// Exact below 2^64 (deterministic Miller-Rabin witness set). Above, strong
/// probable prime to 64 bases from a fixed-seed generator plus a strong
/// Lucas test; composite verdicts are always exact.
Primality classify_prime(const Bigint& n);
bool is_prime(const Bigint& n);

/// (q^n - 1)/(q - 1), exact integer arithmetic. Requires q >= 2, n >= 1.
Bigint repunit(std::uint64_t q, std::uint64_t n);

/// True iff one of: q = 2 and n > 2; q = 1 (mod 8) and n = 7 (mod 8);
/// q = 5 (mod 8) and n = 3 (mod 8). Equivalent to repunit(q, n) = 7 (mod 8).
bool lemma_condition(std::uint64_t q, std::uint64_t n);

/// d-cycles are conjugate to their inverses inside A_d exactly when
/// d = 1 (mod 4). Requires odd d >= 3.
bool dcycle_real_in_alternating(std::int64_t d);

/// Regular unipotent classes in an odd-dimensional orthogonal group of
/// dimension m are rational exactly when m = +-1 (mod 8). Requires odd m.
bool regular_unipotent_rational(std::int64_t m);

/// For prime d: the combined condition for the special repunit series,
/// d = 7 (mod 8). Throws if d is not prime.
bool special_example_condition(const Bigint& d);

/// A set of residue classes describing primes: nonempty residues, each
/// coprime to the modulus, sorted and deduplicated. `empty_intersection`
/// marks the intentional empty result of an inconsistent CRT intersection.
struct CongruenceFamily {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> residues;
  std::string label;
  enum class Provenance { given, crt_derived } provenance = Provenance::given;
  bool empty_intersection = false;

  bool contains(std::int64_t x) const;
  /// Throws unless the invariants hold (or empty_intersection is set).
  void check() const;
};

/// All residue classes mod lcm(moduli) satisfying every input family, by
/// pairwise Chinese-remainder combination. An inconsistent system yields a
/// family with no residues and empty_intersection set.
CongruenceFamily crt_intersect(std::span<const CongruenceFamily> conditions,
                               std::string label = {});

/// All primes <= limit lying in the family's residue classes, ascending.
std::vector<std::int64_t> enumerate_primes(const CongruenceFamily& family,
                                           std::int64_t limit);

/// The k smallest primes in the family, ascending.
std::vector<std::int64_t> first_primes_in(const CongruenceFamily& family, int k);

struct RepunitHit {
  std::uint64_t n;
  std::size_t digits;  // decimal digits of d = repunit(q, n)
  Primality verdict;   // prime or probable_prime
};

/// All prime n <= n_max with repunit(q, n) prime; with `require_special`,
/// restricted to n with lemma_condition(q, n) (equivalently d = 7 mod 8).
/// Composite n always yield composite d, so only prime n are tested.
std::vector<RepunitHit> search_repunit_primes(std::uint64_t q, std::uint64_t n_max,
                                              bool require_special);

/// Primes q with n < q <= q_max and repunit(q, n) prime, filtered by
/// `q_residue` when given; the default filter is the odd-q clause of the
/// lemma for n mod 8 (q = 1 mod 8 when n = 7 mod 8, q = 5 mod 8 when
/// n = 3 mod 8, nothing otherwise). Reproduces the reference tables, which
/// list q exceeding n; smaller q belong to the fixed-q searches.
struct ResidueFilter {
  std::int64_t modulus;
  std::vector<std::int64_t> residues;
};
std::vector<std::uint64_t> search_q_for_fixed_n(
    std::uint64_t n, std::uint64_t q_max,
    std::optional<ResidueFilter> q_residue = std::nullopt);

}  // namespace overlat::congruence
