#include "overlat/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace overlat::congruence {

namespace mp = boost::multiprecision;

int jacobi(Bigint a, Bigint n) {
  if (n <= 0 || n % 2 == 0)
    throw std::invalid_argument("jacobi: n must be odd and positive");
  a %= n;
  if (a < 0) a += n;
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      int r = static_cast<int>(n % 8);
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

namespace {

constexpr std::uint64_t kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                          31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                                          73, 79, 83, 89, 97};

// Strong probable prime test to base a; n odd, n > 2, with n-1 = d*2^s.
bool strong_probable_prime(const Bigint& n, const Bigint& a, const Bigint& d, unsigned s) {
  Bigint x = mp::powm(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool is_perfect_square(const Bigint& n) {
  if (n < 0) return false;
  Bigint r = mp::sqrt(n);
  return r * r == n;
}

// Strong Lucas probable prime test with Selfridge parameters: the first
// D in 5, -7, 9, -11, ... with (D/n) = -1; P = 1, Q = (1 - D)/4.
// With n+1 = d*2^s (d odd), n passes iff U_d = 0 or V_{d*2^r} = 0 for
// some r < s.
bool strong_lucas_probable_prime(const Bigint& n) {
  std::int64_t d_param = 5;
  for (;;) {
    int j = jacobi(Bigint(d_param), n);
    if (j == -1) break;
    if (j == 0 && mp::abs(Bigint(d_param)) != n) return false;  // shares a factor
    d_param = d_param > 0 ? -(d_param + 2) : -(d_param - 2);
  }
  const Bigint D = d_param;
  const Bigint Q = (1 - D) / 4;

  Bigint delta = n + 1;
  unsigned s = 0;
  while (delta % 2 == 0) {
    delta /= 2;
    ++s;
  }
  const Bigint d_odd = delta;

  auto halve_mod = [&n](Bigint v) {
    if (v % 2 != 0) v += n;
    return (v / 2) % n;
  };

  // Binary ladder over the bits of d_odd, most significant first.
  Bigint u = 0, v = 2, qk = 1;  // U_0, V_0, Q^0
  const std::size_t bits = mp::msb(d_odd) + 1;
  for (std::size_t i = bits; i-- > 0;) {
    // (U, V, Q^k) -> (U_{2k}, V_{2k}, Q^{2k})
    u = u * v % n;
    v = (v * v - 2 * qk) % n;
    if (v < 0) v += n;
    qk = qk * qk % n;
    if (mp::bit_test(d_odd, static_cast<unsigned>(i))) {
      // -> (U_{2k+1}, V_{2k+1}, Q^{2k+1})
      Bigint u1 = halve_mod(u + v);
      Bigint v1 = halve_mod(D * u % n + v);
      u = u1 % n;
      v = v1 % n;
      if (u < 0) u += n;
      if (v < 0) v += n;
      qk = qk * Q % n;
      if (qk < 0) qk += n;
    }
  }
  if (u == 0 || v == 0) return true;
  for (unsigned r = 1; r < s; ++r) {
    v = (v * v - 2 * qk) % n;
    if (v < 0) v += n;
    if (v == 0) return true;
    qk = qk * qk % n;
  }
  return false;
}

}  // namespace

Primality classify_prime(const Bigint& n) {
  if (n < 2) return Primality::composite;
  for (std::uint64_t p : kSmallPrimes) {
    if (n == p) return Primality::prime;
    if (n % p == 0) return Primality::composite;
  }
  Bigint d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  static const Bigint kTwo64 = Bigint(1) << 64;
  if (n < kTwo64) {
    // Deterministic witness set for n < 3.3e24, ample for 64-bit inputs.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
      if (!strong_probable_prime(n, Bigint(a), d, s)) return Primality::composite;
    return Primality::prime;
  }
  // 64 bases from a fixed-seed generator, then a strong Lucas test.
  std::mt19937_64 rng(0x5eed5eed5eedULL);
  for (int i = 0; i < 64; ++i) {
    Bigint a = 2 + Bigint(rng()) % (n - 3);
    if (!strong_probable_prime(n, a, d, s)) return Primality::composite;
  }
  if (is_perfect_square(n)) return Primality::composite;
  if (!strong_lucas_probable_prime(n)) return Primality::composite;
  return Primality::probable_prime;
}

bool is_prime(const Bigint& n) { return classify_prime(n) != Primality::composite; }

Bigint repunit(std::uint64_t q, std::uint64_t n) {
  if (q < 2) throw std::invalid_argument("repunit: q must be >= 2");
  if (n < 1) throw std::invalid_argument("repunit: n must be >= 1");
  Bigint qn = mp::pow(Bigint(q), static_cast<unsigned>(n));
  Bigint num = qn - 1;
  Bigint den = Bigint(q) - 1;
  Bigint quotient = num / den;
  if (quotient * den != num)
    throw std::logic_error("repunit: non-exact division");
  return quotient;
}

bool lemma_condition(std::uint64_t q, std::uint64_t n) {
  if (q == 2 && n > 2) return true;
  if (q % 8 == 1 && n % 8 == 7) return true;
  if (q % 8 == 5 && n % 8 == 3) return true;
  return false;
}

bool dcycle_real_in_alternating(std::int64_t d) {
  if (d % 2 == 0) throw std::invalid_argument("dcycle_real_in_alternating: d must be odd");
  return d % 4 == 1;
}

bool regular_unipotent_rational(std::int64_t m) {
  if (m % 2 == 0) throw std::invalid_argument("regular_unipotent_rational: m must be odd");
  std::int64_t r = m % 8;
  if (r < 0) r += 8;
  return r == 1 || r == 7;
}

bool special_example_condition(const Bigint& d) {
  if (!is_prime(d)) throw std::invalid_argument("special_example_condition: d must be prime");
  return d % 8 == 7;
}

bool CongruenceFamily::contains(std::int64_t x) const {
  std::int64_t r = x % modulus;
  if (r < 0) r += modulus;
  return std::binary_search(residues.begin(), residues.end(), r);
}

void CongruenceFamily::check() const {
  if (modulus <= 0) throw std::invalid_argument("congruence family: modulus must be positive");
  if (residues.empty()) {
    if (!empty_intersection)
      throw std::invalid_argument("congruence family: empty residue set");
    return;
  }
  if (!std::is_sorted(residues.begin(), residues.end()))
    throw std::invalid_argument("congruence family: residues not sorted");
  if (std::adjacent_find(residues.begin(), residues.end()) != residues.end())
    throw std::invalid_argument("congruence family: duplicate residues");
  for (std::int64_t r : residues) {
    if (r < 0 || r >= modulus)
      throw std::invalid_argument("congruence family: residue out of range");
    if (std::gcd(r, modulus) != 1)
      throw std::invalid_argument("congruence family: residue not coprime to modulus");
  }
}

namespace {

// x = r1 (mod m1), x = r2 (mod m2) -> x (mod lcm), or nullopt if inconsistent.
std::optional<std::int64_t> crt_pair(std::int64_t r1, std::int64_t m1,
                                     std::int64_t r2, std::int64_t m2) {
  std::int64_t g = std::gcd(m1, m2);
  if ((r2 - r1) % g != 0) return std::nullopt;
  std::int64_t lcm = m1 / g * m2;
  // Solve m1*t = r2 - r1 (mod m2) via extended gcd on (m1/g, m2/g).
  std::int64_t a = m1 / g, m = m2 / g;
  std::int64_t diff = ((r2 - r1) / g) % m;
  // Modular inverse of a mod m by extended Euclid.
  std::int64_t old_r = a % m, r = m, old_s = 1, s = 0;
  if (old_r < 0) old_r += m;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  std::int64_t inv = old_s % m;
  if (inv < 0) inv += m;
  __int128 t = static_cast<__int128>(diff) * inv % m;
  if (t < 0) t += m;
  __int128 x = static_cast<__int128>(r1) + static_cast<__int128>(m1) * static_cast<std::int64_t>(t);
  x %= lcm;
  if (x < 0) x += lcm;
  return static_cast<std::int64_t>(x);
}

}  // namespace

CongruenceFamily crt_intersect(std::span<const CongruenceFamily> conditions,
                               std::string label) {
  if (conditions.empty())
    throw std::invalid_argument("crt_intersect: no conditions");
  for (const auto& c : conditions) c.check();

  CongruenceFamily acc = conditions.front();
  for (size_t i = 1; i < conditions.size(); ++i) {
    const CongruenceFamily& next = conditions[i];
    std::int64_t g = std::gcd(acc.modulus, next.modulus);
    std::int64_t lcm = acc.modulus / g * next.modulus;
    std::vector<std::int64_t> combined;
    for (std::int64_t r1 : acc.residues)
      for (std::int64_t r2 : next.residues)
        if (auto x = crt_pair(r1, acc.modulus, r2, next.modulus)) combined.push_back(*x);
    std::sort(combined.begin(), combined.end());
    combined.erase(std::unique(combined.begin(), combined.end()), combined.end());
    acc.modulus = lcm;
    acc.residues = std::move(combined);
  }
  acc.label = std::move(label);
  acc.provenance = CongruenceFamily::Provenance::crt_derived;
  acc.empty_intersection = acc.residues.empty();
  acc.check();
  return acc;
}

std::vector<std::int64_t> enumerate_primes(const CongruenceFamily& family,
                                           std::int64_t limit) {
  if (limit < 2) return {};
  std::vector<std::int64_t> out;
  for (std::int64_t x = 2; x <= limit; ++x)
    if (family.contains(x) && is_prime(Bigint(x))) out.push_back(x);
  return out;
}

std::vector<std::int64_t> first_primes_in(const CongruenceFamily& family, int k) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = 2; static_cast<int>(out.size()) < k; ++x)
    if (family.contains(x) && is_prime(Bigint(x))) out.push_back(x);
  return out;
}

std::vector<RepunitHit> search_repunit_primes(std::uint64_t q, std::uint64_t n_max,
                                              bool require_special) {
  if (q < 2) throw std::invalid_argument("search_repunit_primes: q must be >= 2");
  std::vector<RepunitHit> out;
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    if (!is_prime(Bigint(n))) continue;  // composite n forces composite d
    if (require_special && !lemma_condition(q, n)) continue;
    Bigint d = repunit(q, n);
    Primality verdict = classify_prime(d);
    if (verdict == Primality::composite) continue;
    out.push_back({n, d.str().size(), verdict});
  }
  return out;
}

std::vector<std::uint64_t> search_q_for_fixed_n(std::uint64_t n, std::uint64_t q_max,
                                                std::optional<ResidueFilter> q_residue) {
  if (n < 2) throw std::invalid_argument("search_q_for_fixed_n: n must be >= 2");
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = n + 1; q <= q_max; ++q) {
    if (!is_prime(Bigint(q))) continue;
    if (q_residue) {
      std::int64_t r = static_cast<std::int64_t>(q % q_residue->modulus);
      if (std::find(q_residue->residues.begin(), q_residue->residues.end(), r) ==
          q_residue->residues.end())
        continue;
    } else {
      // Odd-q clause of the lemma for this n.
      bool keep = (n % 8 == 7 && q % 8 == 1) || (n % 8 == 3 && q % 8 == 5);
      if (!keep) continue;
    }
    if (is_prime(repunit(q, n))) out.push_back(q);
  }
  return out;
}

}  // namespace overlat::congruence
