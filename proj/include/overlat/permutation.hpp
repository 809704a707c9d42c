#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace overlat::permgroup {

/// A bijection on {0, ..., degree-1}, stored as the image array.
/// All composition in this project is left-to-right: compose(a, b) maps
/// x to b(a(x)), i.e. "apply a, then b".
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(int degree);                 // identity
  explicit Permutation(std::vector<int> images);    // throws if not a bijection

  static Permutation identity(int degree) { return Permutation(degree); }

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int point) const { return images_[point]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  /// Multiplicative order (lcm of cycle lengths).
  long long order() const;

  /// True for even permutations (products of an even number of transpositions).
  bool is_even() const;

  /// Smallest point moved, or -1 for the identity.
  int min_moved_point() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> images_;
};

/// Left-to-right product: x -> b(a(x)). Throws on degree mismatch.
Permutation compose(const Permutation& a, const Permutation& b);

/// g^-1 * a * g (with left-to-right composition throughout).
Permutation conjugate(const Permutation& a, const Permutation& g);

/// Smallest set containing `point` and closed under all generators.
/// Returned in BFS discovery order.
std::vector<int> orbit(std::span<const Permutation> gens, int point);

/// True if the generated group has a single orbit on all `degree` points.
bool is_transitive(std::span<const Permutation> gens, int degree);

/// Parses disjoint cycle notation, e.g. "(1,2)(3,4)" or "()" for the
/// identity. Points are 1-based when `one_based` is set. Whitespace between
/// tokens is ignored. Throws std::invalid_argument on repeated points,
/// points out of range, or malformed syntax.
Permutation parse_cycles(const std::string& text, int degree, bool one_based);

/// Canonical disjoint-cycle form: cycles ordered by smallest moved point,
/// each cycle starting at its smallest element; "()" for the identity.
/// Round-trips bit-exactly with parse_cycles.
std::string print_cycles(const Permutation& p, bool one_based);

}  // namespace overlat::permgroup
