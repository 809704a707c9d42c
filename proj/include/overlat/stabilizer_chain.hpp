#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "overlat/permutation.hpp"

namespace overlat::permgroup {

using Bigint = boost::multiprecision::cpp_int;

/// Default cap on exhaustive element enumeration.
inline constexpr std::uint64_t kDefaultExhaustiveBound = 10'000'000;

/// Base-and-strong-generating-set structure built by a deterministic
/// Schreier-Sims run. Immutable after construction; safe for concurrent
/// read-only use.
///
/// Every construction ends with a verification pass: all Schreier
/// generators of every level must sift to the identity, which certifies
/// order = product of fundamental orbit lengths.
class StabilizerChain {
public:
  struct Level {
    int base_point = -1;
    std::vector<Permutation> gens;             // strong gens fixing all earlier base points
    std::vector<int> orbit;                    // discovery order; orbit[0] == base_point
    std::vector<int> orbit_pos;                // point -> index into orbit, or -1
    std::vector<Permutation> transversal;      // transversal[k] maps base_point -> orbit[k]
    std::vector<Permutation> transversal_inv;  // cached inverses
  };

  /// Deterministic build: generators are processed in the given order; a new
  /// base point is the smallest point moved by the residue that creates its
  /// level. `base_prefix` optionally forces the first base points (used for
  /// point stabilizers). Throws if gens is empty.
  static StabilizerChain build(std::vector<Permutation> gens,
                               std::vector<int> base_prefix = {});

  /// Chain for the group generated by this group together with `extra`.
  /// Equivalent to a fresh build but reuses the existing levels.
  StabilizerChain extended_with(std::span<const Permutation> extra) const;

  /// Builds a chain but gives up as soon as the partial orbit product
  /// exceeds `max_order` (the product only grows, so the final order would
  /// too). Returns nullopt on abort.
  static std::optional<StabilizerChain> try_build_bounded(std::vector<Permutation> gens,
                                                          std::uint64_t max_order);

  int degree() const { return degree_; }
  const Bigint& order() const { return order_; }
  const std::vector<Level>& levels() const { return levels_; }
  const std::vector<Permutation>& generators() const { return input_gens_; }
  std::vector<int> base() const;

  /// Membership by sifting: true iff g reduces to the identity.
  bool contains(const Permutation& g) const;

  /// Sift residue (identity iff g is a member).
  Permutation sift(const Permutation& g) const;

  /// Number of elements as uint64; throws if order exceeds `bound`.
  std::uint64_t element_count(std::uint64_t bound = kDefaultExhaustiveBound) const;

  /// idx-th element in the fixed mixed-radix transversal order,
  /// idx in [0, element_count()).
  Permutation element_at(std::uint64_t idx) const;

  /// Position of g in the element ordering, or nullopt if not a member.
  std::optional<std::uint64_t> rank_of(const Permutation& g) const;

  /// Generators of the stabilizer of `point`, computed from a rebased chain.
  /// Its order is order()/|orbit(point)| by orbit-stabilizer.
  std::vector<Permutation> point_stabilizer(int point) const;

private:
  friend class ChainBuilder;
  int degree_ = 0;
  Bigint order_ = 1;
  std::vector<Permutation> input_gens_;
  std::vector<Level> levels_;
};

/// Spec-level name for StabilizerChain::build.
StabilizerChain schreier_sims(std::vector<Permutation> gens);

/// Lazily enumerated view over all elements of a chain, in transversal order.
class Elements {
public:
  explicit Elements(const StabilizerChain& chain,
                    std::uint64_t bound = kDefaultExhaustiveBound)
      : chain_(&chain), count_(chain.element_count(bound)) {}

  class iterator {
   public:
    iterator(const StabilizerChain* c, std::uint64_t i) : chain_(c), idx_(i) {}
    Permutation operator*() const { return chain_->element_at(idx_); }
    iterator& operator++() { ++idx_; return *this; }
    bool operator!=(const iterator& o) const { return idx_ != o.idx_; }
   private:
    const StabilizerChain* chain_;
    std::uint64_t idx_;
  };

  iterator begin() const { return {chain_, 0}; }
  iterator end() const { return {chain_, count_}; }
  std::uint64_t size() const { return count_; }

private:
  const StabilizerChain* chain_;
  std::uint64_t count_;
};

inline Elements elements(const StabilizerChain& chain,
                         std::uint64_t bound = kDefaultExhaustiveBound) {
  return Elements(chain, bound);
}

/// Exhaustive search for g in G with g^-1 a g in B for every a in A.
/// A decision procedure when order(G) is within `bound`; returns the first
/// match in element order, or nullopt if none exists.
std::optional<Permutation> find_conjugator(
    const StabilizerChain& G, std::span<const Permutation> A,
    const StabilizerChain& B, std::uint64_t bound = kDefaultExhaustiveBound);

}  // namespace overlat::permgroup
