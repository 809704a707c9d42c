#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "overlat/stabilizer_chain.hpp"

namespace overlat::interval {

using permgroup::Bigint;
using permgroup::kDefaultExhaustiveBound;
using permgroup::Permutation;
using permgroup::StabilizerChain;

/// Default cap for the independent all_subgroups oracle.
inline constexpr std::uint64_t kDefaultOracleBound = 1'000;

/// A subgroup in an overgroup interval, with its discovery generators and
/// a verified chain.
struct SubgroupNode {
  std::vector<Permutation> generators;
  StabilizerChain chain;
  Bigint order;
};

enum class ShapeKind { Chain, BooleanRank2, Other };

struct Shape {
  ShapeKind kind = ShapeKind::Other;
  int node_count = 0;
  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(const Shape& shape);
Shape shape_from_string(const std::string& text);

/// The complete lattice of subgroups between H and G. nodes.front() is H,
/// nodes.back() is G; nodes are sorted ascending by (order, lexicographically
/// sorted generator images). edges (i, j) are the covering relations of
/// containment: node i is maximal in node j.
struct IntervalLattice {
  std::vector<SubgroupNode> nodes;
  std::vector<std::pair<int, int>> edges;
  Shape shape;
};

/// Breadth-first closure: starting from <H>, repeatedly forms <S, g> for
/// each discovered node S != G and deduplicates by order plus mutual
/// containment. One candidate per S-double-coset is taken, in element order;
/// <S, g> is constant on SgS, so the node set and discovery order match the
/// full element sweep. Completeness: any K in [H, G] is a chain of
/// single-element extensions inside K.
/// Throws if <H> is not contained in G or order(G) exceeds the bound.
IntervalLattice interval_lattice(const StabilizerChain& G,
                                 const std::vector<Permutation>& H,
                                 std::uint64_t bound = kDefaultExhaustiveBound);

/// Shape of an already-computed lattice (recomputed from the edges).
Shape classify_shape(const IntervalLattice& lattice);

/// Indices of the nodes covered by the top node G.
std::vector<int> maximal_overgroups(const IntervalLattice& lattice);

/// True iff the interval [<H>, M] has exactly two nodes.
bool is_maximal_in(const std::vector<Permutation>& H, const StabilizerChain& M,
                   std::uint64_t bound = kDefaultExhaustiveBound);

/// All transitive subgroups of G of exactly the given order. Exhaustive
/// closure search over cyclic and 2-generated candidates (first generator
/// normalized to a class representative), closed under G-conjugation, with
/// pruning by element orders. Complete for targets generated by at most two
/// elements.
std::vector<SubgroupNode> find_transitive_subgroups(
    const StabilizerChain& G, std::uint64_t target_order,
    std::uint64_t bound = kDefaultExhaustiveBound);

/// Same search, grouped into G-conjugacy classes (each class sorted, classes
/// ordered by their first subgroup).
std::vector<std::vector<SubgroupNode>> find_transitive_subgroup_classes(
    const StabilizerChain& G, std::uint64_t target_order,
    std::uint64_t bound = kDefaultExhaustiveBound);

/// Verdict assembly for one (G, H) pair: the interval, its shape, maximality
/// of H in each top, and a conjugator between the two tops when the shape is
/// the rank-2 diamond.
struct CounterexampleReport {
  IntervalLattice lattice;
  bool tops_conjugate = false;
  std::optional<Permutation> conjugator;
  bool h_maximal_in_tops = false;
  bool verdict = false;  // true only when every check passes
};

CounterexampleReport verify_counterexample(const StabilizerChain& G,
                                           const std::vector<Permutation>& H,
                                           std::uint64_t bound = kDefaultExhaustiveBound);

/// Independent oracle: every subgroup of G, by breadth-first closure from
/// the trivial group using an explicit multiplication table over element
/// sets (no stabilizer chains in the enumeration path). element_sets[i]
/// lists element indices into `universe`, sorted.
struct AllSubgroups {
  std::vector<Permutation> universe;               // all elements of G
  std::vector<std::vector<std::uint32_t>> element_sets;
  std::vector<SubgroupNode> nodes;                 // chains attached afterwards
};
AllSubgroups all_subgroups(const StabilizerChain& G,
                           std::uint64_t oracle_bound = kDefaultOracleBound);

}  // namespace overlat::interval
