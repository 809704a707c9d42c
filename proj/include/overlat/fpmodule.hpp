#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "overlat/permutation.hpp"

namespace overlat::repmod {

using permgroup::Permutation;

/// Dense matrix over GF(p), p a small prime. Entries in [0, p).
class FpMatrix {
public:
  FpMatrix() = default;
  FpMatrix(int rows, int cols, std::int64_t p);
  static FpMatrix identity(int n, std::int64_t p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t p() const { return p_; }

  std::int64_t& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  std::int64_t at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  FpMatrix transpose() const;
  std::int64_t determinant() const;
  bool is_symmetric() const;

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

private:
  int rows_ = 0, cols_ = 0;
  std::int64_t p_ = 2;
  std::vector<std::int64_t> data_;
};

/// A matrix representation of a permutation group over GF(p). Action is on
/// row vectors, v -> v*A, so matrix(g then h) = matrix(g) * matrix(h) and an
/// invariant form satisfies A * gram * A^T = gram.
struct FpModule {
  std::int64_t p = 2;
  int dim = 0;
  std::vector<FpMatrix> action;       // one matrix per group generator
  std::optional<FpMatrix> gram;       // invariant symmetric form, if nondegenerate

  /// True iff gram is present, symmetric, nondegenerate and A gram A^T = gram
  /// for every action matrix.
  bool gram_invariant() const;
};

/// 0/1 permutation matrix with entry (i, g(i)) = 1. Throws if p is not prime.
FpMatrix perm_matrix(const Permutation& g, std::int64_t p);

/// Restriction of the permutation module to the sum-zero subspace, in the
/// basis f_i = e_i - e_{i+1} (dimension d-1). The gram field carries the
/// restricted dot product (tridiagonal 2/-1) when nondegenerate, which
/// happens exactly when p does not divide d.
FpModule sum_zero_module(std::span<const Permutation> gens, std::int64_t p);

/// The deleted module (dimension d-1); when p divides d, further quotients
/// by the all-ones vector against the f basis with the last coordinate as
/// pivot (dimension d-2, the doubly-deleted module). The induced form is
/// attached when nondegenerate.
FpModule deleted_module(std::span<const Permutation> gens, std::int64_t p);

/// Row-reduced basis of the smallest action-invariant subspace containing
/// seed, with its rank. Throws on a zero seed.
struct Subspace {
  std::vector<std::vector<std::int64_t>> basis;  // reduced row echelon rows
  int rank = 0;
};
Subspace spin(std::span<const std::int64_t> seed, std::span<const FpMatrix> action);

inline constexpr std::uint64_t kDefaultLineBound = 100'000;

/// Exhaustive irreducibility: spins one representative of every projective
/// line; true iff every spin fills the space. Throws when the line count
/// (p^dim - 1)/(p - 1) exceeds the bound.
bool is_irreducible(const FpModule& module, std::uint64_t line_bound = kDefaultLineBound);

/// Recomputes and verifies the module's invariant form; absent if the
/// induced form is degenerate.
std::optional<FpMatrix> invariant_gram(const FpModule& module);

/// The two 2-transitive degree-7 actions of the simple group of order 168:
/// on the points and on the lines of the Fano plane, built from GF(2)^3.
/// Generator lists correspond under a fixed isomorphism (entry i of one list
/// and entry i of the other are images of the same abstract generator).
std::pair<std::vector<Permutation>, std::vector<Permutation>> fano_actions();

}  // namespace overlat::repmod
