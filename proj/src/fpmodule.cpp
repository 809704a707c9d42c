#include "overlat/fpmodule.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "overlat/congruence.hpp"

namespace overlat::repmod {

namespace {

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t result = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

void require_prime(std::int64_t p) {
  // entries stay in [0, p), so products fit in int64 as long as p^2 does
  if (p > (std::int64_t{1} << 31))
    throw std::invalid_argument("modulus too large for this representation");
  if (!congruence::is_prime(congruence::Bigint(p)))
    throw std::invalid_argument("modulus is not prime");
}

}  // namespace

FpMatrix::FpMatrix(int rows, int cols, std::int64_t p)
    : rows_(rows), cols_(cols), p_(p), data_(static_cast<size_t>(rows) * cols, 0) {}

FpMatrix FpMatrix::identity(int n, std::int64_t p) {
  FpMatrix m(n, n, p);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(cols_, rows_, p_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  if (a.cols_ != b.rows_ || a.p_ != b.p_)
    throw std::invalid_argument("matrix product: shape or modulus mismatch");
  FpMatrix out(a.rows_, b.cols_, a.p_);
  for (int r = 0; r < a.rows_; ++r)
    for (int k = 0; k < a.cols_; ++k) {
      std::int64_t v = a.at(r, k);
      if (v == 0) continue;
      for (int c = 0; c < b.cols_; ++c)
        out.at(r, c) = (out.at(r, c) + v * b.at(k, c)) % a.p_;
    }
  return out;
}

std::int64_t FpMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant: not square");
  FpMatrix m = *this;
  std::int64_t det = 1;
  for (int col = 0; col < cols_; ++col) {
    int pivot = -1;
    for (int r = col; r < rows_; ++r)
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int c = 0; c < cols_; ++c) std::swap(m.at(pivot, c), m.at(col, c));
      det = (p_ - det) % p_;
    }
    det = det * m.at(col, col) % p_;
    std::int64_t inv = mod_inverse(m.at(col, col), p_);
    for (int r = col + 1; r < rows_; ++r) {
      std::int64_t factor = m.at(r, col) * inv % p_;
      if (factor == 0) continue;
      for (int c = col; c < cols_; ++c)
        m.at(r, c) = (m.at(r, c) - factor * m.at(col, c) % p_ + p_) % p_;
    }
  }
  return det;
}

bool FpMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = r + 1; c < cols_; ++c)
      if (at(r, c) != at(c, r)) return false;
  return true;
}

bool FpModule::gram_invariant() const {
  if (!gram) return false;
  if (!gram->is_symmetric() || gram->determinant() == 0) return false;
  for (const FpMatrix& a : action)
    if (a * *gram * a.transpose() != *gram) return false;
  return true;
}

FpMatrix perm_matrix(const Permutation& g, std::int64_t p) {
  require_prime(p);
  FpMatrix m(g.degree(), g.degree(), p);
  for (int i = 0; i < g.degree(); ++i) m.at(i, g(i)) = 1;
  return m;
}

namespace {

// Coordinates of a sum-zero vector v in the basis f_i = e_i - e_{i+1}:
// c_i = v_0 + ... + v_i.
std::vector<std::int64_t> to_f_coords(const std::vector<std::int64_t>& v, std::int64_t p) {
  std::vector<std::int64_t> c(v.size() - 1);
  std::int64_t s = 0;
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    s = (s + v[i]) % p;
    c[i] = s;
  }
  return c;
}

FpMatrix action_on_sum_zero(const Permutation& g, std::int64_t p) {
  const int d = g.degree();
  FpMatrix m(d - 1, d - 1, p);
  for (int i = 0; i < d - 1; ++i) {
    // image of f_i = e_i - e_{i+1} under g
    std::vector<std::int64_t> img(d, 0);
    img[g(i)] = 1;
    img[g(i + 1)] = (img[g(i + 1)] + p - 1) % p;
    std::vector<std::int64_t> c = to_f_coords(img, p);
    for (int j = 0; j < d - 1; ++j) m.at(i, j) = c[j];
  }
  return m;
}

// Gram of the f basis under the standard dot product: tridiagonal 2 / -1.
FpMatrix tridiagonal_gram(int dim, std::int64_t p) {
  FpMatrix g(dim, dim, p);
  for (int i = 0; i < dim; ++i) {
    g.at(i, i) = 2 % p;
    if (i + 1 < dim) {
      g.at(i, i + 1) = p - 1;
      g.at(i + 1, i) = p - 1;
    }
  }
  return g;
}

}  // namespace

FpModule sum_zero_module(std::span<const Permutation> gens, std::int64_t p) {
  require_prime(p);
  if (gens.empty()) throw std::invalid_argument("sum_zero_module: no generators");
  const int d = gens.front().degree();
  if (d < 2) throw std::invalid_argument("sum_zero_module: degree must be >= 2");
  FpModule mod;
  mod.p = p;
  mod.dim = d - 1;
  for (const Permutation& g : gens) mod.action.push_back(action_on_sum_zero(g, p));
  FpMatrix gram = tridiagonal_gram(d - 1, p);
  if (gram.determinant() != 0) mod.gram = std::move(gram);
  return mod;
}

FpModule deleted_module(std::span<const Permutation> gens, std::int64_t p) {
  FpModule single = sum_zero_module(gens, p);
  const int d = single.dim + 1;
  if (d % p != 0) return single;

  // p | d: the all-ones vector lies in the sum-zero space, with f-coordinates
  // u_i = i+1. Quotient with the last coordinate as pivot (u_{d-2} = -1).
  const int dim = d - 2;
  std::vector<std::int64_t> u(d - 1);
  for (int i = 0; i < d - 1; ++i) u[i] = (i + 1) % p;
  std::int64_t pivot_inv = mod_inverse(u[d - 2], p);
  auto reduce = [&](const std::vector<std::int64_t>& c) {
    std::int64_t t = c[d - 2] * pivot_inv % p;
    std::vector<std::int64_t> out(dim);
    for (int i = 0; i < dim; ++i) out[i] = ((c[i] - t * u[i]) % p + p) % p;
    return out;
  };

  FpModule mod;
  mod.p = p;
  mod.dim = dim;
  for (const FpMatrix& a : single.action) {
    FpMatrix reduced(dim, dim, p);
    for (int i = 0; i < dim; ++i) {
      std::vector<std::int64_t> row(d - 1);
      for (int j = 0; j < d - 1; ++j) row[j] = a.at(i, j);
      std::vector<std::int64_t> r = reduce(row);
      for (int j = 0; j < dim; ++j) reduced.at(i, j) = r[j];
    }
    mod.action.push_back(std::move(reduced));
  }
  // The all-ones vector is orthogonal to the sum-zero space, so the dot
  // product descends to the quotient; on the representatives f_0..f_{d-3}
  // it is the leading block of the tridiagonal form.
  FpMatrix gram(dim, dim, p);
  FpMatrix full = tridiagonal_gram(d - 1, p);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) gram.at(i, j) = full.at(i, j);
  if (gram.determinant() != 0) mod.gram = std::move(gram);
  return mod;
}

Subspace spin(std::span<const std::int64_t> seed, std::span<const FpMatrix> action) {
  if (action.empty()) throw std::invalid_argument("spin: no action matrices");
  const std::int64_t p = action.front().p();
  const int dim = action.front().cols();
  if (static_cast<int>(seed.size()) != dim)
    throw std::invalid_argument("spin: seed dimension mismatch");
  bool nonzero = std::any_of(seed.begin(), seed.end(), [](std::int64_t x) { return x != 0; });
  if (!nonzero) throw std::invalid_argument("spin: zero seed");

  Subspace sub;
  std::vector<int> pivots;
  auto try_insert = [&](std::vector<std::int64_t> v) {
    for (size_t k = 0; k < sub.basis.size(); ++k) {
      std::int64_t coeff = v[pivots[k]];
      if (coeff == 0) continue;
      for (int j = 0; j < dim; ++j)
        v[j] = ((v[j] - coeff * sub.basis[k][j]) % p + p) % p;
    }
    for (int j = 0; j < dim; ++j) {
      if (v[j] != 0) {
        std::int64_t inv = mod_inverse(v[j], p);
        for (int c = 0; c < dim; ++c) v[c] = v[c] * inv % p;
        sub.basis.push_back(std::move(v));
        pivots.push_back(j);
        return true;
      }
    }
    return false;
  };

  try_insert(std::vector<std::int64_t>(seed.begin(), seed.end()));
  for (size_t head = 0; head < sub.basis.size() && static_cast<int>(sub.basis.size()) < dim;
       ++head) {
    std::vector<std::int64_t> row = sub.basis[head];
    for (const FpMatrix& a : action) {
      std::vector<std::int64_t> img(dim, 0);
      for (int i = 0; i < dim; ++i) {
        if (row[i] == 0) continue;
        for (int j = 0; j < dim; ++j) img[j] = (img[j] + row[i] * a.at(i, j)) % p;
      }
      try_insert(std::move(img));
      if (static_cast<int>(sub.basis.size()) == dim) break;
    }
  }
  sub.rank = static_cast<int>(sub.basis.size());
  return sub;
}

bool is_irreducible(const FpModule& module, std::uint64_t line_bound) {
  if (module.dim == 0) throw std::invalid_argument("is_irreducible: zero module");
  if (module.dim == 1) return true;
  // Count projective lines: (p^dim - 1)/(p - 1).
  std::uint64_t lines = 0;
  for (int i = 0; i < module.dim; ++i) {
    lines = lines * static_cast<std::uint64_t>(module.p) + 1;
    if (lines > line_bound)
      throw std::runtime_error("is_irreducible: projective line bound exceeded");
  }

  // Canonical line representatives: first nonzero coordinate equal to 1.
  std::vector<std::int64_t> v(module.dim, 0);
  std::uint64_t checked = 0;
  for (int lead = module.dim - 1; lead >= 0; --lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    for (;;) {
      ++checked;
      if (spin(v, module.action).rank < module.dim) return false;
      // next vector with free coordinates after `lead`
      int j = module.dim - 1;
      while (j > lead && v[j] == module.p - 1) v[j--] = 0;
      if (j == lead) break;
      ++v[j];
    }
  }
  if (checked != lines) throw std::logic_error("is_irreducible: line enumeration mismatch");
  return true;
}

std::optional<FpMatrix> invariant_gram(const FpModule& module) {
  if (!module.gram) return std::nullopt;
  if (module.gram->determinant() == 0) return std::nullopt;
  FpModule probe = module;
  if (!probe.gram_invariant())
    throw std::logic_error("invariant_gram: stored form is not invariant");
  return module.gram;
}

std::pair<std::vector<Permutation>, std::vector<Permutation>> fano_actions() {
  // Points: the 7 nonzero vectors of GF(2)^3, encoded as integers 1..7
  // (point index v-1). Lines: kernels of the 7 nonzero functionals phi,
  // line index phi-1; v lies on line phi iff popcount(phi & v) is even.
  auto matvec = [](const std::array<int, 3>& rows, int v) {
    int out = 0;
    for (int i = 0; i < 3; ++i)
      out |= (__builtin_popcount(rows[i] & v) & 1) << i;
    return out;
  };
  const std::array<int, 3> m1 = {0b010, 0b001, 0b100};  // cyclic basis rotation
  const std::array<int, 3> m2 = {0b110, 0b010, 0b001};  // transvection e0 -> e0+e1

  std::vector<std::vector<int>> line_sets;
  for (int phi = 1; phi <= 7; ++phi) {
    std::vector<int> line;
    for (int v = 1; v <= 7; ++v)
      if (__builtin_popcount(phi & v) % 2 == 0) line.push_back(v);
    if (line.size() != 3) throw std::logic_error("fano_actions: line is not a triple");
    line_sets.push_back(std::move(line));
  }

  auto on_points = [&](const std::array<int, 3>& m) {
    std::vector<int> im(7);
    for (int v = 1; v <= 7; ++v) im[v - 1] = matvec(m, v) - 1;
    return Permutation(std::move(im));
  };
  auto on_lines = [&](const std::array<int, 3>& m) {
    std::vector<int> im(7);
    for (int phi = 0; phi < 7; ++phi) {
      std::vector<int> mapped;
      for (int v : line_sets[phi]) mapped.push_back(matvec(m, v));
      std::sort(mapped.begin(), mapped.end());
      auto it = std::find(line_sets.begin(), line_sets.end(), mapped);
      if (it == line_sets.end()) throw std::logic_error("fano_actions: image is not a line");
      im[phi] = static_cast<int>(it - line_sets.begin());
    }
    return Permutation(std::move(im));
  };

  std::vector<Permutation> points{on_points(m1), on_points(m2)};
  std::vector<Permutation> lines{on_lines(m1), on_lines(m2)};
  return {std::move(points), std::move(lines)};
}

}  // namespace overlat::repmod
