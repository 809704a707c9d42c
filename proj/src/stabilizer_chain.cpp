#include "overlat/stabilizer_chain.hpp"

#include <algorithm>
#include <stdexcept>

namespace overlat::permgroup {

namespace {

struct SiftResult {
  Permutation residue;
  size_t stop_level;  // first level the residue could not pass
};

struct OrderBoundExceeded {};

}  // namespace

/// Builder used for both fresh construction and one-generator extension.
/// Implements the deterministic (non-randomized) incremental Schreier-Sims:
/// residues that survive sifting become strong generators at every level
/// whose base prefix they fix, and levels are re-closed bottom-up.
class ChainBuilder {
public:
  ChainBuilder(int degree, std::vector<int> base_prefix) : degree_(degree) {
    for (int b : base_prefix) {
      if (b < 0 || b >= degree_)
        throw std::invalid_argument("base point out of range");
      append_level(b);
    }
  }

  /// Abort construction (by throwing OrderBoundExceeded) once the partial
  /// orbit product passes this value.
  void set_order_bound(std::uint64_t max_order) { max_order_ = max_order; }

  explicit ChainBuilder(const StabilizerChain& existing)
      : degree_(existing.degree()), levels_(existing.levels()) {}

  void add_generator(const Permutation& g) {
    if (g.degree() != degree_)
      throw std::invalid_argument("generator degree mismatch");
    SiftResult r = sift_from(g, 0);
    if (r.residue.is_identity()) return;
    insert_residue(r);
    complete_from(static_cast<int>(r.stop_level));
  }

  StabilizerChain finish(std::vector<Permutation> input_gens) {
    verify();
    StabilizerChain chain;
    chain.degree_ = degree_;
    chain.input_gens_ = std::move(input_gens);
    chain.levels_ = std::move(levels_);
    chain.order_ = 1;
    for (const auto& lvl : chain.levels_) chain.order_ *= lvl.orbit.size();
    return chain;
  }

private:
  using Level = StabilizerChain::Level;

  void append_level(int base_point) {
    Level lvl;
    lvl.base_point = base_point;
    lvl.orbit = {base_point};
    lvl.orbit_pos.assign(degree_, -1);
    lvl.orbit_pos[base_point] = 0;
    lvl.transversal = {Permutation(degree_)};
    lvl.transversal_inv = {Permutation(degree_)};
    levels_.push_back(std::move(lvl));
  }

  // Deterministic orbit closure: points processed in discovery order,
  // generators in list order. Transversal rep for t.s is u_t * s.
  void close_orbit(Level& lvl) {
    for (size_t head = 0; head < lvl.orbit.size(); ++head) {
      for (const Permutation& s : lvl.gens) {
        int img = s(lvl.orbit[head]);
        if (lvl.orbit_pos[img] < 0) {
          lvl.orbit_pos[img] = static_cast<int>(lvl.orbit.size());
          lvl.orbit.push_back(img);
          Permutation rep = compose(lvl.transversal[head], s);
          lvl.transversal_inv.push_back(rep.inverse());
          lvl.transversal.push_back(std::move(rep));
        }
      }
    }
    check_order_bound();
  }

  void check_order_bound() const {
    if (max_order_ == 0) return;
    // The orbit product only grows during construction, so it is a lower
    // bound on the final order.
    std::uint64_t product = 1;
    for (const Level& lvl : levels_) {
      product *= lvl.orbit.size();
      if (product > max_order_) throw OrderBoundExceeded{};
    }
  }

  SiftResult sift_from(Permutation g, size_t start) const {
    for (size_t i = start; i < levels_.size(); ++i) {
      const Level& lvl = levels_[i];
      int img = g(lvl.base_point);
      if (img == lvl.base_point) continue;
      int pos = lvl.orbit_pos[img];
      if (pos < 0) return {std::move(g), i};
      g = compose(g, lvl.transversal_inv[pos]);
    }
    return {std::move(g), levels_.size()};
  }

  // The residue fixes base points of all levels before stop_level; record it
  // as a strong generator on every level it belongs to.
  void insert_residue(const SiftResult& r) {
    size_t j = r.stop_level;
    if (j == levels_.size()) append_level(r.residue.min_moved_point());
    for (size_t i = 0; i <= j && i < levels_.size(); ++i)
      levels_[i].gens.push_back(r.residue);
  }

  // Re-close levels from `start` upward (deeper levels first), processing
  // Schreier generators; any surviving residue is inserted and the loop
  // descends to its level. Levels deeper than the current one are always
  // complete, so sifting inside the loop is sound.
  void complete_from(int start) {
    int i = std::min<int>(start, static_cast<int>(levels_.size()) - 1);
    while (i >= 0) {
      bool clean = process_level(static_cast<size_t>(i));
      if (clean) {
        --i;
      } else {
        i = static_cast<int>(last_insert_level_);
        i = std::min<int>(i, static_cast<int>(levels_.size()) - 1);
      }
    }
  }

  // Returns true if every Schreier generator of level i sifts to identity.
  // Otherwise inserts the first surviving residue and returns false.
  bool process_level(size_t i) {
    Level& lvl = levels_[i];
    close_orbit(lvl);
    for (size_t t = 0; t < lvl.orbit.size(); ++t) {
      for (const Permutation& s : lvl.gens) {
        int img = s(lvl.orbit[t]);
        Permutation sch =
            compose(compose(lvl.transversal[t], s), lvl.transversal_inv[lvl.orbit_pos[img]]);
        if (sch.is_identity()) continue;
        SiftResult r = sift_from(std::move(sch), i + 1);
        if (!r.residue.is_identity()) {
          insert_residue(r);
          last_insert_level_ = r.stop_level;
          return false;
        }
      }
    }
    return true;
  }

  // Final certification: every Schreier generator of every level must sift
  // to the identity. Guarantees order = product of orbit lengths.
  void verify() const {
    for (size_t i = 0; i < levels_.size(); ++i) {
      const Level& lvl = levels_[i];
      for (size_t t = 0; t < lvl.orbit.size(); ++t) {
        for (const Permutation& s : lvl.gens) {
          int img = s(lvl.orbit[t]);
          int pos = lvl.orbit_pos[img];
          if (pos < 0) throw std::logic_error("chain verification: orbit not closed");
          Permutation sch =
              compose(compose(lvl.transversal[t], s), lvl.transversal_inv[pos]);
          SiftResult r = sift_from(std::move(sch), i + 1);
          if (!r.residue.is_identity())
            throw std::logic_error("chain verification: Schreier generator does not sift");
        }
      }
    }
  }

  int degree_;
  std::vector<StabilizerChain::Level> levels_;
  size_t last_insert_level_ = 0;
  std::uint64_t max_order_ = 0;  // 0 = unbounded
};

namespace {

// First base point: smallest point moved by any input generator. Deeper
// base points are the smallest points moved by the residues that create
// their levels.
std::vector<int> initial_base(const std::vector<Permutation>& gens, int degree) {
  int first = degree;
  for (const auto& g : gens) {
    int m = g.min_moved_point();
    if (m >= 0 && m < first) first = m;
  }
  if (first < degree) return {first};
  return {};
}

}  // namespace

StabilizerChain StabilizerChain::build(std::vector<Permutation> gens,
                                       std::vector<int> base_prefix) {
  if (gens.empty())
    throw std::invalid_argument("schreier_sims: empty generator list");
  const int degree = gens.front().degree();
  for (const auto& g : gens)
    if (g.degree() != degree)
      throw std::invalid_argument("schreier_sims: generators of unequal degree");
  if (base_prefix.empty()) base_prefix = initial_base(gens, degree);
  ChainBuilder builder(degree, std::move(base_prefix));
  for (const auto& g : gens) builder.add_generator(g);
  return builder.finish(std::move(gens));
}

StabilizerChain schreier_sims(std::vector<Permutation> gens) {
  return StabilizerChain::build(std::move(gens));
}

std::optional<StabilizerChain> StabilizerChain::try_build_bounded(
    std::vector<Permutation> gens, std::uint64_t max_order) {
  if (gens.empty())
    throw std::invalid_argument("try_build_bounded: empty generator list");
  try {
    const int degree = gens.front().degree();
    ChainBuilder builder(degree, initial_base(gens, degree));
    builder.set_order_bound(max_order);
    for (const auto& g : gens) builder.add_generator(g);
    return builder.finish(std::move(gens));
  } catch (const OrderBoundExceeded&) {
    return std::nullopt;
  }
}

StabilizerChain StabilizerChain::extended_with(std::span<const Permutation> extra) const {
  ChainBuilder builder(*this);
  for (const auto& g : extra) builder.add_generator(g);
  std::vector<Permutation> gens = input_gens_;
  gens.insert(gens.end(), extra.begin(), extra.end());
  return builder.finish(std::move(gens));
}

std::vector<int> StabilizerChain::base() const {
  std::vector<int> b;
  b.reserve(levels_.size());
  for (const auto& lvl : levels_) b.push_back(lvl.base_point);
  return b;
}

Permutation StabilizerChain::sift(const Permutation& g) const {
  if (g.degree() != degree_)
    throw std::invalid_argument("sift: degree mismatch");
  Permutation cur = g;
  for (const Level& lvl : levels_) {
    int img = cur(lvl.base_point);
    if (img == lvl.base_point) continue;
    int pos = lvl.orbit_pos[img];
    if (pos < 0) return cur;
    cur = compose(cur, lvl.transversal_inv[pos]);
  }
  return cur;
}

bool StabilizerChain::contains(const Permutation& g) const {
  return sift(g).is_identity();
}

std::uint64_t StabilizerChain::element_count(std::uint64_t bound) const {
  if (order_ > Bigint(bound))
    throw std::runtime_error("element enumeration bound exceeded");
  return order_.convert_to<std::uint64_t>();
}

Permutation StabilizerChain::element_at(std::uint64_t idx) const {
  // Mixed radix over orbit positions, level 0 least significant. The element
  // with digits (p_0, ..., p_{k-1}) is u^{(k-1)}_{p_{k-1}} * ... * u^{(0)}_{p_0}
  // (deepest transversal applied first), matching sift order: sifting peels
  // level 0 first.
  std::vector<std::uint64_t> digit(levels_.size());
  for (size_t i = 0; i < levels_.size(); ++i) {
    std::uint64_t radix = levels_[i].orbit.size();
    digit[i] = idx % radix;
    idx /= radix;
  }
  if (idx != 0) throw std::out_of_range("element_at: index exceeds group order");
  Permutation result(degree_);
  for (size_t i = levels_.size(); i-- > 0;)
    result = compose(result, levels_[i].transversal[digit[i]]);
  return result;
}

std::optional<std::uint64_t> StabilizerChain::rank_of(const Permutation& g) const {
  static const Bigint kUint64Max = (Bigint(1) << 64) - 1;
  if (order_ > kUint64Max)
    throw std::runtime_error("rank_of: group order exceeds the index range");
  Permutation cur = g;
  std::uint64_t rank = 0;
  std::uint64_t weight = 1;
  for (const Level& lvl : levels_) {
    int img = cur(lvl.base_point);
    int pos = lvl.orbit_pos[img];
    if (pos < 0) return std::nullopt;
    if (pos != 0) cur = compose(cur, lvl.transversal_inv[pos]);
    rank += weight * static_cast<std::uint64_t>(pos);
    weight *= lvl.orbit.size();
  }
  if (!cur.is_identity()) return std::nullopt;
  return rank;
}

std::vector<Permutation> StabilizerChain::point_stabilizer(int point) const {
  if (point < 0 || point >= degree_)
    throw std::invalid_argument("point_stabilizer: point out of range");
  StabilizerChain rebased = StabilizerChain::build(input_gens_, {point});
  // Strong generators fixing the first base point generate the stabilizer.
  std::vector<Permutation> result;
  if (rebased.levels_.size() > 1) result = rebased.levels_[1].gens;
  if (result.empty()) result.push_back(Permutation(degree_));
  return result;
}

std::optional<Permutation> find_conjugator(const StabilizerChain& G,
                                           std::span<const Permutation> A,
                                           const StabilizerChain& B,
                                           std::uint64_t bound) {
  const std::uint64_t n = G.element_count(bound);
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    Permutation g = G.element_at(idx);
    Permutation g_inv = g.inverse();
    bool ok = true;
    for (const Permutation& a : A) {
      if (!B.contains(compose(compose(g_inv, a), g))) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return std::nullopt;
}

}  // namespace overlat::permgroup
