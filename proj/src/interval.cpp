#include "overlat/interval.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace overlat::interval {

namespace {

// Sort key per the certificate contract: (order, lexicographically sorted
// generator image arrays).
std::vector<std::vector<int>> sorted_gen_images(const SubgroupNode& node) {
  std::vector<std::vector<int>> key;
  key.reserve(node.generators.size());
  for (const auto& g : node.generators) key.push_back(g.images());
  std::sort(key.begin(), key.end());
  return key;
}

bool node_less(const SubgroupNode& a, const SubgroupNode& b) {
  if (a.order != b.order) return a.order < b.order;
  return sorted_gen_images(a) < sorted_gen_images(b);
}

// K <= E, given that K's generator list is `gens`.
bool contained_in(const std::vector<Permutation>& gens, const StabilizerChain& chain) {
  for (const auto& g : gens)
    if (!chain.contains(g)) return false;
  return true;
}

std::vector<std::vector<bool>> containment_matrix(const std::vector<SubgroupNode>& nodes) {
  const size_t n = nodes.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) {
        leq[i][j] = true;
        continue;
      }
      if (nodes[i].order > nodes[j].order) continue;
      leq[i][j] = contained_in(nodes[i].generators, nodes[j].chain);
    }
  return leq;
}

std::vector<std::pair<int, int>> covering_edges(const std::vector<std::vector<bool>>& leq) {
  const int n = static_cast<int>(leq.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !leq[i][j]) continue;
      bool covered = true;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (leq[i][k] && leq[k][j]) {
          covered = false;
          break;
        }
      }
      if (covered) edges.emplace_back(i, j);
    }
  std::sort(edges.begin(), edges.end());
  return edges;
}

Shape classify(const std::vector<SubgroupNode>& nodes,
               const std::vector<std::vector<bool>>& leq) {
  const int n = static_cast<int>(nodes.size());
  bool total = true;
  for (int i = 0; i < n && total; ++i)
    for (int j = 0; j < n && total; ++j)
      if (!leq[i][j] && !leq[j][i]) total = false;
  if (total) return {ShapeKind::Chain, n};
  if (n == 4) {
    // Nodes are sorted, so 0 is H and 3 is G; the diamond requires the two
    // middle nodes incomparable and everything else forced.
    bool diamond = leq[0][1] && leq[0][2] && leq[1][3] && leq[2][3] &&
                   !leq[1][2] && !leq[2][1];
    if (diamond) return {ShapeKind::BooleanRank2, 4};
  }
  return {ShapeKind::Other, n};
}

}  // namespace

std::string to_string(const Shape& shape) {
  switch (shape.kind) {
    case ShapeKind::Chain:
      return "Chain";
    case ShapeKind::BooleanRank2:
      return "BooleanRank2";
    case ShapeKind::Other:
      return "Other(" + std::to_string(shape.node_count) + ")";
  }
  return "Other(?)";
}

Shape shape_from_string(const std::string& text) {
  if (text == "Chain") return {ShapeKind::Chain, 0};
  if (text == "BooleanRank2") return {ShapeKind::BooleanRank2, 4};
  if (text.rfind("Other(", 0) == 0 && text.back() == ')') {
    int count = std::stoi(text.substr(6, text.size() - 7));
    return {ShapeKind::Other, count};
  }
  throw std::invalid_argument("unknown shape: " + text);
}

IntervalLattice interval_lattice(const StabilizerChain& G,
                                 const std::vector<Permutation>& H,
                                 std::uint64_t bound) {
  if (H.empty()) throw std::invalid_argument("interval_lattice: empty H generator list");
  for (const auto& h : H)
    if (!G.contains(h))
      throw std::invalid_argument("interval_lattice: H is not contained in G");
  const std::uint64_t n = G.element_count(bound);

  std::vector<SubgroupNode> nodes;
  {
    StabilizerChain h_chain = StabilizerChain::build(H);
    Bigint order = h_chain.order();
    nodes.push_back({H, std::move(h_chain), std::move(order)});
  }

  constexpr std::uint32_t kUnlabeled = UINT32_MAX;
  std::vector<std::uint32_t> coset_label(n);

  for (size_t cur = 0; cur < nodes.size(); ++cur) {
    if (nodes[cur].order == G.order()) continue;
    // Copy: nodes grows during the sweep and may reallocate.
    const SubgroupNode S = nodes[cur];
    const std::uint64_t s_size = S.chain.element_count(bound);

    std::vector<Permutation> s_elements;
    s_elements.reserve(s_size);
    for (std::uint64_t i = 0; i < s_size; ++i) s_elements.push_back(S.chain.element_at(i));

    // Right-coset labeling of G; first-seen element of each coset (smallest
    // rank, since the scan ascends) becomes its representative.
    std::fill(coset_label.begin(), coset_label.end(), kUnlabeled);
    std::vector<Permutation> coset_rep;
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      if (coset_label[idx] != kUnlabeled) continue;
      Permutation rep = G.element_at(idx);
      const std::uint32_t cid = static_cast<std::uint32_t>(coset_rep.size());
      for (const auto& s : s_elements) {
        auto r = G.rank_of(compose(s, rep));
        coset_label[*r] = cid;
      }
      coset_rep.push_back(std::move(rep));
    }

    // Sweep one candidate per double coset S g S: <S, g> is constant on the
    // double coset, which is the orbit of the right coset Sg under right
    // multiplication by S.
    std::vector<char> coset_done(coset_rep.size(), 0);
    coset_done[coset_label[0]] = 1;  // the double coset of S itself
    for (std::uint32_t cid = 0; cid < coset_rep.size(); ++cid) {
      if (coset_done[cid]) continue;
      const Permutation& g = coset_rep[cid];

      StabilizerChain k_chain = S.chain.extended_with(std::span(&g, 1));

      std::vector<std::uint32_t> stack{cid};
      coset_done[cid] = 1;
      while (!stack.empty()) {
        std::uint32_t c = stack.back();
        stack.pop_back();
        for (const auto& s : S.generators) {
          std::uint32_t next = coset_label[*G.rank_of(compose(coset_rep[c], s))];
          if (!coset_done[next]) {
            coset_done[next] = 1;
            stack.push_back(next);
          }
        }
      }

      std::vector<Permutation> k_gens = S.generators;
      k_gens.push_back(g);
      bool known = false;
      for (const auto& existing : nodes) {
        if (existing.order == k_chain.order() && contained_in(k_gens, existing.chain)) {
          known = true;
          break;
        }
      }
      if (!known) {
        Bigint order = k_chain.order();
        nodes.push_back({std::move(k_gens), std::move(k_chain), std::move(order)});
      }
    }
  }

  std::sort(nodes.begin(), nodes.end(), node_less);
  IntervalLattice lattice;
  lattice.nodes = std::move(nodes);
  auto leq = containment_matrix(lattice.nodes);
  lattice.edges = covering_edges(leq);
  lattice.shape = classify(lattice.nodes, leq);
  return lattice;
}

Shape classify_shape(const IntervalLattice& lattice) {
  return classify(lattice.nodes, containment_matrix(lattice.nodes));
}

std::vector<int> maximal_overgroups(const IntervalLattice& lattice) {
  std::vector<int> tops;
  const int g_index = static_cast<int>(lattice.nodes.size()) - 1;
  for (const auto& [i, j] : lattice.edges)
    if (j == g_index) tops.push_back(i);
  return tops;
}

bool is_maximal_in(const std::vector<Permutation>& H, const StabilizerChain& M,
                   std::uint64_t bound) {
  return interval_lattice(M, H, bound).nodes.size() == 2;
}

CounterexampleReport verify_counterexample(const StabilizerChain& G,
                                           const std::vector<Permutation>& H,
                                           std::uint64_t bound) {
  CounterexampleReport report;
  report.lattice = interval_lattice(G, H, bound);
  std::vector<int> tops = maximal_overgroups(report.lattice);

  report.h_maximal_in_tops = !tops.empty();
  for (int t : tops)
    if (!is_maximal_in(H, report.lattice.nodes[t].chain, bound))
      report.h_maximal_in_tops = false;

  if (tops.size() == 2) {
    const SubgroupNode& m1 = report.lattice.nodes[tops[0]];
    const SubgroupNode& m2 = report.lattice.nodes[tops[1]];
    if (m1.order == m2.order) {
      report.conjugator = permgroup::find_conjugator(G, m1.generators, m2.chain, bound);
      report.tops_conjugate = report.conjugator.has_value();
    }
  }

  report.verdict = report.lattice.shape.kind == ShapeKind::BooleanRank2 &&
                   report.tops_conjugate && report.h_maximal_in_tops;
  return report;
}

namespace {

// Element universe and multiplication table for the oracle; independent of
// the chain machinery (pure closure over image arrays).
struct SmallGroupTable {
  std::vector<Permutation> universe;
  std::map<std::vector<int>, std::uint32_t> index;
  std::vector<std::vector<std::uint32_t>> mul;
  std::uint32_t identity = 0;

  explicit SmallGroupTable(const std::vector<Permutation>& gens) {
    const int degree = gens.front().degree();
    Permutation id(degree);
    universe.push_back(id);
    index[id.images()] = 0;
    for (size_t head = 0; head < universe.size(); ++head) {
      for (const auto& g : gens) {
        Permutation y = compose(universe[head], g);
        if (!index.contains(y.images())) {
          index[y.images()] = static_cast<std::uint32_t>(universe.size());
          universe.push_back(std::move(y));
        }
      }
    }
    const std::uint32_t n = static_cast<std::uint32_t>(universe.size());
    mul.assign(n, std::vector<std::uint32_t>(n));
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        mul[i][j] = index.at(compose(universe[i], universe[j]).images());
  }

  // Closure of `seed` (a subgroup's element set) together with g, by
  // repeated table products.
  std::vector<std::uint32_t> closure(const std::vector<std::uint32_t>& seed,
                                     std::uint32_t g) const {
    std::vector<char> in_set(universe.size(), 0);
    std::vector<std::uint32_t> gens(seed);
    gens.push_back(g);
    for (std::uint32_t x : gens) in_set[x] = 1;
    std::vector<std::uint32_t> list{identity};
    std::vector<char> reached(universe.size(), 0);
    reached[identity] = 1;
    for (size_t head = 0; head < list.size(); ++head) {
      for (std::uint32_t s : gens) {
        std::uint32_t y = mul[list[head]][s];
        if (!reached[y]) {
          reached[y] = 1;
          list.push_back(y);
        }
      }
    }
    std::sort(list.begin(), list.end());
    return list;
  }
};

}  // namespace

AllSubgroups all_subgroups(const StabilizerChain& G, std::uint64_t oracle_bound) {
  if (G.order() > Bigint(oracle_bound))
    throw std::runtime_error("all_subgroups: oracle bound exceeded");

  SmallGroupTable table(G.generators());
  if (Bigint(table.universe.size()) != G.order())
    throw std::logic_error("all_subgroups: closure count disagrees with chain order");

  struct Pending {
    std::vector<std::uint32_t> elements;
    std::vector<Permutation> gens;
  };
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<Pending> discovered;

  Pending trivial{{table.identity}, {Permutation(G.degree())}};
  seen.insert(trivial.elements);
  discovered.push_back(trivial);

  for (size_t cur = 0; cur < discovered.size(); ++cur) {
    // Copy: discovered grows and may reallocate during the loop.
    const Pending current = discovered[cur];
    for (std::uint32_t g = 0; g < table.universe.size(); ++g) {
      if (std::binary_search(current.elements.begin(), current.elements.end(), g)) continue;
      std::vector<std::uint32_t> closed = table.closure(current.elements, g);
      if (seen.insert(closed).second) {
        std::vector<Permutation> gens = current.gens;
        gens.push_back(table.universe[g]);
        discovered.push_back({std::move(closed), std::move(gens)});
      }
    }
  }

  std::sort(discovered.begin(), discovered.end(), [](const Pending& a, const Pending& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  });

  AllSubgroups result;
  result.universe = table.universe;
  for (auto& pending : discovered) {
    StabilizerChain chain = StabilizerChain::build(pending.gens);
    if (chain.order() != Bigint(pending.elements.size()))
      throw std::logic_error("all_subgroups: chain order disagrees with element count");
    Bigint order = chain.order();
    result.nodes.push_back({std::move(pending.gens), std::move(chain), std::move(order)});
    result.element_sets.push_back(std::move(pending.elements));
  }
  return result;
}

namespace {

// Canonical identity of a subgroup inside G: the sorted ranks of its
// elements.
std::vector<std::uint32_t> subgroup_key(const StabilizerChain& sub,
                                        const StabilizerChain& G) {
  const std::uint64_t m = sub.element_count();
  std::vector<std::uint32_t> key;
  key.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    auto r = G.rank_of(sub.element_at(i));
    if (!r) throw std::logic_error("subgroup_key: element outside G");
    key.push_back(static_cast<std::uint32_t>(*r));
  }
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

std::vector<std::vector<SubgroupNode>> find_transitive_subgroup_classes(
    const StabilizerChain& G, std::uint64_t target_order, std::uint64_t bound) {
  const std::uint64_t n = G.element_count(bound);
  const Bigint target(target_order);

  // Conjugacy classes of elements, BFS under conjugation by the generators.
  std::vector<std::int32_t> class_of(n, -1);
  std::vector<std::uint64_t> class_rep;
  std::vector<long long> class_order;
  {
    std::vector<Permutation> gens = G.generators();
    std::vector<Permutation> gen_inv;
    for (const auto& g : gens) gen_inv.push_back(g.inverse());
    std::vector<Permutation> queue;
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      if (class_of[idx] >= 0) continue;
      const std::int32_t cid = static_cast<std::int32_t>(class_rep.size());
      Permutation x = G.element_at(idx);
      class_rep.push_back(idx);
      class_order.push_back(x.order());
      class_of[idx] = cid;
      queue.clear();
      queue.push_back(std::move(x));
      while (!queue.empty()) {
        Permutation y = std::move(queue.back());
        queue.pop_back();
        for (size_t k = 0; k < gens.size(); ++k) {
          Permutation z = compose(compose(gen_inv[k], y), gens[k]);
          std::uint64_t zr = *G.rank_of(z);
          if (class_of[zr] < 0) {
            class_of[zr] = cid;
            queue.push_back(std::move(z));
          }
        }
      }
    }
  }

  // Candidate subgroups containing a fixed class representative: cyclic
  // groups and two-generator closures, with Lagrange pruning on element
  // orders and early abort once the partial order product passes the target.
  std::vector<SubgroupNode> found;
  auto record = [&](StabilizerChain&& chain, std::vector<Permutation>&& gens) {
    if (chain.order() != target) return;
    if (!permgroup::is_transitive(gens, G.degree())) return;
    for (const auto& existing : found)
      if (existing.order == target && contained_in(gens, existing.chain)) return;
    Bigint order = chain.order();
    found.push_back({std::move(gens), std::move(chain), std::move(order)});
  };

  for (size_t cid = 0; cid < class_rep.size(); ++cid) {
    if (class_order[cid] <= 0 || target_order % class_order[cid] != 0) continue;
    Permutation x = G.element_at(class_rep[cid]);
    if (auto cyc = StabilizerChain::try_build_bounded({x}, target_order))
      record(std::move(*cyc), {x});
    for (std::uint64_t yidx = 0; yidx < n; ++yidx) {
      if (target_order % class_order[class_of[yidx]] != 0) continue;
      Permutation y = G.element_at(yidx);
      long long prod_order = compose(x, y).order();
      if (target_order % prod_order != 0) continue;
      if (auto k = StabilizerChain::try_build_bounded({x, y}, target_order))
        record(std::move(*k), {x, y});
    }
  }

  // Close under G-conjugation; each search hit seeds one conjugacy class.
  std::map<std::vector<std::uint32_t>, int> seen;  // key -> class index
  std::vector<std::vector<SubgroupNode>> classes;
  std::vector<std::vector<std::uint32_t>> class_min_key;
  for (const auto& seed : found) {
    std::vector<std::uint32_t> seed_key = subgroup_key(seed.chain, G);
    if (seen.contains(seed_key)) continue;
    const int class_idx = static_cast<int>(classes.size());
    classes.emplace_back();
    seen[seed_key] = class_idx;

    std::vector<std::pair<std::vector<std::uint32_t>, SubgroupNode>> orbit;
    orbit.emplace_back(std::move(seed_key), seed);
    for (size_t head = 0; head < orbit.size(); ++head) {
      // Copy generators: orbit grows and may reallocate.
      const std::vector<Permutation> base_gens = orbit[head].second.generators;
      for (const auto& s : G.generators()) {
        std::vector<Permutation> conj_gens;
        conj_gens.reserve(base_gens.size());
        for (const auto& g : base_gens) conj_gens.push_back(permgroup::conjugate(g, s));
        StabilizerChain conj_chain = StabilizerChain::build(conj_gens);
        std::vector<std::uint32_t> key = subgroup_key(conj_chain, G);
        if (!seen.contains(key)) {
          seen[key] = class_idx;
          Bigint order = conj_chain.order();
          orbit.emplace_back(std::move(key),
                             SubgroupNode{std::move(conj_gens), std::move(conj_chain),
                                          std::move(order)});
        }
      }
    }
    std::sort(orbit.begin(), orbit.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    class_min_key.push_back(orbit.front().first);
    for (auto& [key, node] : orbit) classes[class_idx].push_back(std::move(node));
  }

  // Deterministic class order: by the class's smallest element-set key.
  std::vector<int> order_idx(classes.size());
  for (size_t i = 0; i < order_idx.size(); ++i) order_idx[i] = static_cast<int>(i);
  std::sort(order_idx.begin(), order_idx.end(),
            [&](int a, int b) { return class_min_key[a] < class_min_key[b]; });
  std::vector<std::vector<SubgroupNode>> sorted_classes;
  for (int i : order_idx) sorted_classes.push_back(std::move(classes[i]));
  return sorted_classes;
}

std::vector<SubgroupNode> find_transitive_subgroups(const StabilizerChain& G,
                                                    std::uint64_t target_order,
                                                    std::uint64_t bound) {
  std::vector<SubgroupNode> flat;
  for (auto& cls : find_transitive_subgroup_classes(G, target_order, bound))
    for (auto& node : cls) flat.push_back(std::move(node));
  return flat;
}

}  // namespace overlat::interval
