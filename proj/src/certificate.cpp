#include "overlat/certificate.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace overlat::certs {

using interval::Shape;
using interval::ShapeKind;
using permgroup::StabilizerChain;

namespace {

std::vector<std::vector<int>> sorted_images(const std::vector<Permutation>& gens) {
  std::vector<std::vector<int>> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(g.images());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Certificate make_certificate(const std::string& claim, const GroupSpec& group,
                             const std::vector<Permutation>& subgroup_generators,
                             const interval::CounterexampleReport& report) {
  Certificate cert;
  cert.claim = claim;
  cert.group_name = group.name;
  cert.degree = group.degree;
  for (const auto& g : group.generators) cert.group_generators.push_back(g.images());
  if (group.expected_order) cert.group_expected_order = group.expected_order->str();
  cert.subgroup_generators = sorted_images(subgroup_generators);

  for (const auto& node : report.lattice.nodes) {
    Certificate::Node n;
    n.generators = sorted_images(node.generators);
    n.order = node.order.str();
    cert.interval_nodes.push_back(std::move(n));
  }
  cert.hasse_edges = report.lattice.edges;
  cert.shape = interval::to_string(report.lattice.shape);
  if (report.conjugator) cert.conjugator = report.conjugator->images();

  cert.checks = recheck(cert).recomputed;
  return cert;
}

namespace {

struct CheckRecorder {
  std::vector<Check> results;
  std::string first_failure;

  bool record(const std::string& name, bool passed, const std::string& detail = {}) {
    results.push_back({name, passed});
    if (!passed && first_failure.empty())
      first_failure = detail.empty() ? name : name + ": " + detail;
    return passed;
  }
};

std::optional<std::vector<Permutation>> to_perms(
    const std::vector<std::vector<int>>& images_list, int degree, std::string& why) {
  std::vector<Permutation> out;
  for (size_t i = 0; i < images_list.size(); ++i) {
    if (static_cast<int>(images_list[i].size()) != degree) {
      why = "generator " + std::to_string(i) + " has wrong degree";
      return std::nullopt;
    }
    try {
      out.emplace_back(images_list[i]);
    } catch (const std::exception&) {
      why = "generator " + std::to_string(i) + " is not a bijection";
      return std::nullopt;
    }
  }
  return out;
}

}  // namespace

RecheckOutcome recheck(const Certificate& cert) {
  CheckRecorder rec;
  auto finish = [&](bool ok) {
    RecheckOutcome outcome;
    outcome.ok = ok;
    outcome.recomputed = rec.results;
    outcome.failure = rec.first_failure;
    return outcome;
  };

  std::string why;
  auto group_gens = to_perms(cert.group_generators, cert.degree, why);
  if (group_gens && group_gens->empty()) {
    group_gens.reset();
    why = "no group generators";
  }
  if (!rec.record("group_generators_valid", group_gens.has_value(), why))
    return finish(false);
  auto sub_gens = to_perms(cert.subgroup_generators, cert.degree, why);
  if (sub_gens && sub_gens->empty()) {
    sub_gens.reset();
    why = "no subgroup generators";
  }
  if (!rec.record("subgroup_generators_valid", sub_gens.has_value(), why))
    return finish(false);

  std::vector<std::vector<Permutation>> node_gens;
  {
    bool all_ok = !cert.interval_nodes.empty();
    if (!all_ok) why = "no interval nodes";
    for (size_t i = 0; i < cert.interval_nodes.size() && all_ok; ++i) {
      auto gens = to_perms(cert.interval_nodes[i].generators, cert.degree, why);
      if (!gens || gens->empty()) {
        all_ok = false;
        why = "node " + std::to_string(i) + ": " + (gens ? "no generators" : why);
        break;
      }
      node_gens.push_back(std::move(*gens));
    }
    if (!rec.record("node_generators_valid", all_ok, why)) return finish(false);
  }

  StabilizerChain group_chain = StabilizerChain::build(*group_gens);
  if (cert.group_expected_order) {
    rec.record("group_order_matches_expected",
               group_chain.order().str() == *cert.group_expected_order,
               "group order " + group_chain.order().str());
  }

  // Fresh chains and orders, node by node.
  std::vector<StabilizerChain> chains;
  bool orders_ok = true;
  std::string order_detail;
  for (size_t i = 0; i < node_gens.size(); ++i) {
    chains.push_back(StabilizerChain::build(node_gens[i]));
    if (chains.back().order().str() != cert.interval_nodes[i].order) {
      if (orders_ok)
        order_detail = "node " + std::to_string(i) + " order is " +
                       chains.back().order().str() + ", certificate says " +
                       cert.interval_nodes[i].order;
      orders_ok = false;
    }
  }
  rec.record("node_orders_match", orders_ok, order_detail);

  {
    bool member_everywhere = true;
    std::string detail;
    for (size_t i = 0; i < chains.size() && member_everywhere; ++i)
      for (const auto& h : *sub_gens)
        if (!chains[i].contains(h)) {
          member_everywhere = false;
          detail = "subgroup generator not in node " + std::to_string(i);
          break;
        }
    rec.record("h_generators_in_every_node", member_everywhere, detail);
  }

  {
    bool sorted = true;
    for (size_t i = 0; i + 1 < cert.interval_nodes.size() && sorted; ++i) {
      const auto& a = cert.interval_nodes[i];
      const auto& b = cert.interval_nodes[i + 1];
      // Orders are decimal; compare numerically then by generator lists.
      permgroup::Bigint oa(a.order), ob(b.order);
      if (oa > ob || (oa == ob && a.generators > b.generators)) sorted = false;
    }
    rec.record("nodes_sorted_canonically", sorted);
  }

  // Containment from membership primitives only.
  const size_t n = chains.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) {
        leq[i][j] = true;
        continue;
      }
      bool inside = true;
      for (const auto& g : node_gens[i])
        if (!chains[j].contains(g)) {
          inside = false;
          break;
        }
      leq[i][j] = inside;
    }

  {
    bool first_is_h = true;
    for (const auto& h : *sub_gens)
      if (!chains.front().contains(h)) first_is_h = false;
    if (first_is_h) {
      StabilizerChain h_chain = StabilizerChain::build(*sub_gens);
      for (const auto& g : node_gens.front())
        if (!h_chain.contains(g)) {
          first_is_h = false;
          break;
        }
    }
    rec.record("first_node_is_subgroup", first_is_h);
  }
  {
    bool last_is_group = true;
    for (const auto& g : node_gens.back())
      if (!group_chain.contains(g)) last_is_group = false;
    if (last_is_group)
      for (const auto& g : *group_gens)
        if (!chains.back().contains(g)) last_is_group = false;
    rec.record("last_node_is_group", last_is_group);
  }

  {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < static_cast<int>(n); ++i)
      for (int j = 0; j < static_cast<int>(n); ++j) {
        if (i == j || !leq[i][j]) continue;
        bool covered = true;
        for (int k = 0; k < static_cast<int>(n); ++k) {
          if (k == i || k == j) continue;
          if (leq[i][k] && leq[k][j]) {
            covered = false;
            break;
          }
        }
        if (covered) edges.emplace_back(i, j);
      }
    std::sort(edges.begin(), edges.end());
    rec.record("edges_are_covering_relations", edges == cert.hasse_edges);
  }

  {
    // Shape from the containment matrix, mirroring the lattice classifier.
    bool total = true;
    for (size_t i = 0; i < n && total; ++i)
      for (size_t j = 0; j < n && total; ++j)
        if (!leq[i][j] && !leq[j][i]) total = false;
    std::string shape;
    if (total) {
      shape = "Chain";
    } else if (n == 4 && leq[0][1] && leq[0][2] && leq[1][3] && leq[2][3] &&
               !leq[1][2] && !leq[2][1]) {
      shape = "BooleanRank2";
    } else {
      shape = "Other(" + std::to_string(n) + ")";
    }
    rec.record("shape_matches", shape == cert.shape,
               "recomputed shape " + shape + ", certificate says " + cert.shape);
  }

  if (cert.shape == "BooleanRank2") {
    bool conj_ok = cert.conjugator.has_value();
    std::string detail = conj_ok ? "" : "conjugator missing";
    if (conj_ok && n == 4) {
      try {
        Permutation g(*cert.conjugator);
        if (!group_chain.contains(g)) {
          conj_ok = false;
          detail = "conjugator is not an element of the group";
        } else if (chains[1].order() != chains[2].order()) {
          conj_ok = false;
          detail = "tops have different orders";
        } else {
          Permutation g_inv = g.inverse();
          for (const auto& a : node_gens[1])
            if (!chains[2].contains(compose(compose(g_inv, a), g))) {
              conj_ok = false;
              detail = "conjugated top generator escapes the other top";
              break;
            }
        }
      } catch (const std::exception&) {
        conj_ok = false;
        detail = "conjugator is not a valid permutation";
      }
    }
    rec.record("conjugator_maps_top_onto_top", conj_ok, detail);
  }

  bool all_passed = std::all_of(rec.results.begin(), rec.results.end(),
                                [](const Check& c) { return c.passed; });
  bool matches_record = rec.results == cert.checks;
  if (all_passed && !matches_record && rec.first_failure.empty())
    rec.first_failure = "recorded checks differ from recomputation";
  return RecheckOutcome{all_passed && matches_record, rec.results,
                        all_passed && matches_record ? std::string{} : rec.first_failure};
}

nlohmann::ordered_json to_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["schema_version"] = cert.schema_version;
  j["claim"] = cert.claim;
  nlohmann::ordered_json group;
  group["name"] = cert.group_name;
  group["degree"] = cert.degree;
  group["generators"] = cert.group_generators;
  if (cert.group_expected_order) group["expected_order"] = *cert.group_expected_order;
  else group["expected_order"] = nullptr;
  j["group"] = std::move(group);
  j["subgroup_generators"] = cert.subgroup_generators;
  j["interval_nodes"] = nlohmann::ordered_json::array();
  for (const auto& node : cert.interval_nodes) {
    nlohmann::ordered_json n;
    n["generators"] = node.generators;
    n["order"] = node.order;
    j["interval_nodes"].push_back(std::move(n));
  }
  j["hasse_edges"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : cert.hasse_edges)
    j["hasse_edges"].push_back(nlohmann::ordered_json::array({a, b}));
  j["shape"] = cert.shape;
  if (cert.conjugator) j["conjugator"] = *cert.conjugator;
  else j["conjugator"] = nullptr;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : cert.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    j["checks"].push_back(std::move(cj));
  }
  return j;
}

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw std::runtime_error("certificate schema: " + what);
}

std::vector<std::vector<int>> images_list(const nlohmann::ordered_json& j,
                                          const std::string& field) {
  if (!j.is_array()) schema_error(field + " must be an array");
  std::vector<std::vector<int>> out;
  for (const auto& item : j) {
    if (!item.is_array()) schema_error(field + " entries must be arrays");
    std::vector<int> images;
    for (const auto& v : item) {
      if (!v.is_number_integer()) schema_error(field + " entries must hold integers");
      images.push_back(v.get<int>());
    }
    out.push_back(std::move(images));
  }
  return out;
}

}  // namespace

Certificate certificate_from_json(const nlohmann::ordered_json& j) {
  Certificate cert;
  if (!j.is_object()) schema_error("document is not an object");
  for (const char* field : {"schema_version", "claim", "group", "subgroup_generators",
                            "interval_nodes", "hasse_edges", "shape", "conjugator",
                            "checks"})
    if (!j.contains(field)) schema_error(std::string("missing field ") + field);

  if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != 1)
    schema_error("unsupported schema_version");
  cert.schema_version = 1;
  if (!j["claim"].is_string()) schema_error("claim must be a string");
  cert.claim = j["claim"].get<std::string>();

  const auto& group = j["group"];
  if (!group.is_object() || !group.contains("name") || !group.contains("degree") ||
      !group.contains("generators") || !group.contains("expected_order"))
    schema_error("group must carry name, degree, generators, expected_order");
  cert.group_name = group["name"].get<std::string>();
  if (!group["degree"].is_number_integer() || group["degree"].get<int>() <= 0)
    schema_error("group degree must be a positive integer");
  cert.degree = group["degree"].get<int>();
  cert.group_generators = images_list(group["generators"], "group.generators");
  if (!group["expected_order"].is_null()) {
    if (!group["expected_order"].is_string())
      schema_error("group expected_order must be a decimal string or null");
    cert.group_expected_order = group["expected_order"].get<std::string>();
  }

  cert.subgroup_generators = images_list(j["subgroup_generators"], "subgroup_generators");

  if (!j["interval_nodes"].is_array() || j["interval_nodes"].empty())
    schema_error("interval_nodes must be a nonempty array");
  for (const auto& nj : j["interval_nodes"]) {
    if (!nj.is_object() || !nj.contains("generators") || !nj.contains("order") ||
        !nj["order"].is_string())
      schema_error("interval node must carry generators and a decimal order string");
    Certificate::Node node;
    node.generators = images_list(nj["generators"], "node generators");
    node.order = nj["order"].get<std::string>();
    if (node.order.empty() ||
        !std::all_of(node.order.begin(), node.order.end(),
                     [](char c) { return c >= '0' && c <= '9'; }))
      schema_error("node order must be a decimal string");
    cert.interval_nodes.push_back(std::move(node));
  }

  if (!j["hasse_edges"].is_array()) schema_error("hasse_edges must be an array");
  for (const auto& ej : j["hasse_edges"]) {
    if (!ej.is_array() || ej.size() != 2 || !ej[0].is_number_integer() ||
        !ej[1].is_number_integer())
      schema_error("hasse edges must be index pairs");
    int a = ej[0].get<int>(), b = ej[1].get<int>();
    const int count = static_cast<int>(cert.interval_nodes.size());
    if (a < 0 || b < 0 || a >= count || b >= count)
      schema_error("hasse edge index out of range");
    cert.hasse_edges.emplace_back(a, b);
  }

  if (!j["shape"].is_string()) schema_error("shape must be a string");
  cert.shape = j["shape"].get<std::string>();
  interval::shape_from_string(cert.shape);  // validates

  if (!j["conjugator"].is_null()) {
    if (!j["conjugator"].is_array()) schema_error("conjugator must be an array or null");
    std::vector<int> images;
    for (const auto& v : j["conjugator"]) {
      if (!v.is_number_integer()) schema_error("conjugator must hold integers");
      images.push_back(v.get<int>());
    }
    cert.conjugator = std::move(images);
  }

  if (!j["checks"].is_array()) schema_error("checks must be an array");
  for (const auto& cj : j["checks"]) {
    if (!cj.is_object() || !cj.contains("name") || !cj.contains("passed") ||
        !cj["name"].is_string() || !cj["passed"].is_boolean())
      schema_error("checks must carry name and passed");
    cert.checks.push_back({cj["name"].get<std::string>(), cj["passed"].get<bool>()});
  }
  return cert;
}

std::string serialize(const Certificate& cert) { return to_json(cert).dump(2) + "\n"; }

Certificate parse_certificate(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("certificate schema: invalid JSON: ") + e.what());
  }
  return certificate_from_json(j);
}

}  // namespace overlat::certs
