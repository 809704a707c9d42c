#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "overlat/group_io.hpp"
#include "overlat/interval.hpp"

namespace overlat::certs {

using permgroup::GroupSpec;
using permgroup::Permutation;

/// A named recheckable assertion inside a certificate.
struct Check {
  std::string name;
  bool passed = false;
  friend bool operator==(const Check&, const Check&) = default;
};

/// Self-contained witness for a "Boolean rank-2 interval with conjugate
/// tops" claim. Every `passed` entry is reproducible from the certificate
/// alone using membership and order primitives; the lattice itself is not
/// recomputed by the checker.
///
/// Nodes are sorted ascending by (order, lexicographically sorted generator
/// images) and orders are decimal strings, so serialization is byte-stable.
struct Certificate {
  int schema_version = 1;
  std::string claim;
  std::string group_name;
  int degree = 0;
  std::vector<std::vector<int>> group_generators;
  std::optional<std::string> group_expected_order;  // decimal
  std::vector<std::vector<int>> subgroup_generators;

  struct Node {
    std::vector<std::vector<int>> generators;
    std::string order;  // decimal
  };
  std::vector<Node> interval_nodes;
  std::vector<std::pair<int, int>> hasse_edges;
  std::string shape;
  std::optional<std::vector<int>> conjugator;
  std::vector<Check> checks;
};

/// Builds the certificate for a verified (G, H) report and fills `checks`
/// by running the independent rechecker on the freshly built payload.
Certificate make_certificate(const std::string& claim, const GroupSpec& group,
                             const std::vector<Permutation>& subgroup_generators,
                             const interval::CounterexampleReport& report);

struct RecheckOutcome {
  bool ok = false;                  // every check passed and matches the record
  std::vector<Check> recomputed;    // checks as recomputed now
  std::string failure;              // name/detail of the first failure
};

/// Re-validates a certificate using only fresh stabilizer chains for
/// membership and order: H-generator membership in every node, node orders,
/// covering relations by pairwise containment, shape, and the conjugator's
/// action mapping one top into the other (with equal orders).
RecheckOutcome recheck(const Certificate& cert);

nlohmann::ordered_json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::ordered_json& j);

/// Byte-stable serialization (two-space indent, trailing newline).
std::string serialize(const Certificate& cert);
Certificate parse_certificate(const std::string& text);  // throws on schema violations

}  // namespace overlat::certs
