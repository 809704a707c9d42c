#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "overlat/congruence.hpp"

namespace overlat::catalog {

using congruence::CongruenceFamily;

enum class VerificationLevel { fully_verified, ingredients_verified, catalog_only };

std::string to_string(VerificationLevel level);

/// One example family: a configuration H < M < G answering the two-maximal-
/// overgroups question negatively, either as a fixed instance or as an
/// infinite series over primes in a congruence family.
struct ExampleFamily {
  std::string id;
  std::string h_name;
  std::string m_name;
  std::string g_name;
  std::optional<CongruenceFamily> family;  // absent: fixed instance or parametric
  VerificationLevel verification_level = VerificationLevel::catalog_only;
  std::string source;  // third-party classification reference
  std::string notes;
  /// Elementary residue conditions whose CRT intersection must reproduce
  /// `family`, when such a derivation is on record.
  std::vector<CongruenceFamily> derivation;
  std::string verify_command;  // runnable command for fully-verified entries
};

struct NonExample {
  std::string id;
  std::string chain;   // the configuration that fails
  std::string reason;  // the mathematical obstruction
  std::string source;
};

/// The full registry, in fixed order.
const std::vector<ExampleFamily>& list_families();
const std::vector<NonExample>& non_examples();

const ExampleFamily& family_by_id(const std::string& id);  // throws on unknown id

struct CrossCheckReport {
  std::string id;
  CongruenceFamily derived;
  CongruenceFamily stored;
  bool match = false;
};

/// Recomputes the residue family from the recorded elementary conditions
/// and compares with the stored one. Throws for unknown ids and for entries
/// without a recorded derivation.
CrossCheckReport cross_check(const std::string& id);

/// The k smallest primes in the family's congruence classes. Throws for
/// entries without a congruence family (fixed instances).
std::vector<std::int64_t> first_primes(const std::string& id, int k);

/// Versioned JSON registry document.
nlohmann::ordered_json registry_json();

/// Plain text and Markdown renderings of the registry.
std::string render_text();
std::string render_markdown();

}  // namespace overlat::catalog
