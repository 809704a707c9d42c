#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "overlat/stabilizer_chain.hpp"

namespace overlat::permgroup {

/// A named generating set with an optional order assertion. Validation
/// builds a chain and checks the expected order when present.
struct GroupSpec {
  std::string name;
  int degree = 0;
  bool one_based = true;  // display/serialization convention for cycle text
  std::vector<Permutation> generators;
  std::optional<Bigint> expected_order;

  /// Builds the chain and throws if expected_order is present and violated.
  StabilizerChain validate() const;
};

/// Generator file format:
///   degree <n> base <0|1>
///   one permutation per line, disjoint cycle notation
/// Lines starting with '#' and blank lines are ignored.
GroupSpec parse_generator_file(const std::string& text, const std::string& name);
GroupSpec load_generator_file(const std::filesystem::path& path, const std::string& name);

/// Canonical text form; parse_generator_file(print_generator_file(s)) is
/// byte-for-byte idempotent.
std::string print_generator_file(const GroupSpec& spec);

}  // namespace overlat::permgroup
