#include <algorithm>
#include <set>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "overlat/catalog.hpp"

using namespace overlat::catalog;
using overlat::congruence::CongruenceFamily;

TEST_CASE("registry contents: ids, levels, markers") {
  const auto& families = list_families();
  std::vector<std::string> ids;
  for (const auto& f : families) ids.push_back(f.id);
  CHECK(ids == std::vector<std::string>{
                   "m12", "he", "omega10", "omega5_7", "psl4", "psu4",
                   "repunit_special", "omega14_plus", "omega14_minus", "l5_2_plus",
                   "l5_2_minus", "unbounded_rank", "s14_j2", "s14_l213"});

  CHECK(family_by_id("m12").verification_level == VerificationLevel::fully_verified);
  CHECK(family_by_id("he").verification_level == VerificationLevel::catalog_only);
  CHECK(family_by_id("omega10").verification_level == VerificationLevel::catalog_only);
  CHECK(family_by_id("omega5_7").verification_level ==
        VerificationLevel::ingredients_verified);

  // fully-verified entries must reference a runnable command
  for (const auto& f : families)
    if (f.verification_level == VerificationLevel::fully_verified)
      CHECK(!f.verify_command.empty());

  CHECK_THROWS_AS(family_by_id("nope"), std::invalid_argument);
}

TEST_CASE("stored residues are valid congruence families") {
  for (const auto& f : list_families()) {
    if (!f.family) continue;
    CHECK_NOTHROW(f.family->check());
    for (const auto& c : f.derivation) CHECK_NOTHROW(c.check());
  }
}

TEST_CASE("residue tables are as published") {
  CHECK(family_by_id("psl4").family->residues == std::vector<std::int64_t>{15, 23, 39});
  CHECK(family_by_id("psl4").family->modulus == 56);
  CHECK(family_by_id("psu4").family->residues == std::vector<std::int64_t>{17, 33, 41});
  CHECK(family_by_id("omega14_plus").family->residues ==
        std::vector<std::int64_t>{19, 23, 31, 47});
  CHECK(family_by_id("omega14_minus").family->residues ==
        std::vector<std::int64_t>{13, 29, 37, 41});
  CHECK(family_by_id("l5_2_plus").family->residues ==
        std::vector<std::int64_t>{39, 47, 63, 95, 159});
  CHECK(family_by_id("l5_2_minus").family->residues ==
        std::vector<std::int64_t>{1, 33, 97, 225, 233});
  CHECK(family_by_id("s14_j2").family->residues ==
        std::vector<std::int64_t>{11, 19, 21, 29});
  CHECK(family_by_id("s14_l213").family->residues ==
        std::vector<std::int64_t>{3, 27, 29, 35, 43, 51, 53, 61, 69, 75, 77, 101});
}

TEST_CASE("cross_check re-derives every derivable family") {
  for (const char* id : {"psl4", "psu4", "l5_2_plus", "l5_2_minus"}) {
    CrossCheckReport report = cross_check(id);
    CAPTURE(id);
    CHECK(report.match);
    CHECK(report.derived.provenance == CongruenceFamily::Provenance::crt_derived);
  }
  CHECK_THROWS_AS(cross_check("omega14_plus"), std::invalid_argument);  // no derivation
  CHECK_THROWS_AS(cross_check("zzz"), std::invalid_argument);
}

TEST_CASE("derivation conditions agree with jacobi-computed residue classes") {
  // psl4: p a quadratic residue mod 7; psu4: a non-residue
  std::vector<std::int64_t> squares, nonsquares;
  for (std::int64_t a = 1; a < 7; ++a)
    (overlat::congruence::jacobi(a, 7) == 1 ? squares : nonsquares).push_back(a);
  CHECK(family_by_id("psl4").derivation[1].residues == squares);
  CHECK(family_by_id("psu4").derivation[1].residues == nonsquares);

  // l5_2: powers of 2 mod 31 form a proper subset of the squares mod 31
  std::set<std::int64_t> powers;
  std::int64_t x = 1;
  for (int i = 0; i < 5; ++i) {
    powers.insert(x);
    x = x * 2 % 31;
  }
  std::set<std::int64_t> squares31;
  for (std::int64_t a = 1; a < 31; ++a)
    if (overlat::congruence::jacobi(a, 31) == 1) squares31.insert(a);
  const auto& stored = family_by_id("l5_2_plus").derivation[2].residues;
  CHECK(std::set<std::int64_t>(stored.begin(), stored.end()) == powers);
  CHECK(std::includes(squares31.begin(), squares31.end(), powers.begin(), powers.end()));
  CHECK(powers.size() < squares31.size());
  // the discrepancy is surfaced on all three affected entries
  CHECK(family_by_id("l5_2_plus").notes.find("squares") != std::string::npos);
  CHECK(family_by_id("l5_2_minus").notes.find("squares") != std::string::npos);
  CHECK(family_by_id("unbounded_rank").notes.find("squares") != std::string::npos);
}

TEST_CASE("first_primes") {
  CHECK(first_primes("psl4", 3) == std::vector<std::int64_t>{23, 71, 79});
  CHECK(first_primes("s14_j2", 2) == std::vector<std::int64_t>{11, 19});
  CHECK_THROWS_AS(first_primes("m12", 1), std::invalid_argument);
  CHECK_THROWS_AS(first_primes("he", 1), std::invalid_argument);
  CHECK_THROWS_AS(first_primes("unbounded_rank", 1), std::invalid_argument);
}

TEST_CASE("non-examples registry") {
  const auto& entries = non_examples();
  CHECK(entries.size() == 5);
  std::vector<std::string> ids;
  for (const auto& n : entries) ids.push_back(n.id);
  CHECK(ids == std::vector<std::string>{"l2_11_a11", "l3_3_omega11", "l4_2_omega13_3",
                                        "l4_2_omega13_5", "a5_s6p"});
  for (const auto& n : entries) {
    CHECK(!n.chain.empty());
    CHECK(!n.reason.empty());
    CHECK(!n.source.empty());
  }
  CHECK(family_by_id("m12").id == "m12");  // registry lookup sanity
  CHECK(entries[0].reason.find("not maximal in A11") != std::string::npos);
  CHECK(entries[1].reason.find("two classes of L_3(3):2") != std::string::npos);
  CHECK(entries[4].reason.find("tensor product") != std::string::npos);
}

TEST_CASE("registry serializes to versioned JSON") {
  nlohmann::ordered_json doc = registry_json();
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["families"].size() == list_families().size());
  CHECK(doc["non_examples"].size() == 5);
  for (const auto& f : doc["families"]) {
    CHECK(f.contains("id"));
    CHECK(f.contains("verification_level"));
    CHECK(f.contains("source"));
    if (!f["family"].is_null()) {
      CHECK(f["family"].contains("modulus"));
      CHECK(f["family"].contains("residues"));
      CHECK(f["family"].contains("provenance"));
    }
  }
  // renders don't crash and mention every id
  std::string text = render_text();
  std::string md = render_markdown();
  for (const auto& f : list_families()) {
    CHECK(text.find(f.id) != std::string::npos);
    CHECK(md.find(f.id) != std::string::npos);
  }
}
