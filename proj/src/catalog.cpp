#include "overlat/catalog.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace overlat::catalog {

using congruence::CongruenceFamily;

namespace {

CongruenceFamily fam(std::int64_t modulus, std::vector<std::int64_t> residues,
                     std::string label) {
  CongruenceFamily f;
  f.modulus = modulus;
  f.residues = std::move(residues);
  f.label = std::move(label);
  f.provenance = CongruenceFamily::Provenance::given;
  f.check();
  return f;
}

std::vector<ExampleFamily> build_families() {
  std::vector<ExampleFamily> out;

  {
    ExampleFamily f;
    f.id = "m12";
    f.h_name = "A5 (transitive on 12 points)";
    f.m_name = "L2(11)";
    f.g_name = "M12";
    f.verification_level = VerificationLevel::fully_verified;
    f.source = "Atlas of Finite Groups, p. 33 (maximal subgroups of M12)";
    f.notes = "Smallest known instance; the whole overgroup interval is "
              "computed and certified by the verify command. The interchange "
              "of the two tops by outer elements needs normalizer machinery "
              "in M12:2 on 24 points and is not implemented; the in-group "
              "conjugator is found instead.";
    f.verify_command = "verify m12";
    out.push_back(std::move(f));
  }
  {
    ExampleFamily f;
    f.id = "he";
    f.h_name = "(A5 x A5).2.2";
    f.m_name = "S4(4):2";
    f.g_name = "He";
    f.verification_level = VerificationLevel::catalog_only;
    f.source = "Butler; Atlas of Finite Groups, p. 104";
    f.notes = "Order too large for the closure-based interval computation; "
              "recorded from the subgroup-structure literature only.";
    out.push_back(std::move(f));
  }
  {
    ExampleFamily f;
    f.id = "omega10";
    f.h_name = "M12";
    f.m_name = "A12";
    f.g_name = "Omega10-(2)";
    f.verification_level = VerificationLevel::catalog_only;
    f.source = "ABC / BHRD corrected maximal subgroup lists for Omega10-(2)";
    f.notes = "Group too large for in-tree verification; depends on the "
              "corrected maximal subgroup lists.";
    out.push_back(std::move(f));
  }
  {
    ExampleFamily f;
    f.id = "omega5_7";
    f.h_name = "L3(2)";
    f.m_name = "A7";
    f.g_name = "Omega5(7)";
    f.verification_level = VerificationLevel::ingredients_verified;
    f.source = "BHRD Table 8.23";
    f.notes = "The representation-theoretic ingredients (5-dimensional "
              "doubly-deleted module mod 7, irreducibility, invariant "
              "nondegenerate symmetric form) are verified by the repmod "
              "command; the classification step is externally sourced.";
    f.verify_command = "repmod l3_2_mod7";
    out.push_back(std::move(f));
  }
  {
    ExampleFamily f;
    f.id = "psl4";
    f.h_name = "L3(2)";
    f.m_name = "A7";
    f.g_name = "PSL4(p) = Omega6+(p)";
    f.family = fam(56, {15, 23, 39}, "p = 15, 23, 39 (mod 56)");
    f.verification_level = VerificationLevel::ingredients_verified;
    f.source = "BHRD Table 8.9";
    f.notes = "Residues derived from: p = 7 (mod 8) and p a quadratic "
              "residue mod 7.";
    f.derivation = {fam(8, {7}, "p = 7 (mod 8)"),
                    fam(7, {1, 2, 4}, "p a QR mod 7")};
    out.push_back(std::move(f));
  }
  {
    ExampleFamily f;
    f.id = "psu4";
    f.h_name = "L3(2)";
    f.m_name = "A7";
    f.g_name = "PSU4(p) = Omega6-(p)";
    f.family = fam(56, {17, 33, 41}, "p = 17, 33, 41 (mod 56)");
    f.verification_level = VerificationLevel::ingredients_verified;
    f.source = "BHRD Table 8.11";
    f.notes = "Residues derived from: p = 1 (mod 8) and p a non-residue "
              "mod 7.";
    f.derivation = {fam(8, {1}, "p = 1 (mod 8)"),
                    fam(7, {3, 5, 6}, "p a non-residue mod 7")};
    out.push_back(std::move(f));
  }
  {
    ExampleFamily f;
    f.id = "repunit_special";
    f.h_name = "PGammaL_n(q)";
    f.m_name = "A_d";
    f.g_name = "Omega_{d-2}(d), d = (q^n-1)/(q-1) prime";
    f.family = fam(8, {7}, "d = 7 (mod 8); condition on d, not on p");
    f.verification_level = VerificationLevel::ingredients_verified;
    f.source = "OEIS A004061 (q = 5); GAP searches for q = 17";
    f.notes = "The defining condition d = 7 (mod 8) is equivalent to the "
              "residue conditions on (q, n) checked by lemma-check; the "
              "prime tables are reproduced by repunit-search and "
              "fixed-n-search. Giant entries (q = 5, n >= 3407) are cited "
              "from the literature, not verified in-tree.";
    out.push_back(std::move(f));
  }
  {
    ExampleFamily f;
    f.id = "omega14_plus";
    f.h_name = "A8";
    f.m_name = "A15";
    f.g_name = "Omega14+(p)";
    f.family = fam(60, {19, 23, 31, 47}, "p = 19, 23, 31, 47 (mod 60)");
    f.verification_level = VerificationLevel::catalog_only;
    f.source = "Schroeder, St Andrews PhD thesis, Props 6.4.4-6.4.5";
    f.notes = "No elementary derivation of the mod-60 classes is on record; "
              "stored as given. cross-check unavailable.";
    out.push_back(std::move(f));
  }
  {
    ExampleFamily f;
    f.id = "omega14_minus";
    f.h_name = "A8";
    f.m_name = "A15";
    f.g_name = "Omega14-(p)";
    f.family = fam(60, {13, 29, 37, 41}, "p = 13, 29, 37, 41 (mod 60)");
    f.verification_level = VerificationLevel::catalog_only;
    f.source = "Schroeder, St Andrews PhD thesis, Props 6.4.4-6.4.5";
    f.notes = "Mirror of omega14_plus for minus type; no elementary "
              "derivation on record. cross-check unavailable.";
    out.push_back(std::move(f));
  }
  {
    ExampleFamily f;
    f.id = "l5_2_plus";
    f.h_name = "L5(2)";
    f.m_name = "A31";
    f.g_name = "Omega30+(p)";
    f.family = fam(248, {39, 47, 63, 95, 159}, "p = 39, 47, 63, 95, 159 (mod 248)");
    f.verification_level = VerificationLevel::ingredients_verified;
    f.source = "BHRD";
    f.notes = "Derived from: p = 3 (mod 4), p = +-1 (mod 8), and p a power "
              "of 2 mod 31. Note: the powers of 2 mod 31 are a proper "
              "subset of the squares mod 31 required by the unbounded-rank "
              "series; both predicates are implemented and the discrepancy "
              "is left unresolved.";
    f.derivation = {fam(4, {3}, "p = 3 (mod 4)"), fam(8, {1, 7}, "p = +-1 (mod 8)"),
                    fam(31, {1, 2, 4, 8, 16}, "p a power of 2 mod 31")};
    out.push_back(std::move(f));
  }
  {
    ExampleFamily f;
    f.id = "l5_2_minus";
    f.h_name = "L5(2)";
    f.m_name = "A31";
    f.g_name = "Omega30-(p)";
    f.family = fam(248, {1, 33, 97, 225, 233}, "p = 1, 33, 97, 225, 233 (mod 248)");
    f.verification_level = VerificationLevel::ingredients_verified;
    f.source = "BHRD";
    f.notes = "Derived from: p = 1 (mod 4), p = +-1 (mod 8), and p a power "
              "of 2 mod 31. Same powers-of-2 versus squares discrepancy as "
              "l5_2_plus.";
    f.derivation = {fam(4, {1}, "p = 1 (mod 4)"), fam(8, {1, 7}, "p = +-1 (mod 8)"),
                    fam(31, {1, 2, 4, 8, 16}, "p a power of 2 mod 31")};
    out.push_back(std::move(f));
  }
  {
    ExampleFamily f;
    f.id = "unbounded_rank";
    f.h_name = "L_n(2)";
    f.m_name = "A_d, d = 2^n - 1";
    f.g_name = "Omega_{d-1}^eps(p)";
    f.verification_level = VerificationLevel::catalog_only;
    f.source = "BHRD";
    f.notes = "Parametric in n: requires eps*p = 3 (mod 4), p a square "
              "modulo d = 2^n - 1, and for odd n also p = +-1 (mod 8). No "
              "single congruence family; shows the rank of G is unbounded. "
              "For n = 5 the stored l5_2 classes use powers of 2 mod 31, a "
              "proper subset of the squares mod 31 required here; the "
              "discrepancy is surfaced, not resolved.";
    out.push_back(std::move(f));
  }
  {
    ExampleFamily f;
    f.id = "s14_j2";
    f.h_name = "J2";
    f.m_name = "S6(p)";
    f.g_name = "S14(p)";
    f.family = fam(40, {11, 19, 21, 29}, "p = +-11, +-19 (mod 40)");
    f.verification_level = VerificationLevel::catalog_only;
    f.source = "Schroeder, St Andrews PhD thesis (maximal subgroups of S14(q))";
    f.notes = "Symplectic series; +-11, +-19 stored as least nonnegative "
              "residues 11, 19, 21, 29.";
    out.push_back(std::move(f));
  }
  {
    ExampleFamily f;
    f.id = "s14_l213";
    f.h_name = "L2(13)";
    f.m_name = "S6(p)";
    f.g_name = "S14(p)";
    f.family = fam(104, {3, 27, 29, 35, 43, 51, 53, 61, 69, 75, 77, 101},
                   "p = +-3, +-27, +-29, +-35, +-43, +-51 (mod 104)");
    f.verification_level = VerificationLevel::catalog_only;
    f.source = "Schroeder, St Andrews PhD thesis (maximal subgroups of S14(q))";
    f.notes = "Symplectic series; signed classes expanded to least "
              "nonnegative residues.";
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<NonExample> build_non_examples() {
  return {
      {"l2_11_a11", "L2(11) < A11 < Omega10^eps(p)",
       "L2(11) is not maximal in A11, so the configuration fails.",
       "Atlas of Finite Groups (maximal subgroups of A11)"},
      {"l3_3_omega11", "L3(3) < A13 < Omega11(13)",
       "Omega11(13) contains two classes of L_3(3):2, so L3(3) embeds in "
       "both A13 and L3(3):2 and does not provide an example.",
       "BHRD Table 8.75"},
      {"l4_2_omega13_3", "L4(2) = A8 < A15 < Omega13(3)",
       "Omega13(3) has one class of A8 and two classes of S15; A8 is not "
       "second maximal in this case.",
       "Schroeder, St Andrews PhD thesis"},
      {"l4_2_omega13_5", "L4(2) = A8 < A15 < Omega13(5)",
       "Omega13(5) has one class of A15 and two classes of S8; A8 is "
       "contained in three maximal subgroups in this case.",
       "Schroeder, St Andrews PhD thesis"},
      {"a5_s6p", "A5 < L2(p) < S6(p), p = +-11, +-19 (mod 40)",
       "The embedding of 2.A5 in Sp6(p) also goes via the tensor product "
       "Sp2(p) o GO3(p), so this A5 lies in more than two maximal "
       "subgroups of S6(p).",
       "BHRD (symplectic groups of dimension <= 12)"},
  };
}

}  // namespace

std::string to_string(VerificationLevel level) {
  switch (level) {
    case VerificationLevel::fully_verified:
      return "fully-verified";
    case VerificationLevel::ingredients_verified:
      return "ingredients-verified";
    case VerificationLevel::catalog_only:
      return "catalog-only";
  }
  return "?";
}

const std::vector<ExampleFamily>& list_families() {
  static const std::vector<ExampleFamily> families = build_families();
  return families;
}

const std::vector<NonExample>& non_examples() {
  static const std::vector<NonExample> entries = build_non_examples();
  return entries;
}

const ExampleFamily& family_by_id(const std::string& id) {
  for (const auto& f : list_families())
    if (f.id == id) return f;
  throw std::invalid_argument("unknown family id: " + id);
}

CrossCheckReport cross_check(const std::string& id) {
  const ExampleFamily& f = family_by_id(id);
  if (f.derivation.empty())
    throw std::invalid_argument("family " + id + " has no recorded derivation");
  if (!f.family)
    throw std::invalid_argument("family " + id + " has no congruence family");
  CrossCheckReport report;
  report.id = id;
  report.derived = congruence::crt_intersect(f.derivation, f.family->label);
  report.stored = *f.family;
  report.match = report.derived.modulus == report.stored.modulus &&
                 report.derived.residues == report.stored.residues;
  return report;
}

std::vector<std::int64_t> first_primes(const std::string& id, int k) {
  const ExampleFamily& f = family_by_id(id);
  if (!f.family)
    throw std::invalid_argument("family " + id +
                                " is a fixed instance with no congruence family");
  return congruence::first_primes_in(*f.family, k);
}

namespace {

nlohmann::ordered_json family_json(const CongruenceFamily& f) {
  nlohmann::ordered_json j;
  j["modulus"] = f.modulus;
  j["residues"] = f.residues;
  j["label"] = f.label;
  j["provenance"] =
      f.provenance == CongruenceFamily::Provenance::crt_derived ? "crt-derived" : "given";
  if (f.empty_intersection) j["empty_intersection"] = true;
  return j;
}

}  // namespace

nlohmann::ordered_json registry_json() {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["families"] = nlohmann::ordered_json::array();
  for (const auto& f : list_families()) {
    nlohmann::ordered_json j;
    j["id"] = f.id;
    j["H"] = f.h_name;
    j["M"] = f.m_name;
    j["G"] = f.g_name;
    if (f.family) j["family"] = family_json(*f.family);
    else j["family"] = nullptr;
    j["verification_level"] = to_string(f.verification_level);
    j["source"] = f.source;
    j["notes"] = f.notes;
    if (!f.derivation.empty()) {
      j["derivation"] = nlohmann::ordered_json::array();
      for (const auto& c : f.derivation) j["derivation"].push_back(family_json(c));
    }
    if (!f.verify_command.empty()) j["verify_command"] = f.verify_command;
    doc["families"].push_back(std::move(j));
  }
  doc["non_examples"] = nlohmann::ordered_json::array();
  for (const auto& n : non_examples()) {
    nlohmann::ordered_json j;
    j["id"] = n.id;
    j["chain"] = n.chain;
    j["reason"] = n.reason;
    j["source"] = n.source;
    doc["non_examples"].push_back(std::move(j));
  }
  return doc;
}

namespace {

std::string residue_text(const CongruenceFamily& f) {
  std::ostringstream out;
  for (size_t i = 0; i < f.residues.size(); ++i) {
    if (i) out << ", ";
    out << f.residues[i];
  }
  out << " (mod " << f.modulus << ")";
  return out.str();
}

}  // namespace

std::string render_text() {
  std::ostringstream out;
  out << "Example families (" << list_families().size() << ")\n";
  for (const auto& f : list_families()) {
    out << "  " << f.id << ": " << f.h_name << " < " << f.m_name << " < " << f.g_name
        << "\n    level: " << to_string(f.verification_level);
    if (f.family) out << "\n    classes: " << residue_text(*f.family);
    if (!f.verify_command.empty()) out << "\n    verify: " << f.verify_command;
    out << "\n    source: " << f.source << "\n";
  }
  out << "Non-examples (" << non_examples().size() << ")\n";
  for (const auto& n : non_examples())
    out << "  " << n.id << ": " << n.chain << "\n    " << n.reason << "\n";
  return out.str();
}

std::string render_markdown() {
  std::ostringstream out;
  out << "# Example families\n\n";
  out << "| id | chain | residues | level |\n|---|---|---|---|\n";
  for (const auto& f : list_families()) {
    out << "| " << f.id << " | " << f.h_name << " < " << f.m_name << " < " << f.g_name
        << " | " << (f.family ? residue_text(*f.family) : std::string("-")) << " | "
        << to_string(f.verification_level) << " |\n";
  }
  out << "\n# Non-examples\n\n";
  for (const auto& n : non_examples())
    out << "- **" << n.id << "** (" << n.chain << "): " << n.reason << "\n";
  return out.str();
}

}  // namespace overlat::catalog
