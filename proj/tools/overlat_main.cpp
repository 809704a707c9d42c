#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "overlat/catalog.hpp"
#include "overlat/certificate.hpp"
#include "overlat/congruence.hpp"
#include "overlat/fpmodule.hpp"
#include "overlat/group_io.hpp"
#include "overlat/interval.hpp"

namespace {

namespace pg = overlat::permgroup;
namespace iv = overlat::interval;
namespace nt = overlat::congruence;
namespace rm = overlat::repmod;
namespace cat = overlat::catalog;
namespace ct = overlat::certs;

using nlohmann::ordered_json;

struct GlobalOpts {
  bool json = false;
  std::string data_dir = "./data";
};

void emit(const GlobalOpts& opts, const ordered_json& j, const std::string& text) {
  if (opts.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

pg::GroupSpec load_group(const GlobalOpts& opts, const std::string& name) {
  std::filesystem::path path = std::filesystem::path(opts.data_dir) / (name + ".grp");
  pg::GroupSpec spec = pg::load_generator_file(path, name);
  return spec;
}

int cmd_verify(const GlobalOpts& opts, const std::string& target,
               const std::string& out_path) {
  if (target != "m12") {
    std::cerr << "verify: unknown target '" << target << "' (supported: m12)\n";
    return 2;
  }
  pg::GroupSpec spec = load_group(opts, target);
  spec.name = "M12";
  spec.expected_order = pg::Bigint(95040);
  pg::StabilizerChain G = spec.validate();
  if (!pg::is_transitive(spec.generators, spec.degree)) {
    std::cerr << "verify: group is not transitive\n";
    return 1;
  }

  auto classes = iv::find_transitive_subgroup_classes(G, 60);
  if (classes.empty()) {
    std::cerr << "verify: no transitive subgroup of order 60 found\n";
    return 1;
  }

  // Conjugation is an order-isomorphism of overgroup intervals, so one full
  // verification per conjugacy class covers every subgroup in the class.
  std::size_t total = 0;
  bool all_good = true;
  std::optional<ct::Certificate> certificate;
  ordered_json jclasses = ordered_json::array();
  std::ostringstream text;
  for (size_t c = 0; c < classes.size(); ++c) {
    total += classes[c].size();
    const iv::SubgroupNode& rep = classes[c].front();
    iv::CounterexampleReport report = iv::verify_counterexample(G, rep.generators);
    all_good = all_good && report.verdict;

    ordered_json jc;
    jc["class"] = c;
    jc["subgroups"] = classes[c].size();
    jc["shape"] = iv::to_string(report.lattice.shape);
    ordered_json orders = ordered_json::array();
    for (const auto& node : report.lattice.nodes) orders.push_back(node.order.str());
    jc["node_orders"] = orders;
    jc["tops_conjugate"] = report.tops_conjugate;
    jc["h_maximal_in_tops"] = report.h_maximal_in_tops;
    jc["verdict"] = report.verdict;
    jclasses.push_back(std::move(jc));

    text << "class " << c << ": " << classes[c].size()
         << " transitive subgroups of order 60; shape "
         << iv::to_string(report.lattice.shape) << "; node orders";
    for (const auto& node : report.lattice.nodes) text << " " << node.order;
    text << "; tops conjugate: " << (report.tops_conjugate ? "yes" : "no")
         << "; H maximal in tops: " << (report.h_maximal_in_tops ? "yes" : "no")
         << "; verdict: " << (report.verdict ? "PASS" : "FAIL") << "\n";

    if (c == 0)
      certificate = ct::make_certificate("boolean-rank2-conjugate-tops:m12", spec,
                                         rep.generators, report);
  }
  text << "total transitive order-60 subgroups: " << total << " in " << classes.size()
       << " conjugacy class(es)\n"
       << "overall: " << (all_good ? "PASS" : "FAIL") << "\n";

  if (!out_path.empty() && certificate) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "verify: cannot write " << out_path << "\n";
      return 2;
    }
    out << ct::serialize(*certificate);
    text << "certificate written to " << out_path << "\n";
  }

  ordered_json j;
  j["target"] = target;
  j["classes"] = std::move(jclasses);
  j["total_subgroups"] = total;
  j["verdict"] = all_good;
  if (!out_path.empty()) j["certificate"] = out_path;
  emit(opts, j, text.str());
  return all_good ? 0 : 1;
}

int cmd_cert_check(const GlobalOpts& opts, const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "cert-check: cannot open " << file << "\n";
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  ct::Certificate cert;
  try {
    cert = ct::parse_certificate(buf.str());
  } catch (const std::exception& e) {
    std::cerr << "cert-check: " << e.what() << "\n";
    return 2;
  }
  ct::RecheckOutcome outcome = ct::recheck(cert);
  ordered_json j;
  j["file"] = file;
  j["ok"] = outcome.ok;
  j["checks"] = ordered_json::array();
  std::ostringstream text;
  for (const auto& c : outcome.recomputed) {
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}});
    text << (c.passed ? "  ok  " : " FAIL ") << c.name << "\n";
  }
  if (!outcome.ok) {
    j["failure"] = outcome.failure;
    text << "recheck failed: " << outcome.failure << "\n";
  } else {
    text << "certificate verified\n";
  }
  emit(opts, j, text.str());
  return outcome.ok ? 0 : 1;
}

int cmd_primes(const GlobalOpts& opts, const std::string& family_id, std::int64_t limit) {
  const cat::ExampleFamily& fam = cat::family_by_id(family_id);
  if (!fam.family) {
    std::cerr << "primes: family " << family_id << " has no congruence family\n";
    return 2;
  }
  auto primes = nt::enumerate_primes(*fam.family, limit);
  ordered_json j;
  j["family"] = family_id;
  j["limit"] = limit;
  j["primes"] = primes;
  std::ostringstream text;
  text << family_id << " primes up to " << limit << ":";
  for (auto p : primes) text << " " << p;
  text << "\n";
  emit(opts, j, text.str());
  return 0;
}

int cmd_derive(const GlobalOpts& opts, const std::string& family_id) {
  cat::CrossCheckReport report = cat::cross_check(family_id);
  ordered_json j;
  j["family"] = family_id;
  j["derived"] = {{"modulus", report.derived.modulus}, {"residues", report.derived.residues}};
  j["stored"] = {{"modulus", report.stored.modulus}, {"residues", report.stored.residues}};
  j["match"] = report.match;
  std::ostringstream text;
  text << family_id << ": ";
  for (size_t i = 0; i < report.derived.residues.size(); ++i)
    text << (i ? ", " : "") << report.derived.residues[i];
  text << " (mod " << report.derived.modulus << ") - "
       << (report.match ? "matches stored classes" : "MISMATCH with stored classes") << "\n";
  emit(opts, j, text.str());
  return report.match ? 0 : 1;
}

int cmd_repunit_search(const GlobalOpts& opts, std::uint64_t q, std::uint64_t n_max,
                       bool special) {
  auto hits = nt::search_repunit_primes(q, n_max, special);
  ordered_json j;
  j["q"] = q;
  j["n_max"] = n_max;
  j["special"] = special;
  j["hits"] = ordered_json::array();
  std::ostringstream text;
  text << "repunit search q=" << q << ", n <= " << n_max
       << (special ? " (d = 7 mod 8 filter)" : "") << "\n";
  for (const auto& h : hits) {
    j["hits"].push_back({{"n", h.n},
                         {"digits", h.digits},
                         {"verdict", h.verdict == nt::Primality::prime ? "prime"
                                                                       : "probable prime"}});
    text << "  n = " << h.n << ": d has " << h.digits << " digits, "
         << (h.verdict == nt::Primality::prime ? "prime" : "probable prime") << "\n";
  }
  emit(opts, j, text.str());
  return 0;
}

int cmd_fixed_n_search(const GlobalOpts& opts, std::uint64_t n, std::uint64_t q_max) {
  auto qs = nt::search_q_for_fixed_n(n, q_max);
  ordered_json j;
  j["n"] = n;
  j["q_max"] = q_max;
  j["q"] = qs;
  std::ostringstream text;
  text << "fixed-n search n=" << n << ", q <= " << q_max << ":";
  for (auto q : qs) text << " " << q;
  text << "\n";
  emit(opts, j, text.str());
  return 0;
}

int cmd_lemma_check(const GlobalOpts& opts, std::uint64_t q_max, std::uint64_t n_max) {
  // Sweep all prime powers q <= q_max and 2 <= n <= n_max (n > 2 for q = 2):
  // the residue conditions must coincide with d = 7 (mod 8) everywhere.
  std::uint64_t checked = 0, mismatches = 0;
  for (std::uint64_t q = 2; q <= q_max; ++q) {
    bool is_prime_power = false;
    for (std::uint64_t p = 2; p <= q && !is_prime_power; ++p) {
      if (!nt::is_prime(nt::Bigint(p))) continue;
      std::uint64_t k = p;
      while (k < q && k <= q_max / p) k *= p;
      if (k == q) is_prime_power = true;
    }
    if (!is_prime_power) continue;
    for (std::uint64_t n = 2; n <= n_max; ++n) {
      if (q == 2 && n == 2) continue;
      ++checked;
      if (nt::lemma_condition(q, n) != (nt::repunit(q, n) % 8 == 7)) ++mismatches;
    }
  }
  ordered_json j;
  j["q_max"] = q_max;
  j["n_max"] = n_max;
  j["checked"] = checked;
  j["mismatches"] = mismatches;
  std::ostringstream text;
  text << "lemma check over prime powers q <= " << q_max << ", 2 <= n <= " << n_max
       << ": " << checked << " pairs, " << mismatches << " mismatches\n";
  emit(opts, j, text.str());
  return mismatches == 0 ? 0 : 1;
}

int cmd_catalog(const GlobalOpts& opts, const std::string& action, const std::string& id) {
  if (action == "list") {
    emit(opts, cat::registry_json(), cat::render_text());
    return 0;
  }
  if (action == "non-examples") {
    ordered_json j = ordered_json::array();
    std::ostringstream text;
    for (const auto& n : cat::non_examples()) {
      j.push_back({{"id", n.id}, {"chain", n.chain}, {"reason", n.reason}, {"source", n.source}});
      text << n.id << ": " << n.chain << "\n  " << n.reason << "\n";
    }
    emit(opts, j, text.str());
    return 0;
  }
  if (action == "show") {
    const cat::ExampleFamily& f = cat::family_by_id(id);
    ordered_json full = cat::registry_json();
    for (const auto& jf : full["families"])
      if (jf["id"] == f.id) {
        std::ostringstream text;
        text << f.id << ": " << f.h_name << " < " << f.m_name << " < " << f.g_name << "\n"
             << "  level: " << cat::to_string(f.verification_level) << "\n"
             << "  source: " << f.source << "\n  " << f.notes << "\n";
        emit(opts, jf, text.str());
        return 0;
      }
  }
  std::cerr << "catalog: unknown action\n";
  return 2;
}

int cmd_repmod(const GlobalOpts& opts, const std::string& case_name) {
  auto [points, lines] = rm::fano_actions();
  std::vector<pg::Permutation> a7 = {
      pg::parse_cycles("(0,1,2)", 7, false),
      pg::parse_cycles("(0,1,2,3,4,5,6)", 7, false),
  };

  std::vector<pg::Permutation> gens;
  std::int64_t p = 7;
  if (case_name == "l3_2_mod7" || case_name == "l3_2_points_mod7") {
    gens = points;
  } else if (case_name == "l3_2_lines_mod7") {
    gens = lines;
  } else if (case_name == "a7_mod7") {
    gens = a7;
  } else if (case_name == "l3_2_mod3") {
    gens = points;
    p = 3;
  } else {
    std::cerr << "repmod: unknown case '" << case_name
              << "' (cases: l3_2_mod7, l3_2_points_mod7, l3_2_lines_mod7, a7_mod7, "
                 "l3_2_mod3)\n";
    return 2;
  }

  rm::FpModule module = rm::deleted_module(gens, p);
  bool irreducible = rm::is_irreducible(module);
  auto gram = rm::invariant_gram(module);
  bool invariant = module.gram_invariant();

  ordered_json j;
  j["case"] = case_name;
  j["p"] = p;
  j["dim"] = module.dim;
  j["irreducible"] = irreducible;
  j["gram_present"] = gram.has_value();
  j["gram_invariant"] = invariant;
  std::ostringstream text;
  text << case_name << ": dim " << module.dim << " over GF(" << p << "), "
       << (irreducible ? "irreducible" : "reducible") << ", ";
  if (gram) {
    text << "invariant nondegenerate symmetric form\n";
    j["gram"] = ordered_json::array();
    for (int r = 0; r < gram->rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (int c = 0; c < gram->cols(); ++c) row.push_back(gram->at(r, c));
      j["gram"].push_back(std::move(row));
      text << "  [";
      for (int c = 0; c < gram->cols(); ++c) text << (c ? " " : "") << gram->at(r, c);
      text << "]\n";
    }
  } else {
    text << "no nondegenerate invariant form\n";
  }
  emit(opts, j, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"overgroup lattice verification toolkit"};
  app.require_subcommand(1);
  GlobalOpts opts;
  app.add_flag("--json", opts.json, "machine-readable output");
  app.add_option("--data", opts.data_dir, "group data directory (default ./data)");

  std::string verify_target, verify_out;
  auto* verify = app.add_subcommand("verify", "verify a counterexample target end to end");
  verify->add_option("target", verify_target)->required();
  verify->add_option("--out", verify_out, "write the certificate to this file");

  std::string cert_file;
  auto* cert = app.add_subcommand("cert-check", "independently re-validate a certificate");
  cert->add_option("file", cert_file)->required();

  std::string primes_family;
  std::int64_t primes_limit = 0;
  auto* primes = app.add_subcommand("primes", "list primes in a catalog family");
  primes->add_option("--family", primes_family)->required();
  primes->add_option("--limit", primes_limit)->required();

  std::string derive_family;
  auto* derive = app.add_subcommand("derive", "re-derive a family's residue classes by CRT");
  derive->add_option("--family", derive_family)->required();

  std::uint64_t rs_q = 0, rs_nmax = 0;
  bool rs_special = false;
  auto* rsearch = app.add_subcommand("repunit-search", "search prime repunits (q fixed)");
  rsearch->add_option("--q", rs_q)->required();
  rsearch->add_option("--n-max", rs_nmax)->required();
  rsearch->add_flag("--special", rs_special, "require d = 7 (mod 8)");

  std::uint64_t fn_n = 0, fn_qmax = 0;
  auto* fsearch = app.add_subcommand("fixed-n-search", "search prime repunits (n fixed)");
  fsearch->add_option("--n", fn_n)->required();
  fsearch->add_option("--q-max", fn_qmax)->required();

  std::uint64_t lc_qmax = 0, lc_nmax = 0;
  auto* lemma = app.add_subcommand("lemma-check", "sweep the d = 7 (mod 8) equivalence");
  lemma->add_option("--q-max", lc_qmax)->required();
  lemma->add_option("--n-max", lc_nmax)->required();

  std::string cat_action, cat_id;
  auto* catalog = app.add_subcommand("catalog", "registry of families and non-examples");
  catalog->add_option("action", cat_action)->required()->check(
      CLI::IsMember({"list", "show", "non-examples"}));
  catalog->add_option("id", cat_id);

  std::string repmod_case;
  auto* repmod = app.add_subcommand("repmod", "deleted permutation module reports");
  repmod->add_option("case", repmod_case)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(opts, verify_target, verify_out);
    if (cert->parsed()) return cmd_cert_check(opts, cert_file);
    if (primes->parsed()) return cmd_primes(opts, primes_family, primes_limit);
    if (derive->parsed()) return cmd_derive(opts, derive_family);
    if (rsearch->parsed()) return cmd_repunit_search(opts, rs_q, rs_nmax, rs_special);
    if (fsearch->parsed()) return cmd_fixed_n_search(opts, fn_n, fn_qmax);
    if (lemma->parsed()) return cmd_lemma_check(opts, lc_qmax, lc_nmax);
    if (catalog->parsed()) return cmd_catalog(opts, cat_action, cat_id);
    if (repmod->parsed()) return cmd_repmod(opts, repmod_case);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
