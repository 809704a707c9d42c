// Acceptance suite: every criterion below runs end to end, prints one
// PASS/FAIL line, and the process exits nonzero if any criterion fails.
//
//   acceptance --cli <path-to-overlat> --data <data-dir> --work <scratch-dir>
//             [--only N]

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "overlat/catalog.hpp"
#include "overlat/certificate.hpp"
#include "overlat/congruence.hpp"
#include "overlat/fpmodule.hpp"
#include "overlat/group_io.hpp"
#include "overlat/interval.hpp"

namespace fs = std::filesystem;
namespace pg = overlat::permgroup;
namespace iv = overlat::interval;
namespace nt = overlat::congruence;
namespace rm = overlat::repmod;
namespace cat = overlat::catalog;
namespace ct = overlat::certs;
using nlohmann::ordered_json;

namespace {

struct Context {
  std::string cli;
  fs::path data;
  fs::path work;
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

int run_cli(const Context& ctx, const std::string& args, const fs::path& stdout_file) {
  std::string cmd = ctx.cli + " " + args + " > " + stdout_file.string() + " 2> " +
                    (stdout_file.string() + ".err");
  int status = std::system(cmd.c_str());
  if (status < 0) throw Failure("could not launch CLI");
  return WEXITSTATUS(status);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

pg::Permutation cyc(const std::string& text, int degree) {
  return pg::parse_cycles(text, degree, false);
}

// ---- criterion 1: M12 counterexample end-to-end through the CLI ----

void criterion_1(const Context& ctx) {
  fs::path cert_path = ctx.work / "m12.cert.json";
  fs::path out = ctx.work / "verify.json";
  int exit_code = run_cli(ctx,
                          "--json --data " + ctx.data.string() + " verify m12 --out " +
                              cert_path.string(),
                          out);
  require(exit_code == 0, "verify m12 exited with code " + std::to_string(exit_code));
  ordered_json j = ordered_json::parse(read_file(out));
  require(j["verdict"].get<bool>(), "verdict is not true");
  require(j["total_subgroups"].get<std::uint64_t>() >= 1,
          "no transitive subgroup of order 60 found");
  for (const auto& cls : j["classes"]) {
    require(cls["verdict"].get<bool>(), "a conjugacy class failed verification");
    require(cls["shape"] == "BooleanRank2", "shape is not BooleanRank2");
    std::vector<std::string> orders = cls["node_orders"];
    require(orders == std::vector<std::string>{"60", "660", "660", "95040"},
            "interval node orders are not {60, 660, 660, 95040}");
    require(cls["h_maximal_in_tops"].get<bool>(), "H is not maximal in both tops");
    require(cls["tops_conjugate"].get<bool>(), "tops are not conjugate");
  }
  ct::Certificate cert = ct::parse_certificate(read_file(cert_path));
  require(cert.shape == "BooleanRank2", "certificate shape mismatch");
  require(cert.conjugator.has_value(), "certificate lacks a conjugator");
  require(cert.interval_nodes.size() == 4, "certificate node count mismatch");
  require(ct::recheck(cert).ok, "certificate does not recheck");
}

// ---- criterion 2: oracle equivalence over S4, A4, D8, A5 ----

void criterion_2(const Context&) {
  struct Case {
    const char* name;
    std::vector<pg::Permutation> gens;
  };
  std::vector<Case> cases = {
      {"S4", {cyc("(0,1)", 4), cyc("(0,1,2,3)", 4)}},
      {"A4", {cyc("(0,1,2)", 4), cyc("(0,1)(2,3)", 4)}},
      {"D8", {cyc("(0,1,2,3)", 4), cyc("(1,3)", 4)}},
      {"A5", {cyc("(0,1,2)", 5), cyc("(0,1,2,3,4)", 5)}},
  };
  for (const auto& c : cases) {
    pg::StabilizerChain G = pg::StabilizerChain::build(c.gens);
    iv::AllSubgroups oracle = iv::all_subgroups(G);
    if (std::string(c.name) == "S4")
      require(oracle.nodes.size() == 30, "S4 oracle does not report 30 subgroups");
    for (size_t i = 0; i < oracle.nodes.size(); ++i) {
      std::set<std::vector<std::uint32_t>> expected;
      for (size_t j = 0; j < oracle.nodes.size(); ++j)
        if (std::includes(oracle.element_sets[j].begin(), oracle.element_sets[j].end(),
                          oracle.element_sets[i].begin(), oracle.element_sets[i].end()))
          expected.insert(oracle.element_sets[j]);
      iv::IntervalLattice lattice = iv::interval_lattice(G, oracle.nodes[i].generators);
      std::set<std::vector<std::uint32_t>> actual;
      for (const auto& node : lattice.nodes) {
        std::vector<std::uint32_t> key;
        for (const pg::Permutation& g : pg::elements(node.chain)) {
          bool found = false;
          for (std::uint32_t u = 0; u < oracle.universe.size(); ++u)
            if (oracle.universe[u] == g) {
              key.push_back(u);
              found = true;
              break;
            }
          require(found, "interval element missing from oracle universe");
        }
        std::sort(key.begin(), key.end());
        actual.insert(std::move(key));
      }
      require(actual == expected,
              std::string(c.name) + ": interval disagrees with the filtered oracle");
    }
  }
}

// ---- criterion 3: lemma sweep ----

void criterion_3(const Context&) {
  std::uint64_t mismatches = 0, checked = 0;
  for (std::uint64_t q = 2; q <= 100; ++q) {
    bool prime_power = false;
    for (std::uint64_t p = 2; p <= q && !prime_power; ++p) {
      if (!nt::is_prime(nt::Bigint(p))) continue;
      std::uint64_t k = p;
      while (k < q) k *= p;
      if (k == q) prime_power = true;
    }
    if (!prime_power) continue;
    for (std::uint64_t n = 2; n <= 50; ++n) {
      if (q == 2 && n == 2) continue;
      ++checked;
      if (nt::lemma_condition(q, n) != (nt::repunit(q, n) % 8 == 7)) ++mismatches;
    }
  }
  require(checked > 1500, "lemma sweep covered too few pairs");
  require(mismatches == 0,
          "lemma sweep found " + std::to_string(mismatches) + " mismatches");
}

// ---- criterion 4: d-cycle reality via the group engine ----

void criterion_4(const Context&) {
  for (int d : {5, 7, 11, 13}) {
    std::vector<int> cycle_im(d), reversal_im(d);
    for (int i = 0; i < d; ++i) {
      cycle_im[i] = (i + 1) % d;
      reversal_im[i] = (d - i) % d;
    }
    pg::Permutation c(cycle_im), g(reversal_im);
    pg::Permutation c_inv = c.inverse();
    // Solutions of c^g = c^-1 form the coset (reversal) * <c>; search it.
    bool engine_verdict = false;
    for (int k = 0; k < d; ++k) {
      if (pg::conjugate(c, g) == c_inv && g.is_even()) engine_verdict = true;
      g = pg::compose(g, c);
    }
    require(engine_verdict == nt::dcycle_real_in_alternating(d),
            "engine search disagrees with d = 1 (mod 4) at d = " + std::to_string(d));
    require(engine_verdict == (d % 4 == 1),
            "verdict differs from d = 1 (mod 4) at d = " + std::to_string(d));
  }
}

// ---- criterion 5: CRT derivations ----

void criterion_5(const Context&) {
  struct Want {
    const char* id;
    std::int64_t modulus;
    std::vector<std::int64_t> residues;
  };
  std::vector<Want> wanted = {
      {"psl4", 56, {15, 23, 39}},
      {"psu4", 56, {17, 33, 41}},
      {"l5_2_plus", 248, {39, 47, 63, 95, 159}},
      {"l5_2_minus", 248, {1, 33, 97, 225, 233}},
  };
  for (const auto& w : wanted) {
    cat::CrossCheckReport report = cat::cross_check(w.id);
    require(report.match, std::string(w.id) + ": derived classes differ from stored");
    require(report.derived.modulus == w.modulus,
            std::string(w.id) + ": wrong modulus");
    require(report.derived.residues == w.residues,
            std::string(w.id) + ": wrong residue set");
  }
}

// ---- criterion 6: prime tables ----

void criterion_6(const Context&) {
  using V = std::vector<std::uint64_t>;
  nt::ResidueFilter five_mod_8{8, {5}};
  require(nt::search_q_for_fixed_n(3, 800, five_mod_8) ==
              V{5, 101, 173, 293, 677, 701, 773},
          "n=3 table mismatch");
  require(nt::search_q_for_fixed_n(7, 4500) ==
              V{17, 73, 89, 353, 1297, 1409, 1489, 1609, 1753, 2609, 2753, 3673, 4049,
                4409},
          "n=7 table mismatch");
  require(nt::search_q_for_fixed_n(11, 7300) ==
              V{53, 229, 389, 709, 1213, 2029, 5581, 5669, 5813, 5861, 7229},
          "n=11 table mismatch");
  require(nt::search_q_for_fixed_n(19, 1750) == V{181, 277, 389, 509, 797, 1693, 1709},
          "n=19 table mismatch");
  require(nt::search_q_for_fixed_n(23, 1900) == V{113, 257, 857, 1801},
          "n=23 table mismatch");
  require(nt::search_q_for_fixed_n(31, 300) == V{241}, "n=31 table mismatch");

  auto hits_n = [](std::vector<nt::RepunitHit> hits) {
    V out;
    for (const auto& h : hits) out.push_back(h.n);
    return out;
  };
  require(hits_n(nt::search_repunit_primes(17, 100, true)) == V{7, 47, 71},
          "q=17 repunit table mismatch");
  require(hits_n(nt::search_repunit_primes(5, 20, true)) == V{3, 11},
          "q=5 repunit table mismatch");
}

// ---- criterion 7: representation ingredients ----

void criterion_7(const Context&) {
  auto [points, lines] = rm::fano_actions();
  std::vector<pg::Permutation> a7 = {cyc("(0,1,2)", 7), cyc("(0,1,2,3,4,5,6)", 7)};

  auto check_module = [](const char* name, const std::vector<pg::Permutation>& gens,
                         bool check_irreducible) {
    rm::FpModule mod = rm::deleted_module(gens, 7);
    require(mod.dim == 5, std::string(name) + ": dimension is not 5");
    auto gram = rm::invariant_gram(mod);
    require(gram.has_value(), std::string(name) + ": no nondegenerate form");
    require(gram->is_symmetric(), std::string(name) + ": form not symmetric");
    require(mod.gram_invariant(), std::string(name) + ": form not invariant");
    if (check_irreducible)
      require(rm::is_irreducible(mod), std::string(name) + ": module not irreducible");
  };
  check_module("L3(2) points", points, true);
  check_module("L3(2) lines", lines, true);
  check_module("A7", a7, false);

  // line count (7^5 - 1)/(7 - 1) = 2801 drives the exhaustive spin
  require((16807 - 1) / 6 == 2801, "line count arithmetic");
}

// ---- criterion 8: certificate audit ----

void criterion_8(const Context& ctx) {
  fs::path cert_path = ctx.work / "m12.cert.json";
  if (!fs::exists(cert_path)) {
    fs::path out = ctx.work / "verify_for_audit.json";
    int code = run_cli(ctx,
                       "--json --data " + ctx.data.string() + " verify m12 --out " +
                           cert_path.string(),
                       out);
    require(code == 0, "could not produce a certificate for the audit");
  }
  std::string original = read_file(cert_path);

  fs::path ok_out = ctx.work / "audit_ok.json";
  require(run_cli(ctx, "cert-check " + cert_path.string(), ok_out) == 0,
          "cert-check rejected the genuine certificate");

  // Locate a generator image byte and an order digit byte inside the nodes.
  ordered_json j = ordered_json::parse(original);
  std::string order_text = "\"order\": \"" +
                           j["interval_nodes"][1]["order"].get<std::string>() + "\"";
  size_t order_pos = original.find(order_text);
  require(order_pos != std::string::npos, "cannot locate an order field");
  size_t order_digit = order_pos + order_text.size() - 2;  // last digit

  size_t nodes_pos = original.find("\"interval_nodes\"");
  size_t gen_digit = original.find_first_of("0123456789", original.find('[', nodes_pos));
  require(gen_digit != std::string::npos, "cannot locate a generator image digit");

  std::mt19937 rng(12345);
  int corruption_runs = 0;
  auto audit_one = [&](size_t pos, const char* what) {
    std::string corrupted = original;
    char old = corrupted[pos];
    char replacement = old;
    while (replacement == old)
      replacement = static_cast<char>('0' + rng() % 10);
    corrupted[pos] = replacement;
    fs::path bad_path = ctx.work / ("corrupt_" + std::to_string(corruption_runs) + ".json");
    std::ofstream(bad_path, std::ios::binary) << corrupted;
    fs::path bad_out = ctx.work / ("audit_bad_" + std::to_string(corruption_runs) + ".json");
    ++corruption_runs;
    int code = run_cli(ctx, "cert-check " + bad_path.string(), bad_out);
    require(code != 0, std::string("corrupted ") + what + " was accepted");
    std::string output = read_file(bad_out) + read_file(fs::path(bad_out.string() + ".err"));
    require(output.find("node_orders_match") != std::string::npos ||
                output.find("node_generators_valid") != std::string::npos ||
                output.find("certificate schema") != std::string::npos ||
                output.find("FAIL") != std::string::npos,
            std::string("no named failing check for corrupted ") + what);
  };
  audit_one(order_digit, "order digit");
  audit_one(gen_digit, "generator image digit");

  // a handful of further single-byte digit corruptions inside the node block
  size_t block_start = nodes_pos;
  size_t block_end = original.find("\"hasse_edges\"");
  std::vector<size_t> digit_positions;
  for (size_t i = block_start; i < block_end; ++i)
    if (original[i] >= '0' && original[i] <= '9') digit_positions.push_back(i);
  for (int extra = 0; extra < 10; ++extra)
    audit_one(digit_positions[rng() % digit_positions.size()], "node field digit");
}

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  int only = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string key = argv[i];
    if (key == "--cli") ctx.cli = argv[i + 1];
    else if (key == "--data") ctx.data = argv[i + 1];
    else if (key == "--work") ctx.work = argv[i + 1];
    else if (key == "--only") only = std::atoi(argv[i + 1]);
  }
  if (ctx.cli.empty() || ctx.data.empty() || ctx.work.empty()) {
    std::cerr << "usage: acceptance --cli PATH --data DIR --work DIR [--only N]\n";
    return 2;
  }
  fs::create_directories(ctx.work);

  struct Criterion {
    int id;
    const char* name;
    std::function<void(const Context&)> run;
  };
  std::vector<Criterion> criteria = {
      {1, "M12 end-to-end (verify m12: 4 nodes, diamond, conjugate tops)",
       criterion_1},
      {2, "oracle equivalence for every subgroup of S4, A4, D8, A5", criterion_2},
      {3, "lemma sweep: residue conditions equal d = 7 (mod 8), zero mismatches",
       criterion_3},
      {4, "d-cycle reality cross-check for d in {5, 7, 11, 13}", criterion_4},
      {5, "CRT reproduction of the mod-56 and mod-248 class lists", criterion_5},
      {6, "prime tables: six fixed-n searches and two repunit searches", criterion_6},
      {7, "mod-7 modules: dimension 5, invariant forms, exhaustive irreducibility",
       criterion_7},
      {8, "certificate audit: genuine accepted, corrupted rejected by name",
       criterion_8},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    auto start = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
      c.run(ctx);
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = e.what();
      ++failures;
    }
    auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    std::cout << verdict << " criterion " << c.id << ": " << c.name << " ["
              << static_cast<int>(seconds.count() * 1000) / 1000.0 << "s]";
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n" << std::flush;
  }
  return failures == 0 ? 0 : 1;
}
