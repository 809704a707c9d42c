#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <doctest.h>

#include "overlat/group_io.hpp"
#include "overlat/permutation.hpp"
#include "overlat/stabilizer_chain.hpp"

using namespace overlat::permgroup;

namespace {

Permutation cyc(const std::string& text, int degree) {
  return parse_cycles(text, degree, false);
}

std::vector<Permutation> a5_gens() { return {cyc("(0,1,2)", 5), cyc("(0,1,2,3,4)", 5)}; }

std::vector<Permutation> s4_gens() { return {cyc("(0,1)", 4), cyc("(0,1,2,3)", 4)}; }

// PSL(2,11) on the projective line over GF(11): point i is i for 0..10,
// point 11 is infinity. Generators x -> x+1 and x -> -1/x.
std::vector<Permutation> l2_11_gens() {
  std::vector<int> t(12), s(12);
  for (int i = 0; i < 11; ++i) t[i] = (i + 1) % 11;
  t[11] = 11;
  auto inv_mod11 = [](int x) {
    for (int y = 1; y < 11; ++y)
      if (x * y % 11 == 1) return y;
    return 0;
  };
  s[0] = 11;
  s[11] = 0;
  for (int x = 1; x < 11; ++x) s[x] = (11 - inv_mod11(x)) % 11;
  return {Permutation(t), Permutation(s)};
}

GroupSpec load_m12() {
  GroupSpec spec = load_generator_file(std::string(OVERLAT_DATA_DIR) + "/m12.grp", "M12");
  spec.expected_order = Bigint(95040);
  return spec;
}

}  // namespace

TEST_CASE("permutation validation and basics") {
  CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 3}), std::invalid_argument);
  Permutation id(4);
  CHECK(id.is_identity());
  CHECK(id.order() == 1);
  CHECK(id.min_moved_point() == -1);
  Permutation c = cyc("(0,1,2)", 5);
  CHECK(c.order() == 3);
  CHECK(c.is_even());
  CHECK_FALSE(cyc("(0,1)", 4).is_even());
  CHECK(c.min_moved_point() == 0);
}

TEST_CASE("compose follows the left-to-right convention") {
  CHECK(compose(cyc("(0,1)", 2), cyc("(0,1)", 2)).is_identity());
  CHECK(compose(cyc("(0,1,2)", 3), cyc("(0,1,2)", 3)) == cyc("(0,2,1)", 3));
  Permutation a = cyc("(0,3)(1,2)", 4);
  CHECK(compose(a, Permutation(4)) == a);
  CHECK_THROWS_AS(compose(cyc("(0,1)", 2), cyc("(0,1)", 3)), std::invalid_argument);
  // x -> b(a(x))
  Permutation p = compose(cyc("(0,1)", 3), cyc("(1,2)", 3));
  CHECK(p(0) == 2);
}

TEST_CASE("compose with inverse gives the identity (random sweep)") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    int degree = 1 + static_cast<int>(rng() % 12);
    std::vector<int> im(degree);
    std::iota(im.begin(), im.end(), 0);
    std::shuffle(im.begin(), im.end(), rng);
    Permutation p(im);
    CHECK(compose(p, p.inverse()).is_identity());
    CHECK(compose(p.inverse(), p).is_identity());
  }
}

TEST_CASE("cycle notation parses and round-trips") {
  Permutation p = parse_cycles("(1,2)(3,4)", 4, true);
  CHECK(p.images() == std::vector<int>{1, 0, 3, 2});
  CHECK(parse_cycles("()", 5, true).is_identity());
  CHECK_THROWS_AS(parse_cycles("(1,2,2)", 4, true), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(0,5)", 4, false), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(1,2", 4, true), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("1,2)", 4, true), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("", 4, true), std::invalid_argument);
  // whitespace tolerance
  CHECK(parse_cycles(" ( 1 , 2 ) ( 3 , 4 ) ", 4, true) == p);
  CHECK(print_cycles(p, true) == "(1,2)(3,4)");
  CHECK(print_cycles(Permutation(5), true) == "()");

  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int degree = 1 + static_cast<int>(rng() % 12);
    std::vector<int> im(degree);
    std::iota(im.begin(), im.end(), 0);
    std::shuffle(im.begin(), im.end(), rng);
    Permutation p2(im);
    bool one_based = trial % 2 == 0;
    CHECK(parse_cycles(print_cycles(p2, one_based), degree, one_based) == p2);
  }
}

TEST_CASE("schreier_sims computes orders") {
  CHECK(StabilizerChain::build(a5_gens()).order() == 60);
  CHECK(StabilizerChain::build({cyc("(0,1,2,3,4,5,6)", 7)}).order() == 7);
  CHECK(StabilizerChain::build({Permutation(5)}).order() == 1);
  CHECK(StabilizerChain::build(s4_gens()).order() == 24);
  // (11^3 - 11)/2 by the standard order formula
  CHECK(StabilizerChain::build(l2_11_gens()).order() == (11 * 11 * 11 - 11) / 2);
  CHECK_THROWS_AS(StabilizerChain::build({}), std::invalid_argument);
}

TEST_CASE("M12 data file: order 95040 and transitive") {
  GroupSpec spec = load_m12();
  StabilizerChain chain = spec.validate();
  CHECK(chain.order() == 95040);
  CHECK(is_transitive(spec.generators, 12));
}

TEST_CASE("membership: generators and identity in, odd permutations out") {
  StabilizerChain a5 = StabilizerChain::build(a5_gens());
  for (const auto& g : a5_gens()) CHECK(a5.contains(g));
  CHECK(a5.contains(Permutation(5)));
  CHECK_FALSE(a5.contains(cyc("(0,1)", 5)));
  CHECK_FALSE(a5.contains(cyc("(0,1,2,3)", 5)));
}

TEST_CASE("membership agrees with exhaustive enumeration at small degree") {
  struct Case {
    std::vector<Permutation> gens;
    int degree;
  };
  std::vector<Case> cases = {
      {s4_gens(), 4},
      {{cyc("(0,1,2)", 4), cyc("(0,1)(2,3)", 4)}, 4},          // A4
      {{cyc("(0,1,2,3)", 4), cyc("(1,3)", 4)}, 4},             // D8
      {a5_gens(), 5},
      {{cyc("(0,1,2)", 6), cyc("(0,1,2,3,4)", 6), cyc("(3,4,5)", 6)}, 6},  // A6-ish
  };
  for (const auto& c : cases) {
    StabilizerChain chain = StabilizerChain::build(c.gens);
    std::set<std::vector<int>> members;
    for (const Permutation& g : elements(chain)) members.insert(g.images());
    CHECK(members.size() == chain.element_count());

    std::vector<int> im(c.degree);
    std::iota(im.begin(), im.end(), 0);
    std::uint64_t contained = 0;
    do {
      Permutation g(im);
      bool in_set = members.contains(g.images());
      CHECK(chain.contains(g) == in_set);
      if (in_set) ++contained;
    } while (std::next_permutation(im.begin(), im.end()));
    CHECK(Bigint(contained) == chain.order());
  }
}

TEST_CASE("element enumeration is exact and bounded") {
  StabilizerChain s3 = StabilizerChain::build({cyc("(0,1)", 3), cyc("(0,1,2)", 3)});
  std::set<std::vector<int>> seen;
  for (const Permutation& g : elements(s3)) seen.insert(g.images());
  CHECK(seen.size() == 6);

  StabilizerChain m12 = load_m12().validate();
  std::set<std::vector<int>> m12_seen;
  for (const Permutation& g : elements(m12)) m12_seen.insert(g.images());
  CHECK(m12_seen.size() == 95040);

  CHECK_THROWS_AS(elements(m12, 1000), std::runtime_error);
}

TEST_CASE("rank and unrank are inverse") {
  StabilizerChain m12 = load_m12().validate();
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::uint64_t idx = rng() % 95040;
    Permutation g = m12.element_at(idx);
    auto r = m12.rank_of(g);
    REQUIRE(r.has_value());
    CHECK(*r == idx);
  }
  CHECK_FALSE(m12.rank_of(cyc("(0,1)", 12)).has_value());
}

TEST_CASE("orbit computations") {
  auto gens = a5_gens();
  CHECK(orbit(gens, 0).size() == 5);
  std::vector<Permutation> id_only = {Permutation(5)};
  CHECK(orbit(id_only, 3) == std::vector<int>{3});
  std::vector<Permutation> three_cycle = {cyc("(0,1,2)", 5)};
  CHECK(orbit(three_cycle, 4) == std::vector<int>{4});
  CHECK(is_transitive(gens, 5));
  CHECK_FALSE(is_transitive(three_cycle, 5));
}

TEST_CASE("point stabilizer orders follow orbit-stabilizer") {
  StabilizerChain a5 = StabilizerChain::build(a5_gens());
  auto stab = a5.point_stabilizer(0);
  StabilizerChain stab_chain = StabilizerChain::build(stab);
  CHECK(stab_chain.order() == 12);
  for (const auto& g : stab) CHECK(g(0) == 0);

  // intransitive fixed point: the whole group is the stabilizer
  std::vector<Permutation> fix4 = {cyc("(0,1,2)", 5), cyc("(0,1)(2,3)", 5)};
  StabilizerChain chain = StabilizerChain::build(fix4);
  StabilizerChain stab4 = StabilizerChain::build(chain.point_stabilizer(4));
  CHECK(stab4.order() == chain.order());
}

TEST_CASE("find_conjugator decides subgroup conjugacy in S3") {
  StabilizerChain s3 = StabilizerChain::build({cyc("(0,1)", 3), cyc("(0,1,2)", 3)});
  std::vector<Permutation> a = {cyc("(0,1)", 3)};
  StabilizerChain b1 = StabilizerChain::build({cyc("(0,2)", 3)});
  auto g = find_conjugator(s3, a, b1);
  REQUIRE(g.has_value());
  CHECK(b1.contains(conjugate(a[0], *g)));

  StabilizerChain b2 = StabilizerChain::build({cyc("(0,1,2)", 3)});
  CHECK_FALSE(find_conjugator(s3, a, b2).has_value());
}

TEST_CASE("conjugation preserves subgroup order (random sweep)") {
  StabilizerChain m12 = load_m12().validate();
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Permutation> a;
    for (int k = 0; k < 2; ++k) a.push_back(m12.element_at(rng() % 95040));
    Permutation g = m12.element_at(rng() % 95040);
    std::vector<Permutation> conj;
    for (const auto& x : a) conj.push_back(conjugate(x, g));
    CHECK(StabilizerChain::build(a).order() == StabilizerChain::build(conj).order());
  }
}

TEST_CASE("chains are deterministic for identical input") {
  auto build_fingerprint = [](const std::vector<Permutation>& gens) {
    StabilizerChain chain = StabilizerChain::build(gens);
    std::vector<int> fp;
    for (const auto& lvl : chain.levels()) {
      fp.push_back(lvl.base_point);
      for (int x : lvl.orbit) fp.push_back(x);
      for (const auto& t : lvl.transversal)
        for (int x : t.images()) fp.push_back(x);
      for (const auto& g : lvl.gens)
        for (int x : g.images()) fp.push_back(x);
    }
    return fp;
  };
  GroupSpec spec = load_m12();
  CHECK(build_fingerprint(spec.generators) == build_fingerprint(spec.generators));
  CHECK(build_fingerprint(a5_gens()) == build_fingerprint(a5_gens()));
}

TEST_CASE("order equals product of fundamental orbit lengths") {
  for (const auto& gens : {a5_gens(), s4_gens(), l2_11_gens()}) {
    StabilizerChain chain = StabilizerChain::build(gens);
    Bigint product = 1;
    for (const auto& lvl : chain.levels()) product *= lvl.orbit.size();
    CHECK(product == chain.order());
    std::set<std::vector<int>> distinct;
    for (const Permutation& g : elements(chain)) distinct.insert(g.images());
    CHECK(Bigint(distinct.size()) == chain.order());
  }
}

TEST_CASE("extended_with matches a fresh build") {
  StabilizerChain a5 = StabilizerChain::build(a5_gens());
  Permutation extra = cyc("(0,1)", 5);
  StabilizerChain s5 = a5.extended_with(std::span(&extra, 1));
  CHECK(s5.order() == 120);
  // extending by a member changes nothing
  Permutation member = cyc("(0,1,2)", 5);
  CHECK(a5.extended_with(std::span(&member, 1)).order() == 60);
}

TEST_CASE("bounded build aborts once the target order is exceeded") {
  auto ok = StabilizerChain::try_build_bounded(a5_gens(), 60);
  REQUIRE(ok.has_value());
  CHECK(ok->order() == 60);
  CHECK_FALSE(StabilizerChain::try_build_bounded(a5_gens(), 59).has_value());
}

TEST_CASE("generator files round-trip byte-exactly") {
  GroupSpec spec = load_m12();
  std::string printed = print_generator_file(spec);
  GroupSpec reparsed = parse_generator_file(printed, "M12");
  CHECK(reparsed.degree == spec.degree);
  CHECK(reparsed.generators == spec.generators);
  CHECK(print_generator_file(reparsed) == printed);

  CHECK_THROWS_AS(parse_generator_file("degree x base 1\n()", "bad"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_generator_file("degree 4 base 1\n", "empty"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_generator_file("(1,2)\n", "headerless"), std::invalid_argument);

  GroupSpec zero_based = parse_generator_file("degree 3 base 0\n(0,1,2)\n", "c3");
  CHECK(zero_based.generators[0] == cyc("(0,1,2)", 3));

  // CRLF endings and comments between generators are tolerated
  GroupSpec crlf = parse_generator_file(
      "# header comment\r\ndegree 3 base 1\r\n(1,2)\r\n# middle\r\n(1,2,3)\r\n", "s3");
  CHECK(crlf.generators.size() == 2);
  CHECK(crlf.generators[1] == cyc("(0,1,2)", 3));
}

TEST_CASE("GroupSpec validation enforces the expected order") {
  GroupSpec bad;
  bad.name = "not-a5";
  bad.degree = 5;
  bad.generators = a5_gens();
  bad.expected_order = Bigint(61);
  CHECK_THROWS_AS(bad.validate(), std::runtime_error);
}
