// Tests for the word language (parser, printer, evaluator), the generator
// file loader, and the hard-coded rows: table sanity, name lookup, the
// ambiguous-word adjudication machinery, and a full end-to-end evaluation
// of a small demonstration row on S7.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "beauville/words.hpp"
#include "test_util.hpp"

using namespace beauville;

namespace {

WordPtr random_word(testutil::Rng& rng, int depth) {
  static const char* const kAtoms[] = {"c", "d", "t1", "t2"};
  const std::uint64_t pick = depth <= 0 ? 0 : rng.below(5);
  switch (pick) {
    case 1:
      return WordExpr::product(random_word(rng, depth - 1),
                               random_word(rng, depth - 1));
    case 2:
      return WordExpr::power(random_word(rng, depth - 1),
                             std::int64_t(rng.below(81)) - 40);
    case 3:
      return WordExpr::commutator(random_word(rng, depth - 1),
                                  random_word(rng, depth - 1));
    case 4:
      return WordExpr::conjugation(random_word(rng, depth - 1),
                                   random_word(rng, depth - 1));
    default:
      return WordExpr::atom(kAtoms[rng.below(4)]);
  }
}

WordEnv random_env(testutil::Rng& rng, std::uint32_t degree) {
  WordEnv env;
  for (const char* name : {"c", "d", "t1", "t2"})
    env.emplace(name, Element(testutil::random_perm(rng, degree)));
  return env;
}

/// The demonstration row on S7 = <(1,2), (1,2,...,7)> used by the
/// end-to-end cases below.  t1 = (cd^2)^6 = (2,5)(3,7) is an even
/// involution, t2 = (cd)^3 = (1,5)(3,6)(4,7) an odd one; the two pairs
/// realise ((6,6,7),(12,12,5)) with disjoint cycle-type sets, and
/// conjugation by t1 inverts all four elements.
SporadicRow demo_row() {
  SporadicRow row;
  row.name = "S7-demo";
  row.t1 = "(cd^2)^6";
  row.t2 = "(cd)^3";
  row.x1 = "t1t2^(dcd)";
  row.x2 = "t1t2";
  row.u1 = "(cd^2)^2";
  row.u2 = "cd^2";
  row.j1 = 5;
  row.j2 = 5;
  row.expected_type = StructureType{{6, 6, 7}, {12, 12, 5}};
  row.group_order = 5040;
  return row;
}

Perm s7_c() { return Perm::parse("(1,2)", 7); }
Perm s7_d() { return Perm::parse("(1,2,3,4,5,6,7)", 7); }

TriState cert(const SporadicResult& res, const std::string& name) {
  for (const auto& c : res.certificates)
    if (c.first == name) return c.second;
  return TriState::undetermined("no certificate named \"" + name + "\"");
}

}  // namespace

// ---------------------------------------------------------------------------
// Parser shape.
// ---------------------------------------------------------------------------

TEST_CASE("parser: power of a parenthesized product") {
  const WordPtr w = parse_word("(cd)^6");
  REQUIRE(w->kind() == WordExpr::Kind::Power);
  CHECK(w->exponent() == 6);
  REQUIRE(w->base()->kind() == WordExpr::Kind::Product);
  CHECK(w->base()->lhs()->name() == "c");
  CHECK(w->base()->rhs()->name() == "d");
}

TEST_CASE("parser: ^ binds tighter than juxtaposition") {
  const WordPtr w = parse_word("cd^2");
  REQUIRE(w->kind() == WordExpr::Kind::Product);
  CHECK(w->lhs()->name() == "c");
  REQUIRE(w->rhs()->kind() == WordExpr::Kind::Power);
  CHECK(w->rhs()->base()->name() == "d");
  CHECK(w->rhs()->exponent() == 2);
}

TEST_CASE("parser: t1t2 is two atoms, and ^atom is conjugation") {
  const WordPtr w = parse_word("t1t2^d");
  REQUIRE(w->kind() == WordExpr::Kind::Product);
  CHECK(w->lhs()->name() == "t1");
  REQUIRE(w->rhs()->kind() == WordExpr::Kind::Conjugation);
  CHECK(w->rhs()->lhs()->name() == "t2");
  CHECK(w->rhs()->rhs()->name() == "d");
}

TEST_CASE("parser: commutator with compound operand") {
  const WordPtr w = parse_word("[c,(dc)^2d^2]^3");
  REQUIRE(w->kind() == WordExpr::Kind::Power);
  CHECK(w->exponent() == 3);
  const WordPtr& com = w->base();
  REQUIRE(com->kind() == WordExpr::Kind::Commutator);
  CHECK(com->lhs()->name() == "c");
  const WordPtr& rhs = com->rhs();
  REQUIRE(rhs->kind() == WordExpr::Kind::Product);
  REQUIRE(rhs->lhs()->kind() == WordExpr::Kind::Power);
  CHECK(rhs->lhs()->exponent() == 2);
  CHECK(rhs->lhs()->base()->kind() == WordExpr::Kind::Product);
  REQUIRE(rhs->rhs()->kind() == WordExpr::Kind::Power);
  CHECK(rhs->rhs()->base()->name() == "d");
}

TEST_CASE("parser: negative exponents and postfix chains") {
  const WordPtr neg = parse_word("c^-1");
  REQUIRE(neg->kind() == WordExpr::Kind::Power);
  CHECK(neg->exponent() == -1);

  // Postfix ^ chains associate left: c^2^d is (c^2)^d.
  const WordPtr chain = parse_word("c^2^d");
  REQUIRE(chain->kind() == WordExpr::Kind::Conjugation);
  REQUIRE(chain->lhs()->kind() == WordExpr::Kind::Power);
  CHECK(chain->lhs()->exponent() == 2);
  CHECK(chain->rhs()->name() == "d");
}

TEST_CASE("parser: whitespace between tokens is ignored") {
  CHECK(parse_word(" ( c d ) ^ 6 ")->equals(*parse_word("(cd)^6")));
  CHECK(parse_word("[ c , d ]")->equals(*parse_word("[c,d]")));
  CHECK(parse_word("t1 t2 ^ d")->equals(*parse_word("t1t2^d")));
}

TEST_CASE("parser: syntax errors carry a position") {
  for (const char* bad : {"", "c^", "(cd", "[cd]", "c)", "[c,d", "c^^2",
                          "2cd", "c^()", "()"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_word(bad), ParseError);
  }
  try {
    parse_word("(cd");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
  // Exponents are capped well below overflow.
  CHECK_THROWS_AS(parse_word("c^99999999999"), ParseError);
}

TEST_CASE("printer: canonical table forms survive a round trip verbatim") {
  for (const char* text :
       {"c", "d^2", "(cd)^6", "t1t2^d", "t1t2", "[c,(dc)^2d^2]^3",
        "(dc)^2d[c,(dc)^2d]^2", "cd^2cd[t1,cd^2cd]^5", "d[c,d]^3",
        "((cd)^2(cd^2)^2(cd)^2d)^2", "c^-1", "d^2[c,d^2]^10",
        "d^2(cd^2)^10"}) {
    CAPTURE(text);
    CHECK(parse_word(text)->str() == text);
  }
}

TEST_CASE("printer: random trees round-trip through their source form") {
  testutil::Rng rng(0x5eed5eedULL);
  for (int trial = 0; trial < 400; ++trial) {
    const WordPtr w = random_word(rng, 4);
    CAPTURE(w->str());
    CHECK(parse_word(w->str())->equals(*w));
  }
}

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

TEST_CASE("evaluator: pinned compositions") {
  WordEnv env;
  env.emplace("c", Element(Perm::parse("(1,2)", 3)));
  env.emplace("d", Element(Perm::parse("(1,2,3)", 3)));
  CHECK(evaluate_word("[c,d]", env).perm() == Perm::parse("(1,3,2)", 3));
  CHECK(evaluate_word("c^0", env).perm().is_identity());
  CHECK(evaluate_word("c^2", env).perm().is_identity());

  WordEnv env2;
  env2.emplace("c", Element(Perm::parse("(1,2)", 3)));
  env2.emplace("d", Element(Perm::parse("(2,3)", 3)));
  CHECK(evaluate_word("cd", env2).perm() == Perm::parse("(1,3,2)", 3));
}

TEST_CASE("evaluator: algebraic identities on random environments") {
  testutil::Rng rng(0xa1b2c3d4ULL);
  for (int trial = 0; trial < 50; ++trial) {
    const WordEnv env = random_env(rng, 7);
    CAPTURE(trial);
    CHECK(evaluate_word("[c,d]", env) == evaluate_word("c^-1d^-1cd", env));
    CHECK(evaluate_word("c^d", env) == evaluate_word("d^-1cd", env));
    CHECK(evaluate_word("(c^d)^t1", env) == evaluate_word("c^(dt1)", env));
    CHECK(evaluate_word("c^2c^3", env) == evaluate_word("c^5", env));
    CHECK(evaluate_word("(cd)^-1", env) == evaluate_word("d^-1c^-1", env));
    CHECK(evaluate_word("[c,d]^t2", env) ==
          evaluate_word("[c^t2,d^t2]", env));
  }
}

TEST_CASE("evaluator: unbound atoms are a domain error") {
  WordEnv env;
  env.emplace("c", Element(Perm::parse("(1,2)", 3)));
  CHECK_THROWS_AS(evaluate_word("cd", env), DomainError);
  CHECK_THROWS_AS(evaluate_word("x9", env), DomainError);
}

// ---------------------------------------------------------------------------
// Generator files.
// ---------------------------------------------------------------------------

TEST_CASE("load_generators: image lists fix the degree") {
  std::istringstream in("2 1 3\n1 3 2\n");
  const auto [a, b] = load_generators(in);
  CHECK(a == Perm::parse("(1,2)", 3));
  CHECK(b == Perm::parse("(2,3)", 3));
}

TEST_CASE("load_generators: cycle lines, comments, and the degree header") {
  std::istringstream plain("# a comment\n\n(1,2)\n(1,2,3,4,5,6,7)\n");
  const auto [c, d] = load_generators(plain);
  CHECK(c.degree() == 7);
  CHECK(d == Perm::parse("(1,2,3,4,5,6,7)", 7));

  // The header keeps trailing fixed points that cycles cannot express.
  std::istringstream padded("degree 8\n(1,2)\n(1,2,3,4,5,6,7)\n");
  const auto [c8, d8] = load_generators(padded);
  CHECK(c8.degree() == 8);
  CHECK(d8.degree() == 8);

  // Mixed forms: the image list sets the degree for the cycle line too.
  std::istringstream mixed("2 1 3 4 5\n(1,3)\n");
  const auto [m1, m2] = load_generators(mixed);
  CHECK(m1.degree() == 5);
  CHECK(m2 == Perm::parse("(1,3)", 5));

  // Two "()" lines: the group on one point.
  std::istringstream trivial("()\n()\n");
  const auto [e1, e2] = load_generators(trivial);
  CHECK(e1.degree() == 1);
  CHECK(e1.is_identity());
  CHECK(e2.is_identity());
}

TEST_CASE("load_generators: malformed files are rejected with a line") {
  const auto throws = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(load_generators(in), ParseError);
  };
  throws("(1,2)\n");                        // one permutation
  throws("(1,2)\n(1,3)\n(2,3)\n");          // three permutations
  throws("degree 3\n2 1\n1 2\n");           // image list shorter than header
  throws("degree 3\n(1,4)\n(1,2)\n");       // cycle point past the header
  throws("2 x 3\n1 2 3\n");                 // malformed image entry
  throws("2 1 3\n1 2\n");                   // image lists disagree
  throws("degree zero\n(1,2)\n(1,3)\n");    // malformed header
  throws("(1,2)\n(1,1)\n");                 // repeated point in a cycle
  throws("2 2 3\n1 2 3\n");                 // image list not a bijection
}

TEST_CASE("load_generators_file: missing path is an IO error") {
  CHECK_THROWS_AS(load_generators_file("/nonexistent/gens.txt"), IOError);
}

// ---------------------------------------------------------------------------
// The hard-coded rows.
// ---------------------------------------------------------------------------

TEST_CASE("rows: twelve rows with parseable words over c, d, t1, t2") {
  const auto& rows = sporadic_rows();
  REQUIRE(rows.size() == 12);

  const std::vector<std::string> names = {
      "M12:2", "M22:2", "J2:2",  "HS:2",   "J3:2", "McL:2",
      "He:2",  "Suz:2", "O'N:2", "Fi22:2", "HN:2", "Fi24"};
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].name == names[i]);

  const std::set<std::string> allowed = {"c", "d", "t1", "t2"};
  const std::function<void(const WordExpr&)> check_atoms =
      [&](const WordExpr& e) {
        switch (e.kind()) {
          case WordExpr::Kind::Atom:
            CHECK(allowed.count(e.name()) == 1);
            return;
          case WordExpr::Kind::Power:
            check_atoms(*e.base());
            return;
          default:
            check_atoms(*e.lhs());
            check_atoms(*e.rhs());
        }
      };

  for (const SporadicRow& row : rows) {
    CAPTURE(row.name);
    for (const std::string* word :
         {&row.t1, &row.t2, &row.x1, &row.x2, &row.u1, &row.u2}) {
      const WordPtr parsed = parse_word(*word);
      check_atoms(*parsed);
      CHECK(parse_word(parsed->str())->equals(*parsed));
    }
    // t1 and t2 are defined before the other words exist, so they may only
    // mention the generators themselves.
    for (const std::string* word : {&row.t1, &row.t2}) {
      const std::string& w = *word;
      CHECK(w.find('t') == std::string::npos);
    }
    // y_i = (x_i^{j_i})^{u_i} keeps the order of x_i, so j must be coprime
    // to it for the expected type to be reachable at all.
    CHECK(std::gcd<std::uint64_t>(row.j1, row.expected_type.first[0]) == 1);
    CHECK(std::gcd<std::uint64_t>(row.j2, row.expected_type.second[0]) == 1);
    // Conjugate elements share an order.
    CHECK(row.expected_type.first[0] == row.expected_type.first[1]);
    CHECK(row.expected_type.second[0] == row.expected_type.second[1]);
    // Everything lives in an even-order group, so no row type is coprime;
    // these structures hinge on the class-intersection condition instead.
    CHECK(!row.expected_type.coprime());
    CHECK(row.group_order > 0);
    CHECK((row.name == "HN:2") == !row.u1_alt.empty());
  }
}

TEST_CASE("rows: pinned expected types and orders") {
  const SporadicRow* m12 = find_sporadic_row("M12:2");
  REQUIRE(m12 != nullptr);
  CHECK(m12->expected_type == StructureType{{4, 4, 5}, {6, 6, 3}});
  CHECK(m12->group_order == 190080);

  const SporadicRow* j2 = find_sporadic_row("J2:2");
  REQUIRE(j2 != nullptr);
  CHECK(j2->expected_type == StructureType{{24, 24, 15}, {14, 14, 7}});
  CHECK(j2->group_order == 1209600);

  const SporadicRow* he = find_sporadic_row("He:2");
  REQUIRE(he != nullptr);
  CHECK(he->expected_type == StructureType{{16, 16, 7}, {30, 30, 5}});
  CHECK(he->group_order == 8060774400);

  const SporadicRow* fi24 = find_sporadic_row("Fi24");
  REQUIRE(fi24 != nullptr);
  CHECK(fi24->group_order == mpz_class("2510411418381323442585600"));
}

TEST_CASE("rows: name lookup ignores case, separators and apostrophes") {
  CHECK(find_sporadic_row("M12.2") == find_sporadic_row("M12:2"));
  CHECK(find_sporadic_row("m12:2") == find_sporadic_row("M12:2"));
  CHECK(find_sporadic_row("ON.2") == find_sporadic_row("O'N:2"));
  CHECK(find_sporadic_row("o'n:2") == find_sporadic_row("O'N:2"));
  CHECK(find_sporadic_row("fi24") == find_sporadic_row("Fi24"));
  CHECK(find_sporadic_row("FI22.2") == find_sporadic_row("Fi22:2"));
  CHECK(find_sporadic_row("M11") == nullptr);
  CHECK(find_sporadic_row("") == nullptr);
}

TEST_CASE("rows: the ambiguous u1 carries both readings") {
  const SporadicRow* hn = find_sporadic_row("HN:2");
  REQUIRE(hn != nullptr);
  CHECK(hn->u1 == "d^2[c,d^2]^10");
  CHECK(hn->u1_alt == "d^2(cd^2)^10");
  CHECK(!parse_word(hn->u1)->equals(*parse_word(hn->u1_alt)));
}

// ---------------------------------------------------------------------------
// Row evaluation end to end.
// ---------------------------------------------------------------------------

TEST_CASE("evaluation: the S7 demonstration row verifies cleanly") {
  const SporadicResult res = evaluate_sporadic_row(demo_row(), s7_c(), s7_d());

  CHECK(res.clean());
  CHECK(res.discrepancies.empty());
  CHECK(res.structure_report.overall.is_pass());
  CHECK(res.structure_report.generation1.is_pass());
  CHECK(res.structure_report.generation2.is_pass());
  CHECK(res.structure_report.dagger.is_pass());
  CHECK(res.reality_report.overall.is_pass());
  CHECK(res.structure.type() == StructureType{{6, 6, 7}, {12, 12, 5}});
  CHECK(!res.hn_u1_used.has_value());

  for (const char* name :
       {"group order matches row metadata", "t1 is an involution",
        "t2 is an involution", "u1 centralises t1", "u2 centralises t1",
        "computed type equals expected type"}) {
    CAPTURE(name);
    CHECK(cert(res, name).is_pass());
  }

  // The evaluated pieces themselves.
  const Perm t1 = Perm::parse("(2,5)(3,7)", 7);
  const Perm t2 = Perm::parse("(1,5)(3,6)(4,7)", 7);
  REQUIRE(res.witness.tau.has_value());
  CHECK(res.witness.tau->perm() == t1);
  WordEnv env;
  env.emplace("c", Element(s7_c()));
  env.emplace("d", Element(s7_d()));
  CHECK(evaluate_word("(cd^2)^6", env).perm() == t1);
  CHECK(evaluate_word("(cd)^3", env).perm() == t2);
  CHECK(res.structure.x1.order() == 6);
  CHECK(res.structure.x2.order() == 12);
  CHECK(res.structure.x2.perm() == t1 * t2);
}

TEST_CASE("evaluation: a wrong expected type is reported, not hidden") {
  SporadicRow row = demo_row();
  row.expected_type = StructureType{{6, 6, 7}, {12, 12, 4}};
  const SporadicResult res = evaluate_sporadic_row(row, s7_c(), s7_d());
  CHECK(!res.clean());
  CHECK(cert(res, "computed type equals expected type").is_fail());
  // The structure itself is still fine; only the metadata comparison fails.
  CHECK(res.structure_report.overall.is_pass());
}

TEST_CASE("evaluation: non-centralising u is a domain error") {
  SporadicRow row = demo_row();
  row.u1 = "d";
  CHECK_THROWS_AS(evaluate_sporadic_row(row, s7_c(), s7_d()), DomainError);
}

TEST_CASE("evaluation: mismatched generator degrees are a domain error") {
  CHECK_THROWS_AS(
      evaluate_sporadic_row(demo_row(), s7_c(), Perm::parse("(1,2,3)", 3)),
      DomainError);
}

TEST_CASE("evaluation: adjudication picks the reading that centralises") {
  SporadicRow row = demo_row();
  row.u1 = "d";              // commutator-style reading: not centralising
  row.u1_alt = "(cd^2)^2";   // grouping reading: the good one
  const SporadicResult res = evaluate_sporadic_row(row, s7_c(), s7_d());
  REQUIRE(res.hn_u1_used.has_value());
  CHECK(*res.hn_u1_used == HnU1Reading::Grouping);
  CHECK(res.row.u1 == "(cd^2)^2");
  CHECK(res.clean());
}

TEST_CASE("evaluation: adjudication prefers the reading matching the type") {
  SporadicRow row = demo_row();
  // t1 centralises itself, so this reading passes the centraliser test but
  // yields (6,6,3) for the first triple instead of (6,6,7).
  row.u1 = "t1";
  row.u1_alt = "(cd^2)^2";
  const SporadicResult res = evaluate_sporadic_row(row, s7_c(), s7_d());
  REQUIRE(res.hn_u1_used.has_value());
  CHECK(*res.hn_u1_used == HnU1Reading::Grouping);
  CHECK(res.clean());

  // Forcing the first reading keeps it even though the type then differs.
  SporadicOptions force;
  force.hn_u1 = HnU1Reading::Commutator;
  const SporadicResult forced =
      evaluate_sporadic_row(row, s7_c(), s7_d(), force);
  REQUIRE(forced.hn_u1_used.has_value());
  CHECK(*forced.hn_u1_used == HnU1Reading::Commutator);
  CHECK(!forced.clean());
  CHECK(cert(forced, "computed type equals expected type").is_fail());
}

TEST_CASE("evaluation: forcing a reading on an unambiguous row throws") {
  SporadicOptions force;
  force.hn_u1 = HnU1Reading::Grouping;
  CHECK_THROWS_AS(evaluate_sporadic_row(demo_row(), s7_c(), s7_d(), force),
                  DomainError);
}

TEST_CASE("evaluation: forcing a non-centralising reading throws") {
  SporadicRow row = demo_row();
  row.u1 = "d";
  row.u1_alt = "(cd^2)^2";
  SporadicOptions force;
  force.hn_u1 = HnU1Reading::Commutator;
  CHECK_THROWS_AS(evaluate_sporadic_row(row, s7_c(), s7_d(), force),
                  DomainError);
}

TEST_CASE("sporadic_structure: unknown names throw") {
  CHECK_THROWS_AS(sporadic_structure("M11", s7_c(), s7_d()), DomainError);
}

// ---------------------------------------------------------------------------
// Real rows against user-supplied generator data (skipped when absent).
// ---------------------------------------------------------------------------

TEST_CASE("rows: user-supplied standard generators (skips without data)") {
  const char* dir = std::getenv("BEAUVILLE_ATLAS_DIR");
  const std::string base = dir != nullptr ? dir : "data/atlas";
  bool any = false;
  for (const char* name : {"M12.2", "M22.2", "J2.2", "HS.2"}) {
    const std::string path = base + "/" + name + ".txt";
    std::ifstream probe(path);
    if (!probe) continue;
    any = true;
    probe.close();
    const auto [c, d] = load_generators_file(path);
    const SporadicResult res = sporadic_structure(name, c, d);
    CAPTURE(name);
    CHECK(res.clean());
    CHECK(res.structure.type() == res.expected_type);
    CHECK(res.reality_report.overall.is_pass());
  }
  if (!any)
    MESSAGE(
        "no generator files under ", base,
        " (set BEAUVILLE_ATLAS_DIR); row evaluation was exercised on the "
        "S7 demonstration row only");
}
