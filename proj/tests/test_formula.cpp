#include <doctest.h>

#include "helpers.hpp"
#include "stit/formula.hpp"
#include "stit/model.hpp"

using namespace stit;

TEST_CASE("parser handles the surface syntax") {
  CHECK(parse_formula("p", 2) == Formula::atom("p"));
  CHECK(parse_formula("~p", 2) == Formula::neg_atom("p"));
  CHECK(parse_formula("[]p -> [0]p", 2) ==
        Formula::implies(Formula::box(Formula::atom("p")),
                         Formula::stit(0, Formula::atom("p"))));
  // two-agent independence instance
  Formula ioa = parse_formula("(<>[0]p & <>[1]q) -> <>([0]p & [1]q)", 2);
  CHECK(ioa.conn() == Conn::Implies);
  CHECK(ioa.left() == Formula::land(Formula::dia(Formula::stit(0, Formula::atom("p"))),
                                    Formula::dia(Formula::stit(1, Formula::atom("q")))));
  // precedence: -> binds loosest, & tighter than |
  CHECK(parse_formula("p | q & r -> s", 2) ==
        Formula::implies(Formula::lor(Formula::atom("p"),
                                      Formula::land(Formula::atom("q"), Formula::atom("r"))),
                         Formula::atom("s")));
  CHECK(parse_formula("G F p", 2) ==
        Formula::always(Formula::eventually(Formula::atom("p"))));
  CHECK(parse_formula("[Ag]p & <Ag>q", 2) ==
        Formula::land(Formula::ag_stit(Formula::atom("p")),
                      Formula::ag_costit(Formula::atom("q"))));
  CHECK(parse_formula("[x:{0,1}]p", 2) == Formula::xstit({0, 1}, Formula::atom("p")));
  CHECK(parse_formula("<x:{1}>~q", 2) == Formula::xcostit({1}, Formula::neg_atom("q")));
}

TEST_CASE("parser reports positions and agent-range errors") {
  CHECK_THROWS_AS(parse_formula("p &", 2), ParseError);
  CHECK_THROWS_AS(parse_formula("(p | q", 2), ParseError);
  CHECK_THROWS_AS(parse_formula("[3]p", 2), ParseError);
  CHECK_THROWS_AS(parse_formula("<x:{0,5}>p", 2), ParseError);
  try {
    parse_formula("p & & q", 2);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.pos == 4);
  }
}

TEST_CASE("round trip over random formulas") {
  std::mt19937_64 rng(20240601);
  testing::FormulaGenOptions opt;
  opt.max_size = 25;
  for (int i = 0; i < 1000; ++i) {
    Formula f = testing::random_formula(rng, opt);
    CAPTURE(render(f));
    CHECK(parse_formula(render(f), opt.agents) == f);
  }
}

TEST_CASE("nnf examples") {
  CHECK(to_nnf(Formula::lnot(Formula::box(Formula::atom("p")))) ==
        Formula::dia(Formula::neg_atom("p")));
  CHECK(to_nnf(Formula::lnot(Formula::implies(Formula::atom("p"), Formula::atom("q")))) ==
        Formula::land(Formula::atom("p"), Formula::neg_atom("q")));
  CHECK(to_nnf(Formula::lnot(Formula::xstit({0}, Formula::atom("p")))) ==
        Formula::xcostit({0}, Formula::neg_atom("p")));
  std::mt19937_64 rng(7);
  testing::FormulaGenOptions opt;
  for (int i = 0; i < 200; ++i) {
    Formula f = testing::random_formula(rng, opt);
    CHECK(is_nnf(to_nnf(f)));
  }
}

TEST_CASE("nnf preserves truth on random layered models") {
  std::mt19937_64 rng(99);
  testing::FormulaGenOptions opt;
  opt.max_size = 8;
  for (int round = 0; round < 60; ++round) {
    LayeredModel m = testing::random_layered_model(rng, 2, 12, 2);
    Formula f = testing::random_formula(rng, opt);
    for (int w = 0; w < m.world_count(); ++w)
      for (int j = 0; j <= m.T; ++j) {
        CAPTURE(render(f));
        CHECK(satisfies(m, w, j, f) == satisfies(m, w, j, to_nnf(f)));
      }
  }
}

TEST_CASE("complement is semantic negation and an involution") {
  std::mt19937_64 rng(123);
  testing::FormulaGenOptions opt;
  opt.max_size = 8;
  opt.sugar = false;
  int checked = 0;
  for (int round = 0; round < 150; ++round) {
    LayeredModel m = testing::random_layered_model(rng, 2, 12, 2);
    Formula f = testing::random_formula(rng, opt);
    REQUIRE(is_nnf(f));
    CHECK(complement(complement(f)) == f);
    for (int w = 0; w < m.world_count(); ++w) {
      CHECK(satisfies(m, w, 0, complement(f)) == !satisfies(m, w, 0, f));
      ++checked;
    }
  }
  CHECK(checked >= 500);
}

TEST_CASE("closure examples") {
  ClosureSet c1 = closure_of({Formula::atom("p")});
  CHECK(c1.size() == 2);

  ClosureSet c2 = closure_of({Formula::dia(Formula::atom("p"))});
  CHECK(c2.size() == 4);
  CHECK(c2.contains(Formula::box(Formula::neg_atom("p"))));

  Formula axiom = to_nnf(parse_formula("[]p -> [0]p", 1));
  ClosureSet c3 = closure_of({axiom});
  CHECK(c3.size() == 8);
  CHECK(c3.contains(Formula::box(Formula::atom("p"))));
  CHECK(c3.contains(Formula::costit(0, Formula::neg_atom("p"))));
}

TEST_CASE("closure is monotone and idempotent") {
  std::mt19937_64 rng(5150);
  testing::FormulaGenOptions opt;
  opt.max_size = 10;
  opt.sugar = false;
  for (int i = 0; i < 50; ++i) {
    Formula f = testing::random_formula(rng, opt);
    ClosureSet once = closure_of({f});
    std::vector<Formula> all(once.formulas().begin(), once.formulas().end());
    ClosureSet twice = closure_of(all);
    CHECK(once.formulas() == twice.formulas());
    for (const Formula& g : once.formulas()) CHECK(once.contains(complement(g)));
  }
}
