#include <doctest.h>

#include "mv/errors.hpp"
#include "mv/instance.hpp"

using namespace mv;

namespace {
const char* kInst23 =
    "# two-valuation rational instance\n"
    "field Q\n"
    "val v2 = padic 2\n"
    "val v3 = padic 3\n"
    "ring R = intersect(v2, v3)\n"
    "ring R2 = intersect(v2)\n"
    "ring R3 = intersect(v3)\n"
    "module m1 = vec(0, 0) over R\n"
    "module m2 = vec(1, 0) over R\n"
    "lattice L = elements 4 cover 0 1 cover 0 2 cover 1 3 cover 2 3\n"
    "scope height 64 scale-height 64\n";

Report run(const char* inst, std::vector<std::string> cmd) {
  return run_command(parse_instance(inst), cmd);
}
}  // namespace

TEST_CASE("instance parsing") {
  Instance minimal =
      parse_instance("field Q\nval v2 = padic 2\nring R = intersect(v2)\n");
  CHECK(minimal.rings.size() == 1);
  CHECK(minimal.ring("R").n() == 1);

  Instance inst = parse_instance(kInst23);
  CHECK(inst.valuations.size() == 2);
  CHECK(inst.rings.size() == 3);
  CHECK(inst.module("m1").n() == 2);
  CHECK(inst.module_ring("m2") == "R");
  CHECK(inst.lattice("L").size() == 4);
  CHECK(inst.heightBound == 64);
  CHECK(inst.scaleHeight == 64);

  Instance f = parse_instance(
      "field F 5 t\nval vt = polyadic t\nval vd = degree\n"
      "ring S = intersect(vt, vd)\n");
  CHECK(f.field.kind == FieldDesc::Kind::RationalFunctions);
  CHECK(f.ring("S").n() == 2);
}

TEST_CASE("instance parse errors") {
  CHECK_THROWS_AS(parse_instance("field Q\nval v4 = padic 4\n"), ParseError);
  CHECK_THROWS_AS(
      parse_instance("field Q\nval v2 = padic 2\nring R = intersect(v2, v2)\n"),
      ParseError);
  CHECK_THROWS_AS(parse_instance("field Q\nring R = intersect(vx)\n"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_instance("field Q\nval a = padic 2\nval a = padic 3\n"),
      ParseError);
  CHECK_THROWS_AS(parse_instance("field Q\nfrobnicate\n"), ParseError);
  CHECK_THROWS_AS(
      parse_instance("field F 5 t\nval vr = polyadic t^2+1\n"), ParseError);
  CHECK_THROWS_AS(
      parse_instance("field Q\nval v2 = padic 2\nring R = intersect(v2)\n"
                     "module m = vec(1) over R\nmodule n = vec(1, 2) over R\n"),
      ParseError);
}

TEST_CASE("weight command matches the reference rendering") {
  Report rep = run(kInst23, {"weight", "R"});
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0].verdict == Verdict::Pass);
  CHECK(rep.records[0].details == "weight = 2, witness {3, 2}");
  CHECK(rep.exit_status() == 0);
}

TEST_CASE("coarsenings command matches the reference rendering") {
  Report rep = run(kInst23, {"coarsenings", "R"});
  CHECK(rep.records[0].details ==
        "2 V-topological coarsenings: padic 2, padic 3; bound 1..2 respected");
}

TEST_CASE("sentence check yields scope-relative verdicts") {
  Report refuted = run(kInst23, {"check", "Wn(1)", "R"});
  CHECK(refuted.records[0].verdict == Verdict::RefutedOnScope);
  CHECK(refuted.records[0].details.find("exhausted") != std::string::npos);
  CHECK(refuted.exit_status() == 0);  // refutation on scope is not a FAIL

  Report holds = run(kInst23, {"check", "Wn(2)", "R"});
  CHECK(holds.records[0].verdict == Verdict::Pass);

  Report haus = run(kInst23, {"check", "hausdorff", "R"});
  CHECK(haus.records[0].verdict == Verdict::Pass);
}

TEST_CASE("vncheck command") {
  Instance inst = parse_instance(kInst23);
  inst.heightBound = 40;
  Report pass = run_command(inst, {"vncheck", "R", "0", "1"});
  CHECK(pass.records[0].verdict == Verdict::Pass);
  Report fail = run_command(inst, {"vncheck", "R", "0"});
  CHECK(fail.records[0].verdict == Verdict::Fail);
  CHECK(fail.records[0].details == "counterexample 3/2");
  CHECK(fail.exit_status() == 1);
}

TEST_CASE("command errors") {
  CHECK_THROWS_AS(run(kInst23, {"frobnicate", "R"}), DomainError);
  CHECK_THROWS_AS(run(kInst23, {"weight"}), DomainError);
  CHECK_THROWS_AS(run(kInst23, {"weight", "noSuchRing"}), DomainError);
  CHECK_THROWS_AS(run(kInst23, {"coembed", "m1"}), DomainError);
}

TEST_CASE("suite aggregates and passes on the reference instance") {
  Report rep = run(kInst23, {"suite"});
  size_t pass = 0, fail = 0, skip = 0;
  for (const auto& r : rep.records) {
    if (r.verdict == Verdict::Pass) ++pass;
    if (r.verdict == Verdict::Fail) ++fail;
    if (r.verdict == Verdict::Skip) ++skip;
  }
  CHECK(pass >= 10);
  CHECK(fail == 0);
  CHECK(rep.exit_status() == 0);

  // single-valuation instances skip the multi-coarsening checks
  Report rep1 =
      run("field Q\nval v2 = padic 2\nring R = intersect(v2)\n", {"suite"});
  CHECK(rep1.exit_status() == 0);
  bool sawSkip = false, sawW1 = false;
  for (const auto& r : rep1.records) {
    if (r.verdict == Verdict::Skip) sawSkip = true;
    if (r.name == "Wn(1).R" && r.verdict == Verdict::Pass) sawW1 = true;
  }
  CHECK(sawSkip);
  CHECK(sawW1);

  CHECK_THROWS_AS(run("field Q\nval v2 = padic 2\n", {"suite"}), DomainError);
}

TEST_CASE("reports are byte-identical across runs") {
  Report a = run(kInst23, {"suite"});
  Report b = run(kInst23, {"suite"});
  CHECK(a.render(false) == b.render(false));
  CHECK(a.render(true) == b.render(true));
}

TEST_CASE("machine format is line-oriented CHECK records") {
  Report rep = run(kInst23, {"weight", "R"});
  std::string m = rep.render(true);
  CHECK(m == "CHECK weight.R PASS n=2 witness={3,_2}\n");
  std::string h = rep.render(false);
  CHECK(h.rfind("weight.R: PASS", 0) == 0);
}

TEST_CASE("remaining commands run against the reference instance") {
  CHECK(run(kInst23, {"ideals", "R"}).records[0].verdict == Verdict::Pass);
  CHECK(run(kInst23, {"jacobson", "R"}).records[0].details ==
        "witness 6, positive value at every place");
  CHECK(run(kInst23, {"selectors", "R", "0"}).records[0].verdict ==
        Verdict::Pass);
  CHECK(run(kInst23, {"localize", "R", "0", "3"}).records[0].data[1] ==
        std::pair<std::string, std::string>{"unit", "yes"});
  CHECK(run(kInst23, {"dilworth", "L"}).records[0].verdict == Verdict::Pass);
  CHECK(run(kInst23, {"coembed", "m1", "m2"}).records[0].verdict ==
        Verdict::Pass);
  CHECK(run(kInst23, {"classify", "R", "R2", "R3"}).records[0].data[0] ==
        std::pair<std::string, std::string>{"independent", "yes"});
  CHECK(run(kInst23, {"bump", "R", "R2"}).records[0].data[0] ==
        std::pair<std::string, std::string>{"branch", "drop"});
  CHECK(run(kInst23, {"bump", "R", "R"}).records[0].data[0] ==
        std::pair<std::string, std::string>{"branch", "coembeddable"});
  CHECK(run(kInst23, {"cuberank", "L"}).records[0].details ==
        "cube rank = 2, three characterizations agree");
  CHECK(run(kInst23, {"golden", "R"}).records[0].verdict == Verdict::Pass);
  CHECK(run(kInst23, {"guard", "m1"}).records[0].verdict == Verdict::Pass);
  CHECK(run(kInst23, {"pedestal", "R"}).records[0].verdict == Verdict::Pass);
  CHECK(run(kInst23, {"semisimple", "2", "2"}).records[0].verdict ==
        Verdict::Pass);
  CHECK(run(kInst23, {"wset", "R", "4", "9", "1"}).records[0].verdict ==
        Verdict::Pass);
}
