#include "mv/instance.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "mv/errors.hpp"
#include "mv/finmodule.hpp"
#include "mv/golden.hpp"
#include "mv/poset.hpp"

namespace mv {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

int64_t parse_nat(const std::string& tok, size_t lineNo) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected a natural number, got '" + tok + "'", lineNo);
  return std::stoll(tok);
}

int64_t parse_int_tok(const std::string& tok, size_t lineNo) {
  std::string body = tok;
  if (!body.empty() && body[0] == '-') body = body.substr(1);
  if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected an integer, got '" + tok + "'", lineNo);
  return std::stoll(tok);
}

// comma-separated items between the first '(' and the matching last ')'
std::vector<std::string> parse_paren_list(const std::string& text,
                                          size_t lineNo) {
  auto open = text.find('(');
  auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ParseError("expected a parenthesized list", lineNo);
  std::vector<std::string> out;
  std::string cur;
  for (size_t i = open + 1; i < close; ++i) {
    if (text[i] == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      cur += text[i];
    }
  }
  out.push_back(cur);
  for (const auto& item : out)
    if (item.empty()) throw ParseError("empty list item", lineNo);
  return out;
}

}  // namespace

const Valuation& Instance::valuation(const std::string& name) const {
  for (const auto& [k, v] : valuations)
    if (k == name) return v;
  throw DomainError("unknown valuation '" + name + "'");
}

const MultiValRing& Instance::ring(const std::string& name) const {
  for (const auto& [k, v] : rings)
    if (k == name) return v;
  throw DomainError("unknown ring '" + name + "'");
}

const ModuleVec& Instance::module(const std::string& name) const {
  for (const auto& [k, v] : modules)
    if (k == name) return v.first;
  throw DomainError("unknown module '" + name + "'");
}

const std::string& Instance::module_ring(const std::string& name) const {
  for (const auto& [k, v] : modules)
    if (k == name) return v.second;
  throw DomainError("unknown module '" + name + "'");
}

const FinLattice& Instance::lattice(const std::string& name) const {
  for (const auto& [k, v] : lattices)
    if (k == name) return v;
  throw DomainError("unknown lattice '" + name + "'");
}

Instance parse_instance(const std::string& text) {
  Instance inst;
  bool sawField = false;
  std::set<std::string> names;
  auto claim = [&](const std::string& name, size_t lineNo) {
    if (!names.insert(name).second)
      throw ParseError("duplicate name '" + name + "'", lineNo);
  };

  std::istringstream is(text);
  std::string line;
  size_t lineNo = 0;
  while (std::getline(is, line)) {
    ++lineNo;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    try {
      if (toks[0] == "field") {
        if (sawField) throw ParseError("field declared twice", lineNo);
        if (!inst.valuations.empty())
          throw ParseError("field must precede valuations", lineNo);
        sawField = true;
        if (toks.size() == 2 && toks[1] == "Q") {
          inst.field = FieldDesc::rationals();
        } else if (toks.size() == 4 && toks[1] == "F") {
          inst.field = FieldDesc::rational_functions(
              parse_nat(toks[2], lineNo), toks[3]);
        } else {
          throw ParseError("field is 'field Q' or 'field F <p> <var>'",
                           lineNo);
        }
      } else if (toks[0] == "val") {
        if (toks.size() < 4 || toks[2] != "=")
          throw ParseError("val <name> = <spec>", lineNo);
        claim(toks[1], lineNo);
        Valuation v;
        if (toks[3] == "padic" && toks.size() == 5) {
          v = Valuation::padic(Int(toks[4]));
          if (inst.field.kind != FieldDesc::Kind::Rationals)
            throw ParseError("padic valuations live on Q", lineNo);
        } else if (toks[3] == "degree" && toks.size() == 4) {
          v = Valuation::degree(inst.field);
        } else if (toks[3] == "polyadic") {
          std::string expr;
          for (size_t i = 4; i < toks.size(); ++i) expr += toks[i];
          if (expr.empty()) throw ParseError("polyadic needs a polynomial",
                                             lineNo);
          FieldElem f = parse_element(expr, inst.field);
          if (!f.pden().is_one())
            throw ParseError("polyadic needs a polynomial, not a fraction",
                             lineNo);
          v = Valuation::polyadic(f.pnum(), inst.field.variable);
        } else {
          throw ParseError("valuation is padic <p>, polyadic <f>, or degree",
                           lineNo);
        }
        inst.valuations.emplace_back(toks[1], v);
      } else if (toks[0] == "ring") {
        if (toks.size() < 4 || toks[2] != "=" ||
            toks[3].rfind("intersect", 0) != 0)
          throw ParseError("ring <name> = intersect(<vals>)", lineNo);
        claim(toks[1], lineNo);
        std::string rest;
        for (size_t i = 3; i < toks.size(); ++i) rest += toks[i];
        std::vector<Valuation> vs;
        for (const auto& vn : parse_paren_list(rest, lineNo))
          vs.push_back(inst.valuation(vn));
        inst.rings.emplace_back(toks[1], MultiValRing(vs));
      } else if (toks[0] == "module") {
        if (toks.size() < 6 || toks[2] != "=" ||
            toks[toks.size() - 2] != "over")
          throw ParseError("module <name> = vec(<ints>) over <ring>", lineNo);
        claim(toks[1], lineNo);
        std::string rest;
        for (size_t i = 3; i + 2 < toks.size(); ++i) rest += toks[i];
        std::vector<int64_t> g;
        for (const auto& item : parse_paren_list(rest, lineNo))
          g.push_back(parse_int_tok(item, lineNo));
        const auto& over = toks.back();
        if (g.size() != inst.ring(over).n())
          throw ParseError("module arity must match the ring", lineNo);
        inst.modules.emplace_back(
            toks[1], std::make_pair(ModuleVec::of(g), over));
      } else if (toks[0] == "lattice") {
        if (toks.size() < 5 || toks[2] != "=" || toks[3] != "elements")
          throw ParseError("lattice <name> = elements <n> (cover a b)*",
                           lineNo);
        claim(toks[1], lineNo);
        size_t n = static_cast<size_t>(parse_nat(toks[4], lineNo));
        std::vector<std::pair<size_t, size_t>> covers;
        size_t i = 5;
        while (i < toks.size()) {
          if (toks[i] != "cover" || i + 2 >= toks.size())
            throw ParseError("expected 'cover <a> <b>'", lineNo);
          covers.emplace_back(
              static_cast<size_t>(parse_nat(toks[i + 1], lineNo)),
              static_cast<size_t>(parse_nat(toks[i + 2], lineNo)));
          i += 3;
        }
        inst.lattices.emplace_back(toks[1], FinLattice(n, covers));
      } else if (toks[0] == "scope") {
        if (toks.size() != 5 || toks[1] != "height" || toks[3] != "scale-height")
          throw ParseError("scope height <n> scale-height <n>", lineNo);
        inst.heightBound = parse_nat(toks[2], lineNo);
        inst.scaleHeight = parse_nat(toks[4], lineNo);
      } else {
        throw ParseError("unknown declaration '" + toks[0] + "'", lineNo);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      // construction-time validation (primality, irreducibility, lattice
      // axioms, dangling references) surfaces as a parse error with a line
      throw ParseError(e.what(), lineNo);
    }
  }
  return inst;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skip: return "SKIP";
    case Verdict::RefutedOnScope: return "REFUTED-ON-SCOPE";
  }
  return "?";
}

bool Report::hasFail() const {
  for (const auto& r : records)
    if (r.verdict == Verdict::Fail) return true;
  return false;
}

std::string Report::render(bool machine) const {
  std::ostringstream os;
  if (machine) {
    for (const auto& r : records) {
      os << "CHECK " << r.name << " " << verdict_name(r.verdict);
      for (const auto& [k, v] : r.data) {
        std::string flat = v;
        std::replace(flat.begin(), flat.end(), ' ', '_');
        os << " " << k << "=" << flat;
      }
      os << "\n";
    }
    return os.str();
  }
  for (const auto& r : records) {
    os << r.name << ": " << verdict_name(r.verdict);
    if (!r.details.empty()) os << " - " << r.details;
    os << "\n";
  }
  if (records.size() > 1) {
    size_t pass = 0, fail = 0, skip = 0, refuted = 0;
    for (const auto& r : records) {
      if (r.verdict == Verdict::Pass) ++pass;
      if (r.verdict == Verdict::Fail) ++fail;
      if (r.verdict == Verdict::Skip) ++skip;
      if (r.verdict == Verdict::RefutedOnScope) ++refuted;
    }
    os << records.size() << " checks: " << pass << " passed, " << fail
       << " failed, " << skip << " skipped, " << refuted
       << " refuted on scope\n";
  }
  return os.str();
}

Structure scoped_structure(const Instance& inst, const MultiValRing& R) {
  auto clamp = [](int64_t want, int64_t cap) {
    return std::max<int64_t>(1, std::min(want, cap));
  };
  const int64_t h = inst.heightBound, s = inst.scaleHeight;
  const size_t n = R.n();
  if (R.field().kind == FieldDesc::Kind::Rationals) {
    if (n <= 2) return Structure::standard(R, clamp(h, 64), clamp(s, 64), 13);
    if (n == 3) return Structure::standard(R, clamp(h, 4), clamp(s, 8), 3);
    return Structure::standard(R, clamp(h, 2), clamp(s, 4), 2);
  }
  if (n == 1) return Structure::standard(R, clamp(h, 6), clamp(s, 6), 6);
  if (n == 2) return Structure::standard(R, clamp(h, 2), clamp(s, 4), 4);
  return Structure::standard(R, 1, 2, 2);
}

namespace {

std::string join_elems(const std::vector<FieldElem>& xs) {
  std::string out = "{";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += xs[i].render();
  }
  return out + "}";
}

std::string join_vals(const std::vector<Valuation>& vs) {
  std::string out;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ", ";
    out += vs[i].render();
  }
  return out;
}

// leftmost decisive path through a witness tree, for one-line reports
std::string witness_path(const WitnessNode& w, int depth = 0) {
  std::string out = w.label;
  if (!w.kids.empty() && depth < 8)
    out += "; " + witness_path(w.kids.front(), depth + 1);
  return out;
}

CheckRecord weight_record(const std::string& name, const MultiValRing& R) {
  CheckRecord rec;
  rec.name = name;
  WeightResult w = weight(R);
  bool certified = true;
  for (size_t i = 0; i < w.lowerWitness.size() && certified; ++i) {
    std::vector<FieldElem> rest;
    for (size_t j = 0; j < w.lowerWitness.size(); ++j)
      if (j != i) rest.push_back(w.lowerWitness[j]);
    if (rest.empty()) continue;  // weight 1 needs no spanning refutation
    if (member_sum(R, w.lowerWitness[i], rest).positive) certified = false;
  }
  rec.verdict = certified ? Verdict::Pass : Verdict::Fail;
  rec.details = "weight = " + std::to_string(w.n) + ", witness " +
                join_elems(w.lowerWitness);
  rec.data = {{"n", std::to_string(w.n)},
              {"witness", join_elems(w.lowerWitness)}};
  return rec;
}

CheckRecord coarsenings_record(const std::string& name,
                               const MultiValRing& R) {
  CheckRecord rec;
  rec.name = name;
  auto cs = coarsening_report(R);
  bool ok = !cs.empty() && cs.size() <= R.n();
  rec.verdict = ok ? Verdict::Pass : Verdict::Fail;
  rec.details = std::to_string(cs.size()) + " V-topological coarsenings: " +
                join_vals(cs) + "; bound 1.." + std::to_string(R.n()) +
                (ok ? " respected" : " violated");
  rec.data = {{"count", std::to_string(cs.size())},
              {"bound", std::to_string(R.n())}};
  return rec;
}

CheckRecord jacobson_record(const std::string& name, const MultiValRing& R) {
  CheckRecord rec;
  rec.name = name;
  FieldElem j = jacobson_witness(R);
  bool ok = true;
  for (const auto& v : R.valuations())
    if (!v.val(j).geq(1)) ok = false;
  rec.verdict = ok ? Verdict::Pass : Verdict::Fail;
  rec.details = "witness " + j.render() + ", positive value at every place";
  rec.data = {{"witness", j.render()}};
  return rec;
}

CheckRecord selectors_record(const std::string& name, const MultiValRing& R,
                             size_t pivot) {
  CheckRecord rec;
  rec.name = name;
  auto sels = crt_selectors(R, pivot);
  bool ok = true;
  for (const auto& sel : sels) {
    if (!R.at(pivot).val(sel.a).geq(1)) ok = false;
    for (size_t j = 0; j < R.n(); ++j) {
      if (j == pivot) continue;
      bool inS = std::find(sel.subset.begin(), sel.subset.end(), j) !=
                 sel.subset.end();
      if (R.at(j).val(sel.a).geq(1) != inS) ok = false;
    }
  }
  rec.verdict = ok ? Verdict::Pass : Verdict::Fail;
  rec.details = std::to_string(sels.size()) + " selectors at pivot " +
                std::to_string(pivot) + ", value signs verified";
  rec.data = {{"pivot", std::to_string(pivot)},
              {"count", std::to_string(sels.size())}};
  return rec;
}

// localization_member internally cross-checks the selector criterion against
// the direct valuation test, so running it over a sample is the agreement
// check; it throws on any mismatch
CheckRecord localize_sample_record(const std::string& name,
                                   const MultiValRing& R, size_t pivot,
                                   int64_t heightBound) {
  CheckRecord rec;
  rec.name = name;
  std::vector<FieldElem> gens;
  for (const auto& v : R.valuations()) gens.push_back(v.uniformizer());
  std::vector<FieldElem> sample =
      R.field().kind == FieldDesc::Kind::Rationals
          ? all_rationals_up_to_height(heightBound)
          : smooth_elements(R.field(), Int(heightBound), gens);
  size_t tested = 0, members = 0;
  for (const auto& x : sample) {
    if (!R.contains(x)) continue;
    ++tested;
    if (localization_member(R, pivot, x)) ++members;
  }
  rec.verdict = Verdict::Pass;
  rec.details = "selector and valuation criteria agree on " +
                std::to_string(tested) + " scope elements (" +
                std::to_string(members) + " units at pivot " +
                std::to_string(pivot) + ")";
  rec.data = {{"pivot", std::to_string(pivot)},
              {"tested", std::to_string(tested)},
              {"units", std::to_string(members)}};
  return rec;
}

// polynomial smooth elements grow much faster per height unit than smooth
// rationals; a degree-4 scale fragment keeps the axiom checks quick
GoldenLatticeView golden_view(const MultiValRing& R) {
  bool rat = R.field().kind == FieldDesc::Kind::Rationals;
  return GoldenLatticeView{R, 4, rat ? 16 : 4};
}

CheckRecord golden_record(const std::string& name, const MultiValRing& R) {
  CheckRecord rec;
  rec.name = name;
  GoldenLatticeView V = golden_view(R);
  auto rep = golden_axioms(V);
  rec.verdict = rep.all() ? Verdict::Pass : Verdict::Fail;
  std::string bad;
  if (!rep.latticeAxiom) bad += " lattice";
  if (!rep.scalingAxiom) bad += " scaling";
  if (!rep.rankAxiom) bad += " rank";
  if (!rep.intersectionAxiom) bad += " intersection";
  if (!rep.nondegeneracyAxiom) bad += " nondegeneracy";
  rec.details = rep.all()
                    ? "all five axioms hold, fragment rank " +
                          std::to_string(rep.fragmentRank)
                    : "failing axioms:" + bad;
  rec.data = {{"rank", std::to_string(rep.fragmentRank)},
              {"all", rep.all() ? "yes" : "no"}};
  return rec;
}

CheckRecord dilworth_record(const std::string& name, const FinLattice& lat) {
  CheckRecord rec;
  rec.name = name;
  std::vector<std::pair<size_t, size_t>> le;
  for (int a = 0; a < lat.size(); ++a)
    for (int b = 0; b < lat.size(); ++b)
      if (lat.leq(a, b))
        le.emplace_back(static_cast<size_t>(a), static_cast<size_t>(b));
  FinPoset p(static_cast<size_t>(lat.size()), le);
  auto chains = dilworth_chains(p);
  auto anti = max_antichain_bruteforce(p);
  rec.verdict = chains.size() == anti.size() ? Verdict::Pass : Verdict::Fail;
  rec.details = std::to_string(chains.size()) +
                " chains cover the order; max antichain " +
                std::to_string(anti.size());
  rec.data = {{"chains", std::to_string(chains.size())},
              {"antichain", std::to_string(anti.size())}};
  return rec;
}

CheckRecord cuberank_record(const std::string& name, const FinLattice& lat) {
  CheckRecord rec;
  rec.name = name;
  int r = cube_rank(lat, CubeMethod::All);  // throws if methods disagree
  rec.verdict = Verdict::Pass;
  rec.details = "cube rank = " + std::to_string(r) +
                ", three characterizations agree";
  rec.data = {{"rank", std::to_string(r)}};
  return rec;
}

// "Wn(2)", "Vn(0,1)" or a bare builtin name
Sentence parse_check_target(const std::string& spec, const FieldDesc& field) {
  auto open = spec.find('(');
  if (open == std::string::npos) return builtin_sentence(spec, field);
  if (spec.back() != ')')
    throw DomainError("malformed sentence spec '" + spec + "'");
  std::string head = spec.substr(0, open);
  std::string args = spec.substr(open + 1, spec.size() - open - 2);
  if (head == "Wn")
    return builtin_sentence("Wn", field, static_cast<int>(std::stoll(args)));
  if (head == "Vn") {
    std::vector<FieldElem> qs;
    std::string cur;
    for (char c : args) {
      if (c == ',') {
        qs.push_back(parse_element(cur, field));
        cur.clear();
      } else {
        cur += c;
      }
    }
    qs.push_back(parse_element(cur, field));
    return builtin_sentence("Vn", field, 0, qs);
  }
  throw DomainError("unknown sentence spec '" + spec + "'");
}

CheckRecord sentence_record(const std::string& name, const Sentence& s,
                            const Structure& st, const Structure* st2) {
  CheckRecord rec;
  rec.name = name;
  EvalResult r = evaluate(s, st, st2);
  replay_witness(s, st, r, st2);
  rec.verdict = r.holds ? Verdict::Pass : Verdict::RefutedOnScope;
  rec.details = r.holds ? "holds on scope"
                        : "refuted on scope: " + witness_path(r.witness);
  rec.data = {{"holds", r.holds ? "yes" : "no"}};
  if (!r.holds) rec.data.emplace_back("witness", witness_path(r.witness));
  return rec;
}

CheckRecord bump_record(const std::string& name, const MultiValRing& R,
                        const MultiValRing& Rp) {
  CheckRecord rec;
  rec.name = name;
  BumpReport rep = verify_bump(R, Rp);
  if (rep.coembeddableBranch) {
    rec.verdict = Verdict::Pass;
    rec.details = "co-embeddable branch, witnesses (1, 1)";
    rec.data = {{"branch", "coembeddable"}};
  } else {
    bool ok = rep.weightOfRp + 1 <= R.n();
    rec.verdict = ok ? Verdict::Pass : Verdict::Fail;
    rec.details = "weight-drop branch, wt = " +
                  std::to_string(rep.weightOfRp) + " <= " +
                  std::to_string(R.n() - 1);
    rec.data = {{"branch", "drop"},
                {"weight", std::to_string(rep.weightOfRp)}};
  }
  return rec;
}

CheckRecord classify_record(const std::string& name, const MultiValRing& R,
                            const MultiValRing& R1, const MultiValRing& R2) {
  CheckRecord rec;
  rec.name = name;
  ClassifyResult c = classify_pair(R, R1, R2);
  rec.verdict = Verdict::Pass;
  if (c.independent) {
    rec.details = "independent topologies, " +
                  std::to_string(c.witnesses.size()) +
                  " approximation witnesses re-verified";
    rec.data = {{"independent", "yes"},
                {"witnesses", std::to_string(c.witnesses.size())}};
  } else {
    rec.details = "common coarsening " + c.common.render();
    rec.data = {{"independent", "no"}, {"common", c.common.render()}};
  }
  return rec;
}

}  // namespace

Report run_command(const Instance& inst, const std::vector<std::string>& cmd) {
  if (cmd.empty()) throw DomainError("no command given");
  const std::string& op = cmd[0];
  auto need = [&](size_t lo, size_t hi, const char* usage) {
    if (cmd.size() - 1 < lo || cmd.size() - 1 > hi)
      throw DomainError(std::string("usage: ") + usage);
  };
  Report rep;

  if (op == "weight") {
    need(1, 1, "weight <ring>");
    rep.records.push_back(weight_record("weight." + cmd[1],
                                        inst.ring(cmd[1])));
  } else if (op == "wset") {
    need(2, 16, "wset <ring> <elem>...");
    const auto& R = inst.ring(cmd[1]);
    std::vector<FieldElem> xs;
    for (size_t i = 2; i < cmd.size(); ++i)
      xs.push_back(parse_element(cmd[i], inst.field));
    auto [pick, cert] = wset_select(R, xs);
    CheckRecord rec;
    rec.name = "wset." + cmd[1];
    rec.verdict = Verdict::Pass;
    rec.details = xs[pick].render() + " lies in the span of the rest: " +
                  cert.describe(R);
    rec.data = {{"selected", std::to_string(pick)}};
    rep.records.push_back(rec);
  } else if (op == "ideals") {
    need(1, 1, "ideals <ring>");
    const auto& R = inst.ring(cmd[1]);
    auto ms = maximal_ideals(R);
    std::vector<Valuation> vs;
    for (const auto& m : ms) vs.push_back(m.v);
    CheckRecord rec;
    rec.name = "ideals." + cmd[1];
    rec.verdict = ms.size() == R.n() ? Verdict::Pass : Verdict::Fail;
    rec.details = std::to_string(ms.size()) + " maximal ideals: " +
                  join_vals(vs);
    rec.data = {{"count", std::to_string(ms.size())}};
    rep.records.push_back(rec);
  } else if (op == "jacobson") {
    need(1, 1, "jacobson <ring>");
    rep.records.push_back(jacobson_record("jacobson." + cmd[1],
                                          inst.ring(cmd[1])));
  } else if (op == "selectors") {
    need(2, 2, "selectors <ring> <pivot>");
    rep.records.push_back(selectors_record(
        "selectors." + cmd[1], inst.ring(cmd[1]),
        static_cast<size_t>(parse_nat(cmd[2], 0))));
  } else if (op == "localize") {
    need(3, 3, "localize <ring> <pivot> <elem>");
    const auto& R = inst.ring(cmd[1]);
    size_t pivot = static_cast<size_t>(parse_nat(cmd[2], 0));
    FieldElem x = parse_element(cmd[3], inst.field);
    bool member = localization_member(R, pivot, x);
    CheckRecord rec;
    rec.name = "localize." + cmd[1];
    rec.verdict = Verdict::Pass;
    rec.details = x.render() +
                  (member ? " is a unit at pivot " : " is not a unit at pivot ") +
                  std::to_string(pivot) +
                  "; selector and valuation criteria agree";
    rec.data = {{"pivot", std::to_string(pivot)},
                {"unit", member ? "yes" : "no"}};
    rep.records.push_back(rec);
  } else if (op == "dilworth") {
    need(1, 1, "dilworth <lattice>");
    rep.records.push_back(dilworth_record("dilworth." + cmd[1],
                                          inst.lattice(cmd[1])));
  } else if (op == "coembed") {
    need(2, 2, "coembed <module> <module>");
    const auto& over1 = inst.module_ring(cmd[1]);
    const auto& over2 = inst.module_ring(cmd[2]);
    if (over1 != over2)
      throw DomainError("modules live over different rings");
    const auto& R = inst.ring(over1);
    CoembedResult c = coembeddable(R, inst.module(cmd[1]),
                                   inst.module(cmd[2]));
    CheckRecord rec;
    rec.name = "coembed." + cmd[1] + "." + cmd[2];
    rec.verdict = Verdict::Pass;
    if (c.coembeddable) {
      rec.details = "co-embeddable with a = " + c.a.render() +
                    ", b = " + c.b.render();
      rec.data = {{"coembeddable", "yes"},
                  {"a", c.a.render()},
                  {"b", c.b.render()}};
    } else {
      rec.details = "not co-embeddable, unbounded at component " +
                    std::to_string(c.obstruction);
      rec.data = {{"coembeddable", "no"},
                  {"obstruction", std::to_string(c.obstruction)}};
    }
    rep.records.push_back(rec);
  } else if (op == "coarsenings") {
    need(1, 1, "coarsenings <ring>");
    rep.records.push_back(coarsenings_record("coarsenings." + cmd[1],
                                             inst.ring(cmd[1])));
  } else if (op == "classify") {
    need(3, 3, "classify <ring> <ring> <ring>");
    rep.records.push_back(classify_record(
        "classify." + cmd[2] + "." + cmd[3], inst.ring(cmd[1]),
        inst.ring(cmd[2]), inst.ring(cmd[3])));
  } else if (op == "vncheck") {
    need(2, 16, "vncheck <ring> <q>...");
    const auto& R = inst.ring(cmd[1]);
    std::vector<FieldElem> qs;
    for (size_t i = 2; i < cmd.size(); ++i)
      qs.push_back(parse_element(cmd[i], inst.field));
    std::vector<FieldElem> universe;
    if (R.field().kind == FieldDesc::Kind::Rationals) {
      universe = all_rationals_up_to_height(inst.heightBound);
    } else {
      std::vector<FieldElem> gens;
      for (const auto& v : R.valuations()) gens.push_back(v.uniformizer());
      universe = smooth_elements(R.field(), Int(inst.heightBound), gens);
    }
    VnResult r = vn_check(R, qs, universe);
    CheckRecord rec;
    rec.name = "vncheck." + cmd[1];
    rec.verdict = r.pass ? Verdict::Pass : Verdict::Fail;
    rec.details = r.pass
                      ? "holds over " + std::to_string(universe.size()) +
                            " universe elements"
                      : "counterexample " + r.witness.render();
    rec.data = {{"universe", std::to_string(universe.size())},
                {"pass", r.pass ? "yes" : "no"}};
    if (!r.pass) rec.data.emplace_back("witness", r.witness.render());
    rep.records.push_back(rec);
  } else if (op == "bump") {
    need(2, 2, "bump <ring> <superring>");
    rep.records.push_back(bump_record("bump." + cmd[1] + "." + cmd[2],
                                      inst.ring(cmd[1]), inst.ring(cmd[2])));
  } else if (op == "cuberank") {
    need(1, 1, "cuberank <lattice>");
    rep.records.push_back(cuberank_record("cuberank." + cmd[1],
                                          inst.lattice(cmd[1])));
  } else if (op == "golden") {
    need(1, 1, "golden <ring>");
    rep.records.push_back(golden_record("golden." + cmd[1],
                                        inst.ring(cmd[1])));
  } else if (op == "guard") {
    need(1, 1, "guard <module>");
    const auto& R = inst.ring(inst.module_ring(cmd[1]));
    const auto& A = inst.module(cmd[1]);
    GoldenLatticeView V = golden_view(R);
    auto S = guard_set(V, A);
    GuardCheck gc = check_guard(V, S, A);
    CheckRecord rec;
    rec.name = "guard." + cmd[1];
    rec.verdict = gc.guarded ? Verdict::Pass : Verdict::Fail;
    rec.details = gc.guarded
                      ? "guard set of " + std::to_string(S.size()) +
                            " elements forces " + A.render()
                      : "not guarded, counterexample " +
                            gc.counterexample.render();
    rec.data = {{"guardSize", std::to_string(S.size())},
                {"guarded", gc.guarded ? "yes" : "no"}};
    rep.records.push_back(rec);
  } else if (op == "pedestal") {
    need(1, 1, "pedestal <ring>");
    const auto& R = inst.ring(cmd[1]);
    GoldenLatticeView V = golden_view(R);
    PedestalResult p = pedestal(V);
    CheckRecord rec;
    rec.name = "pedestal." + cmd[1];
    rec.verdict = p.Bs.size() == R.n() ? Verdict::Pass : Verdict::Fail;
    rec.details = "pedestal " + p.A.render() + " with a strict " +
                  std::to_string(p.Bs.size()) + "-cube above it";
    rec.data = {{"cube", std::to_string(p.Bs.size())}};
    rep.records.push_back(rec);
  } else if (op == "semisimple") {
    need(1, 8, "semisimple <d1> <d2>...");
    std::vector<int64_t> ds;
    for (size_t i = 1; i < cmd.size(); ++i) ds.push_back(parse_nat(cmd[i], 0));
    FinModule m(ds);
    SemisimpleResult r = semisimple_subquotient(m);
    SubgroupLattice lat(m);
    int cr = cube_rank(lat, CubeMethod::All);
    CheckRecord rec;
    rec.name = "semisimple";
    rec.verdict = r.length == cr ? Verdict::Pass : Verdict::Fail;
    rec.details = "semisimple subquotient of length " +
                  std::to_string(r.length) + " = lattice cube rank " +
                  std::to_string(cr);
    rec.data = {{"length", std::to_string(r.length)},
                {"rank", std::to_string(cr)}};
    rep.records.push_back(rec);
  } else if (op == "check") {
    need(2, 3, "check <sentence> <ring> [<ring>]");
    Sentence s = parse_check_target(cmd[1], inst.field);
    Structure st = scoped_structure(inst, inst.ring(cmd[2]));
    if (cmd.size() == 4) {
      Structure st2 = scoped_structure(inst, inst.ring(cmd[3]));
      rep.records.push_back(sentence_record(
          "check." + cmd[1] + "." + cmd[2] + "." + cmd[3], s, st, &st2));
    } else {
      rep.records.push_back(
          sentence_record("check." + cmd[1] + "." + cmd[2], s, st, nullptr));
    }
  } else if (op == "suite") {
    need(0, 0, "suite");
    return verify_suite(inst);
  } else {
    throw DomainError("unknown command '" + op + "'");
  }
  return rep;
}

Report verify_suite(const Instance& inst) {
  if (inst.rings.empty())
    throw DomainError("suite needs at least one ring in the instance");
  Report rep;
  for (const auto& [name, R] : inst.rings) {
    rep.records.push_back(weight_record("weight." + name, R));

    // W_n certification at arity n+1: the witness tuple plus 1
    {
      CheckRecord rec;
      rec.name = "wnSelect." + name;
      std::vector<FieldElem> xs = weight(R).lowerWitness;
      xs.push_back(FieldElem::from_int(R.field(), 1));
      auto [pick, cert] = wset_select(R, xs);
      rec.verdict = Verdict::Pass;
      rec.details = xs[pick].render() + " selected: " + cert.describe(R);
      rec.data = {{"selected", std::to_string(pick)}};
      rep.records.push_back(rec);
    }

    rep.records.push_back(coarsenings_record("coarsenings." + name, R));
    rep.records.push_back(jacobson_record("jacobson." + name, R));
    rep.records.push_back(selectors_record("selectors." + name, R, 0));
    rep.records.push_back(localize_sample_record(
        "localize." + name, R, 0, std::min<int64_t>(inst.heightBound, 12)));
    rep.records.push_back(golden_record("golden." + name, R));

    Structure st = scoped_structure(inst, R);
    const char* topology[] = {"nondiscreteness", "hausdorff",
                              "subtractionContinuity", "scalarContinuity",
                              "multiplicationContinuity", "localBoundedness"};
    for (const char* sn : topology) {
      Sentence s = builtin_sentence(sn, R.field());
      rep.records.push_back(
          sentence_record(std::string(sn) + "." + name, s, st, nullptr));
    }
    {
      Sentence s = builtin_sentence("Wn", R.field(), static_cast<int>(R.n()));
      rep.records.push_back(sentence_record(
          "Wn(" + std::to_string(R.n()) + ")." + name, s, st, nullptr));
    }
    {
      CheckRecord rec;
      rec.name = "WnRefute." + name;
      if (R.n() == 1) {
        rec.verdict = Verdict::Skip;
        rec.details = "no lower arity to refute at weight 1";
      } else {
        Sentence s =
            builtin_sentence("Wn", R.field(), static_cast<int>(R.n()) - 1);
        EvalResult r = evaluate(s, st);
        replay_witness(s, st, r);
        rec.verdict = r.holds ? Verdict::Fail : Verdict::Pass;
        rec.details = r.holds ? "W(n-1) unexpectedly holds"
                              : "W(n-1) refuted as expected: " +
                                    witness_path(r.witness);
      }
      rep.records.push_back(rec);
    }
    {
      CheckRecord rec;
      rec.name = "classify." + name;
      if (R.n() < 2) {
        rec.verdict = Verdict::Skip;
        rec.details = "independence needs at least two coarsenings";
        rep.records.push_back(rec);
      } else {
        MultiValRing R1({R.at(0)}), R2({R.at(1)});
        rec = classify_record("classify." + name, R, R1, R2);
        if (rec.data.empty() || rec.data[0].second != "yes")
          rec.verdict = Verdict::Fail;
        rep.records.push_back(rec);
      }
    }
    {
      CheckRecord rec;
      rec.name = "bump." + name;
      if (R.n() < 2) {
        rec.verdict = Verdict::Skip;
        rec.details = "no strict coarsening at weight 1";
        rep.records.push_back(rec);
      } else {
        std::vector<Valuation> fewer(R.valuations().begin(),
                                     R.valuations().end() - 1);
        rep.records.push_back(
            bump_record("bump." + name, R, MultiValRing(fewer)));
      }
    }
  }
  for (const auto& [name, lat] : inst.lattices) {
    rep.records.push_back(dilworth_record("dilworth." + name, lat));
    rep.records.push_back(cuberank_record("cuberank." + name, lat));
  }
  return rep;
}

}  // namespace mv
