#include "mv/localsent.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "mv/errors.hpp"

namespace mv {

namespace {

const std::set<std::string> kKeywords = {
    "forallN", "existsN", "forallN2", "existsN2", "forallE",
    "existsE", "existsC", "in",       "Scope",    "not",
    "and",     "or"};

// ---------------------------------------------------------------- parsing

struct SentParser {
  const std::string& s;
  const FieldDesc& field;
  std::size_t pos = 0;
  std::vector<std::string> elemVars;  // includes existsC constants
  std::vector<std::string> nbhdVars;

  SentParser(const std::string& text, const FieldDesc& f) : s(text), field(f) {}

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool peek_sym(const std::string& sym) {
    skip_ws();
    return s.compare(pos, sym.size(), sym) == 0;
  }
  bool eat_sym(const std::string& sym) {
    if (!peek_sym(sym)) return false;
    pos += sym.size();
    return true;
  }
  std::string peek_word() {
    skip_ws();
    std::size_t p = pos;
    if (p >= s.size() || (!std::isalpha(static_cast<unsigned char>(s[p])) &&
                          s[p] != '_'))
      return "";
    std::size_t start = p;
    while (p < s.size() && (std::isalnum(static_cast<unsigned char>(s[p])) ||
                            s[p] == '_'))
      ++p;
    return s.substr(start, p - start);
  }
  std::string eat_word() {
    std::string w = peek_word();
    pos += w.size();
    return w;
  }

  int elem_slot(const std::string& name) {
    for (std::size_t i = 0; i < elemVars.size(); ++i)
      if (elemVars[i] == name) return static_cast<int>(i);
    return -1;
  }
  int nbhd_slot(const std::string& name) {
    for (std::size_t i = 0; i < nbhdVars.size(); ++i)
      if (nbhdVars[i] == name) return static_cast<int>(i);
    return -1;
  }

  std::string bind(const std::string& quant) {
    std::string name = eat_word();
    if (name.empty()) fail("expected a variable name after " + quant);
    if (kKeywords.count(name)) fail("'" + name + "' is a reserved word");
    if (elem_slot(name) >= 0 || nbhd_slot(name) >= 0)
      fail("variable '" + name + "' is bound twice");
    if (field.kind == FieldDesc::Kind::RationalFunctions &&
        name == field.variable)
      fail("variable '" + name + "' shadows the field variable");
    return name;
  }

  Sentence parse() {
    Sentence out = parse_form();
    skip_ws();
    if (pos != s.size()) fail("unexpected trailing input");
    return out;
  }

  Sentence parse_form() { return parse_implies(); }

  Sentence parse_implies() {
    Sentence lhs = parse_disj();
    if (eat_sym("->")) {
      Sentence out;
      out.k = Sentence::K::Implies;
      out.kids.push_back(std::move(lhs));
      out.kids.push_back(parse_implies());
      return out;
    }
    return lhs;
  }

  Sentence parse_disj() {
    Sentence lhs = parse_conj();
    while (peek_word() == "or") {
      eat_word();
      Sentence out;
      out.k = Sentence::K::Or;
      out.kids.push_back(std::move(lhs));
      out.kids.push_back(parse_conj());
      lhs = std::move(out);
    }
    return lhs;
  }

  Sentence parse_conj() {
    Sentence lhs = parse_unit();
    while (peek_word() == "and") {
      eat_word();
      Sentence out;
      out.k = Sentence::K::And;
      out.kids.push_back(std::move(lhs));
      out.kids.push_back(parse_unit());
      lhs = std::move(out);
    }
    return lhs;
  }

  Sentence parse_unit() {
    std::string w = peek_word();
    if (w == "not") {
      eat_word();
      Sentence out;
      out.k = Sentence::K::Not;
      out.kids.push_back(parse_unit());
      return out;
    }
    if (w == "forallN" || w == "existsN" || w == "forallN2" ||
        w == "existsN2") {
      eat_word();
      Sentence out;
      out.k = (w == "forallN" || w == "forallN2") ? Sentence::K::NAll
                                                  : Sentence::K::NEx;
      out.basis = (w == "forallN2" || w == "existsN2") ? 1 : 0;
      out.var = bind(w);
      out.slot = static_cast<int>(nbhdVars.size());
      nbhdVars.push_back(out.var);
      if (!eat_sym(".")) fail("expected '.' after quantifier");
      out.kids.push_back(parse_form());
      nbhdVars.pop_back();
      return out;
    }
    if (w == "forallE" || w == "existsE") {
      eat_word();
      Sentence out;
      out.k = w == "forallE" ? Sentence::K::EAll : Sentence::K::EEx;
      out.var = bind(w);
      if (peek_word() != "in") fail("expected 'in' after element variable");
      eat_word();
      std::string sc = eat_word();
      if (sc == "Scope") {
        out.scopeTag.clear();
      } else {
        int slot = nbhd_slot(sc);
        if (slot < 0) fail("'" + sc + "' is not a bound neighborhood variable");
        out.scopeTag = sc;
        out.scopeSlot = slot;
      }
      out.slot = static_cast<int>(elemVars.size());
      elemVars.push_back(out.var);
      if (!eat_sym(".")) fail("expected '.' after quantifier");
      out.kids.push_back(parse_form());
      elemVars.pop_back();
      return out;
    }
    if (w == "existsC") {
      eat_word();
      Sentence out;
      out.k = Sentence::K::CEx;
      out.var = bind(w);
      out.slot = static_cast<int>(elemVars.size());
      elemVars.push_back(out.var);
      if (!eat_sym(".")) fail("expected '.' after quantifier");
      out.kids.push_back(parse_form());
      elemVars.pop_back();
      return out;
    }
    if (peek_sym("(")) {
      // could be a parenthesized formula or a term starting an atom, as in
      // (1+x)*(1+y) = 1; try the formula reading first and backtrack
      std::size_t save = pos;
      std::size_t esz = elemVars.size(), nsz = nbhdVars.size();
      try {
        eat_sym("(");
        Sentence out = parse_form();
        if (!eat_sym(")")) fail("expected ')'");
        return out;
      } catch (const ParseError&) {
        pos = save;
        elemVars.resize(esz);
        nbhdVars.resize(nsz);
        return parse_atom();
      }
    }
    return parse_atom();
  }

  Sentence parse_atom() {
    Term t = parse_term();
    skip_ws();
    if (peek_word() == "in") {
      eat_word();
      Sentence out;
      out.k = Sentence::K::Mem;
      out.t1 = std::move(t);
      out.sum.push_back(parse_summand());
      while (eat_sym("+")) out.sum.push_back(parse_summand());
      if (out.sum.size() > kMaxSummands)
        fail("neighborhood sum exceeds " + std::to_string(kMaxSummands) +
             " summands");
      return out;
    }
    Sentence out;
    if (eat_sym("!=")) {
      out.k = Sentence::K::Neq;
    } else if (eat_sym("=")) {
      out.k = Sentence::K::Eq;
    } else {
      fail("expected 'in', '=' or '!=' in atom");
    }
    out.t1 = std::move(t);
    out.t2 = parse_term();
    return out;
  }

  Summand parse_summand() {
    // '*'-separated factor chain whose last factor is a neighborhood variable
    std::vector<Term> factors;
    std::string lastNbhd;
    for (;;) {
      skip_ws();
      std::string w = peek_word();
      if (!w.empty() && nbhd_slot(w) >= 0) {
        eat_word();
        lastNbhd = w;
        if (eat_sym("*")) fail("a neighborhood variable must end its summand");
        break;
      }
      factors.push_back(parse_factor());
      if (!eat_sym("*"))
        fail("neighborhood summand must end in a neighborhood variable");
    }
    Summand out;
    out.var = lastNbhd;
    out.slot = nbhd_slot(lastNbhd);
    if (!factors.empty()) {
      out.hasCoeff = true;
      out.coeff = std::move(factors[0]);
      for (std::size_t i = 1; i < factors.size(); ++i) {
        Term m;
        m.k = Term::K::Mul;
        m.kids.push_back(std::move(out.coeff));
        m.kids.push_back(std::move(factors[i]));
        out.coeff = std::move(m);
      }
    }
    return out;
  }

  Term parse_term() {
    Term lhs = parse_term_mul();
    for (;;) {
      skip_ws();
      if (eat_sym("+")) {
        Term out;
        out.k = Term::K::Add;
        out.kids.push_back(std::move(lhs));
        out.kids.push_back(parse_term_mul());
        lhs = std::move(out);
      } else if (peek_sym("->")) {
        return lhs;
      } else if (eat_sym("-")) {
        Term out;
        out.k = Term::K::Sub;
        out.kids.push_back(std::move(lhs));
        out.kids.push_back(parse_term_mul());
        lhs = std::move(out);
      } else {
        return lhs;
      }
    }
  }

  Term parse_term_mul() {
    Term lhs = parse_factor();
    for (;;) {
      skip_ws();
      if (eat_sym("*")) {
        Term out;
        out.k = Term::K::Mul;
        out.kids.push_back(std::move(lhs));
        out.kids.push_back(parse_factor());
        lhs = std::move(out);
      } else if (eat_sym("/")) {
        Term out;
        out.k = Term::K::Div;
        out.kids.push_back(std::move(lhs));
        out.kids.push_back(parse_factor());
        lhs = std::move(out);
      } else if (pos < s.size() &&
                 (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                  std::isalpha(static_cast<unsigned char>(s[pos])) ||
                  s[pos] == '(')) {
        std::string w = peek_word();
        if (!w.empty() && kKeywords.count(w)) return lhs;
        if (!w.empty() && nbhd_slot(w) >= 0) return lhs;
        Term out;
        out.k = Term::K::Mul;
        out.kids.push_back(std::move(lhs));
        out.kids.push_back(parse_factor());
        lhs = std::move(out);
      } else {
        return lhs;
      }
    }
  }

  Term parse_factor() {
    skip_ws();
    if (eat_sym("-")) {
      Term out;
      out.k = Term::K::Neg;
      out.kids.push_back(parse_factor());
      return out;
    }
    Term base = parse_term_base();
    skip_ws();
    if (eat_sym("^")) {
      skip_ws();
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      if (pos == start) fail("expected exponent");
      Term out;
      out.k = Term::K::Pow;
      out.exp = std::stoll(s.substr(start, pos - start));
      out.kids.push_back(std::move(base));
      return out;
    }
    return base;
  }

  Term parse_term_base() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of sentence");
    if (eat_sym("(")) {
      Term out = parse_term();
      if (!eat_sym(")")) fail("expected ')'");
      return out;
    }
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      Term out;
      out.k = Term::K::Lit;
      out.lit = FieldElem::from_int(field, Int(s.substr(start, pos - start)));
      return out;
    }
    std::string w = peek_word();
    if (w.empty()) fail(std::string("unexpected character '") + c + "'");
    if (kKeywords.count(w)) fail("'" + w + "' cannot start a term");
    eat_word();
    if (nbhd_slot(w) >= 0)
      fail("neighborhood variable '" + w + "' used outside a membership sum");
    int slot = elem_slot(w);
    if (slot >= 0) {
      Term out;
      out.k = Term::K::Var;
      out.name = w;
      out.slot = slot;
      return out;
    }
    if (field.kind == FieldDesc::Kind::RationalFunctions &&
        w == field.variable) {
      Term out;
      out.k = Term::K::Lit;
      out.lit = FieldElem::poly_fraction(
          field, FpPoly::variable(field.characteristic),
          FpPoly::constant(field.characteristic, 1));
      return out;
    }
    fail("unbound variable '" + w + "'");
  }
};

// --------------------------------------------------------------- printing

void print_term(const Term& t, std::ostringstream& os) {
  switch (t.k) {
    case Term::K::Var:
      os << t.name;
      return;
    case Term::K::Lit: {
      std::string r = t.lit.render();
      bool simple = r.find_first_of("+-*/^ ()") == std::string::npos;
      if (simple)
        os << r;
      else
        os << "(" << r << ")";
      return;
    }
    case Term::K::Add:
    case Term::K::Sub:
    case Term::K::Mul:
    case Term::K::Div: {
      const char* op = t.k == Term::K::Add   ? " + "
                       : t.k == Term::K::Sub ? " - "
                       : t.k == Term::K::Mul ? "*"
                                             : "/";
      os << "(";
      print_term(t.kids[0], os);
      os << op;
      print_term(t.kids[1], os);
      os << ")";
      return;
    }
    case Term::K::Neg:
      os << "(-";
      print_term(t.kids[0], os);
      os << ")";
      return;
    case Term::K::Pow:
      print_term(t.kids[0], os);
      os << "^" << t.exp;
      return;
  }
}

void print_sent(const Sentence& s, std::ostringstream& os) {
  switch (s.k) {
    case Sentence::K::NAll:
      os << (s.basis ? "forallN2 " : "forallN ") << s.var << " . ";
      print_sent(s.kids[0], os);
      return;
    case Sentence::K::NEx:
      os << (s.basis ? "existsN2 " : "existsN ") << s.var << " . ";
      print_sent(s.kids[0], os);
      return;
    case Sentence::K::EAll:
    case Sentence::K::EEx:
      os << (s.k == Sentence::K::EAll ? "forallE " : "existsE ") << s.var
         << " in " << (s.scopeTag.empty() ? "Scope" : s.scopeTag) << " . ";
      print_sent(s.kids[0], os);
      return;
    case Sentence::K::CEx:
      os << "existsC " << s.var << " . ";
      print_sent(s.kids[0], os);
      return;
    case Sentence::K::And:
    case Sentence::K::Or:
      os << "(";
      print_sent(s.kids[0], os);
      os << (s.k == Sentence::K::And ? " and " : " or ");
      print_sent(s.kids[1], os);
      os << ")";
      return;
    case Sentence::K::Not:
      os << "not (";
      print_sent(s.kids[0], os);
      os << ")";
      return;
    case Sentence::K::Implies:
      os << "(";
      print_sent(s.kids[0], os);
      os << " -> ";
      print_sent(s.kids[1], os);
      os << ")";
      return;
    case Sentence::K::Mem: {
      print_term(s.t1, os);
      os << " in ";
      for (std::size_t i = 0; i < s.sum.size(); ++i) {
        if (i) os << " + ";
        if (s.sum[i].hasCoeff) {
          print_term(s.sum[i].coeff, os);
          os << "*";
        }
        os << s.sum[i].var;
      }
      return;
    }
    case Sentence::K::Eq:
    case Sentence::K::Neq:
      print_term(s.t1, os);
      os << (s.k == Sentence::K::Eq ? " = " : " != ");
      print_term(s.t2, os);
      return;
  }
}

// --------------------------------------------------------------- polarity

struct PolarityWalker {
  // sign under which each neighborhood slot was bound: +1 forall, -1 exists
  std::vector<int> binderSign;
  PolarityResult result;

  void occurrence(int slot, int sign, const std::string& what,
                  std::vector<std::string>& path) {
    if (!result.ok || slot < 0) return;
    if (binderSign[slot] == sign) return;
    result.ok = false;
    std::string p;
    for (const auto& seg : path) p += seg + " > ";
    result.path = p + what;
    result.message =
        binderSign[slot] > 0
            ? "universally bound neighborhood variable occurs negatively"
            : "existentially bound neighborhood variable occurs positively";
  }

  void walk(const Sentence& s, int sign, std::vector<std::string>& path) {
    if (!result.ok) return;
    switch (s.k) {
      case Sentence::K::NAll:
      case Sentence::K::NEx: {
        binderSign.push_back(s.k == Sentence::K::NAll ? 1 : -1);
        path.push_back((s.k == Sentence::K::NAll ? "forallN " : "existsN ") +
                       s.var);
        walk(s.kids[0], sign, path);
        path.pop_back();
        binderSign.pop_back();
        return;
      }
      case Sentence::K::EAll:
      case Sentence::K::EEx: {
        // "forall x in V" reads as a negative occurrence of V, "exists y
        // in U" as a positive one
        if (s.scopeSlot >= 0) {
          int occ = s.k == Sentence::K::EAll ? -sign : sign;
          path.push_back(
              (s.k == Sentence::K::EAll ? "forallE " : "existsE ") + s.var +
              " in " + s.scopeTag);
          occurrence(s.scopeSlot, occ, "binder", path);
          walk(s.kids[0], sign, path);
          path.pop_back();
          return;
        }
        path.push_back(
            (s.k == Sentence::K::EAll ? "forallE " : "existsE ") + s.var);
        walk(s.kids[0], sign, path);
        path.pop_back();
        return;
      }
      case Sentence::K::CEx:
        path.push_back("existsC " + s.var);
        walk(s.kids[0], sign, path);
        path.pop_back();
        return;
      case Sentence::K::And:
      case Sentence::K::Or:
        path.push_back(s.k == Sentence::K::And ? "and" : "or");
        walk(s.kids[0], sign, path);
        walk(s.kids[1], sign, path);
        path.pop_back();
        return;
      case Sentence::K::Not:
        path.push_back("not");
        walk(s.kids[0], -sign, path);
        path.pop_back();
        return;
      case Sentence::K::Implies:
        path.push_back("->");
        walk(s.kids[0], -sign, path);
        walk(s.kids[1], sign, path);
        path.pop_back();
        return;
      case Sentence::K::Mem: {
        for (const auto& sm : s.sum)
          occurrence(sm.slot, sign, "membership in " + sm.var, path);
        return;
      }
      case Sentence::K::Eq:
      case Sentence::K::Neq:
        return;
    }
  }
};

}  // namespace

Sentence parse_sentence(const std::string& text, const FieldDesc& field) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw ParseError("empty sentence", 0);
  return SentParser(text, field).parse();
}

std::string print_sentence(const Sentence& s) {
  std::ostringstream os;
  print_sent(s, os);
  return os.str();
}

PolarityResult check_polarity(const Sentence& s) {
  PolarityWalker w;
  std::vector<std::string> path;
  w.walk(s, 1, path);
  return w.result;
}

// -------------------------------------------------------------- structure

Structure Structure::standard(const MultiValRing& R, int64_t elemHeight,
                              int64_t scaleHeight, int ladderK) {
  Structure st{R.field(), R, {}, {}};
  const FieldDesc& f = R.field();
  std::vector<FieldElem> gens;
  for (const auto& v : R.valuations()) gens.push_back(v.uniformizer());

  // integral smooth elements: the evaluated topology axioms are the ring
  // topology of R, so scalars and points are sampled from R itself
  for (const auto& x : smooth_elements(f, Int(elemHeight), gens))
    if (R.contains(x)) st.elemScope.push_back(x);
  if (R.n() > 1 && ladderK > 0) {
    // powers of the weight lower-witnesses: these are what defeat every
    // scale candidate when a W_m sentence with m < n is refuted
    for (std::size_t i = 0; i < R.n(); ++i) {
      std::vector<int64_t> t(R.n(), 1);
      t[i] = 0;
      FieldElem w = element_with_value_vector(R.valuations(), t);
      FieldElem acc = FieldElem::from_int(f, 1);
      for (int k = 1; k <= ladderK; ++k) {
        acc = acc * w;
        st.elemScope.push_back(acc);
      }
    }
  }
  st.elemScope.push_back(FieldElem(f));
  st.elemScope.push_back(FieldElem::from_int(f, 1));
  sort_canonical(st.elemScope);
  st.elemScope.erase(std::unique(st.elemScope.begin(), st.elemScope.end()),
                     st.elemScope.end());

  // scale parts: uniformizer products of bounded height, plus one cap per
  // valuation strictly deeper than anything in the element scope, so that
  // every scope point is separated from 0 by some basis module
  std::vector<FieldElem> parts;
  parts.push_back(FieldElem::from_int(f, 1));
  for (std::size_t head = 0; head < parts.size(); ++head) {
    for (const auto& g : gens) {
      FieldElem next = parts[head] * g;
      if (next.height() > scaleHeight) continue;
      if (std::find(parts.begin(), parts.end(), next) == parts.end())
        parts.push_back(next);
    }
  }
  for (std::size_t i = 0; i < R.n(); ++i) {
    int64_t depth = 0;
    for (const auto& x : st.elemScope) {
      ValueExt v = R.at(i).val(x);
      if (!v.infinite) depth = std::max(depth, v.v);
    }
    FieldElem cap = R.at(i).uniformizer().pow(depth + 1);
    if (std::find(parts.begin(), parts.end(), cap) == parts.end())
      parts.push_back(cap);
  }
  // realize the positive part of every candidate value vector; with the
  // degree valuation present no uniformizer product reaches these (their
  // coordinate sums are pinned), yet V*V <= U needs max(gamma, 0) modules
  std::vector<std::vector<int64_t>> posTargets;
  for (const auto& p : parts) {
    auto vv = R.valvec(p);
    for (int sign : {1, -1}) {
      std::vector<int64_t> tgt(R.n(), 0);
      bool nontrivial = false, same = true;
      for (std::size_t i = 0; i < R.n(); ++i) {
        tgt[i] = std::max<int64_t>(sign * vv[i].v, 0);
        if (tgt[i] != sign * vv[i].v) same = false;
        if (tgt[i] != 0) nontrivial = true;
      }
      if ((sign == 1 && same) || !nontrivial) continue;
      if (std::find(posTargets.begin(), posTargets.end(), tgt) ==
          posTargets.end())
        posTargets.push_back(tgt);
    }
  }
  for (const auto& tgt : posTargets) {
    FieldElem s = element_with_value_vector(R.valuations(), tgt);
    if (std::find(parts.begin(), parts.end(), s) == parts.end())
      parts.push_back(s);
  }
  for (const auto& s : parts) {
    st.scaleSet.push_back(s);
    st.scaleSet.push_back(-s);
    st.scaleSet.push_back(s.inverse());
    st.scaleSet.push_back(-s.inverse());
  }
  sort_canonical(st.scaleSet);
  st.scaleSet.erase(std::unique(st.scaleSet.begin(), st.scaleSet.end()),
                    st.scaleSet.end());
  return st;
}

Structure Structure::graded(const MultiValRing& R) {
  const std::size_t n = R.n();
  if (R.field().kind == FieldDesc::Kind::Rationals) {
    if (n <= 2) return standard(R, 64, 64, 13);
    if (n == 3) return standard(R, 4, 8, 3);
    return standard(R, 2, 4, 2);
  }
  if (n == 1) return standard(R, 6, 6, 6);
  if (n == 2) return standard(R, 2, 4, 4);
  return standard(R, 1, 2, 2);
}

// -------------------------------------------------------------- evaluator

namespace {

constexpr int kMaxVals = 8;

struct VecVal {
  int n = 0;
  bool defined = true;  // false after division by zero
  bool exact = true;    // otherwise components are lower bounds
  bool inf[kMaxVals] = {};
  int64_t v[kMaxVals] = {};

  static VecVal undefined_val() {
    VecVal out;
    out.defined = false;
    return out;
  }
};

VecVal vec_of(const MultiValRing& R, const FieldElem& x) {
  VecVal out;
  out.n = static_cast<int>(R.n());
  auto vv = R.valvec(x);
  for (int i = 0; i < out.n; ++i) {
    out.inf[i] = vv[i].infinite;
    out.v[i] = vv[i].infinite ? 0 : vv[i].v;
  }
  return out;
}

struct ScopeEntry {
  FieldElem x;
  VecVal vec[2];  // value vectors under the first and second basis ring
};

struct NbhdBinding {
  const FieldElem* c = nullptr;
  VecVal gamma;  // exact, finite
  int basis = 0;
  // rescaled samples c*w of the bound module, beyond the global scope
  std::shared_ptr<const std::vector<ScopeEntry>> extra;
};

struct Evaluator {
  const Structure* st[2] = {nullptr, nullptr};
  std::vector<ScopeEntry> elems;   // shared element scope entries
  std::vector<ScopeEntry> scales[2];
  // candidates with maximal value vectors: by the polarity constraint each
  // neighborhood variable is one-signed, so forallN holds iff it holds on
  // the maximal modules and existsN succeeds iff a maximal module succeeds
  std::vector<const ScopeEntry*> frontier[2];
  // scope members integral for the given basis ring: rescaling generators
  std::vector<const ScopeEntry*> integralW[2];
  std::vector<const ScopeEntry*> elemEnv;
  std::vector<NbhdBinding> nbhdEnv;

  explicit Evaluator(const Structure& a, const Structure* b) {
    st[0] = &a;
    st[1] = b;
    if (a.basisRing.n() > kMaxVals)
      throw DomainError("too many valuations for the sentence evaluator");
    if (a.elemScope.empty()) throw DomainError("element scope is empty");
    auto fill = [&](const std::vector<FieldElem>& src,
                    std::vector<ScopeEntry>& dst) {
      for (const auto& x : src) {
        ScopeEntry e{x, {vec_of(a.basisRing, x), VecVal{}}};
        if (b) e.vec[1] = vec_of(b->basisRing, x);
        dst.push_back(std::move(e));
      }
    };
    fill(a.elemScope, elems);
    fill(a.scaleSet, scales[0]);
    if (b) fill(b->scaleSet, scales[1]);
    for (int basis = 0; basis < 2; ++basis) {
      for (const auto& e : scales[basis]) {
        const VecVal& g = e.vec[basis];
        bool dominated = false;
        for (const auto& o : scales[basis]) {
          const VecVal& h = o.vec[basis];
          bool leq = true, eq = true;
          for (int i = 0; i < g.n; ++i) {
            if (g.v[i] > h.v[i]) leq = false;
            if (g.v[i] != h.v[i]) eq = false;
          }
          if (leq && !eq) {
            dominated = true;
            break;
          }
        }
        if (dominated) continue;
        bool dup = false;
        for (const auto* o : frontier[basis]) {
          bool eq = true;
          for (int i = 0; i < g.n; ++i)
            if (g.v[i] != o->vec[basis].v[i]) eq = false;
          if (eq) dup = true;
        }
        if (!dup) frontier[basis].push_back(&e);
      }
      for (const auto& e : elems) {
        if (e.x.is_zero()) continue;
        const VecVal& g = e.vec[basis];
        bool ok = true;
        for (int i = 0; i < g.n; ++i)
          if (!g.inf[i] && g.v[i] < 0) ok = false;
        if (ok) integralW[basis].push_back(&e);
      }
      if (!b) break;
    }
    // sized generously; slots are depth-bounded by the sentence
    elemEnv.resize(64, nullptr);
    nbhdEnv.resize(64);
  }

  // ----- terms

  VecVal term_vec(const Term& t, int basis) {
    switch (t.k) {
      case Term::K::Var:
        return elemEnv[t.slot]->vec[basis];
      case Term::K::Lit:
        return vec_of(ring(basis), t.lit);
      case Term::K::Neg:
        return term_vec(t.kids[0], basis);
      case Term::K::Add:
      case Term::K::Sub: {
        VecVal a = term_vec(t.kids[0], basis);
        VecVal b = term_vec(t.kids[1], basis);
        if (!a.defined || !b.defined) return VecVal::undefined_val();
        VecVal out;
        out.n = a.n;
        out.exact = a.exact && b.exact;
        for (int i = 0; i < a.n; ++i) {
          if (a.inf[i] && b.inf[i]) {
            out.inf[i] = true;
          } else if (a.inf[i]) {
            out.v[i] = b.v[i];
          } else if (b.inf[i]) {
            out.v[i] = a.v[i];
          } else {
            out.v[i] = std::min(a.v[i], b.v[i]);
            // a tie can cancel upward; the min stays a lower bound only
            if (a.v[i] == b.v[i]) out.exact = false;
          }
        }
        return out;
      }
      case Term::K::Mul: {
        VecVal a = term_vec(t.kids[0], basis);
        VecVal b = term_vec(t.kids[1], basis);
        if (!a.defined || !b.defined) return VecVal::undefined_val();
        VecVal out;
        out.n = a.n;
        out.exact = a.exact && b.exact;
        for (int i = 0; i < a.n; ++i) {
          out.inf[i] = a.inf[i] || b.inf[i];
          out.v[i] = out.inf[i] ? 0 : a.v[i] + b.v[i];
        }
        return out;
      }
      case Term::K::Div: {
        VecVal a = term_vec(t.kids[0], basis);
        VecVal b = term_vec(t.kids[1], basis);
        if (!a.defined || !b.defined || !b.exact)
          return VecVal::undefined_val();
        for (int i = 0; i < b.n; ++i)
          if (b.inf[i]) return VecVal::undefined_val();  // division by zero
        VecVal out;
        out.n = a.n;
        out.exact = a.exact;
        for (int i = 0; i < a.n; ++i) {
          out.inf[i] = a.inf[i];
          out.v[i] = out.inf[i] ? 0 : a.v[i] - b.v[i];
        }
        return out;
      }
      case Term::K::Pow: {
        VecVal a = term_vec(t.kids[0], basis);
        if (!a.defined) return a;
        VecVal out;
        if (t.exp == 0) {
          out.n = a.n;
          return out;  // x^0 = 1, the all-zero vector
        }
        out.n = a.n;
        out.exact = a.exact;
        for (int i = 0; i < a.n; ++i) {
          out.inf[i] = a.inf[i];
          out.v[i] = out.inf[i] ? 0 : a.v[i] * t.exp;
        }
        return out;
      }
    }
    return VecVal::undefined_val();
  }

  const MultiValRing& ring(int basis) const { return st[basis]->basisRing; }

  std::map<const ScopeEntry*, std::shared_ptr<const std::vector<ScopeEntry>>>
      extraCache[2];

  NbhdBinding make_binding(const ScopeEntry& e, int basis) {
    auto it = extraCache[basis].find(&e);
    if (it == extraCache[basis].end()) {
      auto extra = std::make_shared<std::vector<ScopeEntry>>();
      for (const auto* w : integralW[basis]) {
        FieldElem x = e.x * w->x;
        bool dup = false;
        for (const auto& o : elems)
          if (o.x == x) {
            dup = true;
            break;
          }
        if (dup) continue;
        ScopeEntry se{x, {vec_of(ring(0), x), VecVal{}}};
        if (st[1]) se.vec[1] = vec_of(st[1]->basisRing, x);
        extra->push_back(std::move(se));
      }
      std::sort(extra->begin(), extra->end(),
                [](const ScopeEntry& a, const ScopeEntry& b) {
                  return canonical_less(a.x, b.x);
                });
      it = extraCache[basis].emplace(&e, std::move(extra)).first;
    }
    return NbhdBinding{&e.x, e.vec[basis], basis, it->second};
  }

  // exact field value; nullopt on division by zero
  std::optional<FieldElem> term_field(const Term& t) {
    switch (t.k) {
      case Term::K::Var:
        return elemEnv[t.slot]->x;
      case Term::K::Lit:
        return t.lit;
      case Term::K::Neg: {
        auto a = term_field(t.kids[0]);
        if (!a) return std::nullopt;
        return -*a;
      }
      case Term::K::Add:
      case Term::K::Sub:
      case Term::K::Mul:
      case Term::K::Div: {
        auto a = term_field(t.kids[0]);
        auto b = term_field(t.kids[1]);
        if (!a || !b) return std::nullopt;
        switch (t.k) {
          case Term::K::Add:
            return *a + *b;
          case Term::K::Sub:
            return *a - *b;
          case Term::K::Mul:
            return *a * *b;
          default:
            if (b->is_zero()) return std::nullopt;
            return *a / *b;
        }
      }
      case Term::K::Pow: {
        auto a = term_field(t.kids[0]);
        if (!a) return std::nullopt;
        if (a->is_zero() && t.exp < 0) return std::nullopt;
        return a->pow(t.exp);
      }
    }
    return std::nullopt;
  }

  // ----- atoms

  bool eval_mem(const Sentence& s) {
    int basis = nbhdEnv[s.sum[0].slot].basis;
    for (const auto& sm : s.sum)
      if (nbhdEnv[sm.slot].basis != basis)
        throw DomainError("mixed bases inside one membership sum");
    // gamma* = componentwise min over the summand modules
    const int n = static_cast<int>(ring(basis).n());
    bool any = false;
    int64_t gs[kMaxVals] = {};
    for (const auto& sm : s.sum) {
      const NbhdBinding& nb = nbhdEnv[sm.slot];
      int64_t cg[kMaxVals];
      for (int i = 0; i < n; ++i) cg[i] = nb.gamma.v[i];
      if (sm.hasCoeff) {
        VecVal cv = term_vec(sm.coeff, basis);
        if (!cv.defined) return false;  // undefined coefficient
        if (!cv.exact) {
          auto c = term_field(sm.coeff);
          if (!c) return false;
          if (c->is_zero()) continue;  // summand is {0}
          cv = vec_of(ring(basis), *c);
        }
        bool zero = false;
        for (int i = 0; i < n; ++i)
          if (cv.inf[i]) zero = true;
        if (zero) continue;
        for (int i = 0; i < n; ++i) cg[i] += cv.v[i];
      }
      for (int i = 0; i < n; ++i)
        gs[i] = any ? std::min(gs[i], cg[i]) : cg[i];
      any = true;
    }
    auto decide = [&](const VecVal& tv) -> int {
      // 1 = member, 0 = not, -1 = needs the exact fallback
      bool allOk = true;
      for (int i = 0; i < n; ++i) {
        if (tv.inf[i]) continue;
        if (tv.v[i] < gs[i]) allOk = false;
      }
      if (allOk) return 1;       // lower bounds already clear the threshold
      if (tv.exact) return 0;
      return -1;
    };
    if (!any) {
      // all summands collapsed to {0}
      auto x = term_field(s.t1);
      return x && x->is_zero();
    }
    VecVal tv = term_vec(s.t1, basis);
    if (tv.defined) {
      int d = decide(tv);
      if (d >= 0) return d == 1;
    }
    auto x = term_field(s.t1);
    if (!x) return false;
    VecVal xv = vec_of(ring(basis), *x);
    return decide(xv) == 1;
  }

  bool eval_eqneq(const Sentence& s) {
    auto a = term_field(s.t1);
    auto b = term_field(s.t2);
    bool eq = a && b && *a == *b;
    if (!a || !b) eq = false;
    return s.k == Sentence::K::Eq ? eq : (a && b && !eq);
  }

  // ----- quantifier-free / quantified evaluation, no witness bookkeeping

  bool eval(const Sentence& s) {
    switch (s.k) {
      case Sentence::K::NAll:
      case Sentence::K::NEx: {
        const bool isAll = s.k == Sentence::K::NAll;
        if (s.basis == 1 && st[1] == nullptr)
          throw DomainError(
              "sentence quantifies over a second structure but none was "
              "given");
        for (const auto* e : frontier[s.basis]) {
          nbhdEnv[s.slot] = make_binding(*e, s.basis);
          bool sub = eval(s.kids[0]);
          if (isAll && !sub) return false;
          if (!isAll && sub) return true;
        }
        return isAll;
      }
      case Sentence::K::EAll:
      case Sentence::K::EEx: {
        const bool isAll = s.k == Sentence::K::EAll;
        for (const auto& e : elems) {
          if (s.scopeSlot >= 0 && !entry_in_nbhd(e, s.scopeSlot)) continue;
          elemEnv[s.slot] = &e;
          bool sub = eval(s.kids[0]);
          if (isAll && !sub) return false;
          if (!isAll && sub) return true;
        }
        if (s.scopeSlot >= 0) {
          // rescaled samples of the bound module itself
          for (const auto& e : *nbhdEnv[s.scopeSlot].extra) {
            elemEnv[s.slot] = &e;
            bool sub = eval(s.kids[0]);
            if (isAll && !sub) return false;
            if (!isAll && sub) return true;
          }
        }
        return isAll;
      }
      case Sentence::K::CEx: {
        for (const auto& e : scales[0]) {
          elemEnv[s.slot] = &e;
          if (eval(s.kids[0])) return true;
        }
        return false;
      }
      case Sentence::K::And:
        return eval(s.kids[0]) && eval(s.kids[1]);
      case Sentence::K::Or:
        return eval(s.kids[0]) || eval(s.kids[1]);
      case Sentence::K::Not:
        return !eval(s.kids[0]);
      case Sentence::K::Implies:
        return !eval(s.kids[0]) || eval(s.kids[1]);
      case Sentence::K::Mem:
        return eval_mem(s);
      case Sentence::K::Eq:
      case Sentence::K::Neq:
        return eval_eqneq(s);
    }
    return false;
  }

  bool entry_in_nbhd(const ScopeEntry& e, int nbhdSlot) {
    const NbhdBinding& nb = nbhdEnv[nbhdSlot];
    const VecVal& xv = e.vec[nb.basis];
    for (int i = 0; i < xv.n; ++i) {
      if (xv.inf[i]) continue;
      if (xv.v[i] < nb.gamma.v[i]) return false;
    }
    return true;
  }

  // ----- evaluation that records the decisive assignments

  WitnessNode witness(const Sentence& s) {
    WitnessNode node;
    switch (s.k) {
      case Sentence::K::NAll:
      case Sentence::K::NEx: {
        const bool isAll = s.k == Sentence::K::NAll;
        if (s.basis == 1 && st[1] == nullptr)
          throw DomainError(
              "sentence quantifies over a second structure but none was "
              "given");
        std::vector<WitnessNode> exhausted;
        for (const auto* e : frontier[s.basis]) {
          nbhdEnv[s.slot] = make_binding(*e, s.basis);
          bool sub = eval(s.kids[0]);
          if (sub != isAll) {
            node.holds = sub;
            node.label = (isAll ? "forallN " : "existsN ") + s.var + " = " +
                         e->x.render() + "*R";
            node.kids.push_back(witness(s.kids[0]));
            return node;
          }
          if (!isAll) {
            WitnessNode kid = witness(s.kids[0]);
            kid.label = s.var + " = " + e->x.render() + "*R: " + kid.label;
            exhausted.push_back(std::move(kid));
          }
        }
        node.holds = isAll;
        node.label = (isAll ? "forallN " : "existsN ") + s.var + ": " +
                     (isAll ? "all " : "exhausted ") +
                     std::to_string(frontier[s.basis].size()) +
                     " maximal basis candidates";
        node.kids = std::move(exhausted);
        return node;
      }
      case Sentence::K::EAll:
      case Sentence::K::EEx:
      case Sentence::K::CEx: {
        const bool isAll = s.k == Sentence::K::EAll;
        const bool isConst = s.k == Sentence::K::CEx;
        const auto& dom = isConst ? scales[0] : elems;
        const std::string head = isConst ? "existsC "
                                 : isAll ? "forallE "
                                         : "existsE ";
        std::size_t tried = 0;
        std::vector<WitnessNode> exhausted;
        std::vector<const ScopeEntry*> cands;
        for (const auto& e : dom) {
          if (!isConst && s.scopeSlot >= 0 && !entry_in_nbhd(e, s.scopeSlot))
            continue;
          cands.push_back(&e);
        }
        if (!isConst && s.scopeSlot >= 0)
          for (const auto& e : *nbhdEnv[s.scopeSlot].extra)
            cands.push_back(&e);
        for (const auto* e : cands) {
          elemEnv[s.slot] = e;
          ++tried;
          bool sub = eval(s.kids[0]);
          if (sub != isAll) {
            node.holds = sub;
            node.label = head + s.var + " = " + e->x.render();
            node.kids.push_back(witness(s.kids[0]));
            return node;
          }
          if (isConst) {
            // keep the refutation of every constant candidate
            WitnessNode kid = witness(s.kids[0]);
            kid.label = s.var + " = " + e->x.render() + ": " + kid.label;
            exhausted.push_back(std::move(kid));
          }
        }
        node.holds = isAll;
        node.label = head + s.var + ": " + (isAll ? "all " : "exhausted ") +
                     std::to_string(tried) + " candidates";
        node.kids = std::move(exhausted);
        return node;
      }
      case Sentence::K::And:
      case Sentence::K::Or: {
        bool a = eval(s.kids[0]);
        bool stop = s.k == Sentence::K::And ? !a : a;
        node.label = s.k == Sentence::K::And ? "and" : "or";
        if (stop) {
          node.holds = a;
          node.kids.push_back(witness(s.kids[0]));
          return node;
        }
        bool b = eval(s.kids[1]);
        node.holds = b;
        node.kids.push_back(witness(s.kids[1]));
        return node;
      }
      case Sentence::K::Not:
        node.label = "not";
        node.kids.push_back(witness(s.kids[0]));
        node.holds = !node.kids[0].holds;
        return node;
      case Sentence::K::Implies: {
        bool a = eval(s.kids[0]);
        node.label = "->";
        if (!a) {
          node.holds = true;
          node.kids.push_back(witness(s.kids[0]));
          return node;
        }
        node.kids.push_back(witness(s.kids[1]));
        node.holds = node.kids[0].holds;
        return node;
      }
      case Sentence::K::Mem:
      case Sentence::K::Eq:
      case Sentence::K::Neq: {
        node.holds = s.k == Sentence::K::Mem ? eval_mem(s) : eval_eqneq(s);
        std::ostringstream os;
        print_sent(s, os);
        os << " [";
        append_env(s, os);
        os << "] -> " << (node.holds ? "true" : "false");
        node.label = os.str();
        return node;
      }
    }
    return node;
  }

  void append_env(const Sentence& s, std::ostringstream& os) {
    // render the element bindings the atom actually uses
    std::set<int> slots;
    collect_slots(s.t1, slots);
    collect_slots(s.t2, slots);
    for (const auto& sm : s.sum)
      if (sm.hasCoeff) collect_slots(sm.coeff, slots);
    bool first = true;
    for (int sl : slots) {
      if (elemEnv[sl] == nullptr) continue;
      if (!first) os << ", ";
      os << "slot" << sl << "=" << elemEnv[sl]->x.render();
      first = false;
    }
  }

  static void collect_slots(const Term& t, std::set<int>& out) {
    if (t.k == Term::K::Var) out.insert(t.slot);
    for (const auto& kid : t.kids) collect_slots(kid, out);
  }
};

}  // namespace

EvalResult evaluate(const Sentence& s, const Structure& st,
                    const Structure* st2) {
  PolarityResult pol = check_polarity(s);
  if (!pol.ok)
    throw DomainError("polarity violation at " + pol.path + ": " +
                      pol.message);
  Evaluator ev(st, st2);
  EvalResult out;
  out.holds = ev.eval(s);
  out.witness = ev.witness(s);
  if (out.witness.holds != out.holds)
    throw InternalCheckError("witness construction disagrees with evaluation");
  return out;
}

void replay_witness(const Sentence& s, const Structure& st,
                    const EvalResult& r, const Structure* st2) {
  // re-decide the whole tree: the witness pass re-runs the evaluator along
  // recorded paths, so replaying is re-running and comparing
  Evaluator ev(st, st2);
  if (ev.eval(s) != r.holds)
    throw InternalCheckError("witness replay verdict mismatch");
  WitnessNode again = ev.witness(s);
  std::ostringstream a, b;
  std::function<void(const WitnessNode&, std::ostringstream&)> dump =
      [&](const WitnessNode& n, std::ostringstream& os) {
        os << n.label << "|" << n.holds << ";";
        for (const auto& k : n.kids) dump(k, os);
      };
  dump(again, a);
  dump(r.witness, b);
  if (a.str() != b.str())
    throw InternalCheckError("witness replay produced a different tree");
}

// --------------------------------------------------------------- builtins

std::vector<std::string> builtin_names() {
  return {"nondiscreteness",        "hausdorff",
          "subtractionContinuity",  "scalarContinuity",
          "multiplicationContinuity", "localBoundedness",
          "divisionContinuity",     "Wn",
          "Vn",                     "independence"};
}

Sentence builtin_sentence(const std::string& name, const FieldDesc& field,
                          int n, const std::vector<FieldElem>& qs) {
  auto mk = [&](const std::string& text) {
    return parse_sentence(text, field);
  };
  if (name == "nondiscreteness")
    return mk("forallN U . existsE x in U . x != 0");
  if (name == "hausdorff")
    return mk("forallE x in Scope . x != 0 -> (existsN V . not (x in V))");
  if (name == "subtractionContinuity")
    return mk("forallN U . existsN V . forallE x in V . forallE y in V . "
              "x - y in U");
  if (name == "scalarContinuity")
    return mk("forallN U . forallE a in Scope . existsN V . "
              "forallE x in V . a*x in U");
  if (name == "multiplicationContinuity")
    return mk("forallN U . existsN V . forallE x in V . forallE y in V . "
              "x*y in U");
  if (name == "localBoundedness")
    return mk("existsN U . forallN V . existsC c . forallE x in U . "
              "c*x in V");
  if (name == "divisionContinuity")
    return mk("forallN U . existsN V . forallE x in V . existsE y in U . "
              "(1+x)*(1+y) = 1");
  if (name == "Wn") {
    if (n < 1 || n + 1 > static_cast<int>(kMaxSummands))
      throw DomainError("Wn needs 1 <= n <= 7");
    std::ostringstream os;
    os << "forallN U . existsC c . ";
    for (int i = 1; i <= n + 1; ++i) os << "forallE x" << i << " in Scope . ";
    for (int i = 1; i <= n + 1; ++i) {
      if (i > 1) os << " or ";
      os << "(x" << i << " in ";
      bool first = true;
      for (int j = 1; j <= n + 1; ++j) {
        if (j == i) continue;
        if (!first) os << " + ";
        os << "c*x" << j << "*U";
        first = false;
      }
      os << ")";
    }
    return mk(os.str());
  }
  if (name == "Vn") {
    if (qs.empty()) throw DomainError("Vn needs at least one q");
    for (std::size_t i = 0; i < qs.size(); ++i)
      for (std::size_t j = i + 1; j < qs.size(); ++j)
        if (qs[i] == qs[j]) throw DomainError("duplicate q in Vn");
    std::ostringstream os;
    os << "forallN U . existsC c . forallE x in Scope . (c*x in U)";
    for (const auto& q : qs)
      os << " or (c*(1/(x - (" << q.render() << "))) in U)";
    return mk(os.str());
  }
  if (name == "independence")
    return mk("forallN U . forallN2 V . forallE z in Scope . "
              "existsE x in U . existsE y in V . x + y = z");
  throw DomainError("unknown builtin sentence '" + name + "'");
}

}  // namespace mv
