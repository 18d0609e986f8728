#include "gat/dsl.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "gat/kernel.hpp"

#include <json.hpp>

namespace gat {

const LangDef& Registry::lang(const Name& n) const {
  auto it = langs.find(n);
  if (it == langs.end()) throw Error("unknown language: " + n);
  return it->second;
}

const CompilerDef& Registry::compiler(const Name& n) const {
  auto it = compilers.find(n);
  if (it == compilers.end()) throw Error("unknown compiler: " + n);
  return it->second;
}

const std::map<Name, EqProof>& Registry::proofs_for(const Name& compiler) const {
  static const std::map<Name, EqProof> empty;
  auto it = manual_proofs.find(compiler);
  return it == manual_proofs.end() ? empty : it->second;
}

// ---------------------------------------------------------------------------
// Terms

SurfaceTerm parse_surface(const Sexpr& e) {
  if (e.is_symbol()) return SurfaceTerm::symbol(e.text);
  if (!e.is_list() || e.items.empty() || !e.items[0].is_symbol())
    throw ParseError("expected a term", e.line, e.col);
  std::vector<SurfaceTerm> args;
  for (size_t i = 1; i < e.items.size(); ++i) args.push_back(parse_surface(e.items[i]));
  return SurfaceTerm::apply(e.items[0].text, std::move(args));
}

SurfaceTerm parse_surface_sort(const Sexpr& e) {
  if (e.is_symbol()) return SurfaceTerm::apply(e.text, {});
  return parse_surface(e);
}

Sexpr print_surface(const SurfaceTerm& t) {
  if (!t.applied) return Sexpr::symbol(t.head);
  std::vector<Sexpr> items{Sexpr::symbol(t.head)};
  for (const SurfaceTerm& a : t.args) items.push_back(print_surface(a));
  return Sexpr::list(std::move(items));
}

Term parse_term_full(const Sexpr& e) {
  if (e.is_symbol()) return Term::var(e.text);
  if (!e.is_list() || e.items.empty() || !e.items[0].is_symbol())
    throw ParseError("expected a term", e.line, e.col);
  std::vector<Term> args;
  for (size_t i = 1; i < e.items.size(); ++i) args.push_back(parse_term_full(e.items[i]));
  return Term::con(e.items[0].text, std::move(args));
}

Sort parse_sort_full(const Sexpr& e) {
  if (e.is_symbol()) return Sort(e.text);
  Term t = parse_term_full(e);
  if (t.is_var()) throw ParseError("sorts are never variables", e.line, e.col);
  return Sort(t.head, std::move(t.args));
}

Sexpr print_term_full(const Term& t) {
  if (t.is_var()) return Sexpr::symbol(t.head);
  std::vector<Sexpr> items{Sexpr::symbol(t.head)};
  for (const Term& a : t.args) items.push_back(print_term_full(a));
  return Sexpr::list(std::move(items));
}

Sexpr print_sort_full(const Sort& s) {
  std::vector<Sexpr> items{Sexpr::symbol(s.head)};
  for (const Term& a : s.args) items.push_back(print_term_full(a));
  return Sexpr::list(std::move(items));
}

// ---------------------------------------------------------------------------
// Proof trees

static MetaSubst parse_inst(const Sexpr& e) {
  if (!e.tagged("inst")) throw ParseError("expected (inst ...)", e.line, e.col);
  MetaSubst inst;
  for (size_t i = 1; i < e.items.size(); ++i) {
    const Sexpr& pair = e.at(i);
    if (!pair.is_list() || pair.size() != 2 || !pair.at(0).is_symbol())
      throw ParseError("expected (name term)", pair.line, pair.col);
    inst.set(pair.at(0).text, parse_term_full(pair.at(1)));
  }
  return inst;
}

EqProof parse_proof(const Sexpr& e) {
  if (!e.is_list() || e.items.empty() || !e.items[0].is_symbol())
    throw ParseError("expected a proof form", e.line, e.col);
  const std::string& tag = e.items[0].text;
  if (tag == "refl") return EqProof::refl(parse_term_full(e.at(1)));
  if (tag == "sym") return EqProof::sym(parse_proof(e.at(1)));
  if (tag == "trans") {
    // (trans p q r ...) folds left
    EqProof p = parse_proof(e.at(1));
    for (size_t i = 2; i < e.items.size(); ++i)
      p = EqProof::trans(std::move(p), parse_proof(e.at(i)));
    return p;
  }
  if (tag == "cong") {
    std::vector<EqProof> kids;
    for (size_t i = 2; i < e.items.size(); ++i) kids.push_back(parse_proof(e.at(i)));
    return EqProof::cong(e.at(1).text, std::move(kids));
  }
  if (tag == "axiom") return EqProof::axiom(e.at(1).text, parse_inst(e.at(2)));
  if (tag == "convsort") return EqProof::conv_sort(parse_sort_proof(e.at(1)), parse_proof(e.at(2)));
  throw ParseError("unknown proof form " + tag, e.line, e.col);
}

SortEqProof parse_sort_proof(const Sexpr& e) {
  if (!e.is_list() || e.items.empty() || !e.items[0].is_symbol())
    throw ParseError("expected a sort proof form", e.line, e.col);
  const std::string& tag = e.items[0].text;
  if (tag == "srefl") return SortEqProof::refl(parse_sort_full(e.at(1)));
  if (tag == "ssym") return SortEqProof::sym(parse_sort_proof(e.at(1)));
  if (tag == "strans")
    return SortEqProof::trans(parse_sort_proof(e.at(1)), parse_sort_proof(e.at(2)));
  if (tag == "scong") {
    std::vector<EqProof> kids;
    for (size_t i = 2; i < e.items.size(); ++i) kids.push_back(parse_proof(e.at(i)));
    return SortEqProof::cong(e.at(1).text, std::move(kids));
  }
  if (tag == "saxiom") return SortEqProof::axiom(e.at(1).text, parse_inst(e.at(2)));
  throw ParseError("unknown sort proof form " + tag, e.line, e.col);
}

static Sexpr print_inst(const MetaSubst& inst) {
  std::vector<Sexpr> items{Sexpr::symbol("inst")};
  for (const auto& [n, t] : inst.map)
    items.push_back(Sexpr::list({Sexpr::symbol(n), print_term_full(t)}));
  return Sexpr::list(std::move(items));
}

Sexpr print_proof(const EqProof& p) {
  switch (p.kind) {
    case EqProof::Kind::Refl:
      return Sexpr::list({Sexpr::symbol("refl"), print_term_full(p.base)});
    case EqProof::Kind::Sym:
      return Sexpr::list({Sexpr::symbol("sym"), print_proof(p.kids[0])});
    case EqProof::Kind::Trans:
      return Sexpr::list(
          {Sexpr::symbol("trans"), print_proof(p.kids[0]), print_proof(p.kids[1])});
    case EqProof::Kind::Cong: {
      std::vector<Sexpr> items{Sexpr::symbol("cong"), Sexpr::symbol(p.head)};
      for (const EqProof& k : p.kids) items.push_back(print_proof(k));
      return Sexpr::list(std::move(items));
    }
    case EqProof::Kind::Axiom:
      return Sexpr::list({Sexpr::symbol("axiom"), Sexpr::symbol(p.head), print_inst(p.inst)});
    case EqProof::Kind::ConvSort:
      return Sexpr::list(
          {Sexpr::symbol("convsort"), print_sort_proof(*p.conv), print_proof(p.kids[0])});
  }
  throw Error("corrupt proof");
}

Sexpr print_sort_proof(const SortEqProof& p) {
  switch (p.kind) {
    case SortEqProof::Kind::Refl:
      return Sexpr::list({Sexpr::symbol("srefl"), print_sort_full(p.base)});
    case SortEqProof::Kind::Sym:
      return Sexpr::list({Sexpr::symbol("ssym"), print_sort_proof(p.kids[0])});
    case SortEqProof::Kind::Trans:
      return Sexpr::list({Sexpr::symbol("strans"), print_sort_proof(p.kids[0]),
                          print_sort_proof(p.kids[1])});
    case SortEqProof::Kind::Cong: {
      std::vector<Sexpr> items{Sexpr::symbol("scong"), Sexpr::symbol(p.head)};
      for (const EqProof& k : p.term_kids) items.push_back(print_proof(k));
      return Sexpr::list(std::move(items));
    }
    case SortEqProof::Kind::Axiom:
      return Sexpr::list({Sexpr::symbol("saxiom"), Sexpr::symbol(p.head), print_inst(p.inst)});
  }
  throw Error("corrupt sort proof");
}

// ---------------------------------------------------------------------------
// Loader

namespace {

const Sexpr* field(const Sexpr& form, const std::string& tag) {
  for (const Sexpr& it : form.items)
    if (it.tagged(tag)) return &it;
  return nullptr;
}

Ctx parse_ctx(const Sexpr& e, LangView L) {
  if (!e.tagged("ctx")) throw ParseError("expected (ctx ...)", e.line, e.col);
  Ctx out;
  for (size_t i = 1; i < e.items.size(); ++i) {
    const Sexpr& entry = e.at(i);
    if (!entry.is_list() || entry.size() != 2 || !entry.at(0).is_symbol())
      throw ParseError("expected (name sort)", entry.line, entry.col);
    Name n = entry.at(0).text;
    if (out.contains(n)) throw ParseError("duplicate metavariable " + n, entry.line, entry.col);
    Sort s = elaborate_sort(L, out, parse_surface_sort(entry.at(1)));
    out.push(n, s);
  }
  return out;
}

std::vector<Name> parse_args(const Sexpr& e, const char* tag = "args") {
  if (!e.tagged(tag)) throw ParseError(std::string("expected (") + tag + " ...)", e.line, e.col);
  std::vector<Name> out;
  for (size_t i = 1; i < e.items.size(); ++i) out.push_back(e.at(i).text);
  return out;
}

SlotKind parse_slot(const Sexpr& e) {
  if (e.is_symbol("E")) return SlotKind::Hole;
  if (e.is_symbol("e")) return SlotKind::Expr;
  if (e.is_symbol("v")) return SlotKind::Value;
  throw ParseError("slot kind must be E, e or v", e.line, e.col);
}

}  // namespace

void Loader::do_lang(const Sexpr& form, const std::string& filename) {
  LangDef def;
  def.name = form.at(1).text;
  def.file = filename;
  if (reg.langs.count(def.name)) throw Error("language " + def.name + " defined twice");
  size_t first_item = 2;
  if (form.size() > 2 && form.at(2).tagged("over")) {
    for (size_t i = 1; i < form.at(2).size(); ++i) def.over.push_back(form.at(2).at(i).text);
    first_item = 3;
  }
  // the prefix is the concatenation of the named blocks' own rules, in the
  // order written; authors list the complete chain explicitly
  Lang cur;
  for (const Name& p : def.over) cur = lang_append(cur, reg.lang(p).ext);
  size_t prefix_len = cur.size();

  for (size_t i = first_item; i < form.size(); ++i) {
    const Sexpr& item = form.at(i);
    LangView L(cur);
    try {
      if (item.tagged("sort")) {
        Name n = item.at(1).text;
        Ctx c = parse_ctx(item.at(2), L);
        Rule r = Rule::sort_rule(std::move(c), parse_args(item.at(3)));
        cur.push(n, std::move(r));
      } else if (item.tagged("term")) {
        Name n = item.at(1).text;
        Ctx c = parse_ctx(item.at(2), L);
        std::vector<Name> args = parse_args(item.at(3));
        Sort s = elaborate_sort(L, c, parse_surface_sort(item.at(4)));
        cur.push(n, Rule::term_rule(std::move(c), std::move(args), std::move(s)));
      } else if (item.tagged("eq")) {
        // (eq n (ctx ...) lhs = rhs : sort)
        Name n = item.at(1).text;
        Ctx c = parse_ctx(item.at(2), L);
        if (!item.at(4).is_symbol("=") || !item.at(6).is_symbol(":"))
          throw ParseError("expected (eq n (ctx) lhs = rhs : sort)", item.line, item.col);
        Sort s = elaborate_sort(L, c, parse_surface_sort(item.at(7)));
        Term lhs = elaborate(L, c, parse_surface(item.at(3)), s);
        Term rhs = elaborate(L, c, parse_surface(item.at(5)), s);
        cur.push(n, Rule::term_eq_rule(std::move(c), std::move(lhs), std::move(rhs), std::move(s)));
      } else if (item.tagged("sorteq")) {
        // (sorteq n (ctx ...) lhs = rhs)
        Name n = item.at(1).text;
        Ctx c = parse_ctx(item.at(2), L);
        if (!item.at(4).is_symbol("="))
          throw ParseError("expected (sorteq n (ctx) lhs = rhs)", item.line, item.col);
        Sort lhs = elaborate_sort(L, c, parse_surface_sort(item.at(3)));
        Sort rhs = elaborate_sort(L, c, parse_surface_sort(item.at(5)));
        cur.push(n, Rule::sort_eq_rule(std::move(c), std::move(lhs), std::move(rhs)));
      } else if (item.tagged("@gensubst")) {
        for (auto& [n, r] : gen_subst_eqs(cur, item.at(1).text)) cur.push(n, std::move(r));
      } else if (item.tagged("@evalctx")) {
        EvalCtxSpec spec;
        size_t j = 1;
        if (item.size() > 1 && item.at(1).tagged("core")) {
          spec.ectx_sort = item.at(1).at(1).text;
          spec.hole = item.at(1).at(2).text;
          spec.plug = item.at(1).at(3).text;
          spec.ret = item.at(1).at(4).text;
          j = 2;
        }
        for (; j < item.size(); ++j) {
          const Sexpr& ent = item.at(j);
          if (!ent.tagged("entry")) throw ParseError("expected (entry ...)", ent.line, ent.col);
          EvalCtxEntry ee;
          ee.name = ent.at(1).text;
          ee.base = ent.at(2).text;
          for (size_t k = 3; k < ent.size(); ++k) ee.slots.push_back(parse_slot(ent.at(k)));
          spec.entries.push_back(std::move(ee));
        }
        Lang gen = gen_eval_ctx(cur, spec);
        for (const auto& [n, r] : gen.rules) cur.push(n, r);
      } else {
        throw ParseError("unknown language item", item.line, item.col);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw Error(filename + ":" + item.where() + ": in " + def.name + ": " + e.what());
    }
  }
  for (size_t i = prefix_len; i < cur.size(); ++i)
    def.ext.push(cur.rules[i].first, cur.rules[i].second);
  def.full = std::move(cur);
  reg.langs.emplace(def.name, std::move(def));
}

void Loader::do_compiler(const Sexpr& form, const std::string& filename) {
  CompilerDef def;
  def.name = form.at(1).text;
  def.file = filename;
  if (reg.compilers.count(def.name)) throw Error("compiler " + def.name + " defined twice");
  if (const Sexpr* f = field(form, "source")) def.source = f->at(1).text;
  if (const Sexpr* f = field(form, "target")) def.target = f->at(1).text;
  if (const Sexpr* f = field(form, "pre")) def.pre = f->at(1).text;
  if (const Sexpr* f = field(form, "domain")) def.domain_full = f->at(1).is_symbol("full");
  if (def.source.empty() || def.target.empty())
    throw Error("compiler " + def.name + " needs (source ...) and (target ...)");

  const LangDef& src = reg.lang(def.source);
  const LangDef& tgt = reg.lang(def.target);
  Compiler visible;
  if (!def.pre.empty()) visible = reg.compiler(def.pre).full;
  Compiler pre_full = visible;
  LangView T(tgt.full);

  for (const Sexpr& item : form.items) {
    if (!item.tagged("case")) continue;
    Name rn = item.at(1).text;
    const Rule* r = src.full.find(rn);
    if (!r) throw Error(def.name + ": no source rule " + rn);
    std::vector<Name> params = parse_args(item.at(2), "params");
    {
      std::vector<Name> want;
      for (const auto& [x, s] : r->ctx.entries) want.push_back(x);
      if (params != want)
        throw Error(def.name + ": case " + rn +
                    " params must list the full source context, in order");
    }
    try {
      Ctx cc = compile(visible, r->ctx);
      CompilerCase c;
      if (r->kind == Rule::Kind::Sort) {
        c = CompilerCase::sort_case(params, elaborate_sort(T, cc, parse_surface_sort(item.at(3))));
      } else if (r->kind == Rule::Kind::Term) {
        Sort expected = compile(visible, r->sort);
        c = CompilerCase::term_case(params,
                                    elaborate(T, cc, parse_surface(item.at(3)), expected));
      } else {
        throw Error("no cases for equation rules");
      }
      visible.push(rn, c);
      def.ext.push(rn, std::move(c));
    } catch (const Error& e) {
      throw Error(filename + ":" + item.where() + ": case " + rn + ": " + e.what());
    }
  }
  def.full = std::move(visible);
  reg.compilers.emplace(def.name, std::move(def));
}

void Loader::do_proofs(const Sexpr& form) {
  Name cmp = form.at(1).text;
  auto& m = reg.manual_proofs[cmp];
  for (size_t i = 2; i < form.size(); ++i) {
    const Sexpr& item = form.at(i);
    if (!item.tagged("proof")) throw ParseError("expected (proof rule tree)", item.line, item.col);
    m.emplace(item.at(1).text, parse_proof(item.at(2)));
  }
}

void Loader::do_paramspec(const Sexpr& form) {
  ParamSpec spec;
  Name name = form.at(1).text;
  for (const Sexpr& item : form.items) {
    if (item.tagged("param")) {
      spec.param_name = item.at(1).text;
      spec.param_sort = parse_sort_full(item.at(2));
      if (item.size() > 3 && item.at(3).tagged("from")) spec.param_lang = item.at(3).at(1).text;
    } else if (item.tagged("mark")) {
      for (size_t i = 1; i < item.size(); ++i) spec.marked.insert(item.at(i).text);
    } else if (item.tagged("positions")) {
      for (size_t i = 1; i < item.size(); ++i)
        spec.insert_at[item.at(i).at(0).text] = std::stoul(item.at(i).at(1).text);
    }
  }
  reg.paramspecs.emplace(name, std::move(spec));
}

void Loader::load_text(const std::string& text, const std::string& filename) {
  for (const Sexpr& form : parse_sexprs(text)) {
    if (form.tagged("lang"))
      do_lang(form, filename);
    else if (form.tagged("compiler"))
      do_compiler(form, filename);
    else if (form.tagged("proofs"))
      do_proofs(form);
    else if (form.tagged("@parameterize"))
      do_paramspec(form);
    else
      throw ParseError("unknown top-level form", form.line, form.col);
  }
}

void Loader::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  load_text(ss.str(), path);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

Sexpr print_ctx(const Ctx& c, LangView L) {
  std::vector<Sexpr> items{Sexpr::symbol("ctx")};
  for (const auto& [n, s] : c.entries)
    items.push_back(Sexpr::list({Sexpr::symbol(n), print_surface(erase_sort(L, s))}));
  return Sexpr::list(std::move(items));
}

Sexpr print_arg_names(const std::vector<Name>& args, const char* tag = "args") {
  std::vector<Sexpr> items{Sexpr::symbol(tag)};
  for (const Name& a : args) items.push_back(Sexpr::symbol(a));
  return Sexpr::list(std::move(items));
}

}  // namespace

Sexpr print_lang(const LangDef& def, LangView L) {
  std::vector<Sexpr> items{Sexpr::symbol("lang"), Sexpr::symbol(def.name)};
  {
    std::vector<Sexpr> over{Sexpr::symbol("over")};
    for (const Name& p : def.over) over.push_back(Sexpr::symbol(p));
    items.push_back(Sexpr::list(std::move(over)));
  }
  for (const auto& [n, r] : def.ext.rules) {
    switch (r.kind) {
      case Rule::Kind::Sort:
        items.push_back(Sexpr::list({Sexpr::symbol("sort"), Sexpr::symbol(n),
                                     print_ctx(r.ctx, L), print_arg_names(r.explicit_args)}));
        break;
      case Rule::Kind::Term:
        items.push_back(Sexpr::list({Sexpr::symbol("term"), Sexpr::symbol(n),
                                     print_ctx(r.ctx, L), print_arg_names(r.explicit_args),
                                     print_surface(erase_sort(L, r.sort))}));
        break;
      case Rule::Kind::TermEq:
        items.push_back(Sexpr::list({Sexpr::symbol("eq"), Sexpr::symbol(n), print_ctx(r.ctx, L),
                                     print_surface(erase(L, r.lhs)), Sexpr::symbol("="),
                                     print_surface(erase(L, r.rhs)), Sexpr::symbol(":"),
                                     print_surface(erase_sort(L, r.sort))}));
        break;
      case Rule::Kind::SortEq:
        items.push_back(Sexpr::list({Sexpr::symbol("sorteq"), Sexpr::symbol(n),
                                     print_ctx(r.ctx, L),
                                     print_surface(erase_sort(L, r.lhs_sort)), Sexpr::symbol("="),
                                     print_surface(erase_sort(L, r.rhs_sort))}));
        break;
    }
  }
  return Sexpr::list(std::move(items));
}

Sexpr print_compiler(const CompilerDef& def, LangView target) {
  std::vector<Sexpr> items{Sexpr::symbol("compiler"), Sexpr::symbol(def.name)};
  items.push_back(Sexpr::list({Sexpr::symbol("source"), Sexpr::symbol(def.source)}));
  items.push_back(Sexpr::list({Sexpr::symbol("target"), Sexpr::symbol(def.target)}));
  if (!def.pre.empty())
    items.push_back(Sexpr::list({Sexpr::symbol("pre"), Sexpr::symbol(def.pre)}));
  for (const auto& [n, c] : def.ext.cases) {
    Sexpr out = c.is_sort_case ? print_surface(erase_sort(target, c.out_sort))
                               : print_surface(erase(target, c.out_term));
    items.push_back(Sexpr::list({Sexpr::symbol("case"), Sexpr::symbol(n),
                                 print_arg_names(c.params, "params"), std::move(out)}));
  }
  return Sexpr::list(std::move(items));
}

std::string proof_digest(const EqProof& p) {
  std::string s = print_sexpr(print_proof(p));
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

std::string report_json(const Name& pass, const DischargeReport& rep) {
  nlohmann::json j;
  j["schema"] = 1;
  j["pass"] = pass;
  j["clean"] = rep.clean();
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [n, r] : rep.entries) {
    nlohmann::json e;
    e["rule"] = n;
    e["status"] = r.status == ObStatus::Auto     ? "auto"
                  : r.status == ObStatus::Manual ? "manual"
                                                 : "open";
    e["steps"] = r.steps;
    if (r.proof) e["proof_digest"] = proof_digest(*r.proof);
    if (!r.reason.empty()) e["reason"] = r.reason;
    if (r.replayed) e["replayed"] = true;
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j.dump(2);
}

}  // namespace gat
