#ifndef GAT_AST_HPP
#define GAT_AST_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gat {

// Rule names, constructor names and metavariable names are plain strings.
// Equality is exact string equality; each language has a single namespace.
using Name = std::string;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A term is a finite first-order tree. Var nodes refer to metavariables
// declared in the ambient Ctx; there are no binders at this level, so
// structural equality is the term equality.
struct Term {
  enum class Kind : uint8_t { Var, Con };
  Kind kind = Kind::Con;
  Name head;               // metavariable name (Var) or constructor name (Con)
  std::vector<Term> args;  // always empty for Var

  static Term var(Name n) {
    Term t;
    t.kind = Kind::Var;
    t.head = std::move(n);
    return t;
  }
  static Term con(Name head, std::vector<Term> args = {}) {
    Term t;
    t.kind = Kind::Con;
    t.head = std::move(head);
    t.args = std::move(args);
    return t;
  }
  bool is_var() const { return kind == Kind::Var; }
  bool operator==(const Term&) const = default;
};

// Sorts have the same spine as Con terms but are never variables.
struct Sort {
  Name head;
  std::vector<Term> args;

  Sort() = default;
  Sort(Name h, std::vector<Term> a = {}) : head(std::move(h)), args(std::move(a)) {}
  bool operator==(const Sort&) const = default;
};

// Ordered metavariable declarations, oldest first. Entry i's sort may only
// mention metavariables declared at indices < i.
struct Ctx {
  std::vector<std::pair<Name, Sort>> entries;

  const Sort* find(const Name& n) const {
    for (const auto& [name, sort] : entries)
      if (name == n) return &sort;
    return nullptr;
  }
  bool contains(const Name& n) const { return find(n) != nullptr; }
  size_t size() const { return entries.size(); }
  void push(Name n, Sort s) { entries.emplace_back(std::move(n), std::move(s)); }
  bool operator==(const Ctx&) const = default;
};

// The four GAT rule forms. Equations carry no explicit args.
struct Rule {
  enum class Kind : uint8_t { Sort, Term, SortEq, TermEq };
  Kind kind = Kind::Sort;
  Ctx ctx;
  std::vector<Name> explicit_args;  // Sort/Term rules; subset of ctx names, in order
  Sort sort;                        // Term rules: result sort; TermEq: equation sort
  Term lhs, rhs;                    // TermEq
  Sort lhs_sort, rhs_sort;          // SortEq

  static Rule sort_rule(Ctx c, std::vector<Name> args) {
    Rule r;
    r.kind = Kind::Sort;
    r.ctx = std::move(c);
    r.explicit_args = std::move(args);
    return r;
  }
  static Rule term_rule(Ctx c, std::vector<Name> args, Sort s) {
    Rule r;
    r.kind = Kind::Term;
    r.ctx = std::move(c);
    r.explicit_args = std::move(args);
    r.sort = std::move(s);
    return r;
  }
  static Rule term_eq_rule(Ctx c, Term l, Term rr, Sort s) {
    Rule r;
    r.kind = Kind::TermEq;
    r.ctx = std::move(c);
    r.lhs = std::move(l);
    r.rhs = std::move(rr);
    r.sort = std::move(s);
    return r;
  }
  static Rule sort_eq_rule(Ctx c, Sort l, Sort rr) {
    Rule r;
    r.kind = Kind::SortEq;
    r.ctx = std::move(c);
    r.lhs_sort = std::move(l);
    r.rhs_sort = std::move(rr);
    return r;
  }
  bool operator==(const Rule&) const = default;
};

// A language is an ordered, name-keyed rule list, oldest first. Each rule is
// well-formed under the strict prefix before it (checked by the elaborator,
// not here).
struct Lang {
  std::vector<std::pair<Name, Rule>> rules;

  size_t size() const { return rules.size(); }
  std::optional<size_t> position(const Name& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const Rule* find(const Name& n) const {
    auto p = position(n);
    return p ? &rules[*p].second : nullptr;
  }
  void push(Name n, Rule r) {
    if (index_.count(n)) throw Error("DuplicateName: " + n);
    index_[n] = rules.size();
    rules.emplace_back(std::move(n), std::move(r));
  }
  bool operator==(const Lang& o) const { return rules == o.rules; }

 private:
  std::map<Name, size_t> index_;
};

// Finite map from metavariable names to terms. Application is capture-free
// by construction since terms have no binders.
struct MetaSubst {
  std::map<Name, Term> map;

  const Term* find(const Name& n) const {
    auto it = map.find(n);
    return it == map.end() ? nullptr : &it->second;
  }
  void set(Name n, Term t) { map[std::move(n)] = std::move(t); }
  bool empty() const { return map.empty(); }
  bool operator==(const MetaSubst&) const = default;
};

// A read-only prefix view of a language; rule k of a language is checked
// against the view of the first k rules.
struct LangView {
  const Lang* lang = nullptr;
  size_t limit = 0;

  LangView() = default;
  LangView(const Lang& l) : lang(&l), limit(l.size()) {}
  LangView(const Lang& l, size_t lim) : lang(&l), limit(lim) {}

  const Rule* find(const Name& n) const {
    if (!lang) return nullptr;
    auto p = lang->position(n);
    if (!p || *p >= limit) return nullptr;
    return &lang->rules[*p].second;
  }
  size_t size() const { return limit; }
  const std::pair<Name, Rule>& at(size_t i) const { return lang->rules[i]; }
};

}  // namespace gat

#endif
