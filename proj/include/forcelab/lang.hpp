#pragma once

// First-order language of set theory with one binary relation symbol `in`
// plus equality. Grammar (precedence ~ > & > | > -> > <->, `->` is
// right-associative, `&`/`|`/`<->` chain to the left):
//
//   formula := iff | quant
//   quant   := ("forall" | "exists") var ["in" term] "." formula
//   iff     := imp {"<->" imp}
//   imp     := or ["->" imp]
//   or      := and {"|" and}
//   and     := unary {"&" unary}
//   unary   := "~" unary | atom | "(" formula ")"
//   atom    := term ("=" | "in" | "sub") term
//   term    := identifier
//
// An identifier bound by an enclosing quantifier parses as a variable;
// anything else parses as a constant, resolved against a name environment
// at evaluation time. `t sub u` is sugar and is expanded while parsing into
// `forall w . (w in t -> w in u)` with a fresh w.

#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "forcelab/errors.hpp"

namespace forcelab {

struct Term {
  enum class Kind { Var, Const };
  Kind kind = Kind::Const;
  std::string name;

  static Term var(std::string n) { return {Kind::Var, std::move(n)}; }
  static Term constant(std::string n) { return {Kind::Const, std::move(n)}; }

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.name == b.name;
  }
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
public:
  enum class Kind {
    Eq,             // lhs = rhs
    Mem,            // lhs in rhs
    Not,            // ~child
    And,            // left & right
    Or,             // left | right
    Implies,        // left -> right
    Iff,            // left <-> right
    Exists,         // exists var . body
    Forall,         // forall var . body
    BoundedExists,  // exists var in bound . body
    BoundedForall,  // forall var in bound . body
  };

  Kind kind;
  Term lhs, rhs;          // atoms
  FormulaPtr left, right;  // connectives; Not uses left only
  std::string var;         // quantifiers
  Term bound;              // bounded quantifiers
  FormulaPtr body;

  static FormulaPtr eq(Term l, Term r);
  static FormulaPtr mem(Term l, Term r);
  static FormulaPtr negation(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr disj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr implies(FormulaPtr l, FormulaPtr r);
  static FormulaPtr iff(FormulaPtr l, FormulaPtr r);
  static FormulaPtr exists(std::string var, FormulaPtr body);
  static FormulaPtr forall(std::string var, FormulaPtr body);
  static FormulaPtr exists_in(std::string var, Term bound, FormulaPtr body);
  static FormulaPtr forall_in(std::string var, Term bound, FormulaPtr body);

  bool is_atom() const { return kind == Kind::Eq || kind == Kind::Mem; }
  bool is_quantifier() const {
    return kind == Kind::Exists || kind == Kind::Forall || kind == Kind::BoundedExists ||
           kind == Kind::BoundedForall;
  }
};

// Open mode: unbound identifiers become constants.
FormulaPtr parse_formula(std::string_view text);

// Sentence mode: additionally rejects identifiers that are neither bound
// variables nor members of `constants`.
FormulaPtr parse_sentence(std::string_view text, const std::set<std::string>& constants);

// Canonical parenthesized form; parsing it yields a structurally equal AST
// (for formulas without free variables).
std::string to_string(const Formula& f);

// Rewrites Implies and Iff away. The result contains only atoms, Not, And,
// Or and (bounded) quantifiers. Idempotent.
FormulaPtr desugar(const FormulaPtr& f);

std::set<std::string> free_vars(const Formula& f);

// Identifiers that must name universe members (parsed constants).
std::set<std::string> constant_names(const Formula& f);

// Replaces free occurrences of `var` by `replacement`, renaming bound
// variables when they would capture it.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& replacement);

bool equal(const Formula& a, const Formula& b);

// Seeded random sentence generator, used by the self-check command and the
// test corpora. Deterministic for a given engine state.
struct SentenceGenOptions {
  int max_depth = 3;
  std::vector<std::string> constants;  // must be nonempty
  bool allow_bounded = true;
  bool allow_sugar = true;  // Implies / Iff nodes
};
FormulaPtr random_sentence(std::mt19937& rng, const SentenceGenOptions& options);

}  // namespace forcelab
