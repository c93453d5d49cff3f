#include "forcelab/lang.hpp"

#include <algorithm>
#include <cctype>

namespace forcelab {

namespace {

FormulaPtr node(Formula f) { return std::make_shared<Formula>(std::move(f)); }

}  // namespace

FormulaPtr Formula::eq(Term l, Term r) {
  Formula f;
  f.kind = Kind::Eq;
  f.lhs = std::move(l);
  f.rhs = std::move(r);
  return node(std::move(f));
}

FormulaPtr Formula::mem(Term l, Term r) {
  Formula f;
  f.kind = Kind::Mem;
  f.lhs = std::move(l);
  f.rhs = std::move(r);
  return node(std::move(f));
}

FormulaPtr Formula::negation(FormulaPtr child) {
  Formula f;
  f.kind = Kind::Not;
  f.left = std::move(child);
  return node(std::move(f));
}

namespace {

FormulaPtr binary(Formula::Kind kind, FormulaPtr l, FormulaPtr r) {
  Formula f;
  f.kind = kind;
  f.left = std::move(l);
  f.right = std::move(r);
  return node(std::move(f));
}

FormulaPtr quantifier(Formula::Kind kind, std::string var, FormulaPtr body) {
  Formula f;
  f.kind = kind;
  f.var = std::move(var);
  f.body = std::move(body);
  return node(std::move(f));
}

FormulaPtr bounded(Formula::Kind kind, std::string var, Term bound, FormulaPtr body) {
  Formula f;
  f.kind = kind;
  f.var = std::move(var);
  f.bound = std::move(bound);
  f.body = std::move(body);
  return node(std::move(f));
}

}  // namespace

FormulaPtr Formula::conj(FormulaPtr l, FormulaPtr r) { return binary(Kind::And, std::move(l), std::move(r)); }
FormulaPtr Formula::disj(FormulaPtr l, FormulaPtr r) { return binary(Kind::Or, std::move(l), std::move(r)); }
FormulaPtr Formula::implies(FormulaPtr l, FormulaPtr r) { return binary(Kind::Implies, std::move(l), std::move(r)); }
FormulaPtr Formula::iff(FormulaPtr l, FormulaPtr r) { return binary(Kind::Iff, std::move(l), std::move(r)); }
FormulaPtr Formula::exists(std::string var, FormulaPtr body) { return quantifier(Kind::Exists, std::move(var), std::move(body)); }
FormulaPtr Formula::forall(std::string var, FormulaPtr body) { return quantifier(Kind::Forall, std::move(var), std::move(body)); }
FormulaPtr Formula::exists_in(std::string var, Term b, FormulaPtr body) { return bounded(Kind::BoundedExists, std::move(var), std::move(b), std::move(body)); }
FormulaPtr Formula::forall_in(std::string var, Term b, FormulaPtr body) { return bounded(Kind::BoundedForall, std::move(var), std::move(b), std::move(body)); }

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok {
  Ident,
  KwForall,
  KwExists,
  KwIn,
  KwSub,
  Dot,
  Tilde,
  Amp,
  Pipe,
  Arrow,
  DoubleArrow,
  Equals,
  LParen,
  RParen,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) {
      return {Tok::End, "", line, col};
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        advance();
      }
      std::string word(text_.substr(start, pos_ - start));
      if (word == "forall") return {Tok::KwForall, word, line, col};
      if (word == "exists") return {Tok::KwExists, word, line, col};
      if (word == "in") return {Tok::KwIn, word, line, col};
      if (word == "sub") return {Tok::KwSub, word, line, col};
      return {Tok::Ident, word, line, col};
    }
    switch (c) {
      case '.': advance(); return {Tok::Dot, ".", line, col};
      case '~': advance(); return {Tok::Tilde, "~", line, col};
      case '&': advance(); return {Tok::Amp, "&", line, col};
      case '|': advance(); return {Tok::Pipe, "|", line, col};
      case '=': advance(); return {Tok::Equals, "=", line, col};
      case '(': advance(); return {Tok::LParen, "(", line, col};
      case ')': advance(); return {Tok::RParen, ")", line, col};
      case '-':
        if (text_.substr(pos_, 2) == "->") {
          advance(); advance();
          return {Tok::Arrow, "->", line, col};
        }
        break;
      case '<':
        if (text_.substr(pos_, 3) == "<->") {
          advance(); advance(); advance();
          return {Tok::DoubleArrow, "<->", line, col};
        }
        break;
      default: break;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
  }

private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class FormulaParser {
public:
  explicit FormulaParser(std::string_view text) : lexer_(text) { shift(); }

  FormulaPtr parse() {
    FormulaPtr f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

private:
  FormulaPtr formula() {
    if (cur_.kind == Tok::KwForall || cur_.kind == Tok::KwExists) {
      return quant();
    }
    return iff();
  }

  FormulaPtr quant() {
    bool universal = cur_.kind == Tok::KwForall;
    shift();
    Token var_tok = cur_;
    expect(Tok::Ident, "variable name");
    std::string var = var_tok.text;
    Term bound_term;
    bool is_bounded = false;
    if (cur_.kind == Tok::KwIn) {
      shift();
      bound_term = term();  // resolved in the enclosing scope
      is_bounded = true;
    }
    expect(Tok::Dot, "'.'");
    scope_.push_back(var);
    FormulaPtr body = formula();
    scope_.pop_back();
    if (is_bounded) {
      return universal ? Formula::forall_in(var, bound_term, body)
                       : Formula::exists_in(var, bound_term, body);
    }
    return universal ? Formula::forall(var, body) : Formula::exists(var, body);
  }

  FormulaPtr iff() {
    FormulaPtr acc = imp();
    while (cur_.kind == Tok::DoubleArrow) {
      shift();
      acc = Formula::iff(acc, imp());
    }
    return acc;
  }

  FormulaPtr imp() {
    FormulaPtr l = disj();
    if (cur_.kind == Tok::Arrow) {
      shift();
      return Formula::implies(l, imp());  // right-associative
    }
    return l;
  }

  FormulaPtr disj() {
    FormulaPtr acc = conj();
    while (cur_.kind == Tok::Pipe) {
      shift();
      acc = Formula::disj(acc, conj());
    }
    return acc;
  }

  FormulaPtr conj() {
    FormulaPtr acc = unary();
    while (cur_.kind == Tok::Amp) {
      shift();
      acc = Formula::conj(acc, unary());
    }
    return acc;
  }

  FormulaPtr unary() {
    if (cur_.kind == Tok::Tilde) {
      shift();
      return Formula::negation(unary());
    }
    if (cur_.kind == Tok::LParen) {
      shift();
      FormulaPtr f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    return atom();
  }

  FormulaPtr atom() {
    Term l = term();
    if (cur_.kind == Tok::Equals) {
      shift();
      return Formula::eq(l, term());
    }
    if (cur_.kind == Tok::KwIn) {
      shift();
      return Formula::mem(l, term());
    }
    if (cur_.kind == Tok::KwSub) {
      shift();
      Term r = term();
      // `t sub u` expands to `forall w . (w in t -> w in u)` with w fresh.
      std::string w = fresh_subset_var(l, r);
      return Formula::forall(
          w, Formula::implies(Formula::mem(Term::var(w), l), Formula::mem(Term::var(w), r)));
    }
    throw SyntaxError("expected '=', 'in' or 'sub' after term", cur_.line, cur_.column);
  }

  Term term() {
    Token t = cur_;
    expect(Tok::Ident, "identifier");
    bool is_bound = std::find(scope_.rbegin(), scope_.rend(), t.text) != scope_.rend();
    return is_bound ? Term::var(t.text) : Term::constant(t.text);
  }

  static std::string fresh_subset_var(const Term& l, const Term& r) {
    std::string w = "w";
    for (int i = 0; w == l.name || w == r.name; ++i) {
      w = "w" + std::to_string(i);
    }
    return w;
  }

  void expect(Tok kind, const std::string& what) {
    if (cur_.kind != kind) {
      throw SyntaxError("expected " + what +
                            (cur_.kind == Tok::End ? "" : ", found '" + cur_.text + "'"),
                        cur_.line, cur_.column);
    }
    if (kind != Tok::End) {
      shift();
    }
  }

  void shift() { cur_ = lexer_.next(); }

  Lexer lexer_;
  Token cur_{Tok::End, "", 1, 1};
  std::vector<std::string> scope_;
};

void collect_constants(const Formula& f, std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Mem:
      if (f.lhs.kind == Term::Kind::Const) out.insert(f.lhs.name);
      if (f.rhs.kind == Term::Kind::Const) out.insert(f.rhs.name);
      return;
    case Formula::Kind::Not:
      collect_constants(*f.left, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      collect_constants(*f.left, out);
      collect_constants(*f.right, out);
      return;
    case Formula::Kind::BoundedExists:
    case Formula::Kind::BoundedForall:
      if (f.bound.kind == Term::Kind::Const) out.insert(f.bound.name);
      collect_constants(*f.body, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      collect_constants(*f.body, out);
      return;
  }
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

FormulaPtr parse_sentence(std::string_view text, const std::set<std::string>& constants) {
  FormulaPtr f = parse_formula(text);
  std::set<std::string> used;
  collect_constants(*f, used);
  for (const std::string& c : used) {
    if (constants.find(c) == constants.end()) {
      throw DomainError("unbound variable '" + c + "' (not a known constant)");
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string print(const Formula& f);

// Children of ~ and of binary connectives may be atoms, negations or
// (self-parenthesized) binary nodes; quantifiers need explicit parentheses
// to survive reparsing.
std::string operand(const Formula& f) {
  if (f.is_quantifier()) {
    return "(" + print(f) + ")";
  }
  return print(f);
}

std::string print(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Eq:
      return f.lhs.name + " = " + f.rhs.name;
    case Formula::Kind::Mem:
      return f.lhs.name + " in " + f.rhs.name;
    case Formula::Kind::Not:
      return "~" + operand(*f.left);
    case Formula::Kind::And:
      return "(" + operand(*f.left) + " & " + operand(*f.right) + ")";
    case Formula::Kind::Or:
      return "(" + operand(*f.left) + " | " + operand(*f.right) + ")";
    case Formula::Kind::Implies:
      return "(" + operand(*f.left) + " -> " + operand(*f.right) + ")";
    case Formula::Kind::Iff:
      return "(" + operand(*f.left) + " <-> " + operand(*f.right) + ")";
    case Formula::Kind::Exists:
      return "exists " + f.var + " . " + print(*f.body);
    case Formula::Kind::Forall:
      return "forall " + f.var + " . " + print(*f.body);
    case Formula::Kind::BoundedExists:
      return "exists " + f.var + " in " + f.bound.name + " . " + print(*f.body);
    case Formula::Kind::BoundedForall:
      return "forall " + f.var + " in " + f.bound.name + " . " + print(*f.body);
  }
  throw DomainError("corrupt formula node");
}

}  // namespace

std::string to_string(const Formula& f) { return print(f); }

// ---------------------------------------------------------------------------
// Structural helpers

FormulaPtr desugar(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Mem:
      return f;
    case Formula::Kind::Not:
      return Formula::negation(desugar(f->left));
    case Formula::Kind::And:
      return Formula::conj(desugar(f->left), desugar(f->right));
    case Formula::Kind::Or:
      return Formula::disj(desugar(f->left), desugar(f->right));
    case Formula::Kind::Implies:
      return Formula::disj(Formula::negation(desugar(f->left)), desugar(f->right));
    case Formula::Kind::Iff: {
      FormulaPtr l = desugar(f->left);
      FormulaPtr r = desugar(f->right);
      return Formula::conj(Formula::disj(Formula::negation(l), r),
                           Formula::disj(Formula::negation(r), l));
    }
    case Formula::Kind::Exists:
      return Formula::exists(f->var, desugar(f->body));
    case Formula::Kind::Forall:
      return Formula::forall(f->var, desugar(f->body));
    case Formula::Kind::BoundedExists:
      return Formula::exists_in(f->var, f->bound, desugar(f->body));
    case Formula::Kind::BoundedForall:
      return Formula::forall_in(f->var, f->bound, desugar(f->body));
  }
  throw DomainError("corrupt formula node");
}

namespace {

void free_vars_into(const Formula& f, std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Mem:
      if (f.lhs.kind == Term::Kind::Var) out.insert(f.lhs.name);
      if (f.rhs.kind == Term::Kind::Var) out.insert(f.rhs.name);
      return;
    case Formula::Kind::Not:
      free_vars_into(*f.left, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      free_vars_into(*f.left, out);
      free_vars_into(*f.right, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
    case Formula::Kind::BoundedExists:
    case Formula::Kind::BoundedForall: {
      std::set<std::string> inner;
      free_vars_into(*f.body, inner);
      inner.erase(f.var);
      out.insert(inner.begin(), inner.end());
      // The bound term lives in the enclosing scope.
      if ((f.kind == Formula::Kind::BoundedExists || f.kind == Formula::Kind::BoundedForall) &&
          f.bound.kind == Term::Kind::Var) {
        out.insert(f.bound.name);
      }
      return;
    }
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  free_vars_into(f, out);
  return out;
}

namespace {

void constant_names_into(const Formula& f, std::set<std::string>& out) {
  auto term = [&out](const Term& t) {
    if (t.kind == Term::Kind::Const) {
      out.insert(t.name);
    }
  };
  switch (f.kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Mem:
      term(f.lhs);
      term(f.rhs);
      return;
    case Formula::Kind::Not:
      constant_names_into(*f.left, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      constant_names_into(*f.left, out);
      constant_names_into(*f.right, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
    case Formula::Kind::BoundedExists:
    case Formula::Kind::BoundedForall:
      if (f.kind == Formula::Kind::BoundedExists || f.kind == Formula::Kind::BoundedForall) {
        term(f.bound);
      }
      constant_names_into(*f.body, out);
      return;
  }
}

}  // namespace

std::set<std::string> constant_names(const Formula& f) {
  std::set<std::string> out;
  constant_names_into(f, out);
  return out;
}

namespace {

Term subst_term(const Term& t, const std::string& var, const Term& replacement) {
  if (t.kind == Term::Kind::Var && t.name == var) {
    return replacement;
  }
  return t;
}

std::string fresh_var(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 0;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (avoid.find(candidate) == avoid.end()) {
      return candidate;
    }
  }
}

FormulaPtr rename_binder(const Formula& f, const Term& replacement, const std::string& var) {
  // f.var would capture `replacement`; pick a fresh binder first.
  std::set<std::string> avoid = free_vars(*f.body);
  avoid.insert(replacement.name);
  avoid.insert(var);
  std::string fresh = fresh_var(f.var, avoid);
  FormulaPtr body = substitute(f.body, f.var, Term::var(fresh));
  body = substitute(body, var, replacement);
  switch (f.kind) {
    case Formula::Kind::Exists:
      return Formula::exists(fresh, body);
    case Formula::Kind::Forall:
      return Formula::forall(fresh, body);
    case Formula::Kind::BoundedExists:
      return Formula::exists_in(fresh, subst_term(f.bound, var, replacement), body);
    case Formula::Kind::BoundedForall:
      return Formula::forall_in(fresh, subst_term(f.bound, var, replacement), body);
    default:
      throw DomainError("corrupt formula node");
  }
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& replacement) {
  switch (f->kind) {
    case Formula::Kind::Eq:
      return Formula::eq(subst_term(f->lhs, var, replacement),
                         subst_term(f->rhs, var, replacement));
    case Formula::Kind::Mem:
      return Formula::mem(subst_term(f->lhs, var, replacement),
                          subst_term(f->rhs, var, replacement));
    case Formula::Kind::Not:
      return Formula::negation(substitute(f->left, var, replacement));
    case Formula::Kind::And:
      return Formula::conj(substitute(f->left, var, replacement),
                           substitute(f->right, var, replacement));
    case Formula::Kind::Or:
      return Formula::disj(substitute(f->left, var, replacement),
                           substitute(f->right, var, replacement));
    case Formula::Kind::Implies:
      return Formula::implies(substitute(f->left, var, replacement),
                              substitute(f->right, var, replacement));
    case Formula::Kind::Iff:
      return Formula::iff(substitute(f->left, var, replacement),
                          substitute(f->right, var, replacement));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
    case Formula::Kind::BoundedExists:
    case Formula::Kind::BoundedForall: {
      Term new_bound = f->bound;
      if (f->kind == Formula::Kind::BoundedExists || f->kind == Formula::Kind::BoundedForall) {
        new_bound = subst_term(f->bound, var, replacement);
      }
      if (f->var == var) {
        // `var` is shadowed inside; only the bound term can change.
        switch (f->kind) {
          case Formula::Kind::Exists: return f;
          case Formula::Kind::Forall: return f;
          case Formula::Kind::BoundedExists:
            return Formula::exists_in(f->var, new_bound, f->body);
          case Formula::Kind::BoundedForall:
            return Formula::forall_in(f->var, new_bound, f->body);
          default: break;
        }
      }
      std::set<std::string> body_free = free_vars(*f->body);
      if (body_free.find(var) == body_free.end()) {
        switch (f->kind) {
          case Formula::Kind::Exists: return f;
          case Formula::Kind::Forall: return f;
          case Formula::Kind::BoundedExists:
            return Formula::exists_in(f->var, new_bound, f->body);
          case Formula::Kind::BoundedForall:
            return Formula::forall_in(f->var, new_bound, f->body);
          default: break;
        }
      }
      if (replacement.kind == Term::Kind::Var && replacement.name == f->var) {
        return rename_binder(*f, replacement, var);
      }
      FormulaPtr body = substitute(f->body, var, replacement);
      switch (f->kind) {
        case Formula::Kind::Exists: return Formula::exists(f->var, body);
        case Formula::Kind::Forall: return Formula::forall(f->var, body);
        case Formula::Kind::BoundedExists: return Formula::exists_in(f->var, new_bound, body);
        case Formula::Kind::BoundedForall: return Formula::forall_in(f->var, new_bound, body);
        default: break;
      }
    }
  }
  throw DomainError("corrupt formula node");
}

bool equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) {
    return false;
  }
  switch (a.kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Mem:
      return a.lhs == b.lhs && a.rhs == b.rhs;
    case Formula::Kind::Not:
      return equal(*a.left, *b.left);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return equal(*a.left, *b.left) && equal(*a.right, *b.right);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return a.var == b.var && equal(*a.body, *b.body);
    case Formula::Kind::BoundedExists:
    case Formula::Kind::BoundedForall:
      return a.var == b.var && a.bound == b.bound && equal(*a.body, *b.body);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Random sentence generation

namespace {

class SentenceGen {
public:
  SentenceGen(std::mt19937& rng, const SentenceGenOptions& options)
      : rng_(rng), options_(options) {}

  FormulaPtr gen(int depth_left) {
    if (depth_left <= 1) {
      return atom();
    }
    switch (pick_kind()) {
      case 0: return atom();
      case 1: return Formula::negation(gen(depth_left - 1));
      case 2: return Formula::conj(gen(depth_left - 1), gen(depth_left - 1));
      case 3: return Formula::disj(gen(depth_left - 1), gen(depth_left - 1));
      case 4: return Formula::implies(gen(depth_left - 1), gen(depth_left - 1));
      case 5: return Formula::iff(gen(depth_left - 1), gen(depth_left - 1));
      case 6:
      case 7: {
        bool universal = pick_kind_was_ == 7;
        std::string var = fresh_binder();
        bound_.push_back(var);
        FormulaPtr body = gen(depth_left - 1);
        bound_.pop_back();
        return universal ? Formula::forall(var, body) : Formula::exists(var, body);
      }
      default: {
        bool universal = pick_kind_was_ == 9;
        Term b = term();
        std::string var = fresh_binder();
        bound_.push_back(var);
        FormulaPtr body = gen(depth_left - 1);
        bound_.pop_back();
        return universal ? Formula::forall_in(var, b, body) : Formula::exists_in(var, b, body);
      }
    }
  }

private:
  int pick_kind() {
    // Weighted choice over: atom, ~, &, |, ->, <->, exists, forall,
    // bounded exists, bounded forall.
    int weights[10] = {24, 10, 10, 10, 8, 6, 10, 10, 6, 6};
    if (!options_.allow_sugar) {
      weights[4] = weights[5] = 0;
    }
    if (!options_.allow_bounded) {
      weights[8] = weights[9] = 0;
    }
    int total = 0;
    for (int w : weights) total += w;
    int roll = static_cast<int>(rng_() % static_cast<unsigned>(total));
    for (int i = 0; i < 10; ++i) {
      roll -= weights[i];
      if (roll < 0) {
        pick_kind_was_ = i;
        return i;
      }
    }
    pick_kind_was_ = 0;
    return 0;
  }

  FormulaPtr atom() {
    Term l = term();
    Term r = term();
    return (rng_() % 2 == 0) ? Formula::eq(l, r) : Formula::mem(l, r);
  }

  Term term() {
    std::size_t pool = bound_.size() + options_.constants.size();
    std::size_t i = rng_() % pool;
    if (i < bound_.size()) {
      return Term::var(bound_[i]);
    }
    return Term::constant(options_.constants[i - bound_.size()]);
  }

  std::string fresh_binder() {
    for (int i = next_var_;; ++i) {
      std::string candidate = "x" + std::to_string(i);
      if (std::find(options_.constants.begin(), options_.constants.end(), candidate) ==
              options_.constants.end() &&
          std::find(bound_.begin(), bound_.end(), candidate) == bound_.end()) {
        next_var_ = i + 1;
        return candidate;
      }
    }
  }

  std::mt19937& rng_;
  const SentenceGenOptions& options_;
  std::vector<std::string> bound_;
  int pick_kind_was_ = 0;
  int next_var_ = 0;
};

}  // namespace

FormulaPtr random_sentence(std::mt19937& rng, const SentenceGenOptions& options) {
  if (options.constants.empty()) {
    throw DomainError("sentence generation needs at least one constant");
  }
  if (options.max_depth < 1) {
    throw DomainError("sentence depth must be at least 1");
  }
  SentenceGen gen(rng, options);
  return gen.gen(options.max_depth);
}

}  // namespace forcelab
