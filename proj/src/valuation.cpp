#include "forcelab/valuation.hpp"

namespace forcelab {

std::optional<int> Env::lookup(const std::string& var) const {
  for (auto it = binds_.rbegin(); it != binds_.rend(); ++it) {
    if (it->first == var) {
      return it->second;
    }
  }
  return std::nullopt;
}

std::string Env::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < binds_.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += binds_[i].first + "=#" + std::to_string(binds_[i].second);
  }
  return out + "}";
}

ValuationContext::ValuationContext(const NameUniverse& universe, bool memoize)
    : universe_(universe), memoize_(memoize) {}

void ValuationContext::check_index(int i) const {
  if (i < 0 || i >= universe_.size()) {
    throw DomainError("name index out of range");
  }
}

namespace {

std::uint64_t pair_key(int x, int y) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
         static_cast<std::uint32_t>(y);
}

}  // namespace

Elem ValuationContext::val_mem(int x, int y) {
  check_index(x);
  check_index(y);
  if (memoize_) {
    if (auto it = mem_memo_.find(pair_key(x, y)); it != mem_memo_.end()) {
      return universe_.algebra()->element(it->second);
    }
  }
  // [[x in y]] = join over entries (w, v) of y of v ^ [[x = w]].
  Elem acc = universe_.algebra()->zero();
  for (const NameEntry& e : universe_.name(y).entries) {
    if (e.value.is_zero()) {
      continue;
    }
    acc = join(acc, meet(e.value, val_eq(x, e.child)));
    if (acc.is_one()) {
      break;
    }
  }
  if (memoize_) {
    mem_memo_.emplace(pair_key(x, y), acc.mask());
  }
  if (trace_on_) {
    trace_.push_back({TraceEntry::Op::Mem, x, y, acc});
  }
  return acc;
}

Elem ValuationContext::val_subset(int x, int y) {
  check_index(x);
  check_index(y);
  // [[x sub y]] = meet over entries (w, v) of x of (v => [[w in y]]).
  Elem acc = universe_.algebra()->one();
  for (const NameEntry& e : universe_.name(x).entries) {
    acc = meet(acc, implies(e.value, val_mem(e.child, y)));
    if (acc.is_zero()) {
      break;
    }
  }
  if (trace_on_) {
    trace_.push_back({TraceEntry::Op::Subset, x, y, acc});
  }
  return acc;
}

Elem ValuationContext::val_eq(int x, int y) {
  check_index(x);
  check_index(y);
  if (memoize_) {
    if (auto it = eq_memo_.find(pair_key(x, y)); it != eq_memo_.end()) {
      return universe_.algebra()->element(it->second);
    }
  }
  // [[x = y]] = [[x sub y]] ^ [[y sub x]], unfolded to avoid tracing subset
  // steps that the recursion equations do not mention.
  Elem acc = universe_.algebra()->one();
  for (const NameEntry& e : universe_.name(x).entries) {
    acc = meet(acc, implies(e.value, val_mem(e.child, y)));
    if (acc.is_zero()) {
      break;
    }
  }
  if (!acc.is_zero()) {
    for (const NameEntry& e : universe_.name(y).entries) {
      acc = meet(acc, implies(e.value, val_mem(e.child, x)));
      if (acc.is_zero()) {
        break;
      }
    }
  }
  if (memoize_) {
    eq_memo_.emplace(pair_key(x, y), acc.mask());
  }
  if (trace_on_) {
    trace_.push_back({TraceEntry::Op::Eq, x, y, acc});
  }
  return acc;
}

int ValuationContext::resolve(const Term& term, const Env& env) const {
  if (term.kind == Term::Kind::Var) {
    if (auto idx = env.lookup(term.name)) {
      return *idx;
    }
    throw DomainError("free variable '" + term.name + "' has no binding");
  }
  if (auto idx = universe_.find(term.name)) {
    return *idx;
  }
  throw DomainError("unresolved identifier '" + term.name + "' (no such name in the universe)");
}

Elem ValuationContext::val_formula(const Formula& f) {
  Env env;
  return val_formula(f, env);
}

Elem ValuationContext::val_formula(const Formula& f, Env& env) {
  FormulaPtr plain = desugar(std::make_shared<Formula>(f));
  return eval(*plain, env);
}

Elem ValuationContext::eval(const Formula& f, Env& env) {
  const AlgebraPtr& algebra = universe_.algebra();
  switch (f.kind) {
    case Formula::Kind::Eq:
      return val_eq(resolve(f.lhs, env), resolve(f.rhs, env));
    case Formula::Kind::Mem:
      return val_mem(resolve(f.lhs, env), resolve(f.rhs, env));
    case Formula::Kind::Not:
      return complement(eval(*f.left, env));
    case Formula::Kind::And: {
      Elem l = eval(*f.left, env);
      if (l.is_zero()) {
        return l;
      }
      return meet(l, eval(*f.right, env));
    }
    case Formula::Kind::Or: {
      Elem l = eval(*f.left, env);
      if (l.is_one()) {
        return l;
      }
      return join(l, eval(*f.right, env));
    }
    case Formula::Kind::Exists: {
      // Relativized to the universe: join over every name.
      Elem acc = algebra->zero();
      for (int i = 0; i < universe_.size() && !acc.is_one(); ++i) {
        env.bind(f.var, i);
        acc = join(acc, eval(*f.body, env));
        env.unbind();
      }
      return acc;
    }
    case Formula::Kind::Forall: {
      Elem acc = algebra->one();
      for (int i = 0; i < universe_.size() && !acc.is_zero(); ++i) {
        env.bind(f.var, i);
        acc = meet(acc, eval(*f.body, env));
        env.unbind();
      }
      return acc;
    }
    case Formula::Kind::BoundedExists: {
      // join over entries (w, v) of the bound of v ^ [[body(w)]].
      int bound = resolve(f.bound, env);
      Elem acc = algebra->zero();
      for (const NameEntry& e : universe_.name(bound).entries) {
        if (acc.is_one()) {
          break;
        }
        env.bind(f.var, e.child);
        acc = join(acc, meet(e.value, eval(*f.body, env)));
        env.unbind();
      }
      return acc;
    }
    case Formula::Kind::BoundedForall: {
      // meet over entries (w, v) of the bound of v => [[body(w)]].
      int bound = resolve(f.bound, env);
      Elem acc = algebra->one();
      for (const NameEntry& e : universe_.name(bound).entries) {
        if (acc.is_zero()) {
          break;
        }
        env.bind(f.var, e.child);
        acc = meet(acc, implies(e.value, eval(*f.body, env)));
        env.unbind();
      }
      return acc;
    }
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      break;  // removed by desugar
  }
  throw DomainError("internal: sugared node survived desugaring");
}

}  // namespace forcelab
