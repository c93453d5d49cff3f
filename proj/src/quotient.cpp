#include "forcelab/quotient.hpp"

#include <algorithm>

#include "forcelab/valuation.hpp"

namespace forcelab {

QuotientModel QuotientModel::build(NameUniverse universe, Ultrafilter ultrafilter) {
  if (ultrafilter.parent() != universe.algebra()) {
    throw DomainError("ultrafilter belongs to a different algebra than the universe");
  }
  QuotientModel q(std::move(universe), std::move(ultrafilter));
  const NameUniverse& u = q.universe_;
  int n = u.size();
  if (n == 0) {
    return q;
  }
  ValuationContext ctx(u);
  auto in_u = [&](const Elem& e) { return q.ultrafilter_.contains(e); };

  // Classes, with the earliest name as representative. The relation
  // [[x = y]] in U is an equivalence; transitivity is re-verified below by
  // comparing every pair against its class assignment.
  q.class_of_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (q.class_of_[i] >= 0) {
      continue;
    }
    int cls = static_cast<int>(q.members_.size());
    q.class_of_[i] = cls;
    q.members_.push_back({i});
    for (int j = i + 1; j < n; ++j) {
      if (q.class_of_[j] < 0 && in_u(ctx.val_eq(i, j))) {
        q.class_of_[j] = cls;
        q.members_[cls].push_back(j);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      bool same = q.class_of_[i] == q.class_of_[j];
      if (same != in_u(ctx.val_eq(i, j))) {
        throw DomainError("internal: [[x = y]] in U failed to be an equivalence relation");
      }
    }
  }

  // Membership must not depend on the choice of representatives.
  int classes = q.class_count();
  for (int cx = 0; cx < classes; ++cx) {
    for (int cy = 0; cy < classes; ++cy) {
      bool value = in_u(ctx.val_mem(q.representative(cx), q.representative(cy)));
      for (int x : q.members_[cx]) {
        for (int y : q.members_[cy]) {
          if (in_u(ctx.val_mem(x, y)) != value) {
            throw DomainError("internal: membership depended on representatives");
          }
        }
      }
      if (value) {
        q.edges_.emplace(cx, cy);
      }
    }
  }
  return q;
}

int QuotientModel::class_of(int name_index) const {
  if (name_index < 0 || name_index >= static_cast<int>(class_of_.size())) {
    throw DomainError("name index out of range");
  }
  return class_of_[name_index];
}

bool QuotientModel::has_edge(int from_cls, int to_cls) const {
  return edges_.count({from_cls, to_cls}) > 0;
}

int QuotientModel::resolve(const Term& term,
                           const std::vector<std::pair<std::string, int>>& env) const {
  if (term.kind == Term::Kind::Var) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == term.name) {
        return it->second;
      }
    }
    throw DomainError("formula is not a sentence: free variable '" + term.name + "'");
  }
  if (auto idx = universe_.find(term.name)) {
    return class_of_[*idx];
  }
  throw DomainError("unresolved identifier '" + term.name + "' (no such name in the universe)");
}

bool QuotientModel::truth_eval(const Formula& f,
                               std::vector<std::pair<std::string, int>>& env) const {
  switch (f.kind) {
    case Formula::Kind::Eq:
      return resolve(f.lhs, env) == resolve(f.rhs, env);
    case Formula::Kind::Mem:
      return has_edge(resolve(f.lhs, env), resolve(f.rhs, env));
    case Formula::Kind::Not:
      return !truth_eval(*f.left, env);
    case Formula::Kind::And:
      return truth_eval(*f.left, env) && truth_eval(*f.right, env);
    case Formula::Kind::Or:
      return truth_eval(*f.left, env) || truth_eval(*f.right, env);
    case Formula::Kind::Implies:
      return !truth_eval(*f.left, env) || truth_eval(*f.right, env);
    case Formula::Kind::Iff:
      return truth_eval(*f.left, env) == truth_eval(*f.right, env);
    case Formula::Kind::Exists:
      for (int c = 0; c < class_count(); ++c) {
        env.emplace_back(f.var, c);
        bool ok = truth_eval(*f.body, env);
        env.pop_back();
        if (ok) {
          return true;
        }
      }
      return false;
    case Formula::Kind::Forall:
      for (int c = 0; c < class_count(); ++c) {
        env.emplace_back(f.var, c);
        bool ok = truth_eval(*f.body, env);
        env.pop_back();
        if (!ok) {
          return false;
        }
      }
      return true;
    case Formula::Kind::BoundedExists: {
      int bound = resolve(f.bound, env);
      for (int c = 0; c < class_count(); ++c) {
        if (!has_edge(c, bound)) {
          continue;
        }
        env.emplace_back(f.var, c);
        bool ok = truth_eval(*f.body, env);
        env.pop_back();
        if (ok) {
          return true;
        }
      }
      return false;
    }
    case Formula::Kind::BoundedForall: {
      int bound = resolve(f.bound, env);
      for (int c = 0; c < class_count(); ++c) {
        if (!has_edge(c, bound)) {
          continue;
        }
        env.emplace_back(f.var, c);
        bool ok = truth_eval(*f.body, env);
        env.pop_back();
        if (!ok) {
          return false;
        }
      }
      return true;
    }
  }
  throw DomainError("corrupt formula node");
}

bool QuotientModel::truth(const Formula& sentence) const {
  if (!free_vars(sentence).empty()) {
    throw DomainError("truth needs a sentence (no free variables)");
  }
  std::vector<std::pair<std::string, int>> env;
  return truth_eval(sentence, env);
}

std::vector<HFSet> QuotientModel::mostowski_collapse() const {
  int n = class_count();
  enum class State { Unvisited, InProgress, Done };
  std::vector<State> state(n, State::Unvisited);
  std::vector<HFSet> collapse(n);

  // collapse(c) = { collapse(d) : d in c's predecessors }, by depth-first
  // recursion with cycle detection.
  auto visit = [&](auto&& self, int c) -> void {
    if (state[c] == State::Done) {
      return;
    }
    if (state[c] == State::InProgress) {
      throw DomainError("membership digraph has a cycle; collapse undefined");
    }
    state[c] = State::InProgress;
    std::vector<HFSet> elems;
    for (const auto& [from, to] : edges_) {
      if (to == c) {
        self(self, from);
        elems.push_back(collapse[from]);
      }
    }
    collapse[c] = HFSet(std::move(elems));
    state[c] = State::Done;
  };
  for (int c = 0; c < n; ++c) {
    visit(visit, c);
  }
  for (int c = 0; c < n; ++c) {
    for (int d = c + 1; d < n; ++d) {
      if (collapse[c] == collapse[d]) {
        throw DomainError("extensionality failure: classes of '" +
                          universe_.name(representative(c)).id + "' and '" +
                          universe_.name(representative(d)).id +
                          "' collapse to the same set");
      }
    }
  }
  return collapse;
}

}  // namespace forcelab
