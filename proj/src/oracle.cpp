#include "forcelab/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace forcelab::oracle {

namespace {

int resolve(const Term& term, const FiniteStructure& s,
            const std::vector<std::pair<std::string, int>>& env) {
  if (term.kind == Term::Kind::Var) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == term.name) {
        return it->second;
      }
    }
    throw DomainError("free variable '" + term.name + "' has no binding");
  }
  auto it = s.constants.find(term.name);
  if (it == s.constants.end()) {
    throw DomainError("structure has no constant '" + term.name + "'");
  }
  return it->second;
}

}  // namespace

bool tarski_eval(const Formula& f, const FiniteStructure& s,
                 std::vector<std::pair<std::string, int>>& env) {
  switch (f.kind) {
    case Formula::Kind::Eq:
      return resolve(f.lhs, s, env) == resolve(f.rhs, s, env);
    case Formula::Kind::Mem:
      return s.related(resolve(f.lhs, s, env), resolve(f.rhs, s, env));
    case Formula::Kind::Not:
      return !tarski_eval(*f.left, s, env);
    case Formula::Kind::And:
      return tarski_eval(*f.left, s, env) && tarski_eval(*f.right, s, env);
    case Formula::Kind::Or:
      return tarski_eval(*f.left, s, env) || tarski_eval(*f.right, s, env);
    case Formula::Kind::Implies:
      return !tarski_eval(*f.left, s, env) || tarski_eval(*f.right, s, env);
    case Formula::Kind::Iff:
      return tarski_eval(*f.left, s, env) == tarski_eval(*f.right, s, env);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool exists = f.kind == Formula::Kind::Exists;
      for (int m = 0; m < s.carrier_size; ++m) {
        env.emplace_back(f.var, m);
        bool b = tarski_eval(*f.body, s, env);
        env.pop_back();
        if (b == exists) {
          return exists;
        }
      }
      return !exists;
    }
    case Formula::Kind::BoundedExists:
    case Formula::Kind::BoundedForall: {
      bool exists = f.kind == Formula::Kind::BoundedExists;
      int bound = resolve(f.bound, s, env);
      for (int m = 0; m < s.carrier_size; ++m) {
        if (!s.related(m, bound)) {
          continue;
        }
        env.emplace_back(f.var, m);
        bool b = tarski_eval(*f.body, s, env);
        env.pop_back();
        if (b == exists) {
          return exists;
        }
      }
      return !exists;
    }
  }
  throw DomainError("internal: unhandled formula kind");
}

bool holds(const FiniteStructure& s, const Formula& sentence) {
  std::vector<std::pair<std::string, int>> env;
  return tarski_eval(sentence, s, env);
}

namespace {

const HFSet& section_memo(const NameUniverse& universe, int name, int atom,
                          std::vector<std::optional<HFSet>>& memo) {
  if (!memo[name]) {
    std::vector<HFSet> members;
    for (const NameEntry& entry : universe.name(name).entries) {
      if (entry.value.has_atom(atom)) {
        members.push_back(section_memo(universe, entry.child, atom, memo));
      }
    }
    memo[name] = HFSet(std::move(members));
  }
  return *memo[name];
}

}  // namespace

HFSet section(const NameUniverse& universe, int name, int atom) {
  if (name < 0 || name >= universe.size()) {
    throw DomainError("name index " + std::to_string(name) + " outside the universe");
  }
  if (atom < 0 || atom >= universe.algebra()->atom_count()) {
    throw DomainError("atom index " + std::to_string(atom) + " outside the algebra");
  }
  std::vector<std::optional<HFSet>> memo(universe.size());
  return section_memo(universe, name, atom, memo);
}

FiniteStructure section_structure(const NameUniverse& universe, int atom) {
  if (atom < 0 || atom >= universe.algebra()->atom_count()) {
    throw DomainError("atom index " + std::to_string(atom) + " outside the algebra");
  }
  std::vector<std::optional<HFSet>> memo(universe.size());
  std::map<HFSet, int> carrier;
  std::vector<int> of_name(universe.size());
  for (int i = 0; i < universe.size(); ++i) {
    const HFSet& s = section_memo(universe, i, atom, memo);
    auto [it, inserted] = carrier.emplace(s, static_cast<int>(carrier.size()));
    of_name[i] = it->second;
  }

  FiniteStructure result;
  result.carrier_size = static_cast<int>(carrier.size());
  std::vector<const HFSet*> sets(carrier.size());
  for (const auto& [set, index] : carrier) {
    sets[index] = &set;
  }
  for (int x = 0; x < result.carrier_size; ++x) {
    for (int y = 0; y < result.carrier_size; ++y) {
      if (sets[y]->contains(*sets[x])) {
        result.membership.insert({x, y});
      }
    }
  }
  for (int i = 0; i < universe.size(); ++i) {
    result.constants[universe.name(i).id] = of_name[i];
  }
  return result;
}

Elem classical_value(const NameUniverse& universe, const Formula& sentence) {
  auto frees = free_vars(sentence);
  if (!frees.empty()) {
    throw DomainError("classical value needs a sentence; '" + *frees.begin() + "' is free");
  }
  std::uint32_t mask = 0;
  for (int atom = 0; atom < universe.algebra()->atom_count(); ++atom) {
    if (holds(section_structure(universe, atom), sentence)) {
      mask |= std::uint32_t{1} << atom;
    }
  }
  return universe.algebra()->element(mask);
}

// ---------------------------------------------------------------------------
// Exhaustive enumerations

namespace {

void check_poset_cap(const PosetPtr& poset, int max_elements, int hard_cap) {
  if (max_elements > hard_cap) {
    throw DomainError("enumeration cap above " + std::to_string(hard_cap) + " unsupported");
  }
  if (poset->size() > max_elements) {
    throw DomainError("poset with " + std::to_string(poset->size()) +
                      " elements exceeds the enumeration cap of " + std::to_string(max_elements));
  }
}

std::vector<int> mask_members(std::uint32_t mask, int n) {
  std::vector<int> members;
  for (int i = 0; i < n; ++i) {
    if ((mask >> i & 1u) != 0) {
      members.push_back(i);
    }
  }
  return members;
}

}  // namespace

std::vector<std::vector<int>> enumerate_dense(const PosetPtr& poset, int max_elements) {
  check_poset_cap(poset, max_elements, 15);
  const int n = poset->size();
  std::vector<std::vector<int>> result;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    bool dense = true;
    for (int p = 0; p < n && dense; ++p) {
      bool met = false;
      for (int q = 0; q < n; ++q) {
        if ((mask >> q & 1u) != 0 && poset->leq(q, p)) {
          met = true;
          break;
        }
      }
      dense = met;
    }
    if (dense) {
      result.push_back(mask_members(mask, n));
    }
  }
  return result;
}

std::vector<std::vector<int>> enumerate_filters(const PosetPtr& poset, int max_elements) {
  check_poset_cap(poset, max_elements, 15);
  const int n = poset->size();
  std::vector<std::vector<int>> result;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    bool ok = true;
    for (int p = 0; p < n && ok; ++p) {
      if ((mask >> p & 1u) == 0) {
        continue;
      }
      for (int q = 0; q < n && ok; ++q) {
        if (poset->leq(p, q) && (mask >> q & 1u) == 0) {
          ok = false;  // not upward closed
        }
      }
      for (int q = 0; q < n && ok; ++q) {
        if ((mask >> q & 1u) == 0) {
          continue;
        }
        bool bounded = false;
        for (int r = 0; r < n; ++r) {
          if ((mask >> r & 1u) != 0 && poset->leq(r, p) && poset->leq(r, q)) {
            bounded = true;
            break;
          }
        }
        if (!bounded) {
          ok = false;  // p, q lack a common lower bound inside
        }
      }
    }
    if (ok) {
      result.push_back(mask_members(mask, n));
    }
  }
  return result;
}

std::vector<std::uint32_t> enumerate_regular_opens(const PosetPtr& poset, int max_elements) {
  check_poset_cap(poset, max_elements, 16);
  const int n = poset->size();
  std::vector<std::uint32_t> down(n, 0);
  for (int p = 0; p < n; ++p) {
    for (int q : poset->below(p)) {
      down[p] |= std::uint32_t{1} << q;
    }
  }
  auto closure = [&](std::uint32_t set) {
    std::uint32_t out = 0;
    for (int p = 0; p < n; ++p) {
      if ((down[p] & set) != 0) {
        out |= std::uint32_t{1} << p;
      }
    }
    return out;
  };
  auto interior = [&](std::uint32_t set) {
    std::uint32_t out = 0;
    for (int p = 0; p < n; ++p) {
      if ((down[p] & ~set) == 0) {
        out |= std::uint32_t{1} << p;
      }
    }
    return out;
  };
  std::vector<std::uint32_t> result;
  for (std::uint64_t set = 0; set < (std::uint64_t{1} << n); ++set) {
    auto mask = static_cast<std::uint32_t>(set);
    bool open = true;
    for (int p = 0; p < n && open; ++p) {
      if ((mask >> p & 1u) != 0 && (down[p] & ~mask) != 0) {
        open = false;
      }
    }
    if (open && interior(closure(mask)) == mask) {
      result.push_back(mask);
    }
  }
  return result;
}

std::vector<std::vector<Elem>> enumerate_ultrafilters_bruteforce(const AlgebraPtr& algebra,
                                                                 int max_atoms) {
  if (max_atoms > 4) {
    throw DomainError("brute-force ultrafilter search is capped at 4 atoms");
  }
  if (algebra->atom_count() > max_atoms) {
    throw DomainError("algebra with " + std::to_string(algebra->atom_count()) +
                      " atoms exceeds the brute-force cap of " + std::to_string(max_atoms));
  }
  const std::uint32_t size = algebra->size();  // elements are the masks 0..size-1
  const std::uint32_t full = size - 1;
  std::vector<std::vector<Elem>> result;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << size); ++subset) {
    auto in = [&](std::uint32_t m) { return (subset >> m & 1u) != 0; };
    if (!in(full) || in(0)) {
      continue;
    }
    bool ok = true;
    for (std::uint32_t x = 0; x < size && ok; ++x) {
      if (in(x) != !in(full & ~x)) {
        ok = false;  // exactly one of x, complement(x)
      }
      if (!in(x)) {
        continue;
      }
      for (std::uint32_t y = 0; y < size && ok; ++y) {
        if (in(y) && !in(x & y)) {
          ok = false;  // closed under meet (upward closure follows)
        }
        if ((y & x) == x && y != x && !in(y)) {
          ok = false;  // upward closed
        }
      }
    }
    if (!ok) {
      continue;
    }
    std::vector<Elem> members;
    for (std::uint32_t m = 0; m < size; ++m) {
      if (in(m)) {
        members.push_back(algebra->element(m));
      }
    }
    result.push_back(std::move(members));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Poset catalog

namespace {

// Relation matrix of a labeled poset packed into n*n bits, minimized over
// all relabelings.
std::uint64_t canonical_key(int n, const std::vector<std::uint32_t>& strict_down) {
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < n; ++j) {
    pairs.emplace_back(j, j);
    for (int i = 0; i < j; ++i) {
      if ((strict_down[j] >> i & 1u) != 0) {
        pairs.emplace_back(i, j);
      }
    }
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t key = 0;
    for (const auto& [i, j] : pairs) {
      key |= std::uint64_t{1} << (perm[i] * n + perm[j]);
    }
    best = std::min(best, key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

void emit_poset(int n, const std::vector<std::uint32_t>& strict_down,
                std::set<std::uint64_t>& seen, std::vector<PosetPtr>& out) {
  std::uint64_t key = canonical_key(n, strict_down);
  if (!seen.insert(key).second) {
    return;
  }
  std::vector<std::string> ids;
  std::vector<std::vector<int>> below(n);
  for (int j = 0; j < n; ++j) {
    ids.push_back("p" + std::to_string(j));
    below[j].push_back(j);
    for (int i = 0; i < j; ++i) {
      if ((strict_down[j] >> i & 1u) != 0) {
        below[j].push_back(i);
      }
    }
  }
  out.push_back(Poset::from_closed(std::move(ids), std::move(below)));
}

// Chooses the strict down-set of element j among subsets of {0..j-1} that
// are already downward closed, so every labeling is a linear extension.
void extend_labeling(int n, int j, std::vector<std::uint32_t>& strict_down,
                     std::set<std::uint64_t>& seen, std::vector<PosetPtr>& out) {
  if (j == n) {
    emit_poset(n, strict_down, seen, out);
    return;
  }
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << j); ++mask) {
    bool closed = true;
    for (int i = 0; i < j && closed; ++i) {
      if ((mask >> i & 1u) != 0 && (strict_down[i] & ~mask) != 0) {
        closed = false;
      }
    }
    if (closed) {
      strict_down[j] = mask;
      extend_labeling(n, j + 1, strict_down, seen, out);
    }
  }
  strict_down[j] = 0;
}

}  // namespace

std::vector<PosetPtr> all_posets(int n) {
  if (n < 1 || n > 6) {
    throw DomainError("poset catalog covers sizes 1 through 6");
  }
  std::vector<std::uint32_t> strict_down(n, 0);
  std::set<std::uint64_t> seen;
  std::vector<PosetPtr> out;
  extend_labeling(n, 0, strict_down, seen, out);
  return out;
}

std::vector<PosetPtr> all_posets_up_to(int n) {
  std::vector<PosetPtr> out;
  for (int k = 1; k <= n; ++k) {
    auto batch = all_posets(k);
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

}  // namespace forcelab::oracle
