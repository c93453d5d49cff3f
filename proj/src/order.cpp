#include "forcelab/order.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace forcelab {

namespace {

bool valid_poset_id(const std::string& id) {
  if (id.empty()) {
    return false;
  }
  for (char c : id) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(' || c == ')' ||
          c == '>' || c == ',' || c == '-')) {
      return false;
    }
  }
  return true;
}

}  // namespace

PosetPtr Poset::make(std::vector<std::string> ids,
                     const std::vector<std::pair<int, int>>& le_pairs) {
  int n = static_cast<int>(ids.size());
  if (n == 0) {
    throw DomainError("a poset needs at least one element");
  }
  // Reflexive-transitive closure over a dense bool matrix.
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    le[i][i] = true;
  }
  for (auto [a, b] : le_pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw DomainError("le pair index out of range");
    }
    le[a][b] = true;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!le[i][k]) continue;
      for (int j = 0; j < n; ++j) {
        if (le[k][j]) le[i][j] = true;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (le[i][j] && le[j][i]) {
        throw DomainError("order cycle between '" + ids[i] + "' and '" + ids[j] + "'");
      }
    }
  }
  std::vector<std::vector<int>> below(n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (le[q][p]) below[p].push_back(q);
    }
  }
  return from_closed(std::move(ids), std::move(below));
}

PosetPtr Poset::from_closed(std::vector<std::string> ids, std::vector<std::vector<int>> below) {
  if (ids.empty()) {
    throw DomainError("a poset needs at least one element");
  }
  if (ids.size() != below.size()) {
    throw DomainError("below lists do not match the element list");
  }
  auto poset = std::shared_ptr<Poset>(new Poset());
  poset->ids_ = std::move(ids);
  poset->below_ = std::move(below);
  for (int i = 0; i < poset->size(); ++i) {
    const std::string& id = poset->ids_[i];
    if (!valid_poset_id(id)) {
      throw DomainError("bad poset id '" + id + "'");
    }
    if (!poset->index_.emplace(id, i).second) {
      throw DomainError("duplicate poset id '" + id + "'");
    }
    std::sort(poset->below_[i].begin(), poset->below_[i].end());
  }
  for (int p = 0; p < poset->size(); ++p) {
    if (!poset->leq(p, p)) {
      throw DomainError("below list for '" + poset->ids_[p] + "' misses the element itself");
    }
    for (int q : poset->below_[p]) {
      if (q != p && poset->leq(p, q)) {
        throw DomainError("order cycle between '" + poset->ids_[p] + "' and '" + poset->ids_[q] +
                          "'");
      }
    }
  }
  return poset;
}

PosetPtr Poset::parse(std::string_view text) {
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> le_ids;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) {
      continue;
    }
    if (word == "elem") {
      std::string id;
      if (!(ls >> id) || !valid_poset_id(id)) {
        throw SyntaxError("expected 'elem <id>'", line_no, 1);
      }
      ids.push_back(id);
    } else if (word == "le") {
      std::string a, b;
      if (!(ls >> a >> b)) {
        throw SyntaxError("expected 'le <id> <id>'", line_no, 1);
      }
      le_ids.emplace_back(a, b);
    } else {
      throw SyntaxError("unknown directive '" + word + "'", line_no, 1);
    }
    std::string extra;
    if (ls >> extra) {
      throw SyntaxError("trailing input '" + extra + "'", line_no, 1);
    }
  }
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(ids.size()); ++i) {
    if (!index.emplace(ids[i], i).second) {
      throw DomainError("duplicate poset id '" + ids[i] + "'");
    }
  }
  std::vector<std::pair<int, int>> le_pairs;
  for (const auto& [a, b] : le_ids) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) {
      throw DomainError("le mentions unknown id '" + a + "'");
    }
    if (ib == index.end()) {
      throw DomainError("le mentions unknown id '" + b + "'");
    }
    le_pairs.emplace_back(ia->second, ib->second);
  }
  return make(std::move(ids), le_pairs);
}

int Poset::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw DomainError("unknown poset element '" + id + "'");
  }
  return it->second;
}

std::optional<int> Poset::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

bool Poset::leq(int a, int b) const {
  const std::vector<int>& bl = below_[b];
  return std::binary_search(bl.begin(), bl.end(), a);
}

std::vector<int> Poset::minimal_elements() const {
  std::vector<int> out;
  for (int p = 0; p < size(); ++p) {
    if (is_minimal(p)) {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<int> Poset::maximal_elements() const {
  std::vector<int> count_above(size(), 0);
  for (int p = 0; p < size(); ++p) {
    for (int q : below_[p]) {
      if (q != p) {
        ++count_above[q];
      }
    }
  }
  std::vector<int> out;
  for (int p = 0; p < size(); ++p) {
    if (count_above[p] == 0) {
      out.push_back(p);
    }
  }
  return out;
}

bool Poset::compatible(int p, int q) const {
  const std::vector<int>& bp = below_[p];
  const std::vector<int>& bq = below_[q];
  // Both lists are sorted; intersect.
  std::size_t i = 0, j = 0;
  while (i < bp.size() && j < bq.size()) {
    if (bp[i] == bq[j]) return true;
    if (bp[i] < bq[j]) ++i; else ++j;
  }
  return false;
}

bool is_dense(const Poset& poset, const std::vector<int>& members) {
  for (int p = 0; p < poset.size(); ++p) {
    bool hit = false;
    for (int q : members) {
      if (poset.leq(q, p)) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      return false;
    }
  }
  return true;
}

bool is_filter(const Poset& poset, const std::vector<int>& members) {
  for (int p : members) {
    if (p < 0 || p >= poset.size()) {
      throw DomainError("filter member index out of range");
    }
  }
  // Upward closed.
  for (int p : members) {
    for (int q = 0; q < poset.size(); ++q) {
      if (poset.leq(p, q) &&
          std::find(members.begin(), members.end(), q) == members.end()) {
        return false;
      }
    }
  }
  // Pairwise compatible inside the set.
  for (int p : members) {
    for (int q : members) {
      bool met = false;
      for (int r : members) {
        if (poset.leq(r, p) && poset.leq(r, q)) {
          met = true;
          break;
        }
      }
      if (!met) {
        return false;
      }
    }
  }
  return true;
}

namespace {

std::vector<int> checked_members(const Poset& poset, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (int p : members) {
    if (p < 0 || p >= poset.size()) {
      throw DomainError("member index out of range");
    }
  }
  return members;
}

}  // namespace

DenseSet DenseSet::make(PosetPtr poset, std::vector<int> members) {
  if (!poset) {
    throw DomainError("dense set needs a poset");
  }
  members = checked_members(*poset, std::move(members));
  if (!is_dense(*poset, members)) {
    // Name one condition with nothing from the set at or below it.
    for (int p = 0; p < poset->size(); ++p) {
      bool hit = false;
      for (int q : members) {
        if (poset->leq(q, p)) hit = true;
      }
      if (!hit) {
        throw DomainError("set is not dense: no member at or below '" + poset->id(p) + "'");
      }
    }
  }
  return DenseSet(std::move(poset), std::move(members));
}

bool DenseSet::contains(int p) const {
  return std::binary_search(members_.begin(), members_.end(), p);
}

Filter Filter::make(PosetPtr poset, std::vector<int> members) {
  if (!poset) {
    throw DomainError("filter needs a poset");
  }
  members = checked_members(*poset, std::move(members));
  if (!is_filter(*poset, members)) {
    throw DomainError("set is not a filter (must be upward closed and directed)");
  }
  return Filter(std::move(poset), std::move(members));
}

Filter Filter::upset(PosetPtr poset, int p) {
  if (!poset) {
    throw DomainError("filter needs a poset");
  }
  if (p < 0 || p >= poset->size()) {
    throw DomainError("member index out of range");
  }
  std::vector<int> members;
  for (int q = 0; q < poset->size(); ++q) {
    if (poset->leq(p, q)) {
      members.push_back(q);
    }
  }
  return Filter(std::move(poset), std::move(members));
}

bool Filter::contains(int p) const {
  return std::binary_search(members_.begin(), members_.end(), p);
}

bool is_generic(const Filter& filter, const std::vector<DenseSet>& family) {
  for (const DenseSet& d : family) {
    if (d.poset() != filter.poset()) {
      throw DomainError("dense set belongs to a different poset than the filter");
    }
    bool met = false;
    for (int p : filter.members()) {
      if (d.contains(p)) {
        met = true;
        break;
      }
    }
    if (!met) {
      return false;
    }
  }
  return true;
}

bool is_generic_all(const Filter& filter, int max_elements) {
  const Poset& poset = *filter.poset();
  int n = poset.size();
  if (n > max_elements) {
    throw DomainError("exhaustive genericity check capped at " + std::to_string(max_elements) +
                      " elements, poset has " + std::to_string(n));
  }
  // Walk every subset; for the dense ones, demand a common member.
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<int> members;
    for (int p = 0; p < n; ++p) {
      if ((mask >> p) & 1u) {
        members.push_back(p);
      }
    }
    if (!is_dense(poset, members)) {
      continue;
    }
    bool met = false;
    for (int p : filter.members()) {
      if ((mask >> p) & 1u) {
        met = true;
        break;
      }
    }
    if (!met) {
      return false;
    }
  }
  return true;
}

std::vector<std::pair<std::string, DenseSet>> parse_dense_family(const PosetPtr& poset,
                                                                 std::string_view text) {
  if (!poset) {
    throw DomainError("dense family needs a poset");
  }
  std::vector<std::pair<std::string, DenseSet>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) {
      continue;
    }
    if (word != "dense") {
      throw SyntaxError("unknown directive '" + word + "'", line_no, 1);
    }
    std::string name, eq;
    if (!(ls >> name >> eq) || eq != "=") {
      throw SyntaxError("expected 'dense <name> = <id> ...'", line_no, 1);
    }
    std::vector<int> members;
    std::string id;
    while (ls >> id) {
      members.push_back(poset->index_of(id));
    }
    out.emplace_back(name, DenseSet::make(poset, std::move(members)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Completion

namespace {

// Subsets of the poset are bitmasks. Opens are down-sets.
std::uint32_t closure(const Poset& poset, std::uint32_t s) {
  std::uint32_t out = 0;
  for (int p = 0; p < poset.size(); ++p) {
    for (int q : poset.below(p)) {
      if ((s >> q) & 1u) {
        out |= 1u << p;
        break;
      }
    }
  }
  return out;
}

std::uint32_t interior(const Poset& poset, std::uint32_t s) {
  std::uint32_t out = 0;
  for (int p = 0; p < poset.size(); ++p) {
    bool inside = true;
    for (int q : poset.below(p)) {
      if (!((s >> q) & 1u)) {
        inside = false;
        break;
      }
    }
    if (inside) {
      out |= 1u << p;
    }
  }
  return out;
}

}  // namespace

Completion complete(const PosetPtr& poset, int max_elements) {
  if (!poset) {
    throw DomainError("completion needs a poset");
  }
  int n = poset->size();
  if (n > max_elements || n > 31) {
    throw DomainError("completion capped at " + std::to_string(std::min(max_elements, 31)) +
                      " elements, poset has " + std::to_string(n));
  }
  // Regularization of each principal down-set.
  std::vector<std::uint32_t> ro(n);
  for (int p = 0; p < n; ++p) {
    std::uint32_t down = 0;
    for (int q : poset->below(p)) {
      down |= 1u << q;
    }
    ro[p] = interior(*poset, closure(*poset, down));
  }
  // The atoms of the regular open algebra are the minimal sets in the image
  // of p -> ro[p]: every nonzero regular open contains some ro[p], so any
  // minimal one is of this shape.
  std::vector<std::uint32_t> distinct(ro);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::uint32_t> atoms;
  for (std::uint32_t cand : distinct) {
    bool minimal = true;
    for (std::uint32_t other : distinct) {
      if (other != cand && (other & cand) == other) {
        minimal = false;
        break;
      }
    }
    if (minimal) {
      atoms.push_back(cand);
    }
  }
  AlgebraPtr target = Algebra::make(static_cast<int>(atoms.size()));
  Completion completion{poset, target, {}};
  completion.embed.reserve(n);
  for (int p = 0; p < n; ++p) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if ((atoms[i] & ro[p]) == atoms[i]) {
        mask |= 1u << i;
      }
    }
    completion.embed.push_back(target->element(mask));
  }

  // The three Completion invariants are theorems of the construction; verify
  // them anyway so a bug cannot propagate into forcing results.
  for (int p = 0; p < n; ++p) {
    if (completion.embed[p].is_zero()) {
      throw DomainError("internal: completion embedded '" + poset->id(p) + "' as 0");
    }
    for (int q = 0; q < n; ++q) {
      if (poset->leq(q, p) && !leq(completion.embed[q], completion.embed[p])) {
        throw DomainError("internal: completion is not order-preserving");
      }
      bool incompatible = !poset->compatible(p, q);
      if (incompatible != meet(completion.embed[p], completion.embed[q]).is_zero()) {
        throw DomainError("internal: completion broke (in)compatibility");
      }
    }
  }
  for (std::uint32_t b = 1; b <= target->full_mask(); ++b) {
    bool covered = false;
    for (int p = 0; p < n && !covered; ++p) {
      covered = (completion.embed[p].mask() & ~b) == 0;
    }
    if (!covered) {
      throw DomainError("internal: completion image is not dense");
    }
  }
  return completion;
}

}  // namespace forcelab
