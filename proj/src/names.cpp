#include "forcelab/names.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "forcelab/valuation.hpp"

namespace forcelab {

namespace {

bool valid_name_id(const std::string& id) {
  if (id.empty()) {
    return false;
  }
  if (!(std::isalpha(static_cast<unsigned char>(id[0])) || id[0] == '_')) {
    return false;
  }
  for (char c : id) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
      return false;
    }
  }
  // Formula keywords cannot double as constants.
  return id != "forall" && id != "exists" && id != "in" && id != "sub";
}

}  // namespace

NameUniverse::NameUniverse(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
  if (!algebra_) {
    throw DomainError("a name universe needs an algebra");
  }
}

const Name& NameUniverse::name(int i) const {
  if (i < 0 || i >= size()) {
    throw DomainError("name index out of range");
  }
  return names_[i];
}

int NameUniverse::rank(int i) const {
  if (i < 0 || i >= size()) {
    throw DomainError("name index out of range");
  }
  return ranks_[i];
}

int NameUniverse::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw DomainError("unknown name '" + id + "'");
  }
  return it->second;
}

std::optional<int> NameUniverse::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

void NameUniverse::add(Name name) {
  if (!valid_name_id(name.id)) {
    throw DomainError("name id '" + name.id + "' is not usable as a formula constant");
  }
  if (index_.count(name.id)) {
    throw DomainError("duplicate name id '" + name.id + "'");
  }
  std::sort(name.entries.begin(), name.entries.end(),
            [](const NameEntry& a, const NameEntry& b) { return a.child < b.child; });
  int rank = 0;
  for (std::size_t i = 0; i < name.entries.size(); ++i) {
    const NameEntry& e = name.entries[i];
    if (e.child < 0 || e.child >= size()) {
      throw DomainError("name '" + name.id + "' references an index outside the universe");
    }
    if (i > 0 && name.entries[i - 1].child == e.child) {
      throw DomainError("name '" + name.id + "' lists child '" + names_[e.child].id + "' twice");
    }
    if (!e.value.valid() || e.value.parent() != algebra_) {
      throw DomainError("name '" + name.id + "' has a value from another algebra");
    }
    rank = std::max(rank, ranks_[e.child] + 1);
  }
  index_.emplace(name.id, size());
  ranks_.push_back(rank);
  names_.push_back(std::move(name));
}

NameUniverse NameUniverse::with_name(Name name) const {
  NameUniverse out = *this;
  out.add(std::move(name));
  return out;
}

std::string NameUniverse::fresh_id(const std::string& stem) const {
  for (int k = 0;; ++k) {
    std::string candidate = stem + std::to_string(k);
    if (!index_.count(candidate)) {
      return candidate;
    }
  }
}

int NameUniverse::intern_check_name(NameUniverse& universe, const HFSet& set) {
  std::string key = set.to_string();
  if (auto it = universe.check_cache_.find(key); it != universe.check_cache_.end()) {
    return it->second;
  }
  std::vector<NameEntry> entries;
  entries.reserve(set.elements().size());
  for (const HFSet& elem : set.elements()) {
    entries.push_back({intern_check_name(universe, elem), universe.algebra()->one()});
  }
  universe.add(Name{universe.fresh_id("hf"), std::move(entries)});
  int index = universe.size() - 1;
  universe.check_cache_[key] = index;
  return index;
}

std::pair<NameUniverse, int> check_name(const NameUniverse& universe, const HFSet& set) {
  NameUniverse out = universe;
  int index = NameUniverse::intern_check_name(out, set);
  return {std::move(out), index};
}

std::pair<NameUniverse, int> powerset_name(const NameUniverse& universe, int x,
                                           std::uint64_t max_entries) {
  const Name& base = universe.name(x);
  const AlgebraPtr& algebra = universe.algebra();
  std::uint64_t domain = base.entries.size();
  // |B|^|dom(x)| candidate functions, cap-checked before materializing.
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < domain; ++i) {
    if (count > max_entries / algebra->size()) {
      throw DomainError("power set of '" + base.id + "' would have more than " +
                        std::to_string(max_entries) + " entries");
    }
    count *= algebra->size();
  }
  if (count > max_entries) {
    throw DomainError("power set of '" + base.id + "' would have more than " +
                      std::to_string(max_entries) + " entries");
  }

  NameUniverse out = universe;
  std::string stem = base.id + "_pw";
  std::vector<int> candidates;
  candidates.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    // Digits of `code` in base |B| pick the value of each child of x.
    std::vector<NameEntry> entries;
    entries.reserve(domain);
    std::uint64_t rest = code;
    for (const NameEntry& e : base.entries) {
      entries.push_back({e.child, algebra->element(static_cast<std::uint32_t>(rest % algebra->size()))});
      rest /= algebra->size();
    }
    out.add(Name{out.fresh_id(stem), std::move(entries)});
    candidates.push_back(out.size() - 1);
  }
  ValuationContext ctx(out);
  std::vector<NameEntry> entries;
  entries.reserve(candidates.size());
  for (int w : candidates) {
    entries.push_back({w, ctx.val_subset(w, x)});
  }
  out.add(Name{out.fresh_id(base.id + "_powerset"), std::move(entries)});
  return {out, out.size() - 1};
}

NameUniverse load_names(const AlgebraPtr& algebra, std::string_view text) {
  NameUniverse universe(algebra);
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
    if (word != "name") {
      throw SyntaxError("unknown directive '" + word + "'", line_no, 1);
    }
    std::string id;
    if (!(ls >> id)) {
      throw SyntaxError("expected 'name <id> { ... }'", line_no, 1);
    }
    std::string rest;
    std::getline(ls, rest);
    std::size_t open = rest.find('{');
    std::size_t close = rest.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open) {
      throw SyntaxError("expected '{ <child> : <element>, ... }'", line_no, 1);
    }
    std::string body = rest.substr(open + 1, close - open - 1);
    std::vector<NameEntry> entries;
    // Entries split on commas at brace depth zero, so `{a0,a1}` literals in
    // values survive.
    std::vector<std::string> parts;
    std::string current;
    int depth = 0;
    for (char c : body) {
      if (c == '{') ++depth;
      if (c == '}') --depth;
      if (c == ',' && depth == 0) {
        parts.push_back(current);
        current.clear();
      } else {
        current += c;
      }
    }
    parts.push_back(current);
    for (const std::string& part : parts) {
      std::size_t colon = part.find(':');
      if (colon == std::string::npos) {
        std::string trimmed = part;
        trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(),
                                     [](unsigned char c) { return std::isspace(c); }),
                      trimmed.end());
        if (trimmed.empty()) {
          continue;  // empty body or trailing comma
        }
        throw SyntaxError("entry '" + part + "' is missing ':'", line_no, 1);
      }
      std::string child = part.substr(0, colon);
      child.erase(std::remove_if(child.begin(), child.end(),
                                 [](unsigned char c) { return std::isspace(c); }),
                  child.end());
      auto child_index = universe.find(child);
      if (!child_index) {
        throw DomainError("name '" + id + "' references undeclared name '" + child + "'");
      }
      entries.push_back({*child_index, parse_element(algebra, part.substr(colon + 1))});
    }
    universe.add(Name{id, std::move(entries)});
  }
  return universe;
}

NameUniverse universe_up_to_rank(const AlgebraPtr& algebra, int max_rank,
                                 std::uint64_t max_names) {
  if (!algebra) {
    throw DomainError("universe_up_to_rank needs an algebra");
  }
  if (max_rank < 0) {
    throw DomainError("rank bound must be nonnegative");
  }
  NameUniverse universe(algebra);
  universe.add(Name{"n0", {}});
  int previous_size = 0;  // names of rank <= r-2
  for (int r = 1; r <= max_rank; ++r) {
    int base_size = universe.size();  // names of rank <= r-1
    // (|B|+1)^base_size functions exist from subsets of the current universe;
    // check the cap before enumerating anything.
    std::uint64_t total = 1;
    for (int i = 0; i < base_size; ++i) {
      if (total > max_names * 2) {
        break;
      }
      total *= algebra->size() + 1;
    }
    if (total > max_names) {
      throw DomainError("universe of rank <= " + std::to_string(r) + " would exceed " +
                        std::to_string(max_names) + " names");
    }
    // Enumerate domains as subsets of [0, base_size); a function is new at
    // this rank exactly when its domain reaches a name of rank r-1.
    for (std::uint64_t domain_mask = 1; domain_mask < (std::uint64_t{1} << base_size);
         ++domain_mask) {
      if ((domain_mask >> previous_size) == 0) {
        continue;  // all children have rank <= r-2; already enumerated
      }
      std::vector<int> domain;
      for (int i = 0; i < base_size; ++i) {
        if ((domain_mask >> i) & 1u) {
          domain.push_back(i);
        }
      }
      std::uint64_t assignments = 1;
      for (std::size_t i = 0; i < domain.size(); ++i) {
        assignments *= algebra->size();
      }
      for (std::uint64_t code = 0; code < assignments; ++code) {
        std::vector<NameEntry> entries;
        entries.reserve(domain.size());
        std::uint64_t rest = code;
        for (int child : domain) {
          entries.push_back(
              {child, algebra->element(static_cast<std::uint32_t>(rest % algebra->size()))});
          rest /= algebra->size();
        }
        universe.add(Name{universe.fresh_id("n"), std::move(entries)});
      }
    }
    previous_size = base_size;
  }
  return universe;
}

NameUniverse random_universe(const AlgebraPtr& algebra, std::uint64_t seed, int rank1_count,
                             int rank2_count) {
  if (!algebra) {
    throw DomainError("random_universe needs an algebra");
  }
  if (rank1_count < 0 || rank2_count < 0) {
    throw DomainError("counts must be nonnegative");
  }
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  auto random_value = [&] {
    return algebra->element(static_cast<std::uint32_t>(rng() % algebra->size()));
  };
  NameUniverse universe(algebra);
  universe.add(Name{"z", {}});
  for (int i = 0; i < rank1_count; ++i) {
    universe.add(Name{"s" + std::to_string(i), {{0, random_value()}}});
  }
  int low_rank = universe.size();  // all names so far have rank <= 1
  for (int i = 0; i < rank2_count; ++i) {
    std::vector<NameEntry> entries;
    for (int child = 0; child < low_rank; ++child) {
      if (rng() % 2 == 0) {
        entries.push_back({child, random_value()});
      }
    }
    universe.add(Name{"t" + std::to_string(i), std::move(entries)});
  }
  return universe;
}

}  // namespace forcelab
