#include "forcelab/hf.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

namespace forcelab {

HFSet::HFSet(std::vector<HFSet> elements) : elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

int HFSet::rank() const {
  int r = 0;
  for (const HFSet& e : elems_) {
    r = std::max(r, e.rank() + 1);
  }
  return r;
}

bool HFSet::contains(const HFSet& x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

int HFSet::compare(const HFSet& a, const HFSet& b) {
  std::size_t n = std::min(a.elems_.size(), b.elems_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a.elems_[i], b.elems_[i]);
    if (c != 0) {
      return c;
    }
  }
  if (a.elems_.size() < b.elems_.size()) return -1;
  if (a.elems_.size() > b.elems_.size()) return 1;
  return 0;
}

std::string HFSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += elems_[i].to_string();
  }
  out += "}";
  return out;
}

namespace {

HFSet parse_set(std::string_view text, std::size_t& pos) {
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  };
  skip_ws();
  if (pos >= text.size() || text[pos] != '{') {
    throw SyntaxError("expected '{'", 1, static_cast<int>(pos) + 1);
  }
  ++pos;
  std::vector<HFSet> elems;
  skip_ws();
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
    return HFSet(std::move(elems));
  }
  for (;;) {
    elems.push_back(parse_set(text, pos));
    skip_ws();
    if (pos < text.size() && text[pos] == '}') {
      ++pos;
      return HFSet(std::move(elems));
    }
    if (pos >= text.size() || text[pos] != ',') {
      throw SyntaxError("expected ',' or '}'", 1, static_cast<int>(pos) + 1);
    }
    ++pos;
  }
}

}  // namespace

HFSet HFSet::parse(std::string_view text) {
  std::size_t pos = 0;
  HFSet s = parse_set(text, pos);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
  if (pos != text.size()) {
    throw SyntaxError("trailing input after set", 1, static_cast<int>(pos) + 1);
  }
  return s;
}

std::vector<HFSet> HFSet::all_up_to_rank(int k) {
  if (k < 0 || k > 4) {
    throw DomainError("rank bound must lie in 0..4");
  }
  std::vector<HFSet> level = {HFSet()};
  for (int r = 1; r <= k; ++r) {
    // Level r holds every subset of level r-1.
    std::vector<HFSet> next;
    next.reserve(std::size_t{1} << level.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << level.size()); ++mask) {
      std::vector<HFSet> elems;
      for (std::size_t i = 0; i < level.size(); ++i) {
        if ((mask >> i) & 1u) {
          elems.push_back(level[i]);
        }
      }
      next.emplace_back(std::move(elems));
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());
  return level;
}

}  // namespace forcelab
