#include "forcelab/forcing.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace forcelab {

namespace {

constexpr int kMaxFiniteCells = 12;

std::string cell_text(const Condition::Cell& cell, int bit,
                      const std::vector<std::string>& row_labels) {
  std::ostringstream out;
  out << '(' << row_labels[cell.first] << ',' << cell.second << ")->" << bit;
  return out.str();
}

std::vector<std::string> make_row_labels(int rows) {
  std::vector<std::string> labels;
  labels.reserve(rows);
  for (int r = 0; r < rows; ++r) {
    labels.push_back("r" + std::to_string(r));
  }
  return labels;
}

void check_row(int row, int rows) {
  if (row < 0 || row >= rows) {
    throw DomainError("row " + std::to_string(row) + " outside 0.." + std::to_string(rows - 1));
  }
}

}  // namespace

std::optional<int> Condition::at(int row, int col) const {
  auto it = entries_.find({row, col});
  if (it == entries_.end()) {
    return std::nullopt;
  }
  return it->second;
}

void Condition::set(int row, int col, int bit) {
  if (row < 0 || col < 0) {
    throw DomainError("condition cells need nonnegative coordinates");
  }
  if (bit != 0 && bit != 1) {
    throw DomainError("condition values must be 0 or 1");
  }
  auto [it, inserted] = entries_.emplace(Cell{row, col}, bit);
  if (!inserted && it->second != bit) {
    throw DomainError("cell (" + std::to_string(row) + "," + std::to_string(col) +
                      ") already set to " + std::to_string(it->second));
  }
}

bool Condition::extends(const Condition& weaker) const {
  for (const auto& [cell, bit] : weaker.entries_) {
    auto it = entries_.find(cell);
    if (it == entries_.end() || it->second != bit) {
      return false;
    }
  }
  return true;
}

int Condition::max_col() const {
  int best = -1;
  for (const auto& [cell, bit] : entries_) {
    best = std::max(best, cell.second);
  }
  return best;
}

std::string Condition::to_string(const std::vector<std::string>& row_labels) const {
  std::string out = "{";
  bool first = true;
  for (const auto& [cell, bit] : entries_) {
    if (cell.first < 0 || cell.first >= static_cast<int>(row_labels.size())) {
      throw DomainError("condition mentions row " + std::to_string(cell.first) +
                        " outside the labeled range");
    }
    if (!first) {
      out += ',';
    }
    first = false;
    out += cell_text(cell, bit, row_labels);
  }
  out += '}';
  return out;
}

namespace {

// Cursor-based parser for `{(r0,0)->1,(r1,2)->0}`.
class ConditionParser {
public:
  ConditionParser(std::string_view text, const std::vector<std::string>& row_labels)
      : text_(text), row_labels_(row_labels) {}

  Condition parse() {
    expect('{');
    Condition result;
    skip_space();
    if (peek() == '}') {
      ++pos_;
    } else {
      parse_entry(result);
      while (skip_space(), peek() == ',') {
        ++pos_;
        parse_entry(result);
      }
      expect('}');
    }
    skip_space();
    if (pos_ != text_.size()) {
      fail("trailing input after condition");
    }
    return result;
  }

private:
  void parse_entry(Condition& result) {
    expect('(');
    int row = parse_row();
    expect(',');
    int col = parse_number("column");
    expect(')');
    expect('-');
    if (peek() != '>') {
      fail("expected '->' after the cell");
    }
    ++pos_;
    skip_space();
    int bit = parse_number("bit");
    if (bit != 0 && bit != 1) {
      fail("cell values must be 0 or 1");
    }
    size_t before = result.entries().size();
    result.set(row, col, bit);
    if (result.entries().size() == before) {
      fail("duplicate cell in condition");
    }
  }

  int parse_row() {
    skip_space();
    size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 ||
                                   text_[pos_] == '_')) {
      ++pos_;
    }
    std::string label(text_.substr(start, pos_ - start));
    for (int r = 0; r < static_cast<int>(row_labels_.size()); ++r) {
      if (row_labels_[r] == label) {
        return r;
      }
    }
    fail("unknown row label '" + label + "'");
  }

  int parse_number(const std::string& what) {
    skip_space();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
      ++pos_;
    }
    if (pos_ == start) {
      fail("expected a " + what);
    }
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    skip_space();
    if (peek() != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message, 1, static_cast<int>(pos_) + 1);
  }

  std::string_view text_;
  const std::vector<std::string>& row_labels_;
  size_t pos_ = 0;
};

}  // namespace

Condition Condition::parse(std::string_view text, const std::vector<std::string>& row_labels) {
  return ConditionParser(text, row_labels).parse();
}

Condition union_conditions(const std::vector<Condition>& conditions) {
  Condition result;
  for (const Condition& c : conditions) {
    for (const auto& [cell, bit] : c.entries()) {
      auto existing = result.at(cell.first, cell.second);
      if (existing && *existing != bit) {
        throw DomainError("conditions disagree at cell (" + std::to_string(cell.first) + "," +
                          std::to_string(cell.second) + "); the family is not directed");
      }
      result.set(cell.first, cell.second, bit);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Finite truncation. Conditions are numbered by base-3 codes, one digit per
// cell in row-major order: 0 = undefined, 1 = bit 0, 2 = bit 1.

FiniteCohenPoset cohen_poset_finite(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw DomainError("the grid needs at least one row and one column");
  }
  if (rows * cols > kMaxFiniteCells) {
    throw DomainError("grid of " + std::to_string(rows * cols) + " cells exceeds the cap of " +
                      std::to_string(kMaxFiniteCells));
  }
  const int cells = rows * cols;
  int total = 1;
  for (int i = 0; i < cells; ++i) {
    total *= 3;
  }

  FiniteCohenPoset result;
  result.rows = rows;
  result.cols = cols;
  result.row_labels = make_row_labels(rows);
  result.conditions.reserve(total);

  std::vector<std::string> ids;
  ids.reserve(total);
  for (int code = 0; code < total; ++code) {
    Condition c;
    int rest = code;
    for (int cell = 0; cell < cells; ++cell) {
      int digit = rest % 3;
      rest /= 3;
      if (digit != 0) {
        c.set(cell / cols, cell % cols, digit - 1);
      }
    }
    std::string text = c.to_string(result.row_labels);
    // Poset element ids carry no braces: `()` for empty, else the entry list.
    ids.push_back(c.empty() ? "()" : text.substr(1, text.size() - 2));
    result.conditions.push_back(std::move(c));
  }

  // The strengthenings of a condition fill in its undefined cells freely.
  std::vector<std::vector<int>> below(total);
  std::vector<int> undefined;
  for (int code = 0; code < total; ++code) {
    undefined.clear();
    int rest = code;
    for (int cell = 0; cell < cells; ++cell) {
      if (rest % 3 == 0) {
        undefined.push_back(cell);
      }
      rest /= 3;
    }
    int ways = 1;
    for (size_t i = 0; i < undefined.size(); ++i) {
      ways *= 3;
    }
    std::vector<int>& exts = below[code];
    exts.reserve(ways);
    std::vector<int> power(undefined.size());
    for (size_t i = 0; i < undefined.size(); ++i) {
      int p = 1;
      for (int cell = 0; cell < undefined[i]; ++cell) {
        p *= 3;
      }
      power[i] = p;
    }
    for (int fill = 0; fill < ways; ++fill) {
      int ext = code;
      int rest_fill = fill;
      for (size_t i = 0; i < undefined.size(); ++i) {
        ext += (rest_fill % 3) * power[i];
        rest_fill /= 3;
      }
      exts.push_back(ext);
    }
  }

  result.poset = Poset::from_closed(std::move(ids), std::move(below));
  return result;
}

int FiniteCohenPoset::index_of(const Condition& c) const {
  const int cells = rows * cols;
  int code = 0;
  int power = 1;
  for (int cell = 0; cell < cells; ++cell) {
    auto bit = c.at(cell / cols, cell % cols);
    if (bit) {
      code += (*bit + 1) * power;
    }
    power *= 3;
  }
  for (const auto& [cell, bit] : c.entries()) {
    if (cell.first >= rows || cell.second >= cols) {
      throw DomainError("condition mentions cell (" + std::to_string(cell.first) + "," +
                        std::to_string(cell.second) + ") outside the " + std::to_string(rows) +
                        "x" + std::to_string(cols) + " grid");
    }
  }
  return code;
}

DenseSet dense_point(const FiniteCohenPoset& poset, int row, int col) {
  check_row(row, poset.rows);
  if (col < 0 || col >= poset.cols) {
    throw DomainError("column " + std::to_string(col) + " outside 0.." +
                      std::to_string(poset.cols - 1));
  }
  std::vector<int> members;
  for (int i = 0; i < poset.poset->size(); ++i) {
    if (poset.conditions[i].defined_at(row, col)) {
      members.push_back(i);
    }
  }
  return DenseSet::make(poset.poset, std::move(members));
}

namespace {

bool separates(const Condition& c, int row1, int row2) {
  for (const auto& [cell, bit] : c.entries()) {
    if (cell.first == row1) {
      auto other = c.at(row2, cell.second);
      if (other && *other != bit) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

DistinctReport dense_distinct(const FiniteCohenPoset& poset, int row1, int row2) {
  check_row(row1, poset.rows);
  check_row(row2, poset.rows);
  if (row1 == row2) {
    throw DomainError("distinctness needs two different rows");
  }
  DistinctReport report;
  std::vector<char> is_member(poset.poset->size(), 0);
  for (int i = 0; i < poset.poset->size(); ++i) {
    if (separates(poset.conditions[i], row1, row2)) {
      is_member[i] = 1;
      report.members.push_back(i);
    }
  }
  for (int p = 0; p < poset.poset->size(); ++p) {
    bool met = false;
    for (int q : poset.poset->below(p)) {
      if (is_member[q] != 0) {
        met = true;
        break;
      }
    }
    if (!met) {
      report.counterexample = poset.conditions[p];
      return report;
    }
  }
  report.dense = DenseSet::make(poset.poset, report.members);
  return report;
}

HitResult hit_dense_sets(const PosetPtr& poset, const std::vector<DenseSet>& family,
                         std::uint64_t seed) {
  for (const DenseSet& d : family) {
    if (d.poset() != poset) {
      throw DomainError("dense set belongs to a different poset");
    }
  }
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  std::vector<int> maximal = poset->maximal_elements();
  int current = maximal[rng() % maximal.size()];
  std::vector<int> chain{current};
  for (const DenseSet& d : family) {
    std::vector<int> candidates;
    for (int q : d.members()) {
      if (poset->leq(q, current)) {
        candidates.push_back(q);
      }
    }
    if (candidates.empty()) {
      throw DomainError("internal: dense set has no member below '" + poset->id(current) + "'");
    }
    // Keep the weakest candidates (least information added).
    std::vector<int> weakest;
    for (int q : candidates) {
      bool dominated = false;
      for (int r : candidates) {
        if (r != q && poset->leq(q, r)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) {
        weakest.push_back(q);
      }
    }
    current = weakest[rng() % weakest.size()];
    chain.push_back(current);
  }
  return HitResult{std::move(chain), Filter::upset(poset, current)};
}

Condition union_of_filter(const FiniteCohenPoset& poset, const Filter& filter) {
  if (filter.poset() != poset.poset) {
    throw DomainError("filter belongs to a different poset");
  }
  std::vector<Condition> members;
  members.reserve(filter.members().size());
  for (int i : filter.members()) {
    members.push_back(poset.conditions[i]);
  }
  return union_conditions(members);
}

// ---------------------------------------------------------------------------
// Lazy poset

LazyCohenPoset cohen_poset_lazy(int rows) {
  if (rows < 1) {
    throw DomainError("the grid needs at least one row");
  }
  return LazyCohenPoset{rows, make_row_labels(rows)};
}

LazyDense dense_point(const LazyCohenPoset& poset, int row, int col) {
  check_row(row, poset.rows);
  if (col < 0) {
    throw DomainError("column " + std::to_string(col) + " is negative");
  }
  return LazyDense(LazyDense::Kind::Point, row, col);
}

LazyDense dense_distinct(const LazyCohenPoset& poset, int row1, int row2) {
  check_row(row1, poset.rows);
  check_row(row2, poset.rows);
  if (row1 == row2) {
    throw DomainError("distinctness needs two different rows");
  }
  return LazyDense(LazyDense::Kind::Distinct, row1, row2);
}

bool LazyDense::contains(const Condition& c) const {
  if (kind_ == Kind::Point) {
    return c.defined_at(a_, b_);
  }
  return separates(c, a_, b_);
}

Condition LazyDense::extend(const Condition& c, std::mt19937& rng) const {
  if (contains(c)) {
    return c;
  }
  Condition result = c;
  if (kind_ == Kind::Point) {
    result.set(a_, b_, static_cast<int>(rng() % 2));
    return result;
  }
  // Separate rows a_ and b_ at the cheapest column: one new cell when some
  // column already pins one of the rows, otherwise two new cells at a column
  // untouched by both (a fresh column always qualifies).
  std::vector<std::pair<int, int>> one_cell;  // (col, row to set)
  std::vector<int> two_cell;
  for (int col = 0; col <= c.max_col() + 1; ++col) {
    auto va = c.at(a_, col);
    auto vb = c.at(b_, col);
    if (va && vb) {
      continue;  // both pinned equal here; no separation possible
    }
    if (va) {
      one_cell.emplace_back(col, b_);
    } else if (vb) {
      one_cell.emplace_back(col, a_);
    } else {
      two_cell.push_back(col);
    }
  }
  if (!one_cell.empty()) {
    auto [col, row] = one_cell[rng() % one_cell.size()];
    int other = (row == a_) ? b_ : a_;
    result.set(row, col, 1 - *c.at(other, col));
    return result;
  }
  int col = two_cell[rng() % two_cell.size()];
  int first_bit = static_cast<int>(rng() % 2);
  result.set(a_, col, first_bit);
  result.set(b_, col, 1 - first_bit);
  return result;
}

std::string LazyDense::describe(const std::vector<std::string>& row_labels) const {
  std::ostringstream out;
  if (kind_ == Kind::Point) {
    out << "defined at (" << row_labels[a_] << ',' << b_ << ')';
  } else {
    out << "rows " << row_labels[a_] << " and " << row_labels[b_] << " differ at some column";
  }
  return out.str();
}

LazyHitResult hit_dense_sets(const LazyCohenPoset& poset, const std::vector<LazyDense>& family,
                             std::uint64_t seed) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  Condition current;
  std::vector<Condition> chain{current};
  for (const LazyDense& d : family) {
    Condition next = d.extend(current, rng);
    if (!next.extends(current) || !d.contains(next)) {
      throw DomainError("internal: dense-set extension failed near " +
                        current.to_string(poset.row_labels));
    }
    current = std::move(next);
    chain.push_back(current);
  }
  return LazyHitResult{std::move(chain)};
}

Condition union_of_chain(const LazyHitResult& result) {
  if (result.chain.empty()) {
    throw DomainError("empty chain has no union");
  }
  for (size_t i = 1; i < result.chain.size(); ++i) {
    if (!result.chain[i].extends(result.chain[i - 1])) {
      throw DomainError("chain is not descending at step " + std::to_string(i));
    }
  }
  return result.chain.back();
}

// ---------------------------------------------------------------------------
// Forcing relation

bool forces(const Completion& completion, int condition, const Formula& sentence,
            ValuationContext& ctx) {
  if (ctx.universe().algebra() != completion.target) {
    throw DomainError("valuation context algebra differs from the completion target");
  }
  if (condition < 0 || condition >= completion.source->size()) {
    throw DomainError("condition index " + std::to_string(condition) + " outside the poset");
  }
  auto frees = free_vars(sentence);
  if (!frees.empty()) {
    throw DomainError("forcing needs a sentence; '" + *frees.begin() + "' is free");
  }
  return leq(completion.embed_of(condition), ctx.val_formula(sentence));
}

bool forces(const Completion& completion, const std::string& condition_id,
            const Formula& sentence, ValuationContext& ctx) {
  return forces(completion, completion.source->index_of(condition_id), sentence, ctx);
}

}  // namespace forcelab
