#include "forcelab/algebra.hpp"

#include <algorithm>
#include <cctype>

namespace forcelab {
namespace {

const Algebra& require_same_parent(const Elem& x, const Elem& y) {
  if (!x.valid() || !y.valid()) {
    throw DomainError("lattice operation on a detached element");
  }
  if (x.parent() != y.parent()) {
    throw DomainError("mixed elements of two different algebras");
  }
  return *x.parent();
}

}  // namespace

bool Elem::is_one() const {
  return parent_ != nullptr && mask_ == parent_->full_mask();
}

Algebra::Algebra(int atom_count) : atom_count_(atom_count) {
  labels_.reserve(atom_count);
  for (int i = 0; i < atom_count; ++i) {
    labels_.push_back("a" + std::to_string(i));
  }
}

AlgebraPtr Algebra::make(int atom_count, int max_atoms) {
  if (max_atoms < 1 || max_atoms > 31) {
    throw DomainError("atom cap must lie in 1..31");
  }
  if (atom_count < 1) {
    throw DomainError("an algebra needs at least one atom (the one-element algebra is rejected)");
  }
  if (atom_count > max_atoms) {
    throw DomainError("atom count " + std::to_string(atom_count) + " exceeds cap " +
                      std::to_string(max_atoms));
  }
  return AlgebraPtr(new Algebra(atom_count));
}

Elem Algebra::zero() const { return Elem(shared_from_this(), 0); }

Elem Algebra::one() const { return Elem(shared_from_this(), full_mask()); }

Elem Algebra::atom(int index) const {
  if (index < 0 || index >= atom_count_) {
    throw DomainError("atom index " + std::to_string(index) + " out of range");
  }
  return Elem(shared_from_this(), 1u << index);
}

Elem Algebra::element(std::uint32_t mask) const {
  if (mask > full_mask()) {
    throw DomainError("element mask out of range for this algebra");
  }
  return Elem(shared_from_this(), mask);
}

std::vector<Elem> Algebra::elements() const {
  if (atom_count_ > 16) {
    throw DomainError("refusing to materialize more than 2^16 elements");
  }
  std::vector<Elem> out;
  out.reserve(size());
  for (std::uint32_t m = 0; m <= full_mask(); ++m) {
    out.push_back(Elem(shared_from_this(), m));
  }
  return out;
}

Elem meet(const Elem& x, const Elem& y) {
  const Algebra& a = require_same_parent(x, y);
  return a.element(x.mask() & y.mask());
}

Elem join(const Elem& x, const Elem& y) {
  const Algebra& a = require_same_parent(x, y);
  return a.element(x.mask() | y.mask());
}

Elem complement(const Elem& x) {
  if (!x.valid()) {
    throw DomainError("lattice operation on a detached element");
  }
  return x.parent()->element(~x.mask() & x.parent()->full_mask());
}

Elem implies(const Elem& x, const Elem& y) { return join(complement(x), y); }

bool leq(const Elem& x, const Elem& y) {
  require_same_parent(x, y);
  return (x.mask() & y.mask()) == x.mask();
}

Elem big_join(const AlgebraPtr& algebra, const std::vector<Elem>& xs) {
  if (!algebra) {
    throw DomainError("big_join needs an algebra");
  }
  Elem acc = algebra->zero();
  for (const Elem& x : xs) {
    acc = join(acc, x);
  }
  return acc;
}

Elem big_meet(const AlgebraPtr& algebra, const std::vector<Elem>& xs) {
  if (!algebra) {
    throw DomainError("big_meet needs an algebra");
  }
  Elem acc = algebra->one();
  for (const Elem& x : xs) {
    acc = meet(acc, x);
  }
  return acc;
}

Ultrafilter::Ultrafilter(AlgebraPtr parent, int generator_atom)
    : parent_(std::move(parent)), generator_(generator_atom) {
  if (!parent_) {
    throw DomainError("ultrafilter needs an algebra");
  }
  if (generator_ < 0 || generator_ >= parent_->atom_count()) {
    throw DomainError("ultrafilter generator atom out of range");
  }
}

bool Ultrafilter::contains(const Elem& x) const {
  if (!x.valid() || x.parent() != parent_) {
    throw DomainError("ultrafilter membership test on an element of another algebra");
  }
  return x.has_atom(generator_);
}

std::vector<Elem> Ultrafilter::members() const {
  std::vector<Elem> out;
  for (std::uint32_t m = 0; m <= parent_->full_mask(); ++m) {
    if ((m >> generator_) & 1u) {
      out.push_back(parent_->element(m));
    }
  }
  return out;
}

std::string Ultrafilter::describe() const { return "U(a" + std::to_string(generator_) + ")"; }

std::vector<Ultrafilter> ultrafilters(const AlgebraPtr& algebra) {
  if (!algebra) {
    throw DomainError("ultrafilters needs an algebra");
  }
  std::vector<Ultrafilter> out;
  out.reserve(algebra->atom_count());
  for (int i = 0; i < algebra->atom_count(); ++i) {
    out.emplace_back(algebra, i);
  }
  return out;
}

namespace {

// Recursive-descent parser for the element expression syntax.
class ElemParser {
public:
  ElemParser(const AlgebraPtr& algebra, std::string_view text)
      : algebra_(algebra), text_(text) {}

  Elem parse() {
    Elem e = implication();
    skip_ws();
    if (pos_ != text_.size()) {
      fail("trailing input after element expression");
    }
    return e;
  }

private:
  Elem implication() {
    Elem lhs = disjunction();
    skip_ws();
    if (match("=>")) {
      Elem rhs = implication();  // right-associative
      return implies(lhs, rhs);
    }
    return lhs;
  }

  Elem disjunction() {
    Elem acc = conjunction();
    for (;;) {
      skip_ws();
      if (!match("|")) {
        return acc;
      }
      acc = join(acc, conjunction());
    }
  }

  Elem conjunction() {
    Elem acc = unary();
    for (;;) {
      skip_ws();
      if (!match("&")) {
        return acc;
      }
      acc = meet(acc, unary());
    }
  }

  Elem unary() {
    skip_ws();
    if (match("~")) {
      return complement(unary());
    }
    return primary();
  }

  Elem primary() {
    skip_ws();
    if (pos_ >= text_.size()) {
      fail("unexpected end of element expression");
    }
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Elem e = implication();
      skip_ws();
      if (!match(")")) {
        fail("expected ')'");
      }
      return e;
    }
    if (c == '{') {
      return brace_literal();
    }
    if (c == '0') {
      ++pos_;
      return algebra_->zero();
    }
    if (c == '1') {
      ++pos_;
      return algebra_->one();
    }
    if (c == 'a') {
      return atom_token();
    }
    fail(std::string("unexpected character '") + c + "' in element expression");
  }

  Elem brace_literal() {
    ++pos_;  // consume '{'
    std::uint32_t mask = 0;
    skip_ws();
    if (match("}")) {
      return algebra_->element(0);
    }
    for (;;) {
      skip_ws();
      mask |= atom_token().mask();
      skip_ws();
      if (match("}")) {
        return algebra_->element(mask);
      }
      if (!match(",")) {
        fail("expected ',' or '}' in brace literal");
      }
    }
  }

  Elem atom_token() {
    if (pos_ >= text_.size() || text_[pos_] != 'a') {
      fail("expected an atom name");
    }
    std::size_t start = ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == start) {
      fail("atom name must be 'a' followed by digits");
    }
    int index = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (index >= algebra_->atom_count()) {
      fail("unknown atom a" + std::to_string(index) + " (algebra has " +
           std::to_string(algebra_->atom_count()) + " atoms)");
    }
    return algebra_->atom(index);
  }

  bool match(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw SyntaxError(msg, 1, static_cast<int>(pos_) + 1);
  }

  const AlgebraPtr& algebra_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Elem parse_element(const AlgebraPtr& algebra, std::string_view text) {
  if (!algebra) {
    throw DomainError("parse_element needs an algebra");
  }
  return ElemParser(algebra, text).parse();
}

std::string to_string(const Elem& x) {
  if (!x.valid()) {
    return "<detached>";
  }
  if (x.is_one()) {
    return "1";
  }
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < x.parent()->atom_count(); ++i) {
    if (x.has_atom(i)) {
      if (!first) {
        out += ",";
      }
      out += "a" + std::to_string(i);
      first = false;
    }
  }
  out += "}";
  return out;
}

}  // namespace forcelab
