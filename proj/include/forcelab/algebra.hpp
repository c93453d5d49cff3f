#pragma once

// Finite complete Boolean algebras, represented canonically as powerset
// algebras over a fixed list of atoms. An element is a set of atoms packed
// into a bitmask; meets, joins and complements are bit operations, and the
// big (infinitary) forms are plain folds since everything is finite.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "forcelab/errors.hpp"

namespace forcelab {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// One element of one algebra. Elements remember their parent algebra;
// combining elements of different algebras is an error, not a coercion.
class Elem {
public:
  Elem() = default;  // detached; any lattice operation on it throws

  std::uint32_t mask() const { return mask_; }
  const AlgebraPtr& parent() const { return parent_; }
  bool valid() const { return parent_ != nullptr; }
  bool is_zero() const { return mask_ == 0; }
  bool is_one() const;
  bool has_atom(int atom) const { return (mask_ >> atom) & 1u; }

  friend bool operator==(const Elem& a, const Elem& b) {
    return a.parent_ == b.parent_ && a.mask_ == b.mask_;
  }
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

private:
  friend class Algebra;
  Elem(AlgebraPtr parent, std::uint32_t mask) : parent_(std::move(parent)), mask_(mask) {}

  AlgebraPtr parent_;
  std::uint32_t mask_ = 0;
};

class Algebra : public std::enable_shared_from_this<Algebra> {
public:
  static constexpr int kDefaultMaxAtoms = 20;

  // Powerset algebra of `atom_count` atoms. The degenerate one-element
  // algebra (zero atoms) is rejected; `atom_count = 1` gives the trivial
  // two-element algebra {0, 1}.
  static AlgebraPtr make(int atom_count, int max_atoms = kDefaultMaxAtoms);

  int atom_count() const { return atom_count_; }
  std::uint64_t size() const { return std::uint64_t{1} << atom_count_; }
  std::uint32_t full_mask() const {
    return static_cast<std::uint32_t>((std::uint64_t{1} << atom_count_) - 1);
  }

  // Display labels, "a0".."a<n-1>" by default. Parsing and canonical
  // printing always use the positional aK form regardless of labels.
  const std::vector<std::string>& atom_labels() const { return labels_; }

  Elem zero() const;
  Elem one() const;
  Elem atom(int index) const;
  Elem element(std::uint32_t mask) const;

  // All 2^n elements in ascending mask order. Intended for small algebras;
  // refuses to materialize more than 2^16 elements.
  std::vector<Elem> elements() const;

private:
  explicit Algebra(int atom_count);

  int atom_count_;
  std::vector<std::string> labels_;
};

// Lattice operations. All of them throw DomainError when handed elements of
// two different algebras (or detached elements).
Elem meet(const Elem& x, const Elem& y);
Elem join(const Elem& x, const Elem& y);
Elem complement(const Elem& x);
Elem implies(const Elem& x, const Elem& y);  // x* v y
bool leq(const Elem& x, const Elem& y);      // x ^ y == x

// Folds over arbitrary finite families; empty join is 0, empty meet is 1.
Elem big_join(const AlgebraPtr& algebra, const std::vector<Elem>& xs);
Elem big_meet(const AlgebraPtr& algebra, const std::vector<Elem>& xs);

// An ultrafilter on a finite Boolean algebra is principal: it is exactly the
// set of elements containing one generating atom.
class Ultrafilter {
public:
  Ultrafilter(AlgebraPtr parent, int generator_atom);

  const AlgebraPtr& parent() const { return parent_; }
  int generator_atom() const { return generator_; }
  bool contains(const Elem& x) const;
  std::vector<Elem> members() const;  // ascending mask order
  std::string describe() const;       // e.g. "U(a1)"

  friend bool operator==(const Ultrafilter& a, const Ultrafilter& b) {
    return a.parent_ == b.parent_ && a.generator_ == b.generator_;
  }

private:
  AlgebraPtr parent_;
  int generator_;
};

// All ultrafilters, one per atom, in atom order.
std::vector<Ultrafilter> ultrafilters(const AlgebraPtr& algebra);

// Textual element syntax: `0`, `1`, atom names `a0`, `a1`, ..., operators
// `~` > `&` > `|` > `=>` (implication binds loosest, right-associative),
// parentheses, and brace literals such as `{a0,a2}` or `{}`.
Elem parse_element(const AlgebraPtr& algebra, std::string_view text);

// Canonical printing: sorted atom set in braces, `{}` for 0, `1` for the
// full set.
std::string to_string(const Elem& x);

}  // namespace forcelab
