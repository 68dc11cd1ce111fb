// Finite-group services over permutations and matrices: exact orders via
// stabilizer chains, bounded closure enumeration, conjugacy classes, and a
// tiered conjugacy oracle that reports PASS / FAIL / UNDETERMINED rather
// than guessing.
//
// A Group is a handle around a generator list.  It is immutable after
// construction; expensive byproducts (stabilizer chain, element enumeration,
// class table) are cached internally behind a lock, so handles are cheap to
// copy and safe to query concurrently.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "beauville/common.hpp"
#include "beauville/gf.hpp"
#include "beauville/perm.hpp"

namespace beauville {

enum class ElementKind { Permutation, Matrix, MatrixPair };

/// One group element: a permutation, a 4x4 matrix, or a pair of matrices
/// (an element of a direct product of two matrix groups).
class Element {
public:
  /*implicit*/ Element(Perm p) : value_(std::move(p)) {}
  /*implicit*/ Element(Mat4 m) : value_(std::move(m)) {}
  Element(Mat4 left, Mat4 right)
      : value_(std::make_pair(std::move(left), std::move(right))) {}

  ElementKind kind() const;
  const Perm& perm() const;
  const Mat4& mat() const;
  const Mat4& left() const;
  const Mat4& right() const;

  bool is_identity() const;
  Element operator*(const Element& o) const;
  Element inverse() const;
  Element conjugated_by(const Element& g) const;  // g^-1 * this * g
  Element power(std::int64_t e) const;
  std::uint64_t order() const;

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }
  bool operator<(const Element& o) const;
  std::size_t hash() const;
  std::string str() const;

private:
  std::variant<Perm, Mat4, std::pair<Mat4, Mat4>> value_;
};

/// Conjugation-invariant fingerprint of an element within a fixed group.
/// `invariant` never lies: conjugate elements always agree on it.  `exact`,
/// when present, identifies the conjugacy class precisely (two elements of
/// the same group are conjugate iff their exact ids are equal).
struct ClassKey {
  std::string invariant;
  std::optional<std::string> exact;

  bool has_exact() const { return exact.has_value(); }
  std::string str() const {
    return has_exact() ? invariant + "#" + *exact : invariant;
  }
  bool operator==(const ClassKey& o) const {
    return invariant == o.invariant && exact == o.exact;
  }
  bool operator!=(const ClassKey& o) const { return !(*this == o); }
  bool operator<(const ClassKey& o) const {
    if (invariant != o.invariant) return invariant < o.invariant;
    return exact < o.exact;
  }
};

class Group {
public:
  static constexpr std::size_t kDefaultEnumerationBudget = 1000000;

  /// Permutation group of a fixed degree.  `orbit_blocks`, when nonempty,
  /// must partition 1..degree into generator-invariant blocks; it is the
  /// caller's declaration of an intransitive product decomposition.
  static Group permutation(std::uint32_t degree, std::vector<Perm> generators,
                           std::vector<std::vector<std::uint32_t>> orbit_blocks = {});

  /// Matrix group over a fixed field.
  static Group matrix(FieldSpec spec, std::vector<Mat4> generators);

  /// Direct product of two matrix groups, with elements represented as
  /// pairs.  `certified_full_product` records the caller's proof obligation
  /// that the generators generate the full direct product (not merely a
  /// subgroup of it); componentwise reasoning is enabled only when set.
  static Group matrix_pair(Group left_factor, Group right_factor,
                           std::vector<Element> generators,
                           bool certified_full_product);

  ElementKind kind() const;
  std::uint32_t degree() const;   // permutation kind only
  const FieldSpec& field() const;  // matrix kind only
  const std::vector<Element>& generators() const;
  const std::vector<std::vector<std::uint32_t>>& orbit_blocks() const;
  bool certified_full_product() const;
  Element identity() const;

  /// Exact order.  Permutation kind: always available (stabilizer chain).
  /// Matrix kind: requires enumeration within the budget.  Pair kind:
  /// product of factor orders when certified, else enumeration.
  /// Throws BudgetExceeded when no exact method applies.
  mpz_class order(std::size_t budget = kDefaultEnumerationBudget) const;
  bool order_available(std::size_t budget = kDefaultEnumerationBudget) const;

  /// Exact membership.  Permutation kind sifts through the stabilizer
  /// chain; matrix kind looks up the enumeration; certified pairs test
  /// componentwise.  Throws BudgetExceeded when undecidable.
  bool contains(const Element& g) const;
  /// Same decision as a verdict: UNDETERMINED instead of a throw.
  TriState membership(const Element& g) const;

  /// Breadth-first closure of the generators.  Succeeds iff |G| <= budget;
  /// deterministic insertion order, identity first.  The checked form
  /// throws BudgetExceeded; try_elements returns nullptr instead.
  const std::vector<Element>& elements(
      std::size_t budget = kDefaultEnumerationBudget) const;
  const std::vector<Element>* try_elements(
      std::size_t budget = kDefaultEnumerationBudget) const;
  bool enumerable(std::size_t budget = kDefaultEnumerationBudget) const;

  struct ConjClass {
    Element rep;
    std::size_t size;
    ClassKey key;
  };
  /// Conjugacy classes of an enumerable group; identity class first, order
  /// deterministic (by first appearance in the enumeration).
  const std::vector<ConjClass>& conjugacy_classes(
      std::size_t budget = kDefaultEnumerationBudget) const;
  int class_index_of(const Element& g,
                     std::size_t budget = kDefaultEnumerationBudget) const;

  /// Fingerprint of x as an element of this group.  The invariant part is
  /// always present; the exact id is attached when the group supports an
  /// exact scheme (enumeration, certified product, or natural S_n / A_n).
  ClassKey class_key(const Element& x) const;

  /// Tiered conjugacy test:
  ///   tier 1  invariant mismatch            -> FAIL (certain)
  ///   tier 2  enumeration                   -> exact PASS/FAIL
  ///   tier 3  certified product             -> componentwise
  ///   tier 4  natural S_n / A_n             -> cycle type (+ split rule)
  /// Anything else is UNDETERMINED, naming the tier that gave up.  The
  /// budget throttles tier 2 (and recursive component tests).
  TriState are_conjugate(const Element& a, const Element& b,
                         std::size_t budget = kDefaultEnumerationBudget) const;

  /// ClassKeys of the nontrivial powers x^i, 1 <= i <= order(x), identity
  /// excluded.  The building block of the class-intersection test.
  std::set<ClassKey> power_class_set(const Element& x) const;

  /// True when the group equals the full symmetric / alternating group on
  /// its degree (decided by exact order).
  bool is_natural_symmetric() const;
  bool is_natural_alternating() const;

  /// Permutation kind with declared blocks: the projection groups obtained
  /// by restricting generators to each block (points renumbered 1..block
  /// size).  Cached.
  const std::vector<Group>& block_projections() const;
  /// True when |G| equals the product of the block projection orders, i.e.
  /// G really is the direct product of its projections (verified), or the
  /// pair kind was constructed with the certification flag.
  bool is_verified_direct_product() const;
  /// Left/right factors of the pair kind.
  const Group& left_factor() const;
  const Group& right_factor() const;

private:
  struct Impl;
  explicit Group(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

}  // namespace beauville

template <>
struct std::hash<beauville::Element> {
  std::size_t operator()(const beauville::Element& e) const { return e.hash(); }
};
