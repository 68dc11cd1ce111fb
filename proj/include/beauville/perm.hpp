// Permutations on the points 1..n.
//
// Conventions (used consistently across the whole library):
//   * points are 1-based in all public interfaces;
//   * products compose left-to-right: (p * q) maps i to q(p(i));
//   * conjugation is x^g = g^-1 * x * g, so x^g maps g(i) to g(x(i));
//   * the canonical cycle form sorts cycles by their least moved point,
//     starts every cycle at its least point, omits fixed points, and
//     prints the identity as "()".
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beauville/common.hpp"

namespace beauville {

class Perm {
public:
  /// Identity permutation on `degree` points.
  explicit Perm(std::uint32_t degree = 1);

  /// From a full image table: `images[i]` is the image of point i+1 (1-based
  /// values).  Rejects tables that are not permutations of 1..degree.
  static Perm from_images(const std::vector<std::uint32_t>& images);

  /// From a list of cycles over 1..degree (e.g. {{1,2,3},{4,5}}).  Rejects
  /// out-of-range and repeated points.
  static Perm from_cycles(std::uint32_t degree,
                          const std::vector<std::vector<std::uint32_t>>& cycles);

  /// Parse canonical cycle notation, e.g. "(1,2,3)(4,5)" or "()".
  /// Whitespace is permitted between tokens.  Errors: unbalanced
  /// parentheses, empty or malformed cycles, repeated points, points
  /// outside 1..degree.
  static Perm parse(const std::string& text, std::uint32_t degree);

  std::uint32_t degree() const { return static_cast<std::uint32_t>(img_.size()); }

  /// Image of a 1-based point.
  std::uint32_t operator()(std::uint32_t point) const;

  bool is_identity() const;
  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const;  // lexicographic on image tables

  /// Left-to-right product: (*this * q) maps i to q((*this)(i)).
  Perm operator*(const Perm& q) const;

  Perm inverse() const;

  /// Conjugate x^g = g^-1 x g.
  Perm conjugated_by(const Perm& g) const;

  /// Smallest e > 0 with p^e = id (least common multiple of cycle lengths).
  std::uint64_t order() const;

  /// p^e for any integer e (negative exponents use the inverse).
  Perm power(std::int64_t e) const;

  /// True iff the permutation is even (sum over cycles of length-1 is even).
  bool is_even() const;

  /// Canonical cycle decomposition (fixed points omitted).
  std::vector<std::vector<std::uint32_t>> cycles() const;

  /// Multiset of cycle lengths >= 2, sorted descending.
  std::vector<std::uint32_t> cycle_type() const;

  /// Cycle lengths of *all* cycles including fixed points, sorted descending.
  std::vector<std::uint32_t> full_cycle_type() const;

  /// Canonical cycle-notation string.
  std::string str() const;

  /// Same permutation acting on 1..new_degree with every point shifted up by
  /// `offset` (new_degree >= degree + offset).  Used to embed a factor into
  /// a block of a direct product.
  Perm shifted(std::uint32_t offset, std::uint32_t new_degree) const;

  /// Restriction to a block (a subset of 1..degree mapped onto itself),
  /// renumbered to 1..block.size() in the order given.
  Perm restricted_to(const std::vector<std::uint32_t>& block) const;

  /// True iff the block (set of points) is mapped onto itself.
  bool preserves(const std::vector<std::uint32_t>& block) const;

  /// Raw 0-based image table (img[i] is the 0-based image of 0-based i).
  const std::vector<std::uint32_t>& images0() const { return img_; }

  std::size_t hash() const;

private:
  // img_[i] = 0-based image of the 0-based point i.
  std::vector<std::uint32_t> img_;
};

/// Convenience: the cycle (a, a+1, ..., b) on 1..degree (requires a <= b).
Perm ascending_cycle(std::uint32_t degree, std::uint32_t a, std::uint32_t b);

/// Convenience: the cycle (b, b-1, ..., a) on 1..degree (requires a <= b).
Perm descending_cycle(std::uint32_t degree, std::uint32_t a, std::uint32_t b);

/// Product of disjoint transpositions (a1,b1)(a2,b2)... on 1..degree.
Perm transpositions(std::uint32_t degree,
                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& swaps);

}  // namespace beauville

template <>
struct std::hash<beauville::Perm> {
  std::size_t operator()(const beauville::Perm& p) const { return p.hash(); }
};
