// Arithmetic in the binary fields GF(2^m) for odd m, and the 4x4 matrix
// algebra over them used by the Suzuki group constructions.
//
// Field elements are bitmasks: bit k holds the coefficient of x^k of the
// residue modulo a fixed irreducible modulus polynomial.  Addition is XOR;
// multiplication reduces modulo the modulus.  For m = 2n+1 the map
// theta(a) = a^(2^(n+1)) plays the role of the square root of the Frobenius
// twist (theta(a)^2 = a^2 up to Frobenius; concretely 2^(n+1) squares halve
// to the field's "sqrt(2q)" exponent).
//
// Matrices act on row vectors, v -> v*A, so products compose left-to-right
// exactly like permutations do elsewhere in this library.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beauville/common.hpp"

namespace beauville {

/// A concrete GF(2^m): the extension degree and the modulus polynomial
/// (bitmask, bit m set).  Validated on construction: m odd and at least 3,
/// modulus of degree m and irreducible over GF(2).
struct FieldSpec {
  std::uint32_t m = 0;
  std::uint32_t modulus = 0;

  FieldSpec() = default;
  FieldSpec(std::uint32_t m_, std::uint32_t modulus_);

  /// The fixed default modulus for a given odd m.  For m = 3, 5, 7 these are
  /// x^3+x+1, x^5+x^2+1 and x^7+x+1; for other odd m the least irreducible
  /// polynomial of degree m in bitmask order is chosen.
  static FieldSpec standard(std::uint32_t m);

  std::uint64_t q() const { return std::uint64_t(1) << m; }
  /// n with m = 2n+1.
  std::uint32_t n() const { return (m - 1) / 2; }
  /// 2^(n+1) = sqrt(2q), the exponent realising theta.
  std::uint64_t theta_exponent() const { return std::uint64_t(1) << (n() + 1); }

  bool operator==(const FieldSpec& o) const {
    return m == o.m && modulus == o.modulus;
  }
};

/// Is `poly` (bitmask) irreducible over GF(2)?
bool gf2_poly_irreducible(std::uint64_t poly);

/// Element-level operations of one GF(2^m).  Elements are uint32_t masks
/// (m <= 21 keeps every product inside 64 bits before reduction).
class Field {
public:
  explicit Field(FieldSpec spec) : spec_(spec) {}
  const FieldSpec& spec() const { return spec_; }
  std::uint64_t q() const { return spec_.q(); }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pow(std::uint32_t a, std::int64_t e) const;
  /// Multiplicative inverse; rejects 0.
  std::uint32_t inv(std::uint32_t a) const;
  /// Frobenius a -> a^2 (a bijection).
  std::uint32_t frobenius(std::uint32_t a) const { return mul(a, a); }
  /// The unique square root (squaring is bijective in characteristic 2).
  std::uint32_t sqrt(std::uint32_t a) const;
  /// theta(a) = a^(2^(n+1)).
  std::uint32_t theta(std::uint32_t a) const;

  /// Multiplicative order of a nonzero element.
  std::uint64_t mult_order(std::uint32_t a) const;
  /// True iff a generates the multiplicative group.
  bool is_generator(std::uint32_t a) const;
  /// True iff a lies in a proper subfield GF(2^d), d | m, d < m.
  bool in_proper_subfield(std::uint32_t a) const;

  /// All field elements in bitmask order 0, 1, ..., q-1.
  std::vector<std::uint32_t> elements() const;

private:
  FieldSpec spec_;
};

/// Format / parse one field element as a lowercase hex mask ("0x1a").
std::string hex_mask(std::uint32_t value);
std::uint32_t parse_hex_mask(const std::string& text);

// ---------------------------------------------------------------------------
// 4x4 matrices over GF(2^m).
// ---------------------------------------------------------------------------

class Mat4 {
public:
  /// Identity over the given field.
  explicit Mat4(FieldSpec spec);
  /// From 16 entries in row-major order.
  Mat4(FieldSpec spec, const std::array<std::uint32_t, 16>& entries);

  const FieldSpec& field() const { return spec_; }

  std::uint32_t at(int row, int col) const { return e_[4 * row + col]; }
  void set(int row, int col, std::uint32_t v) { e_[4 * row + col] = v; }
  const std::array<std::uint32_t, 16>& entries() const { return e_; }

  bool operator==(const Mat4& o) const { return spec_ == o.spec_ && e_ == o.e_; }
  bool operator!=(const Mat4& o) const { return !(*this == o); }
  bool is_identity() const;

  /// Matrix product (row-vector action composes left-to-right).
  Mat4 operator*(const Mat4& o) const;
  Mat4 power(std::int64_t e) const;
  std::uint32_t det() const;
  /// Inverse via the adjugate (no division except by det).
  Mat4 inverse() const;
  Mat4 conjugated_by(const Mat4& g) const;  // g^-1 * this * g
  std::uint32_t trace() const;

  /// Coefficients c[0..4] of the characteristic polynomial
  /// c4 L^4 + c3 L^3 + c2 L^2 + c1 L + c0 (c4 = 1), computed exactly.
  std::array<std::uint32_t, 5> char_poly() const;

  /// Element order tried over the divisors of 4, q-1 and q +- 2^(n+1) + 1
  /// (the possible orders in the Suzuki group), with a bounded brute-force
  /// fallback for matrices outside that family.
  std::uint64_t order() const;

  /// 16 hex masks in row-major order.
  std::vector<std::string> to_hex() const;
  static Mat4 from_hex(FieldSpec spec, const std::vector<std::string>& masks);

  std::size_t hash() const;

private:
  FieldSpec spec_;
  std::array<std::uint32_t, 16> e_{};
};

/// Divisors of n in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace beauville
