// The word language of standard-generator tables, a loader for external
// generator files, and the hard-coded rows that realise strongly real
// Beauville structures on the twelve non-simple almost simple sporadic
// groups G:2.
//
// Words are written over named atoms (c, d, t1, t2, ...); juxtaposition
// multiplies, `^` binds tighter than juxtaposition and denotes an integer
// power (signed literal exponent) or conjugation (atomic or parenthesized
// exponent), `[u,v]` is the commutator u^-1 v^-1 u v, and parentheses
// group.  An atom token is a single letter followed by any run of digits,
// so "t1t2" is the product of t1 and t2, never one identifier.
//
// Everything here is pure: rows can be evaluated concurrently on separate
// generator pairs without coordination.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "beauville/beauville.hpp"
#include "beauville/group.hpp"
#include "beauville/perm.hpp"

namespace beauville {

class WordExpr;
using WordPtr = std::shared_ptr<const WordExpr>;

/// Immutable abstract syntax tree of a word.  Products are binary and
/// left-associated by the parser; powers carry a signed integer exponent;
/// conjugation keeps its exponent position in the source syntax but is its
/// own node kind, never folded into Power.
class WordExpr {
public:
  enum class Kind { Atom, Product, Power, Commutator, Conjugation };

  static WordPtr atom(std::string name);
  static WordPtr product(WordPtr lhs, WordPtr rhs);
  static WordPtr power(WordPtr base, std::int64_t exponent);
  static WordPtr commutator(WordPtr lhs, WordPtr rhs);
  static WordPtr conjugation(WordPtr lhs, WordPtr rhs);

  Kind kind() const { return kind_; }
  /// Atom only.
  const std::string& name() const;
  /// Product / Commutator / Conjugation only.
  const WordPtr& lhs() const;
  const WordPtr& rhs() const;
  /// Power only.
  const WordPtr& base() const;
  std::int64_t exponent() const;

  bool equals(const WordExpr& o) const;

  /// Minimal-parenthesis source form; parse_word(str()) rebuilds an equal
  /// tree.
  std::string str() const;

private:
  WordExpr() = default;
  Kind kind_ = Kind::Atom;
  std::string name_;
  WordPtr lhs_, rhs_;
  std::int64_t exponent_ = 0;
};

/// Parse the word grammar above.  Whitespace between tokens is ignored.
/// Throws ParseError naming the 1-based character position of the defect;
/// unbound atoms are not detected here (that is evaluation's job).
WordPtr parse_word(const std::string& text);

/// Name -> element bindings for evaluation.
using WordEnv = std::map<std::string, Element>;

/// Evaluate under the library's left-to-right composition convention.
/// Throws DomainError for an atom missing from the environment and for
/// mixed element kinds or degrees.
Element evaluate_word(const WordExpr& e, const WordEnv& env);
Element evaluate_word(const std::string& text, const WordEnv& env);

/// Read a standard-generator pair from a stream or file.
///
/// Grammar (documented for interchange; blank lines and lines starting
/// with '#' are skipped):
///   file   := header? perm perm
///   header := "degree" N
///   perm   := cycle-notation line (first nonblank char '(')
///           | whitespace-separated image list "i1 i2 ... in"
/// An image-list line fixes the degree to its length; cycle lines need the
/// header (or another image-list line) only when trailing fixed points
/// matter, otherwise the degree is the largest moved point.  Errors: not
/// exactly two permutation lines, malformed entries, or a declared degree
/// conflicting with a line's own.
std::pair<Perm, Perm> load_generators(std::istream& in);
std::pair<Perm, Perm> load_generators_file(const std::string& path);

/// The two printed readings of the HN:2 u1 entry "d^2[cd^2]^10", whose
/// square bracket holds no comma: a commutator with the comma dropped
/// ("d^2[c,d^2]^10") or plain grouping brackets ("d^2(cd^2)^10").  By
/// default evaluation tries the commutator reading first and falls back to
/// grouping when only the latter reproduces the expected type; the choice
/// that was used is reported on the result.
enum class HnU1Reading { Commutator, Grouping };

/// One row of the sporadic table: the words over {c, d, t1, t2} defining
/// t1, t2, x1, x2, u1, u2, the powers j1, j2 with y_i = (x_i^{j_i})^{u_i},
/// the expected type, and the order of G:2 (what the evaluated generators
/// must produce for the generation verdicts to mean anything).
struct SporadicRow {
  std::string name;  // canonical, e.g. "M12:2", "O'N:2", "Fi24"
  std::string t1, t2;
  std::string x1, x2;
  std::string u1, u2;
  std::string u1_alt;  // nonempty only when the printed u1 is ambiguous
  std::uint32_t j1 = 1, j2 = 1;
  StructureType expected_type;
  mpz_class group_order;
};

/// All twelve rows, in a fixed order.
const std::vector<SporadicRow>& sporadic_rows();

/// Lookup by group name.  Case, '.' vs ':' and apostrophes are ignored, so
/// "M12.2", "m12:2" and "M12:2" all name the same row; nullptr when the
/// name matches no row.
const SporadicRow* find_sporadic_row(const std::string& name);

struct SporadicOptions {
  /// Force one reading of the ambiguous HN:2 u1 word instead of
  /// adjudicating by expected type.
  std::optional<HnU1Reading> hn_u1;
  std::size_t budget = Group::kDefaultEnumerationBudget;
};

/// Outcome of evaluating one row on concrete generators: the structure on
/// <c, d> with witness tau = t1, both verifier reports, the row's expected
/// type, named certificates for the row-level checks (group order against
/// the row metadata, involution checks on t1 and t2, the type comparison),
/// and the discrepancy digest.  clean() means everything checked PASS and
/// the computed type is the expected one.
struct SporadicResult {
  SporadicRow row;  // as evaluated (u1 holds the reading actually used)
  BeauvilleStructure structure;
  StronglyRealWitness witness;
  StructureReport structure_report;
  RealityReport reality_report;
  StructureType expected_type;
  std::vector<std::pair<std::string, TriState>> certificates;
  std::vector<std::string> discrepancies;
  std::optional<HnU1Reading> hn_u1_used;

  bool clean() const { return discrepancies.empty(); }
};

/// Evaluate a row on the generator pair (c, d): build G = <c, d>, evaluate
/// the six words, form y_i = (x_i^{j_i})^{u_i}, and verify the structure
/// and the conjugation witness tau = t1.  u_i failing to centralise t1 is
/// a DomainError (the recipe's precondition); a type differing from the
/// expected one is a recorded discrepancy, never silently accepted.
SporadicResult evaluate_sporadic_row(const SporadicRow& row, const Perm& c,
                                     const Perm& d,
                                     const SporadicOptions& options = {});

/// Row lookup + evaluation.  Throws DomainError for an unknown name.
SporadicResult sporadic_structure(const std::string& group_name, const Perm& c,
                                  const Perm& d,
                                  const SporadicOptions& options = {});

}  // namespace beauville
