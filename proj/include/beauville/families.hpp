#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "beauville/beauville.hpp"

namespace beauville {

/// Field parameters the Suzuki-family constructor committed to.  beta and
/// alpha generate the multiplicative group, gamma = beta + beta^{-1} +
/// beta^{r-1} + beta^{1-r} (r = 2^{n+1}) and alpha^2 = gamma; delta and
/// epsilon are the distinct generators chosen for the second pair.
struct SuzukiParameters {
  std::uint32_t m = 0;
  std::uint64_t q = 0;
  std::uint32_t beta = 0;
  std::uint32_t gamma = 0;
  std::uint32_t alpha = 0;
  std::uint32_t delta = 0;
  std::uint32_t epsilon = 0;
};

/// One family instance: the structure and its reality witness, both
/// verifier reports, family-specific certificate lines (each a named
/// verdict the constructor checked directly), and a list of
/// discrepancies.  A construction either verifies end to end
/// (discrepancies empty) or says exactly what failed or stayed
/// undetermined; nothing is emitted silently.
struct FamilyResult {
  BeauvilleStructure structure;
  StronglyRealWitness witness;
  StructureReport structure_report;
  RealityReport reality_report;
  std::vector<std::pair<std::string, TriState>> certificates;
  std::vector<std::string> discrepancies;
  std::optional<SuzukiParameters> suzuki;

  bool clean() const { return discrepancies.empty(); }
};

/// Z_n x Z_n realised on n+n points, gcd(n,6) = 1.  The emitted
/// structure is the first one the deterministic exhaustive search finds;
/// the witness is the inversion automorphism.
FamilyResult abelian_structure(std::uint64_t n);

/// Suzuki group Sz(2^m) for odd m >= 3 as 4x4 matrices over GF(2^m).
/// Deterministic parameter choice: beta is the first multiplicative
/// generator (bit-mask order) whose gamma has a generator square root
/// alpha; (delta, epsilon) is the lexicographically first admissible
/// pair of generators.  Witness: conjugation by the involution t1.
FamilyResult suzuki_structure(std::uint32_t m);

/// A_{2r} for r a positive multiple of 6; type ((r^2-1, r+1, r+1),
/// (2r-1, 2r-1, 3)).  Witness: conjugation by the involution a, with the
/// second pair handled by the inner shift onto the involution b.
FamilyResult alt_coprime_structure(std::uint32_t r);

/// Which reading of the A_{4r} data to instantiate: the printed form of
/// the involution b repeats one transposition, so its literal value
/// differs from the self-consistent (curated) reading.
enum class Alt4rForm { Literal, Curated };

/// A_{4r} for 4r > 12, r not divisible by 3; candidate type
/// ((4r^2-1, 2r+1, 2r+1), (4r^2-9, 2r-1, 2r+3)).  The verifier is the
/// ground truth here: the emitted result carries every failure it finds
/// (this family's intersection condition does fail; see the report).
FamilyResult alt_4r_structure(std::uint32_t r,
                              Alt4rForm form = Alt4rForm::Literal);

/// A_n^k on k disjoint blocks of n points.  Odd n >= 11 needs
/// 2k <= n-6; even n >= 12 needs 4k <= n-8.  Witness: the block-diagonal
/// involution assembled from the per-block inverters.
FamilyResult alt_power_structure(std::uint32_t n, std::uint32_t k);

/// Which reading of a family's tabulated data to instantiate.  Literal
/// multiplies the handed-down permutations exactly as listed; Curated
/// substitutes corrected elements where the literal data provably fails
/// verification.  Both run the full verifier; nothing ships silently.
enum class SymDoubleForm { Curated, Literal };

/// S_n x S_n on 2n points for n >= 5.  Literal uses the tabulated data
/// verbatim, including the special small cases n = 5 and n = 6; its
/// second pair fails the power-class condition for n = 5, n = 6 and
/// every odd multiple of 3 (the verifier names the shared classes).
/// Curated, the default, replaces the second pair and its inverting
/// involution for exactly those n with elements whose power classes
/// avoid the first pair's by cycle type; elsewhere it equals Literal.
FamilyResult sym_double_structure(std::uint32_t n,
                                  SymDoubleForm form = SymDoubleForm::Curated);

/// The three hard-coded double covers: name is one of "A5xA5",
/// "M11xM11", "M23xM23".  The witness involution for the Mathieu cases
/// swaps the two blocks, so it lives in an ambient overgroup.
FamilyResult mathieu_double(const std::string& name);

/// G x G from a verified coprime structure on G with a verified
/// conjugation witness.  Pairs are (x1,x2),(y1,y2) and (x2,x1),(y2,y1);
/// the output witness is the diagonal (tau,tau), with conjugators
/// (g1,g2) and (g2,g1) when the input witness carries any.
FamilyResult product_double(const BeauvilleStructure& s,
                            const StronglyRealWitness& w);

}  // namespace beauville
