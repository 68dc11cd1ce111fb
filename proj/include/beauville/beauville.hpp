#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <beauville/common.hpp>
#include <beauville/group.hpp>

namespace beauville {

/// The two order triples ((o(x1),o(y1),o(x1*y1)),(o(x2),o(y2),o(x2*y2))).
struct StructureType {
  std::array<std::uint64_t, 3> first{};
  std::array<std::uint64_t, 3> second{};

  /// True when the products o(x1)o(y1)o(x1y1) and o(x2)o(y2)o(x2y2) share
  /// no factor.  Computed with arbitrary precision; never overflows.
  bool coprime() const;
  StructureType transposed() const { return {second, first}; }
  std::string str() const;  // "((5,6,5),(15,10,15))"

  bool operator==(const StructureType& o) const {
    return first == o.first && second == o.second;
  }
  bool operator!=(const StructureType& o) const { return !(*this == o); }
};

/// Two marked pairs of elements of one group.  Whether they actually form
/// a Beauville structure is decided by verify_structure, not assumed here.
struct BeauvilleStructure {
  Group group;
  Element x1, y1, x2, y2;

  StructureType type() const;
};

/// Class-level picture of the union of all conjugates of all powers of
/// x, y and xy (identity excluded).  `exact` is true when every key
/// carries an exact class id, so set disjointness is a certificate in
/// both directions; otherwise only distinct invariants certify anything.
struct SigmaSet {
  std::set<ClassKey> keys;
  bool exact = true;
};

enum class WitnessKind { OvergroupConjugation, AbelianInversion };

/// Realisation of the automorphism that inverts both pairs: either
/// conjugation by tau inside an ambient group W normalising G, or the
/// inversion map on an abelian G.  g1/g2 are the per-pair conjugators;
/// absent means the identity.
struct StronglyRealWitness {
  WitnessKind kind = WitnessKind::AbelianInversion;
  std::optional<Group> ambient;
  std::optional<Element> tau;
  std::optional<Element> g1, g2;

  static StronglyRealWitness overgroup(Group ambient_group, Element tau_elt);
  static StronglyRealWitness overgroup(Group ambient_group, Element tau_elt,
                                       Element g1_elt, Element g2_elt);
  static StronglyRealWitness abelian_inversion();
};

/// Exact curve genera and surface numbers.  Everything is an exact
/// rational; the integrality of the genera is reported, never assumed.
struct SurfaceInvariants {
  mpq_class g1, g2;
  mpq_class euler;  // 4 (g1-1)(g2-1) / |G|
  mpq_class chi;    // euler / 4, always exactly
  bool g1_integral = false;
  bool g2_integral = false;
  bool euler_integral = false;
  /// Both genera >= 2; false flags the degenerate regime where the type
  /// cannot come from a verified structure.
  bool beauville_range = false;
};

/// Outcome of the full structure check.  `overall` is PASS only when both
/// generation verdicts and the disjointness verdict are PASS; a single
/// UNDETERMINED ingredient makes it UNDETERMINED, a single FAIL makes it
/// FAIL.
struct StructureReport {
  TriState generation1 = TriState::undetermined("not checked");
  TriState generation2 = TriState::undetermined("not checked");
  TriState dagger = TriState::undetermined("not checked");
  StructureType type;
  bool coprime = false;
  TriState overall = TriState::undetermined("not checked");
};

/// Outcome of a strongly-real witness check.  The four equations are the
/// literal inversion identities for x1, y1, x2, y2 in that order.
/// `phi_square_inner` is informational: whether the witness map composed
/// with itself acts as an inner automorphism (tau^2 inside G); it does not
/// enter `overall`.
struct RealityReport {
  TriState witness_valid = TriState::undetermined("not checked");
  std::array<TriState, 4> equations = {
      TriState::undetermined("not checked"),
      TriState::undetermined("not checked"),
      TriState::undetermined("not checked"),
      TriState::undetermined("not checked")};
  TriState phi_square_inner = TriState::undetermined("not checked");
  TriState overall = TriState::undetermined("not checked");
};

/// Union of the power class sets of x, y and xy.
SigmaSet sigma(const Group& g, const Element& x, const Element& y);

/// Disjointness verdict on two sigma sets.  PASS when no two keys can
/// name the same class, FAIL when a shared exact class id exists,
/// UNDETERMINED when invariants collide without exact ids to separate
/// them.
TriState sigma_disjoint(const SigmaSet& a, const SigmaSet& b);

/// The intersection condition on the structure's two pairs.  Adds a
/// literal element-level intersection test on the power sets, so identical
/// or power-shared pairs fail with certainty even when no class oracle is
/// available.
TriState check_dagger(const Group& g, const BeauvilleStructure& s);

/// Does <x, y> equal g?  Permutation kind: exact stabilizer-chain orders.
/// Matrix kind: closure within the budget.  Certified product with the
/// closure budget exhausted: componentwise generation plus coprime
/// component orders certify generation of the whole product; a failing
/// projection refutes it.
TriState verify_generation(const Group& g, const Element& x, const Element& y,
                           std::size_t budget = Group::kDefaultEnumerationBudget);

/// Full check: membership (when decidable), both generations, the
/// intersection condition, type and coprimality.  A coprime type with a
/// non-PASS disjointness verdict is an internal contradiction and throws.
StructureReport verify_structure(const BeauvilleStructure& s,
                                 std::size_t budget = Group::kDefaultEnumerationBudget);

/// Check the four inversion equations for the witness.  The verdict is
/// about the witness only; callers combine it with verify_structure.
/// Witness invariant violations that can be decided (tau not normalising
/// g, inversion on a visibly non-abelian group, conjugators outside g)
/// throw DomainError; undecidable membership makes the verdict
/// UNDETERMINED instead.
RealityReport verify_strongly_real(const BeauvilleStructure& s,
                                   const StronglyRealWitness& w,
                                   std::size_t budget = Group::kDefaultEnumerationBudget);

/// Exact genera of the two quotient curves and the surface numbers for a
/// group of the given order acting with the given type.
SurfaceInvariants surface_invariants(const mpz_class& order,
                                     const StructureType& t);

/// Deterministic exhaustive search over an enumerable group: x runs over
/// class representatives, y over all elements; every generating pair is
/// fingerprinted by its exact sigma class set and the first disjoint pair
/// of fingerprints (in first-occurrence order) is returned.  nullopt is an
/// exhaustive certificate that no structure exists.
std::optional<BeauvilleStructure> search_beauville(
    const Group& g, std::size_t budget = Group::kDefaultEnumerationBudget);

struct StronglyRealFind {
  BeauvilleStructure structure;
  StronglyRealWitness witness;
};

/// Like search_beauville but restricted to pairs inverted by one witness
/// map: the supplied candidates are scanned in order, then conjugation by
/// every group element (the inner maps, always included).  A nullopt is a
/// certificate only relative to the candidate list.
std::optional<StronglyRealFind> search_strongly_real(
    const Group& g, const std::vector<StronglyRealWitness>& candidates,
    std::size_t budget = Group::kDefaultEnumerationBudget);

}  // namespace beauville
