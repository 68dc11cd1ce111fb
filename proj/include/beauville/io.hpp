// Interchange formats and report rendering.
//
// Structure, group and witness files are JSON with a fixed schema; the
// writers are deterministic (sorted keys, two-space indent, trailing
// newline), so a file written twice from the same data is byte-identical.
// Permutations are stored in cycle notation, matrices as 16 row-major hex
// masks, pair elements as {"left": [...], "right": [...]}.
//
// Schemas
//   group object
//     kind "permutation":  degree, generators[], orbit_blocks[]? (arrays of
//                          1-based points partitioning 1..degree)
//     kind "matrix":       field {m, modulus?}, generators[]
//     kind "matrix_pair":  left, right (matrix group objects), generators[],
//                          certified_full_product
//   structure file        {format, group, pairs: [{x,y},{x,y}], witness?}
//   group file            {format, group}
//   witness file          {format, witnesses: [...]} or a bare array; each
//                          entry {kind, ambient?, tau?, g1?, g2?} with kind
//                          "abelian_inversion" or "overgroup_conjugation";
//                          tau is decoded against ambient when present.
//
// Reports render as fixed-order "name: VERDICT (reason)" lines; the reason
// parenthesis is omitted when the verdict carries none.  All rendering is a
// pure function of the report value.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "beauville/beauville.hpp"
#include "beauville/group.hpp"

namespace beauville {

inline constexpr const char* kStructureFormat = "beauville/structure-v1";
inline constexpr const char* kGroupFormat = "beauville/group-v1";
inline constexpr const char* kWitnessFormat = "beauville/witnesses-v1";

/// A structure file's payload: the marked pairs plus, when the file carries
/// one, the strongly-real witness to check them against.
struct LoadedStructure {
  BeauvilleStructure structure;
  std::optional<StronglyRealWitness> witness;
};

// --- structure files --------------------------------------------------------

/// Serialize a structure (and optionally its witness) to schema JSON.
std::string structure_to_json(const BeauvilleStructure& s);
std::string structure_to_json(const BeauvilleStructure& s,
                              const StronglyRealWitness& w);

/// Parse schema JSON.  Malformed documents raise ParseError naming the
/// offending field; elements that do not live in the declared group (wrong
/// degree, wrong field, non-permutation images) are ParseErrors too.
LoadedStructure structure_from_json(const std::string& text);

LoadedStructure load_structure_file(const std::string& path);
void save_structure_file(const std::string& path, const BeauvilleStructure& s);
void save_structure_file(const std::string& path, const BeauvilleStructure& s,
                         const StronglyRealWitness& w);

// --- group files ------------------------------------------------------------

std::string group_to_json(const Group& g);
Group group_from_json(const std::string& text);
Group load_group_file(const std::string& path);
void save_group_file(const std::string& path, const Group& g);

// --- witness candidate files (search --autos) -------------------------------

/// Witness entries are decoded relative to `context`, the group the search
/// runs on: conjugators live in it, and a tau with no ambient of its own is
/// read as a permutation/matrix of the context's shape.
std::string witnesses_to_json(const std::vector<StronglyRealWitness>& ws);
std::vector<StronglyRealWitness> witnesses_from_json(const std::string& text,
                                                     const Group& context);
std::vector<StronglyRealWitness> load_witness_file(const std::string& path,
                                                   const Group& context);

// --- report rendering -------------------------------------------------------

/// Fixed-order text: generation1, generation2, dagger, coprime, type,
/// overall — one line each, ending in a newline.
std::string render_report(const StructureReport& r);

/// Fixed-order text: witness_valid, inversion x1/y1/x2/y2, phi_square_inner,
/// overall.
std::string render_report(const RealityReport& r);

/// One line, exact rationals: "g1=781 g2=1381 e=1196 chi=299".  A second
/// line flags the degenerate regime when either genus drops below 2.
std::string render_invariants(const SurfaceInvariants& v);

/// The same reports as JSON documents (deterministic like the file writers).
std::string report_to_json(const StructureReport& r);
std::string report_to_json(const RealityReport& r);

}  // namespace beauville
