// JSON interchange for structures, groups and witness lists, plus the
// fixed-format report renderers.  Writers are deterministic: nlohmann's
// object keys are stored sorted, dumps use two-space indentation, and every
// document ends in a newline.  Readers validate shape and convert every
// content-level failure (bad cycle string, bad hex mask, wrong degree) into
// a ParseError naming the JSON path of the offending field.
#include "beauville/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "beauville/common.hpp"
#include "beauville/gf.hpp"
#include "beauville/perm.hpp"

namespace beauville {
namespace {

using nlohmann::json;

// Strip the taxonomy prefix of a nested error so re-wrapping it under a JSON
// path does not stack "parse error: domain error: ...".
std::string strip_prefix(const std::string& what) {
  for (const std::string& p :
       {std::string("parse error: "), std::string("domain error: ")}) {
    if (what.rfind(p, 0) == 0) return what.substr(p.size());
  }
  return what;
}

[[noreturn]] void fail_at(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + strip_prefix(what));
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid json: ") + e.what());
  }
}

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail_at(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail_at(path, std::string("missing field '") + key + "'");
  return *it;
}

const json* opt_member(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string expect_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail_at(path, "expected a string");
  return j.get<std::string>();
}

std::uint32_t expect_u32(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() > 0xffffffffULL)
    fail_at(path, "expected an unsigned 32-bit integer");
  return static_cast<std::uint32_t>(j.get<std::uint64_t>());
}

void check_format(const json& j, const char* expected) {
  if (const json* f = opt_member(j, "format")) {
    if (!f->is_string() || f->get<std::string>() != expected)
      fail_at("format", std::string("expected \"") + expected + "\"");
  }
}

// --- elements ---------------------------------------------------------------

json mat_to_json(const Mat4& m) { return json(m.to_hex()); }

json element_to_json(const Element& e) {
  switch (e.kind()) {
    case ElementKind::Permutation:
      return json(e.perm().str());
    case ElementKind::Matrix:
      return mat_to_json(e.mat());
    case ElementKind::MatrixPair:
      return json{{"left", e.left().to_hex()}, {"right", e.right().to_hex()}};
  }
  throw DomainError("unknown element kind");
}

Mat4 mat_from_json(const json& j, const FieldSpec& field,
                   const std::string& path) {
  if (!j.is_array()) fail_at(path, "expected an array of 16 hex masks");
  std::vector<std::string> masks;
  masks.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    masks.push_back(expect_string(j[i], path + "[" + std::to_string(i) + "]"));
  try {
    return Mat4::from_hex(field, masks);
  } catch (const Error& e) {
    fail_at(path, e.what());
  }
}

Element element_from_json(const json& j, const Group& ctx,
                          const std::string& path) {
  switch (ctx.kind()) {
    case ElementKind::Permutation: {
      std::string text = expect_string(j, path);
      try {
        return Element(Perm::parse(text, ctx.degree()));
      } catch (const Error& e) {
        fail_at(path, e.what());
      }
    }
    case ElementKind::Matrix:
      return Element(mat_from_json(j, ctx.field(), path));
    case ElementKind::MatrixPair: {
      const json& left = member(j, "left", path);
      const json& right = member(j, "right", path);
      return Element(
          mat_from_json(left, ctx.left_factor().field(), path + ".left"),
          mat_from_json(right, ctx.right_factor().field(), path + ".right"));
    }
  }
  throw DomainError("unknown group kind");
}

// --- groups -----------------------------------------------------------------

json group_to_json_obj(const Group& g) {
  json o;
  switch (g.kind()) {
    case ElementKind::Permutation: {
      o["kind"] = "permutation";
      o["degree"] = g.degree();
      json gens = json::array();
      for (const Element& e : g.generators()) gens.push_back(e.perm().str());
      o["generators"] = std::move(gens);
      if (!g.orbit_blocks().empty()) o["orbit_blocks"] = g.orbit_blocks();
      break;
    }
    case ElementKind::Matrix: {
      o["kind"] = "matrix";
      o["field"] = json{{"m", g.field().m},
                        {"modulus", hex_mask(g.field().modulus)}};
      json gens = json::array();
      for (const Element& e : g.generators()) gens.push_back(mat_to_json(e.mat()));
      o["generators"] = std::move(gens);
      break;
    }
    case ElementKind::MatrixPair: {
      o["kind"] = "matrix_pair";
      o["left"] = group_to_json_obj(g.left_factor());
      o["right"] = group_to_json_obj(g.right_factor());
      json gens = json::array();
      for (const Element& e : g.generators()) gens.push_back(element_to_json(e));
      o["generators"] = std::move(gens);
      o["certified_full_product"] = g.certified_full_product();
      break;
    }
  }
  return o;
}

Group group_from_json_obj(const json& j, const std::string& path) {
  std::string kind = expect_string(member(j, "kind", path), path + ".kind");
  const json& gens = member(j, "generators", path);
  if (!gens.is_array()) fail_at(path + ".generators", "expected an array");

  if (kind == "permutation") {
    std::uint32_t degree =
        expect_u32(member(j, "degree", path), path + ".degree");
    std::vector<Perm> perms;
    perms.reserve(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::string gp = path + ".generators[" + std::to_string(i) + "]";
      std::string text = expect_string(gens[i], gp);
      try {
        perms.push_back(Perm::parse(text, degree));
      } catch (const Error& e) {
        fail_at(gp, e.what());
      }
    }
    std::vector<std::vector<std::uint32_t>> blocks;
    if (const json* b = opt_member(j, "orbit_blocks")) {
      std::string bp = path + ".orbit_blocks";
      if (!b->is_array()) fail_at(bp, "expected an array of point arrays");
      for (std::size_t i = 0; i < b->size(); ++i) {
        const json& row = (*b)[i];
        std::string rp = bp + "[" + std::to_string(i) + "]";
        if (!row.is_array()) fail_at(rp, "expected an array of points");
        std::vector<std::uint32_t> block;
        for (std::size_t k = 0; k < row.size(); ++k)
          block.push_back(expect_u32(row[k], rp + "[" + std::to_string(k) + "]"));
        blocks.push_back(std::move(block));
      }
    }
    try {
      return Group::permutation(degree, std::move(perms), std::move(blocks));
    } catch (const Error& e) {
      fail_at(path, e.what());
    }
  }

  if (kind == "matrix") {
    const json& fj = member(j, "field", path);
    std::string fp = path + ".field";
    std::uint32_t m = expect_u32(member(fj, "m", fp), fp + ".m");
    FieldSpec spec;
    try {
      if (const json* mod = opt_member(fj, "modulus"))
        spec = FieldSpec(m, parse_hex_mask(expect_string(*mod, fp + ".modulus")));
      else
        spec = FieldSpec::standard(m);
    } catch (const Error& e) {
      fail_at(fp, e.what());
    }
    std::vector<Mat4> mats;
    mats.reserve(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
      mats.push_back(mat_from_json(
          gens[i], spec, path + ".generators[" + std::to_string(i) + "]"));
    try {
      return Group::matrix(spec, std::move(mats));
    } catch (const Error& e) {
      fail_at(path, e.what());
    }
  }

  if (kind == "matrix_pair") {
    Group left = group_from_json_obj(member(j, "left", path), path + ".left");
    Group right =
        group_from_json_obj(member(j, "right", path), path + ".right");
    if (left.kind() != ElementKind::Matrix ||
        right.kind() != ElementKind::Matrix)
      fail_at(path, "matrix_pair factors must be matrix groups");
    bool certified = false;
    if (const json* c = opt_member(j, "certified_full_product")) {
      if (!c->is_boolean())
        fail_at(path + ".certified_full_product", "expected a boolean");
      certified = c->get<bool>();
    }
    std::vector<Element> pair_gens;
    pair_gens.reserve(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::string gp = path + ".generators[" + std::to_string(i) + "]";
      const json& left_j = member(gens[i], "left", gp);
      const json& right_j = member(gens[i], "right", gp);
      pair_gens.emplace_back(mat_from_json(left_j, left.field(), gp + ".left"),
                             mat_from_json(right_j, right.field(), gp + ".right"));
    }
    try {
      return Group::matrix_pair(std::move(left), std::move(right),
                                std::move(pair_gens), certified);
    } catch (const Error& e) {
      fail_at(path, e.what());
    }
  }

  fail_at(path + ".kind",
          "unknown group kind \"" + kind +
              "\" (expected permutation, matrix or matrix_pair)");
}

// --- witnesses --------------------------------------------------------------

json witness_to_json_obj(const StronglyRealWitness& w) {
  json o;
  o["kind"] = w.kind == WitnessKind::OvergroupConjugation
                  ? "overgroup_conjugation"
                  : "abelian_inversion";
  if (w.ambient.has_value()) o["ambient"] = group_to_json_obj(*w.ambient);
  if (w.tau.has_value()) o["tau"] = element_to_json(*w.tau);
  if (w.g1.has_value()) o["g1"] = element_to_json(*w.g1);
  if (w.g2.has_value()) o["g2"] = element_to_json(*w.g2);
  return o;
}

StronglyRealWitness witness_from_json_obj(const json& j, const Group& context,
                                          const std::string& path) {
  StronglyRealWitness w;
  std::string kind = expect_string(member(j, "kind", path), path + ".kind");
  if (kind == "abelian_inversion") {
    w.kind = WitnessKind::AbelianInversion;
  } else if (kind == "overgroup_conjugation") {
    w.kind = WitnessKind::OvergroupConjugation;
  } else {
    fail_at(path + ".kind",
            "unknown witness kind \"" + kind +
                "\" (expected abelian_inversion or overgroup_conjugation)");
  }
  if (const json* a = opt_member(j, "ambient"))
    w.ambient = group_from_json_obj(*a, path + ".ambient");
  const Group& tau_ctx = w.ambient.has_value() ? *w.ambient : context;
  if (const json* t = opt_member(j, "tau"))
    w.tau = element_from_json(*t, tau_ctx, path + ".tau");
  if (const json* g = opt_member(j, "g1"))
    w.g1 = element_from_json(*g, context, path + ".g1");
  if (const json* g = opt_member(j, "g2"))
    w.g2 = element_from_json(*g, context, path + ".g2");
  return w;
}

// --- files ------------------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IOError("cannot read " + path);
  return buffer.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IOError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IOError("cannot write " + path);
}

std::string dump_document(const json& j) { return j.dump(2) + "\n"; }

std::string structure_to_json_impl(const BeauvilleStructure& s,
                                   const StronglyRealWitness* w) {
  json o;
  o["format"] = kStructureFormat;
  o["group"] = group_to_json_obj(s.group);
  o["pairs"] = json::array({json{{"x", element_to_json(s.x1)},
                                 {"y", element_to_json(s.y1)}},
                            json{{"x", element_to_json(s.x2)},
                                 {"y", element_to_json(s.y2)}}});
  if (w != nullptr) o["witness"] = witness_to_json_obj(*w);
  return dump_document(o);
}

// --- report rendering -------------------------------------------------------

std::string verdict_line(const char* name, const TriState& t) {
  std::string line = std::string(name) + ": " + to_string(t.verdict);
  if (!t.reason.empty()) line += " (" + t.reason + ")";
  line += "\n";
  return line;
}

json tristate_to_json(const TriState& t) {
  return json{{"verdict", to_string(t.verdict)}, {"reason", t.reason}};
}

json type_to_json(const StructureType& t) {
  return json{{"first", t.first}, {"second", t.second}};
}

}  // namespace

// --- structure files --------------------------------------------------------

std::string structure_to_json(const BeauvilleStructure& s) {
  return structure_to_json_impl(s, nullptr);
}

std::string structure_to_json(const BeauvilleStructure& s,
                              const StronglyRealWitness& w) {
  return structure_to_json_impl(s, &w);
}

LoadedStructure structure_from_json(const std::string& text) {
  json j = parse_document(text);
  if (!j.is_object()) fail_at("document", "expected a json object");
  check_format(j, kStructureFormat);
  Group g = group_from_json_obj(member(j, "group", "document"), "group");

  const json& pairs = member(j, "pairs", "document");
  if (!pairs.is_array() || pairs.size() != 2)
    fail_at("pairs", "expected an array of exactly two {x, y} objects");
  Element x1 = element_from_json(member(pairs[0], "x", "pairs[0]"), g,
                                 "pairs[0].x");
  Element y1 = element_from_json(member(pairs[0], "y", "pairs[0]"), g,
                                 "pairs[0].y");
  Element x2 = element_from_json(member(pairs[1], "x", "pairs[1]"), g,
                                 "pairs[1].x");
  Element y2 = element_from_json(member(pairs[1], "y", "pairs[1]"), g,
                                 "pairs[1].y");

  LoadedStructure out{BeauvilleStructure{std::move(g), std::move(x1),
                                         std::move(y1), std::move(x2),
                                         std::move(y2)},
                      std::nullopt};
  if (const json* w = opt_member(j, "witness"))
    out.witness = witness_from_json_obj(*w, out.structure.group, "witness");
  return out;
}

LoadedStructure load_structure_file(const std::string& path) {
  return structure_from_json(slurp(path));
}

void save_structure_file(const std::string& path,
                         const BeauvilleStructure& s) {
  spit(path, structure_to_json(s));
}

void save_structure_file(const std::string& path, const BeauvilleStructure& s,
                         const StronglyRealWitness& w) {
  spit(path, structure_to_json(s, w));
}

// --- group files ------------------------------------------------------------

std::string group_to_json(const Group& g) {
  json o;
  o["format"] = kGroupFormat;
  o["group"] = group_to_json_obj(g);
  return dump_document(o);
}

Group group_from_json(const std::string& text) {
  json j = parse_document(text);
  if (!j.is_object()) fail_at("document", "expected a json object");
  // Accept both the {format, group} envelope and a bare group object.
  if (opt_member(j, "kind") != nullptr)
    return group_from_json_obj(j, "group");
  check_format(j, kGroupFormat);
  return group_from_json_obj(member(j, "group", "document"), "group");
}

Group load_group_file(const std::string& path) {
  return group_from_json(slurp(path));
}

void save_group_file(const std::string& path, const Group& g) {
  spit(path, group_to_json(g));
}

// --- witness candidate files ------------------------------------------------

std::string witnesses_to_json(const std::vector<StronglyRealWitness>& ws) {
  json o;
  o["format"] = kWitnessFormat;
  json items = json::array();
  for (const StronglyRealWitness& w : ws) items.push_back(witness_to_json_obj(w));
  o["witnesses"] = std::move(items);
  return dump_document(o);
}

std::vector<StronglyRealWitness> witnesses_from_json(const std::string& text,
                                                     const Group& context) {
  json j = parse_document(text);
  const json* items = nullptr;
  if (j.is_array()) {
    items = &j;
  } else if (j.is_object()) {
    check_format(j, kWitnessFormat);
    items = &member(j, "witnesses", "document");
    if (!items->is_array()) fail_at("witnesses", "expected an array");
  } else {
    fail_at("document", "expected a json array or object");
  }
  std::vector<StronglyRealWitness> out;
  out.reserve(items->size());
  for (std::size_t i = 0; i < items->size(); ++i)
    out.push_back(witness_from_json_obj(
        (*items)[i], context, "witnesses[" + std::to_string(i) + "]"));
  return out;
}

std::vector<StronglyRealWitness> load_witness_file(const std::string& path,
                                                   const Group& context) {
  return witnesses_from_json(slurp(path), context);
}

// --- report rendering -------------------------------------------------------

std::string render_report(const StructureReport& r) {
  std::string out;
  out += verdict_line("generation1", r.generation1);
  out += verdict_line("generation2", r.generation2);
  out += verdict_line("dagger", r.dagger);
  out += std::string("coprime: ") + (r.coprime ? "yes" : "no") + "\n";
  out += "type: " + r.type.str() + "\n";
  out += verdict_line("overall", r.overall);
  return out;
}

std::string render_report(const RealityReport& r) {
  std::string out;
  out += verdict_line("witness_valid", r.witness_valid);
  out += verdict_line("inversion x1", r.equations[0]);
  out += verdict_line("inversion y1", r.equations[1]);
  out += verdict_line("inversion x2", r.equations[2]);
  out += verdict_line("inversion y2", r.equations[3]);
  out += verdict_line("phi_square_inner", r.phi_square_inner);
  out += verdict_line("overall", r.overall);
  return out;
}

std::string render_invariants(const SurfaceInvariants& v) {
  std::string out = "g1=" + v.g1.get_str() + " g2=" + v.g2.get_str() +
                    " e=" + v.euler.get_str() + " chi=" + v.chi.get_str() +
                    "\n";
  if (!v.beauville_range)
    out += "warning: genera outside the admissible range (g1, g2 >= 2)\n";
  return out;
}

std::string report_to_json(const StructureReport& r) {
  json o;
  o["generation1"] = tristate_to_json(r.generation1);
  o["generation2"] = tristate_to_json(r.generation2);
  o["dagger"] = tristate_to_json(r.dagger);
  o["coprime"] = r.coprime;
  o["type"] = type_to_json(r.type);
  o["overall"] = tristate_to_json(r.overall);
  return dump_document(o);
}

std::string report_to_json(const RealityReport& r) {
  json o;
  o["witness_valid"] = tristate_to_json(r.witness_valid);
  o["inversions"] = json::array({tristate_to_json(r.equations[0]),
                                 tristate_to_json(r.equations[1]),
                                 tristate_to_json(r.equations[2]),
                                 tristate_to_json(r.equations[3])});
  o["phi_square_inner"] = tristate_to_json(r.phi_square_inner);
  o["overall"] = tristate_to_json(r.overall);
  return dump_document(o);
}

}  // namespace beauville
