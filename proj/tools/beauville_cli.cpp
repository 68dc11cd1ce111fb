// Command line driver: one static binary with the subcommands
//
//   verify <structure-file>
//   construct --family <name> --params <p> --out <file>
//   search --group <group-file> [--strongly-real] [--autos <witness-file>]
//   invariants --order N --type a,b,c,d,e,f
//   atlas-verify --group <name> --gens <file>
//
// Output is deterministic for fixed inputs: a command echo, fixed-order
// "name: VERDICT" sections, and a final summary line.  Exit codes: 0 when
// every requested verdict is PASS, 2 when any is FAIL, 3 when none fail but
// at least one is UNDETERMINED (or a budget ran out), 4 for usage, file and
// input-format errors.
#include <gmpxx.h>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include <beauville/beauville.hpp>
#include <beauville/common.hpp>
#include <beauville/families.hpp>
#include <beauville/group.hpp>
#include <beauville/io.hpp>
#include <beauville/perm.hpp>
#include <beauville/words.hpp>

using namespace beauville;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 2;
constexpr int kExitUndetermined = 3;
constexpr int kExitUsage = 4;

/// Folds every requested verdict into the summary line and the exit code:
/// FAIL dominates UNDETERMINED dominates PASS.
struct Verdicts {
  bool any_fail = false;
  bool any_undetermined = false;

  void add(const TriState& t) {
    any_fail = any_fail || t.is_fail();
    any_undetermined = any_undetermined || t.is_undetermined();
  }
  const char* summary() const {
    if (any_fail) return "FAIL";
    if (any_undetermined) return "UNDETERMINED";
    return "PASS";
  }
  int exit_code() const {
    if (any_fail) return kExitFail;
    if (any_undetermined) return kExitUndetermined;
    return kExitPass;
  }
};

std::string verdict_line(const std::string& name, const TriState& t) {
  std::string line = name + ": " + to_string(t.verdict);
  if (!t.reason.empty()) line += " (" + t.reason + ")";
  return line + "\n";
}

void print_structure_section(const StructureReport& r, Verdicts& v) {
  std::cout << "[structure]\n" << render_report(r);
  v.add(r.overall);
}

void print_witness_section(const RealityReport& r, Verdicts& v) {
  std::cout << "[witness]\n" << render_report(r);
  v.add(r.overall);
}

void print_certificates(const std::vector<std::pair<std::string, TriState>>& certs,
                        Verdicts& v) {
  if (certs.empty()) return;
  std::cout << "[certificates]\n";
  for (const auto& [name, t] : certs) {
    std::cout << verdict_line(name, t);
    v.add(t);
  }
}

void print_discrepancies(const std::vector<std::string>& ds) {
  if (ds.empty()) return;
  std::cout << "[discrepancies]\n";
  for (const std::string& d : ds) std::cout << "- " << d << "\n";
}

int finish(const Verdicts& v) {
  std::cout << "summary: " << v.summary() << "\n";
  return v.exit_code();
}

// --- parameter parsing -------------------------------------------------------

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t at = text.find(sep, start);
    if (at == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, at - start));
    start = at + 1;
  }
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw DomainError(what + " must be an unsigned integer, got '" + text + "'");
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw DomainError(what + " is out of range: '" + text + "'");
  }
}

// --- construct ----------------------------------------------------------------

FamilyResult construct_family(const std::string& family,
                              const std::string& params) {
  auto need = [&](const char* shape) -> const std::string& {
    if (params.empty())
      throw DomainError("family '" + family + "' needs --params " + shape);
    return params;
  };

  if (family == "abelian") return abelian_structure(parse_u64(need("n"), "n"));
  if (family == "suzuki")
    return suzuki_structure(
        static_cast<std::uint32_t>(parse_u64(need("m"), "m")));
  if (family == "alt_coprime")
    return alt_coprime_structure(
        static_cast<std::uint32_t>(parse_u64(need("r"), "r")));
  if (family == "alt_4r") {
    std::vector<std::string> parts = split(need("r[,literal|curated]"), ',');
    Alt4rForm form = Alt4rForm::Literal;
    if (parts.size() == 2) {
      if (parts[1] == "literal") form = Alt4rForm::Literal;
      else if (parts[1] == "curated") form = Alt4rForm::Curated;
      else throw DomainError("alt_4r form must be literal or curated");
    } else if (parts.size() != 1) {
      throw DomainError("alt_4r params are r[,literal|curated]");
    }
    return alt_4r_structure(
        static_cast<std::uint32_t>(parse_u64(parts[0], "r")), form);
  }
  if (family == "alt_power") {
    std::vector<std::string> parts = split(need("n,k"), ',');
    if (parts.size() != 2) throw DomainError("alt_power params are n,k");
    return alt_power_structure(
        static_cast<std::uint32_t>(parse_u64(parts[0], "n")),
        static_cast<std::uint32_t>(parse_u64(parts[1], "k")));
  }
  if (family == "sym_double") {
    std::vector<std::string> parts = split(need("n[,curated|literal]"), ',');
    SymDoubleForm form = SymDoubleForm::Curated;
    if (parts.size() == 2) {
      if (parts[1] == "literal") form = SymDoubleForm::Literal;
      else if (parts[1] == "curated") form = SymDoubleForm::Curated;
      else throw DomainError("sym_double form must be curated or literal");
    } else if (parts.size() != 1) {
      throw DomainError("sym_double params are n[,curated|literal]");
    }
    return sym_double_structure(
        static_cast<std::uint32_t>(parse_u64(parts[0], "n")), form);
  }
  if (family == "mathieu_double") return mathieu_double(need("A5xA5"));
  if (family == "product_double") {
    std::vector<std::string> parts = split(need("<family>:<params>"), ':');
    if (parts.size() != 2 || parts[0].empty() || parts[1].empty())
      throw DomainError(
          "product_double params are <inner-family>:<inner-params>, e.g. "
          "alt_coprime:6");
    if (parts[0] == "product_double")
      throw DomainError("product_double cannot nest itself");
    FamilyResult inner = construct_family(parts[0], parts[1]);
    return product_double(inner.structure, inner.witness);
  }
  throw DomainError(
      "unknown family '" + family +
      "' (expected abelian, suzuki, alt_coprime, alt_4r, alt_power, "
      "sym_double, mathieu_double or product_double)");
}

// --- subcommands --------------------------------------------------------------

int run_verify(const std::string& path) {
  LoadedStructure ls = load_structure_file(path);
  Verdicts v;
  print_structure_section(verify_structure(ls.structure), v);
  if (ls.witness.has_value()) {
    RealityReport real;
    try {
      real = verify_strongly_real(ls.structure, *ls.witness);
    } catch (const DomainError& e) {
      // A file-supplied witness that violates its own preconditions is a
      // verification result, not a usage error.
      real.witness_valid = TriState::fail(e.what());
      real.overall = real.witness_valid;
    }
    print_witness_section(real, v);
  }
  return finish(v);
}

int run_construct(const std::string& family, const std::string& params,
                  const std::string& out_path) {
  FamilyResult fr = construct_family(family, params);
  save_structure_file(out_path, fr.structure, fr.witness);
  std::cout << "wrote: " << out_path << "\n";
  Verdicts v;
  print_certificates(fr.certificates, v);
  print_structure_section(fr.structure_report, v);
  print_witness_section(fr.reality_report, v);
  print_discrepancies(fr.discrepancies);
  return finish(v);
}

int run_search(const std::string& group_path, bool strongly_real,
               const std::string& autos_path) {
  Group g = load_group_file(group_path);
  Verdicts v;
  if (!strongly_real) {
    std::optional<BeauvilleStructure> found = search_beauville(g);
    if (!found.has_value()) {
      std::cout << "no Beauville structure (exhaustive)\n";
      return finish(v);
    }
    std::cout << "Beauville structure found\n";
    print_structure_section(verify_structure(*found), v);
    std::cout << "[structure-file]\n" << structure_to_json(*found);
    return finish(v);
  }

  std::vector<StronglyRealWitness> candidates;
  if (!autos_path.empty()) candidates = load_witness_file(autos_path, g);
  std::optional<StronglyRealFind> found = search_strongly_real(g, candidates);
  if (!found.has_value()) {
    std::cout
        << "no strongly real Beauville structure (relative to supplied "
           "candidates)\n";
    return finish(v);
  }
  std::cout << "strongly real Beauville structure found\n";
  print_structure_section(verify_structure(found->structure), v);
  print_witness_section(verify_strongly_real(found->structure, found->witness),
                        v);
  std::cout << "[structure-file]\n"
            << structure_to_json(found->structure, found->witness);
  return finish(v);
}

int run_invariants(const std::string& order_text, const std::string& type_text) {
  if (order_text.empty() ||
      order_text.find_first_not_of("0123456789") != std::string::npos)
    throw DomainError("--order must be an unsigned integer, got '" +
                      order_text + "'");
  mpz_class order(order_text);

  std::vector<std::string> parts = split(type_text, ',');
  if (parts.size() != 6)
    throw DomainError("--type needs six comma-separated integers a,b,c,d,e,f");
  std::vector<std::uint64_t> o;
  o.reserve(6);
  for (const std::string& p : parts) o.push_back(parse_u64(p, "type entry"));
  StructureType t{{o[0], o[1], o[2]}, {o[3], o[4], o[5]}};

  std::cout << render_invariants(surface_invariants(order, t));
  return finish(Verdicts{});
}

int run_atlas_verify(const std::string& name, const std::string& gens_path) {
  std::pair<Perm, Perm> cd = load_generators_file(gens_path);
  SporadicResult res = sporadic_structure(name, cd.first, cd.second);
  std::cout << "row: " << res.row.name << "\n";
  std::cout << "expected type: " << res.expected_type.str() << "\n";
  if (res.hn_u1_used.has_value())
    std::cout << "u1 reading: "
              << (*res.hn_u1_used == HnU1Reading::Commutator ? "commutator"
                                                             : "grouping")
              << "\n";
  Verdicts v;
  print_certificates(res.certificates, v);
  print_structure_section(res.structure_report, v);
  print_witness_section(res.reality_report, v);
  print_discrepancies(res.discrepancies);
  return finish(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Beauville structure toolkit: construct, verify and search for "
      "(strongly real) Beauville structures on finite groups"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  std::string structure_path;
  CLI::App* verify =
      app.add_subcommand("verify", "Check a structure file end to end");
  verify->add_option("structure-file", structure_path, "Structure file (json)")
      ->required();

  std::string family, params, out_path;
  CLI::App* construct =
      app.add_subcommand("construct", "Build a family instance and save it");
  construct->add_option("--family", family, "Family name")->required();
  construct->add_option("--params", params, "Family parameters");
  construct->add_option("--out", out_path, "Output structure file")->required();

  std::string group_path, autos_path;
  bool strongly_real = false;
  CLI::App* search =
      app.add_subcommand("search", "Deterministic search over a group file");
  search->add_option("--group", group_path, "Group file (json)")->required();
  CLI::Option* sr_flag = search->add_flag(
      "--strongly-real", strongly_real,
      "Restrict to pairs inverted by one witness (inner maps always tried)");
  search
      ->add_option("--autos", autos_path,
                   "Witness candidate file for the strongly-real search")
      ->needs(sr_flag);

  std::string order_text, type_text;
  CLI::App* invariants =
      app.add_subcommand("invariants", "Exact genera and surface numbers");
  invariants->add_option("--order", order_text, "Group order")->required();
  invariants->add_option("--type", type_text, "Type a,b,c,d,e,f")->required();

  std::string atlas_name, gens_path;
  CLI::App* atlas = app.add_subcommand(
      "atlas-verify", "Evaluate a tabulated word row on standard generators");
  atlas->add_option("--group", atlas_name, "Row name, e.g. M12:2")->required();
  atlas->add_option("--gens", gens_path, "Generator file for c, d")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  std::string echo;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) echo += " ";
    echo += argv[i];
  }
  std::cout << "command: " << echo << "\n";

  try {
    if (verify->parsed()) return run_verify(structure_path);
    if (construct->parsed()) return run_construct(family, params, out_path);
    if (search->parsed())
      return run_search(group_path, strongly_real, autos_path);
    if (invariants->parsed()) return run_invariants(order_text, type_text);
    if (atlas->parsed()) return run_atlas_verify(atlas_name, gens_path);
  } catch (const BudgetExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitUndetermined;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
