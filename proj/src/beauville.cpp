#include <beauville/beauville.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace beauville {
namespace {

mpz_class triple_product(const std::array<std::uint64_t, 3>& t) {
  mpz_class p = 1;
  for (const std::uint64_t v : t) p *= mpz_class(v);
  return p;
}

/// All powers x, x^2, ..., x^(order-1) — the nontrivial part of <x>.
std::vector<Element> nontrivial_powers(const Element& x) {
  std::vector<Element> out;
  Element acc = x;
  while (!acc.is_identity()) {
    out.push_back(acc);
    acc = acc * x;
  }
  return out;
}

bool generators_commute(const Group& g) {
  const std::vector<Element>& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
  return true;
}

/// Order of <x, y> inside the ambient abelian group: |<x>| * |<y>| divided
/// by the size of the cyclic intersection, all by direct power walks.
mpz_class abelian_pair_order(const Element& x, const Element& y) {
  const std::uint64_t ox = x.order();
  const std::uint64_t oy = y.order();
  std::unordered_set<Element> xpow;
  xpow.reserve(ox);
  Element acc = x.power(0);
  for (std::uint64_t i = 0; i < ox; ++i) {
    xpow.insert(acc);
    acc = acc * x;
  }
  std::uint64_t meet = 0;
  acc = y.power(0);
  for (std::uint64_t j = 0; j < oy; ++j) {
    if (xpow.count(acc) != 0) ++meet;
    acc = acc * y;
  }
  return mpz_class(ox) * mpz_class(oy) / mpz_class(meet);
}

/// Order of <x, y> as a subgroup of g, when computable within the budget.
std::optional<mpz_class> pair_closure_order(const Group& g, const Element& x,
                                            const Element& y,
                                            std::size_t budget) {
  switch (g.kind()) {
    case ElementKind::Permutation: {
      const Group h = Group::permutation(g.degree(), {x.perm(), y.perm()});
      return h.order();
    }
    case ElementKind::Matrix: {
      const Group h = Group::matrix(g.field(), {x.mat(), y.mat()});
      if (const auto* all = h.try_elements(budget))
        return mpz_class(std::uint64_t(all->size()));
      return std::nullopt;
    }
    default: {
      const Group h = Group::matrix_pair(g.left_factor(), g.right_factor(),
                                         {x, y}, false);
      if (const auto* all = h.try_elements(budget))
        return mpz_class(std::uint64_t(all->size()));
      return std::nullopt;
    }
  }
}

TriState combine_overall(const std::vector<const TriState*>& parts) {
  for (const TriState* p : parts)
    if (p->is_fail()) return TriState::fail(p->reason);
  for (const TriState* p : parts)
    if (p->is_undetermined()) return TriState::undetermined(p->reason);
  return TriState::pass("all checks passed");
}

Element witness_identity(const Group& g) { return g.identity(); }

/// The witness map z -> conj * phi(z) * conj^{-1} with phi fixed by the
/// witness kind.
Element apply_witness_map(const StronglyRealWitness& w, const Element& conj,
                          const Element& z) {
  Element phi_z =
      w.kind == WitnessKind::AbelianInversion ? z.inverse()
                                              : z.conjugated_by(*w.tau);
  return conj * phi_z * conj.inverse();
}

/// Sorted class-index fingerprint of the sigma set of (x, y); exact by
/// construction because the group is enumerable.
std::vector<std::uint32_t> sigma_fingerprint(const Group& g, const Element& x,
                                             const Element& y,
                                             std::size_t budget) {
  std::vector<std::uint32_t> fp;
  for (const Element& base : {x, y, x * y}) {
    for (const Element& p : nontrivial_powers(base))
      fp.push_back(std::uint32_t(g.class_index_of(p, budget)));
  }
  std::sort(fp.begin(), fp.end());
  fp.erase(std::unique(fp.begin(), fp.end()), fp.end());
  return fp;
}

bool disjoint_sorted(const std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return true;
}

/// Shared state of the generating-pair scans: caches keyed by element
/// indices so a pair reappearing under several witness maps is only
/// analysed once.
class PairScanner {
 public:
  PairScanner(const Group& g, std::size_t budget)
      : g_(g),
        budget_(budget),
        elems_(g.elements(budget)),
        target_(g.order(budget)),
        abelian_(generators_commute(g)) {
    index_.reserve(elems_.size());
    for (std::uint32_t i = 0; i < elems_.size(); ++i) index_.emplace(elems_[i], i);
  }

  const std::vector<Element>& elements() const { return elems_; }
  const mpz_class& target() const { return target_; }
  bool abelian() const { return abelian_; }
  std::uint32_t index_of(const Element& e) const { return index_.at(e); }

  bool generates(std::uint32_t xi, std::uint32_t yi) {
    const std::uint64_t key = (std::uint64_t(xi) << 32) | yi;
    auto it = gen_cache_.find(key);
    if (it != gen_cache_.end()) return it->second;
    const Element& x = elems_[xi];
    const Element& y = elems_[yi];
    bool ok;
    if (abelian_) {
      ok = abelian_pair_order(x, y) == target_;
    } else {
      const std::optional<mpz_class> sub = pair_closure_order(g_, x, y, budget_);
      ok = sub && *sub == target_;
    }
    gen_cache_.emplace(key, ok);
    return ok;
  }

  const std::vector<std::uint32_t>& fingerprint(std::uint32_t xi,
                                                std::uint32_t yi) {
    const std::uint64_t key = (std::uint64_t(xi) << 32) | yi;
    auto it = fp_cache_.find(key);
    if (it == fp_cache_.end()) {
      it = fp_cache_
               .emplace(key, sigma_fingerprint(g_, elems_[xi], elems_[yi], budget_))
               .first;
    }
    return it->second;
  }

 private:
  const Group& g_;
  std::size_t budget_;
  const std::vector<Element>& elems_;
  mpz_class target_;
  bool abelian_;
  std::unordered_map<Element, std::uint32_t> index_;
  std::unordered_map<std::uint64_t, bool> gen_cache_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> fp_cache_;
};

/// One fingerprint pool: stores the first pair seen for each distinct
/// fingerprint and reports the first stored entry disjoint from a new one.
struct FingerprintPool {
  struct Entry {
    std::vector<std::uint32_t> fp;
    std::uint32_t xi, yi;
    std::uint32_t param;  // scan-specific label (witness-map index)
  };
  std::vector<Entry> entries;
  std::set<std::vector<std::uint32_t>> seen;

  /// Returns the matching earlier entry, or nullptr.  New distinct
  /// fingerprints are stored; repeats are ignored entirely.
  const Entry* probe(const std::vector<std::uint32_t>& fp, std::uint32_t xi,
                     std::uint32_t yi, std::uint32_t param) {
    if (!seen.insert(fp).second) return nullptr;
    std::size_t match = entries.size();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (disjoint_sorted(entries[i].fp, fp)) {
        match = i;
        break;
      }
    }
    const bool found = match < entries.size();
    entries.push_back(Entry{fp, xi, yi, param});
    return found ? &entries[match] : nullptr;
  }
};

}  // namespace

bool StructureType::coprime() const {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), triple_product(first).get_mpz_t(),
          triple_product(second).get_mpz_t());
  return g == 1;
}

std::string StructureType::str() const {
  std::ostringstream os;
  os << "((" << first[0] << "," << first[1] << "," << first[2] << "),("
     << second[0] << "," << second[1] << "," << second[2] << "))";
  return os.str();
}

StructureType BeauvilleStructure::type() const {
  return StructureType{{x1.order(), y1.order(), (x1 * y1).order()},
                       {x2.order(), y2.order(), (x2 * y2).order()}};
}

StronglyRealWitness StronglyRealWitness::overgroup(Group ambient_group,
                                                   Element tau_elt) {
  StronglyRealWitness w;
  w.kind = WitnessKind::OvergroupConjugation;
  w.ambient = std::move(ambient_group);
  w.tau = std::move(tau_elt);
  return w;
}

StronglyRealWitness StronglyRealWitness::overgroup(Group ambient_group,
                                                   Element tau_elt,
                                                   Element g1_elt,
                                                   Element g2_elt) {
  StronglyRealWitness w = overgroup(std::move(ambient_group), std::move(tau_elt));
  w.g1 = std::move(g1_elt);
  w.g2 = std::move(g2_elt);
  return w;
}

StronglyRealWitness StronglyRealWitness::abelian_inversion() {
  StronglyRealWitness w;
  w.kind = WitnessKind::AbelianInversion;
  return w;
}

SigmaSet sigma(const Group& g, const Element& x, const Element& y) {
  SigmaSet out;
  for (const Element& base : {x, y, x * y}) {
    for (ClassKey key : g.power_class_set(base)) {
      out.exact = out.exact && key.has_exact();
      out.keys.insert(std::move(key));
    }
  }
  return out;
}

TriState sigma_disjoint(const SigmaSet& a, const SigmaSet& b) {
  std::optional<std::string> collision;
  for (const ClassKey& ka : a.keys) {
    for (const ClassKey& kb : b.keys) {
      if (ka.invariant != kb.invariant) continue;
      if (ka.has_exact() && kb.has_exact()) {
        if (*ka.exact == *kb.exact)
          return TriState::fail("shared conjugacy class " + ka.str());
      } else if (!collision) {
        collision = ka.invariant;
      }
    }
  }
  if (collision)
    return TriState::undetermined(
        "class invariant '" + *collision +
        "' occurs on both sides and no exact class oracle separates them");
  return TriState::pass("the two class sets are disjoint");
}

TriState check_dagger(const Group& g, const BeauvilleStructure& s) {
  // Element-level short circuit: a literal power shared between the two
  // sides refutes disjointness with no class oracle at all.
  std::unordered_set<Element> side1;
  for (const Element& base : {s.x1, s.y1, s.x1 * s.y1})
    for (const Element& p : nontrivial_powers(base)) side1.insert(p);
  for (const Element& base : {s.x2, s.y2, s.x2 * s.y2})
    for (const Element& p : nontrivial_powers(base))
      if (side1.count(p) != 0)
        return TriState::fail("element " + p.str() +
                              " lies in both power sets");
  return sigma_disjoint(sigma(g, s.x1, s.y1), sigma(g, s.x2, s.y2));
}

TriState verify_generation(const Group& g, const Element& x, const Element& y,
                           std::size_t budget) {
  const std::optional<mpz_class> sub = pair_closure_order(g, x, y, budget);
  if (sub && g.order_available(budget)) {
    const mpz_class target = g.order(budget);
    if (*sub == target)
      return TriState::pass("the pair generates: order " + target.get_str());
    return TriState::fail("the pair generates a subgroup of order " +
                          sub->get_str() + " inside a group of order " +
                          target.get_str());
  }

  if (g.kind() == ElementKind::MatrixPair && g.certified_full_product()) {
    // Componentwise route: surjectivity onto both factors plus coprime
    // component orders let powers isolate each factor, so the pair
    // generates the whole product.  A failing projection is a refutation.
    const TriState left =
        verify_generation(g.left_factor(), x.left(), y.left(), budget);
    const TriState right =
        verify_generation(g.right_factor(), x.right(), y.right(), budget);
    if (left.is_fail())
      return TriState::fail("left projection does not generate its factor: " +
                            left.reason);
    if (right.is_fail())
      return TriState::fail("right projection does not generate its factor: " +
                            right.reason);
    const bool coprime_x =
        gcd_u64(Element(x.left()).order(), Element(x.right()).order()) == 1;
    const bool coprime_y =
        gcd_u64(Element(y.left()).order(), Element(y.right()).order()) == 1;
    if (left.is_pass() && right.is_pass() && coprime_x && coprime_y)
      return TriState::pass(
          "both projections generate their factors and the component orders "
          "are coprime, so suitable powers reach each factor separately");
    if (!coprime_x || !coprime_y)
      return TriState::undetermined(
          "projections generate the factors but the component orders are not "
          "coprime; the power trick does not apply and the closure exceeds "
          "the budget");
    return TriState::undetermined(
        "projection verdicts undetermined: " + left.reason + " / " +
        right.reason);
  }

  return TriState::undetermined(
      "subgroup closure exceeds the enumeration budget (" +
      std::to_string(budget) + ") and no product certificate applies");
}

StructureReport verify_structure(const BeauvilleStructure& s,
                                 std::size_t budget) {
  const Group& g = s.group;
  for (const Element* e : {&s.x1, &s.y1, &s.x2, &s.y2}) {
    const TriState m = g.membership(*e);
    if (m.is_fail())
      throw DomainError("structure element " + e->str() +
                        " lies outside the group");
  }

  StructureReport r;
  r.generation1 = verify_generation(g, s.x1, s.y1, budget);
  r.generation2 = verify_generation(g, s.x2, s.y2, budget);
  r.dagger = check_dagger(g, s);
  r.type = s.type();
  r.coprime = r.type.coprime();
  if (r.coprime && !r.dagger.is_pass())
    throw Error(
        "internal inconsistency: coprime order products guarantee disjoint "
        "power classes, but the disjointness verdict is '" +
        std::string(to_string(r.dagger.verdict)) + "' (" + r.dagger.reason +
        ")");
  r.overall = combine_overall({&r.generation1, &r.generation2, &r.dagger});
  return r;
}

RealityReport verify_strongly_real(const BeauvilleStructure& s,
                                   const StronglyRealWitness& w,
                                   std::size_t budget) {
  const Group& g = s.group;
  RealityReport r;
  r.witness_valid = TriState::pass("witness invariants hold");

  if (w.kind == WitnessKind::AbelianInversion) {
    if (!generators_commute(g))
      throw DomainError(
          "abelian-inversion witness on a group with non-commuting "
          "generators");
    r.phi_square_inner =
        TriState::pass("inversion composed with itself is the identity map");
  } else {
    if (!w.ambient || !w.tau)
      throw DomainError("overgroup witness without an ambient group or tau");
    const Group& amb = *w.ambient;
    if (w.tau->kind() != g.identity().kind())
      throw DomainError("tau has a different element kind than the group");
    const TriState in_amb = amb.membership(*w.tau);
    if (in_amb.is_fail())
      throw DomainError("tau lies outside the declared ambient group");
    if (in_amb.is_undetermined())
      r.witness_valid = TriState::undetermined(
          "tau membership in the ambient group: " + in_amb.reason);
    for (const Element& gen : g.generators()) {
      const TriState norm = g.membership(gen.conjugated_by(*w.tau));
      if (norm.is_fail())
        throw DomainError("tau does not normalise the group: generator " +
                          gen.str() + " conjugates outside it");
      if (norm.is_undetermined())
        r.witness_valid = TriState::undetermined(
            "normalisation of the group by tau is undecidable: " +
            norm.reason);
    }
    const Element tau_sq = *w.tau * *w.tau;
    if (tau_sq.is_identity()) {
      r.phi_square_inner = TriState::pass("tau squares to the identity");
    } else {
      const TriState sq = g.membership(tau_sq);
      if (sq.is_pass())
        r.phi_square_inner =
            TriState::pass("tau^2 lies in the group, so the square acts "
                           "as an inner automorphism");
      else if (sq.is_fail())
        r.phi_square_inner = TriState::fail(
            "tau^2 lies outside the group; the square is not certified "
            "inner");
      else
        r.phi_square_inner = sq;
    }
  }

  const Element id = witness_identity(g);
  const Element c1 = w.g1.value_or(id);
  const Element c2 = w.g2.value_or(id);
  for (const Element* c : {&c1, &c2}) {
    const TriState m = g.membership(*c);
    if (m.is_fail())
      throw DomainError("witness conjugator " + c->str() +
                        " lies outside the group");
    if (m.is_undetermined())
      r.witness_valid = TriState::undetermined(
          "witness conjugator membership: " + m.reason);
  }

  const std::array<std::pair<const Element*, const Element*>, 4> targets = {
      std::make_pair(&s.x1, &c1), std::make_pair(&s.y1, &c1),
      std::make_pair(&s.x2, &c2), std::make_pair(&s.y2, &c2)};
  static const char* kNames[4] = {"x1", "y1", "x2", "y2"};
  for (std::size_t i = 0; i < 4; ++i) {
    const Element& z = *targets[i].first;
    const Element& conj = *targets[i].second;
    const Element lhs = apply_witness_map(w, conj, z);
    r.equations[i] = lhs == z.inverse()
                         ? TriState::pass(std::string(kNames[i]) + " inverted")
                         : TriState::fail(std::string(kNames[i]) +
                                          " is not mapped to its inverse");
  }

  r.overall = combine_overall({&r.witness_valid, &r.equations[0],
                               &r.equations[1], &r.equations[2],
                               &r.equations[3]});
  (void)budget;
  return r;
}

SurfaceInvariants surface_invariants(const mpz_class& order,
                                     const StructureType& t) {
  if (order < 1) throw DomainError("group order must be at least 1");
  for (const auto& triple : {t.first, t.second})
    for (const std::uint64_t v : triple)
      if (v < 1) throw DomainError("type entries must be at least 1");

  const auto genus = [&order](const std::array<std::uint64_t, 3>& triple) {
    mpq_class bracket(1);
    for (const std::uint64_t v : triple) bracket -= mpq_class(1, v);
    mpq_class g = 1 + mpq_class(order) / 2 * bracket;
    g.canonicalize();
    return g;
  };

  SurfaceInvariants inv;
  inv.g1 = genus(t.first);
  inv.g2 = genus(t.second);
  inv.euler = 4 * (inv.g1 - 1) * (inv.g2 - 1) / mpq_class(order);
  inv.euler.canonicalize();
  inv.chi = inv.euler / 4;
  inv.chi.canonicalize();
  inv.g1_integral = inv.g1.get_den() == 1;
  inv.g2_integral = inv.g2.get_den() == 1;
  inv.euler_integral = inv.euler.get_den() == 1;
  inv.beauville_range = inv.g1 >= 2 && inv.g2 >= 2;
  return inv;
}

std::optional<BeauvilleStructure> search_beauville(const Group& g,
                                                   std::size_t budget) {
  PairScanner scan(g, budget);
  if (scan.target() == 1) return std::nullopt;
  const auto& classes = g.conjugacy_classes(budget);
  FingerprintPool pool;
  for (const auto& cls : classes) {
    if (cls.rep.is_identity()) continue;
    const std::uint32_t xi = scan.index_of(cls.rep);
    for (std::uint32_t yi = 0; yi < scan.elements().size(); ++yi) {
      if (!scan.generates(xi, yi)) continue;
      const auto& fp = scan.fingerprint(xi, yi);
      if (const auto* hit = pool.probe(fp, xi, yi, 0)) {
        return BeauvilleStructure{g, scan.elements()[hit->xi],
                                  scan.elements()[hit->yi],
                                  scan.elements()[xi], scan.elements()[yi]};
      }
    }
  }
  return std::nullopt;
}

std::optional<StronglyRealFind> search_strongly_real(
    const Group& g, const std::vector<StronglyRealWitness>& candidates,
    std::size_t budget) {
  PairScanner scan(g, budget);
  if (scan.target() == 1) return std::nullopt;
  const std::vector<Element>& elems = scan.elements();
  const bool abelian = scan.abelian();

  // Validate candidates before any scanning.
  for (const StronglyRealWitness& w : candidates) {
    if (w.kind == WitnessKind::AbelianInversion) {
      if (!abelian)
        throw DomainError(
            "abelian-inversion candidate supplied for a group with "
            "non-commuting generators");
    } else {
      if (!w.ambient || !w.tau)
        throw DomainError("overgroup candidate without an ambient group or tau");
      if (w.tau->kind() != g.identity().kind())
        throw DomainError("candidate tau has a different element kind");
      if (!w.ambient->contains(*w.tau))
        throw DomainError("candidate tau lies outside its ambient group");
      for (const Element& gen : g.generators())
        if (!g.contains(gen.conjugated_by(*w.tau)))
          throw DomainError("candidate tau does not normalise the group");
    }
  }

  // One pool per candidate map phi (the two marked pairs must share phi);
  // within a pool the conjugator may differ between the pairs.
  const auto scan_pool =
      [&](const std::function<Element(const Element&, const Element&)>& map_of,
          const std::vector<Element>& params)
      -> std::optional<std::array<std::uint32_t, 6>> {
    FingerprintPool pool;
    for (std::uint32_t pi = 0; pi < params.size(); ++pi) {
      const Element& param = params[pi];
      std::vector<std::uint32_t> inverted;
      for (std::uint32_t zi = 0; zi < elems.size(); ++zi)
        if (map_of(param, elems[zi]) == elems[zi].inverse())
          inverted.push_back(zi);
      for (const std::uint32_t xi : inverted) {
        if (elems[xi].is_identity()) continue;
        for (const std::uint32_t yi : inverted) {
          if (!scan.generates(xi, yi)) continue;
          const auto& fp = scan.fingerprint(xi, yi);
          if (const auto* hit = pool.probe(fp, xi, yi, pi))
            return std::array<std::uint32_t, 6>{hit->xi, hit->yi, hit->param,
                                                xi,      yi,      pi};
        }
      }
    }
    return std::nullopt;
  };

  // Supplied candidates first, in order.
  for (const StronglyRealWitness& w : candidates) {
    if (w.kind == WitnessKind::AbelianInversion) {
      // In an abelian group every conjugator acts trivially; one parameter
      // suffices and the scan degenerates to the plain structure search.
      const auto hit = scan_pool(
          [](const Element& conj, const Element& z) {
            (void)conj;
            return z.inverse();
          },
          {g.identity()});
      if (hit) {
        BeauvilleStructure s{g, elems[(*hit)[0]], elems[(*hit)[1]],
                             elems[(*hit)[3]], elems[(*hit)[4]]};
        return StronglyRealFind{std::move(s),
                                StronglyRealWitness::abelian_inversion()};
      }
    } else {
      const Element tau = *w.tau;
      const auto hit = scan_pool(
          [&tau](const Element& conj, const Element& z) {
            return conj * z.conjugated_by(tau) * conj.inverse();
          },
          elems);
      if (hit) {
        BeauvilleStructure s{g, elems[(*hit)[0]], elems[(*hit)[1]],
                             elems[(*hit)[3]], elems[(*hit)[4]]};
        return StronglyRealFind{
            std::move(s), StronglyRealWitness::overgroup(
                              *w.ambient, tau, elems[(*hit)[2]],
                              elems[(*hit)[5]])};
      }
    }
  }

  // The inner maps: conjugation by c for every c.  A hit with parameters
  // c1, c2 is realised as phi = conjugation by c1 with per-pair
  // conjugators e and c2^{-1} c1.
  const auto hit = scan_pool(
      [](const Element& c, const Element& z) { return z.conjugated_by(c); },
      elems);
  if (hit) {
    const Element& c1 = elems[(*hit)[2]];
    const Element& c2 = elems[(*hit)[5]];
    BeauvilleStructure s{g, elems[(*hit)[0]], elems[(*hit)[1]],
                         elems[(*hit)[3]], elems[(*hit)[4]]};
    return StronglyRealFind{
        std::move(s), StronglyRealWitness::overgroup(g, c1, g.identity(),
                                                     c2.inverse() * c1)};
  }
  return std::nullopt;
}

}  // namespace beauville
