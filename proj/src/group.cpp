// Group engine: stabilizer chains, bounded enumeration, conjugacy machinery.

#include "beauville/group.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace beauville {

// ---------------------------------------------------------------------------
// Element
// ---------------------------------------------------------------------------

ElementKind Element::kind() const {
  switch (value_.index()) {
    case 0:
      return ElementKind::Permutation;
    case 1:
      return ElementKind::Matrix;
    default:
      return ElementKind::MatrixPair;
  }
}

const Perm& Element::perm() const {
  if (kind() != ElementKind::Permutation)
    throw DomainError("element is not a permutation");
  return std::get<Perm>(value_);
}

const Mat4& Element::mat() const {
  if (kind() != ElementKind::Matrix)
    throw DomainError("element is not a matrix");
  return std::get<Mat4>(value_);
}

const Mat4& Element::left() const {
  if (kind() != ElementKind::MatrixPair)
    throw DomainError("element is not a matrix pair");
  return std::get<std::pair<Mat4, Mat4>>(value_).first;
}

const Mat4& Element::right() const {
  if (kind() != ElementKind::MatrixPair)
    throw DomainError("element is not a matrix pair");
  return std::get<std::pair<Mat4, Mat4>>(value_).second;
}

bool Element::is_identity() const {
  switch (kind()) {
    case ElementKind::Permutation:
      return perm().is_identity();
    case ElementKind::Matrix:
      return mat().is_identity();
    default:
      return left().is_identity() && right().is_identity();
  }
}

Element Element::operator*(const Element& o) const {
  if (kind() != o.kind()) throw DomainError("product of mixed element kinds");
  switch (kind()) {
    case ElementKind::Permutation:
      return Element(perm() * o.perm());
    case ElementKind::Matrix:
      return Element(mat() * o.mat());
    default:
      return Element(left() * o.left(), right() * o.right());
  }
}

Element Element::inverse() const {
  switch (kind()) {
    case ElementKind::Permutation:
      return Element(perm().inverse());
    case ElementKind::Matrix:
      return Element(mat().inverse());
    default:
      return Element(left().inverse(), right().inverse());
  }
}

Element Element::conjugated_by(const Element& g) const {
  if (kind() != g.kind()) throw DomainError("conjugation across element kinds");
  switch (kind()) {
    case ElementKind::Permutation:
      return Element(perm().conjugated_by(g.perm()));
    case ElementKind::Matrix:
      return Element(mat().conjugated_by(g.mat()));
    default:
      return Element(left().conjugated_by(g.left()),
                     right().conjugated_by(g.right()));
  }
}

Element Element::power(std::int64_t e) const {
  switch (kind()) {
    case ElementKind::Permutation:
      return Element(perm().power(e));
    case ElementKind::Matrix:
      return Element(mat().power(e));
    default:
      return Element(left().power(e), right().power(e));
  }
}

std::uint64_t Element::order() const {
  switch (kind()) {
    case ElementKind::Permutation:
      return perm().order();
    case ElementKind::Matrix:
      return mat().order();
    default:
      return std::lcm(left().order(), right().order());
  }
}

bool Element::operator==(const Element& o) const {
  if (value_.index() != o.value_.index()) return false;
  return value_ == o.value_;
}

namespace {

bool mat_less(const Mat4& a, const Mat4& b) {
  if (a.field().m != b.field().m) return a.field().m < b.field().m;
  if (a.field().modulus != b.field().modulus)
    return a.field().modulus < b.field().modulus;
  return a.entries() < b.entries();
}

}  // namespace

bool Element::operator<(const Element& o) const {
  if (value_.index() != o.value_.index()) return value_.index() < o.value_.index();
  switch (kind()) {
    case ElementKind::Permutation:
      return perm() < o.perm();
    case ElementKind::Matrix:
      return mat_less(mat(), o.mat());
    default:
      if (left() != o.left()) return mat_less(left(), o.left());
      return mat_less(right(), o.right());
  }
}

std::size_t Element::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ value_.index();
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  switch (kind()) {
    case ElementKind::Permutation:
      mix(perm().hash());
      break;
    case ElementKind::Matrix:
      mix(mat().hash());
      break;
    default:
      mix(left().hash());
      mix(right().hash());
  }
  return h;
}

std::string Element::str() const {
  switch (kind()) {
    case ElementKind::Permutation:
      return perm().str();
    case ElementKind::Matrix: {
      std::string s = "[";
      const auto hx = mat().to_hex();
      for (std::size_t i = 0; i < hx.size(); ++i) {
        if (i) s += i % 4 == 0 ? "; " : ",";
        s += hx[i];
      }
      return s + "]";
    }
    default:
      return "(" + Element(left()).str() + " | " + Element(right()).str() + ")";
  }
}

// ---------------------------------------------------------------------------
// Stabilizer chain (deterministic Schreier-Sims)
// ---------------------------------------------------------------------------

namespace {

std::uint32_t min_moved_point(const Perm& p) {
  for (std::uint32_t i = 1; i <= p.degree(); ++i)
    if (p(i) != i) return i;
  return 0;
}

}  // namespace

class StabChain {
public:
  StabChain(std::uint32_t degree, const std::vector<Perm>& input) : degree_(degree) {
    std::vector<Perm> gens;
    for (const Perm& g : input) {
      if (g.is_identity()) continue;
      if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
    if (gens.empty()) {
      order_ = 1;
      return;
    }
    // Base points chosen greedily in input order so every generator moves
    // at least one of them; smaller points preferred.
    for (const Perm& g : gens) {
      bool moves_base = false;
      for (std::uint32_t b : base_)
        if (g(b) != b) {
          moves_base = true;
          break;
        }
      if (!moves_base) base_.push_back(min_moved_point(g));
    }
    gens_.resize(base_.size());
    trans_.resize(base_.size());
    orbit_.resize(base_.size());
    for (const Perm& g : gens) {
      for (std::size_t i = 0; i < base_.size(); ++i) {
        bool fixes_prefix = true;
        for (std::size_t j = 0; j < i; ++j)
          if (g(base_[j]) != base_[j]) {
            fixes_prefix = false;
            break;
          }
        if (fixes_prefix) gens_[i].push_back(g);
      }
    }
    for (std::size_t i = base_.size(); i-- > 0;) schreier_sims(i);
    order_ = 1;
    for (const auto& orb : orbit_) order_ *= mpz_class(std::uint64_t(orb.size()));
  }

  const mpz_class& order() const { return order_; }

  bool contains(const Perm& p) const {
    if (p.degree() != degree_) return false;
    auto [residue, level] = strip(p, 0);
    (void)level;
    return residue.is_identity();
  }

private:
  void rebuild_orbit(std::size_t i) {
    trans_[i].clear();
    orbit_[i].clear();
    const std::uint32_t b = base_[i];
    trans_[i].emplace(b, Perm(degree_));
    orbit_[i].push_back(b);
    for (std::size_t idx = 0; idx < orbit_[i].size(); ++idx) {
      const std::uint32_t p = orbit_[i][idx];
      const Perm up = trans_[i].at(p);
      for (const Perm& s : gens_[i]) {
        const std::uint32_t q = s(p);
        if (!trans_[i].count(q)) {
          trans_[i].emplace(q, up * s);
          orbit_[i].push_back(q);
        }
      }
    }
  }

  std::pair<Perm, std::size_t> strip(Perm h, std::size_t start) const {
    for (std::size_t j = start; j < base_.size(); ++j) {
      const std::uint32_t p = h(base_[j]);
      auto it = trans_[j].find(p);
      if (it == trans_[j].end()) return {h, j};
      h = h * it->second.inverse();
    }
    return {h, base_.size()};
  }

  // Establishes the Schreier condition at level i, assuming deeper levels
  // already satisfy it; new strong generators are pushed to deeper levels.
  void schreier_sims(std::size_t i) {
    rebuild_orbit(i);
    for (std::size_t idx = 0; idx < orbit_[i].size(); ++idx) {
      const std::uint32_t p = orbit_[i][idx];
      const Perm up = trans_[i].at(p);
      for (std::size_t gi = 0; gi < gens_[i].size(); ++gi) {
        const Perm& s = gens_[i][gi];
        const Perm uq = trans_[i].at(s(p));
        const Perm schreier = up * s * uq.inverse();
        if (schreier.is_identity()) continue;
        auto [h, level] = strip(schreier, i + 1);
        if (h.is_identity()) continue;
        if (level == base_.size()) {
          base_.push_back(min_moved_point(h));
          gens_.emplace_back();
          trans_.emplace_back();
          orbit_.emplace_back();
        }
        for (std::size_t l = i + 1; l <= level; ++l) gens_[l].push_back(h);
        for (std::size_t l = level + 1; l-- > i + 1;) schreier_sims(l);
      }
    }
  }

  std::uint32_t degree_;
  std::vector<std::uint32_t> base_;
  std::vector<std::vector<Perm>> gens_;
  std::vector<std::unordered_map<std::uint32_t, Perm>> trans_;
  std::vector<std::vector<std::uint32_t>> orbit_;
  mpz_class order_;
};

// ---------------------------------------------------------------------------
// Group
// ---------------------------------------------------------------------------

namespace {

enum class ExactScheme { None, Enumerated, Product, Symmetric, Alternating };

}  // namespace

struct Group::Impl {
  ElementKind kind = ElementKind::Permutation;
  std::uint32_t degree = 0;
  std::optional<FieldSpec> spec;
  std::vector<Element> gens;
  std::vector<std::vector<std::uint32_t>> blocks;
  std::vector<Group> factors;  // pair kind: exactly two
  bool certified = false;

  mutable std::recursive_mutex mu;
  mutable std::unique_ptr<StabChain> chain;
  mutable std::optional<std::vector<Element>> elems;
  mutable std::unordered_map<Element, int> elem_index;
  mutable std::size_t failed_budget = 0;
  mutable std::optional<std::vector<ConjClass>> classes;
  mutable std::vector<int> class_of;
  mutable std::optional<ExactScheme> scheme;
  mutable std::optional<std::vector<Group>> projections;
  mutable std::optional<bool> verified_product;

  const StabChain& stab_chain() const {
    std::lock_guard<std::recursive_mutex> lock(mu);
    if (!chain) {
      std::vector<Perm> ps;
      ps.reserve(gens.size());
      for (const Element& g : gens) ps.push_back(g.perm());
      chain = std::make_unique<StabChain>(degree, ps);
    }
    return *chain;
  }
};

Group Group::permutation(std::uint32_t degree, std::vector<Perm> generators,
                         std::vector<std::vector<std::uint32_t>> orbit_blocks) {
  if (degree < 1) throw DomainError("degree must be positive");
  if (generators.empty()) throw DomainError("generator list must be nonempty");
  for (const Perm& g : generators) {
    if (g.degree() != degree)
      throw DomainError("generator degree mismatch: expected " +
                        std::to_string(degree) + ", got " +
                        std::to_string(g.degree()));
  }
  if (!orbit_blocks.empty()) {
    std::vector<int> seen(degree + 1, 0);
    for (const auto& block : orbit_blocks) {
      if (block.empty()) throw DomainError("empty orbit block");
      for (std::uint32_t p : block) {
        if (p < 1 || p > degree || seen[p]++)
          throw DomainError("orbit blocks must partition 1..degree");
      }
      for (const Perm& g : generators) {
        if (!g.preserves(block))
          throw DomainError("generator does not preserve a declared block");
      }
    }
    for (std::uint32_t p = 1; p <= degree; ++p)
      if (!seen[p]) throw DomainError("orbit blocks must cover 1..degree");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = ElementKind::Permutation;
  impl->degree = degree;
  for (Perm& g : generators) impl->gens.emplace_back(std::move(g));
  impl->blocks = std::move(orbit_blocks);
  return Group(std::move(impl));
}

Group Group::matrix(FieldSpec spec, std::vector<Mat4> generators) {
  if (generators.empty()) throw DomainError("generator list must be nonempty");
  for (const Mat4& g : generators) {
    if (!(g.field() == spec)) throw DomainError("generator field mismatch");
    if (g.det() == 0) throw DomainError("singular matrix generator");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = ElementKind::Matrix;
  impl->spec = spec;
  for (Mat4& g : generators) impl->gens.emplace_back(std::move(g));
  return Group(std::move(impl));
}

Group Group::matrix_pair(Group left_factor, Group right_factor,
                         std::vector<Element> generators,
                         bool certified_full_product) {
  if (left_factor.kind() != ElementKind::Matrix ||
      right_factor.kind() != ElementKind::Matrix)
    throw DomainError("pair factors must be matrix groups");
  if (generators.empty()) throw DomainError("generator list must be nonempty");
  for (const Element& g : generators) {
    if (g.kind() != ElementKind::MatrixPair)
      throw DomainError("pair group generators must be matrix pairs");
    if (!(g.left().field() == left_factor.field()) ||
        !(g.right().field() == right_factor.field()))
      throw DomainError("pair component field mismatch");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = ElementKind::MatrixPair;
  impl->factors.push_back(std::move(left_factor));
  impl->factors.push_back(std::move(right_factor));
  impl->gens = std::move(generators);
  impl->certified = certified_full_product;
  return Group(std::move(impl));
}

ElementKind Group::kind() const { return impl_->kind; }

std::uint32_t Group::degree() const {
  if (impl_->kind != ElementKind::Permutation)
    throw DomainError("degree applies to permutation groups only");
  return impl_->degree;
}

const FieldSpec& Group::field() const {
  if (impl_->kind != ElementKind::Matrix)
    throw DomainError("field applies to matrix groups only");
  return *impl_->spec;
}

const std::vector<Element>& Group::generators() const { return impl_->gens; }

const std::vector<std::vector<std::uint32_t>>& Group::orbit_blocks() const {
  return impl_->blocks;
}

bool Group::certified_full_product() const { return impl_->certified; }

const Group& Group::left_factor() const {
  if (impl_->kind != ElementKind::MatrixPair)
    throw DomainError("factors apply to pair groups only");
  return impl_->factors[0];
}

const Group& Group::right_factor() const {
  if (impl_->kind != ElementKind::MatrixPair)
    throw DomainError("factors apply to pair groups only");
  return impl_->factors[1];
}

Element Group::identity() const {
  switch (impl_->kind) {
    case ElementKind::Permutation:
      return Element(Perm(impl_->degree));
    case ElementKind::Matrix:
      return Element(Mat4(*impl_->spec));
    default:
      return Element(Mat4(impl_->factors[0].field()),
                     Mat4(impl_->factors[1].field()));
  }
}

mpz_class Group::order(std::size_t budget) const {
  switch (impl_->kind) {
    case ElementKind::Permutation:
      return impl_->stab_chain().order();
    case ElementKind::Matrix:
      return mpz_class(std::uint64_t(elements(budget).size()));
    default: {
      if (const auto* all = try_elements(budget))
        return mpz_class(std::uint64_t(all->size()));
      if (impl_->certified)
        return impl_->factors[0].order(budget) * impl_->factors[1].order(budget);
      throw BudgetExceeded(
          "pair group order needs enumeration (budget " +
          std::to_string(budget) + ") or a certified product decomposition");
    }
  }
}

bool Group::order_available(std::size_t budget) const {
  try {
    order(budget);
    return true;
  } catch (const BudgetExceeded&) {
    return false;
  }
}

const std::vector<Element>* Group::try_elements(std::size_t budget) const {
  std::lock_guard<std::recursive_mutex> lock(impl_->mu);
  if (impl_->elems) {
    return impl_->elems->size() <= budget ? &*impl_->elems : nullptr;
  }
  if (impl_->kind == ElementKind::Permutation) {
    // Exact order is cheap; skip the closure when it cannot fit.
    if (impl_->stab_chain().order() > mpz_class(std::uint64_t(budget)))
      return nullptr;
  } else if (impl_->failed_budget >= budget) {
    return nullptr;
  } else if (impl_->kind == ElementKind::MatrixPair && impl_->certified) {
    // A certified product's order is the product of the factor orders, which
    // bounds the closure; skip a doomed breadth-first pass.
    try {
      const mpz_class product =
          impl_->factors[0].order(budget) * impl_->factors[1].order(budget);
      if (product > mpz_class(std::uint64_t(budget))) {
        impl_->failed_budget = std::max(impl_->failed_budget, budget);
        return nullptr;
      }
    } catch (const BudgetExceeded&) {
      impl_->failed_budget = std::max(impl_->failed_budget, budget);
      return nullptr;
    }
  }
  std::vector<Element> all;
  std::unordered_map<Element, int> index;
  all.push_back(identity());
  index.emplace(all[0], 0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const Element& g : impl_->gens) {
      Element next = all[i] * g;
      if (index.count(next)) continue;
      if (all.size() >= budget) {
        impl_->failed_budget = std::max(impl_->failed_budget, budget);
        return nullptr;
      }
      index.emplace(next, int(all.size()));
      all.push_back(std::move(next));
    }
  }
  impl_->elems = std::move(all);
  impl_->elem_index = std::move(index);
  return &*impl_->elems;
}

const std::vector<Element>& Group::elements(std::size_t budget) const {
  if (const auto* all = try_elements(budget)) return *all;
  throw BudgetExceeded("enumeration budget " + std::to_string(budget) +
                       " exceeded");
}

bool Group::enumerable(std::size_t budget) const {
  return try_elements(budget) != nullptr;
}

bool Group::contains(const Element& g) const {
  if (g.kind() != impl_->kind) throw DomainError("element kind mismatch");
  switch (impl_->kind) {
    case ElementKind::Permutation:
      if (g.perm().degree() != impl_->degree)
        throw DomainError("element degree mismatch");
      return impl_->stab_chain().contains(g.perm());
    case ElementKind::Matrix: {
      const auto* all = try_elements();
      if (!all)
        throw BudgetExceeded(
            "matrix membership needs enumeration (budget " +
            std::to_string(kDefaultEnumerationBudget) + ")");
      std::lock_guard<std::recursive_mutex> lock(impl_->mu);
      return impl_->elem_index.count(g) > 0;
    }
    default: {
      if (const auto* all = try_elements()) {
        (void)all;
        std::lock_guard<std::recursive_mutex> lock(impl_->mu);
        return impl_->elem_index.count(g) > 0;
      }
      if (impl_->certified) {
        return impl_->factors[0].contains(Element(g.left())) &&
               impl_->factors[1].contains(Element(g.right()));
      }
      throw BudgetExceeded(
          "pair membership needs enumeration (budget " +
          std::to_string(kDefaultEnumerationBudget) +
          ") or a certified product decomposition");
    }
  }
}

TriState Group::membership(const Element& g) const {
  try {
    return contains(g) ? TriState::pass("element is in the group")
                       : TriState::fail("element is not in the group");
  } catch (const BudgetExceeded& e) {
    return TriState::undetermined(std::string("membership: ") + e.what());
  }
}

const std::vector<Group::ConjClass>& Group::conjugacy_classes(
    std::size_t budget) const {
  std::lock_guard<std::recursive_mutex> lock(impl_->mu);
  if (impl_->classes) return *impl_->classes;
  const std::vector<Element>& all = elements(budget);
  const std::size_t n = all.size();
  impl_->class_of.assign(n, -1);
  std::vector<int> rep_index;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (impl_->class_of[i] != -1) continue;
    const int c = int(rep_index.size());
    rep_index.push_back(int(i));
    sizes.push_back(0);
    queue.clear();
    queue.push_back(i);
    impl_->class_of[i] = c;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      ++sizes[c];
      const Element& e = all[queue[qi]];
      for (const Element& g : impl_->gens) {
        const Element conj = e.conjugated_by(g);
        const std::size_t j = std::size_t(impl_->elem_index.at(conj));
        if (impl_->class_of[j] == -1) {
          impl_->class_of[j] = c;
          queue.push_back(j);
        }
      }
    }
  }
  std::vector<ConjClass> table;
  table.reserve(rep_index.size());
  for (std::size_t c = 0; c < rep_index.size(); ++c) {
    table.push_back(ConjClass{all[std::size_t(rep_index[c])], sizes[c],
                              ClassKey{}});
  }
  impl_->classes = std::move(table);
  // Keys need class_of (set above), so fill them in a second pass.
  for (auto& cls : *impl_->classes) cls.key = class_key(cls.rep);
  return *impl_->classes;
}

int Group::class_index_of(const Element& g, std::size_t budget) const {
  conjugacy_classes(budget);
  std::lock_guard<std::recursive_mutex> lock(impl_->mu);
  auto it = impl_->elem_index.find(g);
  if (it == impl_->elem_index.end())
    throw DomainError("element is not in the group");
  return impl_->class_of[std::size_t(it->second)];
}

// --- class keys -------------------------------------------------------------

namespace {

std::string cycle_type_str(const Perm& p) {
  std::string s = "(";
  const auto type = p.cycle_type();
  for (std::size_t i = 0; i < type.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(type[i]);
  }
  return s + ")";
}

std::string full_type_str(const Perm& p) {
  std::string s;
  const auto type = p.full_cycle_type();
  for (std::size_t i = 0; i < type.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(type[i]);
  }
  return s;
}

std::string coeffs_str(const std::array<std::uint32_t, 5>& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += hex_mask(c[i]);
  }
  return s;
}

bool splits_in_alternating(const std::vector<std::uint32_t>& full_type) {
  for (std::size_t i = 0; i < full_type.size(); ++i) {
    if (full_type[i] % 2 == 0) return false;
    if (i && full_type[i] == full_type[i - 1]) return false;
  }
  return true;
}

// All cycles of p including fixed points, each rotated min-first, sorted by
// length descending then leading point ascending.
std::vector<std::vector<std::uint32_t>> full_cycles_sorted(const Perm& p) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::vector<bool> seen(std::size_t(p.degree()) + 1, false);
  for (std::uint32_t start = 1; start <= p.degree(); ++start) {
    if (seen[std::size_t(start)]) continue;
    std::vector<std::uint32_t> cyc;
    std::uint32_t cur = start;
    do {
      seen[std::size_t(cur)] = true;
      cyc.push_back(cur);
      cur = p(cur);
    } while (cur != start);
    cycles.push_back(std::move(cyc));
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const std::vector<std::uint32_t>& a,
               const std::vector<std::uint32_t>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a[0] < b[0];
            });
  return cycles;
}

// Some g with a^g = b, built by matching cycles of equal length in canonical
// order.  Valid whenever a and b share a full cycle type.
Perm conjugator_between(const Perm& a, const Perm& b) {
  const auto ca = full_cycles_sorted(a);
  const auto cb = full_cycles_sorted(b);
  std::vector<std::uint32_t> images(std::size_t(a.degree()), 0);
  for (std::size_t k = 0; k < ca.size(); ++k) {
    if (ca[k].size() != cb[k].size())
      throw DomainError("conjugator requested for distinct cycle types");
    for (std::size_t j = 0; j < ca[k].size(); ++j)
      images[std::size_t(ca[k][j]) - 1] = cb[k][j];
  }
  Perm g = Perm::from_images(images);
  if (a.conjugated_by(g) != b)
    throw Error("internal: cycle-matching conjugator failed");
  return g;
}

Perm canonical_rep_of_type(const std::vector<std::uint32_t>& full_type,
                           std::uint32_t degree) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::uint32_t next = 1;
  for (std::uint32_t len : full_type) {
    std::vector<std::uint32_t> cyc;
    for (std::uint32_t j = 0; j < len; ++j) cyc.push_back(next++);
    cycles.push_back(std::move(cyc));
  }
  if (next != degree + 1)
    throw DomainError("cycle type does not fill the degree");
  return Perm::from_cycles(degree, cycles);
}

}  // namespace

bool Group::is_natural_symmetric() const {
  if (impl_->kind != ElementKind::Permutation) return false;
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), unsigned(impl_->degree));
  return impl_->stab_chain().order() == fact;
}

bool Group::is_natural_alternating() const {
  if (impl_->kind != ElementKind::Permutation) return false;
  if (impl_->degree < 3) return false;
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), unsigned(impl_->degree));
  return impl_->stab_chain().order() * 2 == fact;
}

const std::vector<Group>& Group::block_projections() const {
  std::lock_guard<std::recursive_mutex> lock(impl_->mu);
  if (impl_->projections) return *impl_->projections;
  if (impl_->kind != ElementKind::Permutation || impl_->blocks.empty())
    throw DomainError("block projections need declared orbit blocks");
  std::vector<Group> projs;
  for (const auto& block : impl_->blocks) {
    std::vector<Perm> restricted;
    restricted.reserve(impl_->gens.size());
    for (const Element& g : impl_->gens)
      restricted.push_back(g.perm().restricted_to(block));
    projs.push_back(
        Group::permutation(std::uint32_t(block.size()), std::move(restricted)));
  }
  impl_->projections = std::move(projs);
  return *impl_->projections;
}

bool Group::is_verified_direct_product() const {
  if (impl_->kind == ElementKind::MatrixPair) return impl_->certified;
  if (impl_->kind != ElementKind::Permutation || impl_->blocks.empty())
    return false;
  std::lock_guard<std::recursive_mutex> lock(impl_->mu);
  if (impl_->verified_product) return *impl_->verified_product;
  mpz_class product = 1;
  for (const Group& proj : block_projections()) product *= proj.order();
  impl_->verified_product = (product == impl_->stab_chain().order());
  return *impl_->verified_product;
}

namespace {

std::string invariant_of(ElementKind kind, std::uint32_t degree,
                         const std::vector<std::vector<std::uint32_t>>& blocks,
                         const Element& x) {
  std::string inv = "o" + std::to_string(x.order()) + "|";
  switch (kind) {
    case ElementKind::Permutation: {
      const Perm& p = x.perm();
      if (p.degree() != degree) throw DomainError("degree mismatch");
      if (blocks.empty()) {
        inv += cycle_type_str(p);
      } else {
        for (const auto& block : blocks) {
          if (!p.preserves(block))
            throw DomainError("element does not preserve the declared blocks");
          inv += cycle_type_str(p.restricted_to(block));
        }
      }
      break;
    }
    case ElementKind::Matrix:
      inv += "cp:" + coeffs_str(x.mat().char_poly());
      break;
    default:
      inv += "cpL:" + coeffs_str(x.left().char_poly()) +
             "|cpR:" + coeffs_str(x.right().char_poly());
  }
  return inv;
}

}  // namespace

ClassKey Group::class_key(const Element& x) const {
  if (x.kind() != impl_->kind) throw DomainError("element kind mismatch");
  std::string inv = invariant_of(impl_->kind, impl_->degree, impl_->blocks, x);

  // Exact part, by the group's strongest applicable scheme.
  ExactScheme scheme;
  {
    std::lock_guard<std::recursive_mutex> lock(impl_->mu);
    if (!impl_->scheme) {
      if (enumerable()) {
        impl_->scheme = ExactScheme::Enumerated;
      } else if (impl_->kind == ElementKind::Permutation &&
                 !impl_->blocks.empty() && is_verified_direct_product()) {
        impl_->scheme = ExactScheme::Product;
      } else if (impl_->kind == ElementKind::MatrixPair && impl_->certified) {
        impl_->scheme = ExactScheme::Product;
      } else if (is_natural_symmetric()) {
        impl_->scheme = ExactScheme::Symmetric;
      } else if (is_natural_alternating()) {
        impl_->scheme = ExactScheme::Alternating;
      } else {
        impl_->scheme = ExactScheme::None;
      }
    }
    scheme = *impl_->scheme;
  }

  std::optional<std::string> exact;
  switch (scheme) {
    case ExactScheme::None:
      break;
    case ExactScheme::Enumerated:
      exact = "c" + std::to_string(class_index_of(x));
      break;
    case ExactScheme::Symmetric:
      exact = "s|" + full_type_str(x.perm());
      break;
    case ExactScheme::Alternating: {
      const Perm& p = x.perm();
      if (!p.is_even())
        throw DomainError("odd permutation offered to an alternating group");
      const auto type = p.full_cycle_type();
      if (!splits_in_alternating(type)) {
        exact = "a|" + full_type_str(p);
      } else {
        const Perm rep = canonical_rep_of_type(type, impl_->degree);
        const char sign = conjugator_between(rep, p).is_even() ? '+' : '-';
        exact = "a|" + full_type_str(p) + "|" + sign;
      }
      break;
    }
    case ExactScheme::Product: {
      std::vector<ClassKey> parts;
      if (impl_->kind == ElementKind::Permutation) {
        const auto& projs = block_projections();
        for (std::size_t b = 0; b < impl_->blocks.size(); ++b)
          parts.push_back(
              projs[b].class_key(Element(x.perm().restricted_to(impl_->blocks[b]))));
      } else {
        parts.push_back(impl_->factors[0].class_key(Element(x.left())));
        parts.push_back(impl_->factors[1].class_key(Element(x.right())));
      }
      bool all_exact = true;
      std::string joined = "p|";
      for (const ClassKey& part : parts) {
        if (!part.has_exact()) {
          all_exact = false;
          break;
        }
        joined += "[" + *part.exact + "]";
      }
      if (all_exact) exact = joined;
      break;
    }
  }
  return ClassKey{std::move(inv), std::move(exact)};
}

TriState Group::are_conjugate(const Element& a, const Element& b,
                              std::size_t budget) const {
  if (a.kind() != impl_->kind || b.kind() != impl_->kind)
    throw DomainError("element kind mismatch");
  // Membership precondition, checked when cheap.
  try {
    if (!contains(a) || !contains(b))
      throw DomainError("are_conjugate: element is not in the group");
  } catch (const BudgetExceeded&) {
    // Membership is not cheaply decidable here; proceed on the caller's word.
  }
  if (a == b) return TriState::pass("identical elements");

  // Tier 1: invariants.
  const std::string ia = invariant_of(impl_->kind, impl_->degree, impl_->blocks, a);
  const std::string ib = invariant_of(impl_->kind, impl_->degree, impl_->blocks, b);
  if (ia != ib)
    return TriState::fail("tier 1: class invariant mismatch (" + ia + " vs " +
                          ib + ")");

  // Tier 2: exact classes via enumeration.
  if (enumerable(budget)) {
    const int ca = class_index_of(a, budget);
    const int cb = class_index_of(b, budget);
    if (ca == cb)
      return TriState::pass("tier 2: same conjugacy class (index " +
                            std::to_string(ca) + ")");
    return TriState::fail("tier 2: distinct conjugacy classes (" +
                          std::to_string(ca) + " vs " + std::to_string(cb) +
                          ")");
  }

  // Tier 3: componentwise in a verified direct product.
  const bool perm_product = impl_->kind == ElementKind::Permutation &&
                            !impl_->blocks.empty() &&
                            is_verified_direct_product();
  const bool pair_product =
      impl_->kind == ElementKind::MatrixPair && impl_->certified;
  if (perm_product || pair_product) {
    std::vector<TriState> verdicts;
    if (perm_product) {
      const auto& projs = block_projections();
      for (std::size_t i = 0; i < impl_->blocks.size(); ++i) {
        verdicts.push_back(projs[i].are_conjugate(
            Element(a.perm().restricted_to(impl_->blocks[i])),
            Element(b.perm().restricted_to(impl_->blocks[i])), budget));
      }
    } else {
      verdicts.push_back(impl_->factors[0].are_conjugate(
          Element(a.left()), Element(b.left()), budget));
      verdicts.push_back(impl_->factors[1].are_conjugate(
          Element(a.right()), Element(b.right()), budget));
    }
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
      if (verdicts[i].is_fail())
        return TriState::fail("tier 3: component " + std::to_string(i + 1) +
                              " not conjugate (" + verdicts[i].reason + ")");
    }
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
      if (verdicts[i].is_undetermined())
        return TriState::undetermined("tier 3: component " +
                                      std::to_string(i + 1) +
                                      " undetermined (" + verdicts[i].reason +
                                      ")");
    }
    return TriState::pass("tier 3: conjugate in every component");
  }

  // Tier 4: natural symmetric / alternating groups.
  if (impl_->kind == ElementKind::Permutation) {
    if (is_natural_symmetric()) {
      // Invariants match, so the cycle types match.
      return TriState::pass("tier 4: equal cycle types in the symmetric group");
    }
    if (is_natural_alternating()) {
      const auto type = a.perm().full_cycle_type();
      if (type != b.perm().full_cycle_type())
        return TriState::fail("tier 4: distinct cycle types");
      if (!splits_in_alternating(type))
        return TriState::pass(
            "tier 4: non-split class in the alternating group");
      const Perm g = conjugator_between(a.perm(), b.perm());
      if (g.is_even())
        return TriState::pass(
            "tier 4: split class, even conjugator found");
      return TriState::fail(
          "tier 4: split class, all conjugators are odd");
    }
  }
  return TriState::undetermined(
      "tier 4: no exact method (group is not enumerable within budget, not a "
      "verified direct product, and not a natural symmetric or alternating "
      "group)");
}

std::set<ClassKey> Group::power_class_set(const Element& x) const {
  std::set<ClassKey> keys;
  const std::uint64_t ord = x.order();
  Element acc = x;
  for (std::uint64_t i = 1; i <= ord; ++i) {
    if (!acc.is_identity()) keys.insert(class_key(acc));
    if (i < ord) acc = acc * x;
  }
  return keys;
}

}  // namespace beauville
