// Implementation of the permutation core: composition, cycle algebra,
// canonical printing and strict cycle-notation parsing.
#include "beauville/perm.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace beauville {

Perm::Perm(std::uint32_t degree) : img_(degree) {
  if (degree == 0) throw DomainError("permutation degree must be positive");
  for (std::uint32_t i = 0; i < degree; ++i) img_[i] = i;
}

Perm Perm::from_images(const std::vector<std::uint32_t>& images) {
  const std::uint32_t n = static_cast<std::uint32_t>(images.size());
  if (n == 0) throw DomainError("permutation degree must be positive");
  Perm p(n);
  std::vector<bool> seen(n, false);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t v = images[i];
    if (v < 1 || v > n)
      throw DomainError("image " + std::to_string(v) + " out of range 1.." +
                        std::to_string(n));
    if (seen[v - 1])
      throw DomainError("image " + std::to_string(v) + " repeated");
    seen[v - 1] = true;
    p.img_[i] = v - 1;
  }
  return p;
}

Perm Perm::from_cycles(std::uint32_t degree,
                       const std::vector<std::vector<std::uint32_t>>& cycles) {
  Perm p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (std::uint32_t pt : cyc) {
      if (pt < 1 || pt > degree)
        throw DomainError("point " + std::to_string(pt) + " out of range 1.." +
                          std::to_string(degree));
      if (used[pt - 1])
        throw DomainError("point " + std::to_string(pt) +
                          " appears in more than one cycle");
      used[pt - 1] = true;
    }
    if (cyc.size() < 2) continue;  // 1-cycles and empty cycles are identity
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const std::uint32_t from = cyc[k] - 1;
      const std::uint32_t to = cyc[(k + 1) % cyc.size()] - 1;
      p.img_[from] = to;
    }
  }
  return p;
}

Perm Perm::parse(const std::string& text, std::uint32_t degree) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty permutation string");
  bool saw_any = false;
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(')
      throw ParseError("expected '(' at position " + std::to_string(i) +
                       " in \"" + text + "\"");
    ++i;
    std::vector<std::uint32_t> cyc;
    skip_ws();
    if (i < text.size() && text[i] == ')') {
      // "()" denotes the identity contribution.
      ++i;
      saw_any = true;
      continue;
    }
    while (true) {
      skip_ws();
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw ParseError("expected point number in \"" + text + "\"");
      unsigned long v = std::stoul(text.substr(start, i - start));
      cyc.push_back(static_cast<std::uint32_t>(v));
      skip_ws();
      if (i >= text.size())
        throw ParseError("unbalanced parentheses in \"" + text + "\"");
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == ')') {
        ++i;
        break;
      }
      throw ParseError(std::string("unexpected character '") + text[i] +
                       "' in \"" + text + "\"");
    }
    cycles.push_back(std::move(cyc));
    saw_any = true;
  }
  if (!saw_any) throw ParseError("no cycles found in \"" + text + "\"");
  return from_cycles(degree, cycles);  // re-checks ranges and repetitions
}

std::uint32_t Perm::operator()(std::uint32_t point) const {
  if (point < 1 || point > degree())
    throw DomainError("point " + std::to_string(point) + " out of range 1.." +
                      std::to_string(degree()));
  return img_[point - 1] + 1;
}

bool Perm::is_identity() const {
  for (std::uint32_t i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

bool Perm::operator<(const Perm& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  return img_ < o.img_;
}

Perm Perm::operator*(const Perm& q) const {
  if (degree() != q.degree())
    throw DomainError("cannot compose permutations of degrees " +
                      std::to_string(degree()) + " and " +
                      std::to_string(q.degree()));
  Perm r(degree());
  for (std::uint32_t i = 0; i < degree(); ++i) r.img_[i] = q.img_[img_[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r(degree());
  for (std::uint32_t i = 0; i < degree(); ++i) r.img_[img_[i]] = i;
  return r;
}

Perm Perm::conjugated_by(const Perm& g) const {
  if (degree() != g.degree())
    throw DomainError("conjugation requires equal degrees");
  // x^g maps g(i) to g(x(i)).
  Perm r(degree());
  for (std::uint32_t i = 0; i < degree(); ++i) r.img_[g.img_[i]] = g.img_[img_[i]];
  return r;
}

std::uint64_t Perm::order() const {
  std::uint64_t ord = 1;
  for (std::uint32_t len : full_cycle_type()) ord = lcm_u64(ord, len);
  return ord;
}

Perm Perm::power(std::int64_t e) const {
  const std::uint64_t n = order();
  std::uint64_t k;
  if (e >= 0) {
    k = static_cast<std::uint64_t>(e) % n;
  } else {
    k = n - (static_cast<std::uint64_t>(-e) % n);
    if (k == n) k = 0;
  }
  Perm base = *this;
  Perm acc(degree());
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool Perm::is_even() const {
  std::uint32_t transpositions = 0;
  for (const auto& c : cycles())
    transpositions += static_cast<std::uint32_t>(c.size()) - 1;
  return transpositions % 2 == 0;
}

std::vector<std::vector<std::uint32_t>> Perm::cycles() const {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> seen(degree(), false);
  for (std::uint32_t i = 0; i < degree(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    std::vector<std::uint32_t> cyc;
    std::uint32_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      cyc.push_back(j + 1);
      j = img_[j];
    }
    out.push_back(std::move(cyc));
  }
  // Scanning from the least point upward already yields cycles sorted by
  // least moved point, each starting at its least element.
  return out;
}

std::vector<std::uint32_t> Perm::cycle_type() const {
  std::vector<std::uint32_t> t;
  for (const auto& c : cycles()) t.push_back(static_cast<std::uint32_t>(c.size()));
  std::sort(t.rbegin(), t.rend());
  return t;
}

std::vector<std::uint32_t> Perm::full_cycle_type() const {
  std::vector<std::uint32_t> t = cycle_type();
  std::uint32_t moved = 0;
  for (std::uint32_t len : t) moved += len;
  for (std::uint32_t i = moved; i < degree(); ++i) t.push_back(1);
  return t;
}

std::string Perm::str() const {
  const auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cs) {
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k > 0) os << ',';
      os << c[k];
    }
    os << ')';
  }
  return os.str();
}

Perm Perm::shifted(std::uint32_t offset, std::uint32_t new_degree) const {
  if (new_degree < degree() + offset)
    throw DomainError("shifted permutation does not fit in the new degree");
  Perm r(new_degree);
  for (std::uint32_t i = 0; i < degree(); ++i) r.img_[i + offset] = img_[i] + offset;
  return r;
}

Perm Perm::restricted_to(const std::vector<std::uint32_t>& block) const {
  if (!preserves(block))
    throw DomainError("permutation does not preserve the block");
  const std::uint32_t m = static_cast<std::uint32_t>(block.size());
  std::vector<std::uint32_t> pos(degree() + 1, 0);  // 1-based point -> 1-based slot
  for (std::uint32_t k = 0; k < m; ++k) pos[block[k]] = k + 1;
  std::vector<std::uint32_t> images(m);
  for (std::uint32_t k = 0; k < m; ++k) images[k] = pos[img_[block[k] - 1] + 1];
  return from_images(images);
}

bool Perm::preserves(const std::vector<std::uint32_t>& block) const {
  std::vector<bool> in(degree() + 1, false);
  for (std::uint32_t pt : block) {
    if (pt < 1 || pt > degree()) return false;
    in[pt] = true;
  }
  for (std::uint32_t pt : block)
    if (!in[img_[pt - 1] + 1]) return false;
  return true;
}

std::size_t Perm::hash() const {
  // FNV-1a over the image table.
  std::size_t h = 1469598103934665603ull;
  for (std::uint32_t v : img_) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

Perm ascending_cycle(std::uint32_t degree, std::uint32_t a, std::uint32_t b) {
  if (a > b) throw DomainError("ascending_cycle requires a <= b");
  std::vector<std::uint32_t> cyc;
  for (std::uint32_t v = a; v <= b; ++v) cyc.push_back(v);
  return Perm::from_cycles(degree, {cyc});
}

Perm descending_cycle(std::uint32_t degree, std::uint32_t a, std::uint32_t b) {
  if (a > b) throw DomainError("descending_cycle requires a <= b");
  std::vector<std::uint32_t> cyc;
  for (std::uint32_t v = b; v >= a; --v) {
    cyc.push_back(v);
    if (v == a) break;  // avoid unsigned wrap when a == 1
  }
  return Perm::from_cycles(degree, {cyc});
}

Perm transpositions(std::uint32_t degree,
                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& swaps) {
  std::vector<std::vector<std::uint32_t>> cycles;
  for (const auto& [a, b] : swaps) cycles.push_back({a, b});
  return Perm::from_cycles(degree, cycles);
}

}  // namespace beauville
