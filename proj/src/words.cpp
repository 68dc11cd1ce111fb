#include "beauville/words.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <utility>

namespace beauville {

// ---------------------------------------------------------------------------
// WordExpr: factories, accessors, structural equality, printing.
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void wrong_node(const char* what) {
  throw DomainError(std::string("word node has no ") + what);
}

}  // namespace

WordPtr WordExpr::atom(std::string name) {
  auto* e = new WordExpr();
  e->kind_ = Kind::Atom;
  e->name_ = std::move(name);
  return WordPtr(e);
}

WordPtr WordExpr::product(WordPtr lhs, WordPtr rhs) {
  auto* e = new WordExpr();
  e->kind_ = Kind::Product;
  e->lhs_ = std::move(lhs);
  e->rhs_ = std::move(rhs);
  return WordPtr(e);
}

WordPtr WordExpr::power(WordPtr base, std::int64_t exponent) {
  auto* e = new WordExpr();
  e->kind_ = Kind::Power;
  e->lhs_ = std::move(base);
  e->exponent_ = exponent;
  return WordPtr(e);
}

WordPtr WordExpr::commutator(WordPtr lhs, WordPtr rhs) {
  auto* e = new WordExpr();
  e->kind_ = Kind::Commutator;
  e->lhs_ = std::move(lhs);
  e->rhs_ = std::move(rhs);
  return WordPtr(e);
}

WordPtr WordExpr::conjugation(WordPtr lhs, WordPtr rhs) {
  auto* e = new WordExpr();
  e->kind_ = Kind::Conjugation;
  e->lhs_ = std::move(lhs);
  e->rhs_ = std::move(rhs);
  return WordPtr(e);
}

const std::string& WordExpr::name() const {
  if (kind_ != Kind::Atom) wrong_node("atom name");
  return name_;
}

const WordPtr& WordExpr::lhs() const {
  if (kind_ == Kind::Atom || kind_ == Kind::Power) wrong_node("left operand");
  return lhs_;
}

const WordPtr& WordExpr::rhs() const {
  if (kind_ == Kind::Atom || kind_ == Kind::Power) wrong_node("right operand");
  return rhs_;
}

const WordPtr& WordExpr::base() const {
  if (kind_ != Kind::Power) wrong_node("power base");
  return lhs_;
}

std::int64_t WordExpr::exponent() const {
  if (kind_ != Kind::Power) wrong_node("exponent");
  return exponent_;
}

bool WordExpr::equals(const WordExpr& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Atom:
      return name_ == o.name_;
    case Kind::Power:
      return exponent_ == o.exponent_ && lhs_->equals(*o.lhs_);
    default:
      return lhs_->equals(*o.lhs_) && rhs_->equals(*o.rhs_);
  }
}

std::string WordExpr::str() const {
  // A product operand needs parentheses wherever adjacency or `^` would
  // regroup it; every other node form is self-delimiting.
  const auto wrap = [](const WordPtr& e) {
    const std::string s = e->str();
    return e->kind() == Kind::Product ? "(" + s + ")" : s;
  };
  switch (kind_) {
    case Kind::Atom:
      return name_;
    case Kind::Product:
      // The parser left-associates runs of factors, so only a right child
      // that is itself a product needs to keep its grouping.
      return lhs_->str() + wrap(rhs_);
    case Kind::Power:
      return wrap(lhs_) + "^" + std::to_string(exponent_);
    case Kind::Conjugation:
      return wrap(lhs_) + "^" +
             (rhs_->kind() == Kind::Atom ? rhs_->str() : "(" + rhs_->str() + ")");
    case Kind::Commutator:
      return "[" + lhs_->str() + "," + rhs_->str() + "]";
  }
  wrong_node("kind");
}

// ---------------------------------------------------------------------------
// Parser: recursive descent with 1-based positions in errors.
// ---------------------------------------------------------------------------

namespace {

class WordParser {
 public:
  explicit WordParser(const std::string& text) : s_(text) {}

  WordPtr run() {
    WordPtr w = parse_word_expr();
    skip_ws();
    if (i_ != s_.size()) fail("unexpected input");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("word: " + what + " at position " + std::to_string(i_ + 1));
  }

  unsigned char at(std::size_t k) const {
    return static_cast<unsigned char>(s_[k]);
  }

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(at(i_))) ++i_;
  }

  bool starts_primary() {
    skip_ws();
    if (i_ >= s_.size()) return false;
    return std::isalpha(at(i_)) || s_[i_] == '(' || s_[i_] == '[';
  }

  void expect(char ch) {
    skip_ws();
    if (i_ >= s_.size() || s_[i_] != ch)
      fail(std::string("expected '") + ch + "'");
    ++i_;
  }

  WordPtr parse_word_expr() {
    if (!starts_primary()) fail("expected an atom, '(' or '['");
    WordPtr acc = parse_factor();
    while (starts_primary()) acc = WordExpr::product(std::move(acc), parse_factor());
    return acc;
  }

  // primary followed by any chain of ^exponent / ^conjugator postfixes.
  WordPtr parse_factor() {
    WordPtr e = parse_primary();
    for (;;) {
      skip_ws();
      if (i_ >= s_.size() || s_[i_] != '^') return e;
      ++i_;
      skip_ws();
      if (i_ >= s_.size()) fail("expected an exponent after '^'");
      const char ch = s_[i_];
      if (ch == '-' || std::isdigit(at(i_))) {
        e = WordExpr::power(std::move(e), parse_int());
      } else if (std::isalpha(at(i_))) {
        e = WordExpr::conjugation(std::move(e), parse_atom());
      } else if (ch == '(') {
        ++i_;
        WordPtr v = parse_word_expr();
        expect(')');
        e = WordExpr::conjugation(std::move(e), std::move(v));
      } else {
        fail("expected an integer, an atom or '(' after '^'");
      }
    }
  }

  WordPtr parse_primary() {
    skip_ws();
    if (i_ >= s_.size()) fail("expected an atom, '(' or '['");
    const char ch = s_[i_];
    if (std::isalpha(at(i_))) return parse_atom();
    if (ch == '(') {
      ++i_;
      WordPtr w = parse_word_expr();
      expect(')');
      return w;
    }
    if (ch == '[') {
      ++i_;
      WordPtr u = parse_word_expr();
      expect(',');
      WordPtr v = parse_word_expr();
      expect(']');
      return WordExpr::commutator(std::move(u), std::move(v));
    }
    fail("expected an atom, '(' or '['");
  }

  // One letter plus any run of digits: "t1t2" is two atoms.
  WordPtr parse_atom() {
    std::string name(1, s_[i_++]);
    while (i_ < s_.size() && std::isdigit(at(i_))) name += s_[i_++];
    return WordExpr::atom(std::move(name));
  }

  std::int64_t parse_int() {
    bool negative = false;
    if (s_[i_] == '-') {
      negative = true;
      ++i_;
    }
    if (i_ >= s_.size() || !std::isdigit(at(i_)))
      fail("expected digits in the exponent");
    std::int64_t value = 0;
    while (i_ < s_.size() && std::isdigit(at(i_))) {
      value = value * 10 + (s_[i_] - '0');
      if (value > (std::int64_t(1) << 32)) fail("exponent out of range");
      ++i_;
    }
    return negative ? -value : value;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

WordPtr parse_word(const std::string& text) { return WordParser(text).run(); }

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

Element evaluate_word(const WordExpr& e, const WordEnv& env) {
  switch (e.kind()) {
    case WordExpr::Kind::Atom: {
      const auto it = env.find(e.name());
      if (it == env.end())
        throw DomainError("unbound atom '" + e.name() + "' in word");
      return it->second;
    }
    case WordExpr::Kind::Product:
      return evaluate_word(*e.lhs(), env) * evaluate_word(*e.rhs(), env);
    case WordExpr::Kind::Power:
      return evaluate_word(*e.base(), env).power(e.exponent());
    case WordExpr::Kind::Commutator: {
      const Element u = evaluate_word(*e.lhs(), env);
      const Element v = evaluate_word(*e.rhs(), env);
      return u.inverse() * v.inverse() * u * v;
    }
    case WordExpr::Kind::Conjugation: {
      const Element u = evaluate_word(*e.lhs(), env);
      const Element v = evaluate_word(*e.rhs(), env);
      return u.conjugated_by(v);
    }
  }
  throw DomainError("word node has no kind");
}

Element evaluate_word(const std::string& text, const WordEnv& env) {
  return evaluate_word(*parse_word(text), env);
}

// ---------------------------------------------------------------------------
// Generator files.
// ---------------------------------------------------------------------------

namespace {

std::string trimmed(const std::string& line) {
  std::size_t b = 0, e = line.size();
  while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
  return line.substr(b, e - b);
}

/// Largest integer appearing anywhere in a cycle-notation line; 0 when the
/// line moves nothing ("()").
std::uint32_t max_point_mentioned(const std::string& text) {
  std::uint64_t best = 0;
  std::uint64_t cur = 0;
  bool in_number = false;
  for (const char ch : text) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      cur = cur * 10 + std::uint64_t(ch - '0');
      if (cur > 0xffffffffull) throw ParseError("generator file: point " +
                                                std::to_string(cur) +
                                                " out of range");
      in_number = true;
    } else {
      if (in_number) best = std::max(best, cur);
      cur = 0;
      in_number = false;
    }
  }
  if (in_number) best = std::max(best, cur);
  return static_cast<std::uint32_t>(best);
}

struct RawPerm {
  std::string text;
  std::size_t lineno = 0;
  bool cycle_form = false;
  std::vector<std::uint32_t> images;  // image-list form only
};

}  // namespace

std::pair<Perm, Perm> load_generators(std::istream& in) {
  std::optional<std::uint32_t> declared;
  std::vector<RawPerm> raws;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    if (raws.empty() && !declared && t.rfind("degree", 0) == 0) {
      std::istringstream header(t.substr(6));
      long long n = 0;
      if (!(header >> n) || n < 1 || n > 0x7fffffff)
        throw ParseError("generator file line " + std::to_string(lineno) +
                         ": malformed degree header");
      std::string extra;
      if (header >> extra)
        throw ParseError("generator file line " + std::to_string(lineno) +
                         ": malformed degree header");
      declared = static_cast<std::uint32_t>(n);
      continue;
    }
    RawPerm raw;
    raw.text = t;
    raw.lineno = lineno;
    raw.cycle_form = t[0] == '(';
    if (!raw.cycle_form) {
      std::istringstream fields(t);
      std::string tok;
      while (fields >> tok) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
          v = std::stoul(tok, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != tok.size() || v < 1 || v > 0xfffffffful)
          throw ParseError("generator file line " + std::to_string(lineno) +
                           ": malformed image-list entry '" + tok + "'");
        raw.images.push_back(static_cast<std::uint32_t>(v));
      }
    }
    raws.push_back(std::move(raw));
  }
  if (raws.size() != 2)
    throw ParseError("generator file: expected exactly two permutations, found " +
                     std::to_string(raws.size()));

  // Settle the common degree before parsing anything.
  std::uint32_t degree = declared.value_or(0);
  for (const RawPerm& raw : raws) {
    if (raw.cycle_form) {
      const std::uint32_t needed = max_point_mentioned(raw.text);
      if (declared && needed > *declared)
        throw ParseError("generator file line " + std::to_string(raw.lineno) +
                         ": point " + std::to_string(needed) +
                         " conflicts with declared degree " +
                         std::to_string(*declared));
      degree = std::max(degree, needed);
    } else {
      const auto n = static_cast<std::uint32_t>(raw.images.size());
      if (declared && n != *declared)
        throw ParseError("generator file line " + std::to_string(raw.lineno) +
                         ": image list of length " + std::to_string(n) +
                         " conflicts with declared degree " +
                         std::to_string(*declared));
      degree = std::max(degree, n);
    }
  }
  if (degree == 0) degree = 1;  // both lines are "()"
  for (const RawPerm& raw : raws) {
    if (!raw.cycle_form && raw.images.size() != degree)
      throw ParseError("generator file line " + std::to_string(raw.lineno) +
                       ": image list of length " +
                       std::to_string(raw.images.size()) +
                       " conflicts with degree " + std::to_string(degree));
  }

  std::vector<Perm> out;
  for (const RawPerm& raw : raws) {
    try {
      out.push_back(raw.cycle_form ? Perm::parse(raw.text, degree)
                                   : Perm::from_images(raw.images));
    } catch (const Error& e) {
      throw ParseError("generator file line " + std::to_string(raw.lineno) +
                       ": " + e.what());
    }
  }
  return {std::move(out[0]), std::move(out[1])};
}

std::pair<Perm, Perm> load_generators_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open generator file: " + path);
  return load_generators(in);
}

// ---------------------------------------------------------------------------
// The sporadic table.
// ---------------------------------------------------------------------------

const std::vector<SporadicRow>& sporadic_rows() {
  static const std::vector<SporadicRow> rows = {
      {.name = "M12:2",
       .t1 = "c",
       .t2 = "(cd)^6",
       .x1 = "t1t2",
       .x2 = "t1t2^d",
       .u1 = "[c,(dc)^2d^2]^3",
       .u2 = "(dc)^2d[c,(dc)^2d]^2",
       .j1 = 1,
       .j2 = 1,
       .expected_type = {{4, 4, 5}, {6, 6, 3}},
       .group_order = mpz_class(190080)},
      {.name = "M22:2",
       .t1 = "((cd)^2d)^5",
       .t2 = "d^2",
       .x1 = "t1t2",
       .x2 = "t1t2^c",
       .u1 = "cd^2cd[t1,cd^2cd]^5",
       .u2 = "[t1,c]^2",
       .j1 = 5,
       .j2 = 9,
       .expected_type = {{12, 12, 4}, {10, 10, 5}},
       .group_order = mpz_class(887040)},
      {.name = "J2:2",
       .t1 = "c",
       .t2 = "(cd^2(cd)^2)^6",
       .x1 = "t1t2",
       .x2 = "t1t2^(d^4)",
       .u1 = "d[c,d]^3",
       .u2 = "d[c,d]^3",
       .j1 = 1,
       .j2 = 9,
       .expected_type = {{24, 24, 15}, {14, 14, 7}},
       .group_order = mpz_class(1209600)},
      {.name = "HS:2",
       .t1 = "c",
       .t2 = "((cd)^3cd^2)^5",
       .x1 = "t1t2",
       .x2 = "t1t2^d",
       .u1 = "d[c,d]",
       .u2 = "d[c,d]",
       .j1 = 1,
       .j2 = 1,
       .expected_type = {{8, 8, 8}, {6, 6, 15}},
       .group_order = mpz_class(88704000)},
      {.name = "J3:2",
       .t1 = "c",
       .t2 = "(cd)^12",
       .x1 = "t1t2",
       .x2 = "t1t2^d",
       .u1 = "d[c,d]^4",
       .u2 = "d[c,d]^4",
       .j1 = 21,
       .j2 = 1,
       .expected_type = {{34, 34, 17}, {24, 24, 4}},
       .group_order = mpz_class(100465920)},
      {.name = "McL:2",
       .t1 = "c",
       .t2 = "((cd)^2(cd^2)^2(cd)^2d)^2",
       .x1 = "t1t2",
       .x2 = "t1t2^((dcd)^2)",
       .u1 = "d^2[c,d^2]^7",
       .u2 = "dcd[c,dcd]^7",
       .j1 = 1,
       .j2 = 7,
       .expected_type = {{8, 8, 3}, {10, 10, 5}},
       .group_order = mpz_class(1796256000)},
      {.name = "He:2",
       .t1 = "c",
       .t2 = "d^3",
       .x1 = "t1t2",
       .x2 = "t1t2^(cd(cd^2)^2c)",
       .u1 = "d[c,d]^7",
       .u2 = "d[c,d]^7",
       .j1 = 15,
       .j2 = 19,
       .expected_type = {{16, 16, 7}, {30, 30, 5}},
       .group_order = mpz_class(8060774400)},
      {.name = "Suz:2",
       .t1 = "c",
       .t2 = "(cd)^14",
       .x1 = "t1t2",
       .x2 = "t1t2^((dc)^2(d^2c)^2d^2)",
       .u1 = "d[c,d]^3",
       .u2 = "d[c,d]^3",
       .j1 = 9,
       .j2 = 3,
       .expected_type = {{10, 10, 3}, {8, 8, 13}},
       .group_order = mpz_class(896690995200)},
      {.name = "O'N:2",
       .t1 = "c",
       .t2 = "d^2",
       .x1 = "t1t2",
       .x2 = "t1t2^(cd)",
       .u1 = "[c,d]^5",
       .u2 = "[c,d]^5",
       .j1 = 7,
       .j2 = 1,
       .expected_type = {{38, 38, 19}, {56, 56, 28}},
       .group_order = mpz_class(921631011840)},
      {.name = "Fi22:2",
       .t1 = "(cd^4)^10",
       .t2 = "(cd^3)^15",
       .x1 = "t1t2^(dcd^6)",
       .x2 = "t1t2^(dcd)",
       .u1 = "[t1,d^3]^3",
       .u2 = "[t1,d]^3",
       .j1 = 3,
       .j2 = 1,
       .expected_type = {{10, 10, 11}, {12, 12, 4}},
       .group_order = mpz_class(129123503308800)},
      // The published u1 brackets "cd^2" without a comma; both readings are
      // carried and evaluation adjudicates (see HnU1Reading).
      {.name = "HN:2",
       .t1 = "c",
       .t2 = "(cd^3(cd)^2)^12",
       .x1 = "t1t2^((dcd)^2d^2)",
       .x2 = "t1t2^(dcd^4cd^2)",
       .u1 = "d^2[c,d^2]^10",
       .u2 = "d[c,d]^4",
       .u1_alt = "d^2(cd^2)^10",
       .j1 = 1,
       .j2 = 39,
       .expected_type = {{18, 18, 25}, {44, 44, 22}},
       .group_order = mpz_class(546061824000000)},
      // The t2 exponent is printed in a form that could be "^3 3"; it is
      // read here as 33 and the verifier adjudicates the outcome.
      {.name = "Fi24",
       .t1 = "d^4",
       .t2 = "((cd)^2d^3)^33",
       .x1 = "t1t2^(d^4c)",
       .x2 = "t1t2^(dcd^2c)",
       .u1 = "c[t1,c]",
       .u2 = "c[t1,c]",
       .j1 = 7,
       .j2 = 25,
       .expected_type = {{66, 66, 33}, {84, 84, 26}},
       .group_order = mpz_class("2510411418381323442585600")},
  };
  return rows;
}

namespace {

std::string normalized_group_name(const std::string& name) {
  std::string out;
  for (const char ch : name) {
    if (ch == '\'' || std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '.') {
      out += ':';
      continue;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

}  // namespace

const SporadicRow* find_sporadic_row(const std::string& name) {
  const std::string key = normalized_group_name(name);
  for (const SporadicRow& row : sporadic_rows())
    if (normalized_group_name(row.name) == key) return &row;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Row evaluation.
// ---------------------------------------------------------------------------

namespace {

void note_verdict(SporadicResult& r, const std::string& what,
                  const TriState& t) {
  if (t.is_pass()) return;
  std::string line = what + ": " + to_string(t.verdict);
  if (!t.reason.empty()) line += " (" + t.reason + ")";
  r.discrepancies.push_back(std::move(line));
}

bool commute(const Element& a, const Element& b) { return a * b == b * a; }

std::array<std::uint64_t, 3> triple_of(const Element& x, const Element& y) {
  return {x.order(), y.order(), (x * y).order()};
}

}  // namespace

SporadicResult evaluate_sporadic_row(const SporadicRow& row, const Perm& c,
                                     const Perm& d,
                                     const SporadicOptions& options) {
  if (c.degree() != d.degree())
    throw DomainError("standard generators must share a degree");
  const Group g = Group::permutation(c.degree(), {c, d});

  WordEnv env;
  env.emplace("c", Element(c));
  env.emplace("d", Element(d));
  const Element t1 = evaluate_word(row.t1, env);
  const Element t2 = evaluate_word(row.t2, env);
  env.emplace("t1", t1);
  env.emplace("t2", t2);

  // Resolve the reading of an ambiguous u1: a forced option wins; otherwise
  // the primary reading is kept unless only the alternative centralises t1
  // and reproduces the expected first triple.
  SporadicRow used = row;
  std::optional<HnU1Reading> reading;
  if (!row.u1_alt.empty()) {
    const Element x1_probe = evaluate_word(row.x1, env);
    const auto acceptable = [&](const std::string& word, bool* type_match) {
      const Element u = evaluate_word(word, env);
      if (!commute(u, t1)) return false;
      const Element y1_probe =
          x1_probe.power(std::int64_t(row.j1)).conjugated_by(u);
      const auto triple = triple_of(x1_probe, y1_probe);
      *type_match = triple == row.expected_type.first;
      return true;
    };
    std::vector<HnU1Reading> candidates;
    if (options.hn_u1) {
      candidates = {*options.hn_u1};
    } else {
      candidates = {HnU1Reading::Commutator, HnU1Reading::Grouping};
    }
    std::optional<HnU1Reading> centralising;
    for (const HnU1Reading r : candidates) {
      bool type_match = false;
      const std::string& word =
          r == HnU1Reading::Commutator ? row.u1 : row.u1_alt;
      if (!acceptable(word, &type_match)) continue;
      if (!centralising) centralising = r;
      if (type_match) {
        reading = r;
        break;
      }
    }
    if (!reading) reading = centralising;
    if (!reading) reading = candidates.front();
    used.u1 = *reading == HnU1Reading::Commutator ? row.u1 : row.u1_alt;
  } else if (options.hn_u1) {
    throw DomainError("row " + row.name + " has only one reading of u1");
  }

  const Element u1 = evaluate_word(used.u1, env);
  const Element u2 = evaluate_word(used.u2, env);
  if (!commute(u1, t1))
    throw DomainError("u1 does not centralise t1 in row " + row.name);
  if (!commute(u2, t1))
    throw DomainError("u2 does not centralise t1 in row " + row.name);

  const Element x1 = evaluate_word(row.x1, env);
  const Element x2 = evaluate_word(row.x2, env);
  const Element y1 = x1.power(std::int64_t(row.j1)).conjugated_by(u1);
  const Element y2 = x2.power(std::int64_t(row.j2)).conjugated_by(u2);

  SporadicResult res{used,
                     BeauvilleStructure{g, x1, y1, x2, y2},
                     StronglyRealWitness::overgroup(g, t1),
                     StructureReport{},
                     RealityReport{},
                     row.expected_type,
                     {},
                     {},
                     reading};

  const auto certify = [&res](const std::string& what, bool ok,
                              const std::string& why_fail) {
    res.certificates.emplace_back(
        what, ok ? TriState::pass() : TriState::fail(why_fail));
  };

  const mpz_class actual_order = g.order();
  certify("group order matches row metadata", actual_order == row.group_order,
          "stabilizer-chain order " + actual_order.get_str() +
              ", row metadata " + row.group_order.get_str());
  certify("t1 is an involution", t1.order() == 2,
          "o(t1) = " + std::to_string(t1.order()));
  certify("t2 is an involution", t2.order() == 2,
          "o(t2) = " + std::to_string(t2.order()));
  certify("u1 centralises t1", true, "");
  certify("u2 centralises t1", true, "");

  res.structure_report = verify_structure(res.structure, options.budget);
  try {
    res.reality_report =
        verify_strongly_real(res.structure, res.witness, options.budget);
  } catch (const DomainError& e) {
    res.reality_report = RealityReport{};
    res.reality_report.witness_valid = TriState::fail(e.what());
    res.reality_report.overall = TriState::fail(e.what());
  }

  const StructureType computed = res.structure.type();
  certify("computed type equals expected type", computed == row.expected_type,
          "computed " + computed.str() + ", expected " +
              row.expected_type.str());

  note_verdict(res, "generation of <x1,y1>", res.structure_report.generation1);
  note_verdict(res, "generation of <x2,y2>", res.structure_report.generation2);
  note_verdict(res, "power-class intersection", res.structure_report.dagger);
  note_verdict(res, "witness admissible", res.reality_report.witness_valid);
  static const char* const kEq[] = {"inversion of x1", "inversion of y1",
                                    "inversion of x2", "inversion of y2"};
  for (int i = 0; i < 4; ++i)
    note_verdict(res, kEq[i], res.reality_report.equations[std::size_t(i)]);
  for (const auto& cert : res.certificates)
    note_verdict(res, cert.first, cert.second);
  return res;
}

SporadicResult sporadic_structure(const std::string& group_name, const Perm& c,
                                  const Perm& d,
                                  const SporadicOptions& options) {
  const SporadicRow* row = find_sporadic_row(group_name);
  if (row == nullptr)
    throw DomainError("no sporadic row is named '" + group_name + "'");
  return evaluate_sporadic_row(*row, c, d, options);
}

}  // namespace beauville
