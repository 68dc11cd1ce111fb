// GF(2^m) arithmetic and the 4x4 matrix algebra over it.

#include "beauville/gf.hpp"

#include <algorithm>
#include <sstream>

namespace beauville {
namespace {

int poly_degree(std::uint64_t p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

// Carry-less product of two GF(2)[x] bitmasks.
std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t mod) {
  const int dm = poly_degree(mod);
  int da = poly_degree(a);
  while (da >= dm) {
    a ^= mod << (da - dm);
    da = poly_degree(a);
  }
  return a;
}

}  // namespace

bool gf2_poly_irreducible(std::uint64_t poly) {
  const int d = poly_degree(poly);
  if (d < 1) return false;
  if (d == 1) return true;
  if ((poly & 1) == 0) return false;  // divisible by x
  // Trial division by every polynomial of degree 1 .. d/2.
  for (std::uint64_t f = 2; poly_degree(f) <= d / 2; ++f) {
    if (poly_mod(poly, f) == 0) return false;
  }
  return true;
}

FieldSpec::FieldSpec(std::uint32_t m_, std::uint32_t modulus_)
    : m(m_), modulus(modulus_) {
  if (m < 3 || m > 21 || m % 2 == 0)
    throw DomainError("field degree must be odd and in [3, 21], got " +
                      std::to_string(m));
  if (poly_degree(modulus) != int(m))
    throw DomainError("modulus degree does not match field degree");
  if (!gf2_poly_irreducible(modulus))
    throw DomainError("modulus polynomial is reducible");
}

FieldSpec FieldSpec::standard(std::uint32_t m) {
  switch (m) {
    case 3:
      return FieldSpec(3, 0xb);  // x^3 + x + 1
    case 5:
      return FieldSpec(5, 0x25);  // x^5 + x^2 + 1
    case 7:
      return FieldSpec(7, 0x83);  // x^7 + x + 1
    default: {
      const std::uint64_t lead = std::uint64_t(1) << m;
      for (std::uint64_t c = lead | 1; c < (lead << 1); c += 2) {
        if (gf2_poly_irreducible(c)) return FieldSpec(m, std::uint32_t(c));
      }
      throw DomainError("no irreducible polynomial found");  // unreachable
    }
  }
}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
  return std::uint32_t(poly_mod(poly_mul(a, b), spec_.modulus));
}

std::uint32_t Field::pow(std::uint32_t a, std::int64_t e) const {
  if (a == 0) {
    if (e > 0) return 0;
    if (e == 0) return 1;
    throw DomainError("negative power of zero field element");
  }
  const std::int64_t ord = std::int64_t(q()) - 1;
  e %= ord;
  if (e < 0) e += ord;
  std::uint32_t base = a, r = 1;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw DomainError("inverse of zero field element");
  return pow(a, std::int64_t(q()) - 2);
}

std::uint32_t Field::sqrt(std::uint32_t a) const {
  // Squaring is a bijection, so a^(2^(m-1)) squares back to a.
  std::uint32_t r = a;
  for (std::uint32_t i = 0; i + 1 < spec_.m; ++i) r = mul(r, r);
  return r;
}

std::uint32_t Field::theta(std::uint32_t a) const {
  std::uint32_t r = a;
  for (std::uint32_t i = 0; i < spec_.n() + 1; ++i) r = mul(r, r);
  return r;
}

std::uint64_t Field::mult_order(std::uint32_t a) const {
  if (a == 0) throw DomainError("order of zero field element");
  for (std::uint64_t d : divisors(q() - 1)) {
    if (pow(a, std::int64_t(d)) == 1) return d;
  }
  throw DomainError("element order not found");  // unreachable
}

bool Field::is_generator(std::uint32_t a) const {
  return a != 0 && mult_order(a) == q() - 1;
}

bool Field::in_proper_subfield(std::uint32_t a) const {
  if (a == 0 || a == 1) return true;
  for (std::uint32_t d = 1; d < spec_.m; ++d) {
    if (spec_.m % d != 0) continue;
    // a lies in GF(2^d) iff a^(2^d) == a.
    std::uint32_t r = a;
    for (std::uint32_t i = 0; i < d; ++i) r = mul(r, r);
    if (r == a) return true;
  }
  return false;
}

std::vector<std::uint32_t> Field::elements() const {
  std::vector<std::uint32_t> all(q());
  for (std::uint64_t i = 0; i < q(); ++i) all[i] = std::uint32_t(i);
  return all;
}

std::string hex_mask(std::uint32_t value) {
  std::ostringstream os;
  os << "0x" << std::hex << value;
  return os.str();
}

std::uint32_t parse_hex_mask(const std::string& text) {
  std::string body = text;
  if (body.rfind("0x", 0) == 0 || body.rfind("0X", 0) == 0) body = body.substr(2);
  if (body.empty()) throw ParseError("empty hex mask");
  std::uint64_t v = 0;
  for (char ch : body) {
    int digit;
    if (ch >= '0' && ch <= '9')
      digit = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
      digit = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F')
      digit = ch - 'A' + 10;
    else
      throw ParseError("bad hex digit in mask: " + text);
    v = (v << 4) | std::uint64_t(digit);
    if (v > 0xffffffffULL) throw ParseError("hex mask out of range: " + text);
  }
  return std::uint32_t(v);
}

// ---------------------------------------------------------------------------
// Mat4
// ---------------------------------------------------------------------------

Mat4::Mat4(FieldSpec spec) : spec_(spec) {
  for (int i = 0; i < 4; ++i) set(i, i, 1);
}

Mat4::Mat4(FieldSpec spec, const std::array<std::uint32_t, 16>& entries)
    : spec_(spec), e_(entries) {
  const Field f(spec_);
  for (std::uint32_t v : e_) {
    if (v >= f.q()) throw DomainError("matrix entry outside field");
  }
}

bool Mat4::is_identity() const { return *this == Mat4(spec_); }

Mat4 Mat4::operator*(const Mat4& o) const {
  if (!(spec_ == o.spec_)) throw DomainError("matrix product across fields");
  const Field f(spec_);
  Mat4 r(spec_);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      std::uint32_t s = 0;
      for (int k = 0; k < 4; ++k) s ^= f.mul(at(i, k), o.at(k, j));
      r.set(i, j, s);
    }
  }
  return r;
}

Mat4 Mat4::power(std::int64_t e) const {
  Mat4 base = e < 0 ? inverse() : *this;
  std::uint64_t n = e < 0 ? std::uint64_t(-(e + 1)) + 1 : std::uint64_t(e);
  Mat4 r(spec_);
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

namespace {

// 3x3 determinant of the minor obtained by deleting `row` and `col`
// (characteristic 2: all cofactor signs collapse).
std::uint32_t minor3(const Field& f, const std::array<std::uint32_t, 16>& e,
                     int row, int col) {
  int rs[3], cs[3], ri = 0, ci = 0;
  for (int i = 0; i < 4; ++i)
    if (i != row) rs[ri++] = i;
  for (int j = 0; j < 4; ++j)
    if (j != col) cs[ci++] = j;
  auto a = [&](int i, int j) { return e[4 * rs[i] + cs[j]]; };
  std::uint32_t d = 0;
  d ^= f.mul(a(0, 0), f.mul(a(1, 1), a(2, 2)) ^ f.mul(a(1, 2), a(2, 1)));
  d ^= f.mul(a(0, 1), f.mul(a(1, 0), a(2, 2)) ^ f.mul(a(1, 2), a(2, 0)));
  d ^= f.mul(a(0, 2), f.mul(a(1, 0), a(2, 1)) ^ f.mul(a(1, 1), a(2, 0)));
  return d;
}

}  // namespace

std::uint32_t Mat4::det() const {
  const Field f(spec_);
  std::uint32_t d = 0;
  for (int j = 0; j < 4; ++j) d ^= f.mul(at(0, j), minor3(f, e_, 0, j));
  return d;
}

Mat4 Mat4::inverse() const {
  const Field f(spec_);
  const std::uint32_t d = det();
  if (d == 0) throw DomainError("singular matrix has no inverse");
  const std::uint32_t dinv = f.inv(d);
  Mat4 r(spec_);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      r.set(i, j, f.mul(dinv, minor3(f, e_, j, i)));
  return r;
}

Mat4 Mat4::conjugated_by(const Mat4& g) const { return g.inverse() * *this * g; }

std::uint32_t Mat4::trace() const {
  return at(0, 0) ^ at(1, 1) ^ at(2, 2) ^ at(3, 3);
}

std::array<std::uint32_t, 5> Mat4::char_poly() const {
  const Field f(spec_);
  // Entries of L*I + A are linear polynomials in L; expand the 4x4
  // determinant over GF(2^m)[L] directly (degree stays <= 4).
  using Poly = std::array<std::uint32_t, 5>;
  auto pmul = [&](const Poly& a, const Poly& b) {
    Poly r{};
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j + i < 5; ++j)
        if (a[i] && b[j]) r[i + j] ^= f.mul(a[i], b[j]);
    return r;
  };
  auto padd = [](const Poly& a, const Poly& b) {
    Poly r{};
    for (int i = 0; i < 5; ++i) r[i] = a[i] ^ b[i];
    return r;
  };
  Poly entry[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      entry[i][j] = Poly{at(i, j), std::uint32_t(i == j ? 1 : 0), 0, 0, 0};

  // Permutation expansion of the 4x4 determinant (24 terms, no signs in
  // characteristic 2).
  int cols[4] = {0, 1, 2, 3};
  Poly total{};
  std::sort(cols, cols + 4);
  do {
    Poly term{1, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) term = pmul(term, entry[i][cols[i]]);
    total = padd(total, term);
  } while (std::next_permutation(cols, cols + 4));
  return total;
}

std::uint64_t Mat4::order() const {
  if (det() == 0) throw DomainError("order of a singular matrix");
  const std::uint64_t q = spec_.q();
  const std::uint64_t s = spec_.theta_exponent();
  std::vector<std::uint64_t> candidates;
  for (std::uint64_t base : {std::uint64_t(4), q - 1, q - s + 1, q + s + 1}) {
    for (std::uint64_t d : divisors(base)) candidates.push_back(d);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  for (std::uint64_t d : candidates) {
    if (power(std::int64_t(d)).is_identity()) return d;
  }
  // Not an order arising in the Suzuki family; fall back to iteration.
  Mat4 acc = *this;
  const std::uint64_t budget = 1 << 20;
  for (std::uint64_t k = 1; k <= budget; ++k) {
    if (acc.is_identity()) return k;
    acc = acc * *this;
  }
  throw BudgetExceeded("matrix order exceeds iteration budget");
}

std::vector<std::string> Mat4::to_hex() const {
  std::vector<std::string> out;
  out.reserve(16);
  for (std::uint32_t v : e_) out.push_back(hex_mask(v));
  return out;
}

Mat4 Mat4::from_hex(FieldSpec spec, const std::vector<std::string>& masks) {
  if (masks.size() != 16)
    throw ParseError("matrix needs 16 entries, got " +
                     std::to_string(masks.size()));
  std::array<std::uint32_t, 16> e{};
  for (std::size_t i = 0; i < 16; ++i) e[i] = parse_hex_mask(masks[i]);
  return Mat4(spec, e);
}

std::size_t Mat4::hash() const {
  std::size_t h = 1469598103934665603ULL;
  auto mix = [&h](std::size_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(spec_.m);
  mix(spec_.modulus);
  for (std::uint32_t v : e_) mix(v);
  return h;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace beauville
