#pragma once
// Finite field arithmetic GF(p^k): explicit modulus construction, element ops,
// univariate polynomials, seeded factorization, embeddings into extensions.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdual {

// Deterministic pseudo-random stream (splitmix64). The only entropy source in
// the library; every randomized routine takes one of these or a seed.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, n), n >= 1
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t lim = ~uint64_t(0) - (~uint64_t(0) % n);
    uint64_t v;
    do { v = next(); } while (v >= lim);
    return v % n;
  }
};

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  Rng r(a ^ (b * 0x9e3779b97f4a7c15ull) ^ 0x5851f42d4c957f2dull);
  return r.next();
}

namespace gf {

struct FieldError : std::runtime_error {
  explicit FieldError(const std::string& m) : std::runtime_error(m) {}
};

// dense univariate over GF(p), little-endian: c[0] + c[1] t + ...
using PVec = std::vector<uint16_t>;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Element of a Field. For tabled fields `s` holds log(a)+1 (0 means the zero
// element) w.r.t. the field's chosen multiplicative generator; `v` is unused.
// For generic fields `v` holds the reduced coordinate vector, size k.
struct Fq {
  uint32_t s = 0;
  PVec v;
  bool operator==(const Fq& o) const { return s == o.s && v == o.v; }
  bool operator!=(const Fq& o) const { return !(*this == o); }
};

// Raw table view for hot loops (valid while the owning Field lives).
struct Tables {
  uint32_t order = 0;            // Q - 1
  const uint32_t* zech = nullptr; // size order; zech[d] = log(1 + g^d), or NONE
  uint32_t none = 0xFFFFFFFFu;   // sentinel: 1 + g^d == 0
  uint32_t negs = 0;             // log of -1 (0 in char 2)
};

namespace tab {
inline uint32_t mul(const Tables& T, uint32_t a, uint32_t b) {
  if (!a || !b) return 0;
  uint32_t s = a - 1 + b - 1;
  if (s >= T.order) s -= T.order;
  return s + 1;
}
inline uint32_t add(const Tables& T, uint32_t a, uint32_t b) {
  if (!a) return b;
  if (!b) return a;
  uint32_t la = a - 1, lb = b - 1;
  uint32_t d = lb >= la ? lb - la : lb + T.order - la;
  uint32_t z = T.zech[d];
  if (z == T.none) return 0;
  uint32_t s = la + z;
  if (s >= T.order) s -= T.order;
  return s + 1;
}
inline uint32_t neg(const Tables& T, uint32_t a) {
  if (!a || T.negs == 0) return a;
  uint32_t s = a - 1 + T.negs;
  if (s >= T.order) s -= T.order;
  return s + 1;
}
inline uint32_t sub(const Tables& T, uint32_t a, uint32_t b) { return add(T, a, neg(T, b)); }
inline uint32_t inv(const Tables& T, uint32_t a) {
  uint32_t la = a - 1;
  return (la == 0 ? 0 : T.order - la) + 1;
}
} // namespace tab

// GF(p^k) with an explicit monic irreducible modulus over GF(p).
// Orders up to kTableLimit get full exp/log/Zech tables; larger fields use
// dense coordinate arithmetic.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static constexpr uint64_t kTableLimit = 1u << 20;

  // Seeded deterministic construction: same (p, k, seed) gives the same
  // modulus and generator. Throws FieldError for invalid p or k.
  static FieldPtr make(uint32_t p, uint32_t k, uint64_t seed);
  static FieldPtr make_with_modulus(uint32_t p, const PVec& modulus, uint64_t seed);

  uint32_t p() const { return p_; }
  uint32_t k() const { return k_; }
  bool tabled() const { return tabled_; }
  // p^k as uint64 (throws if it does not fit)
  uint64_t order_u64() const;
  bool order_fits_u64() const;
  const PVec& modulus() const { return modulus_; }
  uint64_t seed() const { return seed_; }
  Tables tables() const; // only for tabled fields

  Fq zero() const { return Fq{}; }
  Fq one() const;
  Fq gen() const;                    // class of t (root of the modulus)
  Fq from_int(uint64_t n) const;     // n mod p in the prime subfield
  Fq from_coords(const PVec& c) const;
  PVec coords(const Fq& a) const;    // little-endian, size k
  bool is_zero(const Fq& a) const { return a.s == 0 && a.v.empty(); }

  Fq add(const Fq& a, const Fq& b) const;
  Fq sub(const Fq& a, const Fq& b) const;
  Fq neg(const Fq& a) const;
  Fq mul(const Fq& a, const Fq& b) const;
  Fq inv(const Fq& a) const;         // throws on zero
  Fq div(const Fq& a, const Fq& b) const { return mul(a, inv(b)); }
  Fq pow_u64(const Fq& a, uint64_t e) const;
  Fq frobenius(const Fq& a) const;   // a^p
  Fq pth_root(const Fq& a) const;    // unique b with b^p = a
  Fq sample(Rng& rng) const;         // uniform over the field

  std::string to_string(const Fq& a) const;

 private:
  Field() = default;
  void build_tables(uint64_t gen_seed);
  Fq generic_mul(const Fq& a, const Fq& b) const;

  uint32_t p_ = 0, k_ = 0;
  uint64_t seed_ = 0;
  PVec modulus_;
  bool tabled_ = false;
  uint64_t q_ = 0;    // p^k when it fits, else 0
  // tabled data
  std::vector<uint32_t> exp_;  // size Q-1, packed coords of g^i
  std::vector<uint32_t> log_;  // size Q, log of packed value (log_[0] unused)
  std::vector<uint32_t> zech_; // size Q-1
  uint32_t neg_shift_ = 0;     // log(-1), 0 in char 2
  // generic data: Frobenius matrix, built lazily
  mutable std::vector<PVec> frob_cols_;
  friend struct FieldInternals;
};

// Univariate polynomial over a Field, little-endian coefficients, trimmed.
struct UniPoly {
  FieldPtr F;
  std::vector<Fq> c;

  UniPoly() = default;
  explicit UniPoly(FieldPtr f) : F(std::move(f)) {}
  UniPoly(FieldPtr f, std::vector<Fq> cc) : F(std::move(f)), c(std::move(cc)) { trim(); }

  void trim();
  bool is_zero() const { return c.empty(); }
  int deg() const { return int(c.size()) - 1; } // deg(0) = -1
  Fq lc() const { return c.empty() ? Fq{} : c.back(); }
  Fq coeff(size_t i) const { return i < c.size() ? c[i] : Fq{}; }
  bool operator==(const UniPoly& o) const { return c == o.c; }

  static UniPoly xpow(FieldPtr F, size_t n); // monomial t^n
  static UniPoly constant(FieldPtr F, const Fq& a);
};

UniPoly upoly_add(const UniPoly& a, const UniPoly& b);
UniPoly upoly_sub(const UniPoly& a, const UniPoly& b);
UniPoly upoly_mul(const UniPoly& a, const UniPoly& b);
UniPoly upoly_scale(const UniPoly& a, const Fq& s);
// division with remainder; divisor must be nonzero
void upoly_divrem(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);
UniPoly upoly_rem(const UniPoly& a, const UniPoly& b);
UniPoly upoly_quo(const UniPoly& a, const UniPoly& b);
UniPoly upoly_monic(const UniPoly& a);
UniPoly upoly_gcd(UniPoly a, UniPoly b); // monic gcd
// inverse of a modulo m (deg m >= 1); throws FieldError when gcd(a, m) != 1
UniPoly upoly_invmod(const UniPoly& a, const UniPoly& m);
UniPoly upoly_derivative(const UniPoly& a);
Fq upoly_eval(const UniPoly& a, const Fq& x);
UniPoly upoly_powmod_u64(const UniPoly& a, uint64_t e, const UniPoly& mod);
// a^(p^j) mod m via repeated p-th powering
UniPoly upoly_frob_power(const UniPoly& a, uint32_t j, const UniPoly& mod);
std::string upoly_to_string(const UniPoly& a, const std::string& var = "t");

struct ZeroPolynomial : FieldError {
  ZeroPolynomial() : FieldError("zero polynomial") {}
};

// Factorization result: monic irreducible factors with multiplicities,
// canonically ordered (degree, then coefficient sequence).
struct UniFactors {
  Fq lead;
  std::vector<std::pair<UniPoly, uint32_t>> factors;
};

// squarefree decomposition: monic pairwise-coprime squarefree parts with
// multiplicities (handles p-th power collapse in characteristic p)
std::vector<std::pair<UniPoly, uint32_t>> squarefree_decomposition(const UniPoly& f);
UniPoly squarefree_part(const UniPoly& f); // radical
UniPoly pth_root_poly(const UniPoly& f);   // f(t) = g(t^p) -> g, coefficient roots taken

UniFactors factor_univariate(const UniPoly& f, uint64_t seed);
bool is_irreducible(const UniPoly& f);
// roots of f lying in its own coefficient field
std::vector<Fq> roots_in_field(const UniPoly& f, uint64_t seed);

// Embedding GF(p^k) -> GF(p^(k*d)), image of the small field's generator t
// fixed as the lexicographically least root of the small modulus.
struct Embedding {
  FieldPtr small, big;
  Fq t_image;                       // image of small.gen()
  std::vector<Fq> t_powers;         // t_image^0 .. t_image^(k-1)
  std::shared_ptr<const void> solver_; // prebuilt linear solver for section()
  Fq apply(const Fq& a) const;
  UniPoly apply_poly(const UniPoly& f) const;
  // inverse on the image; nullopt if a is not in the embedded subfield
  std::optional<Fq> section(const Fq& a) const;
};
Embedding make_embedding(const FieldPtr& small, const FieldPtr& big);
// the identity map of F viewed as an Embedding (section = identity)
Embedding identity_embedding(const FieldPtr& F);
// composition: apply a (small -> mid), then b (mid -> big)
Embedding compose_embeddings(const Embedding& a, const Embedding& b);

// All roots of f over the algebraic closure, organized per irreducible factor:
// each factor of degree d gets the explicit field GF(p^(k*d)), an embedding of
// the base field, and its d conjugate roots there.
struct ClosureBlock {
  UniPoly factor;         // monic irreducible over the base field
  uint32_t multiplicity;
  FieldPtr ext;           // GF(p^(k*deg))
  Embedding emb;          // base -> ext
  std::vector<Fq> roots;  // the deg(factor) conjugate roots in ext
};
struct ClosureRoots {
  Fq lead;
  std::vector<ClosureBlock> blocks;
};
ClosureRoots roots_over_closure(const UniPoly& f, uint64_t seed);

} // namespace gf
} // namespace cdual
