#include "cdual/gf.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <tuple>

namespace cdual {
namespace gf {

// ---------------------------------------------------------------------------
// dense polynomials over the prime field GF(p), coefficients as uint16
// ---------------------------------------------------------------------------
namespace {

void pv_trim(PVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PVec pv_add(const PVec& a, const PVec& b, uint32_t p) {
  PVec r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint32_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    if (s >= p) s -= p;
    r[i] = uint16_t(s);
  }
  pv_trim(r);
  return r;
}

PVec pv_sub(const PVec& a, const PVec& b, uint32_t p) {
  PVec r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint32_t s = (i < a.size() ? a[i] : 0) + p - (i < b.size() ? b[i] : 0);
    if (s >= p) s -= p;
    r[i] = uint16_t(s);
  }
  pv_trim(r);
  return r;
}

PVec pv_mul(const PVec& a, const PVec& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    uint64_t ai = a[i];
    for (size_t j = 0; j < b.size(); ++j) acc[i + j] += ai * b[j];
    if ((i & 63) == 63)
      for (auto& x : acc) x %= p;
  }
  PVec r(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r[i] = uint16_t(acc[i] % p);
  pv_trim(r);
  return r;
}

uint32_t inv_mod(uint32_t a, uint32_t p) { // a != 0 mod p
  int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  return uint32_t(t < 0 ? t + p : t);
}

// a mod b (b nonzero); optionally quotient
PVec pv_rem(PVec a, const PVec& b, uint32_t p, PVec* quo = nullptr) {
  pv_trim(a);
  if (quo) quo->clear();
  if (b.empty()) throw FieldError("pv_rem by zero");
  uint32_t binv = inv_mod(b.back(), p);
  if (quo && a.size() >= b.size()) quo->assign(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size()) {
    uint32_t c = uint32_t((uint64_t(a.back()) * binv) % p);
    size_t shift = a.size() - b.size();
    if (quo) (*quo)[shift] = uint16_t(c);
    if (c) {
      for (size_t i = 0; i < b.size(); ++i) {
        uint64_t v = uint64_t(a[shift + i]) + uint64_t(p) * p - uint64_t(c) * b[i] % p;
        a[shift + i] = uint16_t(v % p);
      }
    }
    a.pop_back();
    pv_trim(a);
  }
  if (quo) pv_trim(*quo);
  return a;
}

PVec pv_mulmod(const PVec& a, const PVec& b, const PVec& m, uint32_t p) {
  return pv_rem(pv_mul(a, b, p), m, p);
}

PVec pv_gcd(PVec a, PVec b, uint32_t p) {
  pv_trim(a);
  pv_trim(b);
  while (!b.empty()) {
    PVec r = pv_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) { // monic
    uint32_t s = inv_mod(a.back(), p);
    for (auto& x : a) x = uint16_t((uint64_t(x) * s) % p);
  }
  return a;
}

PVec pv_powmod_u64(PVec a, uint64_t e, const PVec& m, uint32_t p) {
  PVec r{1};
  a = pv_rem(std::move(a), m, p);
  while (e) {
    if (e & 1) r = pv_mulmod(r, a, m, p);
    a = pv_mulmod(a, a, m, p);
    e >>= 1;
  }
  return r;
}

// x^(p^j) mod m
PVec pv_frob_x(uint32_t j, const PVec& m, uint32_t p) {
  PVec r{0, 1};
  r = pv_rem(std::move(r), m, p);
  for (uint32_t i = 0; i < j; ++i) r = pv_powmod_u64(std::move(r), p, m, p);
  return r;
}

std::vector<uint32_t> prime_factors_u64(uint64_t n) {
  std::vector<uint32_t> out;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(uint32_t(d));
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(uint32_t(n));
  return out;
}

bool pv_is_irreducible(const PVec& f, uint32_t p) {
  if (f.size() < 2) return false;
  uint32_t k = uint32_t(f.size() - 1);
  if (k == 1) return true;
  // x^(p^k) == x mod f
  PVec xq = pv_frob_x(k, f, p);
  PVec x = pv_rem(PVec{0, 1}, f, p);
  if (xq != x) return false;
  for (uint32_t r : prime_factors_u64(k)) {
    PVec h = pv_sub(pv_frob_x(k / r, f, p), x, p);
    if (!pv_gcd(h, f, p).empty() && pv_gcd(h, f, p).size() != 1) return false;
  }
  return true;
}

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; uint64_t(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// little-endian multiprecision for exponents like (p^k - 1) / 2
struct BigUint {
  std::vector<uint32_t> w; // base 2^32
  static BigUint from_u64(uint64_t v) {
    BigUint b;
    if (v) b.w.push_back(uint32_t(v));
    if (v >> 32) b.w.push_back(uint32_t(v >> 32));
    return b;
  }
  void mul_u32(uint32_t m) {
    uint64_t carry = 0;
    for (auto& x : w) {
      uint64_t v = uint64_t(x) * m + carry;
      x = uint32_t(v);
      carry = v >> 32;
    }
    if (carry) w.push_back(uint32_t(carry));
  }
  void sub1() {
    for (auto& x : w) {
      if (x--) break; // no borrow if original nonzero
    }
    while (!w.empty() && w.back() == 0) w.pop_back();
  }
  void shr1() {
    uint32_t carry = 0;
    for (size_t i = w.size(); i-- > 0;) {
      uint32_t nc = w[i] & 1;
      w[i] = (w[i] >> 1) | (carry << 31);
      carry = nc;
    }
    while (!w.empty() && w.back() == 0) w.pop_back();
  }
  size_t bits() const {
    if (w.empty()) return 0;
    size_t b = w.size() * 32;
    uint32_t t = w.back();
    while (!(t & 0x80000000u)) {
      t <<= 1;
      --b;
    }
    return b;
  }
  bool bit(size_t i) const { return (w[i / 32] >> (i % 32)) & 1; }
  bool is_zero() const { return w.empty(); }
};

BigUint pow_minus1_div2(uint32_t p, uint32_t k) { // (p^k - 1)/2, p odd
  BigUint b = BigUint::from_u64(1);
  for (uint32_t i = 0; i < k; ++i) b.mul_u32(p);
  b.sub1();
  b.shr1();
  return b;
}

} // namespace

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

struct FieldInternals {
  static uint32_t packed(const Field& F, const PVec& c) {
    uint32_t v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * F.p_ + c[i];
    return v;
  }
  static PVec unpack(const Field& F, uint32_t v) {
    PVec c(F.k_, 0);
    for (uint32_t i = 0; i < F.k_; ++i) {
      c[i] = uint16_t(v % F.p_);
      v /= F.p_;
    }
    return c;
  }
};

namespace {
std::mutex g_field_cache_mutex;
std::map<std::tuple<uint32_t, uint32_t, uint64_t>, FieldPtr>& field_cache() {
  static std::map<std::tuple<uint32_t, uint32_t, uint64_t>, FieldPtr> m;
  return m;
}
} // namespace

FieldPtr Field::make(uint32_t p, uint32_t k, uint64_t seed) {
  if (!is_prime_u32(p) || p >= (1u << 16)) throw FieldError("invalid prime");
  if (k < 1 || k > 8192) throw FieldError("invalid extension degree");
  {
    std::lock_guard<std::mutex> lk(g_field_cache_mutex);
    auto it = field_cache().find({p, k, seed});
    if (it != field_cache().end()) return it->second;
  }
  PVec mod;
  if (k == 1) {
    mod = PVec{0, 1}; // t
  } else {
    Rng rng(mix_seed(seed, (uint64_t(p) << 32) | k));
    for (;;) {
      PVec cand(k + 1, 0);
      cand[k] = 1;
      for (uint32_t i = 0; i < k; ++i) cand[i] = uint16_t(rng.below(p));
      if (cand[0] == 0) cand[0] = 1; // avoid t | cand
      if (pv_is_irreducible(cand, p)) {
        mod = std::move(cand);
        break;
      }
    }
  }
  FieldPtr f = make_with_modulus(p, mod, seed);
  {
    std::lock_guard<std::mutex> lk(g_field_cache_mutex);
    field_cache().emplace(std::make_tuple(p, k, seed), f);
  }
  return f;
}

FieldPtr Field::make_with_modulus(uint32_t p, const PVec& modulus, uint64_t seed) {
  if (!is_prime_u32(p) || p >= (1u << 16)) throw FieldError("invalid prime");
  PVec mod = modulus;
  pv_trim(mod);
  if (mod.size() < 2 || mod.back() != 1) throw FieldError("modulus must be monic of degree >= 1");
  uint32_t k = uint32_t(mod.size() - 1);
  if (k > 1 && !pv_is_irreducible(mod, p)) throw FieldError("modulus is reducible");
  auto F = std::shared_ptr<Field>(new Field());
  F->p_ = p;
  F->k_ = k;
  F->seed_ = seed;
  F->modulus_ = std::move(mod);
  uint64_t q = 1;
  bool fits = true;
  for (uint32_t i = 0; i < k; ++i) {
    if (q > (~uint64_t(0)) / p) {
      fits = false;
      break;
    }
    q *= p;
  }
  F->q_ = fits ? q : 0;
  F->tabled_ = fits && q <= kTableLimit;
  if (F->tabled_) F->build_tables(mix_seed(seed, 0xf1e1d));
  return F;
}

void Field::build_tables(uint64_t gen_seed) {
  const uint32_t Q = uint32_t(q_);
  const uint32_t n = Q - 1;
  // find a multiplicative generator, deterministically
  auto elem_order_ok = [&](const PVec& g) {
    if (g.empty()) return false;
    for (uint32_t r : prime_factors_u64(n)) {
      PVec h = pv_powmod_u64(g, n / r, modulus_, p_);
      if (h.size() == 1 && h[0] == 1) return false;
    }
    PVec h = pv_powmod_u64(g, n, modulus_, p_);
    return h.size() == 1 && h[0] == 1;
  };
  PVec g;
  {
    // try t, then t + c, then seeded random elements
    PVec cand{0, 1};
    cand = pv_rem(std::move(cand), modulus_, p_);
    if (elem_order_ok(cand)) g = cand;
    if (g.empty())
      for (uint32_t c = 1; c < p_ && g.empty(); ++c) {
        PVec t{uint16_t(c), 1};
        t = pv_rem(std::move(t), modulus_, p_);
        if (elem_order_ok(t)) g = t;
      }
    Rng rng(gen_seed);
    while (g.empty()) {
      PVec t(k_, 0);
      for (uint32_t i = 0; i < k_; ++i) t[i] = uint16_t(rng.below(p_));
      pv_trim(t);
      if (elem_order_ok(t)) g = t;
    }
  }
  exp_.assign(n, 0);
  log_.assign(Q, 0xFFFFFFFFu);
  PVec cur{1};
  for (uint32_t i = 0; i < n; ++i) {
    exp_[i] = FieldInternals::packed(*this, cur);
    log_[exp_[i]] = i;
    cur = pv_mulmod(cur, g, modulus_, p_);
  }
  if (!(cur.size() == 1 && cur[0] == 1)) throw FieldError("generator order bug");
  zech_.assign(n, 0xFFFFFFFFu);
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t v = exp_[i];
    uint32_t c0 = v % p_;
    uint32_t w = v - c0 + ((c0 + 1) % p_);
    zech_[i] = (w == 0) ? 0xFFFFFFFFu : log_[w];
  }
  neg_shift_ = (p_ == 2) ? 0 : n / 2;
}

Tables Field::tables() const {
  if (!tabled_) throw FieldError("field has no tables");
  Tables T;
  T.order = uint32_t(q_ - 1);
  T.zech = zech_.data();
  T.negs = neg_shift_;
  return T;
}

uint64_t Field::order_u64() const {
  if (!q_) throw FieldError("field order exceeds 64 bits");
  return q_;
}
bool Field::order_fits_u64() const { return q_ != 0; }

Fq Field::one() const {
  if (tabled_) return Fq{1, {}};
  PVec v(k_, 0);
  v[0] = 1;
  return Fq{0, std::move(v)};
}

Fq Field::gen() const {
  if (k_ == 1) return zero(); // class of t is 0 in GF(p)[t]/(t)
  PVec v(k_, 0);
  v[1] = 1;
  return from_coords(v);
}

Fq Field::from_int(uint64_t nval) const {
  uint32_t c = uint32_t(nval % p_);
  if (c == 0) return zero();
  PVec v(k_, 0);
  v[0] = uint16_t(c);
  return from_coords(v);
}

Fq Field::from_coords(const PVec& cin) const {
  PVec c = cin;
  for (auto& x : c)
    if (x >= p_) x = uint16_t(x % p_);
  pv_trim(c);
  if (c.size() > k_) c = pv_rem(std::move(c), modulus_, p_);
  if (tabled_) {
    uint32_t v = FieldInternals::packed(*this, c);
    if (v == 0) return Fq{};
    return Fq{log_[v] + 1, {}};
  }
  if (c.empty()) return Fq{};
  c.resize(k_, 0);
  return Fq{0, std::move(c)};
}

PVec Field::coords(const Fq& a) const {
  if (tabled_) {
    if (a.s == 0) return PVec(k_, 0);
    return FieldInternals::unpack(*this, exp_[a.s - 1]);
  }
  PVec v = a.v;
  v.resize(k_, 0);
  return v;
}

Fq Field::add(const Fq& a, const Fq& b) const {
  if (tabled_) {
    if (!a.s) return b;
    if (!b.s) return a;
    uint32_t n = uint32_t(q_ - 1);
    uint32_t la = a.s - 1, lb = b.s - 1;
    uint32_t d = lb >= la ? lb - la : lb + n - la;
    uint32_t z = zech_[d];
    if (z == 0xFFFFFFFFu) return Fq{};
    uint32_t s = la + z;
    if (s >= n) s -= n;
    return Fq{s + 1, {}};
  }
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  PVec r = pv_add(a.v, b.v, p_);
  if (r.empty()) return Fq{};
  r.resize(k_, 0);
  return Fq{0, std::move(r)};
}

Fq Field::neg(const Fq& a) const {
  if (tabled_) {
    if (!a.s || p_ == 2) return a;
    uint32_t n = uint32_t(q_ - 1);
    uint32_t s = a.s - 1 + neg_shift_;
    if (s >= n) s -= n;
    return Fq{s + 1, {}};
  }
  if (is_zero(a)) return a;
  PVec r = pv_sub(PVec{}, a.v, p_);
  r.resize(k_, 0);
  return Fq{0, std::move(r)};
}

Fq Field::sub(const Fq& a, const Fq& b) const { return add(a, neg(b)); }

Fq Field::mul(const Fq& a, const Fq& b) const {
  if (tabled_) {
    if (!a.s || !b.s) return Fq{};
    uint32_t n = uint32_t(q_ - 1);
    uint32_t s = a.s - 1 + b.s - 1;
    if (s >= n) s -= n;
    return Fq{s + 1, {}};
  }
  return generic_mul(a, b);
}

Fq Field::generic_mul(const Fq& a, const Fq& b) const {
  if (is_zero(a) || is_zero(b)) return Fq{};
  PVec r = pv_mulmod(a.v, b.v, modulus_, p_);
  if (r.empty()) return Fq{};
  r.resize(k_, 0);
  return Fq{0, std::move(r)};
}

Fq Field::inv(const Fq& a) const {
  if (is_zero(a)) throw FieldError("division by zero");
  if (tabled_) {
    uint32_t n = uint32_t(q_ - 1);
    uint32_t la = a.s - 1;
    return Fq{(la == 0 ? 0 : n - la) + 1, {}};
  }
  // extended Euclid over GF(p)[t]
  PVec r0 = modulus_, r1 = a.v, t0{}, t1{1};
  pv_trim(r1);
  while (!r1.empty()) {
    PVec q;
    PVec r2 = pv_rem(r0, r1, p_, &q);
    PVec t2 = pv_sub(t0, pv_mul(q, t1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw FieldError("inv: non-invertible element");
  uint32_t s = inv_mod(r0[0], p_);
  for (auto& x : t0) x = uint16_t((uint64_t(x) * s) % p_);
  t0.resize(k_, 0);
  return Fq{0, std::move(t0)};
}

Fq Field::pow_u64(const Fq& a, uint64_t e) const {
  if (is_zero(a)) return e == 0 ? one() : zero();
  if (tabled_) {
    uint64_t n = q_ - 1;
    uint64_t la = a.s - 1;
    uint64_t s = (unsigned __int128)(la) * (e % n) % n;
    return Fq{uint32_t(s) + 1, {}};
  }
  Fq r = one(), base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Fq Field::frobenius(const Fq& a) const {
  if (tabled_) return pow_u64(a, p_);
  if (is_zero(a)) return a;
  if (frob_cols_.empty()) {
    frob_cols_.resize(k_);
    for (uint32_t i = 0; i < k_; ++i) {
      PVec xi(i + 1, 0);
      xi[i] = 1;
      frob_cols_[i] = pv_powmod_u64(xi, p_, modulus_, p_);
    }
  }
  PVec r;
  for (uint32_t i = 0; i < k_; ++i) {
    if (!a.v[i]) continue;
    PVec t = frob_cols_[i];
    for (auto& x : t) x = uint16_t((uint64_t(x) * a.v[i]) % p_);
    r = pv_add(r, t, p_);
  }
  if (r.empty()) return Fq{};
  r.resize(k_, 0);
  return Fq{0, std::move(r)};
}

Fq Field::pth_root(const Fq& a) const {
  // inverse of Frobenius: a^(p^(k-1))
  if (k_ == 1) return a;
  if (tabled_) {
    uint64_t n = q_ - 1;
    uint64_t e = 1;
    for (uint32_t i = 0; i + 1 < k_; ++i) e = (unsigned __int128)(e)*p_ % n;
    return pow_u64(a, e);
  }
  Fq r = a;
  for (uint32_t i = 0; i + 1 < k_; ++i) r = frobenius(r);
  return r;
}

Fq Field::sample(Rng& rng) const {
  if (tabled_) {
    uint64_t u = rng.below(q_);
    return u == 0 ? Fq{} : Fq{uint32_t(u), {}};
  }
  PVec v(k_, 0);
  for (uint32_t i = 0; i < k_; ++i) v[i] = uint16_t(rng.below(p_));
  PVec t = v;
  pv_trim(t);
  if (t.empty()) return Fq{};
  return Fq{0, std::move(v)};
}

std::string Field::to_string(const Fq& a) const {
  PVec c = coords(a);
  if (k_ == 1) return std::to_string(c.empty() ? 0 : c[0]);
  std::ostringstream os;
  os << '[';
  for (uint32_t i = 0; i < k_; ++i) {
    if (i) os << ',';
    os << c[i];
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// UniPoly
// ---------------------------------------------------------------------------

void UniPoly::trim() {
  while (!c.empty() && F->is_zero(c.back())) c.pop_back();
}

UniPoly UniPoly::xpow(FieldPtr F, size_t n) {
  UniPoly r(F);
  r.c.assign(n + 1, F->zero());
  r.c[n] = F->one();
  return r;
}

UniPoly UniPoly::constant(FieldPtr F, const Fq& a) {
  UniPoly r(F);
  if (!F->is_zero(a)) r.c.push_back(a);
  return r;
}

UniPoly upoly_add(const UniPoly& a, const UniPoly& b) {
  const auto& F = a.F;
  UniPoly r(F);
  r.c.resize(std::max(a.c.size(), b.c.size()), F->zero());
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = F->add(a.coeff(i), b.coeff(i));
  r.trim();
  return r;
}

UniPoly upoly_sub(const UniPoly& a, const UniPoly& b) {
  const auto& F = a.F;
  UniPoly r(F);
  r.c.resize(std::max(a.c.size(), b.c.size()), F->zero());
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = F->sub(a.coeff(i), b.coeff(i));
  r.trim();
  return r;
}

UniPoly upoly_mul(const UniPoly& a, const UniPoly& b) {
  const auto& F = a.F;
  UniPoly r(F);
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, F->zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (F->is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = F->add(r.c[i + j], F->mul(a.c[i], b.c[j]));
  }
  r.trim();
  return r;
}

UniPoly upoly_scale(const UniPoly& a, const Fq& s) {
  const auto& F = a.F;
  UniPoly r(F);
  if (F->is_zero(s)) return r;
  r.c = a.c;
  for (auto& x : r.c) x = F->mul(x, s);
  r.trim();
  return r;
}

void upoly_divrem(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
  const auto& F = a.F;
  if (b.is_zero()) throw FieldError("polynomial division by zero");
  q = UniPoly(F);
  r = a;
  if (r.deg() < b.deg()) return;
  q.c.assign(r.c.size() - b.c.size() + 1, F->zero());
  Fq binv = F->inv(b.lc());
  for (int i = r.deg(); i >= b.deg();) {
    Fq coef = F->mul(r.c[i], binv);
    size_t shift = i - b.deg();
    q.c[shift] = coef;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[shift + j] = F->sub(r.c[shift + j], F->mul(coef, b.c[j]));
    r.trim();
    i = r.deg();
    if (i < b.deg()) break;
  }
  q.trim();
}

UniPoly upoly_rem(const UniPoly& a, const UniPoly& b) {
  UniPoly q, r;
  upoly_divrem(a, b, q, r);
  return r;
}

UniPoly upoly_quo(const UniPoly& a, const UniPoly& b) {
  UniPoly q, r;
  upoly_divrem(a, b, q, r);
  return q;
}

UniPoly upoly_monic(const UniPoly& a) {
  if (a.is_zero()) return a;
  return upoly_scale(a, a.F->inv(a.lc()));
}

UniPoly upoly_gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = upoly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return upoly_monic(a);
}

UniPoly upoly_invmod(const UniPoly& a, const UniPoly& m) {
  const auto& F = m.F;
  if (m.deg() < 1) throw FieldError("upoly_invmod: modulus must have degree >= 1");
  UniPoly r0 = m, r1 = upoly_rem(a, m);
  UniPoly s0(F), s1(F);
  s1.c = {F->one()};
  while (!r1.is_zero()) {
    UniPoly q, r2;
    upoly_divrem(r0, r1, q, r2);
    UniPoly s2 = upoly_sub(s0, upoly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.deg() != 0) throw FieldError("upoly_invmod: element is not invertible");
  return upoly_rem(upoly_scale(s0, F->inv(r0.c[0])), m);
}

UniPoly upoly_derivative(const UniPoly& a) {
  const auto& F = a.F;
  UniPoly r(F);
  if (a.deg() < 1) return r;
  r.c.resize(a.c.size() - 1, F->zero());
  for (size_t i = 1; i < a.c.size(); ++i) {
    Fq m = F->from_int(i % F->p());
    r.c[i - 1] = F->mul(a.c[i], m);
  }
  r.trim();
  return r;
}

Fq upoly_eval(const UniPoly& a, const Fq& x) {
  const auto& F = a.F;
  Fq r = F->zero();
  for (size_t i = a.c.size(); i-- > 0;) r = F->add(F->mul(r, x), a.c[i]);
  return r;
}

UniPoly upoly_powmod_u64(const UniPoly& a, uint64_t e, const UniPoly& mod) {
  const auto& F = a.F;
  UniPoly r = UniPoly::constant(F, F->one());
  UniPoly base = upoly_rem(a, mod);
  while (e) {
    if (e & 1) r = upoly_rem(upoly_mul(r, base), mod);
    base = upoly_rem(upoly_mul(base, base), mod);
    e >>= 1;
  }
  return r;
}

UniPoly upoly_frob_power(const UniPoly& a, uint32_t j, const UniPoly& mod) {
  UniPoly r = upoly_rem(a, mod);
  for (uint32_t i = 0; i < j; ++i) r = upoly_powmod_u64(r, r.F->p(), mod);
  return r;
}

namespace {
UniPoly upoly_powmod_big(const UniPoly& a, const BigUint& e, const UniPoly& mod) {
  const auto& F = a.F;
  if (e.is_zero()) return UniPoly::constant(F, F->one());
  UniPoly r = upoly_rem(a, mod);
  for (size_t i = e.bits() - 1; i-- > 0;) {
    r = upoly_rem(upoly_mul(r, r), mod);
    if (e.bit(i)) r = upoly_rem(upoly_mul(r, a), mod);
  }
  return r;
}
} // namespace

std::string upoly_to_string(const UniPoly& a, const std::string& var) {
  if (a.is_zero()) return "0";
  const auto& F = a.F;
  std::ostringstream os;
  bool first = true;
  for (size_t i = a.c.size(); i-- > 0;) {
    if (F->is_zero(a.c[i])) continue;
    if (!first) os << " + ";
    first = false;
    os << F->to_string(a.c[i]);
    if (i >= 1) {
      os << "*" << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// factorization
// ---------------------------------------------------------------------------

UniPoly pth_root_poly(const UniPoly& f) {
  const auto& F = f.F;
  uint32_t p = F->p();
  UniPoly g(F);
  g.c.assign(f.c.size() / p + 1, F->zero());
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (F->is_zero(f.c[i])) continue;
    if (i % p != 0) throw FieldError("not a p-th power polynomial");
    g.c[i / p] = F->pth_root(f.c[i]);
  }
  g.trim();
  return g;
}

namespace {
void sqf_rec(const UniPoly& fin, uint32_t mult,
             std::vector<std::pair<UniPoly, uint32_t>>& out) {
  UniPoly f = upoly_monic(fin);
  if (f.deg() <= 0) return;
  UniPoly d = upoly_derivative(f);
  if (d.is_zero()) {
    sqf_rec(pth_root_poly(f), mult * f.F->p(), out);
    return;
  }
  UniPoly c = upoly_gcd(f, d);
  UniPoly w = upoly_quo(f, c);
  uint32_t i = 1;
  while (w.deg() > 0) {
    UniPoly y = upoly_gcd(w, c);
    UniPoly z = upoly_quo(w, y);
    if (z.deg() > 0) out.emplace_back(upoly_monic(z), mult * i);
    w = std::move(y);
    c = upoly_quo(c, w);
    ++i;
  }
  if (c.deg() > 0) sqf_rec(pth_root_poly(c), mult * f.F->p(), out);
}
} // namespace

std::vector<std::pair<UniPoly, uint32_t>> squarefree_decomposition(const UniPoly& f) {
  if (f.is_zero()) throw ZeroPolynomial();
  std::vector<std::pair<UniPoly, uint32_t>> out;
  sqf_rec(f, 1, out);
  return out;
}

UniPoly squarefree_part(const UniPoly& f) {
  auto parts = squarefree_decomposition(f);
  UniPoly r = UniPoly::constant(f.F, f.F->one());
  for (auto& [g, m] : parts) r = upoly_mul(r, g);
  return r;
}

namespace {

// distinct-degree factorization of a monic squarefree f
std::vector<std::pair<UniPoly, uint32_t>> ddf(UniPoly f) {
  const auto F = f.F;
  std::vector<std::pair<UniPoly, uint32_t>> out;
  UniPoly x = UniPoly::xpow(F, 1);
  UniPoly h = upoly_rem(x, f);
  uint32_t i = 1;
  while (f.deg() >= 2 * int(i)) {
    h = upoly_frob_power(h, F->k(), f); // h^(p^k) mod f
    UniPoly g = upoly_gcd(upoly_sub(h, x), f);
    if (g.deg() > 0) {
      out.emplace_back(g, i);
      f = upoly_quo(f, g);
      h = upoly_rem(h, f);
    }
    ++i;
  }
  if (f.deg() > 0) out.emplace_back(f, uint32_t(f.deg()));
  return out;
}

// equal-degree splitting of monic squarefree f, all factors of degree d
void edf(const UniPoly& f, uint32_t d, Rng& rng, std::vector<UniPoly>& out) {
  const auto F = f.F;
  if (f.deg() == int(d)) {
    out.push_back(upoly_monic(f));
    return;
  }
  const uint32_t p = F->p();
  for (;;) {
    // random poly of degree < deg f
    UniPoly r(F);
    r.c.resize(f.deg(), F->zero());
    for (auto& ce : r.c) ce = F->sample(rng);
    r.trim();
    if (r.deg() < 1 && p > 2) continue;
    UniPoly g;
    if (p == 2) {
      // trace map over GF(2^(k*d))
      UniPoly t = upoly_rem(r, f);
      UniPoly acc = t;
      uint32_t total = F->k() * d;
      for (uint32_t i = 1; i < total; ++i) {
        t = upoly_rem(upoly_mul(t, t), f);
        acc = upoly_add(acc, t);
      }
      g = upoly_gcd(acc, f);
    } else {
      // norm to GF(p^k), then power (|K|^d - 1)/2 split via two stages:
      // b = r^(1 + Q + ... + Q^(d-1)), then b^((Q-1)/2) with Q = p^k
      UniPoly b = upoly_rem(r, f);
      UniPoly t = b;
      for (uint32_t j = 1; j < d; ++j) {
        t = upoly_frob_power(t, F->k(), f);
        b = upoly_rem(upoly_mul(b, t), f);
      }
      BigUint e = pow_minus1_div2(p, F->k());
      UniPoly s = upoly_powmod_big(b, e, f);
      g = upoly_gcd(upoly_sub(s, UniPoly::constant(F, F->one())), f);
    }
    if (g.deg() > 0 && g.deg() < f.deg()) {
      edf(g, d, rng, out);
      edf(upoly_quo(f, g), d, rng, out);
      return;
    }
  }
}

std::vector<uint16_t> coeff_key(const UniPoly& f) {
  std::vector<uint16_t> key;
  for (size_t i = f.c.size(); i-- > 0;) {
    PVec c = f.F->coords(f.c[i]);
    key.insert(key.end(), c.begin(), c.end());
  }
  return key;
}

} // namespace

UniFactors factor_univariate(const UniPoly& f, uint64_t seed) {
  if (f.is_zero()) throw ZeroPolynomial();
  UniFactors res;
  res.lead = f.lc();
  if (f.deg() == 0) return res;
  Rng rng(mix_seed(seed, 0xfac70e));
  auto sqf = squarefree_decomposition(f);
  for (auto& [g, mult] : sqf) {
    for (auto& [h, d] : ddf(g)) {
      std::vector<UniPoly> irr;
      edf(h, d, rng, irr);
      for (auto& u : irr) res.factors.emplace_back(u, mult);
    }
  }
  std::sort(res.factors.begin(), res.factors.end(), [](const auto& a, const auto& b) {
    if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
    return coeff_key(a.first) < coeff_key(b.first);
  });
  return res;
}

bool is_irreducible(const UniPoly& f) {
  if (f.deg() < 1) return false;
  if (f.deg() == 1) return true;
  const auto F = f.F;
  uint32_t n = uint32_t(f.deg());
  UniPoly x = UniPoly::xpow(F, 1);
  UniPoly h = upoly_frob_power(x, F->k() * n, f);
  if (!upoly_sub(h, x).is_zero()) return false;
  for (uint32_t r : prime_factors_u64(n)) {
    UniPoly g = upoly_frob_power(x, F->k() * (n / r), f);
    if (upoly_gcd(upoly_sub(g, x), f).deg() != 0) return false;
  }
  return true;
}

std::vector<Fq> roots_in_field(const UniPoly& f, uint64_t seed) {
  if (f.is_zero()) throw ZeroPolynomial();
  const auto F = f.F;
  std::vector<Fq> out;
  if (f.deg() < 1) return out;
  UniPoly x = UniPoly::xpow(F, 1);
  UniPoly fr = squarefree_part(f);
  UniPoly xq = upoly_frob_power(x, F->k(), fr);
  UniPoly g = upoly_gcd(upoly_sub(xq, x), fr);
  if (g.deg() < 1) return out;
  Rng rng(mix_seed(seed, 0x1007));
  std::vector<UniPoly> lin;
  edf(g, 1, rng, lin);
  for (auto& l : lin) out.push_back(F->neg(l.c[0]));
  std::sort(out.begin(), out.end(), [&](const Fq& a, const Fq& b) {
    return F->coords(a) < F->coords(b);
  });
  return out;
}

// ---------------------------------------------------------------------------
// embeddings and closure roots
// ---------------------------------------------------------------------------

namespace {
// dense GF(p) linear solve helpers for Embedding::section
struct SectionSolver {
  uint32_t p = 0, rows = 0, cols = 0;
  std::vector<std::vector<uint16_t>> R; // row-reduced [M | I_rows] augmented
  std::vector<int> pivot_col;           // for each matrix row in echelon order
  // Solve M z = rhs; M is rows x cols (rows >= cols), full column rank.
  std::optional<PVec> solve(const PVec& rhs) const {
    std::vector<uint16_t> v(rows, 0);
    for (size_t i = 0; i < rhs.size() && i < rows; ++i) v[i] = rhs[i];
    // apply recorded row operations: R holds the reduced augmented rows
    PVec z(cols, 0);
    std::vector<uint16_t> w(rows, 0);
    // w = T * v where T is the recorded transform (stored in columns cols..cols+rows)
    for (uint32_t r = 0; r < rows; ++r) {
      uint64_t acc = 0;
      for (uint32_t j = 0; j < rows; ++j) acc += uint64_t(R[r][cols + j]) * v[j];
      w[r] = uint16_t(acc % p);
    }
    for (uint32_t r = 0; r < rows; ++r) {
      if (pivot_col[r] >= 0)
        z[pivot_col[r]] = w[r];
      else if (w[r] != 0)
        return std::nullopt; // inconsistent: not in the subfield
    }
    return z;
  }

  static SectionSolver build(const Field& big, uint32_t p, const std::vector<Fq>& t_powers) {
    SectionSolver S;
    S.p = p;
    S.rows = big.k();
    S.cols = uint32_t(t_powers.size());
    S.R.assign(S.rows, std::vector<uint16_t>(S.cols + S.rows, 0));
    for (uint32_t j = 0; j < S.cols; ++j) {
      PVec col = big.coords(t_powers[j]);
      for (uint32_t i = 0; i < S.rows; ++i) S.R[i][j] = col[i];
    }
    for (uint32_t i = 0; i < S.rows; ++i) S.R[i][S.cols + i] = 1;
    // Gauss-Jordan
    S.pivot_col.assign(S.rows, -1);
    uint32_t r = 0;
    for (uint32_t c = 0; c < S.cols && r < S.rows; ++c) {
      uint32_t pr = r;
      while (pr < S.rows && S.R[pr][c] == 0) ++pr;
      if (pr == S.rows) continue;
      std::swap(S.R[pr], S.R[r]);
      uint32_t iv = inv_mod(S.R[r][c], p);
      for (auto& x : S.R[r]) x = uint16_t((uint64_t(x) * iv) % p);
      for (uint32_t i = 0; i < S.rows; ++i) {
        if (i == r || S.R[i][c] == 0) continue;
        uint32_t f = S.R[i][c];
        for (uint32_t j = 0; j < S.cols + S.rows; ++j) {
          uint64_t v = S.R[i][j] + uint64_t(p) * p - uint64_t(f) * S.R[r][j] % p;
          S.R[i][j] = uint16_t(v % p);
        }
      }
      S.pivot_col[r] = int(c);
      ++r;
    }
    return S;
  }
};

std::shared_ptr<const void> build_section_solver(const FieldPtr& small, const FieldPtr& big,
                                                 const std::vector<Fq>& t_powers) {
  return std::shared_ptr<const void>(
      new SectionSolver(SectionSolver::build(*big, small->p(), t_powers)));
}
} // namespace

Fq Embedding::apply(const Fq& a) const {
  PVec c = small->coords(a);
  Fq r = big->zero();
  for (size_t j = 0; j < c.size(); ++j) {
    if (!c[j]) continue;
    r = big->add(r, big->mul(big->from_int(c[j]), t_powers[j]));
  }
  return r;
}

UniPoly Embedding::apply_poly(const UniPoly& f) const {
  UniPoly r(big);
  r.c.reserve(f.c.size());
  for (auto& x : f.c) r.c.push_back(apply(x));
  r.trim();
  return r;
}

std::optional<Fq> Embedding::section(const Fq& a) const {
  std::shared_ptr<const void> local = solver_;
  if (!local) local = build_section_solver(small, big, t_powers);
  const auto* S = static_cast<const SectionSolver*>(local.get());
  auto z = S->solve(big->coords(a));
  if (!z) return std::nullopt;
  return small->from_coords(*z);
}

Embedding make_embedding(const FieldPtr& small, const FieldPtr& big) {
  if (small->p() != big->p()) throw FieldError("embedding: characteristic mismatch");
  if (big->k() % small->k() != 0) throw FieldError("embedding: degree does not divide");
  Embedding e;
  e.small = small;
  e.big = big;
  if (small->k() == 1) {
    e.t_image = big->zero();
  } else {
    // roots of the small modulus in the big field; lexicographically least
    UniPoly m(big);
    for (auto ci : small->modulus()) m.c.push_back(big->from_int(ci));
    m.trim();
    auto roots = roots_in_field(m, mix_seed(small->seed(), big->seed()));
    if (roots.size() != small->k()) throw FieldError("embedding: modulus did not split");
    e.t_image = roots.front(); // roots_in_field sorts by coords
  }
  e.t_powers.resize(small->k());
  Fq cur = big->one();
  for (uint32_t j = 0; j < small->k(); ++j) {
    e.t_powers[j] = cur;
    cur = big->mul(cur, e.t_image);
  }
  e.solver_ = build_section_solver(small, big, e.t_powers);
  return e;
}

Embedding identity_embedding(const FieldPtr& F) {
  Embedding e;
  e.small = F;
  e.big = F;
  e.t_image = F->gen();
  e.t_powers.resize(F->k());
  Fq cur = F->one();
  for (uint32_t j = 0; j < F->k(); ++j) {
    e.t_powers[j] = cur;
    cur = F->mul(cur, e.t_image);
  }
  e.solver_ = build_section_solver(F, F, e.t_powers);
  return e;
}

Embedding compose_embeddings(const Embedding& a, const Embedding& b) {
  if (a.big != b.small) throw FieldError("compose_embeddings: middle fields differ");
  Embedding e;
  e.small = a.small;
  e.big = b.big;
  e.t_image = b.apply(a.t_image);
  e.t_powers.resize(a.small->k());
  Fq cur = b.big->one();
  for (uint32_t j = 0; j < a.small->k(); ++j) {
    e.t_powers[j] = cur;
    cur = b.big->mul(cur, e.t_image);
  }
  e.solver_ = build_section_solver(a.small, b.big, e.t_powers);
  return e;
}

ClosureRoots roots_over_closure(const UniPoly& f, uint64_t seed) {
  if (f.is_zero()) throw ZeroPolynomial();
  const auto F = f.F;
  ClosureRoots out;
  UniFactors fac = factor_univariate(f, seed);
  out.lead = fac.lead;
  std::map<uint32_t, FieldPtr> exts;
  std::map<uint32_t, Embedding> embs;
  for (auto& [g, mult] : fac.factors) {
    uint32_t d = uint32_t(g.deg());
    ClosureBlock blk;
    blk.factor = g;
    blk.multiplicity = mult;
    if (d == 1) {
      blk.ext = F;
      blk.emb = identity_embedding(F);
      blk.roots.push_back(F->neg(g.c[0]));
    } else {
      auto it = exts.find(d);
      if (it == exts.end()) {
        FieldPtr E = Field::make(F->p(), F->k() * d, mix_seed(seed, d));
        exts.emplace(d, E);
        embs.emplace(d, make_embedding(F, E));
        it = exts.find(d);
      }
      blk.ext = it->second;
      blk.emb = embs.at(d);
      UniPoly gi = blk.emb.apply_poly(g);
      blk.roots = roots_in_field(gi, mix_seed(seed, 0xb10c + d));
      if (blk.roots.size() != d) throw FieldError("closure roots: factor did not split");
    }
    out.blocks.push_back(std::move(blk));
  }
  return out;
}

} // namespace gf
} // namespace cdual
