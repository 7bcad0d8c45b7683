#include "cdual/mpoly.hpp"

#include <algorithm>
#include <sstream>

namespace cdual {
namespace poly {

using gf::Tables;
namespace tab = gf::tab;

// ---------------------------------------------------------------------------
// MPoly basics
// ---------------------------------------------------------------------------

MPoly MPoly::constant(FieldPtr F, uint32_t nvars, const Fq& a) {
  MPoly r(F, nvars);
  if (!F->is_zero(a)) r.t_.emplace(Expo{0, 0, 0}, a);
  return r;
}

MPoly MPoly::monomial(FieldPtr F, uint32_t nvars, const Expo& e, const Fq& a) {
  MPoly r(F, nvars);
  if (!F->is_zero(a)) r.t_.emplace(e, a);
  return r;
}

MPoly MPoly::variable(FieldPtr F, uint32_t nvars, uint32_t i) {
  Expo e{0, 0, 0};
  e[i] = 1;
  Fq one = F->one();
  return monomial(std::move(F), nvars, e, one);
}

int MPoly::total_degree() const {
  int d = -1;
  for (auto& [e, c] : t_) d = std::max(d, int(expo_total(e)));
  return d;
}

int MPoly::degree_in(uint32_t var) const {
  int d = -1;
  for (auto& [e, c] : t_) d = std::max(d, int(e[var]));
  return t_.empty() ? -1 : d;
}

bool MPoly::is_homogeneous() const {
  if (t_.empty()) return true;
  uint32_t d = expo_total(t_.begin()->first);
  for (auto& [e, c] : t_)
    if (expo_total(e) != d) return false;
  return true;
}

Fq MPoly::coeff(const Expo& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? Fq{} : it->second;
}

void MPoly::add_term(const Expo& e, const Fq& c) {
  if (F_->is_zero(c)) return;
  auto [it, fresh] = t_.emplace(e, c);
  if (!fresh) {
    it->second = F_->add(it->second, c);
    if (F_->is_zero(it->second)) t_.erase(it);
  }
}

void MPoly::set_term(const Expo& e, const Fq& c) {
  if (F_->is_zero(c))
    t_.erase(e);
  else
    t_[e] = c;
}

// ---------------------------------------------------------------------------
// arithmetic
// ---------------------------------------------------------------------------

MPoly mp_add(const MPoly& a, const MPoly& b) {
  MPoly r = a;
  for (auto& [e, c] : b.terms()) r.add_term(e, c);
  return r;
}

MPoly mp_neg(const MPoly& a) {
  MPoly r(a.field(), a.nvars());
  for (auto& [e, c] : a.terms()) r.set_term(e, a.field()->neg(c));
  return r;
}

MPoly mp_sub(const MPoly& a, const MPoly& b) { return mp_add(a, mp_neg(b)); }

MPoly mp_mul(const MPoly& a, const MPoly& b) {
  const auto& F = a.field();
  MPoly r(F, std::max(a.nvars(), b.nvars()));
  for (auto& [ea, ca] : a.terms())
    for (auto& [eb, cb] : b.terms()) {
      Expo e{uint16_t(ea[0] + eb[0]), uint16_t(ea[1] + eb[1]), uint16_t(ea[2] + eb[2])};
      r.add_term(e, F->mul(ca, cb));
    }
  return r;
}

MPoly mp_scale(const MPoly& a, const Fq& s) {
  const auto& F = a.field();
  MPoly r(F, a.nvars());
  if (F->is_zero(s)) return r;
  for (auto& [e, c] : a.terms()) r.set_term(e, F->mul(c, s));
  return r;
}

MPoly mp_pow(const MPoly& a, uint32_t e) {
  MPoly r = MPoly::constant(a.field(), a.nvars(), a.field()->one());
  MPoly base = a;
  while (e) {
    if (e & 1) r = mp_mul(r, base);
    base = mp_mul(base, base);
    e >>= 1;
  }
  return r;
}

MPoly partial_derivative(const MPoly& f, uint32_t var) {
  const auto& F = f.field();
  MPoly r(F, f.nvars());
  for (auto& [e, c] : f.terms()) {
    uint32_t m = e[var] % F->p();
    if (e[var] == 0 || m == 0) continue;
    Expo d = e;
    d[var] = uint16_t(e[var] - 1);
    r.add_term(d, F->mul(c, F->from_int(m)));
  }
  return r;
}

MPoly qth_root_poly(const MPoly& f, uint64_t q) {
  const auto& F = f.field();
  uint32_t nu = 0;
  uint64_t qq = q;
  while (qq > 1) {
    if (qq % F->p() != 0) throw gf::FieldError("q is not a power of the characteristic");
    qq /= F->p();
    ++nu;
  }
  MPoly r(F, f.nvars());
  for (auto& [e, c] : f.terms()) {
    Expo d;
    for (int i = 0; i < 3; ++i) {
      if (e[i] % q != 0) throw NotAQthPower();
      d[i] = uint16_t(e[i] / q);
    }
    Fq rc = c;
    for (uint32_t i = 0; i < nu; ++i) rc = F->pth_root(rc);
    r.set_term(d, rc);
  }
  return r;
}

MPoly substitute(const MPoly& f, const std::vector<MPoly>& images) {
  const auto& F = f.field();
  if (images.size() != f.nvars()) throw gf::FieldError("substitute: image count mismatch");
  uint32_t outv = f.nvars();
  for (auto& im : images) outv = std::max(outv, im.nvars());
  // lazily grown power caches
  std::array<std::vector<MPoly>, 3> pw;
  for (uint32_t v = 0; v < f.nvars(); ++v)
    pw[v].push_back(MPoly::constant(F, outv, F->one()));
  auto power = [&](uint32_t v, uint32_t e) -> const MPoly& {
    while (pw[v].size() <= e) pw[v].push_back(mp_mul(pw[v].back(), images[v]));
    return pw[v][e];
  };
  MPoly r(F, outv);
  for (auto& [e, c] : f.terms()) {
    MPoly t = MPoly::constant(F, outv, c);
    for (uint32_t v = 0; v < f.nvars(); ++v)
      if (e[v]) t = mp_mul(t, power(v, e[v]));
    r = mp_add(r, t);
  }
  return r;
}

Fq mp_eval(const MPoly& f, const std::array<Fq, 3>& x) {
  const auto& F = f.field();
  std::array<std::vector<Fq>, 3> pw;
  for (int v = 0; v < 3; ++v) pw[v].push_back(F->one());
  auto power = [&](uint32_t v, uint32_t e) -> const Fq& {
    while (pw[v].size() <= e) pw[v].push_back(F->mul(pw[v].back(), x[v]));
    return pw[v][e];
  };
  Fq acc = F->zero();
  for (auto& [e, c] : f.terms()) {
    Fq t = c;
    for (uint32_t v = 0; v < 3; ++v)
      if (e[v]) t = F->mul(t, power(v, e[v]));
    acc = F->add(acc, t);
  }
  return acc;
}

std::vector<MPoly> coeffs_in_var(const MPoly& f, uint32_t var) {
  int d = f.degree_in(var);
  std::vector<MPoly> out;
  out.assign(size_t(std::max(d, -1) + 1), MPoly(f.field(), f.nvars()));
  for (auto& [e, c] : f.terms()) {
    Expo r = e;
    r[var] = 0;
    out[e[var]].set_term(r, c);
  }
  return out;
}

MPoly set_var_to_one(const MPoly& f, uint32_t var) {
  MPoly r(f.field(), f.nvars());
  for (auto& [e, c] : f.terms()) {
    Expo d = e;
    d[var] = 0;
    r.add_term(d, c);
  }
  return r;
}

UniPoly to_univariate(const MPoly& f, uint32_t var) {
  UniPoly u(f.field());
  u.c.assign(size_t(f.degree_in(var) + 1), f.field()->zero());
  for (auto& [e, c] : f.terms()) {
    for (uint32_t v = 0; v < 3; ++v)
      if (v != var && e[v] != 0)
        throw gf::FieldError("to_univariate: polynomial involves other variables");
    u.c[e[var]] = c;
  }
  u.trim();
  return u;
}

MPoly from_univariate(const UniPoly& u, uint32_t var, uint32_t nvars) {
  MPoly r(u.F, nvars);
  for (size_t i = 0; i < u.c.size(); ++i) {
    if (u.F->is_zero(u.c[i])) continue;
    Expo e{0, 0, 0};
    e[var] = uint16_t(i);
    r.set_term(e, u.c[i]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// resultants
// ---------------------------------------------------------------------------

// exact division in the polynomial ring; throws if not exact
MPoly mp_divexact(const MPoly& a, const MPoly& b) {
  const auto& F = a.field();
  if (b.is_zero()) throw gf::FieldError("mp_divexact: division by zero");
  MPoly rem = a;
  MPoly quo(F, std::max(a.nvars(), b.nvars()));
  Expo be = b.leading_expo();
  Fq binv = F->inv(b.leading_coeff());
  while (!rem.is_zero()) {
    Expo re = rem.leading_expo();
    Expo d;
    for (int i = 0; i < 3; ++i) {
      if (re[i] < be[i]) throw gf::FieldError("mp_divexact: not divisible");
      d[i] = uint16_t(re[i] - be[i]);
    }
    Fq c = F->mul(rem.leading_coeff(), binv);
    quo.add_term(d, c);
    rem = mp_sub(rem, mp_mul(MPoly::monomial(F, quo.nvars(), d, c), b));
  }
  return quo;
}

namespace {

// Sylvester matrix of f, g in `var` (formal degrees m, n), entries are
// polynomials in the remaining variables
std::vector<std::vector<MPoly>> sylvester(const MPoly& f, const MPoly& g, uint32_t var,
                                          int& m, int& n) {
  m = f.degree_in(var);
  n = g.degree_in(var);
  auto fc = coeffs_in_var(f, var);
  auto gc = coeffs_in_var(g, var);
  size_t sz = size_t(m + n);
  std::vector<std::vector<MPoly>> S(sz, std::vector<MPoly>(sz, MPoly(f.field(), f.nvars())));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) S[i][i + k] = fc[m - k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) S[n + i][i + k] = gc[n - k];
  return S;
}

} // namespace

namespace detail {

MPoly resultant_bareiss(const MPoly& f, const MPoly& g, uint32_t var) {
  const auto& F = f.field();
  int m, n;
  auto S = sylvester(f, g, var, m, n);
  size_t sz = size_t(m + n);
  MPoly zero(F, f.nvars());
  MPoly prev = MPoly::constant(F, f.nvars(), F->one());
  bool negate = false;
  for (size_t k = 0; k + 1 < sz; ++k) {
    if (S[k][k].is_zero()) {
      size_t r = k + 1;
      while (r < sz && S[r][k].is_zero()) ++r;
      if (r == sz) return zero;
      std::swap(S[k], S[r]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < sz; ++i) {
      for (size_t j = k + 1; j < sz; ++j) {
        MPoly t = mp_sub(mp_mul(S[k][k], S[i][j]), mp_mul(S[i][k], S[k][j]));
        S[i][j] = t.is_zero() ? t : mp_divexact(t, prev);
      }
      S[i][k] = zero;
    }
    prev = S[k][k];
  }
  MPoly det = S[sz - 1][sz - 1];
  return negate ? mp_neg(det) : det;
}

MPoly resultant_interp(const MPoly& f, const MPoly& g, uint32_t var) {
  const auto& F = f.field();
  // the single active variable besides var
  uint32_t other = 3;
  for (uint32_t v = 0; v < f.nvars(); ++v)
    if (v != var && (f.degree_in(v) > 0 || g.degree_in(v) > 0)) other = v;
  if (other == 3) throw gf::FieldError("resultant_interp: no active second variable");

  int m = f.degree_in(var), n = g.degree_in(var);
  int dxf = f.degree_in(other), dxg = g.degree_in(other);
  uint64_t need = uint64_t(n) * uint64_t(std::max(dxf, 0)) +
                  uint64_t(m) * uint64_t(std::max(dxg, 0)) + 1;

  // working field with at least `need` elements, tabled, containing F
  FieldPtr E = F;
  gf::Embedding emb;
  bool embedded = false;
  if (F->order_u64() < need) {
    uint32_t mult = 1;
    uint64_t sz = F->order_u64();
    while (sz < need) {
      ++mult;
      sz = 1;
      bool over = false;
      for (uint32_t i = 0; i < F->k() * mult; ++i) {
        sz *= F->p();
        if (sz > gf::Field::kTableLimit) {
          over = true;
          break;
        }
      }
      if (over) return resultant_bareiss(f, g, var); // cannot table a big enough field
    }
    E = gf::Field::make(F->p(), F->k() * mult, mix_seed(F->seed(), 0xe57));
    emb = gf::make_embedding(F, E);
    embedded = true;
  }
  const Tables T = E->tables();

  // Sylvester entries as univariate coefficient arrays (logs) over E
  auto entry_coeffs = [&](const MPoly& c) {
    std::vector<uint32_t> out(size_t(std::max(c.degree_in(other), 0) + 1), 0);
    for (auto& [e, co] : c.terms()) {
      Fq ce = embedded ? emb.apply(co) : co;
      out[e[other]] = ce.s;
    }
    if (c.is_zero()) out.assign(1, 0);
    return out;
  };
  int mm, nn;
  auto S = sylvester(f, g, var, mm, nn);
  size_t sz = size_t(mm + nn);
  std::vector<std::vector<std::vector<uint32_t>>> SC(sz);
  for (size_t i = 0; i < sz; ++i) {
    SC[i].reserve(sz);
    for (size_t j = 0; j < sz; ++j) SC[i].push_back(entry_coeffs(S[i][j]));
  }

  // evaluate det at nodes 0, g^0, g^1, ... (element s-codes 0, 1, 2, ...)
  std::vector<uint32_t> xs(need), ys(need);
  std::vector<std::vector<uint32_t>> M(sz, std::vector<uint32_t>(sz));
  for (uint64_t node = 0; node < need; ++node) {
    uint32_t x = uint32_t(node); // s-code: 0 = zero, l+1 = g^l
    xs[node] = x;
    for (size_t i = 0; i < sz; ++i)
      for (size_t j = 0; j < sz; ++j) {
        const auto& cs = SC[i][j];
        uint32_t acc = 0;
        for (size_t d = cs.size(); d-- > 0;) acc = tab::add(T, tab::mul(T, acc, x), cs[d]);
        M[i][j] = acc;
      }
    // in-place elimination
    uint32_t det = 1; // log-code of 1
    bool neg = false, zero = false;
    for (size_t c = 0; c < sz && !zero; ++c) {
      size_t pr = c;
      while (pr < sz && M[pr][c] == 0) ++pr;
      if (pr == sz) {
        zero = true;
        break;
      }
      if (pr != c) {
        std::swap(M[pr], M[c]);
        neg = !neg;
      }
      det = tab::mul(T, det, M[c][c]);
      uint32_t piv_inv = tab::inv(T, M[c][c]);
      for (size_t i = c + 1; i < sz; ++i) {
        if (M[i][c] == 0) continue;
        uint32_t fct = tab::mul(T, M[i][c], piv_inv);
        for (size_t j = c; j < sz; ++j)
          M[i][j] = tab::sub(T, M[i][j], tab::mul(T, fct, M[c][j]));
      }
    }
    if (zero)
      ys[node] = 0;
    else
      ys[node] = neg ? tab::neg(T, det) : det;
  }

  // Newton interpolation over E in raw codes
  size_t N = size_t(need);
  std::vector<uint32_t> dd = ys;
  for (size_t j = 1; j < N; ++j)
    for (size_t i = N - 1; i >= j; --i) {
      uint32_t num = tab::sub(T, dd[i], dd[i - 1]);
      uint32_t den = tab::sub(T, xs[i], xs[i - j]);
      dd[i] = tab::mul(T, num, tab::inv(T, den));
      if (i == j) break;
    }
  // expand sum dd[i] * prod_{l<i} (x - xs[l]) via Horner
  std::vector<uint32_t> acc(1, dd[N - 1]);
  for (size_t i = N - 1; i-- > 0;) {
    std::vector<uint32_t> nxt(acc.size() + 1, 0);
    uint32_t negx = tab::neg(T, xs[i]);
    for (size_t d = 0; d < acc.size(); ++d) {
      nxt[d + 1] = tab::add(T, nxt[d + 1], acc[d]);
      nxt[d] = tab::add(T, nxt[d], tab::mul(T, acc[d], negx));
    }
    nxt[0] = tab::add(T, nxt[0], dd[i]);
    acc = std::move(nxt);
  }

  // back to an MPoly over F
  MPoly out(F, f.nvars());
  for (size_t d = 0; d < acc.size(); ++d) {
    if (acc[d] == 0) continue;
    Fq ce{acc[d], {}};
    Fq cf;
    if (embedded) {
      auto s = emb.section(ce);
      if (!s) throw gf::FieldError("resultant_interp: coefficient escaped the base field");
      cf = *s;
    } else {
      cf = ce;
    }
    Expo e{0, 0, 0};
    e[other] = uint16_t(d);
    out.add_term(e, cf);
  }
  return out;
}

} // namespace detail

MPoly resultant(const MPoly& f, const MPoly& g, uint32_t var) {
  if (f.degree_in(var) < 1 || g.degree_in(var) < 1) throw DegreeZero();
  uint32_t actives = 0;
  for (uint32_t v = 0; v < std::max(f.nvars(), g.nvars()); ++v)
    if (v != var && (f.degree_in(v) > 0 || g.degree_in(v) > 0)) ++actives;
  if (actives == 1 && f.field()->tabled() && f.field()->order_fits_u64())
    return detail::resultant_interp(f, g, var);
  return detail::resultant_bareiss(f, g, var);
}

// ---------------------------------------------------------------------------
// bivariate gcd
// ---------------------------------------------------------------------------

namespace {

// content of f viewed in F[vx][vy]: monic gcd of the vy-coefficients
UniPoly content_in(const MPoly& f, uint32_t vx, uint32_t vy) {
  UniPoly c(f.field());
  for (auto& part : coeffs_in_var(f, vy)) {
    if (part.is_zero()) continue;
    c = gf::upoly_gcd(c, to_univariate(part, vx));
    if (c.deg() == 0) break;
  }
  return c;
}

MPoly strip_content(const MPoly& f, uint32_t vx, uint32_t vy, UniPoly* cont = nullptr) {
  UniPoly c = content_in(f, vx, vy);
  if (cont) *cont = c;
  if (c.deg() <= 0) {
    MPoly r = f.is_zero() ? f : mp_scale(f, f.field()->inv(c.coeff(0)));
    return r;
  }
  return mp_divexact(f, from_univariate(c, vx, f.nvars()));
}

// pseudo-remainder of a by b in vy (b nonzero, deg_vy b >= 1)
MPoly prem_in(MPoly a, const MPoly& b, uint32_t vx, uint32_t vy) {
  (void)vx;
  const auto& F = a.field();
  int db = b.degree_in(vy);
  MPoly lb = coeffs_in_var(b, vy)[size_t(db)];
  while (!a.is_zero() && a.degree_in(vy) >= db) {
    int da = a.degree_in(vy);
    MPoly la = coeffs_in_var(a, vy)[size_t(da)];
    Expo sh{};
    sh[vy] = uint16_t(da - db);
    MPoly shift = MPoly::monomial(F, a.nvars(), sh, F->one());
    a = mp_sub(mp_mul(lb, a), mp_mul(mp_mul(la, shift), b));
  }
  return a;
}

} // namespace

MPoly mp_gcd_bivariate(const MPoly& a, const MPoly& b, uint32_t var_x, uint32_t var_y) {
  const auto& F = a.field() ? a.field() : b.field();
  uint32_t nv = std::max(a.nvars(), b.nvars());
  for (uint32_t v = 0; v < nv; ++v)
    if (v != var_x && v != var_y && (a.degree_in(v) > 0 || b.degree_in(v) > 0))
      throw gf::FieldError("mp_gcd_bivariate: extra active variable");
  auto normalize = [&](const MPoly& f) {
    return f.is_zero() ? f : mp_scale(f, F->inv(f.leading_coeff()));
  };
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  UniPoly ca, cb;
  MPoly A = strip_content(a, var_x, var_y, &ca);
  MPoly B = strip_content(b, var_x, var_y, &cb);
  UniPoly cg = gf::upoly_gcd(ca, cb);
  if (A.degree_in(var_y) < B.degree_in(var_y)) std::swap(A, B);
  MPoly prim = MPoly::constant(F, nv, F->one());
  while (B.degree_in(var_y) > 0) {
    MPoly R = prem_in(A, B, var_x, var_y);
    if (R.is_zero()) {
      prim = B;
      break;
    }
    A = std::move(B);
    B = strip_content(R, var_x, var_y);
  }
  return normalize(mp_mul(prim, from_univariate(cg, var_x, nv)));
}

MPoly map_coefficients(const gf::Embedding& emb, const MPoly& f) {
  MPoly r(emb.big, f.nvars());
  for (auto& [e, c] : f.terms()) r.add_term(e, emb.apply(c));
  return r;
}

// ---------------------------------------------------------------------------
// text form
// ---------------------------------------------------------------------------

std::string mp_to_string(const MPoly& f) {
  if (f.is_zero()) return "0";
  const auto& F = f.field();
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    os << F->to_string(c) << " *";
    for (uint32_t v = 0; v < std::max(f.nvars(), 1u); ++v)
      os << " x" << v << "^" << e[v];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// linear algebra
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<Fq>> kernel_tabled(const Matrix& Min) {
  const auto& F = Min.field();
  const Tables T = F->tables();
  size_t R = Min.rows(), C = Min.cols();
  std::vector<std::vector<uint32_t>> M(R, std::vector<uint32_t>(C));
  for (size_t i = 0; i < R; ++i)
    for (size_t j = 0; j < C; ++j) M[i][j] = Min.at(i, j).s;
  std::vector<int> pivot_of_col(C, -1);
  size_t r = 0;
  for (size_t c = 0; c < C && r < R; ++c) {
    size_t pr = r;
    while (pr < R && M[pr][c] == 0) ++pr;
    if (pr == R) continue;
    std::swap(M[pr], M[r]);
    uint32_t inv = tab::inv(T, M[r][c]);
    for (size_t j = c; j < C; ++j) M[r][j] = tab::mul(T, M[r][j], inv);
    for (size_t i = 0; i < R; ++i) {
      if (i == r || M[i][c] == 0) continue;
      uint32_t fct = M[i][c];
      for (size_t j = c; j < C; ++j)
        M[i][j] = tab::sub(T, M[i][j], tab::mul(T, fct, M[r][j]));
    }
    pivot_of_col[c] = int(r);
    ++r;
  }
  std::vector<std::vector<Fq>> basis;
  for (size_t cf = 0; cf < C; ++cf) {
    if (pivot_of_col[cf] >= 0) continue;
    std::vector<Fq> v(C, Fq{});
    v[cf] = Fq{1, {}}; // log-code of 1
    for (size_t c = 0; c < C; ++c) {
      int pr = pivot_of_col[c];
      if (pr < 0) continue;
      uint32_t val = M[size_t(pr)][cf];
      if (val) v[c] = Fq{tab::neg(T, val), {}};
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace

std::vector<std::vector<Fq>> kernel_basis(const Matrix& Min) {
  const auto& F = Min.field();
  if (F->tabled()) return kernel_tabled(Min);
  size_t R = Min.rows(), C = Min.cols();
  std::vector<std::vector<Fq>> M(R, std::vector<Fq>(C));
  for (size_t i = 0; i < R; ++i)
    for (size_t j = 0; j < C; ++j) M[i][j] = Min.at(i, j);
  std::vector<int> pivot_of_col(C, -1);
  size_t r = 0;
  for (size_t c = 0; c < C && r < R; ++c) {
    size_t pr = r;
    while (pr < R && F->is_zero(M[pr][c])) ++pr;
    if (pr == R) continue;
    std::swap(M[pr], M[r]);
    Fq inv = F->inv(M[r][c]);
    for (size_t j = c; j < C; ++j) M[r][j] = F->mul(M[r][j], inv);
    for (size_t i = 0; i < R; ++i) {
      if (i == r || F->is_zero(M[i][c])) continue;
      Fq fct = M[i][c];
      for (size_t j = c; j < C; ++j)
        M[i][j] = F->sub(M[i][j], F->mul(fct, M[r][j]));
    }
    pivot_of_col[c] = int(r);
    ++r;
  }
  std::vector<std::vector<Fq>> basis;
  for (size_t cf = 0; cf < C; ++cf) {
    if (pivot_of_col[cf] >= 0) continue;
    std::vector<Fq> v(C, F->zero());
    v[cf] = F->one();
    for (size_t c = 0; c < C; ++c) {
      int pr = pivot_of_col[c];
      if (pr < 0) continue;
      if (!F->is_zero(M[size_t(pr)][cf])) v[c] = F->neg(M[size_t(pr)][cf]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

UniPoly newton_interpolate(const FieldPtr& F, const std::vector<Fq>& xs,
                           const std::vector<Fq>& ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw gf::FieldError("newton_interpolate: bad node/value counts");
  size_t N = xs.size();
  std::vector<Fq> dd = ys;
  for (size_t j = 1; j < N; ++j)
    for (size_t i = N - 1; i >= j; --i) {
      Fq num = F->sub(dd[i], dd[i - 1]);
      Fq den = F->sub(xs[i], xs[i - j]);
      dd[i] = F->div(num, den);
      if (i == j) break;
    }
  UniPoly acc = UniPoly::constant(F, dd[N - 1]);
  for (size_t i = N - 1; i-- > 0;) {
    UniPoly shift(F);
    shift.c = {F->neg(xs[i]), F->one()};
    acc = upoly_add(upoly_mul(acc, shift), UniPoly::constant(F, dd[i]));
  }
  return acc;
}

} // namespace poly
} // namespace cdual
