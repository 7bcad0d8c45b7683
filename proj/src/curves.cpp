#include "cdual/curves.hpp"

#include <stdexcept>
#include <string>

namespace cdual::curves {

using gf::UniPoly;

uint32_t q_exponent(uint32_t p, uint32_t q) {
  if (p < 2 || q < 2) throw gf::FieldError("q must be a power of the characteristic");
  uint32_t e = 0;
  uint64_t v = 1;
  while (v < q) {
    v *= p;
    ++e;
  }
  if (v != q) throw gf::FieldError("q is not a power of the characteristic");
  // highest exponent anywhere in the module: q^3 + 2q^2 + 1 (tangency polynomial)
  uint64_t top = uint64_t(q) * q * q + 2 * uint64_t(q) * q + 1;
  if (top > 0xFFFF) throw gf::FieldError("q too large for 16-bit exponents");
  return e;
}

Curve make_curve(FieldPtr F, uint32_t q, std::array<Fq, 27> a) {
  if (!F) throw gf::FieldError("curve needs a coefficient field");
  q_exponent(F->p(), q);
  bool any = false;
  for (auto& c : a) any = any || !F->is_zero(c);
  if (!any) throw ZeroTensor();
  return Curve{std::move(F), q, std::move(a)};
}

MPoly expand_curve(const Curve& C) {
  const auto& F = C.field;
  MPoly out(F, 3);
  uint32_t q = C.q, q2 = q * q;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Fq& c = C.at(i, j, k);
        if (F->is_zero(c)) continue;
        Expo e{};
        e[size_t(i)] += 1;
        e[size_t(j)] = uint16_t(e[size_t(j)] + q);
        e[size_t(k)] = uint16_t(e[size_t(k)] + q2);
        out.add_term(e, c);
      }
  if (out.is_zero()) throw ZeroTensor();
  return out;
}

namespace {

// e_v = [v==i] + q [v==j] + q^2 [v==k] decodes uniquely: peel base-q digits
bool decode_expo(const Expo& e, uint32_t q, int& i, int& j, int& k) {
  std::array<uint32_t, 3> r{e[0], e[1], e[2]};
  if (r[0] + r[1] + r[2] != q * q + q + 1) return false;
  int out[3];
  for (int stage = 0; stage < 3; ++stage) {
    int found = -1;
    for (int v = 0; v < 3; ++v) {
      uint32_t m = r[size_t(v)] % q;
      if (m == 1) {
        if (found >= 0) return false;
        found = v;
      } else if (m != 0) {
        return false;
      }
    }
    if (found < 0) return false;
    out[stage] = found;
    r[size_t(found)] -= 1;
    for (auto& x : r) x /= q;
  }
  i = out[0];
  j = out[1];
  k = out[2];
  return true;
}

} // namespace

Curve collect_curve(const MPoly& F, uint32_t q) {
  const auto& K = F.field();
  if (!K || F.nvars() != 3 || F.is_zero())
    throw gf::FieldError("collect_curve: need a nonzero polynomial in 3 variables");
  std::array<Fq, 27> a{};
  for (const auto& [e, c] : F.terms()) {
    int i, j, k;
    if (!decode_expo(e, q, i, j, k))
      throw gf::FieldError("polynomial is not in the tensor family");
    a[size_t(9 * i + 3 * j + k)] = c;
  }
  return make_curve(K, q, a);
}

Curve fermat_curve(uint32_t q, FieldPtr F) {
  std::array<Fq, 27> a{};
  Fq one = F->one();
  for (int i = 0; i < 3; ++i) a[size_t(9 * i + 3 * i + i)] = one;
  return make_curve(std::move(F), q, a);
}

Curve random_curve(uint32_t q, FieldPtr F, uint64_t seed,
                   const std::function<bool(const Curve&)>& extra,
                   uint32_t* retries) {
  q_exponent(F->p(), q);
  Rng rng(mix_seed(seed, 0xc09e));
  const uint32_t kMaxDraws = 32;
  for (uint32_t attempt = 0; attempt < kMaxDraws; ++attempt) {
    std::array<Fq, 27> a{};
    bool any = false;
    for (auto& c : a) {
      c = F->sample(rng);
      any = any || !F->is_zero(c);
    }
    if (!any) continue; // the zero tensor is never returned
    Curve C{F, q, a};
    if (!is_smooth(C)) continue;
    if (extra && !extra(C)) continue;
    if (retries) *retries = attempt;
    return C;
  }
  throw GenericityFailure("all " + std::to_string(kMaxDraws) + " draws rejected");
}

Fq det3(const FieldPtr& F, const Mat3& T) {
  auto at = [&](int i, int l) { return T[size_t(3 * i + l)]; };
  Fq d{};
  d = F->add(d, F->mul(at(0, 0), F->sub(F->mul(at(1, 1), at(2, 2)), F->mul(at(1, 2), at(2, 1)))));
  d = F->sub(d, F->mul(at(0, 1), F->sub(F->mul(at(1, 0), at(2, 2)), F->mul(at(1, 2), at(2, 0)))));
  d = F->add(d, F->mul(at(0, 2), F->sub(F->mul(at(1, 0), at(2, 1)), F->mul(at(1, 1), at(2, 0)))));
  return d;
}

Curve transform_coordinates(const Curve& C, const Mat3& T) {
  const auto& F = C.field;
  if (F->is_zero(det3(F, T))) throw SingularMatrix();
  std::vector<MPoly> images;
  images.reserve(3);
  for (int i = 0; i < 3; ++i) {
    MPoly im(F, 3);
    for (int l = 0; l < 3; ++l) {
      Expo e{};
      e[size_t(l)] = 1;
      im.add_term(e, T[size_t(3 * i + l)]);
    }
    images.push_back(std::move(im));
  }
  return collect_curve(substitute(expand_curve(C), images), C.q);
}

Curve scale_curve(const Curve& C, const Fq& c) {
  if (C.field->is_zero(c)) throw gf::FieldError("scale_curve: zero scalar");
  Curve out = C;
  for (auto& x : out.a) x = C.field->mul(x, c);
  return out;
}

Curve base_change(const Curve& C, const gf::Embedding& emb) {
  if (emb.small != C.field)
    throw gf::FieldError("base_change: embedding domain is not the curve's field");
  Curve out;
  out.field = emb.big;
  out.q = C.q;
  for (size_t s = 0; s < 27; ++s) out.a[s] = emb.apply(C.a[s]);
  return out;
}

bool is_smooth(const Curve& C) {
  MPoly F = expand_curve(C);
  auto grad = gradient_polys(C);
  std::vector<MPoly> gens = {F};
  for (auto& g : grad)
    if (!g.is_zero()) gens.push_back(g);
  try {
    return ideals::projective_zeros(gens).classes.empty();
  } catch (const ideals::NotFinite&) {
    return false; // positive-dimensional singular locus
  }
}

namespace {

std::array<Fq, 3> normalize3(const FieldPtr& F, std::array<Fq, 3> x) {
  int last = -1;
  for (int v = 2; v >= 0; --v)
    if (!F->is_zero(x[size_t(v)])) {
      last = v;
      break;
    }
  if (last < 0) throw ZeroPoint();
  Fq s = F->inv(x[size_t(last)]);
  for (auto& c : x) c = F->mul(c, s);
  return x;
}

} // namespace

ProjPoint make_point(const FieldPtr& F, std::array<Fq, 3> x) {
  return ProjPoint{F, normalize3(F, std::move(x))};
}

Line make_line(const FieldPtr& F, std::array<Fq, 3> l) {
  return Line{F, normalize3(F, std::move(l))};
}

bool operator==(const ProjPoint& a, const ProjPoint& b) {
  return a.field == b.field && a.x == b.x;
}
bool operator==(const Line& a, const Line& b) {
  return a.field == b.field && a.l == b.l;
}

bool incident(const Line& L, const ProjPoint& P) {
  const auto& F = L.field;
  Fq s{};
  for (int v = 0; v < 3; ++v) s = F->add(s, F->mul(L.l[size_t(v)], P.x[size_t(v)]));
  return F->is_zero(s);
}

namespace {

// a^q and a^(q^2) via iterated Frobenius (q = p^e)
Fq pow_q(const FieldPtr& F, Fq a, uint32_t e) {
  for (uint32_t s = 0; s < e; ++s) a = F->frobenius(a);
  return a;
}

struct PointPowers {
  std::array<Fq, 3> x, xq, xq2;
};

PointPowers point_powers(const Curve& C, const ProjPoint& P) {
  const auto& F = C.field;
  uint32_t e = q_exponent(F->p(), C.q);
  PointPowers out;
  out.x = P.x;
  for (int v = 0; v < 3; ++v) {
    out.xq[size_t(v)] = pow_q(F, P.x[size_t(v)], e);
    out.xq2[size_t(v)] = pow_q(F, out.xq[size_t(v)], e);
  }
  return out;
}

std::array<Fq, 3> gradient_from_powers(const Curve& C, const PointPowers& pp) {
  const auto& F = C.field;
  std::array<Fq, 3> g{};
  for (int i = 0; i < 3; ++i) {
    Fq s{};
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Fq& c = C.at(i, j, k);
        if (F->is_zero(c)) continue;
        s = F->add(s, F->mul(c, F->mul(pp.xq[size_t(j)], pp.xq2[size_t(k)])));
      }
    g[size_t(i)] = s;
  }
  return g;
}

} // namespace

Fq eval_curve(const Curve& C, const ProjPoint& P) {
  if (P.field != C.field) throw gf::FieldError("point is not over the curve's field");
  const auto& F = C.field;
  auto pp = point_powers(C, P);
  auto g = gradient_from_powers(C, pp);
  Fq s{};
  for (int i = 0; i < 3; ++i) s = F->add(s, F->mul(pp.x[size_t(i)], g[size_t(i)]));
  return s; // sum_i x_i * dF/dx_i = F since deg = 1 mod p
}

bool on_curve(const Curve& C, const ProjPoint& P) {
  return C.field->is_zero(eval_curve(C, P));
}

std::array<Fq, 3> gradient_at(const Curve& C, const ProjPoint& P) {
  if (P.field != C.field) throw gf::FieldError("point is not over the curve's field");
  return gradient_from_powers(C, point_powers(C, P));
}

std::array<MPoly, 3> gradient_polys(const Curve& C) {
  const auto& F = C.field;
  uint32_t q = C.q, q2 = q * q;
  std::array<MPoly, 3> out{MPoly(F, 3), MPoly(F, 3), MPoly(F, 3)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Fq& c = C.at(i, j, k);
        if (F->is_zero(c)) continue;
        Expo e{};
        e[size_t(j)] = uint16_t(e[size_t(j)] + q);
        e[size_t(k)] = uint16_t(e[size_t(k)] + q2);
        out[size_t(i)].add_term(e, c);
      }
  return out;
}

std::array<MPoly, 3> reduced_gauss_polys(const Curve& C) {
  const auto& F = C.field;
  uint32_t q = C.q, e = q_exponent(F->p(), q);
  std::array<MPoly, 3> out{MPoly(F, 3), MPoly(F, 3), MPoly(F, 3)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Fq c = C.at(i, j, k);
        if (F->is_zero(c)) continue;
        for (uint32_t s = 0; s < e; ++s) c = F->pth_root(c);
        Expo ex{};
        ex[size_t(j)] += 1;
        ex[size_t(k)] = uint16_t(ex[size_t(k)] + q);
        out[size_t(i)].add_term(ex, c);
      }
  return out;
}

Line gauss_map(const Curve& C, const ProjPoint& P) {
  if (!on_curve(C, P)) throw NotOnCurve();
  auto g = gradient_at(C, P);
  const auto& F = C.field;
  if (F->is_zero(g[0]) && F->is_zero(g[1]) && F->is_zero(g[2])) throw SingularPoint();
  return make_line(F, g);
}

Line reduced_gauss(const Curve& C, const ProjPoint& P) {
  if (!on_curve(C, P)) throw NotOnCurve();
  const auto& F = C.field;
  uint32_t e = q_exponent(F->p(), C.q);
  std::array<Fq, 3> xq;
  for (int v = 0; v < 3; ++v) xq[size_t(v)] = pow_q(F, P.x[size_t(v)], e);
  std::array<Fq, 3> g{};
  for (int i = 0; i < 3; ++i) {
    Fq s{};
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Fq c = C.at(i, j, k);
        if (F->is_zero(c)) continue;
        for (uint32_t t = 0; t < e; ++t) c = F->pth_root(c);
        s = F->add(s, F->mul(c, F->mul(P.x[size_t(j)], xq[size_t(k)])));
      }
    g[size_t(i)] = s;
  }
  if (F->is_zero(g[0]) && F->is_zero(g[1]) && F->is_zero(g[2])) throw SingularPoint();
  return make_line(F, g);
}

namespace {

// deterministic second point on L, independent of P (which must lie on L)
std::array<Fq, 3> second_point_on_line(const FieldPtr& F, const std::array<Fq, 3>& l,
                                       const std::array<Fq, 3>& p) {
  int w = -1;
  for (int v = 0; v < 3; ++v)
    if (!F->is_zero(l[size_t(v)])) {
      w = v;
      break;
    }
  if (w < 0) throw gf::FieldError("zero line");
  int v1 = -1, v2 = -1;
  for (int v = 0; v < 3; ++v)
    if (v != w) (v1 < 0 ? v1 : v2) = v;
  auto basis = [&](int v) {
    std::array<Fq, 3> b{};
    b[size_t(v)] = F->one();
    b[size_t(w)] = F->neg(F->div(l[size_t(v)], l[size_t(w)]));
    return b;
  };
  // P = p[v1]*basis(v1) + p[v2]*basis(v2); pick the basis vector independent of P
  return F->is_zero(p[size_t(v2)]) ? basis(v2) : basis(v1);
}

} // namespace

std::optional<uint64_t> line_mult(const Curve& C, const Line& L, const ProjPoint& P) {
  const auto& F = C.field;
  if (L.field != F || P.field != F)
    throw gf::FieldError("line and point must live over the curve's field");
  if (!incident(L, P)) throw PointNotOnLine();
  auto R = second_point_on_line(F, L.l, P.x);

  uint32_t e = q_exponent(F->p(), C.q);
  uint32_t q = C.q, q2 = q * q;
  std::array<Fq, 3> pq, pq2, rq, rq2;
  for (int v = 0; v < 3; ++v) {
    pq[size_t(v)] = pow_q(F, P.x[size_t(v)], e);
    pq2[size_t(v)] = pow_q(F, pq[size_t(v)], e);
    rq[size_t(v)] = pow_q(F, R[size_t(v)], e);
    rq2[size_t(v)] = pow_q(F, rq[size_t(v)], e);
  }
  // F(P + sR) has s-exponents in {0,1} + {0,q} + {0,q^2}
  std::vector<Fq> c(size_t(q2 + q + 1) + 1, Fq{});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Fq& a = C.at(i, j, k);
        if (F->is_zero(a)) continue;
        for (int bi = 0; bi < 2; ++bi)
          for (int bj = 0; bj < 2; ++bj)
            for (int bk = 0; bk < 2; ++bk) {
              Fq t = F->mul(a, bi ? R[size_t(i)] : P.x[size_t(i)]);
              t = F->mul(t, bj ? rq[size_t(j)] : pq[size_t(j)]);
              t = F->mul(t, bk ? rq2[size_t(k)] : pq2[size_t(k)]);
              size_t ex = size_t(bi) + size_t(bj) * q + size_t(bk) * q2;
              c[ex] = F->add(c[ex], t);
            }
      }
  for (size_t d = 0; d < c.size(); ++d)
    if (!F->is_zero(c[d])) return d;
  return std::nullopt; // restriction identically zero: L inside the curve
}

// ---------------------------------------------------------------------------
// truncated power series and the branch parametrization
// ---------------------------------------------------------------------------

namespace {

struct Ps { // coefficients 0..n-1, representing a series mod t^n
  FieldPtr F;
  std::vector<Fq> c;
};

Ps ps_zero(const FieldPtr& F, size_t n) { return Ps{F, std::vector<Fq>(n)}; }

Ps ps_resize(const Ps& a, size_t n) {
  Ps r{a.F, a.c};
  r.c.resize(n);
  return r;
}

Ps ps_sub(const Ps& a, const Ps& b) {
  Ps r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.F->sub(a.c[i], b.c[i]);
  return r;
}

Ps ps_mul(const Ps& a, const Ps& b) {
  size_t n = a.c.size();
  Ps r = ps_zero(a.F, n);
  for (size_t i = 0; i < n; ++i) {
    if (a.F->is_zero(a.c[i])) continue;
    for (size_t j = 0; i + j < n; ++j) {
      if (a.F->is_zero(b.c[j])) continue;
      r.c[i + j] = a.F->add(r.c[i + j], a.F->mul(a.c[i], b.c[j]));
    }
  }
  return r;
}

Ps ps_inv(const Ps& a) {
  const auto& F = a.F;
  size_t n = a.c.size();
  Ps r = ps_zero(F, n);
  Fq u = F->inv(a.c[0]);
  r.c[0] = u;
  for (size_t m = 1; m < n; ++m) {
    Fq s{};
    for (size_t i = 1; i <= m; ++i) s = F->add(s, F->mul(a.c[i], r.c[m - i]));
    r.c[m] = F->neg(F->mul(s, u));
  }
  return r;
}

Ps ps_from_upoly(const FieldPtr& F, const UniPoly& u, size_t n) {
  Ps r = ps_zero(F, n);
  for (size_t i = 0; i < u.c.size() && i < n; ++i) r.c[i] = u.c[i];
  return r;
}

// f(x, t) with x-coefficient list fy (fy[d] = coefficient of x^d, a series in t)
Ps ps_eval_poly(const std::vector<UniPoly>& fy, const Ps& x) {
  const auto& F = x.F;
  size_t n = x.c.size();
  Ps r = ps_zero(F, n);
  for (size_t d = fy.size(); d-- > 0;) {
    r = ps_mul(r, x);
    Ps coeffd = ps_from_upoly(F, fy[d], n);
    for (size_t i = 0; i < n; ++i) r.c[i] = F->add(r.c[i], coeffd.c[i]);
  }
  return r;
}

std::vector<UniPoly> x_coefficients(const MPoly& f) {
  auto cf = coeffs_in_var(f, 0);
  std::vector<UniPoly> out;
  out.reserve(cf.size());
  for (auto& m : cf) out.push_back(to_univariate(m, 1));
  return out;
}

} // namespace

LocalParam local_parametrization_full(const Curve& C, const ProjPoint& P, uint32_t N) {
  const auto& F = C.field;
  if (!on_curve(C, P)) throw NotOnCurve();
  auto L = gradient_at(C, P);
  if (F->is_zero(L[0]) && F->is_zero(L[1]) && F->is_zero(L[2])) throw SingularPoint();

  // columns of T: a vector off the tangent line, a tangent direction, P itself
  int w = -1;
  for (int v = 0; v < 3; ++v)
    if (!F->is_zero(L[size_t(v)])) {
      w = v;
      break;
    }
  auto R = second_point_on_line(F, L, P.x);
  Mat3 T{};
  for (int i = 0; i < 3; ++i) {
    T[size_t(3 * i + 0)] = (i == w) ? F->one() : Fq{};
    T[size_t(3 * i + 1)] = R[size_t(i)];
    T[size_t(3 * i + 2)] = P.x[size_t(i)];
  }
  if (F->is_zero(det3(F, T))) throw AdaptationFailure();

  Curve A = transform_coordinates(C, T);
  const Fq& lead = A.at(0, 2, 2);
  if (F->is_zero(lead)) throw AdaptationFailure();
  A = scale_curve(A, F->inv(lead));
  if (!F->is_zero(A.at(2, 2, 2)) || !F->is_zero(A.at(1, 2, 2)))
    throw AdaptationFailure(); // cannot happen: P on curve, tangent = {y0 = 0}

  // affine equation f(x, y) = F_adapted(x, y, 1); solve x = phi(y) by lifting
  MPoly f = set_var_to_one(expand_curve(A), 2);
  auto fy = x_coefficients(f);
  auto fxy = x_coefficients(partial_derivative(f, 0));

  size_t n = size_t(N) + 1;
  Ps phi = ps_zero(F, 1);
  size_t prec = 1;
  while (prec < n) {
    prec = std::min(2 * prec, n);
    phi = ps_resize(phi, prec);
    Ps val = ps_eval_poly(fy, phi);
    Ps der = ps_eval_poly(fxy, phi);
    phi = ps_sub(phi, ps_mul(val, ps_inv(der)));
  }
  Ps residual = ps_eval_poly(fy, phi);
  for (auto& c : residual.c)
    if (!F->is_zero(c)) throw std::logic_error("branch lifting did not converge");

  PowerSeries series{F, N, std::move(phi.c)};
  return LocalParam{std::move(A), T, std::move(series)};
}

PowerSeries local_parametrization(const Curve& C, const ProjPoint& P, uint32_t N) {
  return local_parametrization_full(C, P, N).phi;
}

MPoly flex_scheme_coefficient(const Curve& C, const Line& aux, uint32_t m) {
  const auto& F = C.field;
  if (aux.field != F) throw gf::FieldError("auxiliary line must live over the curve's field");
  uint32_t q2 = C.q * C.q;
  if (m < 1 || m > q2 + C.q + 1)
    throw gf::FieldError("pencil coefficient order out of range");
  auto G = gradient_polys(C);
  const auto& u = aux.l;
  // Q = gradient x aux (dual cross product): a point on T_x C and on aux
  std::array<MPoly, 3> Q = {
      mp_sub(mp_scale(G[1], u[2]), mp_scale(G[2], u[1])),
      mp_sub(mp_scale(G[2], u[0]), mp_scale(G[0], u[2])),
      mp_sub(mp_scale(G[0], u[1]), mp_scale(G[1], u[0])),
  };
  // factor slots of F(x + sQ): each tensor entry a_ijk contributes
  // (x_i + s Q_i)(x_j^q + s^q Q_j^q)(x_k^(q^2) + s^(q^2) Q_k^(q^2)), so the
  // s^m coefficient collects the bit patterns with b0 + q b1 + q^2 b2 = m
  std::array<std::array<MPoly, 3>, 3> plain, bumped; // [position][variable]
  std::array<std::array<bool, 3>, 3> have{};
  for (uint32_t pos = 0; pos < 3; ++pos)
    for (uint32_t var = 0; var < 3; ++var) {
      uint32_t pw = pos == 0 ? 1 : (pos == 1 ? C.q : q2);
      Expo e{};
      e[var] = uint16_t(pw);
      plain[pos][var] = MPoly::monomial(F, 3, e, F->one());
    }
  auto factor = [&](uint32_t pos, uint32_t var, bool bump) -> const MPoly& {
    if (!bump) return plain[pos][var];
    if (!have[pos][var]) {
      uint32_t pw = pos == 0 ? 1 : (pos == 1 ? C.q : q2);
      bumped[pos][var] = pw == 1 ? Q[var] : mp_pow(Q[var], pw);
      have[pos][var] = true;
    }
    return bumped[pos][var];
  };
  MPoly phi(F, 3);
  for (uint32_t b0 = 0; b0 <= 1; ++b0)
    for (uint32_t b1 = 0; b1 <= 1; ++b1)
      for (uint32_t b2 = 0; b2 <= 1; ++b2) {
        if (b0 + C.q * b1 + q2 * b2 != m) continue;
        for (uint32_t i = 0; i < 3; ++i)
          for (uint32_t j = 0; j < 3; ++j)
            for (uint32_t k = 0; k < 3; ++k) {
              const Fq& c = C.at(int(i), int(j), int(k));
              if (F->is_zero(c)) continue;
              MPoly t = mp_mul(factor(0, i, b0 != 0), factor(1, j, b1 != 0));
              t = mp_mul(t, factor(2, k, b2 != 0));
              phi = mp_add(phi, mp_scale(t, c));
            }
      }
  return phi;
}

MPoly flex_scheme(const Curve& C, const Line& aux) {
  return flex_scheme_coefficient(C, aux, C.q);
}

void check_aux_line(const Curve& C, const Line& aux, const ProjPoint& P) {
  if (incident(aux, P)) throw AuxiliaryDegenerate();
  if (gauss_map(C, P) == aux) throw AuxiliaryDegenerate();
}

bool is_flex(const Curve& C, const ProjPoint& P) {
  Line T = gauss_map(C, P);
  auto m = line_mult(C, T, P);
  return m.has_value() && *m == uint64_t(C.q) + 1;
}

MPoly ballico_hefez(uint32_t q, FieldPtr F) {
  uint32_t p = F->p();
  uint32_t nu = q_exponent(p, q);
  auto mono = [&](int e0, int e1, int e2, const Fq& c) {
    return MPoly::monomial(F, 3, Expo{uint16_t(e0), uint16_t(e1), uint16_t(e2)}, c);
  };
  Fq one = F->one();
  MPoly h(F, 3);
  for (int v = 0; v < 3; ++v) {
    Expo e{};
    e[size_t(v)] = uint16_t(q + 1);
    h.add_term(e, one);
  }
  if (p == 2) {
    h = mp_add(h, mono(int(q), 0, 1, one));
    h = mp_add(h, mono(0, int(q), 1, one));
    h = mp_add(h, mono(1, 0, int(q), one));
    h = mp_add(h, mono(0, 1, int(q), one));
    MPoly lin = mp_add(mp_add(MPoly::variable(F, 3, 0), MPoly::variable(F, 3, 1)),
                       MPoly::variable(F, 3, 2));
    for (uint32_t i = 0; i < nu; ++i) {
      uint32_t w = 1u << i;
      MPoly head = mono(int(w), int(w), 0, one);
      h = mp_add(h, mp_mul(head, mp_pow(lin, q + 1 - 2 * w)));
    }
  } else {
    Fq neg1 = F->neg(one), neg2 = F->neg(F->from_int(2));
    h = mp_add(h, mono(int(q), 1, 0, neg1));
    h = mp_add(h, mono(int(q), 0, 1, neg1));
    h = mp_add(h, mono(1, int(q), 0, neg1));
    h = mp_add(h, mono(0, int(q), 1, neg1));
    h = mp_add(h, mono(1, 0, int(q), neg1));
    h = mp_add(h, mono(0, 1, int(q), neg1));
    MPoly quad(F, 3);
    quad = mp_add(quad, mono(2, 0, 0, one));
    quad = mp_add(quad, mono(0, 2, 0, one));
    quad = mp_add(quad, mono(0, 0, 2, one));
    quad = mp_add(quad, mono(1, 1, 0, neg2));
    quad = mp_add(quad, mono(0, 1, 1, neg2));
    quad = mp_add(quad, mono(1, 0, 1, neg2));
    h = mp_add(h, mp_pow(quad, (q + 1) / 2));
  }

  // validate against the curve this is supposed to cut out: images of points
  // on {x0 + x1 + x2 = 0} under coordinatewise (q+1)-th power
  FieldPtr E = F;
  gf::Embedding emb;
  uint32_t d = 1;
  { // smallest extension with at least 256 elements
    uint64_t sz = F->order_u64();
    uint64_t base = sz;
    while (sz < 256) {
      sz *= base;
      ++d;
    }
  }
  if (d == 1) {
    emb = gf::identity_embedding(F);
  } else {
    E = gf::Field::make(p, F->k() * d, mix_seed(F->seed(), 0xba11));
    emb = gf::make_embedding(F, E);
  }
  MPoly hE = map_coefficients(emb, h);
  Fq g = E->gen(), s = E->zero();
  for (int n = 0; n < 200; ++n) {
    Fq y0 = E->pow_u64(s, q + 1);
    Fq y2 = E->pow_u64(E->neg(E->add(s, E->one())), q + 1);
    if (!E->is_zero(mp_eval(hE, {y0, E->one(), y2})))
      throw CrossValidationFailure("image point " + std::to_string(n) +
                                   " does not satisfy the formula");
    s = n == 0 ? E->one() : E->mul(s, g);
  }
  return h;
}

ideals::ZeroDimLocus reduced_gauss_preimages(const Curve& C, const Line& y) {
  const auto& F = C.field;
  if (y.field != F) throw gf::FieldError("line must live over the curve's field");
  auto G = reduced_gauss_polys(C);
  std::vector<MPoly> gens = {expand_curve(C)};
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (auto& pr : pairs) {
    int i = pr[0], j = pr[1];
    MPoly m = mp_sub(mp_scale(G[size_t(j)], y.l[size_t(i)]),
                     mp_scale(G[size_t(i)], y.l[size_t(j)]));
    if (!m.is_zero()) gens.push_back(std::move(m));
  }
  auto locus = ideals::projective_zeros(gens);
  if (locus.classes.empty()) throw NotOnDual();
  return locus;
}

} // namespace cdual::curves
