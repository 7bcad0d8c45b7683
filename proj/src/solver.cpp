#include "cdual/solver.hpp"

namespace cdual::solve {

using gf::Fq;
using gf::FieldPtr;
using poly::Expo;
using poly::MPoly;

namespace {
bool fq_zero(const Fq& a) { return a.s == 0 && a.v.empty(); }
} // namespace

MPoly hasse_derivative(const MPoly& f, uint32_t var, uint32_t r) {
  if (var >= f.nvars()) throw gf::FieldError("hasse_derivative: bad variable");
  if (r > 4) throw gf::FieldError("hasse_derivative: order > 4 not supported");
  if (r == 0) return f;
  const FieldPtr& F = f.field();
  MPoly out(F, f.nvars());
  for (const auto& [e, c] : f.terms()) {
    if (e[var] < r) continue;
    // binom(e[var], r) exactly; the running product is binom(e[var], i + 1),
    // so each division is exact and the value stays below 2^63 for r <= 4
    uint64_t b = 1;
    for (uint32_t i = 0; i < r; ++i) b = b * (e[var] - i) / (i + 1);
    Fq scale = F->from_int(b);
    if (F->is_zero(scale)) continue;
    Expo d = e;
    d[var] = static_cast<uint16_t>(e[var] - r);
    out.add_term(d, F->mul(c, scale));
  }
  return out;
}

MPoly node_failure_poly(const MPoly& f, uint32_t u, uint32_t v) {
  const FieldPtr& F = f.field();
  MPoly cross = hasse_derivative(hasse_derivative(f, u, 1), v, 1);
  MPoly quad = mp_mul(hasse_derivative(f, u, 2), hasse_derivative(f, v, 2));
  return mp_sub(mp_mul(cross, cross), mp_scale(quad, F->from_int(4)));
}

uint32_t stratum_of(const std::array<Fq, 3>& rep) {
  if (!fq_zero(rep[2])) return 2;
  if (!fq_zero(rep[1])) return 1;
  return 0;
}

std::array<uint32_t, 2> chart_pair(uint32_t stratum) {
  switch (stratum) {
    case 2: return {0, 1};
    case 1: return {0, 2};
    default: return {1, 2};
  }
}

MPoly chart_poly(const MPoly& f, uint32_t c) {
  MPoly g = set_var_to_one(f, c);
  auto [u, v] = chart_pair(c);
  MPoly out(g.field(), 2);
  for (const auto& [e, coef] : g.terms())
    out.add_term(Expo{e[u], e[v], 0}, coef);
  return out;
}

bool affordable_eval(const gf::FieldPtr& ext) {
  return ext->tabled() || ext->k() <= 256;
}

bool affordable_elim(const gf::FieldPtr& ext) { return ext->tabled(); }

// ---- R = E[x]/(m) ----------------------------------------------------------

gf::UniPoly QuotRing::red(const gf::UniPoly& a) const { return gf::upoly_rem(a, m); }

gf::UniPoly QuotRing::mul(const gf::UniPoly& a, const gf::UniPoly& b) const {
  return gf::upoly_rem(gf::upoly_mul(a, b), m);
}

gf::UniPoly QuotRing::inv(const gf::UniPoly& a) const { return gf::upoly_invmod(a, m); }

gf::UniPoly QuotRing::pth_root(const gf::UniPoly& a) const {
  if (a.is_zero()) return a;
  // |R| = p^(k deg m), so the Frobenius inverse is a -> a^(p^(k deg m - 1))
  return gf::upoly_frob_power(red(a), E->k() * uint32_t(m.deg()) - 1, m);
}

bool QuotRing::is_zero(const gf::UniPoly& a) const { return a.is_zero(); }

gf::UniPoly QuotRing::one() const {
  gf::UniPoly u(E);
  u.c = {E->one()};
  return u;
}

// ---- R[y] ------------------------------------------------------------------

int ypoly_deg(const YPoly& a) {
  for (size_t i = a.size(); i-- > 0;)
    if (!a[i].is_zero()) return int(i);
  return -1;
}

bool ypoly_is_zero(const YPoly& a) { return ypoly_deg(a) < 0; }

void ypoly_trim(YPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

YPoly ypoly_from_bivariate(const QuotRing& R, const poly::MPoly& f) {
  auto parts = poly::coeffs_in_var(f, 1);
  YPoly out(parts.size(), gf::UniPoly(R.E));
  for (size_t j = 0; j < parts.size(); ++j)
    if (!parts[j].is_zero()) out[j] = R.red(poly::to_univariate(parts[j], 0));
  ypoly_trim(out);
  return out;
}

YPoly ypoly_monic(const QuotRing& R, const YPoly& a) {
  int d = ypoly_deg(a);
  if (d < 0) throw gf::FieldError("ypoly_monic: zero polynomial");
  gf::UniPoly li = R.inv(a[size_t(d)]);
  YPoly out(size_t(d) + 1, gf::UniPoly(R.E));
  for (size_t i = 0; i + 1 < out.size(); ++i) out[i] = R.mul(a[i], li);
  out[size_t(d)] = R.one();
  return out;
}

YPoly ypoly_rem(const QuotRing& R, const YPoly& a, const YPoly& b) {
  int db = ypoly_deg(b);
  if (db < 0) throw gf::FieldError("ypoly_rem: zero divisor");
  YPoly r = a;
  ypoly_trim(r);
  for (int dr = ypoly_deg(r); dr >= db; dr = ypoly_deg(r)) {
    gf::UniPoly c = r[size_t(dr)];
    for (int i = 0; i < db; ++i)
      r[size_t(dr - db + i)] =
          gf::upoly_sub(r[size_t(dr - db + i)], R.mul(c, b[size_t(i)]));
    r[size_t(dr)] = gf::UniPoly(R.E);
    ypoly_trim(r);
  }
  return r;
}

YPoly ypoly_quo(const QuotRing& R, const YPoly& a, const YPoly& b) {
  int db = ypoly_deg(b);
  if (db < 0) throw gf::FieldError("ypoly_quo: zero divisor");
  YPoly r = a, q;
  ypoly_trim(r);
  int da = ypoly_deg(r);
  if (da < db) return {};
  q.assign(size_t(da - db) + 1, gf::UniPoly(R.E));
  for (int dr = ypoly_deg(r); dr >= db; dr = ypoly_deg(r)) {
    gf::UniPoly c = r[size_t(dr)];
    q[size_t(dr - db)] = c;
    for (int i = 0; i <= db; ++i)
      r[size_t(dr - db + i)] =
          gf::upoly_sub(r[size_t(dr - db + i)], R.mul(c, b[size_t(i)]));
    ypoly_trim(r);
  }
  return q;
}

YPoly ypoly_gcd(const QuotRing& R, YPoly a, YPoly b) {
  ypoly_trim(a);
  ypoly_trim(b);
  while (!ypoly_is_zero(b)) {
    YPoly bm = ypoly_monic(R, b);
    YPoly r = ypoly_rem(R, a, bm);
    a = std::move(bm);
    b = std::move(r);
  }
  if (ypoly_is_zero(a)) return a;
  return ypoly_monic(R, a);
}

YPoly ypoly_derivative(const QuotRing& R, const YPoly& a) {
  YPoly out;
  if (a.size() <= 1) return out;
  out.assign(a.size() - 1, gf::UniPoly(R.E));
  for (size_t i = 1; i < a.size(); ++i)
    out[i - 1] = gf::upoly_scale(a[i], R.E->from_int(i));
  ypoly_trim(out);
  return out;
}

YPoly ypoly_mul(const QuotRing& R, const YPoly& a, const YPoly& b) {
  int da = ypoly_deg(a), db = ypoly_deg(b);
  if (da < 0 || db < 0) return {};
  YPoly out(size_t(da + db) + 1, gf::UniPoly(R.E));
  for (int i = 0; i <= da; ++i) {
    if (a[size_t(i)].is_zero()) continue;
    for (int j = 0; j <= db; ++j) {
      if (b[size_t(j)].is_zero()) continue;
      out[size_t(i + j)] =
          gf::upoly_add(out[size_t(i + j)], R.mul(a[size_t(i)], b[size_t(j)]));
    }
  }
  ypoly_trim(out);
  return out;
}

YPoly ypoly_radical(const QuotRing& R, const YPoly& a) {
  if (ypoly_is_zero(a)) throw gf::FieldError("ypoly_radical: zero polynomial");
  YPoly am = ypoly_monic(R, a);
  if (ypoly_deg(am) == 0) return am;
  YPoly d = ypoly_derivative(R, am);
  if (ypoly_is_zero(d)) {
    // am = b(y^p): divided exponents, Frobenius roots on the coefficients
    uint32_t p = R.E->p();
    YPoly b(size_t(ypoly_deg(am)) / p + 1, gf::UniPoly(R.E));
    for (size_t i = 0; i < b.size(); ++i) b[i] = R.pth_root(am[i * p]);
    return ypoly_radical(R, b);
  }
  YPoly g = ypoly_gcd(R, am, d);
  if (ypoly_deg(g) == 0) return am;
  // separable part: every root whose multiplicity is not divisible by p,
  // once; the remaining roots live in g and are collected recursively
  YPoly s = ypoly_quo(R, am, g);
  YPoly rg = ypoly_radical(R, g);
  YPoly extra = ypoly_quo(R, rg, ypoly_gcd(R, rg, s));
  if (ypoly_is_zero(extra)) return s;
  return ypoly_mul(R, s, extra);
}

std::vector<ideals::LocusClass> materialize_block(const gf::UniPoly& m,
                                                  const YPoly& g,
                                                  uint32_t stratum,
                                                  uint64_t seed) {
  if (ypoly_deg(g) < 1)
    throw gf::FieldError("materialize_block: fiber must have positive degree");
  auto [u, v] = chart_pair(stratum);
  uint32_t dx = uint32_t(m.deg());
  auto cr = gf::roots_over_closure(m, mix_seed(seed, 0x5b1c));
  auto& blk = cr.blocks.at(0);
  const gf::FieldPtr& L = blk.ext;
  const gf::Fq xi = blk.roots.at(0);

  // fiber polynomial specialized at x = xi, now univariate over L
  gf::UniPoly gy(L);
  gy.c.assign(g.size(), L->zero());
  for (size_t j = 0; j < g.size(); ++j)
    if (!g[j].is_zero()) gy.c[j] = gf::upoly_eval(blk.emb.apply_poly(g[j]), xi);
  gy.trim();
  if (gy.is_zero())
    throw gf::FieldError("materialize_block: fiber vanished at the block root");

  std::vector<ideals::LocusClass> out;
  auto fac = gf::factor_univariate(gy, mix_seed(seed, 0x5b1d));
  for (auto& [w, mult] : fac.factors) {
    (void)mult;
    ideals::LocusClass cls;
    uint32_t dy = uint32_t(w.deg());
    Fq xi_out, eta;
    if (dy == 1) {
      cls.ext = L;
      cls.emb = blk.emb;
      xi_out = xi;
      eta = L->neg(w.c[0]);
    } else {
      auto cr2 = gf::roots_over_closure(w, mix_seed(seed, 0x5b1e));
      auto& b2 = cr2.blocks.at(0);
      cls.ext = b2.ext;
      cls.emb = gf::compose_embeddings(blk.emb, b2.emb);
      xi_out = b2.emb.apply(xi);
      eta = b2.roots.at(0);
    }
    cls.rep[stratum] = cls.ext->one();
    cls.rep[u] = xi_out;
    cls.rep[v] = eta;
    cls.residue_degree = dx * dy;
    out.push_back(std::move(cls));
  }
  return out;
}

NodeCertificates make_node_certificates(const MPoly& h) {
  NodeCertificates out;
  for (uint32_t s = 0; s < 3; ++s) {
    auto [u, v] = chart_pair(s);
    out.N[s] = node_failure_poly(h, u, v);
  }
  return out;
}

ClassProfile classify_singular_class(const MPoly& h,
                                     const NodeCertificates& certs,
                                     const curves::Curve& C,
                                     const ideals::LocusClass& cls,
                                     bool deep) {
  ClassProfile prof;
  uint32_t s = stratum_of(cls.rep);
  if (affordable_eval(cls.ext)) {
    MPoly Ne = map_coefficients(cls.emb, certs.N[s]);
    prof.node_certified = !fq_zero(mp_eval(Ne, cls.rep));
  }
  if (prof.node_certified && *prof.node_certified) {
    prof.mu = 1;
    prof.branches = 2;
    return prof;
  }
  if (!deep) return prof;
  if (affordable_elim(cls.ext)) {
    auto [u, v] = chart_pair(s);
    MPoly f2 = chart_poly(map_coefficients(cls.emb, h), s);
    try {
      prof.mu = ideals::milnor_number(f2, {cls.rep[u], cls.rep[v]});
    } catch (const ideals::InfiniteMilnor&) {
      // non-reduced local equation; leave mu unset
    }
    curves::Curve Cl = curves::base_change(C, cls.emb);
    curves::Line L = curves::make_line(cls.ext, cls.rep);
    auto fiber = curves::reduced_gauss_preimages(Cl, L);
    prof.branches = static_cast<uint32_t>(fiber.point_count());
  }
  return prof;
}

} // namespace cdual::solve
