#include "cdual/ideals.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>
#include <utility>

namespace cdual {
namespace ideals {

using gf::UniPoly;
using poly::Expo;
using poly::GrlexGreater;
using poly::MPoly;

namespace {

bool expo_divides(const Expo& a, const Expo& b) {
  return a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2];
}

Expo expo_sub(const Expo& a, const Expo& b) {
  return Expo{uint16_t(a[0] - b[0]), uint16_t(a[1] - b[1]), uint16_t(a[2] - b[2])};
}

Expo expo_lcm(const Expo& a, const Expo& b) {
  return Expo{std::max(a[0], b[0]), std::max(a[1], b[1]), std::max(a[2], b[2])};
}

Expo expo_add(const Expo& a, const Expo& b) {
  return Expo{uint16_t(a[0] + b[0]), uint16_t(a[1] + b[1]), uint16_t(a[2] + b[2])};
}

// full normal form of f under division by divisors (tried in stored order)
MPoly reduce_full(const MPoly& f, const std::vector<MPoly>& divisors) {
  const auto& F = f.field();
  MPoly rem(F, f.nvars());
  MPoly cur = f;
  while (!cur.is_zero()) {
    Expo le = cur.leading_expo();
    Fq lc = cur.leading_coeff();
    bool hit = false;
    for (auto& g : divisors) {
      if (g.is_zero()) continue;
      Expo ge = g.leading_expo();
      if (!expo_divides(ge, le)) continue;
      Fq c = F->mul(lc, F->inv(g.leading_coeff()));
      MPoly t = MPoly::monomial(F, cur.nvars(), expo_sub(le, ge), c);
      cur = poly::mp_sub(cur, poly::mp_mul(t, g));
      hit = true;
      break;
    }
    if (!hit) {
      rem.set_term(le, lc);
      cur.set_term(le, Fq{});
    }
  }
  return rem;
}

struct QueuedPair {
  Expo l;
  uint32_t i, j;
  bool operator<(const QueuedPair& o) const {
    if (l != o.l) return GrlexGreater{}(o.l, l); // smaller lcm first
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
};

} // namespace

GroebnerBasis buchberger(const std::vector<MPoly>& gens) {
  GroebnerBasis out;
  for (auto& g : gens) {
    if (!g.field()) continue;
    if (!out.field)
      out.field = g.field();
    else if (out.field != g.field())
      throw gf::FieldError("buchberger: generators over different fields");
    out.nvars = std::max(out.nvars, g.nvars());
  }
  if (!out.field) throw gf::FieldError("buchberger: empty generator list");
  const auto& F = out.field;

  std::vector<MPoly> G;
  for (auto& g : gens)
    if (!g.is_zero()) G.push_back(poly::mp_scale(g, F->inv(g.leading_coeff())));

  std::set<QueuedPair> queue;
  for (uint32_t i = 0; i < G.size(); ++i)
    for (uint32_t j = i + 1; j < G.size(); ++j)
      queue.insert({expo_lcm(G[i].leading_expo(), G[j].leading_expo()), i, j});

  while (!queue.empty()) {
    QueuedPair qp = *queue.begin();
    queue.erase(queue.begin());
    Expo ei = G[qp.i].leading_expo(), ej = G[qp.j].leading_expo();
    Expo l = expo_lcm(ei, ej);
    if (l == expo_add(ei, ej)) continue; // coprime leading monomials
    MPoly s = poly::mp_sub(
        poly::mp_mul(MPoly::monomial(F, out.nvars, expo_sub(l, ei), F->one()), G[qp.i]),
        poly::mp_mul(MPoly::monomial(F, out.nvars, expo_sub(l, ej), F->one()), G[qp.j]));
    MPoly r = reduce_full(s, G);
    if (r.is_zero()) continue;
    r = poly::mp_scale(r, F->inv(r.leading_coeff()));
    uint32_t n = uint32_t(G.size());
    G.push_back(std::move(r));
    for (uint32_t k = 0; k < n; ++k)
      queue.insert({expo_lcm(G[k].leading_expo(), G[n].leading_expo()), k, n});
  }

  // minimalize: keep only generators with minimal leading monomials
  std::vector<uint32_t> order(G.size());
  for (uint32_t i = 0; i < G.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    Expo ea = G[a].leading_expo(), eb = G[b].leading_expo();
    if (ea != eb) return GrlexGreater{}(eb, ea); // ascending leading monomial
    return a < b;
  });
  std::vector<MPoly> kept;
  for (uint32_t idx : order) {
    Expo e = G[idx].leading_expo();
    bool redundant = false;
    for (auto& k : kept)
      if (expo_divides(k.leading_expo(), e)) {
        redundant = true;
        break;
      }
    if (!redundant) kept.push_back(G[idx]);
  }

  // tail-reduce to the unique reduced basis
  for (int pass = 0; pass < 256; ++pass) {
    bool changed = false;
    for (size_t i = 0; i < kept.size(); ++i) {
      std::vector<MPoly> others;
      for (size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(kept[j]);
      MPoly r = reduce_full(kept[i], others);
      r = poly::mp_scale(r, F->inv(r.leading_coeff()));
      if (r != kept[i]) {
        kept[i] = std::move(r);
        changed = true;
      }
    }
    if (!changed) break;
    if (pass == 255) throw std::logic_error("buchberger: tail reduction did not settle");
  }

  std::sort(kept.begin(), kept.end(), [](const MPoly& a, const MPoly& b) {
    return GrlexGreater{}(a.leading_expo(), b.leading_expo());
  });
  out.generators = std::move(kept);
  return out;
}

MPoly normal_form(const MPoly& f, const GroebnerBasis& gb) {
  if (f.field() && gb.field && f.field() != gb.field)
    throw gf::FieldError("normal_form: field mismatch");
  return reduce_full(f, gb.generators);
}

uint64_t zero_dim_degree(const GroebnerBasis& gb) {
  const uint32_t nv = gb.nvars ? gb.nvars : 1;
  std::array<uint32_t, 3> bound{0, 0, 0};
  std::array<bool, 3> have{false, false, false};
  for (uint32_t v = nv; v < 3; ++v) {
    have[v] = true;
    bound[v] = 1;
  }
  for (auto& g : gb.generators) {
    Expo e = g.leading_expo();
    int nz = -1;
    bool pure = true;
    for (uint32_t v = 0; v < 3; ++v)
      if (e[v]) {
        if (nz >= 0) {
          pure = false;
          break;
        }
        nz = int(v);
      }
    if (!pure) continue;
    if (nz < 0) return 0; // the ideal contains a unit
    if (!have[nz] || e[nz] < bound[nz]) {
      have[nz] = true;
      bound[nz] = e[nz];
    }
  }
  for (uint32_t v = 0; v < nv; ++v)
    if (!have[v]) throw NotZeroDimensional();
  uint64_t prod = uint64_t(bound[0]) * bound[1] * bound[2];
  if (prod > (1u << 22)) throw std::logic_error("zero_dim_degree: staircase too large");
  uint64_t count = 0;
  Expo e{};
  for (e[0] = 0; e[0] < bound[0]; ++e[0])
    for (e[1] = 0; e[1] < bound[1]; ++e[1])
      for (e[2] = 0; e[2] < bound[2]; ++e[2]) {
        bool standard = true;
        for (auto& g : gb.generators)
          if (expo_divides(g.leading_expo(), e)) {
            standard = false;
            break;
          }
        if (standard) ++count;
      }
  return count;
}

// ---------------------------------------------------------------------------
// intersection numbers
// ---------------------------------------------------------------------------

namespace {

// restriction f(x, 0) as a univariate polynomial in x
UniPoly restrict_y0(const MPoly& f) {
  UniPoly u(f.field());
  u.c.assign(size_t(std::max(f.degree_in(0), 0)) + 1, f.field()->zero());
  for (auto& [e, c] : f.terms())
    if (e[1] == 0) u.c[e[0]] = c;
  u.trim();
  return u;
}

// valuation at x = 0 of a nonzero univariate polynomial
uint64_t ord0(const UniPoly& u) {
  for (size_t i = 0; i < u.c.size(); ++i)
    if (!u.F->is_zero(u.c[i])) return i;
  throw std::logic_error("ord0: zero polynomial");
}

// exact division by the variable `var`
MPoly divide_by_var(const MPoly& f, uint32_t var) {
  MPoly r(f.field(), f.nvars());
  for (auto& [e, c] : f.terms()) {
    if (e[var] == 0) throw std::logic_error("divide_by_var: not divisible");
    Expo d = e;
    d[var] = uint16_t(d[var] - 1);
    r.set_term(d, c);
  }
  return r;
}

MPoly translate_to_origin(const MPoly& f, const std::array<Fq, 2>& P) {
  const auto& F = f.field();
  uint32_t nv = std::max(f.nvars(), 2u);
  std::vector<MPoly> im;
  for (uint32_t v = 0; v < nv; ++v) {
    MPoly x = MPoly::variable(F, nv, v);
    if (v < 2) x = poly::mp_add(x, MPoly::constant(F, nv, P[v]));
    im.push_back(std::move(x));
  }
  return poly::substitute(f, im);
}

} // namespace

Mult fulton_multiplicity(const MPoly& f0, const MPoly& g0, const std::array<Fq, 2>& P) {
  const FieldPtr& F = f0.field() ? f0.field() : g0.field();
  if (!F) throw gf::FieldError("fulton_multiplicity: no field");
  if (f0.field() && g0.field() && f0.field() != g0.field())
    throw gf::FieldError("fulton_multiplicity: fields differ");
  if (f0.degree_in(2) > 0 || g0.degree_in(2) > 0)
    throw gf::FieldError("fulton_multiplicity: inputs must involve x0, x1 only");

  MPoly a = translate_to_origin(f0, P);
  MPoly b = translate_to_origin(g0, P);
  const uint64_t cap =
      uint64_t(std::max(f0.total_degree(), 0)) * uint64_t(std::max(g0.total_degree(), 0));
  uint64_t acc = 0;
  uint64_t guard = 0;
  auto at_origin = [&](const MPoly& h) { return h.coeff(Expo{0, 0, 0}); };

  for (;;) {
    if (++guard > 4'000'000) throw std::logic_error("fulton_multiplicity: no convergence");
    bool az = a.is_zero(), bz = b.is_zero();
    if (az || bz) {
      if (az && bz) return std::nullopt;
      const MPoly& other = az ? b : a;
      return F->is_zero(at_origin(other)) ? Mult{} : Mult{acc};
    }
    if (!F->is_zero(at_origin(a)) || !F->is_zero(at_origin(b))) return acc;
    UniPoly ra = restrict_y0(a), rb = restrict_y0(b);
    if (ra.is_zero() && rb.is_zero()) return std::nullopt; // x1 divides both
    if (ra.is_zero()) {
      acc += ord0(rb);
      if (acc > cap) return std::nullopt;
      a = divide_by_var(a, 1);
      continue;
    }
    if (rb.is_zero()) {
      acc += ord0(ra);
      if (acc > cap) return std::nullopt;
      b = divide_by_var(b, 1);
      continue;
    }
    int r = ra.deg(), s = rb.deg();
    if (r > s) {
      std::swap(a, b);
      std::swap(ra, rb);
      std::swap(r, s);
    }
    Fq c = F->mul(rb.lc(), F->inv(ra.lc()));
    Expo sh{};
    sh[0] = uint16_t(s - r);
    b = poly::mp_sub(
        b, poly::mp_mul(MPoly::monomial(F, std::max(a.nvars(), b.nvars()), sh, c), a));
  }
}

uint64_t milnor_number(const MPoly& f, const std::array<Fq, 2>& P) {
  MPoly fx = poly::partial_derivative(f, 0);
  MPoly fy = poly::partial_derivative(f, 1);
  Mult m = fulton_multiplicity(fx, fy, P);
  if (!m) throw InfiniteMilnor();
  return *m;
}

// ---------------------------------------------------------------------------
// projective zeros
// ---------------------------------------------------------------------------

namespace {

// chart maps to two-variable polynomials; `keep` lists the surviving variables
MPoly to_chart(const MPoly& g, uint32_t keep0, uint32_t keep1) {
  MPoly r(g.field(), 2);
  for (auto& [e, c] : g.terms()) {
    Expo d{e[keep0], e[keep1], 0};
    r.add_term(d, c);
  }
  return r;
}

UniPoly sqf_or_unit(const UniPoly& u) {
  if (u.deg() < 1) return upoly_monic(u);
  return gf::squarefree_part(u);
}

// squarefree polynomial over the base field whose roots cover every x0-value
// attained on the chart zero set; assumes the system has no common curve
UniPoly chart_candidates(const std::vector<MPoly>& S, const FieldPtr& F, int depth) {
  if (depth > 64) throw std::logic_error("chart_candidates: recursion runaway");
  std::vector<UniPoly> constraints;
  std::vector<MPoly> ypos;
  for (auto& g : S) {
    if (g.is_zero()) continue;
    if (g.total_degree() == 0) return UniPoly::constant(F, F->one()); // chart empty
    if (g.degree_in(1) == 0)
      constraints.push_back(sqf_or_unit(to_univariate(g, 0)));
    else
      ypos.push_back(g);
  }
  for (size_t i = 0; i < ypos.size(); ++i)
    for (size_t j = i + 1; j < ypos.size(); ++j) {
      MPoly r = poly::resultant(ypos[i], ypos[j], 1);
      if (!r.is_zero()) constraints.push_back(sqf_or_unit(to_univariate(r, 0)));
    }
  if (!constraints.empty()) {
    UniPoly g(F);
    for (auto& c : constraints) {
      g = gf::upoly_gcd(g, c);
      if (g.deg() == 0) break;
    }
    return g;
  }
  // every pair of y-positive generators shares a factor: split off the gcd
  if (ypos.size() < 2)
    throw std::logic_error("chart_candidates: unconstrained system slipped through");
  MPoly c = poly::mp_gcd_bivariate(ypos[0], ypos[1], 0, 1);
  if (c.degree_in(1) < 1)
    throw std::logic_error("chart_candidates: vanishing resultants without a shared factor");
  std::vector<MPoly> s1{c}, s2{poly::mp_divexact(ypos[0], c), poly::mp_divexact(ypos[1], c)};
  for (size_t k = 2; k < ypos.size(); ++k) {
    s1.push_back(ypos[k]);
    s2.push_back(ypos[k]);
  }
  UniPoly u1 = chart_candidates(s1, F, depth + 1);
  UniPoly u2 = chart_candidates(s2, F, depth + 1);
  return sqf_or_unit(gf::upoly_mul(u1, u2));
}

// g(xi, y) over the extension holding xi
UniPoly eval_first_var(const MPoly& g, const gf::Embedding& emb, const Fq& xi) {
  const FieldPtr& L = emb.big;
  auto parts = poly::coeffs_in_var(g, 1);
  std::vector<Fq> out(parts.size(), L->zero());
  for (size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].is_zero()) continue;
    out[j] = gf::upoly_eval(emb.apply_poly(to_univariate(parts[j], 0)), xi);
  }
  return UniPoly(L, out);
}

// local quotient dimension at the origin, via saturation with powers of the
// maximal ideal (system already translated; stabilization of consecutive
// dimensions certifies the value)
uint64_t local_mult_origin(const std::vector<MPoly>& sys, const FieldPtr& F) {
  uint64_t prev = UINT64_MAX;
  for (uint32_t N = 1; N <= 64; ++N) {
    std::vector<MPoly> full = sys;
    for (uint32_t i = 0; i <= N; ++i)
      full.push_back(
          MPoly::monomial(F, 2, Expo{uint16_t(N - i), uint16_t(i), 0}, F->one()));
    uint64_t dim = zero_dim_degree(buchberger(full));
    if (dim == prev) return dim;
    prev = dim;
  }
  throw std::logic_error("local multiplicity did not stabilize");
}

// local multiplicity of an isolated chart zero: Fulton recursion for a pair,
// local quotient dimension otherwise (two cross-checkable routes)
uint64_t chart_local_mult(const std::vector<MPoly>& chart, const std::array<Fq, 2>& P) {
  if (chart.size() == 2) {
    Mult m = fulton_multiplicity(chart[0], chart[1], P);
    if (!m) throw NotFinite("infinite local multiplicity at an isolated point");
    return *m;
  }
  const FieldPtr& F = chart[0].field();
  std::vector<MPoly> sys;
  for (auto& g : chart) sys.push_back(translate_to_origin(g, P));
  return local_mult_origin(sys, F);
}

std::vector<MPoly> embed_chart(const std::vector<MPoly>& chart, const gf::Embedding& e) {
  std::vector<MPoly> out;
  for (auto& g : chart) out.push_back(poly::map_coefficients(e, g));
  return out;
}

} // namespace

uint64_t ZeroDimLocus::point_count() const {
  uint64_t n = 0;
  for (auto& c : classes) n += c.residue_degree;
  return n;
}

ZeroDimLocus projective_zeros(const std::vector<MPoly>& gens_in, bool with_multiplicities) {
  FieldPtr F;
  std::vector<MPoly> gens;
  for (auto& g : gens_in) {
    if (g.field()) {
      if (!F)
        F = g.field();
      else if (F != g.field())
        throw gf::FieldError("projective_zeros: generators over different fields");
    }
    if (g.is_zero()) continue;
    if (g.nvars() != 3 || !g.is_homogeneous())
      throw gf::FieldError("projective_zeros: generators must be homogeneous in 3 variables");
    gens.push_back(g);
  }
  if (!F || gens.empty()) throw NotFinite("no nonzero generators");

  ZeroDimLocus out;

  // ---- chart x2 = 1 -------------------------------------------------------
  std::vector<MPoly> chart;
  bool chart_empty = false;
  for (auto& g : gens) {
    MPoly c = to_chart(poly::set_var_to_one(g, 2), 0, 1);
    if (c.total_degree() == 0) {
      chart_empty = true; // a unit on this chart
      break;
    }
    chart.push_back(std::move(c));
  }
  if (!chart_empty) {
    MPoly common = chart[0];
    for (size_t i = 1; i < chart.size() && common.total_degree() > 0; ++i)
      common = poly::mp_gcd_bivariate(common, chart[i], 0, 1);
    if (common.total_degree() > 0)
      throw NotFinite("the generators share a curve through the x2-chart");

    UniPoly cand = chart_candidates(chart, F, 0);
    if (cand.deg() >= 1) {
      auto fac = gf::factor_univariate(cand, mix_seed(F->seed(), 0x1dea1));
      for (auto& [m, mult] : fac.factors) {
        (void)mult;
        auto cr = gf::roots_over_closure(m, mix_seed(F->seed(), 0x1dea2));
        auto& blk = cr.blocks.at(0);
        const FieldPtr& L = blk.ext;
        const Fq xi = blk.roots.at(0);
        const uint32_t dx = uint32_t(m.deg());

        UniPoly h(L);
        bool all_zero = true;
        for (auto& c : chart) {
          UniPoly fy = eval_first_var(c, blk.emb, xi);
          if (!fy.is_zero()) all_zero = false;
          h = gf::upoly_gcd(h, fy);
          if (h.deg() == 0 && !h.is_zero()) break;
        }
        if (all_zero) throw NotFinite("a vertical line lies in the zero set");
        if (h.deg() < 1) continue; // spurious candidate

        auto hfac = gf::factor_univariate(h, mix_seed(L->seed(), 0x1dea3));
        for (auto& [w, wmult] : hfac.factors) {
          (void)wmult;
          LocusClass cls;
          const uint32_t dy = uint32_t(w.deg());
          if (dy == 1) {
            Fq eta = L->neg(w.c[0]); // w monic linear
            cls.ext = L;
            cls.emb = blk.emb;
            cls.rep = {xi, eta, L->one()};
            cls.residue_degree = dx;
            if (with_multiplicities)
              cls.multiplicity = chart_local_mult(embed_chart(chart, blk.emb), {xi, eta});
          } else {
            auto cr2 = gf::roots_over_closure(w, mix_seed(L->seed(), 0x1dea4));
            auto& b2 = cr2.blocks.at(0);
            const FieldPtr& M = b2.ext;
            Fq xiM = b2.emb.apply(xi);
            Fq eta = b2.roots.at(0);
            cls.ext = M;
            cls.emb = gf::compose_embeddings(blk.emb, b2.emb);
            cls.rep = {xiM, eta, M->one()};
            cls.residue_degree = dx * dy;
            if (with_multiplicities) {
              auto sys = embed_chart(embed_chart(chart, blk.emb), b2.emb);
              cls.multiplicity = chart_local_mult(sys, {xiM, eta});
            }
          }
          out.classes.push_back(std::move(cls));
        }
      }
    }
  }

  // ---- line x2 = 0, x1 = 1 -------------------------------------------------
  {
    UniPoly u(F);
    bool any_nonzero = false, unit = false;
    for (auto& g : gens) {
      UniPoly r(F);
      r.c.assign(size_t(std::max(g.degree_in(0), 0)) + 1, F->zero());
      for (auto& [e, c] : g.terms())
        if (e[2] == 0) r.c[e[0]] = F->add(r.c[e[0]], c);
      r.trim();
      if (r.is_zero()) continue;
      any_nonzero = true;
      if (r.deg() == 0) {
        unit = true;
        break;
      }
      u = gf::upoly_gcd(u, r);
      if (u.deg() == 0) {
        unit = true;
        break;
      }
    }
    if (!any_nonzero) throw NotFinite("the line x2 = 0 lies in the zero set");
    if (!unit && u.deg() >= 1) {
      auto fac = gf::factor_univariate(u, mix_seed(F->seed(), 0x1dea5));
      for (auto& [m, mult] : fac.factors) {
        (void)mult;
        auto cr = gf::roots_over_closure(m, mix_seed(F->seed(), 0x1dea6));
        auto& blk = cr.blocks.at(0);
        LocusClass cls;
        cls.ext = blk.ext;
        cls.emb = blk.emb;
        cls.rep = {blk.roots.at(0), blk.ext->one(), blk.ext->zero()};
        cls.residue_degree = uint32_t(m.deg());
        if (with_multiplicities) {
          std::vector<MPoly> c1;
          for (auto& g : gens) c1.push_back(to_chart(poly::set_var_to_one(g, 1), 0, 2));
          cls.multiplicity =
              chart_local_mult(embed_chart(c1, blk.emb), {blk.roots.at(0), blk.ext->zero()});
        }
        out.classes.push_back(std::move(cls));
      }
    }
  }

  // ---- the point [1:0:0] ----------------------------------------------------
  {
    bool on = true;
    for (auto& g : gens)
      if (!F->is_zero(poly::mp_eval(g, {F->one(), F->zero(), F->zero()}))) {
        on = false;
        break;
      }
    if (on) {
      LocusClass cls;
      cls.ext = F;
      cls.emb = gf::identity_embedding(F);
      cls.rep = {F->one(), F->zero(), F->zero()};
      cls.residue_degree = 1;
      if (with_multiplicities) {
        std::vector<MPoly> c0;
        for (auto& g : gens) c0.push_back(to_chart(poly::set_var_to_one(g, 0), 1, 2));
        cls.multiplicity = chart_local_mult(c0, {F->zero(), F->zero()});
      }
      out.classes.push_back(std::move(cls));
    }
  }

  return out;
}

} // namespace ideals
} // namespace cdual
