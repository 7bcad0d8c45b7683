#include "cdual/census.hpp"

#include <algorithm>
#include <sstream>

namespace cdual::census {

using gf::Fq;
using gf::FieldPtr;
using gf::UniPoly;
using solve::QuotRing;
using solve::YPoly;

namespace {

bool fq_zero(const Fq& a) { return a.s == 0 && a.v.empty(); }

uint32_t char_of(uint32_t q) {
  for (uint32_t f = 2;; ++f)
    if (q % f == 0) return f;
}

std::string coords_str(const FieldPtr& F, const Fq& a) {
  auto c = F->coords(a);
  std::ostringstream os;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << ",";
    os << c[i];
  }
  return os.str();
}

std::string tensor_note(const curves::Curve& C) {
  std::ostringstream os;
  os << "tensor over GF(" << C.field->p() << "^" << C.field->k() << "):";
  for (size_t i = 0; i < 27; ++i) os << " [" << coords_str(C.field, C.a[i]) << "]";
  return os.str();
}

UniPoly sqf(const UniPoly& u) {
  if (u.deg() < 1) return u;
  return gf::squarefree_part(u);
}

// ---- chart elimination -----------------------------------------------------

// squarefree polynomial over the base field whose roots cover every value of
// the first chart coordinate attained on the chart zero set; nullopt when a
// nonzero-constant generator makes the chart locus plainly empty
std::optional<UniPoly> chart_candidate(const std::vector<MPoly>& chart,
                                       const FieldPtr& E) {
  std::vector<UniPoly> constraints;
  std::vector<const MPoly*> ypos;
  for (auto& g : chart) {
    if (g.is_zero()) continue;
    if (g.total_degree() == 0) return std::nullopt;
    if (g.degree_in(1) == 0)
      constraints.push_back(sqf(poly::to_univariate(g, 0)));
    else
      ypos.push_back(&g);
  }
  for (size_t i = 0; i < ypos.size(); ++i)
    for (size_t j = i + 1; j < ypos.size(); ++j) {
      MPoly r = poly::resultant(*ypos[i], *ypos[j], 1);
      if (!r.is_zero()) constraints.push_back(sqf(poly::to_univariate(r, 0)));
    }
  if (constraints.empty())
    throw ideals::NotFinite("chart system admits no finite elimination");
  UniPoly g(E);
  for (auto& c : constraints) {
    g = gf::upoly_gcd(g, c);
    if (!g.is_zero() && g.deg() == 0) break;
  }
  return g;
}

// one conjugacy block of a chart locus: x-part irreducible over E, fiber
// monic squarefree over E[x]/(m)
struct Block {
  UniPoly m;
  YPoly w;
};

std::vector<Block> chart_blocks(const std::vector<MPoly>& chart,
                                const FieldPtr& E, uint64_t seed) {
  auto cand = chart_candidate(chart, E);
  std::vector<Block> out;
  if (!cand || cand->deg() < 1) return out;
  auto fac = gf::factor_univariate(*cand, mix_seed(seed, 0xb10c1));
  for (auto& [m, mult] : fac.factors) {
    (void)mult;
    QuotRing R{E, m};
    YPoly w;
    bool all_zero = true;
    for (auto& g : chart) {
      if (g.is_zero()) continue;
      YPoly yg = solve::ypoly_from_bivariate(R, g);
      if (solve::ypoly_is_zero(yg)) continue;
      all_zero = false;
      w = solve::ypoly_gcd(R, w, yg);
      if (solve::ypoly_deg(w) == 0) break;
    }
    if (all_zero)
      throw ideals::NotFinite("a vertical line lies in the chart zero set");
    if (solve::ypoly_deg(w) <= 0) continue; // spurious candidate factor
    out.push_back({m, solve::ypoly_radical(R, w)});
  }
  return out;
}

// the chart polynomial's restriction to the second chart coordinate = 0
UniPoly line_restrict(const MPoly& two_var) {
  const FieldPtr& F = two_var.field();
  UniPoly r(F);
  r.c.assign(size_t(std::max(two_var.degree_in(0), 0)) + 1, F->zero());
  for (auto& [e, c] : two_var.terms())
    if (e[1] == 0) r.c[e[0]] = F->add(r.c[e[0]], c);
  r.trim();
  return r;
}

// irreducible blocks of the locus cut by homogeneous generators on the open
// line {x2 = 0, x1 != 0}, coordinate x0/x1
std::vector<UniPoly> line_blocks(const std::vector<MPoly>& gens,
                                 const FieldPtr& E, uint64_t seed) {
  UniPoly u(E);
  bool any = false;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    UniPoly r = line_restrict(solve::chart_poly(g, 1));
    if (r.is_zero()) continue;
    any = true;
    u = gf::upoly_gcd(u, r);
    if (u.deg() == 0) break;
  }
  if (!any) throw ideals::NotFinite("the line x2 = 0 lies in the zero set");
  std::vector<UniPoly> out;
  if (u.deg() < 1) return out;
  auto fac = gf::factor_univariate(sqf(u), mix_seed(seed, 0xb10c2));
  for (auto& [m, mult] : fac.factors) {
    (void)mult;
    out.push_back(m);
  }
  return out;
}

// a class on the open line {x2 = 0, x1 != 0} from an irreducible x0/x1-part
ideals::LocusClass line_class(const UniPoly& m, uint64_t seed) {
  auto cr = gf::roots_over_closure(m, mix_seed(seed, 0x71e));
  auto& b = cr.blocks.at(0);
  ideals::LocusClass cls;
  cls.ext = b.ext;
  cls.emb = b.emb;
  cls.rep = {b.roots.at(0), b.ext->one(), b.ext->zero()};
  cls.residue_degree = uint32_t(m.deg());
  return cls;
}

// blocks small enough to materialize over explicit extensions
bool small_block(const FieldPtr& E, uint32_t x_degree) {
  return uint64_t(E->k()) * x_degree <= 48;
}

} // namespace

SingCensus singularity_census(const dual::DualCurve& D, const curves::Curve& C) {
  const MPoly& h = D.H;
  const FieldPtr& E = h.field();
  if (!E || C.field != E)
    throw gf::FieldError("census: dual and source member must share one field");
  auto certs = solve::make_node_certificates(h);
  std::array<MPoly, 3> dh = {poly::partial_derivative(h, 0),
                             poly::partial_derivative(h, 1),
                             poly::partial_derivative(h, 2)};

  SingCensus out;
  uint64_t seed = mix_seed(E->seed(), 0xce9505);

  auto add_node = [&](uint32_t stratum, uint32_t dx, uint32_t dy) {
    SingRecord r;
    r.stratum = stratum;
    r.points = uint64_t(dx) * dy;
    r.x_degree = dx;
    r.fiber_degree = dy;
    r.kind = SingKind::node;
    r.mu = 1;
    r.branches = 2;
    out.node_count += r.points;
    out.records.push_back(std::move(r));
  };
  auto add_unknown = [&](uint32_t stratum, uint32_t dx, uint32_t dy) {
    SingRecord r;
    r.stratum = stratum;
    r.points = uint64_t(dx) * dy;
    r.x_degree = dx;
    r.fiber_degree = dy;
    r.kind = SingKind::unknown;
    out.unknown_count += r.points;
    out.records.push_back(std::move(r));
  };
  auto add_deep = [&](uint32_t stratum, const ideals::LocusClass& cls) {
    auto prof = solve::classify_singular_class(h, certs, C, cls, true);
    SingRecord r;
    r.stratum = stratum;
    r.points = cls.residue_degree;
    r.x_degree = cls.residue_degree;
    r.fiber_degree = 1;
    r.mu = prof.mu;
    r.branches = prof.branches;
    if (prof.node_certified && *prof.node_certified) {
      r.kind = SingKind::node;
      out.node_count += r.points;
    } else if (prof.mu && prof.branches) {
      r.kind = SingKind::special;
      out.special_count += r.points;
    } else {
      r.kind = SingKind::unknown;
      out.unknown_count += r.points;
    }
    r.cls = cls;
    out.records.push_back(std::move(r));
  };

  // ---- stratum 2: chart x2 = 1 ----
  {
    auto [u, v] = solve::chart_pair(2);
    std::vector<MPoly> chart = {solve::chart_poly(h, 2),
                                solve::chart_poly(dh[u], 2),
                                solve::chart_poly(dh[v], 2)};
    MPoly Nc = solve::chart_poly(certs.N[2], 2);
    for (auto& blk : chart_blocks(chart, E, mix_seed(seed, 2))) {
      QuotRing R{E, blk.m};
      uint32_t dx = uint32_t(blk.m.deg());
      uint32_t dw = uint32_t(solve::ypoly_deg(blk.w));
      YPoly nz = solve::ypoly_rem(R, solve::ypoly_from_bivariate(R, Nc), blk.w);
      YPoly bad = solve::ypoly_gcd(R, nz, blk.w);
      uint32_t dbad = uint32_t(std::max(solve::ypoly_deg(bad), 0));
      if (dw > dbad) add_node(2, dx, dw - dbad);
      if (dbad > 0) {
        if (small_block(E, dx))
          for (auto& cls :
               solve::materialize_block(blk.m, bad, 2, mix_seed(seed, 0x3a7)))
            add_deep(2, cls);
        else
          add_unknown(2, dx, dbad);
      }
    }
  }

  // ---- stratum 1: line x2 = 0, x1 != 0 ----
  {
    std::vector<MPoly> gens = {h, dh[0], dh[1], dh[2]};
    UniPoly nline = line_restrict(solve::chart_poly(certs.N[1], 1));
    for (auto& m : line_blocks(gens, E, mix_seed(seed, 1))) {
      uint32_t dx = uint32_t(m.deg());
      // m irreducible: the certificate is a unit mod m or vanishes throughout
      if (!gf::upoly_rem(nline, m).is_zero()) {
        add_node(1, dx, 1);
      } else if (small_block(E, dx)) {
        add_deep(1, line_class(m, mix_seed(seed, 0x9a1)));
      } else {
        add_unknown(1, dx, 1);
      }
    }
  }

  // ---- stratum 0: the point [1:0:0] ----
  {
    std::array<Fq, 3> P = {E->one(), E->zero(), E->zero()};
    bool sing = fq_zero(poly::mp_eval(h, P)) && fq_zero(poly::mp_eval(dh[0], P)) &&
                fq_zero(poly::mp_eval(dh[1], P)) && fq_zero(poly::mp_eval(dh[2], P));
    if (sing) {
      if (!fq_zero(poly::mp_eval(certs.N[0], P))) {
        add_node(0, 1, 1);
      } else {
        ideals::LocusClass cls{E, gf::identity_embedding(E), P, 1, std::nullopt};
        add_deep(0, cls);
      }
    }
  }

  return out;
}

FlexCensus flex_census(const curves::Curve& C) {
  const FieldPtr& E = C.field;
  const uint32_t q = C.q;
  MPoly F = curves::expand_curve(C);
  std::array<curves::Line, 3> aux = {
      curves::make_line(E, {E->one(), E->zero(), E->zero()}),
      curves::make_line(E, {E->zero(), E->one(), E->zero()}),
      curves::make_line(E, {E->zero(), E->zero(), E->one()})};
  std::vector<MPoly> Sc = {F};
  std::vector<MPoly> Sh = {F};
  for (auto& L : aux) Sc.push_back(curves::flex_scheme(C, L));
  Sh.insert(Sh.end(), Sc.begin() + 1, Sc.end());
  for (auto& L : aux) Sh.push_back(curves::flex_scheme_coefficient(C, L, q + 1));

  FlexCensus out;
  uint64_t seed = mix_seed(E->seed(), 0xf1e7);
  uint64_t cand_pts = 0, hyper_pts = 0;

  // a block's point count with the chart origin (a coordinate vertex)
  // excluded; the vertex lies in the block iff the x-part is exactly x and
  // the fiber has a root at 0
  auto pts_sans_vertex = [&](const Block& blk) {
    uint64_t pts = uint64_t(blk.m.deg()) * uint64_t(solve::ypoly_deg(blk.w));
    if (blk.m.deg() == 1 && fq_zero(blk.m.c[0]) && blk.w[0].is_zero()) pts -= 1;
    return pts;
  };
  auto is_vertex_rep = [&](const ideals::LocusClass& cls) {
    int nz = 0;
    for (auto& x : cls.rep)
      if (!(x.s == 0 && x.v.empty())) ++nz;
    return nz == 1;
  };

  // ---- stratum 2 ----
  std::vector<Block> cand2;
  {
    std::vector<MPoly> cc, ch;
    for (auto& g : Sc) cc.push_back(solve::chart_poly(g, 2));
    for (auto& g : Sh) ch.push_back(solve::chart_poly(g, 2));
    cand2 = chart_blocks(cc, E, mix_seed(seed, 0x2c));
    for (auto& blk : cand2) cand_pts += pts_sans_vertex(blk);
    for (auto& blk : chart_blocks(ch, E, mix_seed(seed, 0x2f)))
      hyper_pts += pts_sans_vertex(blk);
  }

  // ---- stratum 1 (x2 = 0, x1 != 0); the vertex [0:1:0] is the root x = 0 ----
  std::vector<UniPoly> cand1;
  {
    auto not_vertex = [&](const UniPoly& m) {
      return !(m.deg() == 1 && fq_zero(m.c[0]));
    };
    for (auto& m : line_blocks(Sc, E, mix_seed(seed, 0x1c)))
      if (not_vertex(m)) {
        cand_pts += uint64_t(m.deg());
        cand1.push_back(m);
      }
    for (auto& m : line_blocks(Sh, E, mix_seed(seed, 0x1f)))
      if (not_vertex(m)) hyper_pts += uint64_t(m.deg());
  }

  if (hyper_pts > cand_pts)
    throw std::logic_error("flex census: hyper locus exceeds candidate locus");

  // ---- the three coordinate vertices, audited directly ----
  uint64_t vert_flex = 0, vert_hyper = 0;
  for (uint32_t i = 0; i < 3; ++i) {
    std::array<Fq, 3> x = {E->zero(), E->zero(), E->zero()};
    x[i] = E->one();
    curves::ProjPoint P = curves::make_point(E, x);
    if (!curves::on_curve(C, P)) continue;
    auto mlt = curves::line_mult(C, curves::gauss_map(C, P), P);
    bool hyper = !mlt || *mlt > uint64_t(q) + 1;
    bool flex = mlt && *mlt == uint64_t(q) + 1;
    if (!hyper && !flex) continue;
    if (hyper)
      ++vert_hyper;
    else
      ++vert_flex;
    FlexRecord r;
    r.stratum = 2 - i; // [0:0:1] lives in stratum 2, [0:1:0] in 1, [1:0:0] in 0
    r.points = 1;
    r.x_degree = 1;
    r.fiber_degree = 1;
    r.hyper = hyper;
    r.cls = ideals::LocusClass{E, gf::identity_embedding(E), x, 1, std::nullopt};
    out.records.push_back(std::move(r));
  }

  out.flex_count = (cand_pts - hyper_pts) + vert_flex;
  out.hyperflex_count = hyper_pts + vert_hyper;

  // ---- records for the non-vertex candidate blocks, audited when small ----
  auto audit = [&](const ideals::LocusClass& cls) -> std::optional<bool> {
    if (!solve::affordable_eval(cls.ext)) return std::nullopt;
    curves::Curve Cl = curves::base_change(C, cls.emb);
    curves::ProjPoint P = curves::make_point(cls.ext, cls.rep);
    auto mlt = curves::line_mult(Cl, curves::gauss_map(Cl, P), P);
    if (!mlt) return true;
    if (*mlt <= uint64_t(q))
      throw std::logic_error("flex census: tangency certificate violated");
    return *mlt > uint64_t(q) + 1;
  };
  auto push_block = [&](uint32_t stratum, uint32_t dx, uint32_t dy) {
    FlexRecord r;
    r.stratum = stratum;
    r.points = uint64_t(dx) * dy;
    r.x_degree = dx;
    r.fiber_degree = dy;
    if (out.hyperflex_count == 0) r.hyper = false;
    out.records.push_back(std::move(r));
  };
  for (auto& blk : cand2) {
    uint32_t dx = uint32_t(blk.m.deg());
    if (small_block(E, dx)) {
      for (auto& cls :
           solve::materialize_block(blk.m, blk.w, 2, mix_seed(seed, 0x2e))) {
        if (is_vertex_rep(cls)) continue;
        FlexRecord r;
        r.stratum = 2;
        r.points = cls.residue_degree;
        r.x_degree = cls.residue_degree;
        r.fiber_degree = 1;
        r.hyper = audit(cls);
        if (!r.hyper && out.hyperflex_count == 0) r.hyper = false;
        r.cls = cls;
        out.records.push_back(std::move(r));
      }
    } else {
      push_block(2, dx, uint32_t(solve::ypoly_deg(blk.w)));
    }
  }
  for (auto& m : cand1) {
    uint32_t dx = uint32_t(m.deg());
    if (small_block(E, dx)) {
      ideals::LocusClass cls = line_class(m, mix_seed(seed, 0x1e));
      FlexRecord r;
      r.stratum = 1;
      r.points = dx;
      r.x_degree = dx;
      r.fiber_degree = 1;
      r.hyper = audit(cls);
      if (!r.hyper && out.hyperflex_count == 0) r.hyper = false;
      r.cls = cls;
      out.records.push_back(std::move(r));
    } else {
      push_block(1, dx, 1);
    }
  }

  return out;
}

uint64_t genus_smooth(uint64_t d) {
  if (d <= 2) return 0;
  return (d - 1) * (d - 2) / 2;
}

uint64_t genus_from_census(uint32_t dual_degree, const SingCensus& cen) {
  uint64_t sum = 0;
  for (auto& r : cen.records) {
    if (!r.mu || !r.branches) throw IncompleteCensus();
    sum += r.points * (*r.mu + *r.branches - 1);
  }
  if (sum % 2 != 0) throw OddSum();
  uint64_t g0 = genus_smooth(dual_degree);
  if (sum / 2 > g0)
    throw gf::FieldError("census correction exceeds the arithmetic genus");
  return g0 - sum / 2;
}

uint64_t generic_node_count(uint32_t q) {
  uint64_t Q = q;
  return Q * (Q * Q + Q + 1) * (Q * Q * Q + 3 * Q * Q + 3 * Q - 1) / 2;
}

uint64_t generic_flex_count(uint32_t q) {
  uint64_t Q = q;
  return (Q * Q * Q + 2 * Q * Q - Q + 1) * (Q * Q + Q + 1);
}

uint64_t fermat_node_count(uint32_t q) {
  uint64_t d = uint64_t(q) * q + q + 1;
  return d * d * (uint64_t(q) * q - q) / 2;
}

uint64_t fermat_special_count(uint32_t q) { return 3 * (uint64_t(q) * q + q + 1); }

uint64_t fermat_special_mu(uint32_t q) { return uint64_t(q) * q * (q + 1); }

std::vector<CensusReport> verify_theorem1(uint32_t q, uint64_t seed,
                                          uint32_t trials, uint32_t ext_k) {
  const uint32_t p = char_of(q);
  const uint64_t d = uint64_t(q) * q + q + 1;
  const uint32_t de = dual::expected_dual_degree(q);
  std::vector<CensusReport> out;
  for (uint32_t t = 0; t < trials; ++t) {
    FieldPtr E = gf::Field::make(p, ext_k, mix_seed(seed, 0xe0 + t));
    CensusReport rep;
    std::string notes;
    uint32_t resamples = 0;
    for (uint32_t attempt = 0;; ++attempt) {
      uint64_t ms = mix_seed(seed, uint64_t(t) * 0x100 + attempt + 1);
      curves::Curve C = curves::random_curve(q, E, ms);
      CensusReport r;
      r.q = q;
      r.seed = seed;
      r.trial = t;
      r.member = C;
      bool genericity_throw = false;
      try {
        dual::DualCurve D = dual::dual_curve_interpolate(C, de, mix_seed(ms, 0xd));
        r.dual_degree = D.degree;
        r.degree_ok = (D.degree == de);
        r.dual_verified = dual::verify_dual(C, D, mix_seed(ms, 0x7)).all_ok();
        SingCensus cen = singularity_census(D, C);
        r.node_count = cen.node_count;
        r.special_count = cen.special_count;
        r.unknown_count = cen.unknown_count;
        for (auto& rec : cen.records)
          if (rec.kind != SingKind::node) r.specials.push_back(rec);
        r.nodes_ok = (cen.special_count == 0 && cen.unknown_count == 0);
        r.delta_ok = (cen.node_count == generic_node_count(q));
        FlexCensus fx = flex_census(C);
        r.flex_count = fx.flex_count;
        r.hyperflex_count = fx.hyperflex_count;
        r.flex_ok =
            (fx.flex_count == generic_flex_count(q) && fx.hyperflex_count == 0);
        r.genus_source = genus_smooth(d);
        try {
          r.genus_dual = genus_from_census(r.dual_degree, cen);
          r.genus_ok = (r.genus_dual == r.genus_source);
        } catch (const gf::FieldError& e) {
          r.genus_ok = false;
          notes += std::string("genus: ") + e.what() + "; ";
        }
      } catch (const gf::FieldError& e) {
        notes += "attempt " + std::to_string(attempt) + ": " + e.what() + "; ";
        genericity_throw = true;
      }
      if (!genericity_throw) {
        r.pass = r.degree_ok && r.dual_verified && r.nodes_ok && r.delta_ok &&
                 r.flex_ok && r.special_ok && r.bh_ok && r.dual_equal_ok &&
                 r.genus_ok;
        rep = r;
      } else {
        r.pass = false;
        rep = r;
      }
      if (rep.pass || attempt >= 2) break;
      ++resamples;
    }
    rep.resamples = resamples;
    if (!rep.pass && rep.member)
      notes += "offending " + tensor_note(*rep.member);
    rep.note = notes;
    out.push_back(std::move(rep));
  }
  return out;
}

CensusReport verify_theorem2(uint32_t q) {
  const uint32_t p = char_of(q);
  const uint64_t d = uint64_t(q) * q + q + 1;
  const uint64_t seed = 0x7e20 + q;
  FieldPtr Fp = gf::Field::make(p, 1, seed);
  curves::Curve C = curves::fermat_curve(q, Fp);

  CensusReport rep;
  rep.q = q;
  rep.seed = seed;
  rep.member = C;

  dual::DualCurve Dc = dual::fermat_dual_closed_form(q, Fp);
  dual::DualCurve Di = dual::dual_curve_interpolate(C, Dc.degree, mix_seed(seed, 0xd));
  rep.dual_degree = Dc.degree;
  rep.dual_equal_ok = (Di.degree == Dc.degree) && (Di.H == Dc.H);
  rep.degree_ok = (Dc.degree == dual::expected_dual_degree(q));
  rep.dual_verified = dual::verify_dual(C, Dc, mix_seed(seed, 0x7)).all_ok();

  SingCensus cen = singularity_census(Dc, C);
  rep.node_count = cen.node_count;
  rep.special_count = cen.special_count;
  rep.unknown_count = cen.unknown_count;
  rep.delta_ok = (cen.node_count == fermat_node_count(q));
  rep.nodes_ok = (cen.unknown_count == 0);
  const uint64_t mu_want = fermat_special_mu(q);
  bool specials_good = (cen.special_count == fermat_special_count(q));
  for (auto& rec : cen.records) {
    if (rec.kind == SingKind::node) continue;
    rep.specials.push_back(rec);
    if (rec.kind != SingKind::special || !rec.mu || *rec.mu != mu_want ||
        !rec.branches || *rec.branches != 1)
      specials_good = false;
  }
  rep.special_ok = specials_good;

  MPoly hb = curves::ballico_hefez(q, Fp);
  std::vector<MPoly> bg = {hb};
  for (uint32_t i = 0; i < 3; ++i) {
    MPoly pd = poly::partial_derivative(hb, i);
    if (!pd.is_zero()) bg.push_back(std::move(pd));
  }
  rep.bh_ok =
      (ideals::projective_zeros(bg).point_count() == uint64_t(q) * (q - 1) / 2);

  rep.genus_source = genus_smooth(d);
  try {
    rep.genus_dual = genus_from_census(rep.dual_degree, cen);
    rep.genus_ok = (rep.genus_dual == rep.genus_source);
  } catch (const gf::FieldError& e) {
    rep.genus_ok = false;
    rep.note += std::string("genus: ") + e.what() + "; ";
  }

  rep.pass = rep.degree_ok && rep.dual_verified && rep.nodes_ok && rep.delta_ok &&
             rep.flex_ok && rep.special_ok && rep.bh_ok && rep.dual_equal_ok &&
             rep.genus_ok;
  return rep;
}

} // namespace cdual::census
