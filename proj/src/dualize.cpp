#include "cdual/dualize.hpp"

#include <algorithm>
#include <set>

namespace cdual::dual {

using curves::Curve;
using curves::ProjPoint;
using gf::Fq;
using gf::FieldPtr;
using gf::UniPoly;
using poly::Expo;
using poly::MPoly;

uint32_t expected_dual_degree(uint32_t q) {
  return (q * q + q + 1) * (q + 1);
}

namespace {

std::vector<uint16_t> point_key(const FieldPtr& F, const std::array<Fq, 3>& x) {
  std::vector<uint16_t> key;
  for (auto& c : x) {
    auto v = F->coords(c);
    key.insert(key.end(), v.begin(), v.end());
    key.push_back(0xffff); // separator
  }
  return key;
}

} // namespace

ExtSamples sample_curve_points(const Curve& C, size_t count, uint64_t seed,
                               uint64_t min_order) {
  const auto& F = C.field;
  uint64_t need = std::max<uint64_t>(min_order, 3 * uint64_t(count));

  // smallest extension of F with at least `need` elements
  uint32_t mult = 1;
  {
    uint64_t sz = F->order_u64();
    while (sz < need) {
      ++mult;
      sz = 1;
      for (uint32_t i = 0; i < F->k() * mult; ++i) {
        sz *= F->p();
        if (sz >= need) break;
      }
    }
  }
  ExtSamples S;
  if (mult == 1) {
    S.ext = F;
    S.emb = gf::identity_embedding(F);
    S.lifted = C;
  } else {
    S.ext = gf::Field::make(F->p(), F->k() * mult, mix_seed(seed, 0xd0a1));
    S.emb = gf::make_embedding(F, S.ext);
    S.lifted = curves::base_change(C, S.emb);
  }

  const auto& E = S.ext;
  MPoly X = curves::expand_curve(S.lifted);
  Rng rng(mix_seed(seed, 0x5a3d));
  std::set<std::vector<uint16_t>> seen;
  size_t attempts = 0, cap = 64 * count + 256;
  while (S.pts.size() < count) {
    if (++attempts > cap)
      throw gf::FieldError("sample_curve_points: fiber sampling exhausted");
    Fq b = E->sample(rng), c = E->sample(rng);
    std::vector<MPoly> im = {MPoly::variable(E, 3, 0), MPoly::constant(E, 3, b),
                             MPoly::constant(E, 3, c)};
    UniPoly g = to_univariate(substitute(X, im), 0);
    if (g.deg() < 1) continue;
    for (auto& r : roots_in_field(g, mix_seed(seed, attempts))) {
      if (S.pts.size() >= count) break;
      auto P = curves::make_point(E, {r, b, c});
      if (seen.insert(point_key(E, P.x)).second) S.pts.push_back(P);
    }
  }
  return S;
}

namespace {

// columns: all degree-e exponent triples in the polynomial term order
// (descending powers of x0, then of x1)
std::vector<Expo> degree_columns(uint32_t e) {
  std::vector<Expo> cols;
  for (int a = int(e); a >= 0; --a)
    for (int b = int(e) - a; b >= 0; --b)
      cols.push_back(Expo{uint16_t(a), uint16_t(b), uint16_t(e - a - b)});
  return cols;
}

std::vector<Fq> eval_row(const FieldPtr& E, const std::vector<Expo>& cols,
                         uint32_t e, const std::array<Fq, 3>& y) {
  std::array<std::vector<Fq>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    pw[size_t(v)].resize(e + 1);
    pw[size_t(v)][0] = E->one();
    for (uint32_t i = 1; i <= e; ++i)
      pw[size_t(v)][i] = E->mul(pw[size_t(v)][i - 1], y[size_t(v)]);
  }
  std::vector<Fq> row(cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    row[j] = E->mul(E->mul(pw[0][cols[j][0]], pw[1][cols[j][1]]), pw[2][cols[j][2]]);
  return row;
}

struct Echelon {
  const FieldPtr& E;
  size_t cols;
  std::vector<std::vector<Fq>> rows; // normalized: leading entry 1
  std::vector<int> pivot_of_col;     // column -> row index or -1
  explicit Echelon(const FieldPtr& e, size_t c) : E(e), cols(c), pivot_of_col(c, -1) {}

  void absorb(std::vector<Fq> r) {
    for (size_t j = 0; j < cols; ++j) {
      if (E->is_zero(r[j])) continue;
      int pr = pivot_of_col[j];
      if (pr < 0) {
        Fq inv = E->inv(r[j]);
        for (size_t t = j; t < cols; ++t) r[t] = E->mul(r[t], inv);
        pivot_of_col[j] = int(rows.size());
        rows.push_back(std::move(r));
        return;
      }
      const auto& p = rows[size_t(pr)];
      Fq f = r[j];
      for (size_t t = j; t < cols; ++t) r[t] = E->sub(r[t], E->mul(f, p[t]));
    }
  }

  size_t rank() const { return rows.size(); }

  // kernel vector when the nullity is exactly 1 (unit at the free column)
  std::vector<Fq> kernel_vector() const {
    std::vector<Fq> x(cols, E->zero());
    size_t free_col = cols;
    for (size_t j = 0; j < cols; ++j)
      if (pivot_of_col[j] < 0) {
        free_col = j;
        break;
      }
    x[free_col] = E->one();
    for (size_t jj = cols; jj-- > 0;) {
      int pr = pivot_of_col[jj];
      if (pr < 0) continue;
      const auto& row = rows[size_t(pr)];
      Fq s = E->zero();
      for (size_t t = jj + 1; t < cols; ++t)
        if (!E->is_zero(x[t])) s = E->add(s, E->mul(row[t], x[t]));
      x[jj] = E->neg(s);
    }
    return x;
  }
};

} // namespace

DualCurve dual_curve_interpolate(const Curve& C, uint32_t degree_hint,
                                 uint64_t seed) {
  const auto& F = C.field;
  uint32_t q = C.q;
  uint32_t e_cap = degree_hint ? degree_hint : expected_dual_degree(q);

  auto n_for = [](uint32_t e) {
    size_t cols = size_t(e + 1) * (e + 2) / 2;
    return cols + cols / 5 + 8; // 1.2x oversample
  };

  // sample sources once, sized for the largest degree we may probe, and keep
  // the distinct tangent images
  ExtSamples S = sample_curve_points(C, n_for(e_cap) + 32, seed);
  const auto& E = S.ext;
  std::vector<std::array<Fq, 3>> images;
  {
    std::set<std::vector<uint16_t>> seen;
    uint64_t extra = 0;
    for (;;) {
      for (auto& P : S.pts) {
        auto y = curves::reduced_gauss(S.lifted, P);
        if (seen.insert(point_key(E, y.l)).second) images.push_back(y.l);
      }
      if (images.size() >= n_for(e_cap)) break;
      if (++extra > 4)
        throw KernelTooBig("could not collect enough distinct tangent images");
      S = sample_curve_points(C, S.pts.size() * 2, mix_seed(seed, extra));
    }
  }

  for (uint32_t e = degree_hint ? degree_hint : 1; e <= e_cap; ++e) {
    auto cols = degree_columns(e);
    size_t need = n_for(e);
    Echelon ech(E, cols.size());
    for (size_t i = 0; i < need && i < images.size(); ++i)
      ech.absorb(eval_row(E, cols, e, images[i]));
    size_t nullity = cols.size() - ech.rank();
    if (nullity == 0) continue;
    if (nullity > 1)
      throw KernelTooBig(std::to_string(nullity) + " at degree " + std::to_string(e));

    auto x = ech.kernel_vector();
    // normalize the leading (first nonzero in column order) coefficient to 1
    size_t lead = 0;
    while (lead < x.size() && E->is_zero(x[lead])) ++lead;
    Fq inv = E->inv(x[lead]);

    MPoly H(F, 3);
    for (size_t j = 0; j < x.size(); ++j) {
      if (E->is_zero(x[j])) continue;
      auto down = S.emb.section(E->mul(x[j], inv));
      if (!down)
        throw KernelTooBig("kernel polynomial not defined over the member's field");
      H = mp_add(H, MPoly::monomial(F, 3, cols[j], *down));
    }
    return DualCurve{H, e, C, DualMethod::interpolation};
  }
  throw NoKernel("no vanishing polynomial through degree " + std::to_string(e_cap));
}

DualCurve fermat_dual_closed_form(uint32_t q, const FieldPtr& F) {
  MPoly h = curves::ballico_hefez(q, F);
  uint32_t n = q * q + q + 1;
  std::vector<MPoly> im;
  for (uint32_t v = 0; v < 3; ++v) {
    Expo e{};
    e[v] = uint16_t(n);
    im.push_back(MPoly::monomial(F, 3, e, F->one()));
  }
  MPoly H = substitute(h, im);
  // canonical representative: leading coefficient 1, as in the interpolation
  // route (at q = 3 the raw substitution leads with 2)
  H = mp_scale(H, F->inv(H.leading_coeff()));
  return DualCurve{H, n * (q + 1), curves::fermat_curve(q, F), DualMethod::closed_form};
}

DualReport verify_dual(const Curve& C, const DualCurve& D, uint64_t seed) {
  DualReport rep;
  rep.expected_degree = expected_dual_degree(C.q);
  rep.degree = uint32_t(std::max(0, D.H.total_degree()));
  rep.degree_ok = (rep.degree == rep.expected_degree) && (D.degree == rep.degree);

  // (a) vanishing on fresh tangent images
  ExtSamples S = sample_curve_points(C, 100, mix_seed(seed, 0xf4e5), 512);
  MPoly He = map_coefficients(S.emb, D.H);
  rep.vanishing_ok = true;
  for (auto& P : S.pts) {
    auto y = curves::reduced_gauss(S.lifted, P);
    if (!S.ext->is_zero(mp_eval(He, y.l))) rep.vanishing_ok = false;
  }
  rep.samples_checked = uint32_t(S.pts.size());

  // (c) squarefreeness: a squarefree restriction to some line proves H has no
  // repeated factor (a repeated factor survives restriction to every line)
  const auto& E = S.ext;
  Rng rng(mix_seed(seed, 0x509f));
  for (int trial = 0; trial < 4 && !rep.squarefree_ok; ++trial) {
    std::array<Fq, 3> A, B;
    for (auto& c : A) c = E->sample(rng);
    for (auto& c : B) c = E->sample(rng);
    MPoly t = MPoly::variable(E, 3, 0);
    std::vector<MPoly> im;
    for (int v = 0; v < 3; ++v)
      im.push_back(mp_add(MPoly::constant(E, 3, A[size_t(v)]),
                          mp_scale(t, B[size_t(v)])));
    UniPoly u = to_univariate(substitute(He, im), 0);
    if (u.deg() != int(rep.degree)) continue; // degenerate line choice
    rep.squarefree_ok = (gf::squarefree_part(u).deg() == u.deg());
  }
  return rep;
}

} // namespace cdual::dual
