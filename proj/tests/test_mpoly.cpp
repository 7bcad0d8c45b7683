#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdual/mpoly.hpp"

using namespace cdual;
using namespace cdual::poly;
using gf::Field;
using gf::FieldPtr;
using gf::Fq;

namespace {

MPoly mono(const FieldPtr& F, int a, int b, int c, uint64_t coef = 1) {
  return MPoly::monomial(F, 3, Expo{uint16_t(a), uint16_t(b), uint16_t(c)},
                         F->from_int(coef));
}

MPoly random_poly(const FieldPtr& F, Rng& rng, uint32_t nvars, int maxdeg,
                  int nterms) {
  MPoly r(F, nvars);
  for (int t = 0; t < nterms; ++t) {
    Expo e{0, 0, 0};
    for (uint32_t v = 0; v < nvars; ++v) e[v] = uint16_t(rng.below(maxdeg + 1));
    r.add_term(e, F->sample(rng));
  }
  return r;
}

} // namespace

TEST_CASE("derivatives with characteristic-p exponents") {
  auto F = Field::make(2, 1, 1);
  MPoly x7 = mono(F, 7, 0, 0);
  CHECK(partial_derivative(x7, 0) == mono(F, 6, 0, 0)); // 7 = 1 mod 2
  MPoly x2 = mono(F, 2, 0, 0);
  CHECK(partial_derivative(x2, 0).is_zero()); // 2 = 0 mod 2
  auto G = Field::make(3, 1, 1);
  MPoly y5 = mono(G, 0, 5, 0);
  CHECK(partial_derivative(y5, 1) == mp_scale(mono(G, 0, 4, 0), G->from_int(2)));
}

TEST_CASE("qth roots of qth powers") {
  auto F = Field::make(2, 1, 1);
  CHECK(qth_root_poly(mono(F, 6, 0, 0), 2) == mono(F, 3, 0, 0));
  CHECK_THROWS_AS(qth_root_poly(mp_add(mono(F, 1, 0, 0), mono(F, 0, 1, 0)), 2),
                  NotAQthPower);
  // over GF(4): (a x0^2 x1^4)^(1/2) has coefficient pth_root(a); square to verify
  auto G = Field::make(2, 2, 42);
  Fq a = G->gen();
  MPoly P = MPoly::monomial(G, 3, Expo{2, 4, 0}, a);
  MPoly R = qth_root_poly(P, 2);
  CHECK(mp_mul(R, R) == P);
  CHECK(R.coeff(Expo{1, 2, 0}) == G->pth_root(a));
  // q = 4 over GF(4): two Frobenius-inverse steps
  MPoly P4 = MPoly::monomial(G, 3, Expo{4, 8, 0}, a);
  MPoly R4 = qth_root_poly(P4, 4);
  MPoly R4sq = mp_mul(R4, R4);
  CHECK(mp_mul(R4sq, R4sq) == P4);
}

TEST_CASE("substitution: identity, swap, powers, products") {
  auto F = Field::make(2, 3, 5); // GF(8)
  Rng rng(17);
  MPoly P = random_poly(F, rng, 3, 4, 8);
  std::vector<MPoly> id = {MPoly::variable(F, 3, 0), MPoly::variable(F, 3, 1),
                           MPoly::variable(F, 3, 2)};
  CHECK(substitute(P, id) == P);
  // swap x0 <-> x1 on a symmetric polynomial
  MPoly sym = mp_add(mp_add(mono(F, 3, 0, 0), mono(F, 0, 3, 0)), mono(F, 0, 0, 3));
  std::vector<MPoly> swap01 = {MPoly::variable(F, 3, 1), MPoly::variable(F, 3, 0),
                               MPoly::variable(F, 3, 2)};
  CHECK(substitute(sym, swap01) == sym);
  // x_i -> x_i^7 on a cubic gives degree 21
  std::vector<MPoly> pow7 = {mono(F, 7, 0, 0), mono(F, 0, 7, 0), mono(F, 0, 0, 7)};
  MPoly lifted = substitute(sym, pow7);
  CHECK(lifted.total_degree() == 21);
  CHECK(lifted.is_homogeneous());
  // morphism property on random pairs
  for (int t = 0; t < 5; ++t) {
    MPoly A = random_poly(F, rng, 3, 3, 5), B = random_poly(F, rng, 3, 3, 5);
    std::vector<MPoly> im = {random_poly(F, rng, 3, 2, 3), random_poly(F, rng, 3, 2, 3),
                             random_poly(F, rng, 3, 2, 3)};
    CHECK(substitute(mp_mul(A, B), im) == mp_mul(substitute(A, im), substitute(B, im)));
    CHECK(substitute(mp_add(A, B), im) == mp_add(substitute(A, im), substitute(B, im)));
  }
}

TEST_CASE("Euler identity for degree = 1 mod p") {
  auto F = Field::make(2, 4, 9);
  Rng rng(3);
  // random homogeneous of degree 7 (= 1 mod 2) in 3 variables
  MPoly P(F, 3);
  for (int t = 0; t < 12; ++t) {
    uint16_t a = uint16_t(rng.below(8));
    uint16_t b = uint16_t(rng.below(8 - a));
    uint16_t c = uint16_t(7 - a - b);
    P.add_term(Expo{a, b, c}, F->sample(rng));
  }
  MPoly euler(F, 3);
  for (uint32_t v = 0; v < 3; ++v)
    euler = mp_add(euler, mp_mul(MPoly::variable(F, 3, v), partial_derivative(P, v)));
  CHECK(euler == P);
}

TEST_CASE("evaluation matches term expansion") {
  auto F = Field::make(3, 2, 8);
  Rng rng(12);
  MPoly P = random_poly(F, rng, 3, 5, 10);
  for (int t = 0; t < 10; ++t) {
    std::array<Fq, 3> x = {F->sample(rng), F->sample(rng), F->sample(rng)};
    Fq direct = F->zero();
    for (auto& [e, c] : P.terms()) {
      Fq term = c;
      for (int v = 0; v < 3; ++v)
        for (int i = 0; i < e[v]; ++i) term = F->mul(term, x[v]);
      direct = F->add(direct, term);
    }
    CHECK(mp_eval(P, x) == direct);
  }
}

TEST_CASE("resultants: closed forms and planted factors") {
  auto F = Field::make(2, 1, 1);
  // Res_y(y^2 - x, y) = x  (vars: x = x0, y = x1)
  MPoly f = mp_add(mono(F, 0, 2, 0), mono(F, 1, 0, 0)); // y^2 + x = y^2 - x char 2
  MPoly g = mono(F, 0, 1, 0);
  MPoly r = resultant(f, g, 1);
  CHECK(r == mono(F, 1, 0, 0));
  // Res_{x2}(x1 - x2, x1^2 + x2^2) over GF(2) = 0 (they share the root x2 = x1)
  MPoly u = mp_add(mono(F, 0, 1, 0), mono(F, 0, 0, 1));
  MPoly v = mp_add(mono(F, 0, 2, 0), mono(F, 0, 0, 2));
  CHECK(resultant(u, v, 2).is_zero());
  // planted common factor over GF(9): res vanishes
  auto G = Field::make(3, 2, 8);
  Rng rng(5);
  for (int t = 0; t < 5; ++t) {
    MPoly w = mp_add(mp_add(mono(G, 0, 1, 0), random_poly(G, rng, 1, 2, 2)),
                     MPoly::constant(G, 3, G->one())); // degree 1 in y, nonzero
    MPoly a = random_poly(G, rng, 2, 2, 3), b = random_poly(G, rng, 2, 2, 3);
    if (a.degree_in(1) < 0 || b.is_zero()) continue;
    MPoly fa = mp_mul(w, mp_add(a, mono(G, 0, 2, 0)));
    MPoly fb = mp_mul(w, mp_add(b, mono(G, 0, 3, 0)));
    CHECK(resultant(fa, fb, 1).is_zero());
  }
}

TEST_CASE("resultant: interpolation and Bareiss agree") {
  auto F = Field::make(3, 2, 8); // GF(9), tabled
  Rng rng(21);
  for (int t = 0; t < 8; ++t) {
    // bivariate in (x0, x1), eliminate x1
    MPoly a(F, 2), b(F, 2);
    for (int i = 0; i < 6; ++i) {
      a.add_term(Expo{uint16_t(rng.below(4)), uint16_t(rng.below(4)), 0}, F->sample(rng));
      b.add_term(Expo{uint16_t(rng.below(4)), uint16_t(rng.below(3)), 0}, F->sample(rng));
    }
    if (a.degree_in(1) < 1 || b.degree_in(1) < 1) continue;
    MPoly r1 = detail::resultant_bareiss(a, b, 1);
    MPoly r2 = detail::resultant_interp(a, b, 1);
    CHECK(r1 == r2);
  }
  // also over a field smaller than the degree bound (forces the extension path)
  auto F2 = Field::make(2, 1, 1);
  Rng rng2(22);
  for (int t = 0; t < 8; ++t) {
    MPoly a(F2, 2), b(F2, 2);
    for (int i = 0; i < 8; ++i) {
      a.add_term(Expo{uint16_t(rng2.below(5)), uint16_t(rng2.below(5)), 0},
                 F2->sample(rng2));
      b.add_term(Expo{uint16_t(rng2.below(5)), uint16_t(rng2.below(4)), 0},
                 F2->sample(rng2));
    }
    if (a.degree_in(1) < 1 || b.degree_in(1) < 1) continue;
    CHECK(detail::resultant_bareiss(a, b, 1) == detail::resultant_interp(a, b, 1));
  }
}

TEST_CASE("resultant specialization property") {
  // where res(x0) != 0, the specialized univariates are coprime; where a common
  // root exists, res vanishes there
  auto F = Field::make(2, 4, 2); // GF(16)
  Rng rng(31);
  for (int t = 0; t < 6; ++t) {
    MPoly a(F, 2), b(F, 2);
    for (int i = 0; i < 6; ++i) {
      a.add_term(Expo{uint16_t(rng.below(3)), uint16_t(rng.below(3)), 0}, F->sample(rng));
      b.add_term(Expo{uint16_t(rng.below(3)), uint16_t(rng.below(3)), 0}, F->sample(rng));
    }
    if (a.degree_in(1) < 1 || b.degree_in(1) < 1) continue;
    MPoly r = resultant(a, b, 1);
    auto ac = coeffs_in_var(a, 1), bc = coeffs_in_var(b, 1);
    for (uint64_t s = 0; s < 16; ++s) {
      Fq x0 = s == 0 ? F->zero() : F->pow_u64(F->gen(), s); // all field elements
      // specialize both to univariate in x1
      gf::UniPoly ua(F), ub(F);
      for (auto& c : ac) ua.c.push_back(mp_eval(c, {x0, F->zero(), F->zero()}));
      for (auto& c : bc) ub.c.push_back(mp_eval(c, {x0, F->zero(), F->zero()}));
      ua.trim();
      ub.trim();
      Fq rv = mp_eval(r, {x0, F->zero(), F->zero()});
      bool full_degree = ua.deg() == a.degree_in(1) || ub.deg() == b.degree_in(1);
      if (!F->is_zero(rv) && full_degree) {
        // nonzero resultant at a non-degenerate specialization: coprime fibers
        if (!ua.is_zero() && !ub.is_zero()) CHECK(upoly_gcd(ua, ub).deg() == 0);
      }
      if (!ua.is_zero() && !ub.is_zero() && upoly_gcd(ua, ub).deg() > 0)
        CHECK(F->is_zero(rv));
    }
  }
}

TEST_CASE("kernel_basis: identity, zero, planted kernel") {
  auto F = Field::make(5, 1, 1);
  Matrix I(F, 3, 3);
  for (int i = 0; i < 3; ++i) I.at(i, i) = F->one();
  CHECK(kernel_basis(I).empty());
  Matrix Z(F, 2, 2);
  CHECK(kernel_basis(Z).size() == 2);
  // planted: columns 0,1,2 with col2 = col0 + 2*col1
  Matrix M(F, 4, 3);
  Rng rng(7);
  for (int i = 0; i < 4; ++i) {
    M.at(i, 0) = F->sample(rng);
    M.at(i, 1) = F->sample(rng);
    M.at(i, 2) = F->add(M.at(i, 0), F->mul(F->from_int(2), M.at(i, 1)));
  }
  auto K = kernel_basis(M);
  REQUIRE(K.size() == 1);
  // verify M * k = 0
  for (int i = 0; i < 4; ++i) {
    Fq s = F->zero();
    for (int j = 0; j < 3; ++j) s = F->add(s, F->mul(M.at(i, j), K[0][j]));
    CHECK(F->is_zero(s));
  }
  // untabled-field path: same planted setup over GF(3^16)
  auto B = Field::make(3, 16, 17);
  Matrix MB(B, 4, 3);
  Rng rng2(8);
  for (int i = 0; i < 4; ++i) {
    MB.at(i, 0) = B->sample(rng2);
    MB.at(i, 1) = B->sample(rng2);
    MB.at(i, 2) = B->add(MB.at(i, 0), MB.at(i, 1));
  }
  auto KB = kernel_basis(MB);
  REQUIRE(KB.size() == 1);
  for (int i = 0; i < 4; ++i) {
    Fq s = B->zero();
    for (int j = 0; j < 3; ++j) s = B->add(s, B->mul(MB.at(i, j), KB[0][j]));
    CHECK(B->is_zero(s));
  }
}

TEST_CASE("newton interpolation round trip") {
  auto F = Field::make(2, 8, 4); // GF(256)
  Rng rng(13);
  gf::UniPoly f(F);
  for (int i = 0; i < 9; ++i) f.c.push_back(F->sample(rng));
  f.trim();
  std::vector<Fq> xs, ys;
  for (uint32_t i = 0; i < 12; ++i) {
    Fq x = i == 0 ? F->zero() : F->pow_u64(F->gen(), i); // distinct elements
    xs.push_back(x);
    ys.push_back(upoly_eval(f, x));
  }
  gf::UniPoly g = newton_interpolate(F, xs, ys);
  CHECK(upoly_sub(f, g).is_zero());
}

TEST_CASE("canonical text form") {
  auto F = Field::make(2, 1, 1);
  MPoly P = mp_add(mono(F, 3, 0, 0), mono(F, 1, 1, 1));
  CHECK(mp_to_string(P) == "1 * x0^3 x1^0 x2^0 + 1 * x0^1 x1^1 x2^1");
  CHECK(mp_to_string(MPoly(F, 3)) == "0");
  // leading term is the graded-lex greatest
  CHECK(P.leading_expo() == Expo{3, 0, 0});
}

TEST_CASE("coeffs_in_var and chart maps") {
  auto F = Field::make(3, 1, 1);
  // P = x0^2 x1 + 2 x1^2 + x0
  MPoly P = mp_add(mp_add(mono(F, 2, 1, 0), mp_scale(mono(F, 0, 2, 0), F->from_int(2))),
                   mono(F, 1, 0, 0));
  auto cs = coeffs_in_var(P, 1);
  REQUIRE(cs.size() == 3);
  CHECK(cs[0] == mono(F, 1, 0, 0));
  CHECK(cs[1] == mono(F, 2, 0, 0));
  CHECK(cs[2] == MPoly::constant(F, 3, F->from_int(2)));
  // set x1 = 1 merges terms
  MPoly Q = set_var_to_one(P, 1);
  CHECK(Q == mp_add(mp_add(mono(F, 2, 0, 0), MPoly::constant(F, 3, F->from_int(2))),
                    mono(F, 1, 0, 0)));
  // univariate round trip
  gf::UniPoly u = to_univariate(mono(F, 0, 3, 0), 1);
  CHECK(u.deg() == 3);
  CHECK(from_univariate(u, 1, 3) == mono(F, 0, 3, 0));
}
