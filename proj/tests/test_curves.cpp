#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cdual/curves.hpp"

using namespace cdual;
using namespace cdual::poly;
using namespace cdual::curves;
using gf::Field;
using gf::FieldPtr;
using gf::Fq;
using gf::UniPoly;

namespace {

MPoly m3(const FieldPtr& F, int a, int b, int c, uint64_t coef = 1) {
  return MPoly::monomial(F, 3, Expo{uint16_t(a), uint16_t(b), uint16_t(c)},
                         F->from_int(coef));
}

std::array<Fq, 27> tensor_with(const FieldPtr& F,
                               std::initializer_list<std::pair<std::array<int, 3>, Fq>> es) {
  std::array<Fq, 27> a{};
  (void)F;
  for (auto& [ijk, c] : es) a[size_t(9 * ijk[0] + 3 * ijk[1] + ijk[2])] = c;
  return a;
}

Mat3 mat_mul(const FieldPtr& F, const Mat3& A, const Mat3& B) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Fq s{};
      for (int l = 0; l < 3; ++l)
        s = F->add(s, F->mul(A[size_t(3 * i + l)], B[size_t(3 * l + j)]));
      r[size_t(3 * i + j)] = s;
    }
  return r;
}

Mat3 random_invertible(const FieldPtr& F, Rng& rng) {
  for (;;) {
    Mat3 T;
    for (auto& c : T) c = F->sample(rng);
    if (!F->is_zero(det3(F, T))) return T;
  }
}

// curve points found by solving F(x0, b, c) = 0 for random b, c
std::vector<ProjPoint> sample_points(const Curve& C, size_t want, uint64_t seed) {
  const auto& F = C.field;
  MPoly E = expand_curve(C);
  Rng rng(seed);
  std::vector<ProjPoint> out;
  while (out.size() < want) {
    Fq b = F->sample(rng), c = F->sample(rng);
    std::vector<MPoly> im = {MPoly::variable(F, 3, 0), MPoly::constant(F, 3, b),
                             MPoly::constant(F, 3, c)};
    UniPoly g = to_univariate(substitute(E, im), 0);
    if (g.deg() < 1) continue;
    for (auto& r : roots_in_field(g, mix_seed(seed, out.size())))
      if (out.size() < want) out.push_back(make_point(F, {r, b, c}));
  }
  return out;
}

// restriction of the curve to the parametrized line P + s*Q, as a polynomial in s
UniPoly pencil_restriction(const Curve& C, const std::array<Fq, 3>& P,
                           const std::array<Fq, 3>& Q) {
  const auto& F = C.field;
  MPoly s = MPoly::variable(F, 3, 0);
  std::vector<MPoly> im;
  for (int v = 0; v < 3; ++v)
    im.push_back(mp_add(MPoly::constant(F, 3, P[size_t(v)]),
                        mp_scale(s, Q[size_t(v)])));
  return to_univariate(substitute(expand_curve(C), im), 0);
}

std::array<Fq, 3> cross(const FieldPtr& F, const std::array<Fq, 3>& a,
                        const std::array<Fq, 3>& b) {
  return {F->sub(F->mul(a[1], b[2]), F->mul(a[2], b[1])),
          F->sub(F->mul(a[2], b[0]), F->mul(a[0], b[2])),
          F->sub(F->mul(a[0], b[1]), F->mul(a[1], b[0]))};
}

} // namespace

TEST_CASE("tensor expansion and decoding") {
  auto F2 = Field::make(2, 1, 1);
  auto fermat = fermat_curve(2, F2);
  CHECK(expand_curve(fermat) ==
        mp_add(mp_add(m3(F2, 7, 0, 0), m3(F2, 0, 7, 0)), m3(F2, 0, 0, 7)));

  // single entry (0,1,2): monomial x0 x1^q x2^(q^2)
  auto C1 = make_curve(F2, 2, tensor_with(F2, {{{0, 1, 2}, F2->one()}}));
  CHECK(expand_curve(C1) == m3(F2, 1, 2, 4));

  auto F7 = Field::make(7, 1, 1);
  auto C2 = make_curve(F7, 7, tensor_with(F7, {{{0, 0, 0}, F7->from_int(5)}}));
  CHECK(expand_curve(C2) == m3(F7, 57, 0, 0, 5)); // 5 * x0^(q^2+q+1)

  CHECK_THROWS_AS(make_curve(F2, 2, std::array<Fq, 27>{}), ZeroTensor);
  CHECK_THROWS_AS(make_curve(F2, 3, tensor_with(F2, {{{0, 0, 0}, F2->one()}})),
                  gf::FieldError); // 3 is not a power of 2

  // expansion of a random tensor: homogeneous of degree q^2+q+1; decoding
  // recovers the tensor exactly
  auto E = Field::make(2, 8, 5);
  Rng rng(99);
  for (uint32_t q : {2u, 4u}) {
    std::array<Fq, 27> a{};
    for (auto& c : a) c = E->sample(rng);
    auto C = make_curve(E, q, a);
    MPoly X = expand_curve(C);
    CHECK(X.is_homogeneous());
    CHECK(X.total_degree() == int(q * q + q + 1));
    auto back = collect_curve(X, q);
    CHECK(back.a == C.a);
  }

  // a monomial outside the family is rejected
  CHECK_THROWS_AS(collect_curve(m3(F2, 1, 1, 5), 2), gf::FieldError);
}

TEST_CASE("Fermat members are smooth at q = 2 and 3") {
  auto F2 = Field::make(2, 1, 1);
  auto F3 = Field::make(3, 1, 1);
  CHECK(expand_curve(fermat_curve(3, F3)).total_degree() == 13);
  CHECK(is_smooth(fermat_curve(2, F2)));
  CHECK(is_smooth(fermat_curve(3, F3)));
}

TEST_CASE("degenerate members are detected as singular") {
  auto F2 = Field::make(2, 1, 1);
  // non-reduced: F = x0^7, the whole line x0 = 0 is singular
  CHECK_FALSE(is_smooth(make_curve(F2, 2, tensor_with(F2, {{{0, 0, 0}, F2->one()}}))));
  // reducible: F = x0 x1^2 x2^4
  CHECK_FALSE(is_smooth(make_curve(F2, 2, tensor_with(F2, {{{0, 1, 2}, F2->one()}}))));
}

TEST_CASE("random members: deterministic, smooth, seed-sensitive") {
  auto E = Field::make(2, 8, 3);
  uint32_t r1 = 0, r2 = 0;
  auto C1 = random_curve(2, E, 7, {}, &r1);
  auto C2 = random_curve(2, E, 7, {}, &r2);
  CHECK(C1.a == C2.a); // same seed, same member
  CHECK(r1 == r2);
  CHECK(is_smooth(C1));
  auto C3 = random_curve(2, E, 8);
  CHECK(C3.a != C1.a);

  // the extra check is honored
  uint32_t r4 = 0;
  auto C4 = random_curve(2, E, 7, [&](const Curve& C) { return C.a != C1.a; }, &r4);
  CHECK(C4.a != C1.a);
  CHECK(r4 > r1);
}

TEST_CASE("coordinate changes: identity, permutation, substitution oracle") {
  auto F2 = Field::make(2, 1, 1);
  auto fer = fermat_curve(2, F2);
  Mat3 id{};
  for (int i = 0; i < 3; ++i) id[size_t(4 * i)] = F2->one();
  CHECK(transform_coordinates(fer, id).a == fer.a);

  Mat3 swap01{};
  swap01[1] = swap01[3] = swap01[8] = F2->one();
  CHECK(transform_coordinates(fer, swap01).a == fer.a);

  CHECK_THROWS_AS(transform_coordinates(fer, Mat3{}), SingularMatrix);

  auto E = Field::make(2, 8, 3);
  Rng rng(424);
  auto C = random_curve(2, E, 11);
  for (int t = 0; t < 3; ++t) {
    Mat3 T = random_invertible(E, rng);
    // oracle: transforming the tensor equals substituting into the expansion
    std::vector<MPoly> im;
    for (int i = 0; i < 3; ++i) {
      MPoly row(E, 3);
      for (int l = 0; l < 3; ++l)
        row = mp_add(row, mp_scale(MPoly::variable(E, 3, uint32_t(l)), T[size_t(3 * i + l)]));
      im.push_back(row);
    }
    CHECK(expand_curve(transform_coordinates(C, T)) == substitute(expand_curve(C), im));

    // composition: substituting S after T composes the matrices
    Mat3 S = random_invertible(E, rng);
    auto lhs = transform_coordinates(transform_coordinates(C, S), T);
    auto rhs = transform_coordinates(C, mat_mul(E, S, T));
    CHECK(lhs.a == rhs.a);
  }
}

TEST_CASE("projective points: normalization and incidence") {
  auto F = Field::make(5, 1, 1);
  auto P = make_point(F, {F->from_int(2), F->from_int(4), F->from_int(3)});
  CHECK(P.x[2] == F->one()); // last nonzero coordinate scaled to 1
  auto Q = make_point(F, {F->from_int(4), F->from_int(3), F->from_int(1)});
  CHECK(P == Q); // (2,4,3) = 3*(4,3,1)
  auto R = make_point(F, {F->from_int(2), F->from_int(4), F->zero()});
  CHECK(R.x == std::array<Fq, 3>{F->from_int(3), F->one(), F->zero()});
  CHECK_THROWS_AS(make_point(F, {F->zero(), F->zero(), F->zero()}), ZeroPoint);

  auto L = make_line(F, {F->one(), F->from_int(2), F->one()});
  CHECK(incident(L, make_point(F, {F->one(), F->from_int(2), F->zero()})));
  CHECK_FALSE(incident(L, make_point(F, {F->one(), F->one(), F->one()})));
}

TEST_CASE("gauss map: Fermat closed forms and the q-th power identity") {
  auto F2 = Field::make(2, 1, 1);
  auto fer = fermat_curve(2, F2);
  auto G = reduced_gauss_polys(fer);
  CHECK(G[0] == m3(F2, 3, 0, 0));
  CHECK(G[1] == m3(F2, 0, 3, 0));
  CHECK(G[2] == m3(F2, 0, 0, 3));

  auto P = make_point(F2, {F2->zero(), F2->one(), F2->one()});
  CHECK(gauss_map(fer, P) == make_line(F2, {F2->zero(), F2->one(), F2->one()}));
  CHECK(reduced_gauss(fer, P) == make_line(F2, {F2->zero(), F2->one(), F2->one()}));

  CHECK_THROWS_AS(gauss_map(fer, make_point(F2, {F2->one(), F2->one(), F2->one()})),
                  NotOnCurve);

  // singular point of a reducible member
  auto C1 = make_curve(F2, 2, tensor_with(F2, {{{0, 1, 2}, F2->one()}}));
  CHECK_THROWS_AS(gauss_map(C1, make_point(F2, {F2->zero(), F2->zero(), F2->one()})),
                  SingularPoint);

  // gradient polynomials match formal derivatives; reduced polys are q-th roots
  auto E = Field::make(3, 4, 9);
  auto C = random_curve(3, E, 21);
  MPoly X = expand_curve(C);
  auto grad = gradient_polys(C);
  auto red = reduced_gauss_polys(C);
  for (int i = 0; i < 3; ++i) {
    CHECK(grad[size_t(i)] == partial_derivative(X, uint32_t(i)));
    CHECK(red[size_t(i)] == qth_root_poly(grad[size_t(i)], 3));
    CHECK(mp_pow(red[size_t(i)], 3) == grad[size_t(i)]);
  }

  // pointwise: (reduced value)^q equals the gauss value at sampled points
  for (auto& S : sample_points(C, 20, 555)) {
    auto T = gauss_map(C, S);
    auto Tr = reduced_gauss(C, S);
    std::array<Fq, 3> cubed;
    for (int v = 0; v < 3; ++v) cubed[size_t(v)] = E->pow_u64(Tr.l[size_t(v)], 3);
    CHECK(make_line(E, cubed) == T);
    CHECK(incident(T, S)); // tangent passes through its point of tangency
  }
}

TEST_CASE("line multiplicities: tangents, secants, contained lines") {
  auto F2 = Field::make(2, 1, 1);
  auto fer = fermat_curve(2, F2);
  auto P = make_point(F2, {F2->zero(), F2->one(), F2->one()});
  auto T = gauss_map(fer, P);
  CHECK(line_mult(fer, T, P) == std::optional<uint64_t>{7}); // restriction is s^7

  auto sec = make_line(F2, {F2->one(), F2->one(), F2->one()});
  REQUIRE(incident(sec, P));
  CHECK(line_mult(fer, sec, P) == std::optional<uint64_t>{1});

  CHECK_THROWS_AS(line_mult(fer, make_line(F2, {F2->zero(), F2->one(), F2->zero()}), P),
                  PointNotOnLine);

  // a line inside a reducible member has infinite contact
  auto C1 = make_curve(F2, 2, tensor_with(F2, {{{0, 1, 2}, F2->one()}}));
  auto L0 = make_line(F2, {F2->one(), F2->zero(), F2->zero()});
  CHECK_FALSE(line_mult(C1, L0, P).has_value());

  // every tangent of a family member meets with multiplicity at least q, and
  // a random member's tangents are generically exactly q
  auto E = Field::make(2, 8, 3);
  auto C = random_curve(2, E, 11);
  size_t exactly_q = 0;
  auto pts = sample_points(C, 20, 777);
  for (auto& S : pts) {
    auto m = line_mult(C, gauss_map(C, S), S);
    REQUIRE(m.has_value());
    CHECK(*m >= 2);
    exactly_q += (*m == 2);
  }
  CHECK(exactly_q >= 18); // flexes are rare among sampled points
}

TEST_CASE("branch parametrization: series coefficients match the tensor") {
  // adapted member over GF(2), q=2: f = x + y^2 + y^3, branch x = t^2 + t^3
  auto F2 = Field::make(2, 1, 1);
  auto A = make_curve(F2, 2,
                      tensor_with(F2, {{{0, 2, 2}, F2->one()},
                                       {{2, 1, 2}, F2->one()},
                                       {{1, 1, 2}, F2->one()}}));
  auto P0 = make_point(F2, {F2->zero(), F2->zero(), F2->one()});
  auto par = local_parametrization_full(A, P0, 12);
  CHECK(par.adapted.a == A.a); // already adapted: transform is the identity
  for (uint32_t i = 0; i <= 12; ++i) {
    Fq expect = (i == 2 || i == 3) ? F2->one() : F2->zero();
    CHECK(par.phi.coeff(i) == expect);
  }

  // odd characteristic with a correction term: f = x + 2y^3 + y^4 + 2xy^3
  // over GF(3): phi = -(2t^3 + t^4)(1 + 2t^3)^-1 = t^3 + 2t^4 + t^6 + 2t^7 + ...
  auto F3 = Field::make(3, 1, 1);
  auto B = make_curve(F3, 3,
                      tensor_with(F3, {{{0, 2, 2}, F3->one()},
                                       {{2, 1, 2}, F3->from_int(2)},
                                       {{1, 1, 2}, F3->one()},
                                       {{0, 1, 2}, F3->from_int(2)}}));
  auto phi3 = local_parametrization(B, make_point(F3, {F3->zero(), F3->zero(), F3->one()}), 27);
  CHECK(phi3.coeff(3) == F3->one());        // -a_(2,1,2)
  CHECK(phi3.coeff(4) == F3->from_int(2));  // -a_(1,1,2)
  CHECK(phi3.coeff(6) == F3->one());        // +a_(0,1,2) a_(2,1,2)
  CHECK(phi3.coeff(7) == F3->from_int(2));  // +a_(0,1,2) a_(1,1,2)

  // tangent-degenerate entry pattern: f = x + 2y^4 + y^9 over GF(3);
  // branch x = -2 t^(q+1) - t^(q^2) exactly
  auto D = make_curve(F3, 3,
                      tensor_with(F3, {{{0, 2, 2}, F3->one()},
                                       {{1, 1, 2}, F3->from_int(2)},
                                       {{2, 2, 1}, F3->one()}}));
  auto phid = local_parametrization(D, make_point(F3, {F3->zero(), F3->zero(), F3->one()}), 27);
  for (uint32_t i = 0; i <= 27; ++i) {
    Fq expect = F3->zero();
    if (i == 4) expect = F3->one();            // -2 = 1 mod 3
    if (i == 9) expect = F3->from_int(2);      // -1
    CHECK(phid.coeff(i) == expect);
  }

  CHECK_THROWS_AS(local_parametrization(A, make_point(F2, {F2->one(), F2->one(), F2->one()}), 4),
                  NotOnCurve);
  auto C1 = make_curve(F2, 2, tensor_with(F2, {{{0, 1, 2}, F2->one()}}));
  CHECK_THROWS_AS(local_parametrization(C1, P0, 4), SingularPoint);
}

TEST_CASE("branch parametrization at a general point: residual vanishes") {
  auto E = Field::make(2, 8, 3);
  auto C = random_curve(2, E, 11);
  uint32_t N = 12; // 3 q^2
  for (auto& P : sample_points(C, 3, 31)) {
    auto par = local_parametrization_full(C, P, N);
    // adapted tensor invariants
    CHECK(E->is_zero(par.adapted.at(2, 2, 2)));
    CHECK(E->is_zero(par.adapted.at(1, 2, 2)));
    CHECK(par.adapted.at(0, 2, 2) == E->one());
    // the transform actually maps the adapted curve to C (up to the scale)
    auto rescaled = transform_coordinates(C, par.transform);
    CHECK(scale_curve(rescaled, E->inv(rescaled.at(0, 2, 2))).a == par.adapted.a);

    // independent residual check with plain polynomial arithmetic:
    // f(phi(t), t) must vanish through degree N
    MPoly f = set_var_to_one(expand_curve(par.adapted), 2);
    UniPoly phi{E, par.phi.c};
    UniPoly acc(E);
    auto cf = coeffs_in_var(f, 0);
    for (size_t d = cf.size(); d-- > 0;) {
      acc = upoly_mul(acc, phi);
      acc = upoly_add(acc, to_univariate(cf[d], 1));
    }
    for (uint32_t i = 0; i <= N; ++i) CHECK(E->is_zero(acc.coeff(i)));
    CHECK(!acc.is_zero()); // truncation, not an identity: the curve is not a graph
  }
}

TEST_CASE("tangency polynomial: structure and pointwise meaning") {
  auto E = Field::make(2, 8, 3);
  auto C = random_curve(2, E, 11);
  auto aux = make_line(E, {E->one(), E->zero(), E->zero()});
  auto aux2 = make_line(E, {E->zero(), E->one(), E->one()});
  MPoly phi = flex_scheme(C, aux);
  MPoly phi2 = flex_scheme(C, aux2);
  CHECK(phi.is_homogeneous());
  CHECK(phi.total_degree() == 17); // q^3 + 2q^2 + 1 at q = 2

  for (auto& P : sample_points(C, 12, 4242)) {
    bool deg1 = false, deg2 = false;
    try {
      check_aux_line(C, aux, P);
    } catch (const AuxiliaryDegenerate&) {
      deg1 = true;
    }
    try {
      check_aux_line(C, aux2, P);
    } catch (const AuxiliaryDegenerate&) {
      deg2 = true;
    }
    auto m = line_mult(C, gauss_map(C, P), P);
    REQUIRE(m.has_value());

    auto grad = gradient_at(C, P);
    if (!deg1) {
      // the pencil restriction F(P + sQ): s^0, s^1 coefficients vanish, and
      // the s^q coefficient is the tangency polynomial's value
      auto Q = cross(E, grad, aux.l);
      UniPoly r = pencil_restriction(C, P.x, Q);
      CHECK(E->is_zero(r.coeff(0)));
      CHECK(E->is_zero(r.coeff(1)));
      CHECK(r.coeff(2) == mp_eval(phi, P.x));
      CHECK((*m > 2) == E->is_zero(mp_eval(phi, P.x)));
    }
    if (!deg2) CHECK((*m > 2) == E->is_zero(mp_eval(phi2, P.x)));
    CHECK(is_flex(C, P) == (*m == 3));
  }
}

TEST_CASE("Fermat hyperflex: tangency polynomial vanishes, flex test rejects") {
  auto F2 = Field::make(2, 1, 1);
  auto fer = fermat_curve(2, F2);
  auto P = make_point(F2, {F2->zero(), F2->one(), F2->one()});
  auto aux = make_line(F2, {F2->zero(), F2->one(), F2->zero()});
  check_aux_line(fer, aux, P); // P off aux, tangent != aux
  CHECK(F2->is_zero(mp_eval(flex_scheme(fer, aux), P.x)));
  CHECK_FALSE(is_flex(fer, P)); // contact 7 exceeds q+1 = 3

  auto on_aux = make_point(F2, {F2->one(), F2->zero(), F2->one()});
  CHECK_THROWS_AS(check_aux_line(fer, aux, on_aux), AuxiliaryDegenerate);
}

TEST_CASE("Ballico-Hefez curve: q=2 closed form, symmetry, coordinate slice") {
  auto F2 = Field::make(2, 1, 1);
  MPoly h = ballico_hefez(2, F2);
  MPoly expect(F2, 3);
  for (auto [a, b, c] : {std::array<int, 3>{3, 0, 0}, {0, 3, 0}, {0, 0, 3},
                         {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {0, 2, 1}, {1, 0, 2},
                         {0, 1, 2}, {1, 1, 1}})
    expect = mp_add(expect, m3(F2, a, b, c));
  CHECK(h == expect);

  // slice x0 = 0 collapses to (x1 + x2)^(q+1): zero iff x1 = x2
  std::vector<MPoly> slice0 = {MPoly::constant(F2, 3, F2->zero()),
                               MPoly::variable(F2, 3, 1), MPoly::variable(F2, 3, 2)};
  CHECK(substitute(h, slice0) ==
        mp_pow(mp_add(MPoly::variable(F2, 3, 1), MPoly::variable(F2, 3, 2)), 3));

  auto F3 = Field::make(3, 1, 1);
  MPoly h3 = ballico_hefez(3, F3);
  CHECK(h3.total_degree() == 4);
  std::vector<MPoly> slice3 = {MPoly::constant(F3, 3, F3->zero()),
                               MPoly::variable(F3, 3, 1), MPoly::variable(F3, 3, 2)};
  CHECK(substitute(h3, slice3) ==
        mp_scale(mp_pow(mp_sub(MPoly::variable(F3, 3, 1), MPoly::variable(F3, 3, 2)), 4),
                 F3->from_int(2)));

  // full symmetry under all coordinate permutations
  for (auto [a, b, c] : {std::array<int, 3>{0, 2, 1}, {1, 0, 2}, {1, 2, 0},
                         {2, 0, 1}, {2, 1, 0}}) {
    std::vector<MPoly> im2 = {MPoly::variable(F2, 3, uint32_t(a)),
                              MPoly::variable(F2, 3, uint32_t(b)),
                              MPoly::variable(F2, 3, uint32_t(c))};
    CHECK(substitute(h, im2) == h);
    std::vector<MPoly> im3 = {MPoly::variable(F3, 3, uint32_t(a)),
                              MPoly::variable(F3, 3, uint32_t(b)),
                              MPoly::variable(F3, 3, uint32_t(c))};
    CHECK(substitute(h3, im3) == h3);
  }

  CHECK_THROWS_AS(ballico_hefez(2, F3), gf::FieldError); // characteristic mismatch
}

TEST_CASE("Ballico-Hefez curve: node counts off the coordinate triangle") {
  for (uint32_t q : {2u, 3u}) {
    auto F = Field::make(q == 2 ? 2 : 3, 1, 1);
    MPoly h = ballico_hefez(q, F);
    std::vector<MPoly> gens = {h};
    for (uint32_t v = 0; v < 3; ++v) {
      MPoly d = partial_derivative(h, v);
      if (!d.is_zero()) gens.push_back(d);
    }
    auto locus = ideals::projective_zeros(gens);
    CHECK(locus.point_count() == (q * q - q) / 2);
    for (auto& cls : locus.classes)
      for (auto& c : cls.rep) CHECK_FALSE(cls.ext->is_zero(c)); // off x0 x1 x2 = 0
  }
}

TEST_CASE("preimages under the reduced tangent map") {
  auto F2 = Field::make(2, 1, 1);
  auto fer = fermat_curve(2, F2);
  auto y = make_line(F2, {F2->zero(), F2->one(), F2->one()});
  auto pre = reduced_gauss_preimages(fer, y);
  CHECK(pre.point_count() == 1);
  REQUIRE(pre.classes.size() == 1);
  CHECK(pre.classes[0].residue_degree == 1);
  CHECK(pre.classes[0].rep == std::array<Fq, 3>{F2->zero(), F2->one(), F2->one()});

  CHECK_THROWS_AS(reduced_gauss_preimages(fer, make_line(F2, {F2->one(), F2->zero(), F2->zero()})),
                  NotOnDual);

  // generic dual points of a random member have a single preimage
  auto E = Field::make(2, 8, 3);
  auto C = random_curve(2, E, 11);
  for (auto& P : sample_points(C, 4, 99)) {
    auto img = reduced_gauss(C, P);
    auto fib = reduced_gauss_preimages(C, img);
    CHECK(fib.point_count() >= 1);
    CHECK(fib.point_count() <= 2); // no triple tangents on a general member
    bool found = false;
    for (auto& cls : fib.classes)
      found = found || (cls.ext == E && cls.rep == P.x);
    CHECK(found);
  }
}

TEST_CASE("base change carries the tensor through an embedding") {
  auto F2 = Field::make(2, 1, 1);
  auto E = Field::make(2, 4, 13);
  auto emb = gf::make_embedding(F2, E);
  auto fer = fermat_curve(2, F2);
  auto lifted = base_change(fer, emb);
  CHECK(lifted.field == E);
  CHECK(expand_curve(lifted) == map_coefficients(emb, expand_curve(fer)));

  // extension points of the Fermat curve: [1 : w : w^2] with w^7 = ... solved
  auto pts = sample_points(lifted, 5, 17);
  for (auto& P : pts) CHECK(on_curve(lifted, P));
}
