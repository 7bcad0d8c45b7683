#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdual/dualize.hpp"
#include "cdual/ideals.hpp"

using namespace cdual;
using namespace cdual::poly;
using namespace cdual::curves;
using namespace cdual::dual;
using gf::Field;
using gf::FieldPtr;
using gf::Fq;

namespace {

MPoly mono(const FieldPtr& F, int a, int b, int c) {
  return MPoly::monomial(F, 3, Expo{uint16_t(a), uint16_t(b), uint16_t(c)}, F->one());
}

// coefficient-wise q-th power (Frobenius twist of the polynomial)
MPoly frob_coeffs(const MPoly& f, uint32_t q) {
  const auto& F = f.field();
  MPoly r(F, f.nvars());
  for (auto& [e, c] : f.terms())
    r = mp_add(r, MPoly::monomial(F, f.nvars(), e, F->pow_u64(c, q)));
  return r;
}

} // namespace

TEST_CASE("expected dual degree") {
  CHECK(expected_dual_degree(2) == 21);
  CHECK(expected_dual_degree(3) == 52);
  for (uint32_t q : {2u, 3u, 4u, 5u}) {
    uint32_t d = q * q + q + 1;
    CHECK(expected_dual_degree(q) == d * (d - 1) / q);
  }
}

TEST_CASE("point sampling over an extension") {
  auto F2 = Field::make(2, 1, 1);
  auto fer = fermat_curve(2, F2);
  auto S = sample_curve_points(fer, 50, 5, 300);
  CHECK(S.pts.size() == 50);
  CHECK(S.ext->order_u64() >= 300);
  CHECK(S.ext->p() == 2);
  for (auto& P : S.pts) CHECK(on_curve(S.lifted, P));
  // distinctness
  for (size_t i = 0; i < S.pts.size(); ++i)
    for (size_t j = i + 1; j < S.pts.size(); ++j)
      CHECK_FALSE(S.pts[i] == S.pts[j]);
  // determinism
  auto S2 = sample_curve_points(fer, 50, 5, 300);
  REQUIRE(S2.pts.size() == 50);
  for (size_t i = 0; i < 50; ++i) CHECK(S.pts[i] == S2.pts[i]);
}

TEST_CASE("Fermat dual closed form: structure and derivative factorization") {
  auto F2 = Field::make(2, 1, 1);
  auto D = fermat_dual_closed_form(2, F2);
  CHECK(D.degree == 21);
  CHECK(D.H.total_degree() == 21);
  CHECK(D.H.is_homogeneous());
  CHECK(D.method == DualMethod::closed_form);
  CHECK(D.H.leading_expo() == Expo{21, 0, 0});
  CHECK(D.H.leading_coeff() == F2->one());

  // symmetry under coordinate permutations
  for (auto [a, b, c] : {std::array<int, 3>{1, 0, 2}, {2, 1, 0}, {1, 2, 0}}) {
    std::vector<MPoly> im = {MPoly::variable(F2, 3, uint32_t(a)),
                             MPoly::variable(F2, 3, uint32_t(b)),
                             MPoly::variable(F2, 3, uint32_t(c))};
    CHECK(substitute(D.H, im) == D.H);
  }

  // partials factor through the power map: dH/dx_i = x_i^(q^2+q) * (dh/dx_i o pw)
  auto F3 = Field::make(3, 1, 1);
  for (uint32_t q : {2u, 3u}) {
    auto F = (q == 2) ? F2 : F3;
    auto Dq = fermat_dual_closed_form(q, F);
    MPoly h = ballico_hefez(q, F);
    uint32_t n = q * q + q + 1;
    std::vector<MPoly> pw = {mono(F, int(n), 0, 0), mono(F, 0, int(n), 0),
                             mono(F, 0, 0, int(n))};
    Fq scale = F->inv(h.leading_coeff()); // canonical representative factor
    for (uint32_t v = 0; v < 3; ++v) {
      MPoly lhs = partial_derivative(Dq.H, v);
      Expo e{};
      e[v] = uint16_t(n - 1);
      MPoly rhs = mp_mul(MPoly::monomial(F, 3, e, scale),
                         substitute(partial_derivative(h, v), pw));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("Fermat dual: interpolation matches the closed form bit-exactly") {
  auto F2 = Field::make(2, 1, 1);
  auto fer = fermat_curve(2, F2);
  auto Di = dual_curve_interpolate(fer, 0, 77); // degree search from 1
  auto Dc = fermat_dual_closed_form(2, F2);
  CHECK(Di.degree == 21);
  CHECK(Di.method == DualMethod::interpolation);
  CHECK(Di.H == Dc.H);

  auto rep = verify_dual(fer, Dc, 31);
  CHECK(rep.all_ok());
  CHECK(rep.degree == 21);
  CHECK(rep.samples_checked == 100);
}

TEST_CASE("random member: interpolated dual validates on holdout samples") {
  auto E = Field::make(2, 8, 3);
  auto C = random_curve(2, E, 11);
  auto D = dual_curve_interpolate(C, 21, 123);
  CHECK(D.degree == 21);
  CHECK(D.H.total_degree() == 21);
  CHECK(D.H.leading_coeff() == E->one());

  auto rep = verify_dual(C, D, 99);
  CHECK(rep.vanishing_ok);
  CHECK(rep.samples_checked == 100);
  CHECK(rep.degree_ok);
  CHECK(rep.squarefree_ok);
  CHECK(rep.all_ok());

  // unreduced tangent images lie on the coefficient-Frobenius twist
  auto S = sample_curve_points(C, 25, 2024, 512);
  MPoly Ht = map_coefficients(S.emb, frob_coeffs(D.H, 2));
  for (auto& P : S.pts) {
    auto z = gauss_map(S.lifted, P);
    CHECK(S.ext->is_zero(mp_eval(Ht, z.l)));
  }

  // a degree hint below the true degree has no kernel
  CHECK_THROWS_AS(dual_curve_interpolate(C, 20, 123), NoKernel);
}

TEST_CASE("negative control: a mutilated dual fails the vanishing check") {
  auto E = Field::make(2, 8, 3);
  auto C = random_curve(2, E, 11);
  auto D = dual_curve_interpolate(C, 21, 123);
  DualCurve bad = D;
  // drop the trailing term
  auto last = std::prev(bad.H.terms().end());
  bad.H = mp_sub(bad.H, MPoly::monomial(E, 3, last->first, last->second));
  auto rep = verify_dual(C, bad, 99);
  CHECK_FALSE(rep.vanishing_ok);
  CHECK_FALSE(rep.all_ok());
}

TEST_CASE("Fermat dual has 70 singular points at q = 2") {
  auto F2 = Field::make(2, 1, 1);
  auto D = fermat_dual_closed_form(2, F2);
  std::vector<MPoly> gens = {D.H};
  for (uint32_t v = 0; v < 3; ++v) {
    MPoly d = partial_derivative(D.H, v);
    if (!d.is_zero()) gens.push_back(d);
  }
  auto locus = ideals::projective_zeros(gens);
  CHECK(locus.point_count() == 70); // 49 double points plus 21 stranger ones
}

TEST_CASE("Fermat dual closed form validates at q = 3") {
  auto F3 = Field::make(3, 1, 1);
  auto D = fermat_dual_closed_form(3, F3);
  CHECK(D.degree == 52);
  CHECK(D.H.total_degree() == 52);
  CHECK(D.H.leading_coeff() == F3->one()); // canonical scaling
  auto rep = verify_dual(fermat_curve(3, F3), D, 8);
  CHECK(rep.all_ok());
  CHECK(rep.samples_checked == 100);
}
