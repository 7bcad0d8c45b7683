#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cdual/ideals.hpp"

// Plane curves of degree q^2+q+1 cut out by tensors: F = sum a_ijk x_i x_j^q
// x_k^(q^2). The family is closed under linear coordinate changes, its Gauss
// map factors through a coordinatewise q-th power, and tangency/flex behaviour
// is controlled by the tensor entries. Everything here is exact arithmetic.
namespace cdual::curves {

using gf::FieldPtr;
using gf::Fq;
using poly::Expo;
using poly::MPoly;

struct ZeroTensor : gf::FieldError {
  ZeroTensor() : gf::FieldError("curve tensor is identically zero") {}
};
struct SingularMatrix : gf::FieldError {
  SingularMatrix() : gf::FieldError("coordinate change matrix is singular") {}
};
struct ZeroPoint : gf::FieldError {
  ZeroPoint() : gf::FieldError("projective point has all coordinates zero") {}
};
struct NotOnCurve : gf::FieldError {
  NotOnCurve() : gf::FieldError("point does not lie on the curve") {}
};
struct SingularPoint : gf::FieldError {
  SingularPoint() : gf::FieldError("all partial derivatives vanish at the point") {}
};
struct PointNotOnLine : gf::FieldError {
  PointNotOnLine() : gf::FieldError("point does not lie on the line") {}
};
struct AdaptationFailure : gf::FieldError {
  AdaptationFailure() : gf::FieldError("could not adapt coordinates at the point") {}
};
struct AuxiliaryDegenerate : gf::FieldError {
  AuxiliaryDegenerate()
      : gf::FieldError("point lies on the auxiliary line; use another line") {}
};
struct CrossValidationFailure : gf::FieldError {
  explicit CrossValidationFailure(const std::string& m)
      : gf::FieldError("closed formula failed cross-validation: " + m) {}
};
struct GenericityFailure : gf::FieldError {
  explicit GenericityFailure(const std::string& m)
      : gf::FieldError("no generic member found: " + m) {}
};

// e >= 1 with p^e = q; throws FieldError if q is not a power of p or the
// degree q^3+2q^2+1 of the tangency polynomial would overflow exponents
uint32_t q_exponent(uint32_t p, uint32_t q);

// member of the curve family: 27 coefficients a_(i,j,k), stored row-major
struct Curve {
  FieldPtr field;
  uint32_t q = 0;
  std::array<Fq, 27> a{};

  Fq& at(int i, int j, int k) { return a[size_t(9 * i + 3 * j + k)]; }
  const Fq& at(int i, int j, int k) const { return a[size_t(9 * i + 3 * j + k)]; }
};

// validates: field set, q a power of the characteristic, tensor not all zero
Curve make_curve(FieldPtr F, uint32_t q, std::array<Fq, 27> a);

// the homogeneous polynomial sum a_ijk x_i x_j^q x_k^(q^2), degree q^2+q+1
MPoly expand_curve(const Curve& C);

// inverse of expand_curve: decode a polynomial supported on the family's
// exponent set back into a tensor (each exponent triple decodes uniquely
// base q); throws FieldError on a monomial outside the family
Curve collect_curve(const MPoly& F, uint32_t q);

// diagonal tensor a_iii = 1: expands to x0^d + x1^d + x2^d, d = q^2+q+1
Curve fermat_curve(uint32_t q, FieldPtr F);

// uniformly random tensor, resampled (at most 32 draws) until the member is
// smooth and satisfies the caller's extra check, if any; *retries (optional)
// receives the number of rejected draws
Curve random_curve(uint32_t q, FieldPtr F, uint64_t seed,
                   const std::function<bool(const Curve&)>& extra = {},
                   uint32_t* retries = nullptr);

using Mat3 = std::array<Fq, 9>; // row-major t[3*i+l]

Fq det3(const FieldPtr& F, const Mat3& T);

// coordinate change x_i = sum_l T[i][l] y_l, computed by substituting into
// the expansion and decoding the result back into a tensor
Curve transform_coordinates(const Curve& C, const Mat3& T);

// multiply every tensor entry by a nonzero constant (same projective curve)
Curve scale_curve(const Curve& C, const Fq& c);

// map the tensor through a field embedding
Curve base_change(const Curve& C, const gf::Embedding& emb);

// true iff (F, dF/dx0, dF/dx1, dF/dx2) has no projective zero; a
// positive-dimensional singular locus (non-reduced member) counts as singular
bool is_smooth(const Curve& C);

// projective point / line, last nonzero coordinate normalized to 1
struct ProjPoint {
  FieldPtr field;
  std::array<Fq, 3> x{};
};
struct Line {
  FieldPtr field;
  std::array<Fq, 3> l{};
};

ProjPoint make_point(const FieldPtr& F, std::array<Fq, 3> x);
Line make_line(const FieldPtr& F, std::array<Fq, 3> l);

bool operator==(const ProjPoint& a, const ProjPoint& b);
bool operator==(const Line& a, const Line& b);
bool incident(const Line& L, const ProjPoint& P); // sum l_i x_i = 0

// evaluation straight from the tensor (no expansion): sum a_ijk P_i P_j^q P_k^(q^2)
Fq eval_curve(const Curve& C, const ProjPoint& P);
bool on_curve(const Curve& C, const ProjPoint& P);
std::array<Fq, 3> gradient_at(const Curve& C, const ProjPoint& P);

// the three partial derivatives of the expansion
std::array<MPoly, 3> gradient_polys(const Curve& C);

// G_i = sum_jk a_ijk^(1/q) x_j x_k^q, the q-th root of dF/dx_i; degree q+1
std::array<MPoly, 3> reduced_gauss_polys(const Curve& C);

// tangent line [F_0(P) : F_1(P) : F_2(P)]; the curve's degree is 1 mod p, so
// the tangent passes through P
Line gauss_map(const Curve& C, const ProjPoint& P);

// [G_0(P) : G_1(P) : G_2(P)]; its coordinatewise q-th power is gauss_map
Line reduced_gauss(const Curve& C, const ProjPoint& P);

// order of vanishing at P of the restriction of F to L (parametrized with P
// at parameter 0); nullopt when L is contained in the curve
std::optional<uint64_t> line_mult(const Curve& C, const Line& L, const ProjPoint& P);

// truncated power series sum c[i] t^i, known modulo t^(order+1)
struct PowerSeries {
  FieldPtr field;
  uint32_t order = 0;
  std::vector<Fq> c; // size order+1

  Fq coeff(uint32_t i) const { return c.at(i); }
};

// branch of the curve at a smooth point P in adapted coordinates: after the
// coordinate change `transform` the point is [0:0:1], the tangent is
// {y0 = 0}, the tensor entry (0,2,2) is 1, and x = phi(t), y = t
// parametrizes the curve: f(phi(t), t) = 0 mod t^(N+1)
struct LocalParam {
  Curve adapted;
  Mat3 transform;
  PowerSeries phi;
};

LocalParam local_parametrization_full(const Curve& C, const ProjPoint& P, uint32_t N);
PowerSeries local_parametrization(const Curve& C, const ProjPoint& P, uint32_t N);

// coefficient of s^m in F(x + s Q(x)) with Q = gradient x aux, as a
// polynomial in x; the pencil parameter s only appears with exponents
// e0 + q e1 + q^2 e2, e_i in {0,1}, and all other coefficients vanish
// identically. 1 <= m <= q^2 + q + 1.
MPoly flex_scheme_coefficient(const Curve& C, const Line& aux, uint32_t m);

// tangency polynomial for the auxiliary line `aux`: the coefficient of s^q in
// F(x + s Q(x)) with Q = gradient x aux. For a smooth point P of the curve
// with P not on aux and T_P C != aux, it vanishes iff the tangent at P meets
// the curve with multiplicity > q there. Homogeneous of degree q^3+2q^2+1.
MPoly flex_scheme(const Curve& C, const Line& aux);

// throws AuxiliaryDegenerate when the flex_scheme value at P is meaningless:
// P on aux, or tangent at P equal to aux
void check_aux_line(const Curve& C, const Line& aux, const ProjPoint& P);

// multiplicity of the tangent at P is exactly q+1 (higher contact is a
// hyperflex and reports false here)
bool is_flex(const Curve& C, const ProjPoint& P);

// degree-(q+1) plane curve traced by [x0^(q+1) : x1^(q+1) : x2^(q+1)] over
// the line x0+x1+x2 = 0, by closed formula (one for p = 2, one for p odd),
// cross-validated on 200 sampled image points over an extension
MPoly ballico_hefez(uint32_t q, FieldPtr F);

struct NotOnDual : gf::FieldError {
  NotOnDual() : gf::FieldError("line has no preimage under the reduced tangent map") {}
};

// all curve points whose reduced tangent image is y: projective zeros of
// {F, y_i G_j - y_j G_i}; y must live over the curve's field (base_change first)
ideals::ZeroDimLocus reduced_gauss_preimages(const Curve& C, const Line& y);

} // namespace cdual::curves
