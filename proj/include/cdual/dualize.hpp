#pragma once
// Dual curves of family members: the image of the reduced tangent map,
// recovered either by linear-algebra interpolation through sampled tangent
// images or (for the Fermat member) from the closed form.

#include "cdual/curves.hpp"

namespace cdual::dual {

struct KernelTooBig : gf::FieldError {
  explicit KernelTooBig(const std::string& m)
      : gf::FieldError("interpolation kernel not 1-dimensional: " + m) {}
};
struct NoKernel : gf::FieldError {
  explicit NoKernel(const std::string& m)
      : gf::FieldError("no interpolation kernel: " + m) {}
};

enum class DualMethod { interpolation, closed_form };

struct DualCurve {
  poly::MPoly H;         // homogeneous polynomial in dual coordinates
  uint32_t degree = 0;   // == H.total_degree()
  curves::Curve source;  // the member this is dual to
  DualMethod method = DualMethod::interpolation;
};

// (q^2+q+1)(q+1), which also equals d(d-1)/q for d = q^2+q+1
uint32_t expected_dual_degree(uint32_t q);

// a batch of distinct curve points over an extension of the member's field,
// found by solving for one coordinate over random values of the others; the
// extension is grown until it holds at least max(min_order, 3*count) elements
struct ExtSamples {
  gf::FieldPtr ext;
  gf::Embedding emb;      // C.field -> ext (identity when equal)
  curves::Curve lifted;   // C with coefficients mapped into ext
  std::vector<curves::ProjPoint> pts;
};
ExtSamples sample_curve_points(const curves::Curve& C, size_t count,
                               uint64_t seed, uint64_t min_order = 0);

// Interpolates the polynomial vanishing on reduced tangent images of sampled
// points. degree_hint == 0 searches for the least degree with a nontrivial
// kernel (affordable for q = 2; at q = 3 pass expected_dual_degree(3)).
// The kernel must be exactly 1-dimensional; its generator is normalized to a
// leading coefficient of 1 and pulled back to the member's own field.
DualCurve dual_curve_interpolate(const curves::Curve& C, uint32_t degree_hint,
                                 uint64_t seed);

// For the Fermat member: H(x) = h(x0^(q^2+q+1), x1^(q^2+q+1), x2^(q^2+q+1))
// with h the Ballico-Hefez polynomial.
DualCurve fermat_dual_closed_form(uint32_t q, const gf::FieldPtr& F);

struct DualReport {
  bool vanishing_ok = false;     // H vanishes on fresh tangent images
  uint32_t samples_checked = 0;
  bool degree_ok = false;        // degree equals (q^2+q+1)(q+1)
  uint32_t degree = 0;
  uint32_t expected_degree = 0;
  bool squarefree_ok = false;    // restriction to a random line is squarefree
  bool all_ok() const { return vanishing_ok && degree_ok && squarefree_ok; }
};

// Validation by fresh sampling: vanishing on new tangent images, expected
// degree, and squarefreeness via random line restrictions (a squarefree
// restriction certifies H has no repeated factor).
DualReport verify_dual(const curves::Curve& C, const DualCurve& D, uint64_t seed);

} // namespace cdual::dual
