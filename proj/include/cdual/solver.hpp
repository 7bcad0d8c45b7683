#pragma once
// Pointwise singularity classification: Hasse derivatives, an ordinary-node
// certificate valid in every characteristic, chart-local equations, and
// per-conjugacy-class Milnor / branch analysis for zero-dimensional loci.

#include "cdual/curves.hpp"
#include "cdual/ideals.hpp"

namespace cdual::solve {

// r-th Hasse (divided-power) derivative with respect to var:
// x^e -> binom(e, r) x^(e-r). r = 1 is the ordinary partial; in
// characteristic p the classical r-th derivative dies for r >= p while the
// Hasse derivative keeps carrying the degree-r Taylor coefficient. r <= 4.
poly::MPoly hasse_derivative(const poly::MPoly& f, uint32_t var, uint32_t r);

// Ordinary-node failure polynomial for the affine chart with coordinates
// (u, v): N = (D_u D_v f)^2 - 4 (D_u^(2) f) (D_v^(2) f), the discriminant of
// the degree-2 Taylor form with Hasse coefficients. At a singular point P in
// that chart, N(P) != 0  iff  P has multiplicity 2 with squarefree initial
// form — an ordinary node — in every characteristic (in char 2 the formula
// degenerates to (D_u D_v f)^2, which is the correct criterion there).
poly::MPoly node_failure_poly(const poly::MPoly& f, uint32_t u, uint32_t v);

// disjoint strata of the projective plane by normalized representative:
// 2 on {x2 != 0}; 1 on {x2 = 0, x1 != 0}; 0 at [1:0:0]
uint32_t stratum_of(const std::array<gf::Fq, 3>& rep);

// affine coordinates of the stratum's ambient chart
std::array<uint32_t, 2> chart_pair(uint32_t stratum);

// f with variable c set to 1 and the two remaining variables renumbered to
// (x0, x1) in increasing original order
poly::MPoly chart_poly(const poly::MPoly& f, uint32_t c);

// whether per-class arithmetic in the extension is affordable: evaluations
// tolerate moderately large non-tabled fields; Groebner / elimination passes
// need a tabled field
bool affordable_eval(const gf::FieldPtr& ext);
bool affordable_elim(const gf::FieldPtr& ext);

// node certificates for all three strata of a plane curve h = 0
struct NodeCertificates {
  std::array<poly::MPoly, 3> N; // indexed by stratum
};
NodeCertificates make_node_certificates(const poly::MPoly& h);

// ---- arithmetic over R = E[x]/(m), m monic irreducible over a tabled
// field E. Since m is irreducible, R is a field, and a nonzero element stays
// nonzero under every root specialization x -> xi — which is what makes
// R-level gcd computations valid for the whole conjugacy block at once. ----
struct QuotRing {
  gf::FieldPtr E;
  gf::UniPoly m; // monic, deg >= 1
  gf::UniPoly red(const gf::UniPoly& a) const;
  gf::UniPoly mul(const gf::UniPoly& a, const gf::UniPoly& b) const;
  gf::UniPoly inv(const gf::UniPoly& a) const;
  gf::UniPoly pth_root(const gf::UniPoly& a) const; // Frobenius inverse in R
  bool is_zero(const gf::UniPoly& a) const;
  gf::UniPoly one() const;
};

// polynomials in a second variable y with coefficients in R; index = power
using YPoly = std::vector<gf::UniPoly>;

int ypoly_deg(const YPoly& a);
bool ypoly_is_zero(const YPoly& a);
void ypoly_trim(YPoly& a);
// bivariate chart polynomial f(x, y) (nvars 2, y = variable 1) with the
// x-coefficients reduced mod m
YPoly ypoly_from_bivariate(const QuotRing& R, const poly::MPoly& f);
YPoly ypoly_monic(const QuotRing& R, const YPoly& a);
YPoly ypoly_rem(const QuotRing& R, const YPoly& a, const YPoly& b); // b monic
YPoly ypoly_quo(const QuotRing& R, const YPoly& a, const YPoly& b); // b monic
YPoly ypoly_gcd(const QuotRing& R, YPoly a, YPoly b);               // monic
YPoly ypoly_derivative(const QuotRing& R, const YPoly& a);
// monic polynomial with the same roots as a, each simple — valid in every
// characteristic (recurses through p-th roots when the derivative vanishes)
YPoly ypoly_radical(const QuotRing& R, const YPoly& a);

// conjugacy classes of the chart block V(m(x), g(x, y)) materialized over
// explicit extensions: m irreducible over E, g squarefree over R[y] with
// deg_y g >= 1; chart coordinates land at chart_pair(stratum) and the
// stratum's homogeneous coordinate is set to 1. Only affordable when
// E->k() * deg m is small.
std::vector<ideals::LocusClass> materialize_block(const gf::UniPoly& m,
                                                  const YPoly& g,
                                                  uint32_t stratum,
                                                  uint64_t seed);

struct ClassProfile {
  std::optional<bool> node_certified; // nullopt: evaluation unaffordable
  std::optional<uint64_t> mu;         // Milnor number, when computable
  std::optional<uint32_t> branches;   // preimage count under the reduced
                                      // tangent map of C, when computable
};

// Classifies one singular conjugacy class of h = 0 (a curve in the dual
// plane of C). The node certificate costs one polynomial evaluation at the
// representative; when it fails and deep = true, the Milnor number (chart
// Jacobian intersection number) and the branch count (preimages of the class
// under C's reduced tangent map) are computed where the class extension
// allows elimination-grade arithmetic.
ClassProfile classify_singular_class(const poly::MPoly& h,
                                     const NodeCertificates& certs,
                                     const curves::Curve& C,
                                     const ideals::LocusClass& cls,
                                     bool deep);

} // namespace cdual::solve
