#pragma once
// Census layer: exact singular-point census of a dual curve over the
// algebraic closure, tangency (flex) census of a smooth family member, genus
// bookkeeping from local invariants, and the verification drivers for the
// generic-member and Fermat-member statements about the family.
//
// The censuses work factor by factor: each affine chart is eliminated to a
// squarefree candidate polynomial, and every irreducible factor m yields a
// conjugacy block handled at once through arithmetic in E[x]/(m) — fiber
// gcds, radicals, and certificate gcds — without materializing any root.
// Only blocks that need pointwise analysis (certificate failures, audit
// flags) are materialized over explicit extensions, and only when small.

#include "cdual/dualize.hpp"
#include "cdual/solver.hpp"

namespace cdual::census {

using poly::MPoly;

struct OddSum : gf::FieldError {
  OddSum() : gf::FieldError("genus correction sum is odd") {}
};

struct IncompleteCensus : gf::FieldError {
  IncompleteCensus()
      : gf::FieldError("census contains unclassified points; genus undefined") {}
};

enum class SingKind { node, special, unknown };

// One census record: a whole conjugacy block (x_degree * fiber_degree points
// sharing every reported invariant) or, when materialized, a single
// conjugacy class with a representative over an explicit extension (then
// points == the class's residue degree and fiber_degree == 1).
struct SingRecord {
  uint32_t stratum = 2; // 2: x2 != 0; 1: x2 = 0, x1 != 0; 0: [1:0:0]
  uint64_t points = 0;  // distinct geometric points covered by this record
  uint32_t x_degree = 0;
  uint32_t fiber_degree = 0;
  SingKind kind = SingKind::unknown;
  std::optional<uint64_t> mu;       // Milnor number at each point
  std::optional<uint32_t> branches; // local branches at each point
  std::optional<ideals::LocusClass> cls;
};

struct SingCensus {
  std::vector<SingRecord> records;
  uint64_t node_count = 0;
  uint64_t special_count = 0;
  uint64_t unknown_count = 0;
  uint64_t total() const { return node_count + special_count + unknown_count; }
};

// Census of the singular points of D.H. Every block is first tested with the
// characteristic-free ordinary-node certificate (one quotient-ring gcd);
// failing parts are split off exactly, materialized when small, and analyzed
// pointwise (Milnor number via the chart Jacobian pair, branch count via
// preimages under C's reduced tangent map). C is the source member the dual
// was computed from. Throws ideals::NotFinite when the singular locus is not
// zero-dimensional.
SingCensus singularity_census(const dual::DualCurve& D, const curves::Curve& C);

struct FlexRecord {
  uint32_t stratum = 2;
  uint64_t points = 0;
  uint32_t x_degree = 0;
  uint32_t fiber_degree = 0;
  std::optional<bool> hyper; // set when audited exactly
  std::optional<ideals::LocusClass> cls;
};

struct FlexCensus {
  uint64_t flex_count = 0;      // tangent contact exactly q + 1
  uint64_t hyperflex_count = 0; // tangent contact >= q + 2
  std::vector<FlexRecord> records;
};

// Census of the points whose tangent meets the curve with multiplicity
// > q (the generic tangent contact of the family is exactly q). Requires C
// smooth. Counts are exact over the closure; records covering few points are
// audited individually through the tangent-line multiplicity, which also
// cross-checks the tangency-scheme certificates. Throws ideals::NotFinite
// when a tangency scheme fails to cut a zero-dimensional locus.
FlexCensus flex_census(const curves::Curve& C);

uint64_t genus_smooth(uint64_t d);

// geometric genus of the normalization from the dual degree and the census:
// (d-1)(d-2)/2 - sum residue_degree * (mu + branches - 1) / 2. Throws
// IncompleteCensus when a record lacks its invariants, OddSum when the
// correction sum is odd, FieldError when it exceeds the arithmetic genus.
uint64_t genus_from_census(uint32_t dual_degree, const SingCensus& cen);

// closed-form expected counts for the family
uint64_t generic_node_count(uint32_t q); // q(q^2+q+1)(q^3+3q^2+3q-1)/2
uint64_t generic_flex_count(uint32_t q); // (q^3+2q^2-q+1)(q^2+q+1)
uint64_t fermat_node_count(uint32_t q);  // (q^2+q+1)^2 (q^2-q)/2
uint64_t fermat_special_count(uint32_t q); // 3(q^2+q+1)
uint64_t fermat_special_mu(uint32_t q);    // q^2 (q+1)

// Verification report for one analyzed member. Flags a driver does not
// evaluate are left true, so pass is always the conjunction of all flags.
struct CensusReport {
  uint32_t q = 0;
  uint64_t seed = 0;
  uint32_t trial = 0;
  uint32_t resamples = 0; // draws discarded before the reported member
  uint32_t dual_degree = 0;
  uint64_t node_count = 0;
  uint64_t special_count = 0;
  uint64_t unknown_count = 0;
  uint64_t flex_count = 0;
  uint64_t hyperflex_count = 0;
  std::vector<SingRecord> specials; // the non-node records
  uint64_t genus_source = 0;
  uint64_t genus_dual = 0;
  bool degree_ok = true;
  bool dual_verified = true;
  bool nodes_ok = true;      // every singular point certified an ordinary node
  bool delta_ok = true;      // node count matches the closed form
  bool flex_ok = true;       // flex count matches, no hyperflexes
  bool special_ok = true;    // special singularities match (count, mu, branches)
  bool bh_ok = true;         // image-curve model has the expected node count
  bool dual_equal_ok = true; // interpolated dual == closed-form dual, bit-exact
  bool genus_ok = true;      // census genus equals the smooth source genus
  bool pass = false;
  std::string note;
  std::optional<curves::Curve> member;
};

// Generic-member driver: `trials` independent random members over
// GF(p^ext_k), each analyzed end to end (dual interpolation, dual
// verification, singular census, flex census, genus). A draw that fails a
// genericity gate is resampled at most twice; an exhausted trial reports
// pass = false with the offending tensor serialized in note.
std::vector<CensusReport> verify_theorem1(uint32_t q, uint64_t seed,
                                          uint32_t trials, uint32_t ext_k = 8);

// Fermat-member driver over the prime field: both dual routes compared
// bit-exactly, full singular census (nodes + special points with their
// Milnor numbers and branch counts), image-curve node count, genus identity.
CensusReport verify_theorem2(uint32_t q);

} // namespace cdual::census
