#pragma once
// Ideal-theoretic toolbox: reduced Groebner bases (graded-lex), degrees of
// zero-dimensional ideals, intersection numbers of plane curves by Fulton's
// recursive axioms, Milnor numbers, and exact solving of zero-dimensional
// homogeneous systems in three variables over finite fields.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdual/mpoly.hpp"

namespace cdual {
namespace ideals {

using gf::FieldPtr;
using gf::Fq;
using poly::MPoly;

struct NotZeroDimensional : gf::FieldError {
  NotZeroDimensional()
      : FieldError("ideal is not zero-dimensional (no pure-power leading monomial "
                   "for some variable)") {}
};

struct InfiniteMilnor : gf::FieldError {
  InfiniteMilnor()
      : FieldError("Milnor number is infinite (non-isolated critical point)") {}
};

struct NotFinite : gf::FieldError {
  explicit NotFinite(const std::string& what) : FieldError("locus not finite: " + what) {}
};

// Reduced Groebner basis under graded-lex (x0 > x1 > x2): every generator is
// monic, no leading monomial divides another, all tails reduced. Generators
// are sorted by decreasing leading monomial.
struct GroebnerBasis {
  FieldPtr field;
  uint32_t nvars = 0;
  std::vector<MPoly> generators;
  std::string order = "grlex";
};

// Buchberger's algorithm, normal pair-selection strategy (smallest lcm in
// graded-lex, ties by generator indices), followed by inter-reduction.
GroebnerBasis buchberger(const std::vector<MPoly>& gens);

// remainder of f under multivariate division by the basis (canonical: divisors
// tried in stored order); zero iff f lies in the ideal
MPoly normal_form(const MPoly& f, const GroebnerBasis& gb);

// dimension of F[x]/I as a vector space = number of standard monomials;
// throws NotZeroDimensional unless every variable has a pure-power leading
// monomial in the basis
uint64_t zero_dim_degree(const GroebnerBasis& gb);

// Intersection number of the plane curves f = 0 and g = 0 at the point P,
// computed by Fulton's recursive axioms with exact arithmetic. Both inputs are
// polynomials in two variables (x0, x1). std::nullopt encodes an infinite
// intersection number (a common component through P).
using Mult = std::optional<uint64_t>;
Mult fulton_multiplicity(const MPoly& f, const MPoly& g, const std::array<Fq, 2>& P);

// mu_P(f) = intersection number of the two partial derivatives at P; throws
// InfiniteMilnor when that number is infinite
uint64_t milnor_number(const MPoly& f, const std::array<Fq, 2>& P);

// One Galois conjugacy class of zeros of a homogeneous system. The
// representative lives in the stated extension of the input field and has its
// last nonzero coordinate normalized to 1; residue_degree is the degree of the
// class's residue field over the input field (= class size over the closure).
struct LocusClass {
  FieldPtr ext;
  gf::Embedding emb;     // input field -> ext, the map under which rep is a zero
  std::array<Fq, 3> rep{};
  uint32_t residue_degree = 1;
  std::optional<uint64_t> multiplicity; // local intersection multiplicity
};

struct ZeroDimLocus {
  std::vector<LocusClass> classes;
  uint64_t point_count() const; // distinct zeros over the closure
};

// All projective zeros of a finite homogeneous system in three variables,
// grouped into conjugacy classes. Elimination runs per stratum (x2 != 0; then
// x2 = 0, x1 != 0; then [1:0:0]) so classes are found exactly once; within a
// stratum classes follow the canonical irreducible-factor order. Throws
// NotFinite when the zero set contains a curve. When with_multiplicities is
// set, each class carries its local intersection multiplicity (two-generator
// systems use the Fulton recursion; larger systems use the dimension of the
// local quotient, obtained by saturating with powers of the maximal ideal).
ZeroDimLocus projective_zeros(const std::vector<MPoly>& gens,
                              bool with_multiplicities = false);

} // namespace ideals
} // namespace cdual
