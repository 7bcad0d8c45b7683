#pragma once
// Sparse multivariate polynomials (up to 3 variables) over a Field: arithmetic,
// derivatives, q-th roots of q-th powers, substitution, Sylvester resultants,
// and dense linear algebra (kernel solves, Newton interpolation).

#include "cdual/gf.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace cdual {
namespace poly {

using gf::FieldPtr;
using gf::Fq;
using gf::UniPoly;

// Exponent vector; slots at index >= nvars stay zero.
using Expo = std::array<uint16_t, 3>;

inline uint32_t expo_total(const Expo& e) {
  return uint32_t(e[0]) + e[1] + e[2];
}

// graded lexicographic, descending (x0 > x1 > x2); map iteration order is the
// canonical term order, so begin() is the leading term
struct GrlexGreater {
  bool operator()(const Expo& a, const Expo& b) const {
    uint32_t da = expo_total(a), db = expo_total(b);
    if (da != db) return da > db;
    return a > b; // array lexicographic, x0 first
  }
};

class MPoly {
 public:
  using TermMap = std::map<Expo, Fq, GrlexGreater>;

  MPoly() = default;
  MPoly(FieldPtr F, uint32_t nvars) : F_(std::move(F)), nvars_(nvars) {}

  static MPoly constant(FieldPtr F, uint32_t nvars, const Fq& a);
  static MPoly monomial(FieldPtr F, uint32_t nvars, const Expo& e, const Fq& a);
  static MPoly variable(FieldPtr F, uint32_t nvars, uint32_t i);

  const FieldPtr& field() const { return F_; }
  uint32_t nvars() const { return nvars_; }
  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t term_count() const { return t_.size(); }

  int total_degree() const; // -1 for the zero polynomial
  int degree_in(uint32_t var) const;
  bool is_homogeneous() const;

  Fq coeff(const Expo& e) const;
  Fq leading_coeff() const { return t_.empty() ? Fq{} : t_.begin()->second; }
  Expo leading_expo() const { return t_.empty() ? Expo{} : t_.begin()->first; }

  // add c to the coefficient at e, dropping the term if it cancels
  void add_term(const Expo& e, const Fq& c);
  void set_term(const Expo& e, const Fq& c); // overwrite (or erase on zero)

  bool operator==(const MPoly& o) const { return nvars_ == o.nvars_ && t_ == o.t_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

 private:
  FieldPtr F_;
  uint32_t nvars_ = 0;
  TermMap t_;
};

MPoly mp_add(const MPoly& a, const MPoly& b);
MPoly mp_sub(const MPoly& a, const MPoly& b);
MPoly mp_neg(const MPoly& a);
MPoly mp_mul(const MPoly& a, const MPoly& b);
MPoly mp_scale(const MPoly& a, const Fq& s);
MPoly mp_pow(const MPoly& a, uint32_t e);

// formal partial derivative; exponent contributes e mod p
MPoly partial_derivative(const MPoly& f, uint32_t var);

struct NotAQthPower : gf::FieldError {
  NotAQthPower() : FieldError("polynomial is not a q-th power") {}
};

// inverse of the q-th power map (q = p^nu): exponents divided by q,
// coefficients through nu iterated p-th roots; throws NotAQthPower
MPoly qth_root_poly(const MPoly& f, uint64_t q);

// composition: substitute images[i] for variable i (images.size() == nvars)
MPoly substitute(const MPoly& f, const std::vector<MPoly>& images);

Fq mp_eval(const MPoly& f, const std::array<Fq, 3>& x);

// f as a polynomial in `var`: element j is the coefficient of var^j (an MPoly
// in the remaining variables; the var slot of every exponent is zero)
std::vector<MPoly> coeffs_in_var(const MPoly& f, uint32_t var);

// set variable `var` to 1 (chart map); exponents in var dropped
MPoly set_var_to_one(const MPoly& f, uint32_t var);

// conversions for effectively-univariate polynomials
UniPoly to_univariate(const MPoly& f, uint32_t var); // other vars must be absent
MPoly from_univariate(const UniPoly& u, uint32_t var, uint32_t nvars);

struct DegreeZero : gf::FieldError {
  DegreeZero() : FieldError("resultant: zero degree in the eliminated variable") {}
};

// Sylvester resultant eliminating `var` (formal degrees). Dispatches to
// evaluation/interpolation of the Sylvester determinant when exactly one other
// variable is active over a tabled field, else fraction-free (Bareiss)
// elimination over the polynomial ring. Both routes compute the same
// determinant; tests cross-check them.
MPoly resultant(const MPoly& f, const MPoly& g, uint32_t var);

namespace detail {
MPoly resultant_bareiss(const MPoly& f, const MPoly& g, uint32_t var);
MPoly resultant_interp(const MPoly& f, const MPoly& g, uint32_t var);
} // namespace detail

// exact division in the polynomial ring; throws FieldError when not divisible
MPoly mp_divexact(const MPoly& a, const MPoly& b);

// gcd of two polynomials supported on variables {var_x, var_y} only
// (content / primitive-part Euclid in var_y over F[var_x]); leading graded-lex
// coefficient of the result is 1
MPoly mp_gcd_bivariate(const MPoly& a, const MPoly& b, uint32_t var_x, uint32_t var_y);

// coefficientwise field embedding
MPoly map_coefficients(const gf::Embedding& emb, const MPoly& f);

// canonical text: terms in descending graded-lex order, coefficients via
// Field::to_string, all exponents explicit: "c * x0^a x1^b x2^c"
std::string mp_to_string(const MPoly& f);

// ---------------------------------------------------------------------------
// dense linear algebra
// ---------------------------------------------------------------------------

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr F, size_t rows, size_t cols)
      : F_(std::move(F)), rows_(rows), cols_(cols), a_(rows * cols) {}

  const FieldPtr& field() const { return F_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Fq& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Fq& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

 private:
  FieldPtr F_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<Fq> a_;
};

// right null space basis via Gaussian elimination, deterministic pivoting
// (first row with a nonzero entry in the current column)
std::vector<std::vector<Fq>> kernel_basis(const Matrix& M);

// unique interpolating polynomial of degree < xs.size() through (xs[i], ys[i]);
// xs must be pairwise distinct
UniPoly newton_interpolate(const FieldPtr& F, const std::vector<Fq>& xs,
                           const std::vector<Fq>& ys);

} // namespace poly
} // namespace cdual
