#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "convcode/matrix.hpp"

namespace convcode {

/// Polynomial over a prime field, coefficients in ascending degree order
/// with the leading coefficient nonzero.  The zero polynomial has no
/// coefficients and degree -1.
class Polynomial {
 public:
  /// Zero polynomial over the given field.
  explicit Polynomial(const PrimeField& field);
  /// Trims trailing zeros; all coefficients must share the field.
  Polynomial(std::vector<FieldElem> coeffs, const PrimeField& field);

  static Polynomial from_ints(std::initializer_list<std::int64_t> coeffs,
                              const PrimeField& field);
  /// The monomial c * x^d.
  static Polynomial monomial(FieldElem c, int d);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::uint32_t modulus() const { return p_; }
  const std::vector<FieldElem>& coeffs() const { return coeffs_; }
  /// Coefficient of x^i; zero beyond the degree.
  FieldElem coeff(int i) const;
  /// Coefficients padded with zeros to the given length (>= degree + 1).
  std::vector<FieldElem> padded_coeffs(int length) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::uint32_t p_;
  std::vector<FieldElem> coeffs_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, const FieldElem& c);

/// Horner evaluation.
FieldElem poly_eval(const Polynomial& a, const FieldElem& x);

/// Nonempty list of pairwise distinct points of one field.
class EvaluationSet {
 public:
  EvaluationSet() = default;
  /// Throws DuplicateAbscissaError on repeats, FieldMismatchError on
  /// mixed moduli.
  explicit EvaluationSet(std::vector<FieldElem> points);

  const std::vector<FieldElem>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const FieldElem& operator[](std::size_t i) const { return points_[i]; }
  bool contains(const FieldElem& x) const;

  friend bool operator==(const EvaluationSet&, const EvaluationSet&) = default;

 private:
  std::vector<FieldElem> points_;
};

/// Union of several point lists, still required to be distinct overall.
EvaluationSet union_of(const std::vector<EvaluationSet>& sets);

/// Monic annihilator prod_{a in A} (x - a); the empty product is 1.
/// The empty-set overload needs the field spelled out.
Polynomial annihilator(const EvaluationSet& a, const PrimeField& field);
Polynomial annihilator(const EvaluationSet& a);

/// Lagrange interpolation through (x_i, y_i); x_i pairwise distinct.
/// Quadratic in the number of points.
Polynomial interpolate(const std::vector<std::pair<FieldElem, FieldElem>>& pts);

/// Composition outer(inner).
Polynomial compose(const Polynomial& outer, const Polynomial& inner);

/// t x |points| matrix with entry (i, j) = points[j]^(i-1), rows indexed
/// from 1: row 1 is all ones, row t holds points^(t-1).
Matrix vandermonde(const EvaluationSet& points, int t);

/// Basis {x^{t1} g(x)^{t2} : 0 <= t1 < r, 0 <= t2 < k} of the polynomial
/// space V_{k,r}; deg g must be exactly r + 1.  Flat index t2 * r + t1.
struct XGBasis {
  Polynomial g;
  int r;
  int k;

  XGBasis(Polynomial g_in, int r_in, int k_in);
  int dim() const { return k * r; }
  std::uint32_t modulus() const { return g.modulus(); }
  /// Basis polynomial at the given flat index.
  Polynomial member(int index) const;
};

/// Evaluations (x^{t1} g(x)^{t2})(point) in flat index order; the inner
/// product of a coefficient vector with this is the evaluation of the
/// corresponding member of V_{k,r}.
std::vector<FieldElem> xg_vector(const FieldElem& point, const XGBasis& basis);

/// Expands a coefficient vector over the basis into a plain polynomial.
Polynomial xg_to_monomial(const std::vector<FieldElem>& coeffs,
                          const XGBasis& basis);

/// Left inverse of xg_to_monomial on V_{k,r}: recovers the coefficient
/// vector, or nullopt if the polynomial lies outside the spanned space.
std::optional<std::vector<FieldElem>> monomial_to_xg(const Polynomial& f,
                                                     const XGBasis& basis);

}  // namespace convcode
