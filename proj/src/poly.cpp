#include "convcode/poly.hpp"

#include <algorithm>
#include <string>

namespace convcode {

Polynomial::Polynomial(const PrimeField& field) : p_(field.modulus()) {}

Polynomial::Polynomial(std::vector<FieldElem> coeffs, const PrimeField& field)
    : p_(field.modulus()), coeffs_(std::move(coeffs)) {
  for (const FieldElem& c : coeffs_) {
    if (c.p != p_) throw FieldMismatchError("coefficient outside the field");
  }
  while (!coeffs_.empty() && coeffs_.back().value == 0) coeffs_.pop_back();
}

Polynomial Polynomial::from_ints(std::initializer_list<std::int64_t> coeffs,
                                 const PrimeField& field) {
  std::vector<FieldElem> cs;
  cs.reserve(coeffs.size());
  for (std::int64_t c : coeffs) cs.push_back(field.elem_signed(c));
  return Polynomial(std::move(cs), field);
}

Polynomial Polynomial::monomial(FieldElem c, int d) {
  if (d < 0) throw ParameterError("monomial degree must be nonnegative");
  PrimeField field(c.p);
  std::vector<FieldElem> cs(static_cast<std::size_t>(d) + 1, field.zero());
  cs.back() = c;
  return Polynomial(std::move(cs), field);
}

FieldElem Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return {0, p_};
  return coeffs_[i];
}

std::vector<FieldElem> Polynomial::padded_coeffs(int length) const {
  if (length < static_cast<int>(coeffs_.size())) {
    throw DimensionError("padded_coeffs length below degree + 1");
  }
  std::vector<FieldElem> out(static_cast<std::size_t>(length), FieldElem{0, p_});
  std::copy(coeffs_.begin(), coeffs_.end(), out.begin());
  return out;
}

static void check_same_poly_field(const Polynomial& a, const Polynomial& b) {
  if (a.modulus() != b.modulus()) {
    throw FieldMismatchError("polynomials over different fields");
  }
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  check_same_poly_field(a, b);
  PrimeField field(a.modulus());
  std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<FieldElem> cs(n, field.zero());
  for (std::size_t i = 0; i < n; ++i) {
    cs[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  }
  return Polynomial(std::move(cs), field);
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  check_same_poly_field(a, b);
  PrimeField field(a.modulus());
  std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<FieldElem> cs(n, field.zero());
  for (std::size_t i = 0; i < n; ++i) {
    cs[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  }
  return Polynomial(std::move(cs), field);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_same_poly_field(a, b);
  PrimeField field(a.modulus());
  if (a.is_zero() || b.is_zero()) return Polynomial(field);
  std::vector<FieldElem> cs(a.coeffs().size() + b.coeffs().size() - 1,
                            field.zero());
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i].value == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      cs[i + j] += a.coeffs()[i] * b.coeffs()[j];
    }
  }
  return Polynomial(std::move(cs), field);
}

Polynomial poly_scale(const Polynomial& a, const FieldElem& c) {
  if (a.modulus() != c.p) throw FieldMismatchError("scale factor field mismatch");
  PrimeField field(a.modulus());
  std::vector<FieldElem> cs = a.coeffs();
  for (FieldElem& x : cs) x *= c;
  return Polynomial(std::move(cs), field);
}

FieldElem poly_eval(const Polynomial& a, const FieldElem& x) {
  if (a.modulus() != x.p) throw FieldMismatchError("evaluation point field mismatch");
  FieldElem acc{0, a.modulus()};
  for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

EvaluationSet::EvaluationSet(std::vector<FieldElem> points)
    : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    check_same_field(points_[i], points_[0]);
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (points_[i] == points_[j]) {
        throw DuplicateAbscissaError("repeated evaluation point " +
                                     std::to_string(points_[i].value));
      }
    }
  }
}

bool EvaluationSet::contains(const FieldElem& x) const {
  return std::find(points_.begin(), points_.end(), x) != points_.end();
}

EvaluationSet union_of(const std::vector<EvaluationSet>& sets) {
  std::vector<FieldElem> all;
  for (const EvaluationSet& s : sets) {
    all.insert(all.end(), s.points().begin(), s.points().end());
  }
  return EvaluationSet(std::move(all));
}

Polynomial annihilator(const EvaluationSet& a, const PrimeField& field) {
  Polynomial acc = Polynomial::from_ints({1}, field);
  for (const FieldElem& pt : a.points()) {
    check_same_field(pt, field.zero());
    acc = acc * Polynomial({-pt, field.one()}, field);
  }
  return acc;
}

Polynomial annihilator(const EvaluationSet& a) {
  if (a.empty()) {
    throw ParameterError("annihilator of an empty set needs an explicit field");
  }
  return annihilator(a, PrimeField(a[0].p));
}

Polynomial interpolate(
    const std::vector<std::pair<FieldElem, FieldElem>>& pts) {
  if (pts.empty()) throw ParameterError("interpolate needs at least one point");
  std::vector<FieldElem> xs;
  xs.reserve(pts.size());
  for (const auto& [x, y] : pts) {
    check_same_field(x, y);
    xs.push_back(x);
  }
  EvaluationSet support(xs);  // rejects duplicates
  PrimeField field(xs[0].p);
  Polynomial result(field);
  // Incremental Newton form: result interpolates the first i points and
  // basis = prod_{j<i} (x - x_j).
  Polynomial basis = Polynomial::from_ints({1}, field);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    FieldElem want = pts[i].second - poly_eval(result, pts[i].first);
    FieldElem scale = want / poly_eval(basis, pts[i].first);
    result = result + poly_scale(basis, scale);
    basis = basis * Polynomial({-pts[i].first, field.one()}, field);
  }
  return result;
}

Polynomial compose(const Polynomial& outer, const Polynomial& inner) {
  check_same_poly_field(outer, inner);
  PrimeField field(outer.modulus());
  Polynomial acc(field);
  for (auto it = outer.coeffs().rbegin(); it != outer.coeffs().rend(); ++it) {
    acc = acc * inner + Polynomial({*it}, field);
  }
  return acc;
}

Matrix vandermonde(const EvaluationSet& points, int t) {
  if (t < 1) throw DimensionError("vandermonde needs at least one row");
  if (points.empty()) throw DimensionError("vandermonde needs points");
  PrimeField field(points[0].p);
  Matrix m(t, static_cast<int>(points.size()), field);
  for (int j = 0; j < static_cast<int>(points.size()); ++j) {
    FieldElem pw = field.one();
    for (int i = 0; i < t; ++i) {
      m.at(i, j) = pw;
      pw *= points[j];
    }
  }
  return m;
}

XGBasis::XGBasis(Polynomial g_in, int r_in, int k_in)
    : g(std::move(g_in)), r(r_in), k(k_in) {
  if (r < 1 || k < 1) throw ParameterError("basis needs r >= 1 and k >= 1");
  if (g.degree() != r + 1) {
    throw DimensionError("basis polynomial degree " +
                         std::to_string(g.degree()) + " is not r + 1 = " +
                         std::to_string(r + 1));
  }
}

Polynomial XGBasis::member(int index) const {
  if (index < 0 || index >= dim()) throw DimensionError("basis index out of range");
  int t1 = index % r;
  int t2 = index / r;
  PrimeField field(modulus());
  Polynomial acc = Polynomial::monomial(field.one(), t1);
  for (int i = 0; i < t2; ++i) acc = acc * g;
  return acc;
}

std::vector<FieldElem> xg_vector(const FieldElem& point, const XGBasis& basis) {
  if (point.p != basis.modulus()) {
    throw FieldMismatchError("basis evaluation point field mismatch");
  }
  PrimeField field(point.p);
  FieldElem gval = poly_eval(basis.g, point);
  std::vector<FieldElem> out;
  out.reserve(static_cast<std::size_t>(basis.dim()));
  FieldElem gpow = field.one();
  for (int t2 = 0; t2 < basis.k; ++t2) {
    FieldElem xpow = field.one();
    for (int t1 = 0; t1 < basis.r; ++t1) {
      out.push_back(xpow * gpow);
      xpow *= point;
    }
    gpow *= gval;
  }
  return out;
}

Polynomial xg_to_monomial(const std::vector<FieldElem>& coeffs,
                          const XGBasis& basis) {
  if (static_cast<int>(coeffs.size()) != basis.dim()) {
    throw DimensionError("coefficient vector length is not k * r");
  }
  PrimeField field(basis.modulus());
  Polynomial acc(field);
  Polynomial gpow = Polynomial::from_ints({1}, field);
  for (int t2 = 0; t2 < basis.k; ++t2) {
    std::vector<FieldElem> slice(static_cast<std::size_t>(basis.r),
                                 field.zero());
    for (int t1 = 0; t1 < basis.r; ++t1) {
      slice[t1] = coeffs[static_cast<std::size_t>(t2) * basis.r + t1];
    }
    acc = acc + Polynomial(std::move(slice), field) * gpow;
    gpow = gpow * basis.g;
  }
  return acc;
}

std::optional<std::vector<FieldElem>> monomial_to_xg(const Polynomial& f,
                                                     const XGBasis& basis) {
  if (f.modulus() != basis.modulus()) {
    throw FieldMismatchError("polynomial and basis field mismatch");
  }
  PrimeField field(basis.modulus());
  // One member of V_{k,r} has degree at most (k-1)(r+1) + r - 1.
  int maxdeg = (basis.k - 1) * (basis.r + 1) + basis.r - 1;
  if (f.degree() > maxdeg) return std::nullopt;
  int len = maxdeg + 1;
  std::vector<std::vector<FieldElem>> columns;
  columns.reserve(static_cast<std::size_t>(basis.dim()));
  for (int idx = 0; idx < basis.dim(); ++idx) {
    columns.push_back(basis.member(idx).padded_coeffs(len));
  }
  return in_span(f.padded_coeffs(len), columns);
}

}  // namespace convcode
