#include <doctest.h>

#include <optional>
#include <utility>
#include <vector>

#include "convcode/errors.hpp"
#include "convcode/field.hpp"
#include "convcode/matrix.hpp"
#include "convcode/poly.hpp"
#include "convcode/rng.hpp"

using namespace convcode;

namespace {
std::vector<long> values_of(const std::vector<FieldElem>& v) {
  std::vector<long> out;
  for (const FieldElem& e : v) out.push_back(e.value);
  return out;
}
}  // namespace

TEST_SUITE("poly") {
  TEST_CASE("construction trims trailing zeros") {
    PrimeField f(19);
    Polynomial p = Polynomial::from_ints({1, 2, 0}, f);
    CHECK(p.degree() == 1);
    Polynomial zero(f);
    CHECK(zero.is_zero());
    CHECK(zero.degree() == -1);
    CHECK(Polynomial::from_ints({0, 0}, f).is_zero());
    CHECK(p.coeff(0).value == 1);
    CHECK(p.coeff(1).value == 2);
    CHECK(p.coeff(7).value == 0);
    CHECK(values_of(p.padded_coeffs(4)) == std::vector<long>{1, 2, 0, 0});
  }

  TEST_CASE("ring operations") {
    PrimeField f(19);
    Polynomial a = Polynomial::from_ints({1, 1}, f);   // x + 1
    Polynomial b = Polynomial::from_ints({-1, 1}, f);  // x - 1
    CHECK(a * b == Polynomial::from_ints({-1, 0, 1}, f));
    CHECK(a + b == Polynomial::from_ints({0, 2}, f));
    CHECK(a - a == Polynomial(f));
    CHECK(poly_scale(a, f.elem(3)) == Polynomial::from_ints({3, 3}, f));
    Polynomial m = Polynomial::monomial(f.elem(2), 3);
    CHECK(m.degree() == 3);
    CHECK(m.coeff(3).value == 2);
  }

  TEST_CASE("evaluation") {
    PrimeField f(19);
    Polynomial p = Polynomial::from_ints({3, 2, 1}, f);  // x^2 + 2x + 3
    CHECK(poly_eval(p, f.elem(4)).value == 8);
    CHECK(poly_eval(Polynomial(f), f.elem(5)) == f.zero());
  }

  TEST_CASE("evaluation sets reject duplicates") {
    PrimeField f(19);
    CHECK_THROWS_AS(EvaluationSet(f.elems({1, 2, 1})), DuplicateAbscissaError);
    EvaluationSet s(f.elems({1, 2, 3}));
    CHECK(s.size() == 3);
    CHECK(s.contains(f.elem(2)));
    CHECK_FALSE(s.contains(f.elem(4)));
    EvaluationSet u = union_of({s, EvaluationSet(f.elems({4, 5}))});
    CHECK(u.size() == 5);
    CHECK_THROWS_AS(union_of({s, EvaluationSet(f.elems({3, 4}))}),
                    DuplicateAbscissaError);
  }

  TEST_CASE("annihilator") {
    PrimeField f(19);
    Polynomial h = annihilator(EvaluationSet(f.elems({1, 2})), f);
    CHECK(h == Polynomial::from_ints({2, -3, 1}, f));
    CHECK(poly_eval(h, f.elem(1)) == f.zero());
    CHECK(poly_eval(h, f.elem(2)) == f.zero());
    CHECK(annihilator(EvaluationSet(), f) == Polynomial::from_ints({1}, f));
    CHECK_THROWS_AS(annihilator(EvaluationSet()), ParameterError);
  }

  TEST_CASE("interpolation") {
    PrimeField f(19);
    std::vector<std::pair<FieldElem, FieldElem>> pts = {
        {f.elem(1), f.elem(1)}, {f.elem(2), f.elem(4)}, {f.elem(3), f.elem(9)}};
    Polynomial p = interpolate(pts);
    CHECK(p == Polynomial::from_ints({0, 0, 1}, f));
    SplitMix64 rng(5);
    std::vector<std::pair<FieldElem, FieldElem>> rand_pts;
    for (int x = 0; x < 6; ++x) {
      rand_pts.emplace_back(f.elem(static_cast<std::uint64_t>(x)),
                            rng.next_elem(f));
    }
    Polynomial q = interpolate(rand_pts);
    CHECK(q.degree() <= 5);
    for (const auto& [x, y] : rand_pts) CHECK(poly_eval(q, x) == y);
    std::vector<std::pair<FieldElem, FieldElem>> dup = {
        {f.elem(1), f.elem(1)}, {f.elem(1), f.elem(2)}};
    CHECK_THROWS_AS(interpolate(dup), ParameterError);
  }

  TEST_CASE("composition") {
    PrimeField f(19);
    Polynomial inner = Polynomial::from_ints({1, 1}, f);  // x + 1
    Polynomial outer = Polynomial::from_ints({0, 0, 1}, f);  // x^2
    CHECK(compose(outer, inner) == Polynomial::from_ints({1, 2, 1}, f));
    FieldElem x = f.elem(7);
    CHECK(poly_eval(compose(outer, inner), x) ==
          poly_eval(outer, poly_eval(inner, x)));
  }

  TEST_CASE("vandermonde") {
    PrimeField f(19);
    Matrix v = vandermonde(EvaluationSet(f.elems({1, 2, 3})), 2);
    CHECK(v.rows() == 2);
    CHECK(v.cols() == 3);
    CHECK(values_of(v.row(0)) == std::vector<long>{1, 1, 1});
    CHECK(values_of(v.row(1)) == std::vector<long>{1, 2, 3});
  }

  TEST_CASE("product basis") {
    PrimeField f(19);
    Polynomial g = Polynomial::from_ints({0, 0, 0, 1}, f);  // x^3
    XGBasis basis(g, 2, 2);
    CHECK(basis.dim() == 4);
    CHECK(basis.member(0) == Polynomial::from_ints({1}, f));
    CHECK(basis.member(1) == Polynomial::from_ints({0, 1}, f));
    CHECK(basis.member(2) == g);
    CHECK(basis.member(3) == Polynomial::from_ints({0, 0, 0, 0, 1}, f));
    CHECK_THROWS_AS(XGBasis(Polynomial::from_ints({0, 1}, f), 2, 2),
                    ParameterError);
    CHECK(values_of(xg_vector(f.elem(4), basis)) ==
          std::vector<long>{1, 4, 7, 9});
    CHECK(values_of(xg_vector(f.elem(9), basis)) ==
          std::vector<long>{1, 9, 7, 6});
  }

  TEST_CASE("product basis conversions") {
    PrimeField f(19);
    Polynomial g = Polynomial::from_ints({0, 0, 0, 1}, f);
    XGBasis basis(g, 2, 2);
    std::vector<FieldElem> coeffs = f.elems({2, 3, 5, 7});
    Polynomial mono = xg_to_monomial(coeffs, basis);
    // 2 + 3x + 5x^3 + 7x^4
    CHECK(mono == Polynomial::from_ints({2, 3, 0, 5, 7}, f));
    std::optional<std::vector<FieldElem>> back = monomial_to_xg(mono, basis);
    REQUIRE(back.has_value());
    CHECK(*back == coeffs);
    // x^2 is not spanned by {1, x, g, x g}.
    CHECK_FALSE(monomial_to_xg(Polynomial::from_ints({0, 0, 1}, f), basis)
                    .has_value());
    SplitMix64 rng(9);
    for (int t = 0; t < 20; ++t) {
      std::vector<FieldElem> c = rng.next_vector(f, 4);
      std::optional<std::vector<FieldElem>> rt =
          monomial_to_xg(xg_to_monomial(c, basis), basis);
      REQUIRE(rt.has_value());
      CHECK(*rt == c);
    }
  }
}
