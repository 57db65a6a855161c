#include <doctest.h>

#include <optional>
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

TEST_SUITE("matrix") {
  TEST_CASE("construction and access") {
    PrimeField f(19);
    Matrix z(2, 3, f);
    CHECK(z.rows() == 2);
    CHECK(z.cols() == 3);
    CHECK(z.at(1, 2) == f.zero());
    Matrix id = Matrix::identity(3, f);
    CHECK(id.at(0, 0) == f.one());
    CHECK(id.at(0, 1) == f.zero());
    Matrix d = Matrix::diagonal(f.elems({2, 3}));
    CHECK(d.at(0, 0).value == 2);
    CHECK(d.at(1, 1).value == 3);
    CHECK(d.at(0, 1).value == 0);
    Matrix m = Matrix::from_rows({f.elems({1, 2}), f.elems({3, 4})});
    CHECK(values_of(m.row(1)) == std::vector<long>{3, 4});
    CHECK(values_of(m.col(0)) == std::vector<long>{1, 3});
    CHECK_THROWS_AS(Matrix::from_rows({f.elems({1, 2}), f.elems({3})}),
                    DimensionError);
  }

  TEST_CASE("multiplication") {
    PrimeField f(19);
    Matrix a = Matrix::from_rows({f.elems({1, 2}), f.elems({3, 4})});
    Matrix b = Matrix::from_rows({f.elems({5, 6}), f.elems({7, 8})});
    Matrix c = a * b;
    CHECK(values_of(c.row(0)) == std::vector<long>{0, 3});
    CHECK(values_of(c.row(1)) == std::vector<long>{5, 12});
    Matrix wide(2, 3, f);
    CHECK_THROWS_AS(wide * a, DimensionError);
    PrimeField f23(23);
    Matrix other(2, 2, f23);
    CHECK_THROWS_AS(a * other, FieldMismatchError);
    CHECK(values_of(mat_vec(a, f.elems({1, 1}))) == std::vector<long>{3, 7});
    CHECK(values_of(vec_mat(f.elems({1, 1}), a)) == std::vector<long>{4, 6});
  }

  TEST_CASE("inverse") {
    PrimeField f(19);
    Matrix v = vandermonde(EvaluationSet(f.elems({1, 2, 3, 4})), 4);
    Matrix inv = mat_inverse(v);
    CHECK(v * inv == Matrix::identity(4, f));
    CHECK(inv * v == Matrix::identity(4, f));
    Matrix singular = Matrix::from_rows({f.elems({1, 2}), f.elems({2, 4})});
    CHECK_THROWS_AS(mat_inverse(singular), SingularMatrixError);
    Matrix rect(2, 3, f);
    CHECK_THROWS_AS(mat_inverse(rect), SingularMatrixError);
  }

  TEST_CASE("rank") {
    PrimeField f(19);
    Matrix singular = Matrix::from_rows({f.elems({1, 2}), f.elems({2, 4})});
    CHECK(mat_rank(singular) == 1);
    CHECK(mat_rank(Matrix(3, 3, f)) == 0);
    Matrix v = vandermonde(EvaluationSet(f.elems({1, 2, 3, 4})), 4);
    CHECK(mat_rank(v) == 4);
    Matrix tall = Matrix::from_rows(
        {f.elems({1, 0}), f.elems({0, 1}), f.elems({1, 1})});
    CHECK(mat_rank(tall) == 2);
  }

  TEST_CASE("solve") {
    PrimeField f(19);
    Matrix a = Matrix::from_rows({f.elems({1, 2}), f.elems({3, 4})});
    std::optional<std::vector<FieldElem>> x = mat_solve(a, f.elems({5, 6}));
    REQUIRE(x.has_value());
    CHECK(mat_vec(a, *x) == f.elems({5, 6}));
    Matrix singular = Matrix::from_rows({f.elems({1, 2}), f.elems({2, 4})});
    CHECK_FALSE(mat_solve(singular, f.elems({1, 0})).has_value());
    std::optional<std::vector<FieldElem>> y =
        mat_solve(singular, f.elems({1, 2}));
    REQUIRE(y.has_value());
    CHECK(mat_vec(singular, *y) == f.elems({1, 2}));
    // Underdetermined: free variables default to zero.
    Matrix under = Matrix::from_rows({f.elems({1, 0}), f.elems({0, 0})});
    std::optional<std::vector<FieldElem>> z = mat_solve(under, f.elems({3, 0}));
    REQUIRE(z.has_value());
    CHECK(values_of(*z) == std::vector<long>{3, 0});
    CHECK_THROWS_AS(mat_solve(a, f.elems({1, 2, 3})), DimensionError);
  }

  TEST_CASE("span membership") {
    PrimeField f(19);
    std::vector<std::vector<FieldElem>> basis = {f.elems({1, 0, 1}),
                                                 f.elems({0, 1, 1})};
    std::optional<std::vector<FieldElem>> coeffs =
        in_span(f.elems({2, 3, 5}), basis);
    REQUIRE(coeffs.has_value());
    CHECK(values_of(*coeffs) == std::vector<long>{2, 3});
    CHECK_FALSE(in_span(f.elems({1, 0, 0}), basis).has_value());
    CHECK_THROWS_AS(in_span({}, basis), DimensionError);
    CHECK_THROWS_AS(in_span(f.elems({1, 2}), basis), DimensionError);
  }

  TEST_CASE("random inverse round trips") {
    PrimeField f(10007);
    SplitMix64 rng(21);
    for (int t = 0; t < 10; ++t) {
      // Vandermonde matrices of distinct points are invertible.
      std::vector<FieldElem> pts;
      while (pts.size() < 5) {
        FieldElem cand = rng.next_elem(f);
        bool fresh = true;
        for (const FieldElem& p : pts) fresh = fresh && !(p == cand);
        if (fresh) pts.push_back(cand);
      }
      Matrix v = vandermonde(EvaluationSet(pts), 5);
      CHECK(v * mat_inverse(v) == Matrix::identity(5, f));
    }
  }
}
