#include <doctest.h>

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "convcode/errors.hpp"
#include "convcode/examples.hpp"
#include "convcode/field.hpp"
#include "convcode/matrix.hpp"
#include "convcode/mds.hpp"
#include "convcode/rng.hpp"

using namespace convcode;

namespace {

std::vector<std::uint64_t> values_of(const std::vector<FieldElem>& v) {
  std::vector<std::uint64_t> out;
  for (const FieldElem& e : v) out.push_back(e.value);
  return out;
}

std::vector<std::uint64_t> values_of(const EvaluationSet& s) {
  return values_of(s.points());
}

std::vector<std::vector<std::uint64_t>> values_of(const Matrix& m) {
  std::vector<std::vector<std::uint64_t>> out;
  for (int i = 0; i < m.rows(); ++i) out.push_back(values_of(m.row(i)));
  return out;
}

using U64Rows = std::vector<std::vector<std::uint64_t>>;

}  // namespace

TEST_SUITE("mds") {
  TEST_CASE("deterministic point layout") {
    MdsLayout layout = build_mds_sets(PrimeField(19), 2, 4, 2, 2);
    CHECK(layout.alpha.value == 2);
    CHECK(values_of(layout.a_sets[0]) ==
          std::vector<std::uint64_t>{1, 8, 7, 18});
    CHECK(values_of(layout.a_sets[1]) ==
          std::vector<std::uint64_t>{2, 16, 14, 17});
    CHECK(values_of(layout.c_set) == std::vector<std::uint64_t>{4, 13});
    CHECK(layout.b_set.empty());
    CHECK(layout.initial_length() == 6);
    CHECK(layout.final_length() == 10);
    // Too small a field leaves no room for zeta + 1 disjoint cosets.
    CHECK_THROWS_AS(build_mds_sets(PrimeField(7), 2, 4, 2, 2),
                    DivisibilityError);
    CHECK_THROWS_AS(build_mds_sets(PrimeField(19), 2, 4, 2, 3),
                    ParameterError);
  }

  TEST_CASE("layout validation") {
    PrimeField f(19);
    FieldElem alpha = f.elem(2);
    std::vector<EvaluationSet> a_sets = {EvaluationSet(f.elems({1, 8, 7, 18})),
                                         EvaluationSet(f.elems({2, 16, 14, 17}))};
    EvaluationSet c_set(f.elems({4, 9}));
    EvaluationSet b_set;

    CHECK_NOTHROW(
        mds_layout_from_sets(f, 2, 4, 2, 2, alpha, a_sets, c_set, b_set));

    // A_2 must be alpha * A_1 elementwise.
    std::vector<EvaluationSet> broken = {EvaluationSet(f.elems({1, 8, 7, 18})),
                                         EvaluationSet(f.elems({2, 16, 14, 3}))};
    CHECK_THROWS_AS(
        mds_layout_from_sets(f, 2, 4, 2, 2, alpha, broken, c_set, b_set),
        LayoutError);

    // C may not meet any A block.
    EvaluationSet c_overlap(f.elems({4, 16}));
    CHECK_THROWS_AS(
        mds_layout_from_sets(f, 2, 4, 2, 2, alpha, a_sets, c_overlap, b_set),
        LayoutError);

    // Block and parity set sizes are pinned by the parameters.
    std::vector<EvaluationSet> one_block = {EvaluationSet(f.elems({1, 8, 7, 18}))};
    CHECK_THROWS_AS(
        mds_layout_from_sets(f, 2, 4, 2, 2, alpha, one_block, c_set, b_set),
        LayoutError);
    EvaluationSet c_short(f.elems({4}));
    CHECK_THROWS_AS(
        mds_layout_from_sets(f, 2, 4, 2, 2, alpha, a_sets, c_short, b_set),
        LayoutError);
    EvaluationSet b_extra(f.elems({3}));
    CHECK_THROWS_AS(
        mds_layout_from_sets(f, 2, 4, 2, 2, alpha, a_sets, c_set, b_extra),
        LayoutError);

    CHECK_THROWS_AS(mds_layout_from_sets(f, 2, 4, 1, 2, alpha, a_sets,
                                         c_set, b_set),
                    ParameterError);
    CHECK_THROWS_AS(mds_layout_from_sets(f, 2, 4, 2, 2, f.zero(), a_sets,
                                         c_set, b_set),
                    LayoutError);
  }

  TEST_CASE("pairing matrix") {
    PrimeField f(19);
    EvaluationSet a1(f.elems({1, 8, 7, 18}));
    EvaluationSet a2(f.elems({2, 16, 14, 17}));
    EvaluationSet c(f.elems({4, 9}));
    auto [theta, m] = build_m_matrix(a1, a2, c);
    CHECK(values_of(theta) == std::vector<std::uint64_t>{11, 3, 3, 6});
    CHECK(values_of(m) == U64Rows{{0, 16, 14, 7},
                                  {1, 17, 17, 17},
                                  {16, 16, 10, 7},
                                  {1, 6, 17, 15}});
    // M carries each vand column of A_2 onto the theta-scaled column of A_1.
    for (int j = 0; j < 4; ++j) {
      std::vector<FieldElem> got = mat_vec(m, vandermonde(
          EvaluationSet({a2[j]}), 4).col(0));
      std::vector<FieldElem> want = vandermonde(EvaluationSet({a1[j]}), 4).col(0);
      for (FieldElem& w : want) w *= theta[static_cast<std::size_t>(j)];
      CHECK(got == want);
    }
    CHECK_THROWS_AS(build_m_matrix(a1, EvaluationSet(f.elems({2, 16, 14})), c),
                    DimensionError);
  }

  TEST_CASE("first worked instance is frozen") {
    MdsConvertibleCode code = example1_code();
    CHECK(code.conditions_ok);
    CHECK(code.condition_note.empty());
    CHECK(code.zeta() == 2);

    REQUIRE(code.thetas.size() == 2);
    CHECK(values_of(code.thetas[0]) == std::vector<std::uint64_t>{1, 1, 1, 1});
    CHECK(values_of(code.thetas[1]) == std::vector<std::uint64_t>{11, 3, 3, 6});

    REQUIRE(code.m_matrices.size() == 2);
    CHECK(values_of(code.m_matrices[0]) ==
          values_of(Matrix::identity(4, code.layout.field)));
    CHECK(values_of(code.m_matrices[1]) == U64Rows{{0, 16, 14, 7},
                                                   {1, 17, 17, 17},
                                                   {16, 16, 10, 7},
                                                   {1, 6, 17, 15}});

    REQUIRE(code.eta.size() == 2);
    CHECK(values_of(code.eta[0][0]) == std::vector<std::uint64_t>{1, 0});
    CHECK(values_of(code.eta[0][1]) == std::vector<std::uint64_t>{0, 1});
    CHECK(values_of(code.eta[1][0]) == std::vector<std::uint64_t>{13, 1});
    CHECK(values_of(code.eta[1][1]) == std::vector<std::uint64_t>{18, 17});

    CHECK(values_of(code.initial.points()) ==
          std::vector<std::uint64_t>{1, 8, 7, 18, 4, 9});
    for (const FieldElem& u : code.initial.multipliers()) CHECK(u.value == 1);

    CHECK(values_of(code.final_code.points()) ==
          std::vector<std::uint64_t>{1, 8, 7, 18, 2, 16, 14, 17, 4, 9});
    CHECK(values_of(code.final_code.multipliers()) ==
          std::vector<std::uint64_t>{5, 7, 5, 15, 10, 18, 13, 4, 1, 1});

    VerifyReport rep = verify_mds(code, true, 5);
    CHECK(rep.all_ok());
  }

  TEST_CASE("conversion agrees with direct encoding and decodes") {
    MdsConvertibleCode code = example1_code();
    PrimeField f = code.layout.field;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SplitMix64 rng(seed);
      std::vector<std::vector<FieldElem>> messages;
      std::vector<Codeword> initials;
      for (int i = 0; i < 2; ++i) {
        messages.push_back(rng.next_vector(f, 4));
        initials.push_back(mds_encode_initial(code, messages.back()));
      }
      auto [word, trace] = mds_convert(code, initials);
      CHECK(word.symbols == mds_direct_final(code, messages).symbols);
      CHECK(mds_final_decode(code, word) == messages);
      CHECK(grs_is_codeword(code.final_code, word));

      CHECK(trace.read_cost == 4);
      CHECK(trace.write_cost == 2);
      CHECK(trace.total_cost() == 6);
      CHECK(trace.new_coords == std::vector<int>{8, 9});
      REQUIRE(trace.remaining.size() == 2);
      for (std::size_t i = 0; i < 2; ++i) {
        // Copied symbols match source for source.
        for (auto [src, dst] : trace.remaining[i]) {
          CHECK(word.symbols[static_cast<std::size_t>(dst)] ==
                initials[i].symbols[static_cast<std::size_t>(src)]);
        }
        CHECK(trace.accessed[i] == std::vector<int>{4, 5});
        CHECK(trace.observed_reads[i] == std::vector<int>{4, 5});
        CHECK(trace.untouched[i].empty());
      }
      // Block i of the final word is the A-block of initial i.
      for (int j = 0; j < 4; ++j) {
        CHECK(word.symbols[static_cast<std::size_t>(j)] ==
              initials[0].symbols[static_cast<std::size_t>(j)]);
        CHECK(word.symbols[static_cast<std::size_t>(4 + j)] ==
              initials[1].symbols[static_cast<std::size_t>(j)]);
      }
    }
  }

  TEST_CASE("conversion input validation") {
    MdsConvertibleCode code = example1_code();
    PrimeField f = code.layout.field;
    SplitMix64 rng(11);
    std::vector<Codeword> initials = {
        mds_encode_initial(code, rng.next_vector(f, 4)),
        mds_encode_initial(code, rng.next_vector(f, 4))};

    std::vector<Codeword> one = {initials[0]};
    CHECK_THROWS_AS(mds_convert(code, one), DimensionError);

    std::vector<Codeword> short_word = initials;
    short_word[1].symbols.pop_back();
    short_word[1].labels.pop_back();
    CHECK_THROWS_AS(mds_convert(code, short_word), DimensionError);

    std::vector<Codeword> corrupt = initials;
    corrupt[0].symbols[2] += f.one();
    CHECK_THROWS_AS(mds_convert(code, corrupt), NotACodewordError);
    // Validation off: the corrupted word is accepted and converted.
    CHECK_NOTHROW(mds_convert(code, corrupt, false));

    Codeword final_word = mds_convert(code, initials).first;
    final_word.symbols[0] += f.one();
    CHECK_THROWS_AS(mds_final_decode(code, final_word), NotACodewordError);
  }

  TEST_CASE("re-encode fallback") {
    PrimeField f(19);
    DefaultReencodeMds code = build_default_reencode(f, 2, 2, 2, 1);
    CHECK(code.initial.n() == 4);
    CHECK(code.initial.dimension() == 2);
    CHECK(code.final_code.n() == 5);
    CHECK(code.final_code.dimension() == 4);

    SplitMix64 rng(42);
    std::vector<FieldElem> m1 = rng.next_vector(f, 2);
    std::vector<FieldElem> m2 = rng.next_vector(f, 2);
    std::vector<Codeword> initials = {grs_encode(code.initial, m1),
                                      grs_encode(code.initial, m2)};
    auto [word, trace] = default_reencode_convert(code, initials);
    std::vector<FieldElem> combined = m1;
    combined.insert(combined.end(), m2.begin(), m2.end());
    CHECK(word.symbols == grs_encode(code.final_code, combined).symbols);
    CHECK(trace.read_cost == 4);
    CHECK(trace.write_cost == 5);
    CHECK(trace.new_coords == std::vector<int>{0, 1, 2, 3, 4});
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(trace.accessed[i] == std::vector<int>{0, 1});
      CHECK(trace.untouched[i] == std::vector<int>{2, 3});
      CHECK(trace.remaining[i].empty());
    }

    std::vector<Codeword> corrupt = initials;
    corrupt[1].symbols[0] += f.one();
    CHECK_THROWS_AS(default_reencode_convert(code, corrupt),
                    NotACodewordError);

    CHECK_THROWS_AS(build_default_reencode(PrimeField(3), 2, 2, 2, 1),
                    ParameterError);
  }

  TEST_CASE("construction dispatch") {
    PrimeField f(19);
    // lF within the structured regime: convertible construction.
    MdsBuildResult structured = build_mds(f, 2, 4, 2, 2);
    CHECK(std::holds_alternative<MdsConvertibleCode>(structured));
    // lF above min(k, lI): re-encode fallback.
    MdsBuildResult fallback = build_mds(f, 2, 2, 1, 2);
    CHECK(std::holds_alternative<DefaultReencodeMds>(fallback));
    CHECK_THROWS_AS(build_mds(f, 0, 2, 1, 1), ParameterError);
  }

  TEST_CASE("automatic field selection") {
    MdsBuildResult built = build_mds_auto(2, 4, 2, 2);
    REQUIRE(std::holds_alternative<MdsConvertibleCode>(built));
    const MdsConvertibleCode& code = std::get<MdsConvertibleCode>(built);
    CHECK(code.layout.field.modulus() == 13);
    CHECK(values_of(code.layout.a_sets[0]) ==
          std::vector<std::uint64_t>{1, 8, 12, 5});
    CHECK(values_of(code.layout.c_set) == std::vector<std::uint64_t>{4, 6});
    VerifyReport rep = verify_mds(code, true, 3);
    CHECK(rep.all_ok());
  }

  TEST_CASE("tampered pairing data is detected, not silently accepted") {
    MdsConvertibleCode good = example1_code();
    std::vector<std::vector<FieldElem>> thetas = good.thetas;
    thetas[1][2] += good.layout.field.one();
    MdsConvertibleCode bad = assemble_mds_convertible(
        good.layout, thetas, good.m_matrices, good.final_code.multipliers());
    CHECK_FALSE(bad.conditions_ok);
    CHECK(bad.condition_note ==
          "pairing identity fails for block 2, position 3");

    VerifyReport rep = verify_mds(bad);
    CHECK_FALSE(rep.all_ok());
    bool found = false;
    for (const VerifyItem& item : rep.items) {
      if (item.name == "condition-pairing") {
        found = true;
        CHECK_FALSE(item.ok);
        CHECK(item.detail == "pairing fails at block 2, position 3");
      }
    }
    CHECK(found);

    PrimeField f = bad.layout.field;
    SplitMix64 rng(9);
    std::vector<Codeword> initials = {
        mds_encode_initial(bad, rng.next_vector(f, 4)),
        mds_encode_initial(bad, rng.next_vector(f, 4))};
    CHECK_THROWS_AS(mds_convert(bad, initials), ConditionViolation);

    // Reassembling the untampered pieces keeps the conditions.
    MdsConvertibleCode same = assemble_mds_convertible(
        good.layout, good.thetas, good.m_matrices,
        good.final_code.multipliers());
    CHECK(same.conditions_ok);
    CHECK(verify_mds(same).all_ok());
  }
}
