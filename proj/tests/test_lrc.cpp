#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "convcode/errors.hpp"
#include "convcode/examples.hpp"
#include "convcode/field.hpp"
#include "convcode/lrc.hpp"
#include "convcode/matrix.hpp"
#include "convcode/poly.hpp"
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

TEST_SUITE("lrc") {
  TEST_CASE("deterministic group layout") {
    LrcLayout layout = build_lrc_sets(PrimeField(19), 2, 2, 2, 1, 1);
    CHECK(layout.beta.value == 2);
    CHECK(layout.alpha.value == 8);
    CHECK(layout.zeta0 == 2);
    CHECK(values_of(layout.g.coeffs()) ==
          std::vector<std::uint64_t>{0, 0, 0, 1});
    REQUIRE(layout.a_groups.size() == 2);
    CHECK(values_of(layout.a_groups[0][0]) ==
          std::vector<std::uint64_t>{1, 7, 11});
    CHECK(values_of(layout.a_groups[0][1]) ==
          std::vector<std::uint64_t>{8, 18, 12});
    CHECK(values_of(layout.a_groups[1][0]) ==
          std::vector<std::uint64_t>{2, 14, 3});
    CHECK(values_of(layout.a_groups[1][1]) ==
          std::vector<std::uint64_t>{16, 17, 5});
    REQUIRE(layout.c_groups.size() == 1);
    CHECK(values_of(layout.c_groups[0]) ==
          std::vector<std::uint64_t>{4, 9, 6});
    CHECK(layout.b_sources.empty());
    CHECK(layout.initial_length() == 9);
    CHECK(layout.final_length() == 15);

    // Group size must divide the multiplicative order.
    CHECK_THROWS_AS(build_lrc_sets(PrimeField(23), 2, 2, 2, 1, 1),
                    DivisibilityError);
    // Enough room for zeta0 + 1 cosets is required.
    CHECK_THROWS_AS(build_lrc_sets(PrimeField(13), 2, 2, 2, 1, 1),
                    ParameterError);
    CHECK_THROWS_AS(build_lrc_sets(PrimeField(19), 2, 2, 2, 1, 2),
                    ParameterError);
  }

  TEST_CASE("layout validation") {
    LrcLayout good = build_lrc_sets(PrimeField(19), 2, 2, 2, 1, 1);
    CHECK_NOTHROW(validate_lrc_layout(good));
    PrimeField f = good.field;

    LrcLayout wrong_zeta0 = good;
    wrong_zeta0.zeta0 = 3;
    CHECK_THROWS_AS(validate_lrc_layout(wrong_zeta0), LayoutError);

    LrcLayout wrong_g = good;
    wrong_g.g = Polynomial::from_ints({0, 0, 1}, f);
    CHECK_THROWS_AS(validate_lrc_layout(wrong_g), LayoutError);

    // Coset pairing against block 0 is elementwise.
    LrcLayout broken_pairing = good;
    broken_pairing.a_groups[1][0] = EvaluationSet(f.elems({2, 14, 10}));
    CHECK_THROWS_AS(validate_lrc_layout(broken_pairing), LayoutError);

    LrcLayout broken_c = good;
    broken_c.c_groups[0] = EvaluationSet(f.elems({4, 9, 10}));
    CHECK_THROWS_AS(validate_lrc_layout(broken_c), LayoutError);

    // Consistently paired groups that nevertheless share points.
    LrcLayout overlap = good;
    overlap.a_groups[0][0] = EvaluationSet(f.elems({1, 7, 4}));
    overlap.a_groups[1][0] = EvaluationSet(f.elems({2, 14, 8}));
    overlap.c_groups[0] = EvaluationSet(f.elems({4, 9, 16}));
    CHECK_THROWS_AS(validate_lrc_layout(overlap), LayoutError);

    LrcLayout missing_block = good;
    missing_block.a_groups.pop_back();
    CHECK_THROWS_AS(validate_lrc_layout(missing_block), LayoutError);
  }

  TEST_CASE("pairing matrix between cosets") {
    LrcLayout layout = build_lrc_sets(PrimeField(19), 2, 2, 2, 1, 1);
    auto [theta, m] = build_m_matrix_lrc(layout, 1);
    CHECK(values_of(theta) == std::vector<std::uint64_t>{5, 15});
    CHECK(values_of(m) == U64Rows{{10, 0, 16, 0},
                                  {0, 5, 0, 8},
                                  {14, 0, 6, 0},
                                  {0, 7, 0, 3}});
    // M carries the evaluation vector of every block-1 point onto the
    // theta-scaled vector of its block-0 partner.
    XGBasis basis{layout.g, layout.r, layout.k};
    for (int i = 0; i < layout.k; ++i) {
      for (int j = 0; j <= layout.r; ++j) {
        std::vector<FieldElem> got = mat_vec(
            m, xg_vector(layout.a_groups[1][static_cast<std::size_t>(i)]
                                          [static_cast<std::size_t>(j)],
                         basis));
        std::vector<FieldElem> want =
            xg_vector(layout.a_groups[0][static_cast<std::size_t>(i)]
                                        [static_cast<std::size_t>(j)],
                      basis);
        for (FieldElem& w : want) w *= theta[static_cast<std::size_t>(i)];
        CHECK(got == want);
      }
    }
    CHECK_THROWS_AS(build_m_matrix_lrc(layout, 5), ParameterError);
  }

  TEST_CASE("second worked instance is frozen") {
    LrcConvertibleCode code = example2_code();
    CHECK(code.conditions_ok);
    CHECK(code.condition_note.empty());
    CHECK(code.zeta() == 2);
    CHECK(code.layout.zeta0 == 2);

    REQUIRE(code.thetas.size() == 2);
    CHECK(values_of(code.thetas[0]) == std::vector<std::uint64_t>{1, 1});
    CHECK(values_of(code.thetas[1]) == std::vector<std::uint64_t>{5, 15});

    REQUIRE(code.m_matrices.size() == 2);
    CHECK(values_of(code.m_matrices[0]) ==
          values_of(Matrix::identity(4, code.layout.field)));
    CHECK(values_of(code.m_matrices[1]) == U64Rows{{10, 0, 16, 0},
                                                   {0, 5, 0, 8},
                                                   {14, 0, 6, 0},
                                                   {0, 7, 0, 3}});

    REQUIRE(code.eta.size() == 2);
    CHECK(values_of(code.eta[0][0][0]) == std::vector<std::uint64_t>{1, 0});
    CHECK(values_of(code.eta[0][0][1]) == std::vector<std::uint64_t>{0, 1});
    CHECK(values_of(code.eta[1][0][0]) == std::vector<std::uint64_t>{15, 12});
    CHECK(values_of(code.eta[1][0][1]) == std::vector<std::uint64_t>{11, 16});

    CHECK(code.h_at_c[0][0].value == 4);
    CHECK(code.h_at_c[1][0].value == 10);

    REQUIRE(code.initial.group_count() == 3);
    CHECK(values_of(code.initial.groups()[0]) ==
          std::vector<std::uint64_t>{1, 7, 11});
    CHECK(values_of(code.initial.groups()[1]) ==
          std::vector<std::uint64_t>{8, 18, 12});
    CHECK(values_of(code.initial.groups()[2]) ==
          std::vector<std::uint64_t>{4, 9, 6});
    for (const FieldElem& u : code.initial.multipliers()) CHECK(u.value == 1);

    REQUIRE(code.final_code.group_count() == 5);
    CHECK(values_of(code.final_code.groups()[2]) ==
          std::vector<std::uint64_t>{2, 14, 3});
    CHECK(values_of(code.final_code.groups()[4]) ==
          std::vector<std::uint64_t>{4, 9, 6});
    CHECK(values_of(code.final_code.multipliers()) ==
          std::vector<std::uint64_t>{3, 3, 3, 3, 3, 3, 7, 7, 7, 15, 15, 15,
                                     1, 1, 1});
    CHECK(code.final_code.group_constant(4).value == 7);

    VerifyReport rep = verify_lrc(code, true, 5);
    CHECK(rep.all_ok());
  }

  TEST_CASE("conversion agrees with direct encoding and decodes") {
    LrcConvertibleCode code = example2_code();
    PrimeField f = code.layout.field;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SplitMix64 rng(seed);
      std::vector<std::vector<FieldElem>> messages;
      std::vector<Codeword> initials;
      for (int i = 0; i < 2; ++i) {
        messages.push_back(rng.next_vector(f, 4));
        initials.push_back(lrc_encode_initial(code, messages.back()));
      }
      auto [word, trace] = lrc_convert(code, initials);
      CHECK(word.symbols == lrc_direct_final(code, messages).symbols);
      CHECK(lrc_final_decode(code, word) == messages);
      CHECK(lrc_is_codeword(code.final_code, word));

      CHECK(trace.read_cost == 4);
      CHECK(trace.write_cost == 3);
      CHECK(trace.total_cost() == 7);
      CHECK(trace.new_coords == std::vector<int>{12, 13, 14});
      for (std::size_t i = 0; i < 2; ++i) {
        CHECK(trace.accessed[i] == std::vector<int>{6, 7});
        CHECK(trace.observed_reads[i] == std::vector<int>{6, 7});
        CHECK(trace.untouched[i] == std::vector<int>{8});
        REQUIRE(trace.remaining[i].size() == 6);
        for (auto [src, dst] : trace.remaining[i]) {
          CHECK(word.symbols[static_cast<std::size_t>(dst)] ==
                initials[i].symbols[static_cast<std::size_t>(src)]);
        }
      }
      // Final block s holds the data groups of initial s.
      for (int j = 0; j < 6; ++j) {
        CHECK(word.symbols[static_cast<std::size_t>(j)] ==
              initials[0].symbols[static_cast<std::size_t>(j)]);
        CHECK(word.symbols[static_cast<std::size_t>(6 + j)] ==
              initials[1].symbols[static_cast<std::size_t>(j)]);
      }
    }
  }

  TEST_CASE("conversion input validation") {
    LrcConvertibleCode code = example2_code();
    PrimeField f = code.layout.field;
    SplitMix64 rng(13);
    std::vector<Codeword> initials = {
        lrc_encode_initial(code, rng.next_vector(f, 4)),
        lrc_encode_initial(code, rng.next_vector(f, 4))};

    std::vector<Codeword> one = {initials[0]};
    CHECK_THROWS_AS(lrc_convert(code, one), DimensionError);

    std::vector<Codeword> short_word = initials;
    short_word[0].symbols.pop_back();
    short_word[0].labels.pop_back();
    CHECK_THROWS_AS(lrc_convert(code, short_word), DimensionError);

    std::vector<Codeword> corrupt = initials;
    corrupt[1].symbols[3] += f.one();
    CHECK_THROWS_AS(lrc_convert(code, corrupt), NotACodewordError);
    CHECK_NOTHROW(lrc_convert(code, corrupt, false));

    Codeword final_word = lrc_convert(code, initials).first;
    final_word.symbols[14] += f.one();
    CHECK_THROWS_AS(lrc_final_decode(code, final_word), NotACodewordError);

    CHECK_THROWS_AS(lrc_encode_initial(code, rng.next_vector(f, 3)),
                    DimensionError);
  }

  TEST_CASE("extra initial parity groups are borrowed and never read") {
    LrcConvertibleCode code = build_lrc(PrimeField(19), 2, 2, 2, 2, 1);
    CHECK(code.layout.zeta0 == 2);
    REQUIRE(code.layout.b_sources.size() == 1);
    CHECK(code.layout.b_sources[0] == std::pair<int, int>(1, 0));
    CHECK(code.layout.initial_length() == 12);
    CHECK(values_of(code.layout.b_group(0)) ==
          std::vector<std::uint64_t>{2, 14, 3});

    // Initial groups: data blocks, then C, then the borrowed B group.
    REQUIRE(code.initial.group_count() == 4);
    CHECK(values_of(code.initial.groups()[2]) ==
          std::vector<std::uint64_t>{4, 9, 6});
    CHECK(values_of(code.initial.groups()[3]) ==
          std::vector<std::uint64_t>{2, 14, 3});

    CHECK(verify_lrc(code, true, 2).all_ok());

    PrimeField f = code.layout.field;
    SplitMix64 rng(31);
    std::vector<std::vector<FieldElem>> messages = {rng.next_vector(f, 4),
                                                    rng.next_vector(f, 4)};
    std::vector<Codeword> initials = {lrc_encode_initial(code, messages[0]),
                                      lrc_encode_initial(code, messages[1])};
    auto [word, trace] = lrc_convert(code, initials);
    CHECK(word.symbols == lrc_direct_final(code, messages).symbols);
    CHECK(lrc_final_decode(code, word) == messages);
    CHECK(trace.read_cost == 4);
    CHECK(trace.write_cost == 3);
    CHECK(trace.new_coords == std::vector<int>{12, 13, 14});
    for (std::size_t i = 0; i < 2; ++i) {
      // Only the first r symbols of the C group are read; the B group
      // stays untouched along with the last C symbol.
      CHECK(trace.accessed[i] == std::vector<int>{6, 7});
      CHECK(trace.untouched[i] == std::vector<int>{8, 9, 10, 11});
    }
    // The borrowed points reappear as final data: block 1 group 0 holds
    // the values of initial 1's first data group.
    for (int j = 0; j < 3; ++j) {
      CHECK(word.symbols[static_cast<std::size_t>(6 + j)] ==
            initials[1].symbols[static_cast<std::size_t>(j)]);
    }

    CHECK_THROWS_AS(build_lrc(PrimeField(19), 2, 2, 2, 1, 2), ParameterError);
  }

  TEST_CASE("automatic field selection") {
    LrcConvertibleCode small = build_lrc_auto(2, 2, 2, 1, 1);
    CHECK(small.layout.field.modulus() == 19);

    LrcConvertibleCode wide = build_lrc_auto(3, 2, 2, 2, 2);
    CHECK(wide.layout.field.modulus() == 31);
    CHECK(wide.layout.zeta0 == 3);
    CHECK(wide.initial.n() == 12);
    CHECK(wide.initial.dimension() == 4);
    CHECK(min_distance_bruteforce(wide.initial) == 8);
    CHECK(verify_lrc(wide, true, 7).all_ok());
  }

  TEST_CASE("tampered pairing data is detected, not silently accepted") {
    LrcConvertibleCode good = example2_code();
    std::vector<std::vector<FieldElem>> thetas = good.thetas;
    thetas[1][1] += good.layout.field.one();
    LrcConvertibleCode bad = assemble_lrc_convertible(
        good.layout, thetas, good.m_matrices, good.final_code.multipliers());
    CHECK_FALSE(bad.conditions_ok);
    CHECK(bad.condition_note ==
          "pairing fails at block 2, group 2, point 1");

    VerifyReport rep = verify_lrc(bad);
    CHECK_FALSE(rep.all_ok());
    bool found = false;
    for (const VerifyItem& item : rep.items) {
      if (item.name == "condition-pairing") {
        found = true;
        CHECK_FALSE(item.ok);
        CHECK(item.detail == "pairing fails at block 2, group 2, point 1");
      }
    }
    CHECK(found);

    PrimeField f = bad.layout.field;
    SplitMix64 rng(77);
    std::vector<Codeword> initials = {
        lrc_encode_initial(bad, rng.next_vector(f, 4)),
        lrc_encode_initial(bad, rng.next_vector(f, 4))};
    CHECK_THROWS_AS(lrc_convert(bad, initials), ConditionViolation);

    LrcConvertibleCode same = assemble_lrc_convertible(
        good.layout, good.thetas, good.m_matrices,
        good.final_code.multipliers());
    CHECK(same.conditions_ok);
    CHECK(verify_lrc(same).all_ok());
  }
}
