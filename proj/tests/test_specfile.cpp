#include <doctest.h>

#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "convcode/errors.hpp"
#include "convcode/examples.hpp"
#include "convcode/rng.hpp"
#include "convcode/specfile.hpp"

using namespace convcode;
using nlohmann::ordered_json;

TEST_SUITE("specfile") {
  TEST_CASE("round trips are byte-identical") {
    AnyCode mds = example1_code();
    AnyCode lrc = example2_code();
    AnyCode reencode = build_default_reencode(PrimeField(19), 2, 2, 2, 1);
    CHECK(std::string(spec_kind(mds)) == "mds");
    CHECK(std::string(spec_kind(lrc)) == "lrc");
    CHECK(std::string(spec_kind(reencode)) == "mds-reencode");
    for (const AnyCode& code : {mds, lrc, reencode}) {
      std::string text = spec_to_json(code);
      CHECK(text.back() == '\n');
      AnyCode loaded = spec_from_json(text);
      CHECK(spec_to_json(loaded) == text);
      CHECK(std::string(spec_kind(loaded)) == spec_kind(code));
    }
  }

  TEST_CASE("loaded instances behave like the originals") {
    MdsConvertibleCode orig = example1_code();
    AnyCode loaded = spec_from_json(spec_to_json(orig));
    REQUIRE(std::holds_alternative<MdsConvertibleCode>(loaded));
    const MdsConvertibleCode& code = std::get<MdsConvertibleCode>(loaded);
    CHECK(code.conditions_ok);
    CHECK(code.thetas == orig.thetas);
    CHECK(code.eta == orig.eta);
    CHECK(code.final_code.multipliers() == orig.final_code.multipliers());
    CHECK(verify_mds(code, true, 1).all_ok());

    PrimeField f = code.layout.field;
    SplitMix64 rng(5);
    std::vector<std::vector<FieldElem>> messages = {rng.next_vector(f, 4),
                                                    rng.next_vector(f, 4)};
    std::vector<Codeword> initials = {mds_encode_initial(code, messages[0]),
                                      mds_encode_initial(code, messages[1])};
    auto [word, trace] = mds_convert(code, initials);
    CHECK(word.symbols == mds_convert(orig, initials).first.symbols);
    CHECK(mds_final_decode(code, word) == messages);

    LrcConvertibleCode lrc_orig = example2_code();
    AnyCode lrc_loaded = spec_from_json(spec_to_json(lrc_orig));
    REQUIRE(std::holds_alternative<LrcConvertibleCode>(lrc_loaded));
    const LrcConvertibleCode& lrc = std::get<LrcConvertibleCode>(lrc_loaded);
    CHECK(lrc.conditions_ok);
    CHECK(lrc.thetas == lrc_orig.thetas);
    CHECK(lrc.layout.b_sources == lrc_orig.layout.b_sources);
    CHECK(verify_lrc(lrc, true, 1).all_ok());
  }

  TEST_CASE("structural problems are io errors") {
    CHECK_THROWS_AS(spec_from_json("{nope"), IoError);
    CHECK_THROWS_AS(spec_from_json("[]"), IoError);
    CHECK_THROWS_AS(spec_from_json("{}"), IoError);

    std::string text = spec_to_json(example1_code());
    ordered_json base = ordered_json::parse(text);

    ordered_json wrong_format = base;
    wrong_format["format"] = "something-else";
    CHECK_THROWS_AS(spec_from_json(wrong_format.dump()), IoError);

    ordered_json wrong_kind = base;
    wrong_kind["kind"] = "turbo";
    CHECK_THROWS_AS(spec_from_json(wrong_kind.dump()), IoError);

    ordered_json missing = base;
    missing.erase("field");
    CHECK_THROWS_AS(spec_from_json(missing.dump()), IoError);

    ordered_json huge_field = base;
    huge_field["field"] = (1ull << 31);
    CHECK_THROWS_AS(spec_from_json(huge_field.dump()), IoError);

    ordered_json not_integer = base;
    not_integer["zeta"] = "two";
    CHECK_THROWS_AS(spec_from_json(not_integer.dump()), IoError);

    ordered_json out_of_field = base;
    out_of_field["thetas"][1][0] = 19;
    CHECK_THROWS_AS(spec_from_json(out_of_field.dump()), IoError);

    ordered_json ragged = base;
    ragged["m_matrices"][1][0] = {1, 2, 3};
    CHECK_THROWS_AS(spec_from_json(ragged.dump()), IoError);
  }

  TEST_CASE("tampered numbers load but fail verification") {
    std::string text = spec_to_json(example1_code());
    ordered_json j = ordered_json::parse(text);
    std::uint64_t old = j["thetas"][1][2].get<std::uint64_t>();
    j["thetas"][1][2] = (old + 1) % 19;
    AnyCode loaded = spec_from_json(j.dump());
    REQUIRE(std::holds_alternative<MdsConvertibleCode>(loaded));
    const MdsConvertibleCode& code = std::get<MdsConvertibleCode>(loaded);
    CHECK_FALSE(code.conditions_ok);

    VerifyReport rep = verify_mds(code);
    CHECK_FALSE(rep.all_ok());
    bool named = false;
    for (const VerifyItem& item : rep.items) {
      if (item.name == "condition-pairing" && !item.ok) named = true;
    }
    CHECK(named);

    PrimeField f = code.layout.field;
    SplitMix64 rng(3);
    std::vector<Codeword> initials = {
        mds_encode_initial(code, rng.next_vector(f, 4)),
        mds_encode_initial(code, rng.next_vector(f, 4))};
    CHECK_THROWS_AS(mds_convert(code, initials), ConditionViolation);

    // The same applies to the locality-preserving kind.
    std::string lrc_text = spec_to_json(example2_code());
    ordered_json lj = ordered_json::parse(lrc_text);
    std::uint64_t lold = lj["thetas"][1][0].get<std::uint64_t>();
    lj["thetas"][1][0] = (lold + 1) % 19;
    AnyCode lrc_loaded = spec_from_json(lj.dump());
    REQUIRE(std::holds_alternative<LrcConvertibleCode>(lrc_loaded));
    CHECK_FALSE(std::get<LrcConvertibleCode>(lrc_loaded).conditions_ok);
  }

  TEST_CASE("file wrappers") {
    std::string path = "/tmp/convcode_spec_roundtrip.json";
    AnyCode code = example2_code();
    save_spec(path, code);
    AnyCode loaded = load_spec(path);
    CHECK(spec_to_json(loaded) == spec_to_json(code));
    std::remove(path.c_str());

    CHECK_THROWS_AS(save_spec("/no-such-dir/x.json", code), IoError);
    CHECK_THROWS_AS(load_spec("/no-such-dir/x.json"), IoError);
  }
}
