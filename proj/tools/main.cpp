#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "convcode/bounds.hpp"
#include "convcode/codes.hpp"
#include "convcode/errors.hpp"
#include "convcode/examples.hpp"
#include "convcode/lrc.hpp"
#include "convcode/matrix.hpp"
#include "convcode/mds.hpp"
#include "convcode/poly.hpp"
#include "convcode/rng.hpp"
#include "convcode/specfile.hpp"
#include "convcode/trace.hpp"
#include "convcode/verify.hpp"

namespace {

using convcode::AnyCode;
using convcode::Codeword;
using convcode::ConversionTrace;
using convcode::FieldElem;
using convcode::PrimeField;
using json = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt_elems(const std::vector<FieldElem>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << " ";
    os << v[i].value;
  }
  os << "]";
  return os.str();
}

std::vector<long> values_of(const std::vector<FieldElem>& v) {
  std::vector<long> out;
  out.reserve(v.size());
  for (const FieldElem& e : v) out.push_back(e.value);
  return out;
}

std::vector<std::vector<long>> values_of(const convcode::Matrix& m) {
  std::vector<std::vector<long>> out;
  for (int i = 0; i < m.rows(); ++i) out.push_back(values_of(m.row(i)));
  return out;
}

json elems_json(const std::vector<FieldElem>& v) {
  json arr = json::array();
  for (const FieldElem& e : v) arr.push_back(e.value);
  return arr;
}

std::vector<std::vector<FieldElem>> seeded_messages(const PrimeField& field,
                                                    std::uint64_t seed,
                                                    int count, int length) {
  convcode::SplitMix64 rng(seed);
  std::vector<std::vector<FieldElem>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(rng.next_vector(field, static_cast<std::size_t>(length)));
  }
  return out;
}

std::vector<std::vector<FieldElem>> parse_messages(const std::string& text,
                                                   const PrimeField& field,
                                                   int count, int length) {
  std::vector<std::vector<FieldElem>> out;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<std::int64_t> vals;
    std::stringstream items(group);
    std::string item;
    while (std::getline(items, item, ',')) {
      item.erase(std::remove_if(item.begin(), item.end(),
                                [](unsigned char c) { return std::isspace(c); }),
                 item.end());
      try {
        std::size_t pos = 0;
        long long v = std::stoll(item, &pos);
        if (pos != item.size()) throw std::invalid_argument(item);
        vals.push_back(v);
      } catch (const std::exception&) {
        throw convcode::ParameterError(
            "messages must be integers separated by ',' within a codeword "
            "and ';' between codewords");
      }
    }
    out.push_back(field.elems(vals));
  }
  if (static_cast<int>(out.size()) != count) {
    throw convcode::ParameterError("expected " + std::to_string(count) +
                                   " semicolon-separated messages, got " +
                                   std::to_string(out.size()));
  }
  for (const std::vector<FieldElem>& m : out) {
    if (static_cast<int>(m.size()) != length) {
      throw convcode::ParameterError("each message needs exactly " +
                                     std::to_string(length) + " symbols");
    }
  }
  return out;
}

json trace_json(const ConversionTrace& tr) {
  json j;
  json rem = json::array();
  for (const std::vector<std::pair<int, int>>& per : tr.remaining) {
    json a = json::array();
    for (const std::pair<int, int>& pr : per) {
      a.push_back(json::array({pr.first, pr.second}));
    }
    rem.push_back(std::move(a));
  }
  j["remaining"] = std::move(rem);
  j["accessed"] = tr.accessed;
  j["untouched"] = tr.untouched;
  j["new"] = tr.new_coords;
  j["observed_reads"] = tr.observed_reads;
  j["read_cost"] = tr.read_cost;
  j["write_cost"] = tr.write_cost;
  return j;
}

json symbols_json(const ConversionTrace& tr) {
  json arr = json::array();
  for (int i = 0; i < tr.initial_count; ++i) {
    for (const std::pair<int, int>& pr : tr.remaining[i]) {
      arr.push_back({{"role", "remaining"},
                     {"initial", i},
                     {"coord", pr.first},
                     {"final_coord", pr.second}});
    }
    for (int c : tr.accessed[i]) {
      arr.push_back({{"role", "accessed"}, {"initial", i}, {"coord", c}});
    }
    for (int c : tr.untouched[i]) {
      arr.push_back({{"role", "untouched"}, {"initial", i}, {"coord", c}});
    }
  }
  for (int c : tr.new_coords) {
    arr.push_back({{"role", "new"}, {"final_coord", c}});
  }
  return arr;
}

void print_trace_text(std::ostream& os, const ConversionTrace& tr) {
  for (int i = 0; i < tr.initial_count; ++i) {
    os << "initial " << i << ":\n";
    for (const std::pair<int, int>& pr : tr.remaining[i]) {
      os << "  coord " << pr.first << " -> final coord " << pr.second
         << "  (remaining)\n";
    }
    for (int c : tr.accessed[i]) os << "  coord " << c << "  (accessed)\n";
    for (int c : tr.untouched[i]) os << "  coord " << c << "  (untouched)\n";
  }
  os << "new final coords:";
  for (int c : tr.new_coords) os << " " << c;
  os << "\n";
}

struct ConvertResult {
  std::string kind;
  std::uint32_t modulus = 0;
  std::vector<std::vector<FieldElem>> messages;
  std::vector<Codeword> initials;
  Codeword final_word;
  ConversionTrace trace;
  std::vector<std::vector<FieldElem>> decoded;
};

ConvertResult run_conversion(const AnyCode& any, std::uint64_t seed,
                             const std::string& messages_text, bool validate) {
  ConvertResult res;
  res.kind = convcode::spec_kind(any);
  if (const auto* mds = std::get_if<convcode::MdsConvertibleCode>(&any)) {
    const PrimeField& field = mds->layout.field;
    res.modulus = field.modulus();
    int count = mds->layout.zeta;
    int length = mds->layout.k;
    res.messages = messages_text.empty()
                       ? seeded_messages(field, seed, count, length)
                       : parse_messages(messages_text, field, count, length);
    for (const std::vector<FieldElem>& m : res.messages) {
      res.initials.push_back(convcode::mds_encode_initial(*mds, m));
    }
    auto [word, trace] = convcode::mds_convert(*mds, res.initials, validate);
    res.final_word = std::move(word);
    res.trace = std::move(trace);
    res.decoded = convcode::mds_final_decode(*mds, res.final_word);
  } else if (const auto* lrc = std::get_if<convcode::LrcConvertibleCode>(&any)) {
    const PrimeField& field = lrc->layout.field;
    res.modulus = field.modulus();
    int count = lrc->layout.zeta;
    int length = lrc->layout.k * lrc->layout.r;
    res.messages = messages_text.empty()
                       ? seeded_messages(field, seed, count, length)
                       : parse_messages(messages_text, field, count, length);
    for (const std::vector<FieldElem>& m : res.messages) {
      res.initials.push_back(convcode::lrc_encode_initial(*lrc, m));
    }
    auto [word, trace] = convcode::lrc_convert(*lrc, res.initials, validate);
    res.final_word = std::move(word);
    res.trace = std::move(trace);
    res.decoded = convcode::lrc_final_decode(*lrc, res.final_word);
  } else {
    const auto& re = std::get<convcode::DefaultReencodeMds>(any);
    res.modulus = re.field.modulus();
    int count = re.zeta;
    int length = re.k;
    res.messages = messages_text.empty()
                       ? seeded_messages(re.field, seed, count, length)
                       : parse_messages(messages_text, re.field, count, length);
    for (const std::vector<FieldElem>& m : res.messages) {
      res.initials.push_back(convcode::grs_encode(re.initial, m));
    }
    auto [word, trace] =
        convcode::default_reencode_convert(re, res.initials, validate);
    res.final_word = std::move(word);
    res.trace = std::move(trace);
    std::vector<std::pair<int, FieldElem>> pairs;
    for (int c = 0; c < re.final_code.n(); ++c) {
      pairs.emplace_back(c, res.final_word.symbols[static_cast<std::size_t>(c)]);
    }
    std::vector<FieldElem> coeffs =
        convcode::grs_decode_erasures(re.final_code, pairs);
    for (int i = 0; i < re.zeta; ++i) {
      res.decoded.emplace_back(coeffs.begin() + i * re.k,
                               coeffs.begin() + (i + 1) * re.k);
    }
  }
  return res;
}

int cmd_build(const std::string& kind, std::uint32_t field_mod, int zeta,
              int k, int r, int l_initial, int l_final,
              const std::string& out_path) {
  AnyCode any = [&]() -> AnyCode {
    if (kind == "mds") {
      convcode::MdsBuildResult res =
          field_mod ? convcode::build_mds(PrimeField(field_mod), zeta, k,
                                          l_initial, l_final)
                    : convcode::build_mds_auto(zeta, k, l_initial, l_final);
      return std::visit([](auto&& v) -> AnyCode { return std::move(v); },
                        std::move(res));
    }
    return field_mod ? convcode::build_lrc(PrimeField(field_mod), zeta, k, r,
                                           l_initial, l_final)
                     : convcode::build_lrc_auto(zeta, k, r, l_initial, l_final);
  }();
  if (out_path.empty()) {
    std::cout << convcode::spec_to_json(any);
    return 0;
  }
  convcode::save_spec(out_path, any);
  std::visit(
      overloaded{
          [](const convcode::MdsConvertibleCode& c) {
            const convcode::MdsLayout& lay = c.layout;
            std::cout << "built mds instance over F_" << lay.field.modulus()
                      << ": " << lay.zeta << " x [" << lay.initial_length()
                      << ", " << lay.k << "] -> [" << lay.final_length()
                      << ", " << lay.zeta * lay.k << "]\n";
          },
          [](const convcode::LrcConvertibleCode& c) {
            const convcode::LrcLayout& lay = c.layout;
            std::cout << "built lrc instance over F_" << lay.field.modulus()
                      << ": " << lay.zeta << " x (" << lay.initial_length()
                      << ", " << lay.k * lay.r << ", " << lay.r << ") -> ("
                      << lay.final_length() << ", "
                      << lay.zeta * lay.k * lay.r << ", " << lay.r << ")\n";
          },
          [](const convcode::DefaultReencodeMds& c) {
            std::cout << "built mds-reencode fallback over F_"
                      << c.field.modulus() << ": " << c.zeta << " x ["
                      << c.initial.n() << ", " << c.k << "] -> ["
                      << c.final_code.n() << ", " << c.zeta * c.k << "]\n";
          },
      },
      any);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_convert(const std::string& spec_path, std::uint64_t seed,
                const std::string& messages_text, bool validate, bool as_json,
                const std::string& out_path) {
  AnyCode any = convcode::load_spec(spec_path);
  ConvertResult res = run_conversion(any, seed, messages_text, validate);
  bool roundtrip = res.decoded == res.messages;

  std::string text;
  if (as_json || !out_path.empty()) {
    json j;
    j["kind"] = res.kind;
    j["field"] = res.modulus;
    json msgs = json::array();
    for (const std::vector<FieldElem>& m : res.messages) {
      msgs.push_back(elems_json(m));
    }
    j["messages"] = std::move(msgs);
    json words = json::array();
    for (const Codeword& w : res.initials) {
      words.push_back(elems_json(w.symbols));
    }
    j["initial_words"] = std::move(words);
    j["final_word"] = elems_json(res.final_word.symbols);
    j["decode_roundtrip"] = roundtrip;
    j["trace"] = trace_json(res.trace);
    j["symbols"] = symbols_json(res.trace);
    text = j.dump(2) + "\n";
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw convcode::IoError("cannot open '" + out_path + "' for writing");
    out << text;
    if (!out) throw convcode::IoError("failed writing '" + out_path + "'");
  }
  if (as_json) {
    std::cout << text;
  } else {
    std::cout << "kind: " << res.kind << "\n";
    std::cout << "field: " << res.modulus << "\n";
    for (std::size_t i = 0; i < res.initials.size(); ++i) {
      std::cout << "initial " << i << ": " << fmt_elems(res.initials[i].symbols)
                << "\n";
    }
    std::cout << "final:     " << fmt_elems(res.final_word.symbols) << "\n";
    std::cout << "read cost: " << res.trace.read_cost << "\n";
    std::cout << "write cost: " << res.trace.write_cost << "\n";
    std::cout << "decode roundtrip: " << (roundtrip ? "ok" : "FAILED") << "\n";
    print_trace_text(std::cout, res.trace);
    if (!out_path.empty()) std::cout << "wrote " << out_path << "\n";
  }
  if (!roundtrip) {
    std::cerr << "final word failed to decode back to the messages\n";
    return 3;
  }
  return 0;
}

convcode::VerifyReport verify_reencode(const convcode::DefaultReencodeMds& code,
                                       std::uint64_t seed) {
  convcode::VerifyReport rep;
  bool ok = true;
  std::string detail;
  try {
    convcode::SplitMix64 rng(seed);
    for (int trial = 0; trial < 5 && ok; ++trial) {
      std::vector<std::vector<FieldElem>> messages;
      std::vector<Codeword> initials;
      for (int i = 0; i < code.zeta; ++i) {
        messages.push_back(
            rng.next_vector(code.field, static_cast<std::size_t>(code.k)));
        initials.push_back(convcode::grs_encode(code.initial, messages.back()));
      }
      auto [word, trace] =
          convcode::default_reencode_convert(code, initials, true);
      std::vector<std::pair<int, FieldElem>> pairs;
      for (int c = 0; c < code.final_code.n(); ++c) {
        pairs.emplace_back(c, word.symbols[static_cast<std::size_t>(c)]);
      }
      std::vector<FieldElem> coeffs =
          convcode::grs_decode_erasures(code.final_code, pairs);
      for (int i = 0; i < code.zeta && ok; ++i) {
        std::vector<FieldElem> chunk(coeffs.begin() + i * code.k,
                                     coeffs.begin() + (i + 1) * code.k);
        if (chunk != messages[static_cast<std::size_t>(i)]) {
          ok = false;
          detail = "decode mismatch in trial " + std::to_string(trial);
        }
      }
      if (ok && (trace.read_cost != static_cast<long>(code.zeta) * code.k ||
                 trace.write_cost != code.final_code.n())) {
        ok = false;
        detail = "unexpected conversion cost in trial " + std::to_string(trial);
      }
    }
  } catch (const convcode::Error& e) {
    ok = false;
    detail = e.what();
  }
  rep.add("reencode-roundtrip", ok, detail);
  return rep;
}

int print_report(const convcode::VerifyReport& rep, bool as_json) {
  if (as_json) {
    json j;
    json items = json::array();
    for (const convcode::VerifyItem& it : rep.items) {
      items.push_back(
          {{"name", it.name}, {"ok", it.ok}, {"detail", it.detail}});
    }
    j["items"] = std::move(items);
    j["ok"] = rep.all_ok();
    std::cout << j.dump(2) << "\n";
  } else {
    for (const convcode::VerifyItem& it : rep.items) {
      std::cout << (it.ok ? "   ok  " : " FAIL  ") << it.name;
      if (!it.detail.empty()) std::cout << "  (" << it.detail << ")";
      std::cout << "\n";
    }
    std::cout << (rep.all_ok() ? "verification passed"
                               : "verification FAILED")
              << "\n";
  }
  return rep.all_ok() ? 0 : 3;
}

int cmd_verify(const std::string& spec_path, bool deep, std::uint64_t seed,
               bool as_json) {
  AnyCode any = convcode::load_spec(spec_path);
  convcode::VerifyReport rep = std::visit(
      overloaded{
          [&](const convcode::MdsConvertibleCode& c) {
            return convcode::verify_mds(c, deep, seed);
          },
          [&](const convcode::LrcConvertibleCode& c) {
            return convcode::verify_lrc(c, deep, seed);
          },
          [&](const convcode::DefaultReencodeMds& c) {
            return verify_reencode(c, seed);
          },
      },
      any);
  return print_report(rep, as_json);
}

int cmd_bounds_mds(long n_initial, long k, long n_final, long zeta,
                   bool as_json) {
  convcode::AccessBounds b =
      convcode::mds_access_bounds(n_initial, k, n_final, zeta);
  if (as_json) {
    json j;
    j["read"] = b.read;
    j["write"] = b.write;
    j["note"] = b.note;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "read lower bound: " << b.read << "\n"
              << "write lower bound: " << b.write << "\n"
              << "note: " << b.note << "\n";
  }
  return 0;
}

int cmd_bounds_lrc(long n_initial, long k, long n_final, long zeta, long r,
                   long d, bool as_json) {
  convcode::AccessBounds b =
      convcode::lrc_access_bounds(n_initial, k, n_final, zeta, r, d);
  if (as_json) {
    json j;
    j["read"] = b.read;
    j["write"] = b.write;
    j["note"] = b.note;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "read lower bound: " << b.read << "\n"
              << "write lower bound: " << b.write << "\n"
              << "note: " << b.note << "\n";
  }
  return 0;
}

int cmd_bounds_singleton(long n, long k, long r, bool as_json) {
  convcode::SingletonLrcBound b = convcode::singleton_lrc(n, k, r);
  if (as_json) {
    json j;
    j["distance_bound"] = b.distance_bound;
    j["rate_ok"] = b.rate_ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "distance upper bound: " << b.distance_bound << "\n"
              << "rate condition k(r+1) <= rn: "
              << (b.rate_ok ? "holds" : "violated") << "\n";
  }
  return 0;
}

class Repro {
 public:
  void show(const std::string& label, const std::string& value) {
    std::cout << label << ": " << value << "\n";
  }

  void check(const std::string& what, bool ok, const std::string& got = "") {
    if (ok) {
      std::cout << "ok: " << what << "\n";
    } else {
      std::cout << "MISMATCH: " << what;
      if (!got.empty()) std::cout << " (got " << got << ")";
      std::cout << "\n";
      ++failures_;
    }
  }

  int finish(const std::string& name) {
    if (failures_ == 0) {
      std::cout << name << " reproduced exactly\n";
      return 0;
    }
    std::cout << name << ": " << failures_ << " mismatches\n";
    return 3;
  }

 private:
  int failures_ = 0;
};

std::vector<FieldElem> power_vector(const FieldElem& x, int k) {
  std::vector<FieldElem> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) {
    out.push_back(convcode::ff_pow(x, static_cast<std::uint64_t>(t)));
  }
  return out;
}

int cmd_repro_example1() {
  Repro rep;
  convcode::MdsConvertibleCode code = convcode::example1_code();
  const convcode::MdsLayout& lay = code.layout;
  const PrimeField& field = lay.field;

  rep.show("field", "F_" + std::to_string(field.modulus()));
  rep.show("source points A1", fmt_elems(lay.a_sets[0].points()));
  rep.show("source points A2", fmt_elems(lay.a_sets[1].points()));
  rep.show("shared parity points C", fmt_elems(lay.c_set.points()));

  rep.check("pairing scalars for block 2 are [11 3 3 6]",
            values_of(code.thetas[1]) == std::vector<long>{11, 3, 3, 6},
            fmt_elems(code.thetas[1]));
  rep.check("pairing matrix M2 rows are [0 16 14 7 | 1 17 17 17 | 16 16 10 7 "
            "| 1 6 17 15]",
            values_of(code.m_matrices[1]) ==
                std::vector<std::vector<long>>{{0, 16, 14, 7},
                                               {1, 17, 17, 17},
                                               {16, 16, 10, 7},
                                               {1, 6, 17, 15}});
  std::vector<FieldElem> mc1 =
      convcode::mat_vec(code.m_matrices[1], power_vector(lay.c_set[0], lay.k));
  std::vector<FieldElem> mc2 =
      convcode::mat_vec(code.m_matrices[1], power_vector(lay.c_set[1], lay.k));
  rep.check("M2 maps the power vector of c1 to [14 4 4 3]",
            values_of(mc1) == std::vector<long>{14, 4, 4, 3}, fmt_elems(mc1));
  rep.check("M2 maps the power vector of c2 to [16 16 12 17]",
            values_of(mc2) == std::vector<long>{16, 16, 12, 17},
            fmt_elems(mc2));
  rep.check("projection coefficients for c1 are [13 1]",
            values_of(code.eta[1][0]) == std::vector<long>{13, 1},
            fmt_elems(code.eta[1][0]));
  rep.check("projection coefficients for c2 are [18 17]",
            values_of(code.eta[1][1]) == std::vector<long>{18, 17},
            fmt_elems(code.eta[1][1]));
  rep.check("final multipliers are [5 7 5 15 10 18 13 4 1 1]",
            values_of(code.final_code.multipliers()) ==
                std::vector<long>{5, 7, 5, 15, 10, 18, 13, 4, 1, 1},
            fmt_elems(code.final_code.multipliers()));

  std::vector<std::vector<FieldElem>> messages =
      seeded_messages(field, 7, lay.zeta, lay.k);
  std::vector<Codeword> initials;
  for (const std::vector<FieldElem>& m : messages) {
    initials.push_back(convcode::mds_encode_initial(code, m));
  }
  auto [word, trace] = convcode::mds_convert(code, initials, true);
  rep.show("final word (seed 7)", fmt_elems(word.symbols));
  rep.check("conversion reads 4 symbols", trace.read_cost == 4,
            std::to_string(trace.read_cost));
  rep.check("conversion writes 2 symbols", trace.write_cost == 2,
            std::to_string(trace.write_cost));
  bool copies_ok = true;
  for (int i = 0; i < trace.initial_count; ++i) {
    for (const std::pair<int, int>& pr : trace.remaining[i]) {
      if (word.symbols[static_cast<std::size_t>(pr.second)] !=
          initials[static_cast<std::size_t>(i)]
              .symbols[static_cast<std::size_t>(pr.first)]) {
        copies_ok = false;
      }
    }
  }
  rep.check("remaining symbols are copied unchanged", copies_ok);
  rep.check("conversion output equals encoding from scratch",
            word == convcode::mds_direct_final(code, messages));
  rep.check("final word decodes back to both messages",
            convcode::mds_final_decode(code, word) == messages);

  long dist = convcode::min_distance_bruteforce(code.initial);
  rep.check("initial code has minimum distance 3", dist == 3,
            std::to_string(dist));

  convcode::AccessBounds bound = convcode::mds_access_bounds(6, 4, 10, 2);
  rep.check("access lower bounds are read 4, write 2",
            bound.read == 4 && bound.write == 2,
            std::to_string(bound.read) + "/" + std::to_string(bound.write));
  rep.check("observed costs meet the lower bounds with equality",
            trace.read_cost == bound.read && trace.write_cost == bound.write);
  rep.check("structural verification passes",
            convcode::verify_mds(code).all_ok());
  return rep.finish("worked instance 1");
}

int cmd_repro_example2() {
  Repro rep;
  convcode::LrcConvertibleCode code = convcode::example2_code();
  const convcode::LrcLayout& lay = code.layout;
  const PrimeField& field = lay.field;

  rep.show("field", "F_" + std::to_string(field.modulus()));
  std::vector<std::vector<long>> groups_got;
  for (int s = 0; s < lay.zeta; ++s) {
    for (int i = 0; i < lay.k; ++i) {
      groups_got.push_back(values_of(lay.a_groups[s][i].points()));
      std::ostringstream label;
      label << "block " << s + 1 << " group " << i + 1;
      rep.show(label.str(), fmt_elems(lay.a_groups[s][i].points()));
    }
  }
  rep.show("parity group C", fmt_elems(lay.c_groups[0].points()));
  rep.check("locality groups are [1 7 11] [8 18 12] [2 14 3] [16 17 5]",
            groups_got == std::vector<std::vector<long>>{
                              {1, 7, 11}, {8, 18, 12}, {2, 14, 3}, {16, 17, 5}});
  rep.check("parity group C is [4 9 6]",
            values_of(lay.c_groups[0].points()) == std::vector<long>{4, 9, 6},
            fmt_elems(lay.c_groups[0].points()));
  std::vector<long> constants;
  for (int gi = 0; gi < code.final_code.group_count(); ++gi) {
    constants.push_back(code.final_code.group_constant(gi).value);
  }
  rep.check("group constants of g are [1 18 8 11 7]",
            constants == std::vector<long>{1, 18, 8, 11, 7});
  rep.check("pairing scalars for block 2 are [5 15]",
            values_of(code.thetas[1]) == std::vector<long>{5, 15},
            fmt_elems(code.thetas[1]));
  rep.check("pairing matrix M2 rows are [10 0 16 0 | 0 5 0 8 | 14 0 6 0 | 0 "
            "7 0 3]",
            values_of(code.m_matrices[1]) ==
                std::vector<std::vector<long>>{{10, 0, 16, 0},
                                               {0, 5, 0, 8},
                                               {14, 0, 6, 0},
                                               {0, 7, 0, 3}});
  rep.check("projection coefficients for c1 are [15 12]",
            values_of(code.eta[1][0][0]) == std::vector<long>{15, 12},
            fmt_elems(code.eta[1][0][0]));
  rep.check("projection coefficients for c2 are [11 16]",
            values_of(code.eta[1][0][1]) == std::vector<long>{11, 16},
            fmt_elems(code.eta[1][0][1]));
  rep.check("cross-block factors at g(C) are 4 and 10",
            code.h_at_c[0][0].value == 4 && code.h_at_c[1][0].value == 10,
            std::to_string(code.h_at_c[0][0].value) + "/" +
                std::to_string(code.h_at_c[1][0].value));
  rep.check(
      "final multipliers are [3 3 3 3 3 3 7 7 7 15 15 15 1 1 1]",
      values_of(code.final_code.multipliers()) ==
          std::vector<long>{3, 3, 3, 3, 3, 3, 7, 7, 7, 15, 15, 15, 1, 1, 1},
      fmt_elems(code.final_code.multipliers()));

  std::vector<std::vector<FieldElem>> messages =
      seeded_messages(field, 7, lay.zeta, lay.k * lay.r);
  std::vector<Codeword> initials;
  for (const std::vector<FieldElem>& m : messages) {
    initials.push_back(convcode::lrc_encode_initial(code, m));
  }
  auto [word, trace] = convcode::lrc_convert(code, initials, true);
  rep.show("final word (seed 7)", fmt_elems(word.symbols));
  rep.check("conversion reads 4 symbols", trace.read_cost == 4,
            std::to_string(trace.read_cost));
  rep.check("conversion writes 3 symbols", trace.write_cost == 3,
            std::to_string(trace.write_cost));
  rep.check("fresh final coords are the parity group [12 13 14]",
            trace.new_coords == std::vector<int>{12, 13, 14});
  bool untouched_ok = true;
  for (int i = 0; i < trace.initial_count; ++i) {
    const std::vector<int>& u = trace.untouched[i];
    if (std::find(u.begin(), u.end(), 8) == u.end()) untouched_ok = false;
  }
  rep.check("third symbol of each initial parity group stays untouched",
            untouched_ok);
  bool copies_ok = true;
  for (int i = 0; i < trace.initial_count; ++i) {
    for (const std::pair<int, int>& pr : trace.remaining[i]) {
      if (word.symbols[static_cast<std::size_t>(pr.second)] !=
          initials[static_cast<std::size_t>(i)]
              .symbols[static_cast<std::size_t>(pr.first)]) {
        copies_ok = false;
      }
    }
  }
  rep.check("remaining symbols are copied unchanged", copies_ok);
  rep.check("conversion output equals encoding from scratch",
            word == convcode::lrc_direct_final(code, messages));
  rep.check("final word decodes back to both messages",
            convcode::lrc_final_decode(code, word) == messages);

  long dist = convcode::min_distance_bruteforce(code.initial);
  rep.check("initial code has minimum distance 5", dist == 5,
            std::to_string(dist));
  int rank = convcode::mat_rank(code.final_code.generator_matrix());
  rep.check("final generator matrix has rank 8", rank == 8,
            std::to_string(rank));

  convcode::SingletonLrcBound sb_init = convcode::singleton_lrc(9, 4, 2);
  convcode::SingletonLrcBound sb_final = convcode::singleton_lrc(15, 8, 2);
  rep.check("initial code meets the locality distance bound with equality",
            sb_init.distance_bound == 5 && sb_init.rate_ok);
  rep.check("final distance bound is 5 as well",
            sb_final.distance_bound == 5 && sb_final.rate_ok);
  convcode::AccessBounds bound = convcode::lrc_access_bounds(9, 4, 15, 2, 2, 5);
  rep.check("access lower bounds are read 4, write 3",
            bound.read == 4 && bound.write == 3,
            std::to_string(bound.read) + "/" + std::to_string(bound.write));
  rep.check("observed costs meet the lower bounds with equality",
            trace.read_cost == bound.read && trace.write_cost == bound.write);
  rep.check("structural verification passes",
            convcode::verify_lrc(code).all_ok());
  return rep.finish("worked instance 2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Convertible erasure codes over prime fields: build conversion-ready "
      "code pairs, run and trace conversions, verify instances, and query "
      "access-cost bounds"};
  app.require_subcommand(1);
  int rc = 0;

  std::string build_kind;
  std::uint32_t build_field = 0;
  int build_zeta = 2, build_k = 2, build_r = 2, build_li = 1, build_lf = 1;
  std::string build_out;
  CLI::App* build = app.add_subcommand(
      "build", "Construct a convertible-code instance and write its spec");
  build->add_option("--kind", build_kind, "instance family: mds or lrc")
      ->required()
      ->check(CLI::IsMember({"mds", "lrc"}));
  build->add_option("--field", build_field,
                    "prime modulus; 0 picks the smallest suitable prime")
      ->default_val(0);
  build->add_option("--zeta", build_zeta, "number of initial codes to merge")
      ->default_val(2);
  build
      ->add_option("-k,--k", build_k,
                   "dimension of one initial code (mds) or its number of "
                   "message groups (lrc)")
      ->required();
  build
      ->add_option("-r,--locality", build_r,
                   "locality: group size minus one (lrc only)")
      ->default_val(2);
  build
      ->add_option("--li,--parity-initial", build_li,
                   "parity symbols (mds) or parity groups (lrc) of each "
                   "initial code")
      ->default_val(1);
  build
      ->add_option("--lf,--parity-final", build_lf,
                   "parity symbols (mds) or parity groups (lrc) of the final "
                   "code")
      ->default_val(1);
  build->add_option("-o,--out", build_out,
                    "spec file to write; omit to print the spec");
  build->callback([&]() {
    rc = cmd_build(build_kind, build_field, build_zeta, build_k, build_r,
                   build_li, build_lf, build_out);
  });

  std::string conv_spec, conv_messages, conv_out;
  std::uint64_t conv_seed = 0;
  bool conv_json = false, conv_no_validate = false;
  CLI::App* convert = app.add_subcommand(
      "convert", "Encode messages, run the conversion and print the trace");
  convert->add_option("--spec", conv_spec, "spec file of the instance")
      ->required();
  convert->add_option("--seed", conv_seed,
                      "seed for deterministic pseudo-random messages")
      ->default_val(0);
  convert->add_option(
      "--messages", conv_messages,
      "explicit messages: symbols separated by ',', codewords by ';'");
  convert->add_flag("--json", conv_json, "print a JSON report");
  convert->add_flag("--no-validate", conv_no_validate,
                    "skip the initial-codeword membership check");
  convert->add_option("--out", conv_out, "write the JSON report to a file");
  convert->callback([&]() {
    rc = cmd_convert(conv_spec, conv_seed, conv_messages, !conv_no_validate,
                     conv_json, conv_out);
  });

  std::string verify_spec;
  std::uint64_t verify_seed = 0;
  bool verify_deep = false, verify_json = false;
  CLI::App* verify = app.add_subcommand(
      "verify", "Re-derive and check every stored quantity of an instance");
  verify->add_option("--spec", verify_spec, "spec file of the instance")
      ->required();
  verify->add_flag("--deep", verify_deep,
                   "also run randomized conversion trials and distance checks");
  verify->add_option("--seed", verify_seed, "seed for the randomized trials")
      ->default_val(0);
  verify->add_flag("--json", verify_json, "print a JSON report");
  verify->callback(
      [&]() { rc = cmd_verify(verify_spec, verify_deep, verify_seed, verify_json); });

  CLI::App* bounds = app.add_subcommand(
      "bounds", "Lower bounds on conversion access cost and distance bounds");
  bounds->require_subcommand(1);
  long bm_ni = 0, bm_k = 0, bm_nf = 0, bm_zeta = 0;
  bool bm_json = false;
  CLI::App* bounds_mds = bounds->add_subcommand(
      "mds", "Access-cost lower bounds for merging MDS codes");
  bounds_mds->add_option("--initial-length", bm_ni, "length of one initial code")
      ->required();
  bounds_mds->add_option("-k,--dimension", bm_k, "dimension of one initial code")
      ->required();
  bounds_mds->add_option("--final-length", bm_nf, "length of the final code")
      ->required();
  bounds_mds->add_option("--zeta", bm_zeta, "number of codes merged")
      ->required();
  bounds_mds->add_flag("--json", bm_json, "print JSON");
  bounds_mds->callback(
      [&]() { rc = cmd_bounds_mds(bm_ni, bm_k, bm_nf, bm_zeta, bm_json); });

  long bl_ni = 0, bl_k = 0, bl_nf = 0, bl_zeta = 0, bl_r = 0, bl_d = 0;
  bool bl_json = false;
  CLI::App* bounds_lrc = bounds->add_subcommand(
      "lrc", "Access-cost lower bounds for merging codes with locality");
  bounds_lrc->add_option("--initial-length", bl_ni, "length of one initial code")
      ->required();
  bounds_lrc->add_option("-k,--dimension", bl_k, "dimension of one initial code")
      ->required();
  bounds_lrc->add_option("--final-length", bl_nf, "length of the final code")
      ->required();
  bounds_lrc->add_option("--zeta", bl_zeta, "number of codes merged")
      ->required();
  bounds_lrc->add_option("-r,--locality", bl_r, "locality of all codes")
      ->required();
  bounds_lrc->add_option("-d,--distance", bl_d,
                         "minimum distance of the final code")
      ->required();
  bounds_lrc->add_flag("--json", bl_json, "print JSON");
  bounds_lrc->callback([&]() {
    rc = cmd_bounds_lrc(bl_ni, bl_k, bl_nf, bl_zeta, bl_r, bl_d, bl_json);
  });

  long bs_n = 0, bs_k = 0, bs_r = 0;
  bool bs_json = false;
  CLI::App* bounds_singleton = bounds->add_subcommand(
      "singleton", "Distance upper bound for codes with locality");
  bounds_singleton->add_option("-n,--length", bs_n, "code length")->required();
  bounds_singleton->add_option("-k,--dimension", bs_k, "code dimension")
      ->required();
  bounds_singleton->add_option("-r,--locality", bs_r, "locality")->required();
  bounds_singleton->add_flag("--json", bs_json, "print JSON");
  bounds_singleton->callback(
      [&]() { rc = cmd_bounds_singleton(bs_n, bs_k, bs_r, bs_json); });

  CLI::App* repro1 = app.add_subcommand(
      "repro-example1",
      "Rebuild the first worked instance (two [6,4] codes over F_19 merged "
      "into a [10,8] code) and check every derived value");
  repro1->callback([&]() { rc = cmd_repro_example1(); });

  CLI::App* repro2 = app.add_subcommand(
      "repro-example2",
      "Rebuild the second worked instance (two (9,4,2) codes over F_19 "
      "merged into a (15,8,2) code) and check every derived value");
  repro2->callback([&]() { rc = cmd_repro_example2(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const convcode::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const convcode::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const convcode::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
