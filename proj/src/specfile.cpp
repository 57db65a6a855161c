#include "convcode/specfile.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "convcode/errors.hpp"

namespace convcode {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFormat = "convcode-spec";
constexpr int kVersion = 1;

json elems_json(const std::vector<FieldElem>& v) {
  json arr = json::array();
  for (const FieldElem& e : v) arr.push_back(e.value);
  return arr;
}

json points_json(const EvaluationSet& s) { return elems_json(s.points()); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(elems_json(m.row(i)));
  return rows;
}

const json& need(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw IoError(std::string("spec: missing key '") + key + "'");
  }
  return *it;
}

long need_int(const json& obj, const char* key) {
  const json& v = need(obj, key);
  if (!v.is_number_integer()) {
    throw IoError(std::string("spec: key '") + key + "' must be an integer");
  }
  return v.get<long>();
}

std::uint32_t need_modulus(const json& obj) {
  const json& v = need(obj, "field");
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= (1ull << 31)) {
    throw IoError("spec: key 'field' must be a modulus below 2^31");
  }
  return v.get<std::uint32_t>();
}

FieldElem read_elem(const json& v, const PrimeField& field,
                    const char* where) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= field.modulus()) {
    throw IoError(std::string("spec: ") + where +
                  " holds a value outside the field");
  }
  return field.elem(v.get<std::uint32_t>());
}

std::vector<FieldElem> read_elems(const json& arr, const PrimeField& field,
                                  const char* where) {
  if (!arr.is_array()) {
    throw IoError(std::string("spec: ") + where + " must be an array");
  }
  std::vector<FieldElem> out;
  out.reserve(arr.size());
  for (const json& v : arr) out.push_back(read_elem(v, field, where));
  return out;
}

EvaluationSet read_points(const json& arr, const PrimeField& field,
                          const char* where) {
  return EvaluationSet(read_elems(arr, field, where));
}

Matrix read_matrix(const json& rows, const PrimeField& field,
                   const char* where) {
  if (!rows.is_array() || rows.empty()) {
    throw IoError(std::string("spec: ") + where +
                  " must be a nonempty array of rows");
  }
  std::vector<std::vector<FieldElem>> data;
  data.reserve(rows.size());
  for (const json& r : rows) data.push_back(read_elems(r, field, where));
  for (const std::vector<FieldElem>& r : data) {
    if (r.size() != data[0].size()) {
      throw IoError(std::string("spec: ") + where + " rows differ in length");
    }
  }
  return Matrix::from_rows(data);
}

json mds_json(const MdsConvertibleCode& code) {
  const MdsLayout& lay = code.layout;
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["kind"] = "mds";
  j["field"] = lay.field.modulus();
  j["zeta"] = lay.zeta;
  j["k"] = lay.k;
  j["l_initial"] = lay.l_initial;
  j["l_final"] = lay.l_final;
  j["alpha"] = lay.alpha.value;
  json a_sets = json::array();
  for (const EvaluationSet& s : lay.a_sets) a_sets.push_back(points_json(s));
  j["a_sets"] = std::move(a_sets);
  j["c_set"] = points_json(lay.c_set);
  j["b_set"] = points_json(lay.b_set);
  json thetas = json::array();
  for (const std::vector<FieldElem>& t : code.thetas) {
    thetas.push_back(elems_json(t));
  }
  j["thetas"] = std::move(thetas);
  json mats = json::array();
  for (const Matrix& m : code.m_matrices) mats.push_back(matrix_json(m));
  j["m_matrices"] = std::move(mats);
  j["final_multipliers"] = elems_json(code.final_code.multipliers());
  return j;
}

json lrc_json(const LrcConvertibleCode& code) {
  const LrcLayout& lay = code.layout;
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["kind"] = "lrc";
  j["field"] = lay.field.modulus();
  j["zeta"] = lay.zeta;
  j["k"] = lay.k;
  j["r"] = lay.r;
  j["l_initial"] = lay.l_initial;
  j["l_final"] = lay.l_final;
  j["zeta0"] = lay.zeta0;
  j["beta"] = lay.beta.value;
  j["alpha"] = lay.alpha.value;
  j["g"] = elems_json(lay.g.coeffs());
  json blocks = json::array();
  for (const std::vector<EvaluationSet>& block : lay.a_groups) {
    json groups = json::array();
    for (const EvaluationSet& grp : block) groups.push_back(points_json(grp));
    blocks.push_back(std::move(groups));
  }
  j["a_groups"] = std::move(blocks);
  json c_groups = json::array();
  for (const EvaluationSet& grp : lay.c_groups) {
    c_groups.push_back(points_json(grp));
  }
  j["c_groups"] = std::move(c_groups);
  json b_sources = json::array();
  for (const std::pair<int, int>& src : lay.b_sources) {
    b_sources.push_back(json::array({src.first, src.second}));
  }
  j["b_sources"] = std::move(b_sources);
  json thetas = json::array();
  for (const std::vector<FieldElem>& t : code.thetas) {
    thetas.push_back(elems_json(t));
  }
  j["thetas"] = std::move(thetas);
  json mats = json::array();
  for (const Matrix& m : code.m_matrices) mats.push_back(matrix_json(m));
  j["m_matrices"] = std::move(mats);
  j["final_multipliers"] = elems_json(code.final_code.multipliers());
  return j;
}

json reencode_json(const DefaultReencodeMds& code) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["kind"] = "mds-reencode";
  j["field"] = code.field.modulus();
  j["zeta"] = code.zeta;
  j["k"] = code.k;
  j["l_initial"] = code.l_initial;
  j["l_final"] = code.l_final;
  return j;
}

AnyCode read_mds(const json& j) {
  PrimeField field(need_modulus(j));
  int zeta = static_cast<int>(need_int(j, "zeta"));
  int k = static_cast<int>(need_int(j, "k"));
  int l_initial = static_cast<int>(need_int(j, "l_initial"));
  int l_final = static_cast<int>(need_int(j, "l_final"));
  FieldElem alpha = read_elem(need(j, "alpha"), field, "alpha");
  const json& a_sets_j = need(j, "a_sets");
  if (!a_sets_j.is_array()) throw IoError("spec: a_sets must be an array");
  std::vector<EvaluationSet> a_sets;
  for (const json& s : a_sets_j) a_sets.push_back(read_points(s, field, "a_sets"));
  EvaluationSet c_set = read_points(need(j, "c_set"), field, "c_set");
  EvaluationSet b_set = read_points(need(j, "b_set"), field, "b_set");
  MdsLayout layout =
      mds_layout_from_sets(field, zeta, k, l_initial, l_final, alpha,
                           std::move(a_sets), std::move(c_set), std::move(b_set));
  const json& thetas_j = need(j, "thetas");
  if (!thetas_j.is_array()) throw IoError("spec: thetas must be an array");
  std::vector<std::vector<FieldElem>> thetas;
  for (const json& t : thetas_j) thetas.push_back(read_elems(t, field, "thetas"));
  const json& mats_j = need(j, "m_matrices");
  if (!mats_j.is_array()) throw IoError("spec: m_matrices must be an array");
  std::vector<Matrix> mats;
  for (const json& m : mats_j) mats.push_back(read_matrix(m, field, "m_matrices"));
  std::vector<FieldElem> finals =
      read_elems(need(j, "final_multipliers"), field, "final_multipliers");
  return assemble_mds_convertible(std::move(layout), std::move(thetas),
                                  std::move(mats), std::move(finals));
}

AnyCode read_lrc(const json& j) {
  PrimeField field(need_modulus(j));
  int zeta = static_cast<int>(need_int(j, "zeta"));
  int k = static_cast<int>(need_int(j, "k"));
  int r = static_cast<int>(need_int(j, "r"));
  int l_initial = static_cast<int>(need_int(j, "l_initial"));
  int l_final = static_cast<int>(need_int(j, "l_final"));
  int zeta0 = static_cast<int>(need_int(j, "zeta0"));
  FieldElem beta = read_elem(need(j, "beta"), field, "beta");
  FieldElem alpha = read_elem(need(j, "alpha"), field, "alpha");
  Polynomial g(read_elems(need(j, "g"), field, "g"), field);
  const json& blocks_j = need(j, "a_groups");
  if (!blocks_j.is_array()) throw IoError("spec: a_groups must be an array");
  std::vector<std::vector<EvaluationSet>> a_groups;
  for (const json& block : blocks_j) {
    if (!block.is_array()) throw IoError("spec: a_groups must hold arrays");
    std::vector<EvaluationSet> groups;
    for (const json& grp : block) {
      groups.push_back(read_points(grp, field, "a_groups"));
    }
    a_groups.push_back(std::move(groups));
  }
  const json& c_groups_j = need(j, "c_groups");
  if (!c_groups_j.is_array()) throw IoError("spec: c_groups must be an array");
  std::vector<EvaluationSet> c_groups;
  for (const json& grp : c_groups_j) {
    c_groups.push_back(read_points(grp, field, "c_groups"));
  }
  const json& b_sources_j = need(j, "b_sources");
  if (!b_sources_j.is_array()) throw IoError("spec: b_sources must be an array");
  std::vector<std::pair<int, int>> b_sources;
  for (const json& src : b_sources_j) {
    if (!src.is_array() || src.size() != 2 || !src[0].is_number_integer() ||
        !src[1].is_number_integer()) {
      throw IoError("spec: b_sources entries must be [block, group] pairs");
    }
    b_sources.emplace_back(src[0].get<int>(), src[1].get<int>());
  }
  LrcLayout layout = lrc_layout_from_sets(
      field, zeta, k, r, l_initial, l_final, zeta0, beta, alpha, std::move(g),
      std::move(a_groups), std::move(c_groups), std::move(b_sources));
  const json& thetas_j = need(j, "thetas");
  if (!thetas_j.is_array()) throw IoError("spec: thetas must be an array");
  std::vector<std::vector<FieldElem>> thetas;
  for (const json& t : thetas_j) thetas.push_back(read_elems(t, field, "thetas"));
  const json& mats_j = need(j, "m_matrices");
  if (!mats_j.is_array()) throw IoError("spec: m_matrices must be an array");
  std::vector<Matrix> mats;
  for (const json& m : mats_j) mats.push_back(read_matrix(m, field, "m_matrices"));
  std::vector<FieldElem> finals =
      read_elems(need(j, "final_multipliers"), field, "final_multipliers");
  return assemble_lrc_convertible(std::move(layout), std::move(thetas),
                                  std::move(mats), std::move(finals));
}

AnyCode read_reencode(const json& j) {
  PrimeField field(need_modulus(j));
  return build_default_reencode(field, static_cast<int>(need_int(j, "zeta")),
                                static_cast<int>(need_int(j, "k")),
                                static_cast<int>(need_int(j, "l_initial")),
                                static_cast<int>(need_int(j, "l_final")));
}

}  // namespace

const char* spec_kind(const AnyCode& code) {
  if (std::holds_alternative<MdsConvertibleCode>(code)) return "mds";
  if (std::holds_alternative<LrcConvertibleCode>(code)) return "lrc";
  return "mds-reencode";
}

std::string spec_to_json(const AnyCode& code) {
  json j;
  if (const auto* mds = std::get_if<MdsConvertibleCode>(&code)) {
    j = mds_json(*mds);
  } else if (const auto* lrc = std::get_if<LrcConvertibleCode>(&code)) {
    j = lrc_json(*lrc);
  } else {
    j = reencode_json(std::get<DefaultReencodeMds>(code));
  }
  return j.dump(2) + "\n";
}

AnyCode spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("spec: ") + e.what());
  }
  if (!j.is_object()) throw IoError("spec: top level must be an object");
  const json& format = need(j, "format");
  if (!format.is_string() || format.get<std::string>() != kFormat) {
    throw IoError("spec: unrecognized format marker");
  }
  if (need_int(j, "version") != kVersion) {
    throw IoError("spec: unsupported version");
  }
  const json& kind = need(j, "kind");
  if (!kind.is_string()) throw IoError("spec: kind must be a string");
  std::string kind_s = kind.get<std::string>();
  if (kind_s == "mds") return read_mds(j);
  if (kind_s == "lrc") return read_lrc(j);
  if (kind_s == "mds-reencode") return read_reencode(j);
  throw IoError("spec: unknown kind '" + kind_s + "'");
}

void save_spec(const std::string& path, const AnyCode& code) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << spec_to_json(code);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

AnyCode load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return spec_from_json(buf.str());
}

}  // namespace convcode
