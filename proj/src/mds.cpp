#include "convcode/mds.hpp"

#include <algorithm>
#include <string>

#include "convcode/rng.hpp"

namespace convcode {

namespace {

// Annihilator of all a_sets except block `skip` (-1 keeps all).
Polynomial cross_block_annihilator(const MdsLayout& layout, int skip) {
  std::vector<FieldElem> pts;
  for (int i = 0; i < layout.zeta; ++i) {
    if (i == skip) continue;
    const auto& blk = layout.a_sets[static_cast<std::size_t>(i)].points();
    pts.insert(pts.end(), blk.begin(), blk.end());
  }
  return annihilator(EvaluationSet(std::move(pts)), layout.field);
}

std::vector<FieldElem> vand_column(const FieldElem& x, int k) {
  PrimeField field(x.p);
  std::vector<FieldElem> col;
  col.reserve(static_cast<std::size_t>(k));
  FieldElem pw = field.one();
  for (int i = 0; i < k; ++i) {
    col.push_back(pw);
    pw *= x;
  }
  return col;
}

// h_{S \ {s_j}}(s_j) for the j-th point of S.
FieldElem annihilator_at_excluding(const EvaluationSet& s, std::size_t j) {
  FieldElem acc{1, s[0].p};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == j) continue;
    acc *= s[j] - s[i];
  }
  return acc;
}

}  // namespace

void validate_mds_layout(const MdsLayout& layout) {
  if (layout.zeta < 1) throw ParameterError("zeta must be at least 1");
  if (layout.k < 1) throw ParameterError("k must be at least 1");
  if (layout.l_initial < 1) throw ParameterError("lI must be at least 1");
  if (layout.l_final < 1) throw ParameterError("lF must be at least 1");
  if (layout.l_final > std::min(layout.k, layout.l_initial)) {
    throw ParameterError("structured layout needs lF <= min(k, lI)");
  }
  if (static_cast<int>(layout.a_sets.size()) != layout.zeta) {
    throw LayoutError("expected zeta point blocks");
  }
  for (const EvaluationSet& blk : layout.a_sets) {
    if (static_cast<int>(blk.size()) != layout.k) {
      throw LayoutError("every A block must hold k points");
    }
  }
  if (static_cast<int>(layout.c_set.size()) != layout.l_final) {
    throw LayoutError("C must hold lF points");
  }
  if (static_cast<int>(layout.b_set.size()) !=
      layout.l_initial - layout.l_final) {
    throw LayoutError("B must hold lI - lF points");
  }
  if (layout.alpha.p != layout.field.modulus() || layout.alpha.value == 0) {
    throw LayoutError("alpha must be a nonzero field element");
  }
  // Elementwise coset pairing A_{i+1} = alpha * A_i.
  for (int i = 1; i < layout.zeta; ++i) {
    for (int j = 0; j < layout.k; ++j) {
      FieldElem want =
          layout.alpha *
          layout.a_sets[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
      if (!(layout.a_sets[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
            want)) {
        throw LayoutError("block " + std::to_string(i + 1) +
                          " is not alpha times block " + std::to_string(i) +
                          " at position " + std::to_string(j + 1));
      }
    }
  }
  // Global distinctness across all blocks, C and B.
  std::vector<EvaluationSet> all = layout.a_sets;
  if (!layout.c_set.empty()) all.push_back(layout.c_set);
  if (!layout.b_set.empty()) all.push_back(layout.b_set);
  try {
    union_of(all);
  } catch (const DuplicateAbscissaError& e) {
    throw LayoutError(std::string("point blocks overlap: ") + e.what());
  }
}

MdsLayout build_mds_sets(const PrimeField& field, int zeta, int k,
                         int l_initial, int l_final) {
  if (zeta < 1 || k < 1 || l_initial < 1 || l_final < 1) {
    throw ParameterError("all of zeta, k, lI, lF must be at least 1");
  }
  if (l_final > std::min(k, l_initial)) {
    throw ParameterError("structured construction needs lF <= min(k, lI)");
  }
  std::uint32_t q = field.modulus();
  std::uint32_t m0 = static_cast<std::uint32_t>(std::max(k, l_initial));
  // Smallest subgroup order m >= max(k, lI) with m | q - 1 and room for
  // zeta + 1 disjoint cosets.
  std::uint32_t m = 0;
  for (std::uint32_t cand = m0; cand <= (q - 1) / static_cast<std::uint32_t>(zeta + 1);
       ++cand) {
    if ((q - 1) % cand == 0) {
      m = cand;
      break;
    }
  }
  if (m == 0) {
    throw DivisibilityError(
        "field of size " + std::to_string(q) +
        " has no multiplicative subgroup of order at least " +
        std::to_string(m0) + " with room for " + std::to_string(zeta + 1) +
        " cosets");
  }
  FieldElem gamma = subgroup_generator(field, m);
  FieldElem alpha = primitive_root(field);
  std::vector<FieldElem> a1;
  a1.reserve(static_cast<std::size_t>(k));
  FieldElem pw = field.one();
  for (int j = 0; j < k; ++j) {
    a1.push_back(pw);
    pw *= gamma;
  }
  MdsLayout layout{field, zeta, k, l_initial, l_final, alpha, {}, {}, {}};
  FieldElem shift = field.one();
  for (int i = 0; i < zeta; ++i) {
    std::vector<FieldElem> blk;
    blk.reserve(a1.size());
    for (const FieldElem& x : a1) blk.push_back(shift * x);
    layout.a_sets.emplace_back(std::move(blk));
    shift *= alpha;
  }
  // C takes the first lF points of the coset alpha^zeta, B the next lI - lF.
  FieldElem base = ff_pow(alpha, static_cast<std::uint64_t>(zeta));
  std::vector<FieldElem> c_pts, b_pts;
  FieldElem gp = field.one();
  for (int j = 0; j < l_initial; ++j) {
    FieldElem pt = base * gp;
    if (j < l_final) {
      c_pts.push_back(pt);
    } else {
      b_pts.push_back(pt);
    }
    gp *= gamma;
  }
  layout.c_set = EvaluationSet(std::move(c_pts));
  layout.b_set = EvaluationSet(std::move(b_pts));
  validate_mds_layout(layout);
  return layout;
}

MdsLayout mds_layout_from_sets(const PrimeField& field, int zeta, int k,
                               int l_initial, int l_final, FieldElem alpha,
                               std::vector<EvaluationSet> a_sets,
                               EvaluationSet c_set, EvaluationSet b_set) {
  MdsLayout layout{field,         zeta,  k, l_initial, l_final, alpha,
                   std::move(a_sets), std::move(c_set), std::move(b_set)};
  validate_mds_layout(layout);
  return layout;
}

std::pair<std::vector<FieldElem>, Matrix> build_m_matrix(
    const EvaluationSet& a_set, const EvaluationSet& b_set,
    const EvaluationSet& c_set) {
  if (a_set.empty() || a_set.size() != b_set.size()) {
    throw DimensionError("paired point sets must be nonempty and equal-size");
  }
  union_of({a_set, b_set, c_set});  // pairwise disjoint overall
  PrimeField field(a_set[0].p);
  int k = static_cast<int>(a_set.size());

  auto with_c = [&](const EvaluationSet& s) {
    std::vector<FieldElem> pts = s.points();
    pts.insert(pts.end(), c_set.points().begin(), c_set.points().end());
    return EvaluationSet(std::move(pts));
  };
  EvaluationSet ac = with_c(a_set);
  EvaluationSet bc = with_c(b_set);
  std::vector<FieldElem> theta;
  theta.reserve(static_cast<std::size_t>(k));
  for (std::size_t j = 0; j < a_set.size(); ++j) {
    FieldElem num = annihilator_at_excluding(bc, j);
    FieldElem den = annihilator_at_excluding(ac, j);
    theta.push_back(num / den);
  }
  Matrix m = vandermonde(a_set, k) * Matrix::diagonal(theta) *
             mat_inverse(vandermonde(b_set, k));
  // Pairing identity M * vand(b_j) = theta_j * vand(a_j); holds by
  // construction, kept as an internal consistency check.
  for (std::size_t j = 0; j < b_set.size(); ++j) {
    std::vector<FieldElem> got = mat_vec(m, vand_column(b_set[j], k));
    std::vector<FieldElem> want = vand_column(a_set[j], k);
    for (FieldElem& w : want) w *= theta[j];
    if (got != want) {
      throw ConditionViolation("pairing identity fails at position " +
                               std::to_string(j + 1));
    }
  }
  return {std::move(theta), std::move(m)};
}

namespace {

// Shared tail of build and assemble: initial code, h values, eta solve.
MdsConvertibleCode finish_mds(MdsLayout layout,
                              std::vector<std::vector<FieldElem>> thetas,
                              std::vector<Matrix> m_matrices,
                              std::vector<FieldElem> final_multipliers) {
  std::vector<FieldElem> initial_pts = layout.a_sets[0].points();
  initial_pts.insert(initial_pts.end(), layout.c_set.points().begin(),
                     layout.c_set.points().end());
  initial_pts.insert(initial_pts.end(), layout.b_set.points().begin(),
                     layout.b_set.points().end());
  GrsCode initial =
      GrsCode::reed_solomon(EvaluationSet(std::move(initial_pts)), layout.k);

  std::vector<FieldElem> final_pts;
  for (const EvaluationSet& blk : layout.a_sets) {
    final_pts.insert(final_pts.end(), blk.points().begin(), blk.points().end());
  }
  final_pts.insert(final_pts.end(), layout.c_set.points().begin(),
                   layout.c_set.points().end());
  GrsCode final_code(EvaluationSet(std::move(final_pts)),
                     std::move(final_multipliers), layout.zeta * layout.k);

  MdsConvertibleCode code{std::move(layout),
                          std::move(initial),
                          std::move(final_code),
                          std::move(thetas),
                          std::move(m_matrices),
                          {},
                          {},
                          true,
                          ""};

  code.h_at_c.resize(static_cast<std::size_t>(code.layout.zeta));
  for (int i = 0; i < code.layout.zeta; ++i) {
    Polynomial h = cross_block_annihilator(code.layout, i);
    auto& row = code.h_at_c[static_cast<std::size_t>(i)];
    for (const FieldElem& c : code.layout.c_set.points()) {
      row.push_back(poly_eval(h, c));
    }
  }

  std::vector<std::vector<FieldElem>> c_basis;
  for (const FieldElem& c : code.layout.c_set.points()) {
    c_basis.push_back(vand_column(c, code.layout.k));
  }
  code.eta.resize(static_cast<std::size_t>(code.layout.zeta));
  for (int i = 0; i < code.layout.zeta; ++i) {
    auto& per_block = code.eta[static_cast<std::size_t>(i)];
    per_block.resize(static_cast<std::size_t>(code.layout.l_final));
    for (int j = 0; j < code.layout.l_final; ++j) {
      std::vector<FieldElem> target =
          mat_vec(code.m_matrices[static_cast<std::size_t>(i)],
                  c_basis[static_cast<std::size_t>(j)]);
      std::optional<std::vector<FieldElem>> coeffs = in_span(target, c_basis);
      if (coeffs) {
        per_block[static_cast<std::size_t>(j)] = std::move(*coeffs);
      } else if (code.conditions_ok) {
        code.conditions_ok = false;
        code.condition_note =
            "projected parity vector of c_" + std::to_string(j + 1) +
            " through block " + std::to_string(i + 1) +
            " lies outside the span of the shared parity vectors";
      }
    }
  }
  // Pairing identity against the stored matrices (condition 1).
  for (int i = 1; i < code.layout.zeta && code.conditions_ok; ++i) {
    for (int j = 0; j < code.layout.k; ++j) {
      std::vector<FieldElem> got =
          mat_vec(code.m_matrices[static_cast<std::size_t>(i)],
                  vand_column(
                      code.layout.a_sets[static_cast<std::size_t>(i)]
                                        [static_cast<std::size_t>(j)],
                      code.layout.k));
      std::vector<FieldElem> want = vand_column(
          code.layout.a_sets[0][static_cast<std::size_t>(j)], code.layout.k);
      for (FieldElem& w : want) {
        w *= code.thetas[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
      if (got != want) {
        code.conditions_ok = false;
        code.condition_note = "pairing identity fails for block " +
                              std::to_string(i + 1) + ", position " +
                              std::to_string(j + 1);
        break;
      }
    }
  }
  return code;
}

std::vector<FieldElem> derive_final_multipliers(
    const MdsLayout& layout,
    const std::vector<std::vector<FieldElem>>& thetas) {
  const PrimeField& field = layout.field;
  std::vector<FieldElem> us;
  us.reserve(static_cast<std::size_t>(layout.final_length()));
  for (int i = 0; i < layout.zeta; ++i) {
    Polynomial h = cross_block_annihilator(layout, i);
    for (int j = 0; j < layout.k; ++j) {
      FieldElem hv = poly_eval(
          h, layout.a_sets[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      us.push_back(ff_inv(
          thetas[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * hv));
    }
  }
  for (int j = 0; j < layout.l_final; ++j) us.push_back(field.one());
  return us;
}

}  // namespace

MdsConvertibleCode build_mds_convertible(const MdsLayout& layout) {
  validate_mds_layout(layout);
  const PrimeField& field = layout.field;
  std::vector<std::vector<FieldElem>> thetas;
  std::vector<Matrix> m_matrices;
  thetas.push_back(
      std::vector<FieldElem>(static_cast<std::size_t>(layout.k), field.one()));
  m_matrices.push_back(Matrix::identity(layout.k, field));
  for (int i = 1; i < layout.zeta; ++i) {
    auto [theta, m] = build_m_matrix(
        layout.a_sets[0], layout.a_sets[static_cast<std::size_t>(i)],
        layout.c_set);
    thetas.push_back(std::move(theta));
    m_matrices.push_back(std::move(m));
  }
  std::vector<FieldElem> final_multipliers =
      derive_final_multipliers(layout, thetas);
  MdsConvertibleCode code =
      finish_mds(layout, std::move(thetas), std::move(m_matrices),
                 std::move(final_multipliers));
  if (!code.conditions_ok) throw ConditionViolation(code.condition_note);
  return code;
}

MdsConvertibleCode assemble_mds_convertible(
    MdsLayout layout, std::vector<std::vector<FieldElem>> thetas,
    std::vector<Matrix> m_matrices, std::vector<FieldElem> final_multipliers) {
  validate_mds_layout(layout);
  if (static_cast<int>(thetas.size()) != layout.zeta ||
      static_cast<int>(m_matrices.size()) != layout.zeta) {
    throw DimensionError("need one theta vector and one matrix per block");
  }
  for (const auto& tv : thetas) {
    if (static_cast<int>(tv.size()) != layout.k) {
      throw DimensionError("every theta vector must have length k");
    }
  }
  return finish_mds(std::move(layout), std::move(thetas), std::move(m_matrices),
                    std::move(final_multipliers));
}

std::pair<Codeword, ConversionTrace> mds_convert(
    const MdsConvertibleCode& code, const std::vector<Codeword>& initials,
    bool validate) {
  if (!code.conditions_ok) throw ConditionViolation(code.condition_note);
  const MdsLayout& layout = code.layout;
  if (static_cast<int>(initials.size()) != layout.zeta) {
    throw DimensionError("expected " + std::to_string(layout.zeta) +
                         " initial codewords");
  }
  for (std::size_t i = 0; i < initials.size(); ++i) {
    if (static_cast<int>(initials[i].size()) != layout.initial_length()) {
      throw DimensionError("initial codeword " + std::to_string(i + 1) +
                           " has the wrong length");
    }
  }
  if (validate) {
    for (std::size_t i = 0; i < initials.size(); ++i) {
      if (!grs_is_codeword(code.initial, initials[i])) {
        throw NotACodewordError("initial codeword " + std::to_string(i + 1) +
                                " is not in the initial code");
      }
    }
  }

  int k = layout.k;
  int lf = layout.l_final;
  ConversionTrace trace;
  trace.initial_count = layout.zeta;
  trace.remaining.resize(initials.size());
  trace.accessed.resize(initials.size());
  trace.untouched.resize(initials.size());
  trace.observed_reads.resize(initials.size());

  PrimeField field(layout.field);
  Codeword out;
  out.symbols.assign(static_cast<std::size_t>(layout.final_length()),
                     field.zero());
  out.labels.reserve(out.symbols.size());
  for (int c = 0; c < layout.final_length(); ++c) {
    out.labels.push_back(code.final_code.label(c));
  }

  // Remaining symbols: the A block of initial i lands at final block i.
  for (int i = 0; i < layout.zeta; ++i) {
    for (int j = 0; j < k; ++j) {
      int dst = i * k + j;
      out.symbols[static_cast<std::size_t>(dst)] =
          initials[static_cast<std::size_t>(i)]
              .symbols[static_cast<std::size_t>(j)];
      trace.remaining[static_cast<std::size_t>(i)].emplace_back(j, dst);
    }
    for (int j = k + lf; j < layout.initial_length(); ++j) {
      trace.untouched[static_cast<std::size_t>(i)].push_back(j);
    }
  }

  // Accessed symbols: every shared-parity symbol of every initial, read
  // once through the logging path.
  std::vector<std::vector<FieldElem>> c_sym(initials.size());
  for (int i = 0; i < layout.zeta; ++i) {
    for (int j = 0; j < lf; ++j) {
      int src = k + j;
      trace.accessed[static_cast<std::size_t>(i)].push_back(src);
      trace.observed_reads[static_cast<std::size_t>(i)].push_back(src);
      c_sym[static_cast<std::size_t>(i)].push_back(
          initials[static_cast<std::size_t>(i)]
              .symbols[static_cast<std::size_t>(src)]);
    }
  }

  // New symbols: final shared parities.
  for (int j = 0; j < lf; ++j) {
    FieldElem acc = field.zero();
    for (int i = 0; i < layout.zeta; ++i) {
      FieldElem inner = field.zero();
      const auto& coeffs =
          code.eta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int s = 0; s < lf; ++s) {
        inner += coeffs[static_cast<std::size_t>(s)] *
                 c_sym[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
      }
      acc += code.h_at_c[static_cast<std::size_t>(i)]
                        [static_cast<std::size_t>(j)] *
             inner;
    }
    int dst = layout.zeta * k + j;
    out.symbols[static_cast<std::size_t>(dst)] = acc;
    trace.new_coords.push_back(dst);
  }

  for (const auto& a : trace.accessed) {
    trace.read_cost += static_cast<long>(a.size());
  }
  trace.write_cost = static_cast<long>(trace.new_coords.size());
  return {std::move(out), std::move(trace)};
}

Codeword mds_direct_final(const MdsConvertibleCode& code,
                          const std::vector<std::vector<FieldElem>>& messages) {
  const MdsLayout& layout = code.layout;
  if (static_cast<int>(messages.size()) != layout.zeta) {
    throw DimensionError("expected one message per initial codeword");
  }
  PrimeField field(layout.field);
  Polynomial combined(field);
  for (int i = 0; i < layout.zeta; ++i) {
    if (static_cast<int>(messages[static_cast<std::size_t>(i)].size()) !=
        layout.k) {
      throw DimensionError("message length differs from k");
    }
    std::vector<FieldElem> mapped = vec_mat(
        messages[static_cast<std::size_t>(i)],
        code.m_matrices[static_cast<std::size_t>(i)]);
    combined = combined + cross_block_annihilator(layout, i) *
                              Polynomial(std::move(mapped), field);
  }
  Codeword out;
  out.symbols.reserve(static_cast<std::size_t>(layout.final_length()));
  out.labels.reserve(out.symbols.size());
  for (int c = 0; c < layout.final_length(); ++c) {
    out.symbols.push_back(code.final_code.multipliers()[static_cast<std::size_t>(c)] *
                          poly_eval(combined, code.final_code.points()[c]));
    out.labels.push_back(code.final_code.label(c));
  }
  return out;
}

std::vector<std::vector<FieldElem>> mds_final_decode(
    const MdsConvertibleCode& code, const Codeword& final_word) {
  const MdsLayout& layout = code.layout;
  if (static_cast<int>(final_word.size()) != layout.final_length()) {
    throw DimensionError("final codeword has the wrong length");
  }
  std::vector<std::pair<int, FieldElem>> known;
  known.reserve(final_word.size());
  for (int c = 0; c < layout.final_length(); ++c) {
    known.emplace_back(c, final_word.symbols[static_cast<std::size_t>(c)]);
  }
  try {
    grs_decode_erasures(code.final_code, known);
  } catch (const InconsistentSymbolsError& e) {
    throw NotACodewordError(std::string("final word rejected: ") + e.what());
  }
  // Block i of the final word carries f_i evaluated on the first block's
  // points with unit scaling.
  std::vector<std::vector<FieldElem>> messages;
  messages.reserve(static_cast<std::size_t>(layout.zeta));
  for (int i = 0; i < layout.zeta; ++i) {
    std::vector<std::pair<FieldElem, FieldElem>> pts;
    pts.reserve(static_cast<std::size_t>(layout.k));
    for (int j = 0; j < layout.k; ++j) {
      pts.emplace_back(layout.a_sets[0][static_cast<std::size_t>(j)],
                       final_word.symbols[static_cast<std::size_t>(i * layout.k + j)]);
    }
    messages.push_back(interpolate(pts).padded_coeffs(layout.k));
  }
  return messages;
}

Codeword mds_encode_initial(const MdsConvertibleCode& code,
                            const std::vector<FieldElem>& message) {
  return grs_encode(code.initial, message);
}

VerifyReport verify_mds(const MdsConvertibleCode& code, bool deep,
                        std::uint64_t seed) {
  VerifyReport rep;
  const MdsLayout& layout = code.layout;
  PrimeField field(layout.field);
  try {
    validate_mds_layout(layout);
    rep.add("layout", true);
  } catch (const Error& e) {
    rep.add("layout", false, e.what());
  }

  bool theta_ok = true;
  std::string theta_note;
  for (int i = 0; i < layout.zeta && theta_ok; ++i) {
    for (int j = 0; j < layout.k; ++j) {
      if (code.thetas[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
              .value == 0) {
        theta_ok = false;
        theta_note = "theta(" + std::to_string(i + 1) + "," +
                     std::to_string(j + 1) + ") is zero";
        break;
      }
    }
  }
  rep.add("theta-nonzero", theta_ok, theta_note);

  bool c1_ok = true;
  std::string c1_note;
  for (int i = 0; i < layout.zeta && c1_ok; ++i) {
    for (int j = 0; j < layout.k; ++j) {
      std::vector<FieldElem> got = mat_vec(
          code.m_matrices[static_cast<std::size_t>(i)],
          vand_column(layout.a_sets[static_cast<std::size_t>(i)]
                                  [static_cast<std::size_t>(j)],
                      layout.k));
      std::vector<FieldElem> want = vand_column(
          layout.a_sets[0][static_cast<std::size_t>(j)], layout.k);
      for (FieldElem& w : want) {
        w *= code.thetas[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
      if (got != want) {
        c1_ok = false;
        c1_note = "pairing fails at block " + std::to_string(i + 1) +
                  ", position " + std::to_string(j + 1);
        break;
      }
    }
  }
  rep.add("condition-pairing", c1_ok, c1_note);

  std::vector<std::vector<FieldElem>> c_basis;
  for (const FieldElem& c : layout.c_set.points()) {
    c_basis.push_back(vand_column(c, layout.k));
  }
  bool c2_ok = true;
  std::string c2_note;
  for (int i = 0; i < layout.zeta && c2_ok; ++i) {
    for (int j = 0; j < layout.l_final; ++j) {
      const auto& coeffs =
          code.eta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (coeffs.empty()) {
        c2_ok = false;
        c2_note = "no projection coefficients for block " +
                  std::to_string(i + 1) + ", parity " + std::to_string(j + 1);
        break;
      }
      std::vector<FieldElem> got = mat_vec(
          code.m_matrices[static_cast<std::size_t>(i)],
          c_basis[static_cast<std::size_t>(j)]);
      std::vector<FieldElem> want(static_cast<std::size_t>(layout.k),
                                  field.zero());
      for (int s = 0; s < layout.l_final; ++s) {
        for (int t = 0; t < layout.k; ++t) {
          want[static_cast<std::size_t>(t)] +=
              coeffs[static_cast<std::size_t>(s)] *
              c_basis[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
        }
      }
      if (got != want) {
        c2_ok = false;
        c2_note = "projection coefficients wrong for block " +
                  std::to_string(i + 1) + ", parity " + std::to_string(j + 1);
        break;
      }
    }
  }
  rep.add("condition-projection", c2_ok, c2_note);

  std::vector<FieldElem> want_u = derive_final_multipliers(layout, code.thetas);
  bool u_ok = code.final_code.multipliers() == want_u;
  rep.add("final-multipliers", u_ok,
          u_ok ? "" : "stored multipliers differ from the derived ones");

  bool unit_ok = true;
  for (const FieldElem& u : code.initial.multipliers()) {
    if (u.value != 1) { unit_ok = false; break; }
  }
  rep.add("initial-unit-multipliers", unit_ok);

  if (deep) {
    bool equiv_ok = true;
    std::string equiv_note;
    SplitMix64 rng(seed);
    for (int trial = 0; trial < 25 && equiv_ok && rep.all_ok(); ++trial) {
      std::vector<std::vector<FieldElem>> messages;
      std::vector<Codeword> initials;
      for (int i = 0; i < layout.zeta; ++i) {
        messages.push_back(rng.next_vector(field, static_cast<std::size_t>(layout.k)));
        initials.push_back(grs_encode(code.initial, messages.back()));
      }
      auto [converted, trace] = mds_convert(code, initials);
      Codeword direct = mds_direct_final(code, messages);
      if (!(converted == direct)) {
        equiv_ok = false;
        equiv_note = "converted word differs from direct encoding at trial " +
                     std::to_string(trial);
        break;
      }
      if (mds_final_decode(code, converted) != messages) {
        equiv_ok = false;
        equiv_note = "decback differs from messages at trial " +
                     std::to_string(trial);
        break;
      }
      if (trace.read_cost !=
              static_cast<long>(layout.zeta) * layout.l_final ||
          trace.write_cost != static_cast<long>(layout.l_final)) {
        equiv_ok = false;
        equiv_note = "unexpected access cost at trial " + std::to_string(trial);
        break;
      }
    }
    rep.add("conversion-equivalence", equiv_ok, equiv_note);

    try {
      long d = min_distance_bruteforce(code.initial);
      bool ok = d == static_cast<long>(layout.l_initial) + 1;
      rep.add("initial-distance", ok,
              ok ? "" : "distance " + std::to_string(d) + " instead of " +
                            std::to_string(layout.l_initial + 1));
    } catch (const BudgetExceededError&) {
      rep.add("initial-distance", true, "skipped: enumeration budget");
    }
    try {
      bool ok = grs_mds_exhaustive(code.final_code);
      rep.add("final-mds", ok, ok ? "" : "a k-subset of columns is singular");
    } catch (const BudgetExceededError&) {
      rep.add("final-mds", true, "skipped: enumeration budget");
    }
  }
  return rep;
}

DefaultReencodeMds build_default_reencode(const PrimeField& field, int zeta,
                                          int k, int l_initial, int l_final) {
  if (zeta < 1 || k < 1 || l_initial < 1 || l_final < 1) {
    throw ParameterError("all of zeta, k, lI, lF must be at least 1");
  }
  int ni = k + l_initial;
  int nf = zeta * k + l_final;
  int need = std::max(ni, nf);
  if (static_cast<long>(field.modulus()) < need) {
    throw ParameterError("field of size " + std::to_string(field.modulus()) +
                         " has fewer than " + std::to_string(need) +
                         " points");
  }
  std::vector<FieldElem> init_pts, fin_pts;
  for (int c = 0; c < ni; ++c) init_pts.push_back(field.elem(c));
  for (int c = 0; c < nf; ++c) fin_pts.push_back(field.elem(c));
  return DefaultReencodeMds{
      field,
      zeta,
      k,
      l_initial,
      l_final,
      GrsCode::reed_solomon(EvaluationSet(std::move(init_pts)), k),
      GrsCode::reed_solomon(EvaluationSet(std::move(fin_pts)), zeta * k)};
}

std::pair<Codeword, ConversionTrace> default_reencode_convert(
    const DefaultReencodeMds& code, const std::vector<Codeword>& initials,
    bool validate) {
  if (static_cast<int>(initials.size()) != code.zeta) {
    throw DimensionError("expected " + std::to_string(code.zeta) +
                         " initial codewords");
  }
  for (std::size_t i = 0; i < initials.size(); ++i) {
    if (static_cast<int>(initials[i].size()) != code.initial.n()) {
      throw DimensionError("initial codeword " + std::to_string(i + 1) +
                           " has the wrong length");
    }
    if (validate && !grs_is_codeword(code.initial, initials[i])) {
      throw NotACodewordError("initial codeword " + std::to_string(i + 1) +
                              " is not in the initial code");
    }
  }
  ConversionTrace trace;
  trace.initial_count = code.zeta;
  trace.remaining.resize(initials.size());
  trace.accessed.resize(initials.size());
  trace.untouched.resize(initials.size());
  trace.observed_reads.resize(initials.size());

  std::vector<FieldElem> combined;
  for (int i = 0; i < code.zeta; ++i) {
    std::vector<std::pair<int, FieldElem>> known;
    for (int c = 0; c < code.k; ++c) {
      trace.accessed[static_cast<std::size_t>(i)].push_back(c);
      trace.observed_reads[static_cast<std::size_t>(i)].push_back(c);
      known.emplace_back(c, initials[static_cast<std::size_t>(i)]
                                .symbols[static_cast<std::size_t>(c)]);
    }
    for (int c = code.k; c < code.initial.n(); ++c) {
      trace.untouched[static_cast<std::size_t>(i)].push_back(c);
    }
    std::vector<FieldElem> msg = grs_decode_erasures(code.initial, known);
    combined.insert(combined.end(), msg.begin(), msg.end());
  }
  Codeword out = grs_encode(code.final_code, combined);
  for (int c = 0; c < code.final_code.n(); ++c) trace.new_coords.push_back(c);
  trace.read_cost = static_cast<long>(code.zeta) * code.k;
  trace.write_cost = static_cast<long>(code.final_code.n());
  return {std::move(out), std::move(trace)};
}

MdsBuildResult build_mds(const PrimeField& field, int zeta, int k,
                         int l_initial, int l_final) {
  if (zeta < 1 || k < 1 || l_initial < 1 || l_final < 1) {
    throw ParameterError("all of zeta, k, lI, lF must be at least 1");
  }
  if (l_final <= std::min(k, l_initial)) {
    return build_mds_convertible(
        build_mds_sets(field, zeta, k, l_initial, l_final));
  }
  return build_default_reencode(field, zeta, k, l_initial, l_final);
}

MdsBuildResult build_mds_auto(int zeta, int k, int l_initial, int l_final) {
  if (zeta < 1 || k < 1 || l_initial < 1 || l_final < 1) {
    throw ParameterError("all of zeta, k, lI, lF must be at least 1");
  }
  if (l_final <= std::min(k, l_initial)) {
    std::uint32_t m0 = static_cast<std::uint32_t>(std::max(k, l_initial));
    PrimeField field = find_modulus(
        m0, static_cast<std::uint64_t>(zeta + 1) * m0 + 1);
    return build_mds_convertible(
        build_mds_sets(field, zeta, k, l_initial, l_final));
  }
  int need = std::max(k + l_initial, zeta * k + l_final);
  PrimeField field = find_modulus(1, static_cast<std::uint64_t>(need));
  return build_default_reencode(field, zeta, k, l_initial, l_final);
}

}  // namespace convcode
