#include "convcode/lrc.hpp"

#include <algorithm>
#include <string>

#include "convcode/rng.hpp"

namespace convcode {

namespace {

long ceil_div(long a, long b) { return (a + b - 1) / b; }

// Constant of g on group (s, i).
FieldElem block_constant(const LrcLayout& layout, int s, int i) {
  return poly_eval(layout.g,
                   layout.a_groups[static_cast<std::size_t>(s)]
                                  [static_cast<std::size_t>(i)][0]);
}

FieldElem parity_constant(const LrcLayout& layout, int i) {
  return poly_eval(layout.g, layout.c_groups[static_cast<std::size_t>(i)][0]);
}

// Annihilator (in the constant domain) of all final block constants
// except those of coset block `skip` (-1 keeps all).
Polynomial cross_constant_annihilator(const LrcLayout& layout, int skip) {
  std::vector<FieldElem> consts;
  for (int s = 0; s < layout.zeta; ++s) {
    if (s == skip) continue;
    for (int i = 0; i < layout.k; ++i) {
      consts.push_back(block_constant(layout, s, i));
    }
  }
  return annihilator(EvaluationSet(std::move(consts)), layout.field);
}

XGBasis initial_basis(const LrcLayout& layout) {
  return XGBasis(layout.g, layout.r, layout.k);
}

}  // namespace

void validate_lrc_layout(const LrcLayout& layout) {
  if (layout.zeta < 1) throw ParameterError("zeta must be at least 1");
  if (layout.k < 1) throw ParameterError("k must be at least 1");
  if (layout.r < 1) throw ParameterError("r must be at least 1");
  if (layout.l_initial < 1) throw ParameterError("lI must be at least 1");
  if (layout.l_final < 1) throw ParameterError("lF must be at least 1");
  if (layout.l_final > std::min(layout.k, layout.l_initial)) {
    throw ParameterError("structured layout needs lF <= min(k, lI)");
  }
  long want_zeta0 = std::max(static_cast<long>(layout.zeta),
                             ceil_div(layout.l_initial, layout.k) + 1);
  if (layout.zeta0 != want_zeta0) {
    throw LayoutError("zeta0 must equal max(zeta, ceil(lI / k) + 1)");
  }
  if (layout.g.degree() != layout.r + 1) {
    throw LayoutError("g must have degree r + 1");
  }
  if (static_cast<int>(layout.a_groups.size()) != layout.zeta0) {
    throw LayoutError("expected zeta0 coset blocks of groups");
  }
  for (const auto& blk : layout.a_groups) {
    if (static_cast<int>(blk.size()) != layout.k) {
      throw LayoutError("every coset block must hold k groups");
    }
    for (const EvaluationSet& grp : blk) {
      if (static_cast<int>(grp.size()) != layout.r + 1) {
        throw LayoutError("every group must hold r + 1 points");
      }
    }
  }
  if (static_cast<int>(layout.c_groups.size()) != layout.l_final) {
    throw LayoutError("expected lF parity groups");
  }
  for (const EvaluationSet& grp : layout.c_groups) {
    if (static_cast<int>(grp.size()) != layout.r + 1) {
      throw LayoutError("every parity group must hold r + 1 points");
    }
  }
  if (static_cast<int>(layout.b_sources.size()) !=
      layout.l_initial - layout.l_final) {
    throw LayoutError("expected lI - lF extra parity group references");
  }
  for (std::size_t t = 0; t < layout.b_sources.size(); ++t) {
    auto [s, i] = layout.b_sources[t];
    if (s < 1 || s >= layout.zeta0 || i < 0 || i >= layout.k) {
      throw LayoutError("extra parity group reference out of range");
    }
    for (std::size_t t2 = t + 1; t2 < layout.b_sources.size(); ++t2) {
      if (layout.b_sources[t2] == layout.b_sources[t]) {
        throw LayoutError("repeated extra parity group reference");
      }
    }
  }
  if (layout.beta.p != layout.field.modulus() || layout.beta.value == 0) {
    throw LayoutError("beta must be a nonzero field element");
  }
  if (layout.alpha.p != layout.field.modulus() || layout.alpha.value == 0) {
    throw LayoutError("alpha must be a nonzero field element");
  }
  // Elementwise coset pairings against block 0.
  FieldElem shift = layout.field.one();
  for (int s = 0; s < layout.zeta0; ++s) {
    for (int i = 0; i < layout.k; ++i) {
      for (int j = 0; j <= layout.r; ++j) {
        FieldElem want =
            shift * layout.a_groups[0][static_cast<std::size_t>(i)]
                                    [static_cast<std::size_t>(j)];
        if (!(layout.a_groups[static_cast<std::size_t>(s)]
                             [static_cast<std::size_t>(i)]
                             [static_cast<std::size_t>(j)] == want)) {
          throw LayoutError("coset block " + std::to_string(s + 1) +
                            " is not beta^" + std::to_string(s) +
                            " times block 1");
        }
      }
    }
    shift *= layout.beta;
  }
  FieldElem cshift = ff_pow(layout.beta, static_cast<std::uint64_t>(layout.zeta0));
  for (int i = 0; i < layout.l_final; ++i) {
    for (int j = 0; j <= layout.r; ++j) {
      FieldElem want = cshift * layout.a_groups[0][static_cast<std::size_t>(i)]
                                                [static_cast<std::size_t>(j)];
      if (!(layout.c_groups[static_cast<std::size_t>(i)]
                           [static_cast<std::size_t>(j)] == want)) {
        throw LayoutError("parity group " + std::to_string(i + 1) +
                          " is not beta^zeta0 times block-1 group " +
                          std::to_string(i + 1));
      }
    }
  }
  // Global distinctness over every stored group.
  std::vector<EvaluationSet> all;
  for (const auto& blk : layout.a_groups) {
    all.insert(all.end(), blk.begin(), blk.end());
  }
  all.insert(all.end(), layout.c_groups.begin(), layout.c_groups.end());
  try {
    union_of(all);
  } catch (const DuplicateAbscissaError& e) {
    throw LayoutError(std::string("groups overlap: ") + e.what());
  }
  // g constant per group, constants pairwise distinct.
  GoodPolyReport rep = check_good_polynomial(layout.g, all);
  if (!rep.ok) {
    throw LayoutError(rep.failing_groups.empty()
                          ? std::string("group constants repeat")
                          : "g is not constant on a group");
  }
}

LrcLayout build_lrc_sets(const PrimeField& field, int zeta, int k, int r,
                         int l_initial, int l_final) {
  if (zeta < 1 || k < 1 || r < 1 || l_initial < 1 || l_final < 1) {
    throw ParameterError("all of zeta, k, r, lI, lF must be at least 1");
  }
  if (l_final > std::min(k, l_initial)) {
    throw ParameterError("structured construction needs lF <= min(k, lI)");
  }
  std::uint32_t q = field.modulus();
  std::uint32_t m = static_cast<std::uint32_t>(k) * (r + 1);
  if ((q - 1) % m != 0) {
    throw DivisibilityError("k * (r + 1) = " + std::to_string(m) +
                            " does not divide " + std::to_string(q - 1));
  }
  int zeta0 =
      static_cast<int>(std::max(static_cast<long>(zeta),
                                ceil_div(l_initial, k) + 1));
  if (static_cast<std::uint64_t>(q) <
      static_cast<std::uint64_t>(m) * (zeta0 + 1) + 1) {
    throw ParameterError("field of size " + std::to_string(q) +
                         " is too small for " + std::to_string(zeta0 + 1) +
                         " cosets of order " + std::to_string(m));
  }
  FieldElem beta = primitive_root(field);
  FieldElem alpha = subgroup_generator(field, m);

  LrcLayout layout;
  layout.field = field;
  layout.zeta = zeta;
  layout.k = k;
  layout.r = r;
  layout.l_initial = l_initial;
  layout.l_final = l_final;
  layout.zeta0 = zeta0;
  layout.beta = beta;
  layout.alpha = alpha;
  std::vector<FieldElem> gc(static_cast<std::size_t>(r + 2), field.zero());
  gc.back() = field.one();
  layout.g = Polynomial(std::move(gc), field);  // x^(r+1)

  auto group_points = [&](const FieldElem& shift, int i) {
    std::vector<FieldElem> pts;
    pts.reserve(static_cast<std::size_t>(r + 1));
    for (int j = 0; j <= r; ++j) {
      pts.push_back(shift * ff_pow(alpha, static_cast<std::uint64_t>(i + j * k)));
    }
    return EvaluationSet(std::move(pts));
  };

  FieldElem shift = field.one();
  for (int s = 0; s < zeta0; ++s) {
    std::vector<EvaluationSet> blk;
    blk.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) blk.push_back(group_points(shift, i));
    layout.a_groups.push_back(std::move(blk));
    shift *= beta;
  }
  FieldElem cshift = ff_pow(beta, static_cast<std::uint64_t>(zeta0));
  for (int i = 0; i < l_final; ++i) {
    layout.c_groups.push_back(group_points(cshift, i));
  }
  // Extra parity groups prefer cosets the final code does not use.
  int need = l_initial - l_final;
  for (int s = zeta; s < zeta0 && need > 0; ++s) {
    for (int i = 0; i < k && need > 0; ++i) {
      layout.b_sources.emplace_back(s, i);
      --need;
    }
  }
  for (int s = 1; s < zeta && need > 0; ++s) {
    for (int i = 0; i < k && need > 0; ++i) {
      layout.b_sources.emplace_back(s, i);
      --need;
    }
  }
  if (need > 0) {
    throw LayoutError("not enough cosets for the extra parity groups");
  }
  validate_lrc_layout(layout);
  return layout;
}

LrcLayout lrc_layout_from_sets(
    const PrimeField& field, int zeta, int k, int r, int l_initial,
    int l_final, int zeta0, FieldElem beta, FieldElem alpha, Polynomial g,
    std::vector<std::vector<EvaluationSet>> a_groups,
    std::vector<EvaluationSet> c_groups,
    std::vector<std::pair<int, int>> b_sources) {
  LrcLayout layout;
  layout.field = field;
  layout.zeta = zeta;
  layout.k = k;
  layout.r = r;
  layout.l_initial = l_initial;
  layout.l_final = l_final;
  layout.zeta0 = zeta0;
  layout.beta = beta;
  layout.alpha = alpha;
  layout.g = std::move(g);
  layout.a_groups = std::move(a_groups);
  layout.c_groups = std::move(c_groups);
  layout.b_sources = std::move(b_sources);
  validate_lrc_layout(layout);
  return layout;
}

std::pair<std::vector<FieldElem>, Matrix> build_m_matrix_lrc(
    const LrcLayout& layout, int s) {
  if (s < 1 || s >= layout.zeta) {
    throw ParameterError("pairing block index out of range");
  }
  PrimeField field(layout.field);
  XGBasis basis = initial_basis(layout);
  int dim = basis.dim();

  std::vector<FieldElem> g0;
  for (int i = 0; i < layout.l_final; ++i) g0.push_back(parity_constant(layout, i));
  std::vector<FieldElem> theta;
  theta.reserve(static_cast<std::size_t>(layout.k));
  for (int i = 0; i < layout.k; ++i) {
    // Numerator over the s-block constants plus C constants, denominator
    // over the 0-block constants plus C constants; the own constant is
    // dropped from each.
    std::vector<FieldElem> num_set = g0, den_set = g0;
    for (int i2 = 0; i2 < layout.k; ++i2) {
      if (i2 != i) {
        num_set.push_back(block_constant(layout, s, i2));
        den_set.push_back(block_constant(layout, 0, i2));
      }
    }
    FieldElem num = poly_eval(annihilator(EvaluationSet(num_set), field),
                              block_constant(layout, s, i));
    FieldElem den = poly_eval(annihilator(EvaluationSet(den_set), field),
                              block_constant(layout, 0, i));
    theta.push_back(num / den);
  }

  Matrix x(dim, dim, field);
  Matrix y(dim, dim, field);
  int col = 0;
  for (int i = 0; i < layout.k; ++i) {
    for (int j = 0; j < layout.r; ++j) {
      std::vector<FieldElem> xv = xg_vector(
          layout.a_groups[static_cast<std::size_t>(s)]
                         [static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(j)],
          basis);
      std::vector<FieldElem> yv = xg_vector(
          layout.a_groups[0][static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(j)],
          basis);
      for (int t = 0; t < dim; ++t) {
        x.at(t, col) = xv[static_cast<std::size_t>(t)];
        y.at(t, col) = theta[static_cast<std::size_t>(i)] *
                       yv[static_cast<std::size_t>(t)];
      }
      ++col;
    }
  }
  Matrix m = y * mat_inverse(x);
  // Pairing must extend to the held-out (r+1)-th point of every group.
  for (int i = 0; i < layout.k; ++i) {
    for (int j = 0; j <= layout.r; ++j) {
      std::vector<FieldElem> got = mat_vec(
          m, xg_vector(layout.a_groups[static_cast<std::size_t>(s)]
                                      [static_cast<std::size_t>(i)]
                                      [static_cast<std::size_t>(j)],
                       basis));
      std::vector<FieldElem> want = xg_vector(
          layout.a_groups[0][static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(j)],
          basis);
      for (FieldElem& w : want) w *= theta[static_cast<std::size_t>(i)];
      if (got != want) {
        throw ConditionViolation(
            "pairing fails at block " + std::to_string(s + 1) + ", group " +
            std::to_string(i + 1) + ", point " + std::to_string(j + 1));
      }
    }
  }
  return {std::move(theta), std::move(m)};
}

namespace {

std::vector<FieldElem> derive_final_multipliers_lrc(
    const LrcLayout& layout,
    const std::vector<std::vector<FieldElem>>& thetas) {
  PrimeField field(layout.field);
  std::vector<FieldElem> us;
  us.reserve(static_cast<std::size_t>(layout.final_length()));
  for (int s = 0; s < layout.zeta; ++s) {
    Polynomial h = cross_constant_annihilator(layout, s);
    for (int i = 0; i < layout.k; ++i) {
      FieldElem hv = poly_eval(h, block_constant(layout, s, i));
      FieldElem u = ff_inv(
          thetas[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] * hv);
      for (int j = 0; j <= layout.r; ++j) us.push_back(u);
    }
  }
  for (int i = 0; i < layout.l_final; ++i) {
    for (int j = 0; j <= layout.r; ++j) us.push_back(field.one());
  }
  return us;
}

LrcConvertibleCode finish_lrc(LrcLayout layout,
                              std::vector<std::vector<FieldElem>> thetas,
                              std::vector<Matrix> m_matrices,
                              std::vector<FieldElem> final_multipliers) {
  std::vector<EvaluationSet> init_groups;
  for (int i = 0; i < layout.k; ++i) {
    init_groups.push_back(layout.a_groups[0][static_cast<std::size_t>(i)]);
  }
  init_groups.insert(init_groups.end(), layout.c_groups.begin(),
                     layout.c_groups.end());
  for (std::size_t t = 0; t < layout.b_sources.size(); ++t) {
    init_groups.push_back(layout.b_group(static_cast<int>(t)));
  }
  LrcCode initial = LrcCode::with_unit_multipliers(
      std::move(init_groups), layout.g, layout.k, layout.r);

  std::vector<EvaluationSet> fin_groups;
  for (int s = 0; s < layout.zeta; ++s) {
    for (int i = 0; i < layout.k; ++i) {
      fin_groups.push_back(
          layout.a_groups[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)]);
    }
  }
  fin_groups.insert(fin_groups.end(), layout.c_groups.begin(),
                    layout.c_groups.end());
  LrcCode final_code(std::move(fin_groups), layout.g, layout.zeta * layout.k,
                     layout.r, std::move(final_multipliers));

  LrcConvertibleCode code{std::move(layout),
                          std::move(initial),
                          std::move(final_code),
                          std::move(thetas),
                          std::move(m_matrices),
                          {},
                          {},
                          true,
                          ""};
  const LrcLayout& lay = code.layout;
  XGBasis basis(lay.g, lay.r, lay.k);

  code.h_at_c.resize(static_cast<std::size_t>(lay.zeta));
  for (int s = 0; s < lay.zeta; ++s) {
    Polynomial h = cross_constant_annihilator(lay, s);
    for (int i = 0; i < lay.l_final; ++i) {
      code.h_at_c[static_cast<std::size_t>(s)].push_back(
          poly_eval(h, parity_constant(lay, i)));
    }
  }

  // Basis of read parity points: first r points of each parity group.
  std::vector<std::vector<FieldElem>> c_basis;
  for (int i = 0; i < lay.l_final; ++i) {
    for (int j = 0; j < lay.r; ++j) {
      c_basis.push_back(xg_vector(
          lay.c_groups[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
          basis));
    }
  }
  code.eta.resize(static_cast<std::size_t>(lay.zeta));
  for (int s = 0; s < lay.zeta; ++s) {
    auto& per_block = code.eta[static_cast<std::size_t>(s)];
    per_block.resize(static_cast<std::size_t>(lay.l_final));
    for (int i = 0; i < lay.l_final; ++i) {
      auto& per_group = per_block[static_cast<std::size_t>(i)];
      per_group.resize(static_cast<std::size_t>(lay.r));
      for (int j = 0; j < lay.r; ++j) {
        std::vector<FieldElem> target = mat_vec(
            code.m_matrices[static_cast<std::size_t>(s)],
            xg_vector(lay.c_groups[static_cast<std::size_t>(i)]
                                  [static_cast<std::size_t>(j)],
                      basis));
        std::optional<std::vector<FieldElem>> coeffs = in_span(target, c_basis);
        if (coeffs) {
          per_group[static_cast<std::size_t>(j)] = std::move(*coeffs);
        } else if (code.conditions_ok) {
          code.conditions_ok = false;
          code.condition_note =
              "projected parity vector of group " + std::to_string(i + 1) +
              ", point " + std::to_string(j + 1) + " through block " +
              std::to_string(s + 1) +
              " lies outside the span of the read parity vectors";
        }
      }
    }
  }
  // Pairing identity against the stored matrices.
  for (int s = 0; s < lay.zeta && code.conditions_ok; ++s) {
    for (int i = 0; i < lay.k && code.conditions_ok; ++i) {
      for (int j = 0; j <= lay.r; ++j) {
        std::vector<FieldElem> got = mat_vec(
            code.m_matrices[static_cast<std::size_t>(s)],
            xg_vector(lay.a_groups[static_cast<std::size_t>(s)]
                                  [static_cast<std::size_t>(i)]
                                  [static_cast<std::size_t>(j)],
                      basis));
        std::vector<FieldElem> want =
            xg_vector(lay.a_groups[0][static_cast<std::size_t>(i)]
                                   [static_cast<std::size_t>(j)],
                      basis);
        for (FieldElem& w : want) {
          w *= code.thetas[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)];
        }
        if (got != want) {
          code.conditions_ok = false;
          code.condition_note = "pairing fails at block " +
                                std::to_string(s + 1) + ", group " +
                                std::to_string(i + 1) + ", point " +
                                std::to_string(j + 1);
          break;
        }
      }
    }
  }
  return code;
}

}  // namespace

LrcConvertibleCode build_lrc_convertible(const LrcLayout& layout) {
  validate_lrc_layout(layout);
  PrimeField field(layout.field);
  XGBasis basis = initial_basis(layout);
  std::vector<std::vector<FieldElem>> thetas;
  std::vector<Matrix> m_matrices;
  thetas.push_back(
      std::vector<FieldElem>(static_cast<std::size_t>(layout.k), field.one()));
  m_matrices.push_back(Matrix::identity(basis.dim(), field));
  for (int s = 1; s < layout.zeta; ++s) {
    auto [theta, m] = build_m_matrix_lrc(layout, s);
    thetas.push_back(std::move(theta));
    m_matrices.push_back(std::move(m));
  }
  std::vector<FieldElem> final_multipliers =
      derive_final_multipliers_lrc(layout, thetas);
  LrcConvertibleCode code =
      finish_lrc(layout, std::move(thetas), std::move(m_matrices),
                 std::move(final_multipliers));
  if (!code.conditions_ok) throw ConditionViolation(code.condition_note);
  return code;
}

LrcConvertibleCode assemble_lrc_convertible(
    LrcLayout layout, std::vector<std::vector<FieldElem>> thetas,
    std::vector<Matrix> m_matrices, std::vector<FieldElem> final_multipliers) {
  validate_lrc_layout(layout);
  if (static_cast<int>(thetas.size()) != layout.zeta ||
      static_cast<int>(m_matrices.size()) != layout.zeta) {
    throw DimensionError("need one theta vector and one matrix per block");
  }
  for (const auto& tv : thetas) {
    if (static_cast<int>(tv.size()) != layout.k) {
      throw DimensionError("every theta vector must have length k");
    }
  }
  return finish_lrc(std::move(layout), std::move(thetas), std::move(m_matrices),
                    std::move(final_multipliers));
}

std::pair<Codeword, ConversionTrace> lrc_convert(
    const LrcConvertibleCode& code, const std::vector<Codeword>& initials,
    bool validate) {
  if (!code.conditions_ok) throw ConditionViolation(code.condition_note);
  const LrcLayout& lay = code.layout;
  if (static_cast<int>(initials.size()) != lay.zeta) {
    throw DimensionError("expected " + std::to_string(lay.zeta) +
                         " initial codewords");
  }
  for (std::size_t s = 0; s < initials.size(); ++s) {
    if (static_cast<int>(initials[s].size()) != lay.initial_length()) {
      throw DimensionError("initial codeword " + std::to_string(s + 1) +
                           " has the wrong length");
    }
  }
  if (validate) {
    for (std::size_t s = 0; s < initials.size(); ++s) {
      if (!lrc_is_codeword(code.initial, initials[s])) {
        throw NotACodewordError("initial codeword " + std::to_string(s + 1) +
                                " is not in the initial code");
      }
    }
  }

  int k = lay.k;
  int r = lay.r;
  int lf = lay.l_final;
  int rp1 = r + 1;
  ConversionTrace trace;
  trace.initial_count = lay.zeta;
  trace.remaining.resize(initials.size());
  trace.accessed.resize(initials.size());
  trace.untouched.resize(initials.size());
  trace.observed_reads.resize(initials.size());

  PrimeField field(lay.field);
  Codeword out;
  out.symbols.assign(static_cast<std::size_t>(lay.final_length()), field.zero());
  out.labels.reserve(out.symbols.size());
  for (int c = 0; c < lay.final_length(); ++c) {
    out.labels.push_back(code.final_code.label(c));
  }

  // Remaining: the block-0 groups of initial s land at final block s.
  for (int s = 0; s < lay.zeta; ++s) {
    for (int c = 0; c < k * rp1; ++c) {
      int dst = s * k * rp1 + c;
      out.symbols[static_cast<std::size_t>(dst)] =
          initials[static_cast<std::size_t>(s)].symbols[static_cast<std::size_t>(c)];
      trace.remaining[static_cast<std::size_t>(s)].emplace_back(c, dst);
    }
    // Untouched: the held-out point of each parity group and all extra
    // parity groups.
    for (int i = 0; i < lf; ++i) {
      trace.untouched[static_cast<std::size_t>(s)].push_back(
          (k + i) * rp1 + r);
    }
    for (int c = (k + lf) * rp1; c < lay.initial_length(); ++c) {
      trace.untouched[static_cast<std::size_t>(s)].push_back(c);
    }
  }

  // Accessed: the first r symbols of each parity group of every initial.
  std::vector<std::vector<FieldElem>> c_sym(initials.size());
  for (int s = 0; s < lay.zeta; ++s) {
    for (int i = 0; i < lf; ++i) {
      for (int j = 0; j < r; ++j) {
        int src = (k + i) * rp1 + j;
        trace.accessed[static_cast<std::size_t>(s)].push_back(src);
        trace.observed_reads[static_cast<std::size_t>(s)].push_back(src);
        c_sym[static_cast<std::size_t>(s)].push_back(
            initials[static_cast<std::size_t>(s)]
                .symbols[static_cast<std::size_t>(src)]);
      }
    }
  }

  // New symbols: r fresh parity symbols per group by projection, the last
  // one by local repair from those r inside the final code.
  int base = lay.zeta * k * rp1;
  for (int i = 0; i < lf; ++i) {
    for (int j = 0; j < r; ++j) {
      FieldElem acc = field.zero();
      for (int s = 0; s < lay.zeta; ++s) {
        FieldElem inner = field.zero();
        const auto& coeffs = code.eta[static_cast<std::size_t>(s)]
                                     [static_cast<std::size_t>(i)]
                                     [static_cast<std::size_t>(j)];
        for (int t = 0; t < lf * r; ++t) {
          inner += coeffs[static_cast<std::size_t>(t)] *
                   c_sym[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
        }
        acc += code.h_at_c[static_cast<std::size_t>(s)]
                          [static_cast<std::size_t>(i)] *
               inner;
      }
      int dst = base + i * rp1 + j;
      out.symbols[static_cast<std::size_t>(dst)] = acc;
      trace.new_coords.push_back(dst);
    }
    int dst = base + i * rp1 + r;
    out.symbols[static_cast<std::size_t>(dst)] =
        lrc_repair(code.final_code, out, dst);
    trace.new_coords.push_back(dst);
  }

  for (const auto& a : trace.accessed) {
    trace.read_cost += static_cast<long>(a.size());
  }
  trace.write_cost = static_cast<long>(trace.new_coords.size());
  return {std::move(out), std::move(trace)};
}

Codeword lrc_direct_final(const LrcConvertibleCode& code,
                          const std::vector<std::vector<FieldElem>>& messages) {
  const LrcLayout& lay = code.layout;
  if (static_cast<int>(messages.size()) != lay.zeta) {
    throw DimensionError("expected one message per initial codeword");
  }
  PrimeField field(lay.field);
  XGBasis basis(lay.g, lay.r, lay.k);
  Polynomial combined(field);
  for (int s = 0; s < lay.zeta; ++s) {
    if (static_cast<int>(messages[static_cast<std::size_t>(s)].size()) !=
        basis.dim()) {
      throw DimensionError("message length differs from k * r");
    }
    std::vector<FieldElem> mapped =
        vec_mat(messages[static_cast<std::size_t>(s)],
                code.m_matrices[static_cast<std::size_t>(s)]);
    Polynomial part = xg_to_monomial(mapped, basis);
    combined = combined +
               compose(cross_constant_annihilator(lay, s), lay.g) * part;
  }
  Codeword out;
  out.symbols.reserve(static_cast<std::size_t>(lay.final_length()));
  out.labels.reserve(out.symbols.size());
  for (int c = 0; c < code.final_code.n(); ++c) {
    out.symbols.push_back(
        code.final_code.multipliers()[static_cast<std::size_t>(c)] *
        poly_eval(combined, code.final_code.point(c)));
    out.labels.push_back(code.final_code.label(c));
  }
  return out;
}

std::vector<std::vector<FieldElem>> lrc_final_decode(
    const LrcConvertibleCode& code, const Codeword& final_word) {
  const LrcLayout& lay = code.layout;
  if (static_cast<int>(final_word.size()) != lay.final_length()) {
    throw DimensionError("final codeword has the wrong length");
  }
  std::vector<std::pair<int, FieldElem>> known;
  known.reserve(final_word.size());
  for (int c = 0; c < lay.final_length(); ++c) {
    known.emplace_back(c, final_word.symbols[static_cast<std::size_t>(c)]);
  }
  try {
    lrc_decode(code.final_code, known);
  } catch (const InconsistentSymbolsError& e) {
    throw NotACodewordError(std::string("final word rejected: ") + e.what());
  }
  // Final block s carries f_s evaluated on the block-0 points with unit
  // scaling; solve for the xg coefficients of f_s.
  PrimeField field(lay.field);
  XGBasis basis(lay.g, lay.r, lay.k);
  int rp1 = lay.r + 1;
  std::vector<std::vector<FieldElem>> messages;
  messages.reserve(static_cast<std::size_t>(lay.zeta));
  for (int s = 0; s < lay.zeta; ++s) {
    Matrix a(lay.k * rp1, basis.dim(), field);
    std::vector<FieldElem> b;
    b.reserve(static_cast<std::size_t>(lay.k) * rp1);
    int row = 0;
    for (int i = 0; i < lay.k; ++i) {
      for (int j = 0; j < rp1; ++j) {
        std::vector<FieldElem> v =
            xg_vector(lay.a_groups[0][static_cast<std::size_t>(i)]
                                   [static_cast<std::size_t>(j)],
                      basis);
        for (int t = 0; t < basis.dim(); ++t) {
          a.at(row, t) = v[static_cast<std::size_t>(t)];
        }
        b.push_back(final_word.symbols[static_cast<std::size_t>(
            (s * lay.k + i) * rp1 + j)]);
        ++row;
      }
    }
    std::optional<std::vector<FieldElem>> x = mat_solve(a, b);
    if (!x || mat_rank(a) < basis.dim()) {
      throw NotACodewordError("final block " + std::to_string(s + 1) +
                              " does not carry a message polynomial");
    }
    messages.push_back(std::move(*x));
  }
  return messages;
}

Codeword lrc_encode_initial(const LrcConvertibleCode& code,
                            const std::vector<FieldElem>& message) {
  return lrc_encode(code.initial, message);
}

VerifyReport verify_lrc(const LrcConvertibleCode& code, bool deep,
                        std::uint64_t seed) {
  VerifyReport rep;
  const LrcLayout& lay = code.layout;
  PrimeField field(lay.field);
  XGBasis basis(lay.g, lay.r, lay.k);
  try {
    validate_lrc_layout(lay);
    rep.add("layout", true);
  } catch (const Error& e) {
    rep.add("layout", false, e.what());
  }

  bool theta_ok = true;
  std::string theta_note;
  for (int s = 0; s < lay.zeta && theta_ok; ++s) {
    for (int i = 0; i < lay.k; ++i) {
      if (code.thetas[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)]
              .value == 0) {
        theta_ok = false;
        theta_note = "theta(" + std::to_string(s + 1) + "," +
                     std::to_string(i + 1) + ") is zero";
        break;
      }
    }
  }
  rep.add("theta-nonzero", theta_ok, theta_note);

  bool c1_ok = true;
  std::string c1_note;
  for (int s = 0; s < lay.zeta && c1_ok; ++s) {
    for (int i = 0; i < lay.k && c1_ok; ++i) {
      for (int j = 0; j <= lay.r; ++j) {
        std::vector<FieldElem> got = mat_vec(
            code.m_matrices[static_cast<std::size_t>(s)],
            xg_vector(lay.a_groups[static_cast<std::size_t>(s)]
                                  [static_cast<std::size_t>(i)]
                                  [static_cast<std::size_t>(j)],
                      basis));
        std::vector<FieldElem> want =
            xg_vector(lay.a_groups[0][static_cast<std::size_t>(i)]
                                   [static_cast<std::size_t>(j)],
                      basis);
        for (FieldElem& w : want) {
          w *= code.thetas[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)];
        }
        if (got != want) {
          c1_ok = false;
          c1_note = "pairing fails at block " + std::to_string(s + 1) +
                    ", group " + std::to_string(i + 1) + ", point " +
                    std::to_string(j + 1);
          break;
        }
      }
    }
  }
  rep.add("condition-pairing", c1_ok, c1_note);

  std::vector<std::vector<FieldElem>> c_basis;
  for (int i = 0; i < lay.l_final; ++i) {
    for (int j = 0; j < lay.r; ++j) {
      c_basis.push_back(xg_vector(
          lay.c_groups[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
          basis));
    }
  }
  bool c2_ok = true;
  std::string c2_note;
  for (int s = 0; s < lay.zeta && c2_ok; ++s) {
    for (int i = 0; i < lay.l_final && c2_ok; ++i) {
      for (int j = 0; j < lay.r; ++j) {
        const auto& coeffs = code.eta[static_cast<std::size_t>(s)]
                                     [static_cast<std::size_t>(i)]
                                     [static_cast<std::size_t>(j)];
        if (coeffs.empty()) {
          c2_ok = false;
          c2_note = "no projection coefficients for block " +
                    std::to_string(s + 1) + ", group " + std::to_string(i + 1) +
                    ", point " + std::to_string(j + 1);
          break;
        }
        std::vector<FieldElem> got = mat_vec(
            code.m_matrices[static_cast<std::size_t>(s)],
            xg_vector(lay.c_groups[static_cast<std::size_t>(i)]
                                  [static_cast<std::size_t>(j)],
                      basis));
        std::vector<FieldElem> want(static_cast<std::size_t>(basis.dim()),
                                    field.zero());
        for (int t = 0; t < lay.l_final * lay.r; ++t) {
          for (int d = 0; d < basis.dim(); ++d) {
            want[static_cast<std::size_t>(d)] +=
                coeffs[static_cast<std::size_t>(t)] *
                c_basis[static_cast<std::size_t>(t)][static_cast<std::size_t>(d)];
          }
        }
        if (got != want) {
          c2_ok = false;
          c2_note = "projection coefficients wrong for block " +
                    std::to_string(s + 1) + ", group " + std::to_string(i + 1) +
                    ", point " + std::to_string(j + 1);
          break;
        }
      }
    }
  }
  rep.add("condition-projection", c2_ok, c2_note);

  std::vector<FieldElem> want_u = derive_final_multipliers_lrc(lay, code.thetas);
  bool u_ok = code.final_code.multipliers() == want_u;
  rep.add("final-multipliers", u_ok,
          u_ok ? "" : "stored multipliers differ from the derived ones");

  bool unit_ok = true;
  for (const FieldElem& u : code.initial.multipliers()) {
    if (u.value != 1) { unit_ok = false; break; }
  }
  rep.add("initial-unit-multipliers", unit_ok);

  LocalityReport loc_i = check_locality(code.initial);
  rep.add("initial-locality", loc_i.ok,
          loc_i.ok ? "" : "coordinate " +
                              std::to_string(loc_i.failing_coords.front()) +
                              " is not locally repairable");
  LocalityReport loc_f = check_locality(code.final_code);
  rep.add("final-locality", loc_f.ok,
          loc_f.ok ? "" : "coordinate " +
                              std::to_string(loc_f.failing_coords.front()) +
                              " is not locally repairable");

  if (deep) {
    bool equiv_ok = true;
    std::string equiv_note;
    SplitMix64 rng(seed);
    for (int trial = 0; trial < 25 && equiv_ok && rep.all_ok(); ++trial) {
      std::vector<std::vector<FieldElem>> messages;
      std::vector<Codeword> initials;
      for (int s = 0; s < lay.zeta; ++s) {
        messages.push_back(
            rng.next_vector(field, static_cast<std::size_t>(basis.dim())));
        initials.push_back(lrc_encode(code.initial, messages.back()));
      }
      auto [converted, trace] = lrc_convert(code, initials);
      Codeword direct = lrc_direct_final(code, messages);
      if (!(converted == direct)) {
        equiv_ok = false;
        equiv_note = "converted word differs from direct encoding at trial " +
                     std::to_string(trial);
        break;
      }
      if (lrc_final_decode(code, converted) != messages) {
        equiv_ok = false;
        equiv_note = "decode differs from messages at trial " +
                     std::to_string(trial);
        break;
      }
      if (trace.read_cost != static_cast<long>(lay.zeta) * lay.l_final * lay.r ||
          trace.write_cost != static_cast<long>(lay.l_final) * (lay.r + 1)) {
        equiv_ok = false;
        equiv_note = "unexpected access cost at trial " + std::to_string(trial);
        break;
      }
    }
    rep.add("conversion-equivalence", equiv_ok, equiv_note);

    long n_init = lay.initial_length();
    long dim_init = static_cast<long>(lay.k) * lay.r;
    long want_d = n_init - dim_init - ceil_div(dim_init, lay.r) + 2;
    try {
      long d = min_distance_bruteforce(code.initial);
      bool ok = d == want_d;
      rep.add("initial-distance", ok,
              ok ? "" : "distance " + std::to_string(d) + " instead of " +
                            std::to_string(want_d));
    } catch (const BudgetExceededError&) {
      rep.add("initial-distance", true, "skipped: enumeration budget");
    }
    bool rank_ok =
        mat_rank(code.final_code.generator_matrix()) == code.final_code.dimension();
    rep.add("final-rank", rank_ok,
            rank_ok ? "" : "final generator rank below the dimension");
  }
  return rep;
}

LrcConvertibleCode build_lrc(const PrimeField& field, int zeta, int k, int r,
                             int l_initial, int l_final) {
  return build_lrc_convertible(
      build_lrc_sets(field, zeta, k, r, l_initial, l_final));
}

LrcConvertibleCode build_lrc_auto(int zeta, int k, int r, int l_initial,
                                  int l_final) {
  if (zeta < 1 || k < 1 || r < 1 || l_initial < 1 || l_final < 1) {
    throw ParameterError("all of zeta, k, r, lI, lF must be at least 1");
  }
  std::uint32_t m = static_cast<std::uint32_t>(k) * (r + 1);
  long zeta0 = std::max(static_cast<long>(zeta), ceil_div(l_initial, k) + 1);
  PrimeField field = find_modulus(
      m, static_cast<std::uint64_t>(m) * (zeta0 + 1) + 1);
  return build_lrc(field, zeta, k, r, l_initial, l_final);
}

}  // namespace convcode
