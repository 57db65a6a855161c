#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "convcode/codes.hpp"
#include "convcode/trace.hpp"
#include "convcode/verify.hpp"

namespace convcode {

/// Evaluation-point layout for merging zeta locally repairable codes of
/// dimension k*r and locality r into one of dimension zeta*k*r.  Points
/// live in cosets beta^s of the order-k(r+1) subgroup generated by alpha;
/// group (s, i) holds beta^s * alpha^(i + j*k) for j = 0..r, and the
/// shared parity groups C_i sit in coset beta^zeta0.
struct LrcLayout {
  PrimeField field;
  int zeta = 0;
  int k = 0;  ///< message blocks per initial code (dimension k * r)
  int r = 0;
  int l_initial = 0;  ///< parity groups of each initial code
  int l_final = 0;    ///< parity groups of the final code
  int zeta0 = 0;      ///< coset index of C: max(zeta, ceil(lI / k) + 1)
  FieldElem beta;     ///< primitive root; coset shift between blocks
  FieldElem alpha;    ///< subgroup generator of order k * (r + 1)
  Polynomial g;       ///< x^(r+1), constant on every group
  /// a_groups[s][i] for s in [0, zeta0), i in [0, k).
  std::vector<std::vector<EvaluationSet>> a_groups;
  /// c_groups[i] for i in [0, lF).
  std::vector<EvaluationSet> c_groups;
  /// Extra initial parity groups, each borrowed from a_groups: entries
  /// (s, i) with s >= 1, preferring cosets beyond zeta.
  std::vector<std::pair<int, int>> b_sources;

  LrcLayout() : field(2), g(field) {}

  int initial_length() const { return (k + l_initial) * (r + 1); }
  int final_length() const { return (zeta * k + l_final) * (r + 1); }
  const EvaluationSet& b_group(int t) const {
    return a_groups[static_cast<std::size_t>(b_sources[static_cast<std::size_t>(t)].first)]
                   [static_cast<std::size_t>(b_sources[static_cast<std::size_t>(t)].second)];
  }
};

/// Checks shapes, coset pairings, global distinctness, and that g is
/// constant per group with pairwise distinct constants.
void validate_lrc_layout(const LrcLayout& layout);

/// Deterministic layout over the given field.  Requires k * (r + 1) to
/// divide q - 1 (DivisibilityError) and q > k * (r + 1) * (zeta0 + 1)
/// (ParameterError).
LrcLayout build_lrc_sets(const PrimeField& field, int zeta, int k, int r,
                         int l_initial, int l_final);

/// Wraps caller-supplied pieces and validates them.
LrcLayout lrc_layout_from_sets(
    const PrimeField& field, int zeta, int k, int r, int l_initial,
    int l_final, int zeta0, FieldElem beta, FieldElem alpha, Polynomial g,
    std::vector<std::vector<EvaluationSet>> a_groups,
    std::vector<EvaluationSet> c_groups,
    std::vector<std::pair<int, int>> b_sources);

/// Pairing data between coset block s (source) and block 0 (target):
/// returns (theta, M) with M * xg(a_{s,i,j}) = theta_i * xg(a_{0,i,j})
/// for every i and j = 0..r, where xg is the evaluation vector over the
/// basis {x^{t1} g^{t2}}.  ConditionViolation if the pairing fails.
std::pair<std::vector<FieldElem>, Matrix> build_m_matrix_lrc(
    const LrcLayout& layout, int s);

/// Built initial and final codes plus all conversion data.  The zeta
/// initial codewords live in one code whose groups are the block-0 groups
/// followed by C and B, all with unit multipliers.
struct LrcConvertibleCode {
  LrcLayout layout;
  LrcCode initial;
  LrcCode final_code;
  /// thetas[s][i]; thetas[0] all ones.
  std::vector<std::vector<FieldElem>> thetas;
  /// m_matrices[s] of shape (k r) x (k r); m_matrices[0] the identity.
  std::vector<Matrix> m_matrices;
  /// eta[s][i][j]: coefficients over the read parity points (first r of
  /// each C group, flat index i' * r + j') expressing
  /// m_matrices[s] * xg(c_{i,j}).  Empty when that membership fails.
  std::vector<std::vector<std::vector<std::vector<FieldElem>>>> eta;
  /// h_at_c[s][i] = h_{G \ G_s}(g(C_i)) with G the multiset of final
  /// block constants.
  std::vector<std::vector<FieldElem>> h_at_c;
  bool conditions_ok = true;
  std::string condition_note;

  int zeta() const { return layout.zeta; }
};

LrcConvertibleCode build_lrc_convertible(const LrcLayout& layout);

/// Reassembly from stored pieces; conditions_ok records failures instead
/// of throwing, so verification can name them.
LrcConvertibleCode assemble_lrc_convertible(
    LrcLayout layout, std::vector<std::vector<FieldElem>> thetas,
    std::vector<Matrix> m_matrices, std::vector<FieldElem> final_multipliers);

/// Converts zeta initial codewords into one final codeword.  The block-0
/// groups of initial s are copied to final block s; the first r symbols
/// of each parity group of every initial are read; the last symbol of
/// each final parity group is rebuilt by local repair from the r fresh
/// symbols next to it.  Read cost zeta * lF * r, write cost lF * (r + 1).
std::pair<Codeword, ConversionTrace> lrc_convert(
    const LrcConvertibleCode& code, const std::vector<Codeword>& initials,
    bool validate = true);

/// Final codeword computed from scratch from the messages (each of length
/// k * r).  Reference implementation for equivalence tests.
Codeword lrc_direct_final(const LrcConvertibleCode& code,
                          const std::vector<std::vector<FieldElem>>& messages);

/// Recovers all zeta messages from a final codeword.
/// NotACodewordError if the word is not in the final code.
std::vector<std::vector<FieldElem>> lrc_final_decode(
    const LrcConvertibleCode& code, const Codeword& final_word);

/// Encodes one initial codeword from a message of length k * r.
Codeword lrc_encode_initial(const LrcConvertibleCode& code,
                            const std::vector<FieldElem>& message);

VerifyReport verify_lrc(const LrcConvertibleCode& code, bool deep = false,
                        std::uint64_t seed = 0);

/// Structured construction; lF <= min(k, lI) is required (no fallback
/// regime exists for locality-preserving conversion).
LrcConvertibleCode build_lrc(const PrimeField& field, int zeta, int k, int r,
                             int l_initial, int l_final);

/// As above with the field chosen by find_modulus.
LrcConvertibleCode build_lrc_auto(int zeta, int k, int r, int l_initial,
                                  int l_final);

}  // namespace convcode
