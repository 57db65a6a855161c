#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "convcode/codes.hpp"
#include "convcode/trace.hpp"
#include "convcode/verify.hpp"

namespace convcode {

/// Evaluation-point layout for merging zeta [k + lI, k] MDS codes into one
/// [zeta k + lF, zeta k] MDS code.  A_i = alpha^(i-1) * A_1 elementwise;
/// C and B are disjoint from every A_i and from each other.
struct MdsLayout {
  PrimeField field;
  int zeta = 0;
  int k = 0;
  int l_initial = 0;  ///< parity count lI of each initial code
  int l_final = 0;    ///< parity count lF of the final code
  FieldElem alpha;    ///< coset shift between consecutive A_i
  std::vector<EvaluationSet> a_sets;  ///< A_1, ..., A_zeta, each of size k
  EvaluationSet c_set;                ///< shared parity points, size lF
  EvaluationSet b_set;                ///< extra initial parity points, size lI - lF

  int initial_length() const { return k + l_initial; }
  int final_length() const { return zeta * k + l_final; }
};

/// Checks the structural invariants above; throws LayoutError or
/// ParameterError with the offending detail.
void validate_mds_layout(const MdsLayout& layout);

/// Deterministic layout over the given field: A_1 holds the first k powers
/// of a generator of the smallest multiplicative subgroup of order >=
/// max(k, lI) whose order divides q - 1, alpha is the smallest primitive
/// root, C and B sit in the coset alpha^zeta.  Requires
/// q >= (zeta + 1) * |subgroup| + 1; DivisibilityError otherwise.
MdsLayout build_mds_sets(const PrimeField& field, int zeta, int k,
                         int l_initial, int l_final);

/// Wraps caller-supplied sets and validates them.
MdsLayout mds_layout_from_sets(const PrimeField& field, int zeta, int k,
                               int l_initial, int l_final, FieldElem alpha,
                               std::vector<EvaluationSet> a_sets,
                               EvaluationSet c_set, EvaluationSet b_set);

/// Projection data of Lemma-style pairing between equal-size point sets:
/// returns (theta, M) with M * vand(b_j) = theta_j * vand(a_j) for all j,
/// where vand(x) = (1, x, ..., x^{k-1}) and
/// theta_j = h_{B u C \ {b_j}}(b_j) / h_{A u C \ {a_j}}(a_j).
std::pair<std::vector<FieldElem>, Matrix> build_m_matrix(
    const EvaluationSet& a_set, const EvaluationSet& b_set,
    const EvaluationSet& c_set);

/// A built pair of initial and final codes plus all conversion data.
/// Initial codewords live in one Reed-Solomon code on A_1 u C u B with
/// unit multipliers; the i-th initial message polynomial f_i is stored as
/// the codeword (f_i(x))_{x in A_1 u C u B}.
struct MdsConvertibleCode {
  MdsLayout layout;
  GrsCode initial;
  GrsCode final_code;
  /// thetas[i][j] scales the pairing of a_{i+1,j+1} with a_{1,j+1};
  /// thetas[0] is all ones.
  std::vector<std::vector<FieldElem>> thetas;
  /// m_matrices[i] maps vand vectors of A_{i+1} points to scaled vand
  /// vectors of A_1 points; m_matrices[0] is the identity.
  std::vector<Matrix> m_matrices;
  /// eta[i][j]: coefficients expressing m_matrices[i] * vand(c_j) over
  /// {vand(c_s)}.  Empty when that membership fails.
  std::vector<std::vector<std::vector<FieldElem>>> eta;
  /// h_at_c[i][j] = h_{A \ A_{i+1}}(c_j), the cross-block annihilator
  /// factor of the final C symbols.
  std::vector<std::vector<FieldElem>> h_at_c;
  bool conditions_ok = true;
  std::string condition_note;

  int zeta() const { return layout.zeta; }
};

/// Builds codes and conversion data from a validated layout.
/// ConditionViolation if a projection condition fails (which a layout
/// satisfying the coset invariants never triggers).
MdsConvertibleCode build_mds_convertible(const MdsLayout& layout);

/// Reassembles a convertible code from stored pieces without insisting the
/// conditions hold; conditions_ok records whether they do.  Used when
/// loading serialized instances so that verification can report failures
/// instead of the loader rejecting them.
MdsConvertibleCode assemble_mds_convertible(
    MdsLayout layout, std::vector<std::vector<FieldElem>> thetas,
    std::vector<Matrix> m_matrices, std::vector<FieldElem> final_multipliers);

/// Converts zeta initial codewords into one final codeword.
/// The A-block of each initial is copied; every C symbol of every initial
/// is read; B symbols are never touched.  Read cost zeta * lF, write cost
/// lF.  With validate, inputs are first checked to be codewords
/// (NotACodewordError); those validation reads are not logged.
std::pair<Codeword, ConversionTrace> mds_convert(
    const MdsConvertibleCode& code, const std::vector<Codeword>& initials,
    bool validate = true);

/// Final codeword computed from scratch from the message polynomials, via
/// the combined polynomial sum_i h_{A \ A_i} * (f_i composed through
/// m_matrices[i]).  Reference implementation for equivalence tests.
Codeword mds_direct_final(const MdsConvertibleCode& code,
                          const std::vector<std::vector<FieldElem>>& messages);

/// Recovers all zeta messages from a final codeword.
/// NotACodewordError if the word is not in the final code.
std::vector<std::vector<FieldElem>> mds_final_decode(
    const MdsConvertibleCode& code, const Codeword& final_word);

/// Encodes one initial codeword from a message of length k.  Every initial
/// code is the same Reed-Solomon code, so no index is needed.
Codeword mds_encode_initial(const MdsConvertibleCode& code,
                            const std::vector<FieldElem>& message);

/// Re-derives every stored quantity and checks the construction
/// conditions; with deep, also runs randomized conversion-equivalence
/// trials and structural distance checks.
VerifyReport verify_mds(const MdsConvertibleCode& code, bool deep = false,
                        std::uint64_t seed = 0);

/// Fallback for parameters outside the structured regime (lF > min(k, lI)):
/// independent Reed-Solomon codes on consecutive points, conversion by
/// full decode and re-encode.
struct DefaultReencodeMds {
  PrimeField field;
  int zeta = 0;
  int k = 0;
  int l_initial = 0;
  int l_final = 0;
  GrsCode initial;
  GrsCode final_code;
};

DefaultReencodeMds build_default_reencode(const PrimeField& field, int zeta,
                                          int k, int l_initial, int l_final);

/// Reads k symbols of every initial, decodes, re-encodes.  Read cost
/// zeta * k, write cost zeta * k + lF.
std::pair<Codeword, ConversionTrace> default_reencode_convert(
    const DefaultReencodeMds& code, const std::vector<Codeword>& initials,
    bool validate = true);

using MdsBuildResult = std::variant<MdsConvertibleCode, DefaultReencodeMds>;

/// Structured construction when lF <= min(k, lI), re-encode fallback
/// otherwise.
MdsBuildResult build_mds(const PrimeField& field, int zeta, int k,
                         int l_initial, int l_final);

/// As above with the field chosen by find_modulus.
MdsBuildResult build_mds_auto(int zeta, int k, int l_initial, int l_final);

}  // namespace convcode
