#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "convcode/poly.hpp"

namespace convcode {

/// Provenance of one codeword coordinate: its evaluation point and, for
/// codes with locality, the repair group it belongs to (-1 otherwise).
struct CoordLabel {
  FieldElem point;
  int group = -1;

  friend bool operator==(const CoordLabel&, const CoordLabel&) = default;
};

/// A codeword together with per-coordinate labels.
struct Codeword {
  std::vector<FieldElem> symbols;
  std::vector<CoordLabel> labels;

  std::size_t size() const { return symbols.size(); }

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

/// Generalized Reed-Solomon code: codewords (u_1 f(a_1), ..., u_n f(a_n))
/// with deg f < k, pairwise distinct points a_i and nonzero multipliers u_i.
class GrsCode {
 public:
  GrsCode(EvaluationSet points, std::vector<FieldElem> multipliers, int k);
  /// Plain Reed-Solomon: all multipliers one.
  static GrsCode reed_solomon(EvaluationSet points, int k);

  int n() const { return static_cast<int>(points_.size()); }
  int dimension() const { return k_; }
  std::uint32_t modulus() const { return points_[0].p; }
  const EvaluationSet& points() const { return points_; }
  const std::vector<FieldElem>& multipliers() const { return multipliers_; }
  CoordLabel label(int coord) const { return {points_[coord], -1}; }

  /// k x n generator; column j is u_j * (1, a_j, ..., a_j^{k-1}).
  Matrix generator_matrix() const;

 private:
  EvaluationSet points_;
  std::vector<FieldElem> multipliers_;
  int k_;
};

/// Encodes a message of length k (monomial coefficients of f).
Codeword grs_encode(const GrsCode& code, const std::vector<FieldElem>& message);

/// Recovers the message from >= k known (coordinate, symbol) pairs.
/// Surplus pairs are checked against the interpolant; a contradiction
/// raises InconsistentSymbolsError.
std::vector<FieldElem> grs_decode_erasures(
    const GrsCode& code, const std::vector<std::pair<int, FieldElem>>& known);

/// Codeword membership via full-coordinate decode.
bool grs_is_codeword(const GrsCode& code, const Codeword& word);

/// Exhaustively verifies that every k-subset of columns is invertible,
/// i.e. that the code is MDS.  Throws BudgetExceededError if the number
/// of subsets exceeds the budget.
bool grs_mds_exhaustive(const GrsCode& code, long budget = 2'000'000);

/// Code with locality r built from a polynomial g of degree r + 1 that is
/// constant on each repair group of r + 1 points: codewords are
/// (u_c f(a_c))_c with f in span{x^{t1} g^{t2} : t1 < r, t2 < k}.
/// Dimension k * r.
class LrcCode {
 public:
  /// Groups must each hold r + 1 points, be pairwise disjoint, and have
  /// pairwise distinct g-constants (checked; LayoutError otherwise).
  LrcCode(std::vector<EvaluationSet> groups, Polynomial g, int k, int r,
          std::vector<FieldElem> multipliers);
  /// All multipliers one.
  static LrcCode with_unit_multipliers(std::vector<EvaluationSet> groups,
                                       Polynomial g, int k, int r);

  int n() const;
  int dimension() const { return k_ * r_; }
  int blocks() const { return k_; }
  int locality() const { return r_; }
  int group_count() const { return static_cast<int>(groups_.size()); }
  std::uint32_t modulus() const { return g_.modulus(); }
  const std::vector<EvaluationSet>& groups() const { return groups_; }
  const Polynomial& g() const { return g_; }
  const std::vector<FieldElem>& multipliers() const { return multipliers_; }
  /// Value of g on the given group.
  const FieldElem& group_constant(int group) const { return constants_[group]; }
  const XGBasis& basis() const { return basis_; }

  /// Flat coordinate of point j of the given group.
  int coord(int group, int j) const { return group * (r_ + 1) + j; }
  int group_of(int c) const { return c / (r_ + 1); }
  const FieldElem& point(int c) const {
    return groups_[group_of(c)][static_cast<std::size_t>(c % (r_ + 1))];
  }
  CoordLabel label(int c) const { return {point(c), group_of(c)}; }

  /// (k r) x n generator; column c is u_c * xg_vector(point(c)).
  Matrix generator_matrix() const;

 private:
  std::vector<EvaluationSet> groups_;
  Polynomial g_;
  int k_;
  int r_;
  std::vector<FieldElem> multipliers_;
  std::vector<FieldElem> constants_;
  XGBasis basis_;
};

/// Encodes a message of length k * r (coefficients over the xg basis).
Codeword lrc_encode(const LrcCode& code, const std::vector<FieldElem>& message);

/// Recovers the message from >= k * r known (coordinate, symbol) pairs
/// spanning the full dimension.  InconsistentSymbolsError on contradictory
/// symbols, DimensionError if the pairs do not determine the message.
std::vector<FieldElem> lrc_decode(
    const LrcCode& code, const std::vector<std::pair<int, FieldElem>>& known);

bool lrc_is_codeword(const LrcCode& code, const Codeword& word);

/// Recomputes one erased symbol from the other r symbols of its group by
/// Lagrange interpolation inside the group.  Coordinates read are appended
/// to *read_log when given.  InsufficientGroupError if the group is short.
FieldElem lrc_repair(const LrcCode& code, const Codeword& word,
                     int erased_coord, std::vector<int>* read_log = nullptr);

/// Exact minimum distance by enumerating all nonzero messages.  Throws
/// BudgetExceededError when q^dimension exceeds the budget.
long min_distance_bruteforce(const GrsCode& code, long budget = 10'000'000);
long min_distance_bruteforce(const LrcCode& code, long budget = 10'000'000);

struct LocalityReport {
  bool ok = false;
  /// Coordinates whose symbol is not determined by the rest of its group.
  std::vector<int> failing_coords;
};

/// Rank test per coordinate: the column must lie in the span of the other
/// columns of its group.
LocalityReport check_locality(const LrcCode& code);

struct GoodPolyReport {
  bool ok = false;
  std::vector<FieldElem> constants;
  /// Groups on which g is not constant.
  std::vector<int> failing_groups;
  bool constants_distinct = false;
};

/// Checks that g is constant on every group and the constants are
/// pairwise distinct.
GoodPolyReport check_good_polynomial(const Polynomial& g,
                                     const std::vector<EvaluationSet>& groups);

}  // namespace convcode
