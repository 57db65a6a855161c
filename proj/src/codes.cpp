#include "convcode/codes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace convcode {

GrsCode::GrsCode(EvaluationSet points, std::vector<FieldElem> multipliers,
                 int k)
    : points_(std::move(points)), multipliers_(std::move(multipliers)), k_(k) {
  if (points_.empty()) throw ParameterError("code needs at least one point");
  if (k_ < 1 || k_ > n()) {
    throw DimensionError("dimension " + std::to_string(k_) +
                         " outside [1, n] for n = " + std::to_string(n()));
  }
  if (multipliers_.size() != points_.size()) {
    throw DimensionError("multiplier count differs from point count");
  }
  for (const FieldElem& u : multipliers_) {
    check_same_field(u, points_[0]);
    if (u.value == 0) throw ParameterError("zero column multiplier");
  }
}

GrsCode GrsCode::reed_solomon(EvaluationSet points, int k) {
  if (points.empty()) throw ParameterError("code needs at least one point");
  PrimeField field(points[0].p);
  std::vector<FieldElem> ones(points.size(), field.one());
  return GrsCode(std::move(points), std::move(ones), k);
}

Matrix GrsCode::generator_matrix() const {
  Matrix m = vandermonde(points_, k_);
  for (int j = 0; j < n(); ++j) {
    for (int i = 0; i < k_; ++i) m.at(i, j) *= multipliers_[j];
  }
  return m;
}

Codeword grs_encode(const GrsCode& code, const std::vector<FieldElem>& message) {
  if (static_cast<int>(message.size()) != code.dimension()) {
    throw DimensionError("message length differs from code dimension");
  }
  PrimeField field(code.modulus());
  Polynomial f(message, field);
  Codeword w;
  w.symbols.reserve(static_cast<std::size_t>(code.n()));
  w.labels.reserve(static_cast<std::size_t>(code.n()));
  for (int c = 0; c < code.n(); ++c) {
    w.symbols.push_back(code.multipliers()[c] *
                        poly_eval(f, code.points()[c]));
    w.labels.push_back(code.label(c));
  }
  return w;
}

std::vector<FieldElem> grs_decode_erasures(
    const GrsCode& code, const std::vector<std::pair<int, FieldElem>>& known) {
  if (static_cast<int>(known.size()) < code.dimension()) {
    throw DimensionError("decode needs at least k known symbols");
  }
  std::vector<bool> seen(static_cast<std::size_t>(code.n()), false);
  for (const auto& [c, sym] : known) {
    if (c < 0 || c >= code.n()) throw ParameterError("coordinate out of range");
    if (seen[static_cast<std::size_t>(c)]) {
      throw ParameterError("repeated coordinate in decode input");
    }
    seen[static_cast<std::size_t>(c)] = true;
    check_same_field(sym, code.points()[0]);
  }
  // Interpolate f through the first k pairs, then check the surplus.
  std::vector<std::pair<FieldElem, FieldElem>> pts;
  pts.reserve(static_cast<std::size_t>(code.dimension()));
  for (int i = 0; i < code.dimension(); ++i) {
    const auto& [c, sym] = known[static_cast<std::size_t>(i)];
    pts.emplace_back(code.points()[c], sym / code.multipliers()[c]);
  }
  Polynomial f = interpolate(pts);
  for (std::size_t i = static_cast<std::size_t>(code.dimension());
       i < known.size(); ++i) {
    const auto& [c, sym] = known[i];
    FieldElem expect = code.multipliers()[c] * poly_eval(f, code.points()[c]);
    if (!(expect == sym)) {
      throw InconsistentSymbolsError(
          "symbol at coordinate " + std::to_string(c) +
          " disagrees with the interpolated message polynomial");
    }
  }
  return f.padded_coeffs(code.dimension());
}

bool grs_is_codeword(const GrsCode& code, const Codeword& word) {
  if (static_cast<int>(word.size()) != code.n()) return false;
  std::vector<std::pair<int, FieldElem>> known;
  known.reserve(word.size());
  for (int c = 0; c < code.n(); ++c) {
    known.emplace_back(c, word.symbols[static_cast<std::size_t>(c)]);
  }
  try {
    grs_decode_erasures(code, known);
  } catch (const InconsistentSymbolsError&) {
    return false;
  }
  return true;
}

bool grs_mds_exhaustive(const GrsCode& code, long budget) {
  int n = code.n();
  int k = code.dimension();
  // C(n, k) with early cutoff against the budget.
  long subsets = 1;
  for (int i = 1; i <= k; ++i) {
    subsets = subsets * (n - k + i) / i;
    if (subsets > budget) {
      throw BudgetExceededError("k-subset count exceeds budget");
    }
  }
  Matrix gen = code.generator_matrix();
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  PrimeField field(code.modulus());
  while (true) {
    Matrix sub(k, k, field);
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < k; ++i) {
        sub.at(i, j) = gen.at(i, pick[static_cast<std::size_t>(j)]);
      }
    }
    if (mat_rank(sub) != k) return false;
    // Next k-combination in lexicographic order.
    int t = k - 1;
    while (t >= 0 && pick[static_cast<std::size_t>(t)] == n - k + t) --t;
    if (t < 0) break;
    ++pick[static_cast<std::size_t>(t)];
    for (int i = t + 1; i < k; ++i) {
      pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return true;
}

LrcCode::LrcCode(std::vector<EvaluationSet> groups, Polynomial g, int k, int r,
                 std::vector<FieldElem> multipliers)
    : groups_(std::move(groups)),
      g_(std::move(g)),
      k_(k),
      r_(r),
      multipliers_(std::move(multipliers)),
      basis_(g_, r, k) {
  if (groups_.empty()) throw ParameterError("code needs at least one group");
  GoodPolyReport rep = check_good_polynomial(g_, groups_);
  if (!rep.ok) {
    throw LayoutError(
        rep.failing_groups.empty()
            ? std::string("repeated group constants")
            : "g is not constant on group " +
                  std::to_string(rep.failing_groups.front()));
  }
  constants_ = rep.constants;
  for (const EvaluationSet& grp : groups_) {
    if (static_cast<int>(grp.size()) != r_ + 1) {
      throw LayoutError("every group must hold exactly r + 1 points");
    }
  }
  try {
    union_of(groups_);  // global distinctness across groups
  } catch (const DuplicateAbscissaError&) {
    throw LayoutError("groups share an evaluation point");
  }
  if (dimension() > n()) {
    throw DimensionError("dimension k * r exceeds code length");
  }
  if (multipliers_.size() != static_cast<std::size_t>(n())) {
    throw DimensionError("multiplier count differs from code length");
  }
  for (const FieldElem& u : multipliers_) {
    if (u.p != modulus()) throw FieldMismatchError("multiplier field mismatch");
    if (u.value == 0) throw ParameterError("zero column multiplier");
  }
}

LrcCode LrcCode::with_unit_multipliers(std::vector<EvaluationSet> groups,
                                       Polynomial g, int k, int r) {
  PrimeField field(g.modulus());
  std::vector<FieldElem> ones(groups.size() * (static_cast<std::size_t>(r) + 1),
                              field.one());
  return LrcCode(std::move(groups), std::move(g), k, r, std::move(ones));
}

int LrcCode::n() const {
  return static_cast<int>(groups_.size()) * (r_ + 1);
}

Matrix LrcCode::generator_matrix() const {
  PrimeField field(modulus());
  Matrix m(dimension(), n(), field);
  for (int c = 0; c < n(); ++c) {
    std::vector<FieldElem> col = xg_vector(point(c), basis_);
    for (int i = 0; i < dimension(); ++i) {
      m.at(i, c) = multipliers_[static_cast<std::size_t>(c)] *
                   col[static_cast<std::size_t>(i)];
    }
  }
  return m;
}

Codeword lrc_encode(const LrcCode& code, const std::vector<FieldElem>& message) {
  if (static_cast<int>(message.size()) != code.dimension()) {
    throw DimensionError("message length differs from code dimension");
  }
  Polynomial f = xg_to_monomial(message, code.basis());
  Codeword w;
  w.symbols.reserve(static_cast<std::size_t>(code.n()));
  w.labels.reserve(static_cast<std::size_t>(code.n()));
  for (int c = 0; c < code.n(); ++c) {
    w.symbols.push_back(code.multipliers()[static_cast<std::size_t>(c)] *
                        poly_eval(f, code.point(c)));
    w.labels.push_back(code.label(c));
  }
  return w;
}

std::vector<FieldElem> lrc_decode(
    const LrcCode& code, const std::vector<std::pair<int, FieldElem>>& known) {
  if (static_cast<int>(known.size()) < code.dimension()) {
    throw DimensionError("decode needs at least k * r known symbols");
  }
  PrimeField field(code.modulus());
  std::vector<bool> seen(static_cast<std::size_t>(code.n()), false);
  Matrix a(static_cast<int>(known.size()), code.dimension(), field);
  std::vector<FieldElem> b;
  b.reserve(known.size());
  for (std::size_t i = 0; i < known.size(); ++i) {
    const auto& [c, sym] = known[i];
    if (c < 0 || c >= code.n()) throw ParameterError("coordinate out of range");
    if (seen[static_cast<std::size_t>(c)]) {
      throw ParameterError("repeated coordinate in decode input");
    }
    seen[static_cast<std::size_t>(c)] = true;
    std::vector<FieldElem> row = xg_vector(code.point(c), code.basis());
    for (int j = 0; j < code.dimension(); ++j) {
      a.at(static_cast<int>(i), j) = row[static_cast<std::size_t>(j)];
    }
    b.push_back(sym / code.multipliers()[static_cast<std::size_t>(c)]);
  }
  if (mat_rank(a) < code.dimension()) {
    throw DimensionError("known coordinates do not determine the message");
  }
  std::optional<std::vector<FieldElem>> x = mat_solve(a, b);
  if (!x) {
    throw InconsistentSymbolsError(
        "symbols are not consistent with any codeword");
  }
  return *x;
}

bool lrc_is_codeword(const LrcCode& code, const Codeword& word) {
  if (static_cast<int>(word.size()) != code.n()) return false;
  std::vector<std::pair<int, FieldElem>> known;
  known.reserve(word.size());
  for (int c = 0; c < code.n(); ++c) {
    known.emplace_back(c, word.symbols[static_cast<std::size_t>(c)]);
  }
  try {
    lrc_decode(code, known);
  } catch (const InconsistentSymbolsError&) {
    return false;
  }
  return true;
}

FieldElem lrc_repair(const LrcCode& code, const Codeword& word,
                     int erased_coord, std::vector<int>* read_log) {
  if (static_cast<int>(word.size()) != code.n()) {
    throw DimensionError("codeword length differs from code length");
  }
  if (erased_coord < 0 || erased_coord >= code.n()) {
    throw ParameterError("coordinate out of range");
  }
  int grp = code.group_of(erased_coord);
  int r = code.locality();
  if (static_cast<int>(code.groups()[static_cast<std::size_t>(grp)].size()) !=
      r + 1) {
    throw InsufficientGroupError("repair group is short of points");
  }
  // Within a group g is constant, so u-normalized symbols are evaluations
  // of a polynomial of degree < r; interpolate it from the r survivors.
  std::vector<std::pair<FieldElem, FieldElem>> pts;
  pts.reserve(static_cast<std::size_t>(r));
  for (int j = 0; j <= r; ++j) {
    int c = code.coord(grp, j);
    if (c == erased_coord) continue;
    if (read_log) read_log->push_back(c);
    pts.emplace_back(code.point(c),
                     word.symbols[static_cast<std::size_t>(c)] /
                         code.multipliers()[static_cast<std::size_t>(c)]);
  }
  Polynomial local = interpolate(pts);
  return code.multipliers()[static_cast<std::size_t>(erased_coord)] *
         poly_eval(local, code.point(erased_coord));
}

namespace {

// Shared enumeration: walks all nonzero messages in odometer order and
// maintains the running codeword incrementally.  Each odometer step adds
// generator row t once per touched digit (a wrap from q-1 to 0 changes the
// digit by -(q-1) == +1 mod q).
long min_weight_enumerate(const Matrix& gen, long budget) {
  int dim = gen.rows();
  int n = gen.cols();
  std::uint32_t q = gen.modulus();
  long double total = 1.0L;
  for (int i = 0; i < dim; ++i) {
    total *= q;
    if (total > static_cast<long double>(budget) + 1.0L) {
      throw BudgetExceededError("q^dimension exceeds enumeration budget");
    }
  }
  PrimeField field(q);
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(dim), 0);
  std::vector<FieldElem> word(static_cast<std::size_t>(n), field.zero());
  long best = n + 1;
  long count = static_cast<long>(total) - 1;
  for (long step = 0; step < count; ++step) {
    int t = 0;
    while (digits[static_cast<std::size_t>(t)] == q - 1) {
      digits[static_cast<std::size_t>(t)] = 0;
      for (int j = 0; j < n; ++j) {
        word[static_cast<std::size_t>(j)] += gen.at(t, j);
      }
      ++t;
    }
    ++digits[static_cast<std::size_t>(t)];
    for (int j = 0; j < n; ++j) {
      word[static_cast<std::size_t>(j)] += gen.at(t, j);
    }
    long weight = 0;
    for (int j = 0; j < n; ++j) {
      if (word[static_cast<std::size_t>(j)].value != 0) ++weight;
    }
    if (weight < best) best = weight;
  }
  if (best > n) throw Error("distance enumeration saw no nonzero codeword");
  return best;
}

}  // namespace

long min_distance_bruteforce(const GrsCode& code, long budget) {
  return min_weight_enumerate(code.generator_matrix(), budget);
}

long min_distance_bruteforce(const LrcCode& code, long budget) {
  return min_weight_enumerate(code.generator_matrix(), budget);
}

LocalityReport check_locality(const LrcCode& code) {
  LocalityReport rep;
  Matrix gen = code.generator_matrix();
  for (int c = 0; c < code.n(); ++c) {
    int grp = code.group_of(c);
    std::vector<std::vector<FieldElem>> others;
    for (int j = 0; j <= code.locality(); ++j) {
      int cc = code.coord(grp, j);
      if (cc != c) others.push_back(gen.col(cc));
    }
    if (!in_span(gen.col(c), others)) rep.failing_coords.push_back(c);
  }
  rep.ok = rep.failing_coords.empty();
  return rep;
}

GoodPolyReport check_good_polynomial(const Polynomial& g,
                                     const std::vector<EvaluationSet>& groups) {
  GoodPolyReport rep;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const EvaluationSet& grp = groups[gi];
    if (grp.empty()) throw ParameterError("empty group");
    FieldElem c0 = poly_eval(g, grp[0]);
    bool constant = true;
    for (std::size_t j = 1; j < grp.size(); ++j) {
      if (!(poly_eval(g, grp[j]) == c0)) { constant = false; break; }
    }
    rep.constants.push_back(c0);
    if (!constant) rep.failing_groups.push_back(static_cast<int>(gi));
  }
  rep.constants_distinct = true;
  for (std::size_t i = 0; i < rep.constants.size() && rep.constants_distinct;
       ++i) {
    for (std::size_t j = i + 1; j < rep.constants.size(); ++j) {
      if (rep.constants[i] == rep.constants[j]) {
        rep.constants_distinct = false;
        break;
      }
    }
  }
  rep.ok = rep.failing_groups.empty() && rep.constants_distinct;
  return rep;
}

}  // namespace convcode
