#include "convcode/bounds.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "convcode/errors.hpp"
#include "convcode/field.hpp"
#include "convcode/matrix.hpp"
#include "convcode/poly.hpp"
#include "convcode/rng.hpp"

namespace convcode {

namespace {

long ceil_div(long a, long b) { return (a + b - 1) / b; }

void check_coord_subset(const std::vector<int>& a, int n) {
  std::set<int> seen;
  for (int x : a) {
    if (x < 0 || x >= n) {
      throw ParameterError("isolated subset: coordinate out of range");
    }
    if (!seen.insert(x).second) {
      throw ParameterError("isolated subset: duplicate coordinate");
    }
  }
}

bool column_in_span(const Matrix& gen, int target,
                    const std::vector<int>& from) {
  std::vector<FieldElem> v = gen.col(target);
  if (from.empty()) {
    return std::all_of(v.begin(), v.end(),
                       [](const FieldElem& e) { return e.value == 0; });
  }
  std::vector<std::vector<FieldElem>> basis;
  basis.reserve(from.size());
  for (int c : from) basis.push_back(gen.col(c));
  return in_span(v, basis).has_value();
}

/// Greedy cover of `a` by family sets, pruned until every surviving set
/// keeps a private element of `a`; those private elements form the
/// result.  Privacy makes each recovering set avoid the whole result.
std::vector<int> pick_isolated(const Matrix& gen,
                               const std::vector<std::vector<int>>& family,
                               const std::vector<int>& a, long set_cap) {
  if (a.empty()) return {};
  std::set<int> a_set(a.begin(), a.end());
  std::set<int> remaining = a_set;
  std::vector<std::vector<int>> cover;
  while (!remaining.empty()) {
    std::size_t best = family.size();
    std::size_t best_hits = 0;
    for (std::size_t idx = 0; idx < family.size(); ++idx) {
      std::size_t hits = 0;
      for (int x : family[idx]) hits += remaining.count(x);
      if (hits > best_hits) {
        best_hits = hits;
        best = idx;
      }
    }
    if (best == family.size()) {
      std::ostringstream os;
      os << "coordinate " << *remaining.begin()
         << " has no recovering set of the required size";
      throw ConditionViolation(os.str());
    }
    cover.push_back(family[best]);
    for (int x : family[best]) remaining.erase(x);
  }

  auto covered_elsewhere = [&](std::size_t idx, int x) {
    for (std::size_t other = 0; other < cover.size(); ++other) {
      if (other == idx) continue;
      if (std::find(cover[other].begin(), cover[other].end(), x) !=
          cover[other].end()) {
        return true;
      }
    }
    return false;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t idx = 0; idx < cover.size(); ++idx) {
      bool redundant = true;
      for (int x : cover[idx]) {
        if (a_set.count(x) && !covered_elsewhere(idx, x)) {
          redundant = false;
          break;
        }
      }
      if (redundant) {
        cover.erase(cover.begin() + static_cast<long>(idx));
        changed = true;
        break;
      }
    }
  }

  std::vector<int> chosen;
  std::vector<std::vector<int>> recovery;
  for (std::size_t idx = 0; idx < cover.size(); ++idx) {
    int pick = -1;
    for (int x : cover[idx]) {
      if (a_set.count(x) && !covered_elsewhere(idx, x) &&
          (pick < 0 || x < pick)) {
        pick = x;
      }
    }
    if (pick < 0) {
      throw ConditionViolation(
          "cover pruning left a set without a private coordinate");
    }
    chosen.push_back(pick);
    std::vector<int> rec;
    for (int x : cover[idx]) {
      if (x != pick) rec.push_back(x);
    }
    recovery.push_back(std::move(rec));
  }

  if (static_cast<long>(chosen.size()) <
      ceil_div(static_cast<long>(a.size()), set_cap)) {
    throw ConditionViolation("isolated subset smaller than guaranteed");
  }
  std::set<int> chosen_set(chosen.begin(), chosen.end());
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    for (int x : recovery[i]) {
      if (chosen_set.count(x)) {
        throw ConditionViolation(
            "recovering set intersects the isolated subset");
      }
    }
    if (!column_in_span(gen, chosen[i], recovery[i])) {
      std::ostringstream os;
      os << "coordinate " << chosen[i]
         << " is not recoverable from its chosen set";
      throw ConditionViolation(os.str());
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

SingletonLrcBound singleton_lrc(long n, long k, long r) {
  if (n < 1 || k < 1 || r < 1) {
    throw ParameterError("singleton_lrc needs positive n, k and r");
  }
  if (k > n) {
    throw DimensionError("singleton_lrc: dimension exceeds length");
  }
  SingletonLrcBound out;
  out.distance_bound = n - k - ceil_div(k, r) + 2;
  out.rate_ok = k * (r + 1) <= r * n;
  return out;
}

AccessBounds mds_access_bounds(long n_initial, long k, long n_final,
                               long zeta) {
  if (zeta < 1 || k < 1) {
    throw ParameterError("mds_access_bounds needs positive zeta and k");
  }
  if (n_initial < k) {
    throw DimensionError("mds_access_bounds: initial length below dimension");
  }
  if (n_final < zeta * k) {
    throw DimensionError(
        "mds_access_bounds: final length below final dimension");
  }
  long r_final = n_final - zeta * k;
  AccessBounds out;
  out.write = r_final;
  if (n_initial - k < r_final) {
    out.read = zeta * k;
    out.note = "initial redundancy below final redundancy: full read";
  } else if (r_final >= k) {
    out.read = zeta * k;
    out.note = "final redundancy reaches the dimension: full read";
  } else {
    out.read = zeta * r_final;
    out.note = "merge regime: one final-redundancy batch per initial code";
  }
  out.read = std::max(out.read, 0L);
  out.write = std::max(out.write, 0L);
  return out;
}

AccessBounds lrc_access_bounds(long n_initial, long k, long n_final,
                               long zeta, long r, long d) {
  if (zeta < 1 || k < 1 || r < 1 || d < 1) {
    throw ParameterError(
        "lrc_access_bounds needs positive zeta, k, r and d");
  }
  if (n_initial < k) {
    throw DimensionError("lrc_access_bounds: initial length below dimension");
  }
  if (n_final < zeta * k) {
    throw DimensionError(
        "lrc_access_bounds: final length below final dimension");
  }
  long excess = (zeta - 1) * k + ceil_div((zeta - 1) * k, r);
  AccessBounds out;
  out.write = zeta * (d + excess - 2) - (zeta - 1) * n_final;
  long margin = n_final - 2 * d - excess + 3;
  if (d > n_initial - k + 1) {
    out.read = zeta * k;
    out.note = "initial codes cannot reach the target distance: full read";
  } else if (margin <= 0) {
    out.read = zeta * k;
    out.note = "no unread margin at the target distance: full read";
  } else {
    out.read = zeta * (k - ceil_div(r * margin, r + 1));
    out.note = "merge regime";
  }
  out.read = std::max(out.read, 0L);
  out.write = std::max(out.write, 0L);
  return out;
}

std::vector<int> isolated_subset(const LrcCode& code,
                                 const std::vector<int>& a) {
  check_coord_subset(a, code.n());
  std::vector<std::vector<int>> family;
  family.reserve(code.group_count());
  for (int gi = 0; gi < code.group_count(); ++gi) {
    std::vector<int> s;
    for (int j = 0; j <= code.locality(); ++j) s.push_back(code.coord(gi, j));
    family.push_back(std::move(s));
  }
  return pick_isolated(code.generator_matrix(), family, a,
                       code.locality() + 1);
}

std::vector<int> isolated_subset_general(const Matrix& generator, int r,
                                         const std::vector<int>& a) {
  int n = static_cast<int>(generator.cols());
  if (n < 1 || n > 16) {
    throw ParameterError(
        "isolated_subset_general handles between 1 and 16 columns");
  }
  if (r < 1) {
    throw ParameterError("isolated_subset_general needs positive locality");
  }
  check_coord_subset(a, n);

  std::vector<std::vector<int>> family;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size > r + 1) continue;
    std::vector<int> members;
    for (int c = 0; c < n; ++c) {
      if (mask & (1u << c)) members.push_back(c);
    }
    bool uniform = true;
    for (std::size_t i = 0; i < members.size() && uniform; ++i) {
      std::vector<int> rest;
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (j != i) rest.push_back(members[j]);
      }
      uniform = column_in_span(generator, members[i], rest);
    }
    if (uniform) family.push_back(std::move(members));
  }
  return pick_isolated(generator, family, a, r + 1);
}

AppendixReport appendix_checks(const std::vector<EvaluationSet>& groups,
                               const Polynomial& g, int r,
                               std::uint64_t seed, int samples) {
  if (groups.empty() || r < 1) {
    throw ParameterError("appendix_checks needs groups and positive r");
  }
  if (g.degree() != r + 1) {
    throw LayoutError("appendix_checks: deg g must be r + 1");
  }
  for (const EvaluationSet& grp : groups) {
    if (static_cast<int>(grp.size()) != r + 1) {
      throw LayoutError("appendix_checks: every group needs r + 1 points");
    }
  }
  try {
    union_of(groups);
  } catch (const DuplicateAbscissaError&) {
    throw LayoutError("appendix_checks: groups share an evaluation point");
  }
  GoodPolyReport good = check_good_polynomial(g, groups);
  if (!good.ok || !good.constants_distinct) {
    throw LayoutError(
        "appendix_checks: g must be constant per group with distinct "
        "constants");
  }

  PrimeField field(g.modulus());
  int k = static_cast<int>(groups.size());
  const std::vector<FieldElem>& constants = good.constants;
  XGBasis basis(g, r, k);
  int dim = basis.dim();

  // Product of (y - constant) over every other group, evaluated at y.
  auto cross_at = [&](int i, const FieldElem& y) {
    FieldElem acc = field.one();
    for (int other = 0; other < k; ++other) {
      if (other != i) acc = acc * (y - constants[other]);
    }
    return acc;
  };

  AppendixReport report;
  std::ostringstream detail;
  detail << "k=" << k << " r=" << r;

  std::vector<std::vector<FieldElem>> basis_rows;
  basis_rows.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < r; ++j) {
      basis_rows.push_back(xg_vector(groups[i][j], basis));
    }
  }
  Matrix basis_matrix = Matrix::from_rows(basis_rows);
  int rank = mat_rank(basis_matrix);
  report.basis_rank_ok = rank == dim;
  if (!report.basis_rank_ok) {
    detail << "; held-out basis rank " << rank << " instead of " << dim;
  }

  std::vector<FieldElem> sample_points;
  for (const EvaluationSet& grp : groups) {
    for (const FieldElem& pt : grp.points()) sample_points.push_back(pt);
  }
  SplitMix64 rng(seed);
  for (int s = 0; s < samples; ++s) sample_points.push_back(rng.next_elem(field));

  report.expansion_ok = true;
  for (const FieldElem& c : sample_points) {
    std::vector<FieldElem> expect = xg_vector(c, basis);
    std::vector<FieldElem> got(expect.size(), field.zero());
    FieldElem gc = poly_eval(g, c);
    for (int i = 0; i < k; ++i) {
      FieldElem factor = cross_at(i, gc) / cross_at(i, constants[i]);
      for (int j = 0; j < r; ++j) {
        FieldElem lag = field.one();
        for (int j2 = 0; j2 < r; ++j2) {
          if (j2 == j) continue;
          lag = lag * ((c - groups[i][j2]) / (groups[i][j] - groups[i][j2]));
        }
        FieldElem coeff = factor * lag;
        for (std::size_t t = 0; t < got.size(); ++t) {
          got[t] = got[t] + coeff * basis_rows[static_cast<std::size_t>(i * r + j)][t];
        }
      }
    }
    if (got != expect) {
      report.expansion_ok = false;
      detail << "; expansion fails at point " << c.value;
      break;
    }
  }

  if (k < 2) {
    report.block_product_ok = true;
  } else {
    Matrix top((k - 1) * r, k * r, field);
    Matrix stack(k * r, r, field);
    for (int i = 0; i < k; ++i) {
      Matrix vand(r, r, field);
      for (int u = 0; u < r; ++u) {
        for (int j = 0; j < r; ++j) {
          vand.at(u, j) = ff_pow(groups[i][j], static_cast<std::uint64_t>(u));
        }
      }
      FieldElem inv_cross = field.one() / cross_at(i, constants[i]);
      Matrix vand_inv = mat_inverse(vand);
      for (int t = 0; t + 1 < k; ++t) {
        FieldElem ct = ff_pow(constants[i], static_cast<std::uint64_t>(t));
        for (int u = 0; u < r; ++u) {
          for (int j = 0; j < r; ++j) {
            top.at(t * r + u, i * r + j) = ct * vand.at(u, j);
          }
        }
      }
      for (int u = 0; u < r; ++u) {
        for (int v = 0; v < r; ++v) {
          stack.at(i * r + u, v) = inv_cross * vand_inv.at(u, v);
        }
      }
    }
    Matrix product = top * stack;
    report.block_product_ok = true;
    for (int i = 0; i < product.rows() && report.block_product_ok; ++i) {
      for (int j = 0; j < product.cols(); ++j) {
        if (product.at(i, j).value != 0) {
          report.block_product_ok = false;
          detail << "; block product nonzero at (" << i << "," << j << ")";
          break;
        }
      }
    }
  }

  if (report.all_ok()) {
    detail << "; sampled " << sample_points.size() << " points";
  }
  report.detail = detail.str();
  return report;
}

}  // namespace convcode
