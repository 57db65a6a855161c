#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convcode/codes.hpp"

namespace convcode {

/// Distance bound for codes with locality.
struct SingletonLrcBound {
  long distance_bound = 0;  ///< d <= n - k - ceil(k / r) + 2
  bool rate_ok = false;     ///< k * (r + 1) <= r * n
};

SingletonLrcBound singleton_lrc(long n, long k, long r);

/// Lower bounds on conversion access cost; read and write count symbols.
struct AccessBounds {
  long read = 0;
  long write = 0;
  std::string note;  ///< which regime produced the numbers
};

/// Merge of zeta [n_initial, k] MDS codes into an [n_final, zeta k] MDS
/// code.  k is the dimension of one initial code.
AccessBounds mds_access_bounds(long n_initial, long k, long n_final,
                               long zeta);

/// Merge of zeta initial codes of dimension k and locality r into a final
/// code of dimension zeta * k, locality r and minimum distance d.  k is
/// the dimension (not the block count) of one initial code.
AccessBounds lrc_access_bounds(long n_initial, long k, long n_final,
                               long zeta, long r, long d);

/// Picks an isolated subset of A: coordinates that each have a recovering
/// set of size <= r avoiding the whole chosen subset.  The result has at
/// least ceil(|A| / (r + 1)) elements.  Recovering sets are the repair
/// groups of the code.
std::vector<int> isolated_subset(const LrcCode& code,
                                 const std::vector<int>& a);

/// Same procedure for an arbitrary linear code given by its generator
/// matrix: the recovering family holds every subset of size <= r + 1 in
/// which each coordinate is spanned by the others.  Restricted to
/// n <= 16 columns.
std::vector<int> isolated_subset_general(const Matrix& generator, int r,
                                         const std::vector<int>& a);

/// Structural identities of one coset block of groups: basis rank,
/// two-factor expansion of arbitrary evaluation vectors, and the
/// vanishing block product.
struct AppendixReport {
  bool basis_rank_ok = false;
  bool expansion_ok = false;
  bool block_product_ok = false;
  std::string detail;

  bool all_ok() const {
    return basis_rank_ok && expansion_ok && block_product_ok;
  }
};

/// groups: k repair groups of r + 1 points each with pairwise distinct
/// g-constants; g of degree r + 1 and constant per group.  The expansion
/// identity is sampled at every group point plus `samples` seeded random
/// field points.
AppendixReport appendix_checks(const std::vector<EvaluationSet>& groups,
                               const Polynomial& g, int r,
                               std::uint64_t seed = 0, int samples = 20);

}  // namespace convcode
