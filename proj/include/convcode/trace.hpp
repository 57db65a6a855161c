#pragma once

#include <string>
#include <utility>
#include <vector>

namespace convcode {

/// Role a coordinate plays during a conversion.
enum class SymbolRole {
  remaining,   ///< copied unchanged into the final codeword
  accessed,    ///< read to compute new symbols, then retired
  new_symbol,  ///< final coordinate written fresh
  untouched    ///< initial coordinate neither read nor kept
};

inline const char* role_name(SymbolRole role) {
  switch (role) {
    case SymbolRole::remaining: return "remaining";
    case SymbolRole::accessed: return "accessed";
    case SymbolRole::new_symbol: return "new";
    case SymbolRole::untouched: return "untouched";
  }
  return "unknown";
}

/// Record of which symbols a conversion touched and what it cost.
/// Initial-codeword coordinates are partitioned into remaining, accessed
/// and untouched; final coordinates not backed by a remaining symbol are
/// listed in new_coords.
struct ConversionTrace {
  int initial_count = 0;

  /// Per initial codeword: (source coordinate, final coordinate) of every
  /// symbol kept in place.
  std::vector<std::vector<std::pair<int, int>>> remaining;
  /// Per initial codeword: coordinates declared as read.
  std::vector<std::vector<int>> accessed;
  /// Per initial codeword: coordinates never touched.
  std::vector<std::vector<int>> untouched;
  /// Final coordinates computed fresh.
  std::vector<int> new_coords;
  /// Per initial codeword: coordinates actually read while computing the
  /// new symbols, in read order.  Must match `accessed` as a set.
  std::vector<std::vector<int>> observed_reads;

  long read_cost = 0;   ///< sum of accessed sizes
  long write_cost = 0;  ///< number of new coordinates
  long total_cost() const { return read_cost + write_cost; }
};

}  // namespace convcode
