#pragma once

#include "convcode/lrc.hpp"
#include "convcode/mds.hpp"

namespace convcode {

/// Two [6, 4] Reed-Solomon codes over F_19 merged into one [10, 8] code,
/// built from hand-picked evaluation sets.  Conversion reads 4 symbols
/// and writes 2.
MdsConvertibleCode example1_code();

/// Two (9, 4, 2) locally repairable codes over F_19 merged into one
/// (15, 8, 2) code with locality groups of size 3.  Conversion reads 4
/// symbols and writes 3.
LrcConvertibleCode example2_code();

}  // namespace convcode
