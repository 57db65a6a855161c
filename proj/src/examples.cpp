#include "convcode/examples.hpp"

#include <utility>
#include <vector>

namespace convcode {

MdsConvertibleCode example1_code() {
  PrimeField field(19);
  std::vector<EvaluationSet> a_sets = {
      EvaluationSet(field.elems({1, 8, 7, 18})),
      EvaluationSet(field.elems({2, 16, 14, 17})),
  };
  EvaluationSet c_set(field.elems({4, 9}));
  EvaluationSet b_set;
  MdsLayout layout =
      mds_layout_from_sets(field, 2, 4, 2, 2, field.elem(2), std::move(a_sets),
                           std::move(c_set), std::move(b_set));
  return build_mds_convertible(layout);
}

LrcConvertibleCode example2_code() {
  PrimeField field(19);
  return build_lrc_convertible(build_lrc_sets(field, 2, 2, 2, 1, 1));
}

}  // namespace convcode
