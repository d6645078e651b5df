#pragma once

#include <vector>

#include "ffdyn/function_field.hpp"

namespace ffdyn {

// c_0 + sum_i c_i * prod_{j in J_i} T_j with disjoint blocks J_i covering
// {1..arity}; each variable appears linearly. c_0 may be zero.
struct SplitMultilinearForm {
  int arity = 0;
  std::vector<std::vector<int>> blocks;  // 1-based variable indices, each sorted
  std::vector<FieldElement> coefficients;
  FieldElement constant;

  // Evaluates at values[j - 1] for T_j.
  FieldElement evaluate(const std::vector<FieldElement>& values) const;
};

}  // namespace ffdyn
