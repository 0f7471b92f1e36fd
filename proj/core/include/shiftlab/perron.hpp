#pragma once

#include <vector>

#include "shiftlab/sft.hpp"

namespace shiftlab {

/// Leading eigendata of the transition matrix.
struct PerronData {
  double lambda = 0.0;
  std::vector<double> right;  // sums to 1
  std::vector<double> left;   // scaled so that left . right = 1
  double theta = 0.0;         // |lambda_2| / lambda
  double entropy = 0.0;       // log(lambda)
};

struct PerronOptions {
  int max_iterations = 100000;
  double tolerance = 1e-13;
};

/// Dense eigensolve for m <= 64, power iteration with deflation above; both
/// paths finish with power-iteration refinement of the Perron vectors.
/// Throws ConvergenceFailure when the residual does not drop below tolerance.
PerronData perron(const Sft& sft, const PerronOptions& options = {});

/// max_i |(A x)_i - lambda x_i| for the right vector, likewise for the left.
double right_residual(const Sft& sft, const PerronData& data);
double left_residual(const Sft& sft, const PerronData& data);

}  // namespace shiftlab
