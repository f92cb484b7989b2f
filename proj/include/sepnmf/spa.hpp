#pragma once

#include "sepnmf/dense.hpp"
#include "sepnmf/kernels.hpp"

#include <vector>

namespace sepnmf {

struct SpaOptions {
  /// Residual collapse threshold, relative to the initial max column norm.
  double degenerate_threshold = 1e-12;
  Exec exec = Exec::parallel;
};

struct ExtractionResult {
  std::vector<Index> indices;     // 0-based, in selection order
  std::vector<double> step_norms; // ||s_{i*}||_2 at each round
  double residual_final = 0.0;    // max column norm after the last round
};

/// Successive projection algorithm.
///
/// Each round picks the column of the working matrix with the largest
/// Euclidean norm (ties go to the lowest index) and projects every column
/// onto the orthogonal complement of that residual. A second projection
/// pass against all earlier directions runs every round to keep the
/// working matrix orthogonal to them in floating point.
///
/// Throws DegeneracyError (carrying the number of picks made) if all
/// remaining residuals fall below degenerate_threshold * initial scale
/// before r columns have been chosen.
ExtractionResult spa(const DenseMatrix& a, Index r, const SpaOptions& opts = {});

/// (I - t t^T / ||t||^2) s. Throws ArgumentError if t is zero.
DenseMatrix project_out(const DenseMatrix& s, const Vector& t);

}  // namespace sepnmf
