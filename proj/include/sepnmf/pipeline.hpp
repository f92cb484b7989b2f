#pragma once

#include "sepnmf/dense.hpp"
#include "sepnmf/mvee.hpp"
#include "sepnmf/spa.hpp"

namespace sepnmf {

struct ReducedMatrix {
  DenseMatrix p;              // r x m, diag(sigma_1..sigma_r) V_r^T
  double sigma_tail = 0.0;    // sigma_{r+1}, 0 when r = min(d, m)
  DenseMatrix u_r;            // d x r leading left singular vectors
};

/// Wall-clock seconds spent in each stage.
struct StageTiming {
  double svd = 0.0;
  double mvee = 0.0;
  double spa = 0.0;
};

struct PipelineReport {
  ExtractionResult extraction;
  DenseMatrix reduced;         // P
  DenseMatrix preconditioned;  // P° = (L*)^{1/2} P
  MveeSolution mvee;
  double sigma_tail = 0.0;
  StageTiming timing;
};

ReducedMatrix build_reduced(const DenseMatrix& a_tilde, Index r);

/// Preconditions an r x m reduced matrix and runs SPA on it. Exposed
/// separately so the SVD stage can be bypassed or perturbed in tests.
PipelineReport precondition_reduced(const DenseMatrix& p, const MveeOptions& mvee_opts,
                                    const SpaOptions& spa_opts);

/// SVD reduction, MVEE preconditioning, then SPA. Indices refer to the
/// columns of a_tilde. Requires r >= 2.
PipelineReport preconditioned_spa(const DenseMatrix& a_tilde, Index r,
                                  const MveeOptions& mvee_opts = {},
                                  const SpaOptions& spa_opts = {});

/// Sorted (ascending) eigenvalues of G^T L* G.
Vector diagnostics_c_star(const DenseMatrix& g_true, const MveeSolution& mvee);

}  // namespace sepnmf
