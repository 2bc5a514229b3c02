// Copyright 2026 The lrrom Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "lrrom/common.hpp"

namespace lrrom {

struct QrFactors {
  Matrix q;  // d x k, orthonormal columns
  Matrix r;  // k x k, upper triangular, nonnegative diagonal
};

/// Thin QR, M = Q R, with the diagonal of R made nonnegative.
/// Throws RankCollapseError when the smallest |R_jj| is below 1e-12 |M|_F.
QrFactors orthonormalize(const Matrix& m);

/// Flips each column so that its largest-magnitude entry is positive
/// (ties go to the lowest row index).
void canonicalize_signs(Matrix& columns);

/// Top-k left singular vectors of `m`, sign-canonicalized.
Matrix top_left_singular_vectors(const Matrix& m, Index k);

/// |Q^T Q - I|_F.
double orthonormality_defect(const Matrix& q);

}  // namespace lrrom
