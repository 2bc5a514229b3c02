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

#include "lrrom/linalg.hpp"

#include <cmath>

namespace lrrom {

QrFactors orthonormalize(const Matrix& m) {
  const Index d = m.rows(), k = m.cols();
  if (k < 1 || d < k) {
    throw RankCollapseError("orthonormalize: a " + std::to_string(d) + "x" +
                            std::to_string(k) + " matrix cannot have full column rank");
  }
  if (!m.allFinite()) throw NumericError("orthonormalize: non-finite entry");

  Eigen::HouseholderQR<Matrix> qr(m);
  QrFactors out;
  out.q = qr.householderQ() * Matrix::Identity(d, k);
  out.r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();

  const double floor = 1e-12 * m.norm();
  for (Index j = 0; j < k; ++j) {
    if (out.r(j, j) < 0.0) {
      out.r.row(j) *= -1.0;
      out.q.col(j) *= -1.0;
    }
    if (!(out.r(j, j) > floor)) {
      throw RankCollapseError("orthonormalize: column " + std::to_string(j) +
                              " is linearly dependent on the previous ones");
    }
  }
  return out;
}

void canonicalize_signs(Matrix& columns) {
  for (Index j = 0; j < columns.cols(); ++j) {
    Index best = 0;
    for (Index i = 1; i < columns.rows(); ++i) {
      if (std::abs(columns(i, j)) > std::abs(columns(best, j))) best = i;
    }
    if (columns.rows() > 0 && columns(best, j) < 0.0) columns.col(j) *= -1.0;
  }
}

Matrix top_left_singular_vectors(const Matrix& m, Index k) {
  if (k < 1 || k > std::min(m.rows(), m.cols())) {
    throw RankError("top_left_singular_vectors: k = " + std::to_string(k) +
                    " exceeds min(rows, cols) = " +
                    std::to_string(std::min(m.rows(), m.cols())));
  }
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU);
  Matrix u = svd.matrixU().leftCols(k);
  canonicalize_signs(u);
  return u;
}

double orthonormality_defect(const Matrix& q) {
  return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols())).norm();
}

}  // namespace lrrom
