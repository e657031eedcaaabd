#pragma once

#include <vector>

#include "qtensor/quat_tensor.hpp"

namespace qtensor::testing {

// Hand-worked golden cases exercised across the test suites. Every tensor
// here ships as a fixture file as well; the io suite pins the two forms to
// each other bit-exactly.

// 2x2x2x3 tensor whose flattening is known entry-for-entry.
QuatTensor flatten_case();
// The expected 4x6 flattening of flatten_case(), row-major.
QuatMatrix flatten_case_matrix();

// 2x2x3x2 tensor with singular values {1, sqrt2, 2, 4}.
QuatTensor svd_case();
std::vector<double> svd_case_singvals_ascending();

// 2x2x2x2 tensor that is exactly i-Hermitian.
QuatTensor i_hermitian_case();

// 2x2x2x2 k-Hermitian tensor with singular values {1, sqrt3, 2, 3}.
QuatTensor k_hermitian_case();
std::vector<double> k_hermitian_case_sigma_ascending();

}  // namespace qtensor::testing
