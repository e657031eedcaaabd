#pragma once

#include <cstdint>

#include "qtensor/generator.hpp"
#include "qtensor/quat_matrix.hpp"

namespace qtensor::testing {

inline QuatMatrix random_matrix(std::int64_t rows, std::int64_t cols,
                                std::uint64_t seed) {
    QuaternionStream stream(seed);
    QuatMatrix m(rows, cols);
    for (std::int64_t r = 0; r < rows; ++r) {
        for (std::int64_t c = 0; c < cols; ++c) m(r, c) = stream.next();
    }
    return m;
}

inline double max_component_diff(const QuatMatrix& a, const QuatMatrix& b) {
    double worst = 0.0;
    for (std::int64_t r = 0; r < a.rows(); ++r) {
        for (std::int64_t c = 0; c < a.cols(); ++c) {
            const Quaternion d = a(r, c) - b(r, c);
            worst = std::max({worst, std::fabs(d.w), std::fabs(d.x),
                              std::fabs(d.y), std::fabs(d.z)});
        }
    }
    return worst;
}

inline bool approx(Quaternion a, Quaternion b, double tol = 1e-13) {
    return abs(a - b) <= tol;
}

}  // namespace qtensor::testing
