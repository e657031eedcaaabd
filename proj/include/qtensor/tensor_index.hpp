#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "qtensor/errors.hpp"

namespace qtensor {

// Mode extents (I_1, ..., I_N). Nonempty, every extent >= 1.
class Shape {
public:
    Shape() = default;
    Shape(std::initializer_list<std::int64_t> extents)
        : Shape(std::vector<std::int64_t>(extents)) {}
    explicit Shape(std::vector<std::int64_t> extents);

    std::size_t order() const { return extents_.size(); }
    std::int64_t extent(std::size_t mode) const { return extents_[mode]; }
    std::int64_t product() const;
    const std::vector<std::int64_t>& extents() const { return extents_; }

    friend bool operator==(const Shape& a, const Shape& b) {
        return a.extents_ == b.extents_;
    }
    friend bool operator!=(const Shape& a, const Shape& b) { return !(a == b); }

private:
    std::vector<std::int64_t> extents_;
};

std::string to_string(const Shape& s);

// 1-based coordinates, one per mode.
using MultiIndex = std::vector<std::int64_t>;

// h(i_1,...,i_N) = i_1 + sum_{k>=2} (i_k - 1) prod_{s<k} I_s.
// First index varies fastest; result lies in [1, prod I_s].
std::int64_t linearize(const MultiIndex& index, const Shape& shape);

// Closed-form inverse of linearize: peels p_N first via
// p_t = floor((i - 1 - sum_{k>t} (p_k - 1) prod_{s<k} I_s) / prod_{s<t} I_s) + 1
// and recovers p_1 as the remainder.
MultiIndex delinearize(std::int64_t index, const Shape& shape);

}  // namespace qtensor
