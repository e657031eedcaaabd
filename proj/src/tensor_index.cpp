#include "qtensor/tensor_index.hpp"

#include <string>

namespace qtensor {

Shape::Shape(std::vector<std::int64_t> extents) : extents_(std::move(extents)) {
    if (extents_.empty()) {
        throw DimensionMismatch("shape must have at least one mode");
    }
    for (std::int64_t e : extents_) {
        if (e < 1) {
            throw DimensionMismatch("shape extents must be positive, got " +
                                    std::to_string(e));
        }
    }
}

std::int64_t Shape::product() const {
    std::int64_t p = 1;
    for (std::int64_t e : extents_) p *= e;
    return p;
}

std::string to_string(const Shape& s) {
    std::string out;
    for (std::size_t t = 0; t < s.order(); ++t) {
        if (t) out += "x";
        out += std::to_string(s.extent(t));
    }
    return out;
}

std::int64_t linearize(const MultiIndex& index, const Shape& shape) {
    if (index.size() != shape.order()) {
        throw IndexOutOfRange("multi-index order " + std::to_string(index.size()) +
                              " does not match shape order " +
                              std::to_string(shape.order()));
    }
    std::int64_t value = 0;
    std::int64_t stride = 1;
    for (std::size_t t = 0; t < shape.order(); ++t) {
        if (index[t] < 1 || index[t] > shape.extent(t)) {
            throw IndexOutOfRange("index " + std::to_string(index[t]) +
                                  " out of range for extent " +
                                  std::to_string(shape.extent(t)));
        }
        value += (index[t] - 1) * stride;
        stride *= shape.extent(t);
    }
    return value + 1;
}

MultiIndex delinearize(std::int64_t index, const Shape& shape) {
    const std::int64_t total = shape.product();
    if (index < 1 || index > total) {
        throw IndexOutOfRange("linear index " + std::to_string(index) +
                              " out of range [1, " + std::to_string(total) + "]");
    }
    const std::size_t order = shape.order();
    std::vector<std::int64_t> prefix(order, 1);  // prod_{s<t} I_s
    for (std::size_t t = 1; t < order; ++t) {
        prefix[t] = prefix[t - 1] * shape.extent(t - 1);
    }
    MultiIndex p(order);
    std::int64_t rem = index - 1;
    for (std::size_t t = order; t-- > 1;) {
        p[t] = rem / prefix[t] + 1;
        rem -= (p[t] - 1) * prefix[t];
    }
    p[0] = rem + 1;
    return p;
}

}  // namespace qtensor
