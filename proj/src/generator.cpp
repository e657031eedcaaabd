#include "qtensor/generator.hpp"

namespace qtensor {

namespace {

std::uint64_t split_seed(SplitMix64& master) { return master.next(); }

}  // namespace

QuaternionStream::QuaternionStream(std::uint64_t seed)
    : w_(0), x_(0), y_(0), z_(0) {
    SplitMix64 master(seed);
    w_ = SplitMix64(split_seed(master));
    x_ = SplitMix64(split_seed(master));
    y_ = SplitMix64(split_seed(master));
    z_ = SplitMix64(split_seed(master));
}

Quaternion QuaternionStream::next() {
    Quaternion q;
    q.w = w_.next_symmetric();
    q.x = x_.next_symmetric();
    q.y = y_.next_symmetric();
    q.z = z_.next_symmetric();
    return q;
}

QuatTensor generate_uniform(const Shape& left, const Shape& right,
                            std::uint64_t seed) {
    QuatTensor t(left, right);
    QuaternionStream stream(seed);
    for (Quaternion& q : t.data()) q = stream.next();
    return t;
}

QuatTensor generate_rank(const Shape& left, const Shape& right, std::int64_t rank,
                         std::uint64_t seed) {
    if (rank < 1) {
        throw DimensionMismatch("generator rank must be positive");
    }
    const std::int64_t m = left.product();
    const std::int64_t n = right.product();
    QuaternionStream stream(seed);
    QuatMatrix g(m, rank);
    for (std::int64_t r = 0; r < m; ++r) {
        for (std::int64_t c = 0; c < rank; ++c) g(r, c) = stream.next();
    }
    QuatMatrix h(rank, n);
    for (std::int64_t r = 0; r < rank; ++r) {
        for (std::int64_t c = 0; c < n; ++c) h(r, c) = stream.next();
    }
    return unflatten(matmul(g, h), left, right);
}

QuatTensor generate_eta_hermitian(const Shape& shape, ImaginaryUnit eta,
                                  std::uint64_t seed,
                                  std::optional<std::int64_t> rank) {
    QuatTensor t = rank ? generate_rank(shape, shape, *rank, seed)
                        : generate_uniform(shape, shape, seed);
    return 0.5 * (t + eta_conj_transpose(t, eta));
}

}  // namespace qtensor
