#pragma once

#include <cmath>
#include <string>

#include "qtensor/errors.hpp"

namespace qtensor {

// A real quaternion w + x i + y j + z k with i^2 = j^2 = k^2 = ijk = -1.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}
    constexpr explicit Quaternion(double real) : w(real) {}
};

enum class ImaginaryUnit { i, j, k };

constexpr Quaternion unit(ImaginaryUnit eta) {
    switch (eta) {
        case ImaginaryUnit::i: return {0.0, 1.0, 0.0, 0.0};
        case ImaginaryUnit::j: return {0.0, 0.0, 1.0, 0.0};
        default: return {0.0, 0.0, 0.0, 1.0};
    }
}

constexpr Quaternion operator+(Quaternion a, Quaternion b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}

constexpr Quaternion operator-(Quaternion a, Quaternion b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}

constexpr Quaternion operator-(Quaternion a) { return {-a.w, -a.x, -a.y, -a.z}; }

constexpr Quaternion& operator+=(Quaternion& a, Quaternion b) {
    a = a + b;
    return a;
}

constexpr Quaternion& operator-=(Quaternion& a, Quaternion b) {
    a = a - b;
    return a;
}

// Hamilton product; associative and distributive but not commutative.
constexpr Quaternion operator*(Quaternion a, Quaternion b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion operator*(double s, Quaternion a) {
    return {s * a.w, s * a.x, s * a.y, s * a.z};
}

constexpr Quaternion operator*(Quaternion a, double s) { return s * a; }

constexpr Quaternion operator/(Quaternion a, double s) {
    return {a.w / s, a.x / s, a.y / s, a.z / s};
}

constexpr bool operator==(Quaternion a, Quaternion b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
}

constexpr bool operator!=(Quaternion a, Quaternion b) { return !(a == b); }

// Component negation only; conj(conj(q)) == q bit-exactly.
constexpr Quaternion conj(Quaternion q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double norm_sq(Quaternion q) {
    return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

inline double abs(Quaternion q) { return std::sqrt(norm_sq(q)); }

// eta-conjugation -eta * conj(q) * eta: negates exactly the eta component.
// eta_conj(i, i) = -i, eta_conj(j, i) = j, eta_conj(k, i) = k, and cyclically.
constexpr Quaternion eta_conj(Quaternion q, ImaginaryUnit eta) {
    Quaternion e = unit(eta);
    return -(e * conj(q) * e);
}

// Division-algebra inverse conj(q)/|q|^2. No scaling guard: inputs near
// overflow are out of scope.
inline Quaternion inverse(Quaternion q) {
    double n2 = norm_sq(q);
    if (n2 == 0.0) {
        throw DomainError("quaternion inverse of zero");
    }
    return conj(q) / n2;
}

constexpr bool is_zero(Quaternion q) {
    return q.w == 0.0 && q.x == 0.0 && q.y == 0.0 && q.z == 0.0;
}

// "w+xi+yj+zk" with explicit signs, 17 significant digits.
std::string to_string(Quaternion q);

// Accepts the same grammar with optional whitespace around signs and terms.
Quaternion parse_quaternion(const std::string& text);

const char* to_string(ImaginaryUnit eta);
ImaginaryUnit parse_imaginary_unit(const std::string& text);

}  // namespace qtensor
