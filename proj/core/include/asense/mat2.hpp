#pragma once

#include <cmath>

namespace asense {

/// Real 2x2 matrix, row-major.
struct Mat2 {
    double a11{0.0};
    double a12{0.0};
    double a21{0.0};
    double a22{0.0};

    static constexpr Mat2 identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 zero() noexcept { return {}; }

    [[nodiscard]] constexpr double trace() const noexcept { return a11 + a22; }
    [[nodiscard]] constexpr double det() const noexcept { return a11 * a22 - a12 * a21; }
    [[nodiscard]] constexpr Mat2 transpose() const noexcept { return {a11, a21, a12, a22}; }

    [[nodiscard]] bool isFinite() const noexcept {
        return std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a21) && std::isfinite(a22);
    }

    /// Largest absolute entry.
    [[nodiscard]] double maxAbs() const noexcept {
        return std::fmax(std::fmax(std::fabs(a11), std::fabs(a12)), std::fmax(std::fabs(a21), std::fabs(a22)));
    }

    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

constexpr Mat2 operator+(const Mat2& l, const Mat2& r) noexcept {
    return {l.a11 + r.a11, l.a12 + r.a12, l.a21 + r.a21, l.a22 + r.a22};
}

constexpr Mat2 operator-(const Mat2& l, const Mat2& r) noexcept {
    return {l.a11 - r.a11, l.a12 - r.a12, l.a21 - r.a21, l.a22 - r.a22};
}

constexpr Mat2 operator*(double s, const Mat2& m) noexcept {
    return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
}

constexpr Mat2 operator*(const Mat2& l, const Mat2& r) noexcept {
    return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
            l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
}

}  // namespace asense
