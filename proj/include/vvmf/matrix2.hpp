#pragma once

#include <array>
#include <ostream>

#include "vvmf/numtheory.hpp"

namespace vvmf {

// Integral 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    long a = 1, b = 0, c = 0, d = 1;

    long det() const { return a * d - b * c; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    // inverse in SL2(Z)
    Mat2 inv() const { return {d, -b, -c, a}; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator<(const Mat2& o) const {
        return std::array<long, 4>{a, b, c, d} < std::array<long, 4>{o.a, o.b, o.c, o.d};
    }
};

// Rational 2x2 matrix.
struct QMat2 {
    Rat a = 1, b = 0, c = 0, d = 1;

    QMat2() = default;
    QMat2(Rat a_, Rat b_, Rat c_, Rat d_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
    QMat2(const Mat2& m) : a(m.a), b(m.b), c(m.c), d(m.d) {}

    Rat det() const { return a * d - b * c; }
    QMat2 operator*(const QMat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    QMat2 inv() const {
        Rat D = det();
        return {d / D, -b / D, -c / D, a / D};
    }
    QMat2 scaled(const Rat& s) const { return {a * s, b * s, c * s, d * s}; }
    bool operator==(const QMat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator!=(const QMat2& o) const { return !(*this == o); }
};

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
}

inline std::ostream& operator<<(std::ostream& os, const QMat2& m) {
    return os << "[[" << m.a.get_str() << "," << m.b.get_str() << "],[" << m.c.get_str() << "," << m.d.get_str()
              << "]]";
}

// Common shapes.
inline QMat2 n_up(const Rat& b) { return {1, b, 0, 1}; }
inline QMat2 n_low(const Rat& c) { return {1, 0, c, 1}; }
inline QMat2 m_diag(const Rat& t1, const Rat& t2) { return {t1, 0, 0, t2}; }
inline QMat2 m_sl(const Rat& a) { return {a, 0, 0, 1 / a}; }
inline QMat2 w_mat() { return {0, 1, -1, 0}; }

}  // namespace vvmf
