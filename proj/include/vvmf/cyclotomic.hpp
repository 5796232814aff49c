#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vvmf/numtheory.hpp"

namespace vvmf {

// Element of Q/Z, kept in [0,1).
class QmodZ {
public:
    QmodZ() = default;
    QmodZ(const Rat& r);
    QmodZ(long n, long d) : QmodZ(Rat(n, d)) {}

    const Rat& value() const { return v_; }
    QmodZ operator+(const QmodZ& o) const { return QmodZ(v_ + o.v_); }
    QmodZ operator-(const QmodZ& o) const { return QmodZ(v_ - o.v_); }
    QmodZ operator-() const { return QmodZ(-v_); }
    QmodZ operator*(long k) const { return QmodZ(v_ * k); }
    bool operator==(const QmodZ& o) const { return v_ == o.v_; }
    bool operator!=(const QmodZ& o) const { return v_ != o.v_; }
    bool operator<(const QmodZ& o) const { return v_ < o.v_; }

private:
    Rat v_ = 0;
};

std::ostream& operator<<(std::ostream& os, const QmodZ& x);

// Element of Q(zeta_M) in the power basis 1, z, ..., z^{phi(M)-1} modulo Phi_M,
// stored as an integer numerator vector over a positive common denominator.
class Cyclotomic {
public:
    Cyclotomic();
    Cyclotomic(int n) : Cyclotomic(static_cast<long>(n)) {}
    Cyclotomic(long n);
    Cyclotomic(const Rat& r);
    explicit Cyclotomic(int conductor, const std::vector<Rat>& coeffs);

    static Cyclotomic zero(int conductor = 1);
    static Cyclotomic zeta(long conductor, long k = 1);
    static Cyclotomic from_int(long n) { return Cyclotomic(n); }
    // sum_k g[k] z^k / den with len(g) = conductor
    static Cyclotomic from_group_ring(int M, const std::vector<Int>& g, const Int& den = 1);

    int conductor() const { return M_; }
    int degree() const;
    std::vector<Rat> coeffs() const;
    Rat coeff(int i) const;

    bool is_zero() const;
    bool is_rational() const;
    std::optional<Rat> as_rational() const;

    Cyclotomic embed(int M) const;
    Cyclotomic conj() const;
    Cyclotomic galois(long a) const;
    Cyclotomic inverse() const;
    Cyclotomic pow(long e) const;
    // Representation in the smallest conductor containing the value.
    Cyclotomic minimized() const;

    std::complex<double> to_complex() const;
    std::string str() const;
    static Cyclotomic parse(const std::string& s);

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }
    Cyclotomic operator-() const;

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

private:
    int M_ = 1;
    std::vector<Int> num_;
    Int den_ = 1;

    void normalize();
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x);

// Power-basis integer coefficients of sum_k g[k] z^k in Q(zeta_M), len(g) = M.
std::vector<Int> cyclotomic_reduce(int M, const std::vector<Int>& g);
int cyclotomic_degree(int M);

// e(r) = exp(2 pi i r)
Cyclotomic root_of_unity(const QmodZ& r);
inline Cyclotomic e(const Rat& r) { return root_of_unity(QmodZ(r)); }

// Square root of a nonzero integer built from quadratic Gauss sums; sqrt(-n) = i sqrt(n).
Cyclotomic sqrt_int(long n);

}  // namespace vvmf
