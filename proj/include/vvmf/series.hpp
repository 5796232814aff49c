#pragma once

#include <string>
#include <vector>

#include "vvmf/cyclotomic.hpp"

namespace vvmf {

// Laurent series in X known exactly for exponents min_exp() .. order() inclusive.
class LaurentSeries {
public:
    LaurentSeries() = default;
    LaurentSeries(int min_exp, std::vector<Cyclotomic> coeffs, int order);

    static LaurentSeries zero(int order) { return LaurentSeries(0, {}, order); }

    int min_exp() const { return min_; }
    int order() const { return order_; }
    // Coefficient of X^n; reading past the truncation order is an error.
    Cyclotomic coeff(int n) const;
    void set(int n, const Cyclotomic& c);

    LaurentSeries truncated(int order) const;
    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator*(const Cyclotomic& c) const;
    // f(cX)
    LaurentSeries rescaled(const Cyclotomic& c) const;

    // Coefficientwise equality on exponents up to n.
    bool eq_to_order(const LaurentSeries& o, int n) const;
    // First exponent <= n where the two series differ, or n+1.
    int first_difference(const LaurentSeries& o, int n) const;

    std::string str() const;

private:
    int min_ = 0;
    int order_ = -1;
    std::vector<Cyclotomic> c_;
};

using Polynomial = std::vector<Cyclotomic>;

Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

// num/den with den(0) != 0.
class RationalFunction {
public:
    RationalFunction(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    LaurentSeries expand(int order) const;

private:
    Polynomial num_, den_;
};

}  // namespace vvmf
