#include "vvmf/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vvmf {

LaurentSeries::LaurentSeries(int min_exp, std::vector<Cyclotomic> coeffs, int order)
    : min_(min_exp), order_(order), c_(std::move(coeffs)) {
    if (order_ < min_ - 1) throw std::invalid_argument("LaurentSeries: order below minimal exponent");
    c_.resize(static_cast<std::size_t>(order_ - min_ + 1), Cyclotomic(0L));
}

Cyclotomic LaurentSeries::coeff(int n) const {
    if (n > order_) throw std::out_of_range("LaurentSeries: coefficient beyond truncation order");
    if (n < min_) return Cyclotomic(0L);
    return c_[n - min_];
}

void LaurentSeries::set(int n, const Cyclotomic& c) {
    if (n > order_ || n < min_) throw std::out_of_range("LaurentSeries: exponent outside stored range");
    c_[n - min_] = c;
}

LaurentSeries LaurentSeries::truncated(int order) const {
    if (order > order_) throw std::out_of_range("LaurentSeries: cannot extend truncation order");
    std::vector<Cyclotomic> c(c_.begin(), c_.begin() + std::max(0, order - min_ + 1));
    return LaurentSeries(min_, c, std::max(order, min_ - 1));
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    int lo = std::min(min_, o.min_), hi = std::min(order_, o.order_);
    LaurentSeries r(lo, {}, std::max(hi, lo - 1));
    for (int n = lo; n <= hi; ++n) r.set(n, coeff(n) + o.coeff(n));
    return r;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + o * Cyclotomic(-1L); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    int lo = min_ + o.min_;
    int hi = std::min(min_ + o.order_, o.min_ + order_);
    LaurentSeries r(lo, {}, std::max(hi, lo - 1));
    for (int i = min_; i <= order_; ++i) {
        if (c_[i - min_].is_zero()) continue;
        for (int j = o.min_; j <= o.order_ && i + j <= hi; ++j) {
            if (o.c_[j - o.min_].is_zero()) continue;
            r.c_[i + j - lo] += c_[i - min_] * o.c_[j - o.min_];
        }
    }
    return r;
}

LaurentSeries LaurentSeries::operator*(const Cyclotomic& c) const {
    LaurentSeries r = *this;
    for (auto& x : r.c_) x *= c;
    return r;
}

LaurentSeries LaurentSeries::rescaled(const Cyclotomic& c) const {
    LaurentSeries r = *this;
    for (int n = min_; n <= order_; ++n) r.c_[n - min_] *= c.pow(n);
    return r;
}

bool LaurentSeries::eq_to_order(const LaurentSeries& o, int n) const { return first_difference(o, n) > n; }

int LaurentSeries::first_difference(const LaurentSeries& o, int n) const {
    for (int k = std::min(min_, o.min_); k <= n; ++k)
        if (coeff(k) != o.coeff(k)) return k;
    return n + 1;
}

std::string LaurentSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (int n = min_; n <= order_; ++n) {
        const Cyclotomic& c = c_[n - min_];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c.minimized().str() << ")";
        if (n != 0) os << "*X^" << n;
    }
    if (first) os << "0";
    os << " + O(X^" << order_ + 1 << ")";
    return os.str();
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.empty() || b.empty()) return {};
    Polynomial r(a.size() + b.size() - 1, Cyclotomic(0L));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.empty() || den_[0].is_zero())
        throw std::domain_error("RationalFunction: denominator must not vanish at 0");
}

LaurentSeries RationalFunction::expand(int order) const {
    if (order < 0) throw std::invalid_argument("expand: negative order");
    LaurentSeries r(0, {}, order);
    Cyclotomic inv0 = den_[0].inverse();
    for (int n = 0; n <= order; ++n) {
        Cyclotomic s = n < static_cast<int>(num_.size()) ? num_[n] : Cyclotomic(0L);
        for (int j = 1; j <= n && j < static_cast<int>(den_.size()); ++j) s -= den_[j] * r.coeff(n - j);
        r.set(n, s * inv0);
    }
    return r;
}

}  // namespace vvmf
