#include "vvmf/padic.hpp"

#include <stdexcept>

namespace vvmf {

namespace {

void require_prime(long p) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
}

bool integral(const Rat& x, long p) { return x == 0 || ord_p(x, p) >= 0; }

}  // namespace

bool is_square_unit(const Rat& u, long p) {
    require_prime(p);
    if (u == 0 || ord_p(u, p) != 0) throw std::domain_error("is_square_unit: not a unit");
    if (p == 2) return reduce_mod(u, 8) == 1;
    return jacobi(reduce_mod(u, p), p) == 1;
}

bool is_padic_square(const Rat& u, long p) {
    if (u == 0) return false;
    int e = ord_p(u, p);
    return e % 2 == 0 && is_square_unit(unit_part(u, p), p);
}

int min_ord(const QMat2& g, long p) {
    bool any = false;
    int m = 0;
    for (const Rat* x : {&g.a, &g.b, &g.c, &g.d}) {
        if (*x == 0) continue;
        int v = ord_p(*x, p);
        if (!any || v < m) m = v;
        any = true;
    }
    if (!any) throw std::domain_error("min_ord: zero matrix");
    return m;
}

bool in_K(const QMat2& g, long p) {
    for (const Rat* x : {&g.a, &g.b, &g.c, &g.d})
        if (!integral(*x, p)) return false;
    Rat det = g.det();
    return det != 0 && ord_p(det, p) == 0 && is_square_unit(det, p);
}

bool in_Q(const QMat2& g, long p) { return is_padic_square(g.det(), p); }

bool in_K0(const QMat2& g, long p) { return in_K(g, p) && (g.c == 0 || ord_p(g.c, p) >= 1); }

CartanForm cartan(const QMat2& g, long p) {
    require_prime(p);
    if (!in_Q(g, p)) throw std::domain_error("cartan: determinant is not a p-adic square");
    const QMat2 W = w_mat(), I;
    int m = min_ord(g, p);
    auto at = [&](const Rat& x) { return x != 0 && ord_p(x, p) == m; };
    // g = L^{-1} h R^{-1} with h = L g R carrying a pivot in the corner
    QMat2 L = I, R = I;
    if (at(g.a)) {
    } else if (at(g.b)) {
        R = W;
    } else if (at(g.c)) {
        L = W;
    } else {
        L = W;
        R = W;
    }
    QMat2 h = L * g * R;
    Rat c = h.c / h.a, b = h.b / h.a;
    Rat dd = h.det() / h.a;
    int k = ord_p(h.a, p), l = ord_p(dd, p);
    Rat u = unit_part(h.a, p), v = unit_part(dd, p);
    // h = n_low(c) diag(a, dd) n_up(b), diag(a, dd) = m(p^k, p^l) diag(u, v)
    CartanForm F;
    F.k1 = L.inv() * n_low(c);
    F.k = k;
    F.l = l;
    F.k2 = m_diag(u, v) * n_up(b) * R.inv();
    if ((k + l) % 2 != 0 || k > l || !in_K(F.k1, p) || !in_K(F.k2, p))
        throw std::logic_error("cartan: decomposition failed");
    return F;
}

IwasawaForm iwasawa(const QMat2& g, long p) {
    require_prime(p);
    if (!in_Q(g, p)) throw std::domain_error("iwasawa: determinant is not a p-adic square");
    IwasawaForm F;
    int b;
    if (g.c == 0)
        b = ord_p(g.d, p);
    else if (g.d == 0)
        b = ord_p(g.c, p);
    else
        b = std::min(ord_p(g.c, p), ord_p(g.d, p));
    Rat pb = rat_pow(Rat(p), b);
    Rat c = g.c / pb, d = g.d / pb;
    QMat2 k0 = (d != 0 && ord_p(d, p) == 0) ? QMat2(1 / d, 0, c, d) : QMat2(0, -1 / c, c, d);
    QMat2 t = g * k0.inv();  // upper triangular [[alpha, beta], [0, p^b]]
    Rat alpha = t.a;
    int a = ord_p(alpha, p);
    Rat u = unit_part(alpha, p);
    F.a = a;
    F.b = b;
    F.n = n_up(t.b / pb);
    F.m = m_diag(rat_pow(Rat(p), a), pb);
    F.k = m_diag(u, 1) * k0;
    if (t.c != 0 || t.d != pb || !in_K(F.k, p)) throw std::logic_error("iwasawa: decomposition failed");
    return F;
}

std::vector<QMat2> coset_reps(long p, int k, int l) {
    require_prime(p);
    if (k > l) throw std::invalid_argument("coset_reps: need k <= l");
    if ((k + l) % 2 != 0) throw std::domain_error("coset_reps: k + l must be even");
    const Rat pk = rat_pow(Rat(p), k);
    const QMat2 s = m_diag(pk, pk);
    if (k == l) return {s};
    std::vector<QMat2> out;
    const int h = l - k;
    for (int e = 1; e <= h - 1; ++e) {
        long pe = ipow(p, static_cast<unsigned>(e));
        for (long b = 1; b < pe; ++b)
            if (b % p != 0) out.push_back(s * QMat2(Rat(pe), Rat(b), 0, Rat(ipow(p, static_cast<unsigned>(h - e)))));
    }
    long ph = ipow(p, static_cast<unsigned>(h));
    for (long b = 0; b < ph; ++b) out.push_back(s * QMat2(Rat(ph), Rat(b), 0, 1));
    out.push_back(s * m_diag(1, Rat(ph)));
    return out;
}

std::vector<QMat2> k0p_reps(long p) {
    require_prime(p);
    std::vector<QMat2> out;
    for (long j = 0; j < p; ++j) out.push_back(n_up(Rat(-j)) * w_mat());
    out.push_back(QMat2());
    return out;
}

}  // namespace vvmf
