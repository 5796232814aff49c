#pragma once

#include <vector>

#include "vvmf/matrix2.hpp"

namespace vvmf {

// p-adic predicates and decompositions on rational 2x2 matrices.

// u must be a p-adic unit.
bool is_square_unit(const Rat& u, long p);
// u in (Q_p^x)^2
bool is_padic_square(const Rat& u, long p);

int min_ord(const QMat2& g, long p);
// entries p-integral and det a square unit
bool in_K(const QMat2& g, long p);
// det a nonzero p-adic square
bool in_Q(const QMat2& g, long p);
// in K_p with p | c
bool in_K0(const QMat2& g, long p);

// g = k1 m(p^k, p^l) k2, k <= l, k1 and k2 in K_p.
struct CartanForm {
    QMat2 k1;
    int k = 0, l = 0;
    QMat2 k2;
};

CartanForm cartan(const QMat2& g, long p);

// g = n m k with n upper unipotent, m = m(p^a, p^b), k in K_p.
struct IwasawaForm {
    QMat2 n, m, k;
    int a = 0, b = 0;
};

IwasawaForm iwasawa(const QMat2& g, long p);

// Representatives of K_p m(p^k, p^l) K_p / K_p.
std::vector<QMat2> coset_reps(long p, int k, int l);
// Representatives of K_p / K_0(p): T^{-j} w for j mod p, then the identity.
std::vector<QMat2> k0p_reps(long p);

}  // namespace vvmf
