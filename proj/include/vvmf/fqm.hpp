#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vvmf/cyclotomic.hpp"

namespace vvmf {

using IntMatrix = std::vector<std::vector<long>>;

// Even nondegenerate lattice given by its Gram matrix.
struct LatticeInput {
    IntMatrix gram;
    int rank = 0;
    long det = 0;
    int b_plus = 0;
    int b_minus = 0;

    static LatticeInput from_gram(const IntMatrix& gram);
    bool positive_definite() const { return b_minus == 0; }
};

struct SmithForm {
    IntMatrix U, V;          // unimodular, U * G * V = diag(d)
    std::vector<long> d;
};

SmithForm smith_normal_form(const IntMatrix& G);

// Finite quadratic module Z/n_1 x ... x Z/n_r with a Q/Z-valued quadratic form.
// Elements are encoded as mixed-radix indices 0 .. order()-1 with index 0 the identity.
class FQM {
public:
    // qvals[i] = q(g_i), bil[i][j] = (g_i, g_j) mod 1
    FQM(std::vector<long> orders, std::vector<Rat> qvals, std::vector<std::vector<Rat>> bil);

    static FQM from_gram(const IntMatrix& gram);

    const std::vector<long>& orders() const { return orders_; }
    long order() const { return size_; }
    long level() const { return level_; }
    // Signature mod 8, read off from Milgram's formula.
    int signature() const { return sig_; }
    std::vector<long> elementary_divisors() const;

    std::vector<long> coords(long x) const;
    long index(const std::vector<long>& c) const;
    long add(long x, long y) const;
    long neg(long x) const;
    long smul(long k, long x) const;
    long element_order(long x) const;

    QmodZ q(long x) const { return qtab_[x]; }
    QmodZ bil(long x, long y) const;

    // sum_x e(d q(x))
    Cyclotomic gauss_sum(long d = 1) const;
    // g_n / g; defined for gcd(n, level) = 1 and odd order
    int chi(long n) const;
    bool is_anisotropic() const;
    // e(sig/8) = g / sqrt(|D|)
    Cyclotomic weil_index() const;

    // Lattice data when built from a Gram matrix.
    bool has_lattice() const { return !gram_.empty(); }
    const IntMatrix& gram() const { return gram_; }
    // Class in D of the dual vector G^{-1} z.
    long class_of_dual(const std::vector<long>& z) const;

    // Textual key of the presentation, used for memoization.
    const std::string& key() const { return key_; }

private:
    std::vector<long> orders_;
    std::vector<Rat> qgen_;
    std::vector<std::vector<Rat>> bgen_;
    long size_ = 1;
    long level_ = 1;
    int sig_ = 0;
    std::vector<QmodZ> qtab_;
    IntMatrix gram_;
    IntMatrix smithU_;
    std::vector<long> smith_d_;
    std::vector<int> kept_;
    std::string key_;

    void finish();
};

// D = D_p + D_p^perp, with the index maps of both summands into D.
struct PrimarySplit {
    long p = 0;
    std::shared_ptr<FQM> part;
    std::shared_ptr<FQM> complement;
    std::vector<long> part_to_D;
    std::vector<long> complement_to_D;
    // D index -> (part index, complement index)
    std::vector<std::pair<long, long>> D_to_pair;
};

PrimarySplit p_part(const FQM& D, long p);

long ord_p_of(long n, long p);

}  // namespace vvmf
