#pragma once

#include <string>
#include <vector>

#include "vvmf/fqm.hpp"
#include "vvmf/matrix2.hpp"

namespace vvmf {

// Linear operator on C[D] in the basis e_x, x = 0 .. n-1, stored as
// scalar * (matrix over Z[zeta_N]) / den with entries kept in group-ring form.
// entry(i, j) is the coefficient of e_i in the image of e_j.
class GroupRingOperator {
public:
    GroupRingOperator() = default;
    static GroupRingOperator identity(long n);
    static GroupRingOperator zero(long n);
    static GroupRingOperator from_entries(long n, const std::vector<Cyclotomic>& row_major);
    // sum_j c_j e_{perm(j)}
    static GroupRingOperator monomial(const std::vector<long>& perm, const std::vector<Cyclotomic>& c);

    long dim() const { return n_; }
    Cyclotomic entry(long i, long j) const;
    std::vector<Cyclotomic> column(long j) const;
    std::vector<Cyclotomic> entries() const;

    GroupRingOperator operator*(const GroupRingOperator& o) const;
    GroupRingOperator operator+(const GroupRingOperator& o) const;
    GroupRingOperator operator-(const GroupRingOperator& o) const;
    GroupRingOperator scaled(const Cyclotomic& c) const;
    GroupRingOperator adjoint() const;
    bool is_zero() const;
    bool operator==(const GroupRingOperator& o) const;
    bool operator!=(const GroupRingOperator& o) const { return !(*this == o); }

    // Right multiplication by diag(e(k_j / N)) and by (e(-(i, j)/N))_{ij}-type matrices,
    // used for fast evaluation of Weil matrices.
    void mul_right_diag_roots(int N, const std::vector<long>& k);
    void mul_right_root_matrix(int N, const std::vector<std::vector<long>>& k);
    void mul_scalar(const Cyclotomic& c) { scalar_ *= c; }

private:
    long n_ = 0;
    int N_ = 1;
    Cyclotomic scalar_ = Cyclotomic(1L);
    Int den_ = 1;
    std::vector<std::vector<Int>> g_;  // n*n entries, each of length N_

    void retarget(int N);
    void canonicalize();
    GroupRingOperator folded() const;
};

std::ostream& operator<<(std::ostream& os, const GroupRingOperator& A);

struct WordToken {
    char gen;    // 'S' or 'T'
    long power;  // 1 for S
};

// gamma = (-1)^negate * token_1 * token_2 * ...
struct SL2Word {
    bool negate = false;
    std::vector<WordToken> tokens;
};

SL2Word sl2_word(const Mat2& g);
Mat2 evaluate(const SL2Word& w);
std::string to_string(const SL2Word& w);

inline const Mat2 S_MAT{0, -1, 1, 0};
inline const Mat2 T_MAT{1, 1, 0, 1};

GroupRingOperator rho_T(const FQM& D, long k = 1);
GroupRingOperator rho_S(const FQM& D);
GroupRingOperator rho_Z(const FQM& D);
// Evaluation along the canonical word of g.
GroupRingOperator rho(const FQM& D, const Mat2& g);
// Memoized variant keyed by (form, matrix).
GroupRingOperator rho_cached(const FQM& D, const Mat2& g);
GroupRingOperator rho_inv(const FQM& D, const Mat2& g);

// Extension to G^N at a prime p; every function returns rho^{-1}(x).
GroupRingOperator rho_inv_scalar(const FQM& D, long p, int k);           // x = m(p^-k, p^-k)
GroupRingOperator rho_inv_diag(const FQM& D, long p, int k, int l);      // x = m(p^-k, p^-l), k <= l
GroupRingOperator rho_inv_product(const FQM& D, const Mat2& g1, long p, int k, int l, const Mat2& g2);
// x with entries in Z[1/p] and det(x) an even power of p, factored through Smith normal form.
GroupRingOperator rho_inv_extended(const FQM& D, long p, const QMat2& x);

// Local Weil representation on C[D_p]; D_p must be a p-group.
GroupRingOperator omega_n(const FQM& Dp, long p, const Rat& b);
GroupRingOperator omega_w(const FQM& Dp);
GroupRingOperator omega_m(const FQM& Dp, long p, const Rat& a);
GroupRingOperator omega_nlow(const FQM& Dp, long p, const Rat& c);
// Any element of SL2(Z_p), through its reduction modulo the level of D_p.
GroupRingOperator omega_sl2(const FQM& Dp, long p, const QMat2& g);
// k in K_p: chi(t) omega(t^{-1} k) with t the least positive square root of det k modulo the level.
GroupRingOperator omega_k(const FQM& Dp, long p, const QMat2& k);

// Lift of a matrix of determinant 1 modulo M to SL2(Z).
Mat2 lift_sl2(long a, long b, long c, long d, long M);

}  // namespace vvmf
