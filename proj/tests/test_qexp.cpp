#include "doctest.h"

#include <random>

#include "vvmf/padic.hpp"
#include "vvmf/qexp.hpp"
#include "vvmf/weil.hpp"

using namespace vvmf;

namespace {

const IntMatrix A2 = {{2, -1}, {-1, 2}};
const IntMatrix A2A2 = {{2, -1, 0, 0}, {-1, 2, 0, 0}, {0, 0, 2, -1}, {0, 0, -1, 2}};
const IntMatrix F15 = {{2, -1, 0, 0}, {-1, 2, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, -2}};
const IntMatrix C27 = {{2, 1}, {1, 14}};

// Number of x in L with q(x) = n, by direct enumeration of integer coordinates.
std::map<Rat, long> lattice_counts(const IntMatrix& G, long box) {
    const std::size_t m = G.size();
    std::map<Rat, long> out;
    std::vector<long> x(m, -box);
    for (;;) {
        long s = 0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) s += x[i] * G[i][j] * x[j];
        Rat n(s, 2);
        n.canonicalize();
        ++out[n];
        std::size_t i = 0;
        while (i < m && x[i] == box) x[i++] = -box;
        if (i == m) break;
        ++x[i];
    }
    return out;
}

VVQExpansion random_expansion(const IntMatrix& G, const Rat& bound, unsigned seed) {
    auto D = std::make_shared<const FQM>(FQM::from_gram(G));
    VVQExpansion f(D, 2, bound);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> c(-3, 3);
    for (long x = 0; x < D->order(); ++x) {
        for (Rat n = D->q(x).value(); n <= bound; n += 1) {
            long v = c(rng);
            if (v) f.add(x, n, Cyclotomic(v) * e(Rat(c(rng), 3)));
        }
    }
    return f;
}

std::vector<long> elements_with_q(const FQM& D, const Rat& q) {
    std::vector<long> out;
    for (long x = 0; x < D.order(); ++x)
        if (D.q(x) == QmodZ(q)) out.push_back(x);
    return out;
}

}  // namespace

TEST_CASE("theta series of A2") {
    auto f0 = theta_series(A2, 0);
    CHECK(f0.coeffs().size() == 1);
    CHECK(f0.coeff(0, 0) == Cyclotomic(1L));
    CHECK(f0.weight() == 1);

    auto f1 = theta_series(A2, 1);
    CHECK(f1.coeff(0, 0) == Cyclotomic(1L));
    CHECK(f1.coeff(0, 1) == Cyclotomic(6L));
    auto g = elements_with_q(f1.form(), Rat(1, 3));
    REQUIRE(g.size() == 2);
    for (long x : g) CHECK(f1.coeff(x, Rat(1, 3)) == Cyclotomic(3L));
    CHECK(f1.coeffs().size() == 4);

    // a^2 - ab + b^2 = 2 has no solutions; the norm-4/3 dual vectors are twice the minimal ones
    auto f2 = theta_series(A2, 2);
    CHECK(f2.coeff(0, 2).is_zero());
    for (long x : g) CHECK(f2.coeff(x, Rat(4, 3)) == Cyclotomic(3L));
    CHECK(f2.coeffs().size() == 6);
    CHECK_THROWS_AS(f2.coeff(0, 3), std::out_of_range);
    CHECK_THROWS_AS(f2.coeff(0, Rat(1, 3)), std::invalid_argument);

    CHECK_THROWS_AS(theta_series(F15, 2), std::invalid_argument);
    CHECK_THROWS_AS(theta_series({{2}}, 2), std::invalid_argument);
}

TEST_CASE("theta coefficients at zero against lattice enumeration") {
    for (const auto& G : {A2, A2A2, IntMatrix{{2, 1}, {1, 4}}}) {
        const Rat B = 6;
        auto f = theta_series(G, B);
        auto counts = lattice_counts(G, 7);
        for (auto [n, c] : counts) {
            if (n > B) continue;
            CHECK(f.coeff(0, n) == Cyclotomic(c));
        }
        // c(lambda, n) = c(-lambda, n)
        for (const auto& [k, v] : f.coeffs()) CHECK(f.coeff(f.form().neg(k.first), k.second) == v);
    }
}

TEST_CASE("serialization of expansions") {
    auto f = theta_series(A2, 1);
    auto tsv = f.to_tsv();
    CHECK(tsv.find("0\t0/1\t1 @1") != std::string::npos);
    CHECK(tsv.find("\t1/3\t3 @1") != std::string::npos);
    auto js = f.to_json();
    CHECK(js.find("\"weight\":1") != std::string::npos);
    CHECK(js.find("\"exponent\":\"1/3\"") != std::string::npos);
}

TEST_CASE("representatives of the double coset") {
    for (long p : {2L, 3L, 5L}) {
        for (auto [k, l] : {std::pair{0, 2}, std::pair{1, 3}, std::pair{0, 4}}) {
            auto reps = hecke_representatives({p, k, l});
            CHECK(reps.size() == coset_reps(p, k, l).size());
            for (const auto& M : reps) {
                CHECK(M.c == 0);
                CHECK(M.det() == rat_pow(Rat(p), -(k + l)));
            }
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = i + 1; j < reps.size(); ++j) {
                    QMat2 x = reps[i] * reps[j].inv();
                    bool integral = x.a.get_den() == 1 && x.b.get_den() == 1 && x.c.get_den() == 1 && x.d.get_den() == 1;
                    CHECK_FALSE(integral);
                }
        }
    }
}

TEST_CASE("explicit factorizations of the representatives") {
    FQM D = FQM::from_gram(A2);
    for (long p : {2L, 3L}) {
        const int k = 0, l = 2;
        QMat2 m = m_diag(rat_pow(Rat(p), -k), rat_pow(Rat(p), -l));
        for (int s = 1; s <= l - k - 1; ++s) {
            long ps = ipow(p, s);
            for (long b = 1; b < ps; ++b) {
                if (b % p == 0) continue;
                // r p^s + b t = 1
                long t = invmod(b, ps), r = (1 - b * t) / ps;
                QMat2 x = m_diag(rat_pow(Rat(p), k), rat_pow(Rat(p), k)) *
                          QMat2(Rat(ps), Rat(b), 0, Rat(ipow(p, l - k - s)));
                Mat2 A{r, -b, t, ps};
                Mat2 B{1, 0, -ipow(p, l - k - s) * t, 1};
                CHECK(QMat2(A) * m * QMat2(B) == x.inv());
                CHECK(rho_inv_product(D, A, p, k, l, B) == rho_inv_extended(D, p, x.inv()));
            }
        }
        const Mat2 W{0, 1, -1, 0};
        for (long b = 0; b < ipow(p, l - k); ++b) {
            QMat2 x = m_diag(rat_pow(Rat(p), k), rat_pow(Rat(p), k)) * QMat2(Rat(ipow(p, l - k)), Rat(b), 0, 1);
            Mat2 nb{1, -b, 0, 1};
            CHECK(QMat2(W) * m * QMat2(W.inv()) * QMat2(nb) == x.inv());
            CHECK(rho_inv_product(D, W, p, k, l, W.inv() * nb) == rho_inv_extended(D, p, x.inv()));
        }
    }
}

TEST_CASE("trivial double coset and zero expansion") {
    auto f = theta_series(A2, 9);
    CHECK(hecke_apply(f, {3, 0, 0}).agrees_with(f));
    CHECK(hecke_apply(f, {2, 0, 0}).agrees_with(f));
    auto zero = f.scaled(Cyclotomic(0L));
    CHECK(hecke_apply(zero, {2, 0, 2}).is_zero());
    CHECK(hecke_apply(zero, {3, 1, 3}).is_zero());
}

TEST_CASE("theta of A2 is an eigenform") {
    auto f12 = theta_series(A2, 12), f8 = theta_series(A2, 8);
    auto T12 = hecke_apply(f12, {2, 0, 2});
    CHECK(T12.bound() == 3);
    long nonzero = 0;
    for (const auto& kv : T12.coeffs()) nonzero += !kv.second.is_zero();
    CHECK(nonzero >= 5);
    Cyclotomic lam = eigenvalue_of(f12, T12);
    CHECK(lam == eigenvalue_of(f8, hecke_apply(f8, {2, 0, 2})));
    CHECK(lam.is_rational());

    for (long p : {3L, 5L, 7L}) {
        Rat B = p * p;
        auto f = theta_series(A2, B), g = theta_series(A2, 2 * B);
        Cyclotomic a = eigenvalue_of(f, hecke_apply(f, {p, 0, 2}));
        CHECK(a == eigenvalue_of(g, hecke_apply(g, {p, 0, 2})));
    }
    CHECK(eigenvalue_of(f12, f12) == Cyclotomic(1L));
    CHECK(eigenvalue_of(f12, f12.scaled(Cyclotomic(0L))) == Cyclotomic(0L));
    auto bad = f12;
    bad.add(0, 1, Cyclotomic(1L));
    CHECK_THROWS_AS(eigenvalue_of(f12, bad), not_an_eigenform);
}

TEST_CASE("scalar double cosets") {
    // T(m(p^-1, p^-3)) = chi(p) T(m(1, p^-2)) with the plain normalization
    auto f = theta_series(A2, 12);
    for (long p : {2L, 5L}) {
        if (p * p > 12) {
            auto g = theta_series(A2, Rat(p * p));
            auto lhs = hecke_apply(g, {p, 1, 3});
            auto rhs = hecke_apply(g, {p, 0, 2}).scaled(Cyclotomic(static_cast<long>(g.form().chi(p))));
            CHECK(lhs.agrees_with(rhs));
            continue;
        }
        auto lhs = hecke_apply(f, {p, 1, 3});
        auto rhs = hecke_apply(f, {p, 0, 2}).scaled(Cyclotomic(static_cast<long>(f.form().chi(p))));
        CHECK(lhs.agrees_with(rhs));
        // the determinant normalization introduces p^{2 - weight}
        auto lhs_det = hecke_apply(f, {p, 1, 3}, HeckeNormalization::determinant);
        auto rhs_det = hecke_apply(f, {p, 0, 2}, HeckeNormalization::determinant);
        CHECK(lhs_det.agrees_with(rhs_det.scaled(Cyclotomic(Rat(p * f.form().chi(p))))));
    }
    // m(p^k, p^l) and m(p^-k, p^-l) give the same operator for p prime to the level
    auto r = random_expansion(F15, 20, 3);
    CHECK(hecke_apply(r, {2, -2, 0}).agrees_with(hecke_apply(r, {2, 0, 2})));
    auto f16 = theta_series(A2, 16);
    CHECK(hecke_apply(f16, {2, -4, 0}).agrees_with(hecke_apply(f16, {2, 0, 4})));
}

TEST_CASE("Hecke operators at distinct primes commute") {
    auto f = theta_series(A2, 100);
    auto a = hecke_apply(hecke_apply(f, {2, 0, 2}), {5, 0, 2});
    auto b = hecke_apply(hecke_apply(f, {5, 0, 2}), {2, 0, 2});
    CHECK(a.bound() == b.bound());
    CHECK(a.agrees_with(b));
    CHECK_FALSE(a.is_zero());

    for (const auto& G : {A2, F15}) {
        auto r = random_expansion(G, G == A2 ? 100 : 196, 9);
        long q = G == A2 ? 5 : 7;
        auto x = hecke_apply(hecke_apply(r, {2, 0, 2}), {q, 0, 2});
        auto y = hecke_apply(hecke_apply(r, {q, 0, 2}), {2, 0, 2});
        CHECK(x.agrees_with(y));
        CHECK_FALSE(x.is_zero());
    }
}

TEST_CASE("preconditions") {
    auto f = theta_series(A2, 3);
    CHECK_THROWS_AS(hecke_apply(f, {2, 0, 2}), std::domain_error);
    CHECK_THROWS_AS(hecke_apply(f, {2, 0, 1}), std::domain_error);
    auto c = random_expansion(C27, 30, 1);
    CHECK_THROWS_AS(hecke_apply(c, {3, 0, 2}), std::domain_error);
    auto e4 = theta_series({{2, 0}, {0, 2}}, 8);
    CHECK_THROWS_AS(hecke_apply(e4, {3, 0, 2}), std::domain_error);
}
