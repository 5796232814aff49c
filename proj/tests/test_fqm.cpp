#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "vvmf/fqm.hpp"
#include "vvmf/linalg.hpp"

using namespace vvmf;

namespace {

const IntMatrix H = {{0, 1}, {1, 0}};
const IntMatrix A2 = {{2, -1}, {-1, 2}};
const IntMatrix D22 = {{2, 0}, {0, 2}};
const IntMatrix F15 = {{2, -1, 0, 0}, {-1, 2, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, -2}};

// Independent enumeration of L'/L as G^{-1} z over a box of z, deduplicated modulo Z^n.
struct Brute {
    long order = 0;
    long level = 1;
    std::multiset<Rat> qvals;
};

Brute brute(const IntMatrix& G) {
    const std::size_t n = G.size();
    RatMatrix A(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = G[i][j];
    long det = std::abs(Int(det_rational(A).get_num()).get_si());
    RatMatrix Ginv(n, std::vector<Rat>(n));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rat> ej(n, Rat(0));
        ej[j] = 1;
        auto col = solve_rational(A, ej);
        for (std::size_t i = 0; i < n; ++i) Ginv[i][j] = (*col)[i];
    }
    std::set<std::vector<Rat>> seen;
    Brute B;
    std::vector<long> z(n, 0);
    for (;;) {
        std::vector<Rat> x(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) x[i] += Ginv[i][j] * z[j];
        std::vector<Rat> key;
        for (auto& v : x) key.push_back(QmodZ(v).value());
        if (seen.insert(key).second) {
            Rat q = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) q += x[i] * G[i][j] * x[j];
            q /= 2;
            Rat qm = QmodZ(q).value();
            B.qvals.insert(qm);
            B.level = lcm(B.level, Int(qm.get_den()).get_si());
        }
        std::size_t k = 0;
        while (k < n && ++z[k] == det) z[k++] = 0;
        if (k == n) break;
    }
    B.order = static_cast<long>(seen.size());
    return B;
}

std::vector<IntMatrix> small_lattices() {
    std::vector<IntMatrix> out;
    for (long a = -4; a <= 4; ++a)
        for (long c = a; c <= 5; ++c)
            for (long b = 0; b <= 5; ++b) {
                long det = 4 * a * c - b * b;
                if (a == 0 && c == 0 && b == 0) continue;
                if (det == 0 || std::labs(det) > 100) continue;
                out.push_back({{2 * a, b}, {b, 2 * c}});
            }
    out.push_back(A2);
    out.push_back(F15);
    out.push_back({{2, 1, 0}, {1, 2, 1}, {0, 1, 4}});
    out.push_back({{-2, 1, 0}, {1, -2, 0}, {0, 0, 6}});
    out.push_back({{2}});
    out.push_back({{-4}});
    out.push_back({{2, -1, 0, 0}, {-1, 2, 0, 0}, {0, 0, 2, -1}, {0, 0, -1, 2}});
    return out;
}

}  // namespace

TEST_CASE("Smith normal form reproduces the diagonal") {
    for (const auto& G : small_lattices()) {
        SmithForm S = smith_normal_form(G);
        const std::size_t n = G.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                long s = 0;
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b) s += S.U[i][a] * G[a][b] * S.V[b][j];
                CHECK(s == (i == j ? S.d[i] : 0));
            }
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (S.d[i] != 0) CHECK(S.d[i + 1] % S.d[i] == 0);
    }
}

TEST_CASE("worked examples") {
    FQM h = FQM::from_gram(H);
    CHECK(h.order() == 1);
    CHECK(h.level() == 1);
    CHECK(h.signature() == 0);

    FQM a2 = FQM::from_gram(A2);
    CHECK(a2.order() == 3);
    CHECK(a2.level() == 3);
    CHECK(a2.signature() == 2);
    CHECK(a2.q(1) == QmodZ(1, 3));
    CHECK(a2.q(2) == QmodZ(1, 3));

    FQM d = FQM::from_gram(D22);
    CHECK(d.order() == 4);
    CHECK(d.elementary_divisors() == std::vector<long>{2, 2});
    CHECK(d.level() == 4);
    CHECK(d.q(1) == QmodZ(1, 4));
    CHECK(d.q(2) == QmodZ(1, 4));
    CHECK(d.q(3) == QmodZ(1, 2));
    CHECK(d.signature() == 2);

    FQM f = FQM::from_gram(F15);
    CHECK(f.order() == 15);
    CHECK(f.level() == 15);
    CHECK(f.signature() == 2);
}

TEST_CASE("malformed Gram matrices are rejected") {
    CHECK_THROWS_AS(FQM::from_gram({{1, 0}, {0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(FQM::from_gram({{2, 1}, {0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(FQM::from_gram({{2, 2}, {2, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(FQM::from_gram({{2, 1}}), std::invalid_argument);
}

TEST_CASE("discriminant data agrees with brute-force enumeration") {
    for (const auto& G : small_lattices()) {
        if (G.size() > 3) continue;
        FQM D = FQM::from_gram(G);
        Brute B = brute(G);
        CHECK(D.order() == B.order);
        CHECK(D.level() == B.level);
        std::multiset<Rat> q;
        for (long x = 0; x < D.order(); ++x) q.insert(D.q(x).value());
        CHECK(q == B.qvals);
    }
    Brute B = brute(F15);
    CHECK(B.order == 15);
    CHECK(B.level == 15);
}

TEST_CASE("Milgram formula against the real signature") {
    for (const auto& G : small_lattices()) {
        LatticeInput L = LatticeInput::from_gram(G);
        FQM D = FQM::from_gram(G);
        CHECK(D.order() == std::labs(L.det));
        CHECK(D.signature() == mod(L.b_plus - L.b_minus, 8));
        CHECK(D.gauss_sum() == sqrt_int(D.order()) * e(Rat(D.signature(), 8)));
    }
}

TEST_CASE("quadratic form polarizes to the bilinear form") {
    for (const auto& G : small_lattices()) {
        FQM D = FQM::from_gram(G);
        bool ok = true;
        for (long x = 0; x < D.order(); ++x)
            for (long y = 0; y < D.order(); ++y)
                if (D.q(D.add(x, y)) - D.q(x) - D.q(y) != D.bil(x, y)) ok = false;
        CHECK(ok);
    }
}

TEST_CASE("character is multiplicative and is the Jacobi symbol") {
    for (const auto& G : small_lattices()) {
        FQM D = FQM::from_gram(G);
        if (D.order() % 2 == 0) {
            if (D.order() > 1) CHECK_THROWS_AS(D.chi(1), std::domain_error);
            continue;
        }
        std::vector<long> units;
        for (long n = 1; n <= 40; ++n)
            if (gcd(n, D.level()) == 1) units.push_back(n);
        std::map<long, int> chi;
        for (long n : units) {
            chi[n] = D.chi(n);
            CHECK(chi[n] == jacobi(n, D.order()));
        }
        for (long n : units)
            for (long m : units)
                if (m * n <= 40) CHECK(chi[m * n] == chi[m] * chi[n]);
        if (D.level() > 1) CHECK_THROWS_AS(D.chi(D.level()), std::domain_error);
    }
}

TEST_CASE("p-parts") {
    FQM f = FQM::from_gram(F15);
    PrimarySplit s3 = p_part(f, 3), s5 = p_part(f, 5), s2 = p_part(f, 2);
    CHECK(s3.part->order() == 3);
    CHECK(s3.complement->order() == 5);
    CHECK(s5.part->order() == 5);
    CHECK(s2.part->order() == 1);
    for (long x = 0; x < f.order(); ++x) {
        auto [a, b] = s3.D_to_pair[x];
        CHECK(f.q(x) == s3.part->q(a) + s3.complement->q(b));
    }
    for (long n = 1; n < 30; ++n)
        if (gcd(n, 15) == 1) CHECK(s3.complement->chi(n) == jacobi(n, 5));
    CHECK((s3.part->signature() + s3.complement->signature()) % 8 == f.signature());

    FQM a2 = FQM::from_gram(A2);
    PrimarySplit t = p_part(a2, 3);
    CHECK(t.part->is_anisotropic());
    CHECK(t.part->weil_index() == e(Rat(1, 4)));
    CHECK(t.part->weil_index() * t.part->weil_index() == Cyclotomic(static_cast<long>(jacobi(-1, 3))));
    for (long r = 1; r <= 3; ++r) CHECK(t.part->gauss_sum(ipow(3, r)) == Cyclotomic(3L));
}

TEST_CASE("anisotropy") {
    CHECK(FQM::from_gram(A2).is_anisotropic());
    CHECK(FQM::from_gram({{2, -1, 0, 0}, {-1, 2, 0, 0}, {0, 0, 2, -1}, {0, 0, -1, 2}}).is_anisotropic());
    // Z/9 with q = x^2/9 has the isotropic element 3.
    CHECK_FALSE(FQM({9}, {Rat(1, 9)}, {{Rat(2, 9)}}).is_anisotropic());
    CHECK_FALSE(FQM::from_gram({{2, 0}, {0, -2}}).is_anisotropic());
}
