#include "checks.hpp"

#include <sstream>

namespace vvmf::checks {

void Outcome::fail(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
    ok = false;
}

Outcome& Outcome::operator+=(const Outcome& o) {
    if (!o.ok) fail(o.detail);
    return *this;
}

namespace {

template <class T>
std::string str(const T& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

Rat random_padic(std::mt19937& rng, long p, int spread) {
    std::uniform_int_distribution<long> num(-40, 40), den(1, 40), ex(-spread, spread);
    long a = 0;
    while (a == 0) a = num(rng);
    Rat r(a, den(rng));
    r.canonicalize();
    return r * rat_pow(Rat(p), ex(rng) - ord_p(r, p));
}

}  // namespace

Mat2 random_principal(long N, std::mt19937& rng) {
    std::uniform_int_distribution<long> r(-3, 3);
    for (;;) {
        long c = N * r(rng), d = 1 + N * r(rng);
        if (gcd(c, d) != 1) continue;
        if (c == 0) {
            if (d == 1) return Mat2{1, N * r(rng), 0, 1};
            continue;
        }
        for (long a = -60; a <= 60; ++a) {
            if ((a * d - 1) % c != 0) continue;
            long b = (a * d - 1) / c;
            if (mod(a, N) == 1 % N && mod(b, N) == 0) return Mat2{a, b, c, d};
        }
    }
}

QMat2 random_square_det(std::mt19937& rng, long p) {
    for (;;) {
        QMat2 g(random_padic(rng, p, 4), random_padic(rng, p, 4), random_padic(rng, p, 4), random_padic(rng, p, 4));
        if (g.det() != 0 && in_Q(g, p)) return g;
    }
}

QMat2 random_K(std::mt19937& rng, long p) {
    std::uniform_int_distribution<long> u(-20, 20);
    for (;;) {
        QMat2 k(u(rng), u(rng), u(rng), u(rng));
        if (k.det() != 0 && in_K(k, p)) return k;
    }
}

Mat2 random_sl2(std::mt19937& rng, int len) {
    std::uniform_int_distribution<long> kd(-4, 4);
    Mat2 g;
    for (int i = 0; i < len; ++i) g = g * Mat2{1, kd(rng), 0, 1} * S_MAT;
    return g;
}

UnramifiedCharacter random_character(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7), kind(0, 2);
    auto r = [&] {
        long a = 0;
        while (a == 0) a = num(rng);
        Rat q(a, den(rng));
        q.canonicalize();
        return Cyclotomic(q);
    };
    Cyclotomic x = r(), y = r();
    long t = kind(rng);
    if (t == 1) x *= Cyclotomic::zeta(3);
    if (t == 2) y *= Cyclotomic(1L) + Cyclotomic::zeta(4);
    return {x, y};
}

std::vector<Cell> generators_up_to(int s) {
    std::vector<Cell> r;
    for (int n = 0; n <= s; n += 2)
        for (int k = 0; 2 * k <= n; ++k) r.push_back({k, n - k});
    return r;
}

Outcome fqm_invariants(const FQM& D) {
    Outcome out;
    const long n = D.order();
    for (long x = 0; x < n; ++x) {
        if (D.q(D.neg(x)) != D.q(x)) out.fail("q(-x) != q(x) at " + std::to_string(x));
        for (long y = 0; y < n; ++y)
            if (D.q(D.add(x, y)) - D.q(x) - D.q(y) != D.bil(x, y)) {
                out.fail("polarization fails at " + std::to_string(x) + "," + std::to_string(y));
                return out;
            }
    }
    auto kills = [&](long N) {
        for (long x = 0; x < n; ++x)
            if (D.q(x) * N != QmodZ()) return false;
        return true;
    };
    if (!kills(D.level())) out.fail("level does not annihilate q");
    for (long d : divisors(D.level()))
        if (d < D.level() && kills(d)) out.fail("level is not minimal");
    if (D.has_lattice()) {
        auto lat = LatticeInput::from_gram(D.gram());
        if (std::labs(lat.det) != n) out.fail("|D| != |det G|");
        if (mod(lat.b_plus - lat.b_minus, 8) != D.signature()) out.fail("signature differs from b+ - b-");
    }
    return out;
}

Outcome milgram(const FQM& D) {
    Outcome out;
    long sig = D.signature();
    if (D.has_lattice()) {
        auto lat = LatticeInput::from_gram(D.gram());
        sig = lat.b_plus - lat.b_minus;
    }
    if (D.gauss_sum(1) != sqrt_int(D.order()) * e(Rat(sig, 8)))
        out.fail("g(D) = " + D.gauss_sum(1).str() + " for |D| = " + std::to_string(D.order()));
    return out;
}

Outcome weil_relations(const FQM& D, std::mt19937& rng, int words, int gammas) {
    Outcome out;
    auto S = rho_S(D), T = rho_T(D), Z = rho_Z(D);
    auto I = GroupRingOperator::identity(D.order());
    if (S * S != Z) out.fail("S^2 != Z");
    auto ST = S * T;
    if (ST * ST * ST != Z) out.fail("(ST)^3 != Z");
    for (int i = 0; i < words; ++i) {
        Mat2 g = random_sl2(rng, 4), h = random_sl2(rng, 3);
        auto A = rho(D, g);
        if (A * A.adjoint() != I) out.fail("not unitary on word " + to_string(sl2_word(g)));
        if (rho(D, g * h) != A * rho(D, h)) out.fail("not multiplicative on word " + to_string(sl2_word(g)));
    }
    for (int i = 0; i < gammas; ++i) {
        Mat2 g = random_principal(D.level(), rng);
        if (rho(D, g) != I) out.fail("nontrivial on Gamma(N)");
    }
    return out;
}

Outcome padic_decompositions(long p, int count, std::mt19937& rng) {
    Outcome out;
    for (int i = 0; i < count; ++i) {
        QMat2 g = random_square_det(rng, p);
        auto F = cartan(g, p);
        QMat2 m = m_diag(rat_pow(Rat(p), F.k), rat_pow(Rat(p), F.l));
        if (!(F.k1 * m * F.k2 == g) || !in_K(F.k1, p) || !in_K(F.k2, p) || F.k > F.l) out.fail("Cartan round trip");
        auto F2 = cartan(random_K(rng, p) * g * random_K(rng, p), p);
        if (F2.k != F.k || F2.l != F.l) out.fail("Cartan exponents not unique");
        auto W = iwasawa(g, p);
        if (!(W.n * W.m * W.k == g) || !in_K(W.k, p) || W.n.a != 1 || W.n.c != 0 || W.n.d != 1 ||
            !(W.m == m_diag(rat_pow(Rat(p), W.a), rat_pow(Rat(p), W.b))))
            out.fail("Iwasawa round trip");
        if (!out.ok) return out;
    }
    return out;
}

Outcome coset_sets(long p, const std::vector<Cell>& cells) {
    Outcome out;
    for (auto [k, l] : cells) {
        auto reps = coset_reps(p, k, l);
        const std::string tag = "(" + std::to_string(k) + "," + std::to_string(l) + ")";
        if (k == 0 && l == 2 && static_cast<long>(reps.size()) != p * p + p) out.fail(tag + " count");
        for (const auto& x : reps) {
            auto F = cartan(x, p);
            if (F.k != k || F.l != l) out.fail(tag + " representative outside its cell");
        }
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j)
                if (in_K(reps[i].inv() * reps[j], p)) out.fail(tag + " repeated coset");
    }
    return out;
}

Outcome satake_homomorphism(const LocalSetting& L, int max_deg) {
    Outcome out;
    auto gens = generators_up_to(max_deg);
    for (auto c1 : gens)
        for (auto c2 : gens) {
            auto T1 = HeckeElement::generator(L, c1.first, c1.second);
            auto T2 = HeckeElement::generator(L, c2.first, c2.second);
            if (!(satake(convolve(T1, T2)) == satake(T1) * satake(T2)))
                out.fail("T" + str(c1.first) + str(c1.second) + " * T" + str(c2.first) + str(c2.second));
        }
    return out;
}

Outcome satake_closed_form(const LocalSetting& L, int max_deg) {
    Outcome out;
    for (auto c : generators_up_to(max_deg)) {
        auto T = HeckeElement::generator(L, c.first, c.second);
        auto S = satake(T);
        if (!S.weyl_invariant()) out.fail("not Weyl invariant at " + str(c.first) + "," + str(c.second));
        if (!(S == satake_enumerated(T))) out.fail("closed form differs at " + str(c.first) + "," + str(c.second));
    }
    return out;
}

Outcome series_identity(const LocalSetting& L, const std::vector<UnramifiedCharacter>& chis, int order) {
    Outcome out;
    for (const auto& chi : chis) {
        auto B = B_series(chi, L, order);
        auto R = B_rational(chi, L).expand(order);
        int d = B.first_difference(R, order);
        if (d <= order)
            out.fail("p=" + str(L.p) + ", chi=(" + chi.chi1.str() + ", " + chi.chi2.str() + "): X^" + str(d) +
                     " gives " + B.coeff(d).str() + " vs " + R.coeff(d).str());
    }
    return out;
}

Outcome zonal_consistency(long p, const std::vector<UnramifiedCharacter>& chis) {
    Outcome out;
    for (const auto& chi : chis) {
        LaurentSeries Z = LaurentSeries::zero(2);
        try {
            for (auto [k, l] : {Cell{0, 0}, Cell{1, 1}, Cell{0, 2}}) {
                Cyclotomic w = zonal_oracle(chi, p, k, l, l + 1);
                Cyclotomic v = Cyclotomic(Rat(cell_volume(p, k, l))) * w * Cyclotomic(rat_pow(Rat(p), -(k + l) / 2));
                Z.set(k + l, Z.coeff(k + l) + v);
            }
        } catch (const std::runtime_error& x) {
            out.fail(x.what());
            continue;
        }
        if (!Z.eq_to_order(lambda_rational(chi).expand(2), 2)) out.fail("lattice series mismatch");
    }
    return out;
}

Outcome theta_eigenform(const IntMatrix& gram, long p, const Rat& small, const Rat& large) {
    Outcome out;
    auto fs = theta_series(gram, small), fl = theta_series(gram, large);
    auto Tl = hecke_apply(fl, {p, 0, 2});
    long nonzero = 0;
    for (const auto& kv : Tl.coeffs()) nonzero += !kv.second.is_zero();
    if (nonzero < 5) out.fail("fewer than 5 nonzero coefficients");
    try {
        Cyclotomic a = eigenvalue_of(fl, Tl), b = eigenvalue_of(fs, hecke_apply(fs, {p, 0, 2}));
        if (a != b) out.fail("eigenvalue changes with the bound");
    } catch (const not_an_eigenform& x) {
        out.fail(x.what());
    }
    out += hecke_relations(fl, {p});
    return out;
}

Outcome hecke_relations(const VVQExpansion& f, const std::vector<long>& primes) {
    Outcome out;
    const FQM& D = f.form();
    std::vector<long> good;
    for (long p : primes)
        if (D.level() % p != 0) good.push_back(p);
    for (long p : good) {
        Cyclotomic chi = D.gauss_sum(p) / D.gauss_sum(1);
        auto lhs = hecke_apply(f, {p, 1, 3});
        auto rhs = hecke_apply(f, {p, 0, 2}).scaled(chi);
        if (!lhs.agrees_with(rhs)) out.fail("T(m(p^-1, p^-3)) != chi_D(p) T(m(1, p^-2)) at p=" + str(p));
    }
    for (std::size_t i = 0; i < good.size(); ++i)
        for (std::size_t j = i + 1; j < good.size(); ++j) {
            const long p = good[i], q = good[j];
            if (f.bound() < Rat(p * p * q * q)) continue;
            auto a = hecke_apply(hecke_apply(f, {p, 0, 2}), {q, 0, 2});
            auto b = hecke_apply(hecke_apply(f, {q, 0, 2}), {p, 0, 2});
            if (!a.agrees_with(b)) out.fail("operators at " + str(p) + " and " + str(q) + " do not commute");
        }
    return out;
}

Outcome zeta_L(const EigenData& e, long p, int order) {
    Outcome out;
    auto r = check_zeta_L_relation(e, p, order);
    if (!r.ok) out.fail("p=" + str(p) + ": mismatch at X^" + str(r.first_mismatch) + " (" + r.detail + ")");
    return out;
}

Outcome dividing_local_zeta(const EigenData& e, long p, int order) {
    Outcome out;
    auto S = p_part(*e.form, p);
    Cyclotomic c = S.part->weil_index() / sqrt_int(S.part->order());
    Cyclotomic chi = S.complement->gauss_sum(p) / S.complement->gauss_sum(1);
    auto K = [&](const Cyclotomic& x) { return LaurentSeries(0, {x}, order); };
    auto two_part = (K(c - Cyclotomic(1L)) + euler_factor(chi, 2).expand(order)) * standard_local_zeta(e, p, order);
    if (!local_zeta(e, p, order).eq_to_order(two_part + K(Cyclotomic(1L) - c), order))
        out.fail("local zeta at p=" + str(p) + " differs from the two-part form");
    return out;
}

Outcome synthetic_round_trip(std::shared_ptr<const FQM> D, int weight, long p, int order, std::mt19937& rng) {
    Outcome out;
    auto chi = random_character(rng);
    auto e = synthetic_eigendata(D, weight, p, chi, std::max(3, (order + 1) / 2));
    auto sp = satake_from_eigen(e, p);
    if (sp.prod != chi.chi1 * chi.chi2 || sp.sum_sq != chi.chi1 * chi.chi1 + chi.chi2 * chi.chi2)
        out.fail("parameters not recovered at p=" + str(p));
    out += zeta_L(e, p, order);
    return out;
}

Rat eigen_bound(long p, int depth) { return Rat(std::max(12L, 2 * ipow(p, 2 * depth))); }

}  // namespace vvmf::checks
