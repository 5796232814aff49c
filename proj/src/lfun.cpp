#include "vvmf/lfun.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace vvmf {

namespace {

Rat ppow(long p, long e) { return rat_pow(Rat(p), e); }

Cyclotomic gauss_at(const FQM& D, long p, int k) { return D.gauss_sum(ipow(p, static_cast<unsigned>(k))); }

// Factor r with lambda_f(m(p^{-k}, p^{-l})) = r lambda_f(m(p^{l-k}, 1)).
Cyclotomic inverse_factor(const FQM& D, long p, int k, int l) {
    Cyclotomic g = D.gauss_sum(1);
    Cyclotomic r = gauss_at(D, p, k) / g;
    if (D.level() % p == 0) r *= g / gauss_at(D, p, k + l);
    return r;
}

void check_cell(int k, int l) {
    if (k < 0 || k > l || (k + l) % 2 != 0) throw std::invalid_argument("eigenvalue: need 0 <= k <= l, k + l even");
}

nlohmann::json poly_json(const Polynomial& P) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : P) a.push_back(c.minimized().str());
    return a;
}

}  // namespace

void EigenData::set(long p, std::vector<Cyclotomic> values) {
    if (values.size() < 2) throw std::invalid_argument("eigendata: depth must be at least 1");
    if (values[0] != Cyclotomic(1L)) throw std::invalid_argument("eigendata: lambda(m(1,1)) must be 1");
    lambda[p] = std::move(values);
}

int EigenData::depth(long p) const {
    auto it = lambda.find(p);
    return it == lambda.end() ? -1 : static_cast<int>(it->second.size()) - 1;
}

const Cyclotomic& EigenData::at(long p, int n) const {
    auto it = lambda.find(p);
    if (it == lambda.end()) throw std::out_of_range("eigendata: no data at this prime");
    if (n < 0 || n >= static_cast<int>(it->second.size())) throw std::out_of_range("eigendata: insufficient depth");
    return it->second[n];
}

EigenData collect_eigendata(const VVQExpansion& f, const std::vector<long>& primes, int depth) {
    if (depth < 1) throw std::invalid_argument("collect_eigendata: depth must be at least 1");
    EigenData e;
    e.form = f.form_ptr();
    e.weight = f.weight();
    const FQM& D = f.form();
    for (long p : primes) {
        std::vector<Cyclotomic> v{Cyclotomic(1L)};
        for (int n = 1; n <= depth; ++n) {
            Cyclotomic lam = eigenvalue_of(f, hecke_apply(f, HeckeIndex{p, 0, 2 * n}));
            if (D.level() % p == 0) lam /= D.gauss_sum(1) / gauss_at(D, p, 2 * n);
            v.push_back(lam);
        }
        e.set(p, std::move(v));
    }
    return e;
}

Cyclotomic derive_eigenvalue(const EigenData& e, long p, int k, int l, bool inverse) {
    check_cell(k, l);
    const FQM& D = *e.form;
    const Cyclotomic& lam = e.at(p, (l - k) / 2);
    if (inverse) return inverse_factor(D, p, k, l) * lam;
    return gauss_at(D, p, k) / D.gauss_sum(1) * lam;
}

LaurentSeries local_zeta(const EigenData& e, long p, int order) {
    LaurentSeries Z = LaurentSeries::zero(order);
    for (int n = 0; n <= order; n += 2) {
        Cyclotomic c(0L);
        for (int k = 0; 2 * k <= n; ++k) c += derive_eigenvalue(e, p, k, n - k, true);
        Z.set(n, c);
    }
    return Z;
}

LaurentSeries standard_local_zeta(const EigenData& e, long p, int order) {
    LaurentSeries Z = LaurentSeries::zero(order);
    for (int n = 0; 2 * n <= order; ++n) Z.set(2 * n, e.at(p, n));
    return Z;
}

RationalFunction euler_factor(const Cyclotomic& c, int step) {
    Polynomial den(step + 1, Cyclotomic(0L));
    den[0] = Cyclotomic(1L);
    den[step] = -c;
    return RationalFunction({Cyclotomic(1L)}, den);
}

std::vector<Cyclotomic> GlobalZeta::dirichlet(long nmax) const {
    std::vector<Cyclotomic> r(nmax + 1, Cyclotomic(0L));
    if (nmax >= 1) r[1] = Cyclotomic(1L);
    for (const auto& F : factors) {
        const long p = F.p;
        long pk = 1;
        for (int j = 0; j <= F.local.order(); ++j) pk = pk > nmax / p ? nmax + 1 : pk * p;
        if (pk <= nmax) throw std::invalid_argument("dirichlet: local series too short for this range");
        std::vector<Cyclotomic> next(nmax + 1, Cyclotomic(0L));
        for (long m = 1; m <= nmax; ++m) {
            if (r[m].is_zero()) continue;
            long q = m;
            for (int j = 0; q <= nmax; ++j) {
                next[q] += r[m] * F.local.coeff(j);
                if (q > nmax / p) break;
                q *= p;
            }
        }
        r = std::move(next);
    }
    return r;
}

std::complex<double> GlobalZeta::evaluate(std::complex<double> s) const {
    std::complex<double> v = 1.0;
    for (const auto& F : factors) {
        std::complex<double> x = std::exp(-s * std::log(static_cast<double>(F.p)));
        std::complex<double> loc = 0.0, xp = 1.0;
        for (int j = 0; j <= F.local.order(); ++j, xp *= x) loc += F.local.coeff(j).to_complex() * xp;
        v *= loc;
    }
    return v;
}

GlobalZeta global_zeta(const EigenData& e, int order, long prime_bound) {
    const FQM& D = *e.form;
    if (!is_squarefree(D.level())) throw std::domain_error("global_zeta: level must be squarefree");
    GlobalZeta G;
    G.prime_bound = prime_bound;
    for (long p = 2; p < prime_bound; ++p) {
        if (!is_prime(p)) continue;
        if (e.depth(p) < 0) throw std::invalid_argument("global_zeta: missing eigendata at a prime below the bound");
        LocalZetaFactor F{p, false, std::nullopt, Cyclotomic(1L), euler_factor(Cyclotomic(1L), 2),
                          standard_local_zeta(e, p, order), local_zeta(e, p, order)};
        if (D.level() % p == 0) {
            auto S = p_part(D, p);
            F.dividing = true;
            F.leading = S.part->weil_index() / sqrt_int(S.part->order());
            F.chi = S.complement->gauss_sum(p) / S.complement->gauss_sum(1);
        } else {
            F.chi = D.gauss_sum(p) / D.gauss_sum(1);
        }
        F.L_chi = euler_factor(F.chi, 2);
        G.factors.push_back(std::move(F));
    }
    return G;
}

SatakeParams SatakeParams::from_character(const UnramifiedCharacter& chi, const LocalSetting& L) {
    SatakeParams s;
    s.p = L.p;
    s.regime = L.regime;
    s.prod = chi.chi1 * chi.chi2;
    s.sum_sq = chi.chi1 * chi.chi1 + chi.chi2 * chi.chi2;
    return s;
}

LaurentSeries translated_zeta(const EigenData& e, long p, int order) {
    LaurentSeries Z = local_zeta(e, p, order);
    for (int n = 0; n <= order; n += 2) Z.set(n, Z.coeff(n) * Cyclotomic(ppow(p, n * (2 - e.weight) / 2)));
    return Z;
}

SatakeParams satake_from_eigen(const EigenData& e, long p) {
    const int depth = e.depth(p);
    if (depth < 3) throw std::invalid_argument("satake_from_eigen: depth 3 required");
    LocalSetting L = LocalSetting::at(*e.form, p);
    LaurentSeries W = translated_zeta(e, p, 2 * depth);
    Cyclotomic scale = L.regime == Regime::dividing ? C_constant(L) : Cyclotomic(1L);
    std::vector<Cyclotomic> b;
    for (int N = 0; N <= depth; ++N) b.push_back(W.coeff(2 * N) * scale / Cyclotomic(ppow(p, N)));
    if (b[0] != Cyclotomic(1L)) throw inconsistent_eigendata("satake_from_eigen: constant term mismatch", 0);

    SatakeParams sp;
    sp.p = p;
    sp.regime = L.regime;
    Cyclotomic d = b[2] - b[1] * b[1];
    // On b2 = b1^2 both roots 0 and -b1 give the same series; 0 is not a character value.
    Cyclotomic ee = d.is_zero() ? -b[1] : (Cyclotomic(2L) * b[1] * b[2] - b[3] - b[1] * b[1] * b[1]) / d;
    sp.prod = ee;
    sp.sum_sq = b[1] - ee;
    for (int N = 2; N <= depth; ++N)
        if (b[N] != sp.sum_sq * b[N - 1] - ee * ee * b[N - 2])
            throw inconsistent_eigendata("satake_from_eigen: no character reproduces the series", 2 * N);
    return sp;
}

RationalFunction L_factor(const SatakeParams& sp, const LocalSetting& L) {
    const Cyclotomic p(sp.p);
    Cyclotomic f = L.regime == Regime::dividing ? C_constant(L).inverse() : Cyclotomic(1L);
    Cyclotomic zero(0L);
    Polynomial num{f, zero, f * sp.prod * p};
    Polynomial den{Cyclotomic(1L), zero, -(sp.sum_sq * p), zero, sp.prod * sp.prod * p * p};
    return RationalFunction(num, den);
}

ZetaLCheck check_zeta_L_relation(const EigenData& e, long p, int order) {
    ZetaLCheck r;
    if (order > 2 * e.depth(p)) throw std::invalid_argument("check_zeta_L_relation: order exceeds the eigendata depth");
    SatakeParams sp;
    try {
        sp = satake_from_eigen(e, p);
    } catch (const inconsistent_eigendata& x) {
        r.first_mismatch = x.index;
        r.detail = x.what();
        return r;
    }
    LocalSetting L = LocalSetting::at(*e.form, p);
    LaurentSeries W = translated_zeta(e, p, order);
    LaurentSeries R = L_factor(sp, L).expand(order);
    int d = W.first_difference(R, order);
    r.ok = d > order;
    if (!r.ok) {
        r.first_mismatch = d;
        r.detail = "coefficient mismatch";
    }
    return r;
}

EigenData synthetic_eigendata(std::shared_ptr<const FQM> form, int weight, long p, const UnramifiedCharacter& chi,
                              int depth) {
    LocalSetting L = LocalSetting::at(*form, p);
    LaurentSeries W = L_factor(SatakeParams::from_character(chi, L), L).expand(2 * depth);
    const FQM& D = *form;
    std::vector<Cyclotomic> lam;
    for (int N = 0; N <= depth; ++N) {
        Cyclotomic z = W.coeff(2 * N) / Cyclotomic(ppow(p, N * (2 - weight)));
        for (int k = 1; k <= N; ++k) z -= inverse_factor(D, p, k, 2 * N - k) * lam[N - k];
        lam.push_back(z / inverse_factor(D, p, 0, 2 * N));
    }
    if (lam[0] != Cyclotomic(1L)) throw std::domain_error("synthetic_eigendata: constant term is not 1");
    EigenData e;
    e.form = std::move(form);
    e.weight = weight;
    e.set(p, std::move(lam));
    return e;
}

std::string lfun_report_json(const EigenData& e, const std::vector<long>& primes) {
    nlohmann::json out = nlohmann::json::array();
    for (long p : primes) {
        nlohmann::json j;
        j["p"] = p;
        nlohmann::json ev = nlohmann::json::array();
        for (int n = 0; n <= e.depth(p); ++n) ev.push_back(e.at(p, n).minimized().str());
        j["eigenvalues"] = ev;
        try {
            SatakeParams sp = satake_from_eigen(e, p);
            LocalSetting L = LocalSetting::at(*e.form, p);
            j["satake"] = {{"e1", sp.e1().minimized().str()},
                           {"e2", sp.e2().minimized().str()},
                           {"chi1chi2", sp.prod.minimized().str()}};
            RationalFunction R = L_factor(sp, L);
            j["l_factor"] = {{"num", poly_json(R.num())}, {"den", poly_json(R.den())}};
        } catch (const std::exception& x) {
            j["error"] = x.what();
        }
        out.push_back(j);
    }
    return out.dump(2);
}

}  // namespace vvmf
