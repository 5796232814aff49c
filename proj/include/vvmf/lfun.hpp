#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vvmf/fqm.hpp"
#include "vvmf/qexp.hpp"
#include "vvmf/series.hpp"
#include "vvmf/sphalg.hpp"

namespace vvmf {

// lambda[p][n] = lambda_f(m(p^{2n}, 1)) for n = 0 .. depth(p).
struct EigenData {
    std::shared_ptr<const FQM> form;
    int weight = 0;
    std::map<long, std::vector<Cyclotomic>> lambda;

    void set(long p, std::vector<Cyclotomic> values);
    int depth(long p) const;
    const Cyclotomic& at(long p, int n) const;
};

// Eigenvalues of T(m(1, p^{-2n})) on f for n <= depth, converted to lambda_f(m(p^{2n}, 1)).
// Throws not_an_eigenform if f is not an eigenform on its truncation.
EigenData collect_eigendata(const VVQExpansion& f, const std::vector<long>& primes, int depth);

// lambda_f(m(p^k, p^l)), or lambda_f(m(p^{-k}, p^{-l})) when inverse is set.
Cyclotomic derive_eigenvalue(const EigenData& e, long p, int k, int l, bool inverse = false);

// sum over k <= l, k + l even, of lambda_f(m(p^{-k}, p^{-l})) X^{k+l}, X = p^{-s}.
LaurentSeries local_zeta(const EigenData& e, long p, int order);
// Z_p(s, f) = sum_n lambda_f(m(p^{2n}, 1)) X^{2n}
LaurentSeries standard_local_zeta(const EigenData& e, long p, int order);

// 1 / (1 - c X^step)
RationalFunction euler_factor(const Cyclotomic& c, int step);

struct LocalZetaFactor {
    long p = 0;
    bool dividing = false;
    // e(sig(D_p)/8) / |D_p|^{1/2} for dividing p
    std::optional<Cyclotomic> leading;
    // chi_{D_p^perp}(p) for dividing p, chi_D(p) otherwise
    Cyclotomic chi;
    // L_p(2s, chi) = 1 / (1 - chi X^2)
    RationalFunction L_chi;
    LaurentSeries Z;
    LaurentSeries local;
};

struct GlobalZeta {
    long prime_bound = 0;
    bool truncated = true;
    std::vector<LocalZetaFactor> factors;

    // Coefficients a(1..nmax) of the truncated Euler product of the local series.
    std::vector<Cyclotomic> dirichlet(long nmax) const;
    std::complex<double> evaluate(std::complex<double> s) const;
};

// Requires squarefree level and eigendata for every prime below prime_bound.
GlobalZeta global_zeta(const EigenData& e, int order, long prime_bound);

// chi1(p) chi2(p) and chi1(p^2) + chi2(p^2); the pair itself is determined up to swap.
struct SatakeParams {
    long p = 2;
    Regime regime = Regime::coprime;
    Cyclotomic prod;
    Cyclotomic sum_sq;

    static SatakeParams from_character(const UnramifiedCharacter& chi, const LocalSetting& L);
    Cyclotomic e1() const { return sum_sq; }
    Cyclotomic e2() const { return prod * prod; }
};

// Thrown when no unramified character reproduces the eigenvalue series.
struct inconsistent_eigendata : std::domain_error {
    int index;
    inconsistent_eigendata(const std::string& what, int i) : std::domain_error(what), index(i) {}
};

// lambda_F(T_{k,l}) = p^{(k+l)(1 - weight/2)} lambda_f(m(p^{-k}, p^{-l}))
LaurentSeries translated_zeta(const EigenData& e, long p, int order);

// Requires depth(p) >= 3.
SatakeParams satake_from_eigen(const EigenData& e, long p);

// (1 + chi1 chi2 pX^2) / ((1 - chi1^2 pX^2)(1 - chi2^2 pX^2)), times 1/C(L_p) when dividing.
RationalFunction L_factor(const SatakeParams& sp, const LocalSetting& L);

struct ZetaLCheck {
    bool ok = false;
    // First exponent at which the two series differ, or -1.
    int first_mismatch = -1;
    std::string detail;
};

ZetaLCheck check_zeta_L_relation(const EigenData& e, long p, int order);

// Eigendata at p whose translated zeta series is the expansion of the L-factor of chi.
EigenData synthetic_eigendata(std::shared_ptr<const FQM> form, int weight, long p, const UnramifiedCharacter& chi,
                              int depth);

// {"p", "eigenvalues", "satake": {"e1", "e2", "chi1chi2"}, "l_factor": {"num", "den"}} with exact strings.
std::string lfun_report_json(const EigenData& e, const std::vector<long>& primes);

}  // namespace vvmf
