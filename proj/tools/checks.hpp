#pragma once

#include <random>
#include <string>
#include <vector>

#include "vvmf/fqm.hpp"
#include "vvmf/lfun.hpp"
#include "vvmf/padic.hpp"
#include "vvmf/qexp.hpp"
#include "vvmf/sphalg.hpp"
#include "vvmf/weil.hpp"

namespace vvmf::checks {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& what);
    Outcome& operator+=(const Outcome& o);
};

Mat2 random_principal(long N, std::mt19937& rng);
QMat2 random_square_det(std::mt19937& rng, long p);
QMat2 random_K(std::mt19937& rng, long p);
// Random word in S and T with its matrix.
Mat2 random_sl2(std::mt19937& rng, int len);
UnramifiedCharacter random_character(std::mt19937& rng);
std::vector<Cell> generators_up_to(int s);

// q(x + y) - q(x) - q(y) = (x, y), q(-x) = q(x), minimal level, |D| = |det G|,
// signature against the real signature of the lattice.
Outcome fqm_invariants(const FQM& D);
// g(D) = sqrt|D| e(sig/8) with sig = b+ - b- of the lattice.
Outcome milgram(const FQM& D);
// S^2 = Z, (ST)^3 = Z, unitarity on random words, triviality on Gamma(N).
Outcome weil_relations(const FQM& D, std::mt19937& rng, int words, int gammas);

Outcome padic_decompositions(long p, int count, std::mt19937& rng);
// Distinct cosets, correct Cartan cell and p^2 + p elements for (0, 2).
Outcome coset_sets(long p, const std::vector<Cell>& cells);

// satake(T1 * T2) = satake(T1) satake(T2) for generators with k + l <= max_deg.
Outcome satake_homomorphism(const LocalSetting& L, int max_deg);
// Closed form against unipotent averaging and Weyl invariance for k + l <= max_deg.
Outcome satake_closed_form(const LocalSetting& L, int max_deg);
// B-series against the rational function to the given order.
Outcome series_identity(const LocalSetting& L, const std::vector<UnramifiedCharacter>& chis, int order);
// Depth-stable zonal values at (0,0), (1,1), (0,2) against the lattice series.
Outcome zonal_consistency(long p, const std::vector<UnramifiedCharacter>& chis);

// Theta series: T(m(1, p^-2)) eigenform on >= 5 coefficients, stable between two bounds,
// and T(m(p^-1, p^-3)) = chi_D(p) T(m(1, p^-2)).
Outcome theta_eigenform(const IntMatrix& gram, long p, const Rat& small, const Rat& large);
// T(m(p^-1, p^-3)) = chi_D(p) T(m(1, p^-2)) and commutation at distinct primes.
Outcome hecke_relations(const VVQExpansion& f, const std::vector<long>& primes);

Outcome zeta_L(const EigenData& e, long p, int order);
// Local zeta at a dividing prime against the two-part form with the constant term set to 1.
Outcome dividing_local_zeta(const EigenData& e, long p, int order);
// Round trip character -> eigendata -> Satake parameters -> L-factor.
Outcome synthetic_round_trip(std::shared_ptr<const FQM> D, int weight, long p, int order, std::mt19937& rng);

// Theta bound that leaves q^1 after T(m(1, p^{-2 depth})).
Rat eigen_bound(long p, int depth);

}  // namespace vvmf::checks
