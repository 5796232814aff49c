#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "vvmf/fqm.hpp"
#include "vvmf/padic.hpp"
#include "vvmf/qexp.hpp"
#include "vvmf/series.hpp"
#include "vvmf/weil.hpp"

namespace vvmf {

enum class Regime { coprime, dividing };

// Local data at p: the p-part D_p of a form and the regime it determines.
// The dividing regime requires D_p anisotropic of level p with p odd.
struct LocalSetting {
    long p = 2;
    Regime regime = Regime::coprime;
    std::shared_ptr<const FQM> Dp;

    static LocalSetting at(const FQM& D, long p);
    long dim() const { return Dp->order(); }
    bool operator==(const LocalSetting& o) const;
};

// Generator supported on K_p m(p^k, p^l) K_p; index.p is the prime.
struct HeckeGenerator {
    HeckeIndex index;
    Regime regime = Regime::coprime;
};

// g(D_p) / g_{p^l}(D_p)
Cyclotomic gauss_quotient(const LocalSetting& L, int l);

// Value of the generator at m(p^k, p^l).
GroupRingOperator generator_core(const LocalSetting& L, int k, int l);
GroupRingOperator eval_generator(const LocalSetting& L, const HeckeGenerator& T, const QMat2& g);

using Cell = std::pair<int, int>;

class HeckeElement {
public:
    explicit HeckeElement(LocalSetting L) : L_(std::move(L)) {}
    static HeckeElement generator(const LocalSetting& L, int k, int l);
    static HeckeElement unit(const LocalSetting& L) { return generator(L, 0, 0); }

    const LocalSetting& setting() const { return L_; }
    const std::map<Cell, Cyclotomic>& terms() const { return c_; }
    Cyclotomic coeff(int k, int l) const;
    void add(int k, int l, const Cyclotomic& c);

    GroupRingOperator operator()(const QMat2& g) const;
    HeckeElement operator+(const HeckeElement& o) const;
    HeckeElement scaled(const Cyclotomic& c) const;
    bool operator==(const HeckeElement& o) const;

private:
    LocalSetting L_;
    std::map<Cell, Cyclotomic> c_;

    void check_compatible(const HeckeElement& o) const;
};

std::ostream& operator<<(std::ostream& os, const HeckeElement& T);

// Throws domain_error if the product leaves the span of the generators.
HeckeElement convolve(const HeckeElement& T1, const HeckeElement& T2);

// Finitely supported function on M_p / D_p, (a, b) standing for m(p^a, p^b).
struct SatakeImage {
    std::map<Cell, Cyclotomic> values;

    Cyclotomic at(int a, int b) const;
    void add(int a, int b, const Cyclotomic& c);
    bool weyl_invariant() const;
    // Product in the group algebra of the torus.
    SatakeImage operator*(const SatakeImage& o) const;
    bool operator==(const SatakeImage& o) const;
    // Rows "a<TAB>b<TAB>coefficient".
    std::string to_tsv() const;
};

// Closed form in the dividing regime, unipotent averaging in the coprime regime.
SatakeImage satake(const HeckeElement& T);
// delta(m)^{1/2} sum_u <T(m n(u)) e_0, e_0> over u in p^{-(l-k)} Z / Z, in either regime.
SatakeImage satake_enumerated(const HeckeElement& T);

struct UnramifiedCharacter {
    Cyclotomic chi1, chi2;  // chi_i(p)

    UnramifiedCharacter(Cyclotomic c1, Cyclotomic c2);
    static UnramifiedCharacter trivial() { return {Cyclotomic(1L), Cyclotomic(1L)}; }
    // chi(m(p^a, p^b))
    Cyclotomic operator()(int a, int b) const;
};

Cyclotomic character_eval(const UnramifiedCharacter& chi, const SatakeImage& S);
Cyclotomic character_eval(const UnramifiedCharacter& chi, const HeckeElement& T);

// sum over k <= l, k, l >= 0, k + l even, of chi^(T_{k,l}) X^{k+l}.
LaurentSeries B_series(const UnramifiedCharacter& chi, const LocalSetting& L, int order);

// kappa_p = (p g(D_p)^{-1} + 1) / (p + 1)
Cyclotomic kappa_p(const LocalSetting& L);
// C(L_p) = |D_p| / (kappa_p g(D_p)); equal to 1 in the coprime regime.
Cyclotomic C_constant(const LocalSetting& L);

// (1 + chi1 chi2 pX^2) / ((1 - chi1^2 pX^2)(1 - chi2^2 pX^2)), times 1/C(L_p) when p divides |D|.
RationalFunction B_rational(const UnramifiedCharacter& chi, const LocalSetting& L);
// (1 + chi1 chi2 X^2) / ((1 - chi1^2 X^2)(1 - chi2^2 X^2))
RationalFunction lambda_rational(const UnramifiedCharacter& chi);

// Number of right K_p-cosets in K_p m(p^k, p^l) K_p.
long cell_volume(long p, int k, int l);

// Average of chi delta^{1/2} of the Iwasawa torus part of x m(p^k, p^l) over x in K_p / K_p(p^m).
Cyclotomic zonal_average(const UnramifiedCharacter& chi, long p, int k, int l, int m);
// zonal_average at depth m, checked against depth m + 1; runtime_error if they differ.
Cyclotomic zonal_oracle(const UnramifiedCharacter& chi, long p, int k, int l, int m);

}  // namespace vvmf
