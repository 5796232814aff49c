#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "vvmf/fqm.hpp"
#include "vvmf/matrix2.hpp"

namespace vvmf {

// Truncated expansion sum_{lambda, n} c(lambda, n) q^n e_lambda, known for 0 <= n <= bound.
class VVQExpansion {
public:
    using Key = std::pair<long, Rat>;

    VVQExpansion(std::shared_ptr<const FQM> form, int weight, Rat bound);

    const FQM& form() const { return *form_; }
    std::shared_ptr<const FQM> form_ptr() const { return form_; }
    int weight() const { return weight_; }
    const Rat& bound() const { return bound_; }
    const std::map<Key, Cyclotomic>& coeffs() const { return c_; }

    // Throws out_of_range past the bound and invalid_argument if n is not in q(lambda) + Z.
    Cyclotomic coeff(long lambda, const Rat& n) const;
    void add(long lambda, const Rat& n, const Cyclotomic& c);

    VVQExpansion restricted(const Rat& bound) const;
    VVQExpansion scaled(const Cyclotomic& c) const;
    VVQExpansion operator+(const VVQExpansion& o) const;
    VVQExpansion operator-(const VVQExpansion& o) const;
    bool is_zero() const { return c_.empty(); }
    // Equality on the common range.
    bool agrees_with(const VVQExpansion& o) const;

    // Rows "c_1,...,c_r<TAB>a/b<TAB>coefficient" with c_i the coordinates of lambda.
    std::string to_tsv() const;
    std::string to_json() const;

private:
    std::shared_ptr<const FQM> form_;
    int weight_;
    Rat bound_;
    std::map<Key, Cyclotomic> c_;

    void check_key(long lambda, const Rat& n) const;
};

// Theta series of a positive definite even lattice of even rank, weight rank/2.
VVQExpansion theta_series(const IntMatrix& gram, const Rat& bound);

// Double coset of m(p^-k, p^-l), k <= l, k + l even.
struct HeckeIndex {
    long p = 2;
    int k = 0, l = 0;
};

enum class HeckeNormalization {
    plain,       // sum of f | M over the double coset
    determinant  // additionally multiplied by det(m)^(weight/2 - 1)
};

// Upper triangular representatives of Gamma \ Gamma m(p^-k, p^-l) Gamma.
std::vector<QMat2> hecke_representatives(const HeckeIndex& t);

VVQExpansion hecke_apply(const VVQExpansion& f, const HeckeIndex& t,
                         HeckeNormalization norm = HeckeNormalization::plain);

// The scalar c with Tf = c f on the common range; throws not_an_eigenform otherwise.
struct not_an_eigenform : std::domain_error {
    using std::domain_error::domain_error;
};

Cyclotomic eigenvalue_of(const VVQExpansion& f, const VVQExpansion& Tf);

}  // namespace vvmf
