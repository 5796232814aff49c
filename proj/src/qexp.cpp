#include "vvmf/qexp.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "vvmf/linalg.hpp"
#include "vvmf/padic.hpp"
#include "vvmf/weil.hpp"

namespace vvmf {

VVQExpansion::VVQExpansion(std::shared_ptr<const FQM> form, int weight, Rat bound)
    : form_(std::move(form)), weight_(weight), bound_(std::move(bound)) {
    if (!form_) throw std::invalid_argument("expansion needs a form");
    if (bound_ < 0) throw std::invalid_argument("expansion bound must be nonnegative");
}

void VVQExpansion::check_key(long lambda, const Rat& n) const {
    if (lambda < 0 || lambda >= form_->order()) throw std::invalid_argument("element outside the module");
    if (n < 0 || n > bound_) throw std::out_of_range("exponent " + n.get_str() + " outside the known range");
    if (QmodZ(n) != form_->q(lambda)) throw std::invalid_argument("exponent not congruent to q(lambda)");
}

Cyclotomic VVQExpansion::coeff(long lambda, const Rat& n) const {
    check_key(lambda, n);
    auto it = c_.find({lambda, n});
    return it == c_.end() ? Cyclotomic(0L) : it->second;
}

void VVQExpansion::add(long lambda, const Rat& n, const Cyclotomic& c) {
    check_key(lambda, n);
    if (c.is_zero()) return;
    auto [it, fresh] = c_.emplace(Key{lambda, n}, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

VVQExpansion VVQExpansion::restricted(const Rat& bound) const {
    VVQExpansion r(form_, weight_, std::min(bound, bound_));
    for (const auto& [k, v] : c_)
        if (k.second <= r.bound_) r.c_.emplace(k, v);
    return r;
}

VVQExpansion VVQExpansion::scaled(const Cyclotomic& c) const {
    VVQExpansion r(form_, weight_, bound_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : c_) r.c_.emplace(k, v * c);
    return r;
}

VVQExpansion VVQExpansion::operator+(const VVQExpansion& o) const {
    if (form_->key() != o.form_->key()) throw std::invalid_argument("expansions over different forms");
    VVQExpansion r = restricted(o.bound_);
    for (const auto& [k, v] : o.c_)
        if (k.second <= r.bound_) r.add(k.first, k.second, v);
    return r;
}

VVQExpansion VVQExpansion::operator-(const VVQExpansion& o) const { return *this + o.scaled(Cyclotomic(-1L)); }

bool VVQExpansion::agrees_with(const VVQExpansion& o) const { return (*this - o).is_zero(); }

std::string VVQExpansion::to_tsv() const {
    std::ostringstream os;
    for (const auto& [k, v] : c_) {
        auto c = form_->coords(k.first);
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
        Rat n = k.second;
        os << "\t" << n.get_num().get_str() << "/" << n.get_den().get_str() << "\t" << v.str() << "\n";
    }
    return os.str();
}

std::string VVQExpansion::to_json() const {
    nlohmann::json j;
    j["weight"] = weight_;
    j["bound"] = bound_.get_str();
    j["orders"] = form_->orders();
    j["coefficients"] = nlohmann::json::array();
    for (const auto& [k, v] : c_) {
        Rat n = k.second;
        j["coefficients"].push_back({{"lambda", form_->coords(k.first)},
                                     {"exponent", n.get_num().get_str() + "/" + n.get_den().get_str()},
                                     {"coefficient", v.str()}});
    }
    return j.dump();
}

VVQExpansion theta_series(const IntMatrix& gram, const Rat& bound) {
    LatticeInput L = LatticeInput::from_gram(gram);
    if (L.rank % 2 != 0) throw std::invalid_argument("theta_series: lattice rank must be even");
    if (!L.positive_definite()) throw std::invalid_argument("theta_series: lattice must be positive definite");
    auto D = std::make_shared<const FQM>(FQM::from_gram(gram));
    const int m = L.rank;
    RatMatrix G(m, std::vector<Rat>(m)), Ginv(m, std::vector<Rat>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) G[i][j] = gram[i][j];
    for (int j = 0; j < m; ++j) {
        std::vector<Rat> ej(m, Rat(0));
        ej[j] = 1;
        auto col = solve_rational(G, ej);
        for (int i = 0; i < m; ++i) Ginv[i][j] = (*col)[i];
    }
    VVQExpansion f(D, m / 2, bound);
    // x = G^{-1} z ranges over L'; |z_i| = |(x, e_i)| <= sqrt(2 q(x) G_ii)
    std::vector<long> box(m);
    for (int i = 0; i < m; ++i) {
        Rat s = 2 * bound * gram[i][i];
        long r = static_cast<long>(std::floor(std::sqrt(s.get_d()))) + 1;
        while (r * r > s) --r;
        box[i] = r;
    }
    std::vector<long> z(m);
    for (int i = 0; i < m; ++i) z[i] = -box[i];
    for (;;) {
        Rat q = 0;
        for (int i = 0; i < m; ++i) {
            if (z[i] == 0) continue;
            Rat row = 0;
            for (int j = 0; j < m; ++j)
                if (z[j]) row += Ginv[i][j] * z[j];
            q += row * z[i];
        }
        q /= 2;
        if (q <= bound) f.add(D->class_of_dual(z), q, Cyclotomic(1L));
        int i = 0;
        while (i < m && z[i] == box[i]) z[i++] = -box[i];
        if (i == m) break;
        ++z[i];
    }
    return f;
}

std::vector<QMat2> hecke_representatives(const HeckeIndex& t) {
    std::vector<QMat2> out;
    for (const auto& x : coset_reps(t.p, t.k, t.l)) out.push_back(x.inv());
    return out;
}

VVQExpansion hecke_apply(const VVQExpansion& f, const HeckeIndex& t, HeckeNormalization norm) {
    const FQM& D = f.form();
    const long p = t.p, N = D.level();
    if (!is_prime(p)) throw std::invalid_argument("hecke_apply: p must be prime");
    if (t.k > t.l || (t.k + t.l) % 2 != 0) throw std::domain_error("hecke_apply: need k <= l and k + l even");
    if (N % 2 == 0) throw std::domain_error("hecke_apply: level must be odd");
    if (D.order() % p == 0 && !p_part(D, p).part->is_anisotropic())
        throw std::domain_error("hecke_apply: p-part of the discriminant form is not anisotropic");
    const Rat shrink = rat_pow(Rat(p), t.l - t.k);
    if (f.bound() < shrink) throw std::domain_error("hecke_apply: truncation bound too small");
    Rat out_bound;
    {
        Rat x = f.bound() / shrink * N;
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        out_bound = Rat(fl, N);
        out_bound.canonicalize();
    }
    const int kappa = f.weight();
    VVQExpansion out(f.form_ptr(), kappa, out_bound);
    // Terms of single representatives may land off the exponent grid; they cancel in the sum.
    // Those are tracked in floating point only, as a consistency check.
    std::map<VVQExpansion::Key, Cyclotomic> acc;
    std::map<VVQExpansion::Key, std::pair<std::complex<double>, double>> stray;
    const int det_exp = -(t.k + t.l);  // det M = p^det_exp
    for (const auto& M : hecke_representatives(t)) {
        // det^{kappa/2} delta^{-kappa}
        int delta_exp = ord_p(M.d, p);
        int pe = det_exp / 2 * kappa - delta_exp * kappa;
        if (norm == HeckeNormalization::determinant) pe += det_exp * (kappa - 2) / 2;
        const Rat scale = rat_pow(Rat(p), pe);
        GroupRingOperator R = rho_inv_extended(D, p, M);
        std::vector<std::vector<Cyclotomic>> cols(D.order());
        std::vector<std::vector<std::complex<double>>> fcols(D.order());
        const Rat stretch = M.a / M.d, shift = M.b / M.d;
        for (const auto& [key, c] : f.coeffs()) {
            const auto& [lambda, n] = key;
            Rat m = n * stretch;
            if (m > out_bound) continue;
            if (cols[lambda].empty()) {
                cols[lambda] = R.column(lambda);
                for (const auto& x : cols[lambda]) fcols[lambda].push_back(x.to_complex());
            }
            std::optional<Cyclotomic> a;
            std::complex<double> af = 0;
            for (long mu = 0; mu < D.order(); ++mu) {
                if (cols[lambda][mu].is_zero()) continue;
                if (QmodZ(m) == D.q(mu)) {
                    if (!a) a = c * Cyclotomic(scale) * e(n * shift);
                    acc[{mu, m}] += *a * cols[lambda][mu];
                } else {
                    if (af == 0.0) af = c.to_complex() * scale.get_d() * std::polar(1.0, 2 * M_PI * Rat(n * shift).get_d());
                    auto& s = stray[{mu, m}];
                    auto v = af * fcols[lambda][mu];
                    s.first += v;
                    s.second += std::abs(v);
                }
            }
        }
    }
    for (const auto& [key, s] : stray)
        if (std::abs(s.first) > 1e-8 * (1 + s.second))
            throw std::logic_error("hecke_apply: uncancelled term off the exponent grid");
    for (const auto& [key, c] : acc) out.add(key.first, key.second, c);
    return out;
}

Cyclotomic eigenvalue_of(const VVQExpansion& f, const VVQExpansion& Tf) {
    Rat B = std::min(f.bound(), Tf.bound());
    VVQExpansion a = f.restricted(B), b = Tf.restricted(B);
    if (a.is_zero()) throw std::domain_error("eigenvalue_of: expansion vanishes on the common range");
    const auto& [key, c] = *a.coeffs().begin();
    Cyclotomic lambda = b.coeff(key.first, key.second) / c;
    VVQExpansion diff = b - a.scaled(lambda);
    if (!diff.is_zero()) {
        const auto& [k, v] = *diff.coeffs().begin();
        std::ostringstream os;
        os << "not an eigenform: mismatch at lambda=" << k.first << ", n=" << k.second.get_str() << " (difference "
           << v.str() << ")";
        throw not_an_eigenform(os.str());
    }
    return lambda;
}

}  // namespace vvmf
