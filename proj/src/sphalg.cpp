#include "vvmf/sphalg.hpp"

#include <sstream>
#include <stdexcept>

namespace vvmf {

namespace {

Rat ppow(long p, long e) { return rat_pow(Rat(p), e); }

QMat2 cell_matrix(long p, int a, int b) { return m_diag(ppow(p, a), ppow(p, b)); }

// Cartan exponents of g without the compact factors.
Cell cell_of(const QMat2& g, long p) {
    Rat det = g.det();
    if (det == 0 || !in_Q(g, p)) throw std::invalid_argument("hecke: matrix not in Q_p");
    int k = min_ord(g, p);
    return {k, ord_p(det, p) - k};
}

void check_index(int k, int l) {
    if (k > l) throw std::invalid_argument("hecke: need k <= l");
    if ((k + l) % 2 != 0) throw std::invalid_argument("hecke: k + l must be even");
}

}  // namespace

LocalSetting LocalSetting::at(const FQM& D, long p) {
    auto S = p_part(D, p);
    LocalSetting L;
    L.p = p;
    L.Dp = S.part;
    if (S.part->order() == 1) return L;
    L.regime = Regime::dividing;
    if (p == 2) throw std::domain_error("dividing regime: p = 2 is not supported");
    if (S.part->level() != p) throw std::domain_error("dividing regime: level of D_p must be p");
    if (!S.part->is_anisotropic()) throw std::domain_error("dividing regime: D_p must be anisotropic");
    return L;
}

bool LocalSetting::operator==(const LocalSetting& o) const {
    return p == o.p && regime == o.regime && Dp->key() == o.Dp->key();
}

Cyclotomic gauss_quotient(const LocalSetting& L, int l) {
    if (L.regime == Regime::coprime) return Cyclotomic(1L);
    if (l < 0) throw std::domain_error("dividing regime: negative exponent");
    return L.Dp->gauss_sum(1) / L.Dp->gauss_sum(ipow(L.p, static_cast<unsigned>(l)));
}

GroupRingOperator generator_core(const LocalSetting& L, int k, int l) {
    check_index(k, l);
    if (L.regime == Regime::coprime) return GroupRingOperator::identity(1);
    const long n = L.dim();
    Cyclotomic c = gauss_quotient(L, l);
    if (k == l) return GroupRingOperator::identity(n).scaled(c);
    std::vector<Cyclotomic> e(n * n, Cyclotomic(0L));
    for (long j = 0; j < n; ++j) e[j] = c;
    return GroupRingOperator::from_entries(n, e);
}

GroupRingOperator eval_generator(const LocalSetting& L, const HeckeGenerator& T, const QMat2& g) {
    if (T.regime != L.regime) throw std::invalid_argument("eval_generator: regime mismatch");
    if (T.index.p != L.p) throw std::invalid_argument("eval_generator: prime mismatch");
    check_index(T.index.k, T.index.l);
    if (cell_of(g, L.p) != Cell{T.index.k, T.index.l}) return GroupRingOperator::zero(L.dim());
    if (L.regime == Regime::coprime) return GroupRingOperator::identity(1);
    auto F = cartan(g, L.p);
    return omega_k(*L.Dp, L.p, F.k1) * generator_core(L, F.k, F.l) * omega_k(*L.Dp, L.p, F.k2);
}

HeckeElement HeckeElement::generator(const LocalSetting& L, int k, int l) {
    check_index(k, l);
    if (L.regime == Regime::dividing && k < 0) throw std::domain_error("dividing regime: negative exponent");
    HeckeElement T(L);
    T.add(k, l, Cyclotomic(1L));
    return T;
}

Cyclotomic HeckeElement::coeff(int k, int l) const {
    auto it = c_.find({k, l});
    return it == c_.end() ? Cyclotomic(0L) : it->second;
}

void HeckeElement::add(int k, int l, const Cyclotomic& c) {
    check_index(k, l);
    auto& v = c_[{k, l}];
    v += c;
    if (v.is_zero()) c_.erase({k, l});
}

GroupRingOperator HeckeElement::operator()(const QMat2& g) const {
    Cell cl = cell_of(g, L_.p);
    auto it = c_.find(cl);
    if (it == c_.end()) return GroupRingOperator::zero(L_.dim());
    HeckeGenerator T{{L_.p, cl.first, cl.second}, L_.regime};
    return eval_generator(L_, T, g).scaled(it->second);
}

void HeckeElement::check_compatible(const HeckeElement& o) const {
    if (!(L_ == o.L_)) throw std::invalid_argument("hecke: operands of different algebras");
}

HeckeElement HeckeElement::operator+(const HeckeElement& o) const {
    check_compatible(o);
    HeckeElement r = *this;
    for (const auto& [kl, c] : o.c_) r.add(kl.first, kl.second, c);
    return r;
}

HeckeElement HeckeElement::scaled(const Cyclotomic& c) const {
    HeckeElement r(L_);
    for (const auto& [kl, v] : c_) r.add(kl.first, kl.second, v * c);
    return r;
}

bool HeckeElement::operator==(const HeckeElement& o) const { return L_ == o.L_ && c_ == o.c_; }

std::ostream& operator<<(std::ostream& os, const HeckeElement& T) {
    if (T.terms().empty()) return os << "0";
    bool first = true;
    for (const auto& [kl, c] : T.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")*T(" << kl.first << "," << kl.second << ")";
    }
    return os;
}

HeckeElement convolve(const HeckeElement& T1, const HeckeElement& T2) {
    if (!(T1.setting() == T2.setting())) throw std::invalid_argument("convolve: operands of different algebras");
    const LocalSetting& L = T1.setting();
    const long p = L.p;
    HeckeElement R(L);
    for (const auto& [c1, a1] : T1.terms()) {
        auto reps = coset_reps(p, c1.first, c1.second);
        HeckeGenerator G1{{p, c1.first, c1.second}, L.regime};
        for (const auto& [c2, a2] : T2.terms()) {
            HeckeGenerator G2{{p, c2.first, c2.second}, L.regime};
            const int s = c1.first + c1.second + c2.first + c2.second;
            for (int a = c1.first + c2.first; 2 * a <= s; ++a) {
                const int b = s - a;
                QMat2 m = cell_matrix(p, a, b);
                GroupRingOperator V = GroupRingOperator::zero(L.dim());
                for (const auto& h : reps) {
                    QMat2 rest = h.inv() * m;
                    if (cell_of(rest, p) != c2) continue;
                    V = V + eval_generator(L, G1, h) * eval_generator(L, G2, rest);
                }
                if (V.is_zero()) continue;
                GroupRingOperator C = generator_core(L, a, b);
                Cyclotomic coef;
                bool found = false;
                for (long i = 0; i < L.dim() && !found; ++i)
                    for (long j = 0; j < L.dim() && !found; ++j) {
                        Cyclotomic g = C.entry(i, j);
                        if (!g.is_zero()) {
                            coef = V.entry(i, j) / g;
                            found = true;
                        }
                    }
                if (!found || V != C.scaled(coef))
                    throw std::domain_error("convolve: product leaves the span of the generators");
                R.add(a, b, coef * a1 * a2);
            }
        }
    }
    return R;
}

Cyclotomic SatakeImage::at(int a, int b) const {
    auto it = values.find({a, b});
    return it == values.end() ? Cyclotomic(0L) : it->second;
}

void SatakeImage::add(int a, int b, const Cyclotomic& c) {
    if ((a + b) % 2 != 0) throw std::logic_error("satake: odd-parity support");
    auto& v = values[{a, b}];
    v += c;
    if (v.is_zero()) values.erase({a, b});
}

bool SatakeImage::weyl_invariant() const {
    for (const auto& [ab, v] : values)
        if (at(ab.second, ab.first) != v) return false;
    return true;
}

SatakeImage SatakeImage::operator*(const SatakeImage& o) const {
    SatakeImage r;
    for (const auto& [x, u] : values)
        for (const auto& [y, v] : o.values) r.add(x.first + y.first, x.second + y.second, u * v);
    return r;
}

bool SatakeImage::operator==(const SatakeImage& o) const { return values == o.values; }

std::string SatakeImage::to_tsv() const {
    std::ostringstream os;
    for (const auto& [ab, v] : values) os << ab.first << "\t" << ab.second << "\t" << v.str() << "\n";
    return os.str();
}

SatakeImage satake_enumerated(const HeckeElement& T) {
    const LocalSetting& L = T.setting();
    const long p = L.p;
    SatakeImage S;
    for (const auto& [kl, coef] : T.terms()) {
        const auto [k, l] = kl;
        HeckeGenerator G{{p, k, l}, L.regime};
        const long span = ipow(p, static_cast<unsigned>(l - k));
        for (int a = k; a <= l; ++a) {
            const int b = k + l - a;
            QMat2 m = cell_matrix(p, a, b);
            Cyclotomic sum(0L);
            for (long j = 0; j < span; ++j) {
                Rat u(j, span);
                u.canonicalize();
                QMat2 g = m * n_up(u);
                if (cell_of(g, p) != kl) continue;
                sum += eval_generator(L, G, g).entry(0, 0);
            }
            S.add(a, b, sum * Cyclotomic(ppow(p, (b - a) / 2)) * coef);
        }
    }
    return S;
}

SatakeImage satake(const HeckeElement& T) {
    const LocalSetting& L = T.setting();
    if (L.regime == Regime::coprime) return satake_enumerated(T);
    const long p = L.p;
    const bool delta = L.Dp->order() == p * p;
    const Cyclotomic gamma = L.Dp->weil_index();
    SatakeImage S;
    for (const auto& [kl, coef] : T.terms()) {
        const auto [k, l] = kl;
        Cyclotomic c = gauss_quotient(L, l) * coef;
        if (k == l) {
            S.add(k, k, c);
            continue;
        }
        c *= Cyclotomic(ppow(p, (l - k) / 2));
        S.add(k, l, c);
        S.add(l, k, c);
        if (delta)
            for (int nu = k + 1; nu < l; ++nu) S.add(nu, k + l - nu, c * gamma);
    }
    return S;
}

UnramifiedCharacter::UnramifiedCharacter(Cyclotomic c1, Cyclotomic c2) : chi1(std::move(c1)), chi2(std::move(c2)) {
    if (chi1.is_zero() || chi2.is_zero()) throw std::invalid_argument("unramified character: zero value");
}

Cyclotomic UnramifiedCharacter::operator()(int a, int b) const { return chi1.pow(a) * chi2.pow(b); }

Cyclotomic character_eval(const UnramifiedCharacter& chi, const SatakeImage& S) {
    Cyclotomic r(0L);
    for (const auto& [ab, v] : S.values) r += v * chi(ab.first, ab.second);
    return r;
}

Cyclotomic character_eval(const UnramifiedCharacter& chi, const HeckeElement& T) {
    return character_eval(chi, satake(T));
}

LaurentSeries B_series(const UnramifiedCharacter& chi, const LocalSetting& L, int order) {
    if (order < 0) throw std::invalid_argument("B_series: negative order");
    LaurentSeries B = LaurentSeries::zero(order);
    for (int n = 0; n <= order; n += 2) {
        Cyclotomic c(0L);
        for (int k = 0; 2 * k <= n; ++k) c += character_eval(chi, HeckeElement::generator(L, k, n - k));
        B.set(n, c);
    }
    return B;
}

Cyclotomic kappa_p(const LocalSetting& L) {
    Cyclotomic g = L.Dp->gauss_sum(1);
    return (Cyclotomic(L.p) / g + Cyclotomic(1L)) / Cyclotomic(L.p + 1);
}

Cyclotomic C_constant(const LocalSetting& L) {
    return Cyclotomic(L.Dp->order()) / (kappa_p(L) * L.Dp->gauss_sum(1));
}

RationalFunction B_rational(const UnramifiedCharacter& chi, const LocalSetting& L) {
    const Cyclotomic p(L.p);
    Cyclotomic front = L.regime == Regime::dividing ? C_constant(L).inverse() : Cyclotomic(1L);
    Cyclotomic zero(0L), one(1L);
    Polynomial num{front, zero, front * chi.chi1 * chi.chi2 * p};
    Polynomial den = poly_mul({one, zero, -(chi.chi1 * chi.chi1 * p)}, {one, zero, -(chi.chi2 * chi.chi2 * p)});
    return RationalFunction(num, den);
}

RationalFunction lambda_rational(const UnramifiedCharacter& chi) {
    Cyclotomic zero(0L), one(1L);
    Polynomial num{one, zero, chi.chi1 * chi.chi2};
    Polynomial den = poly_mul({one, zero, -(chi.chi1 * chi.chi1)}, {one, zero, -(chi.chi2 * chi.chi2)});
    return RationalFunction(num, den);
}

long cell_volume(long p, int k, int l) {
    check_index(k, l);
    return k == l ? 1 : ipow(p, static_cast<unsigned>(l - k - 1)) * (p + 1);
}

Cyclotomic zonal_average(const UnramifiedCharacter& chi, long p, int k, int l, int m) {
    check_index(k, l);
    if (m < 1) throw std::invalid_argument("zonal_average: depth must be positive");
    const long M = ipow(p, static_cast<unsigned>(m));
    std::vector<bool> square(M, false);
    for (long y = 1; y < M; ++y)
        if (y % p) square[y * y % M] = true;
    std::vector<int> ordv(M, m);
    for (long x = 1; x < M; ++x) {
        long y = x;
        int o = 0;
        while (y % p == 0) y /= p, ++o;
        ordv[x] = o;
    }
    // count[b] = number of representatives whose torus part is m(p^{k+l-b}, p^b)
    std::map<int, long> count;
    long total = 0;
    for (long c = 0; c < M; ++c)
        for (long d = 0; d < M; ++d) {
            if (c % p == 0 && d % p == 0) continue;
            const int b = std::min(ordv[c] + k, ordv[d] + l);
            long n = 0;
            for (long a = 0; a < M; ++a)
                for (long bb = 0; bb < M; ++bb)
                    if (square[mod(a * d - bb * c, M)]) ++n;
            count[b] += n;
            total += n;
        }
    Cyclotomic sum(0L);
    for (const auto& [b, n] : count) {
        const int a = k + l - b;
        sum += Cyclotomic(Rat(n)) * chi(a, b) * Cyclotomic(ppow(p, (b - a) / 2));
    }
    return sum / Cyclotomic(Rat(total));
}

Cyclotomic zonal_oracle(const UnramifiedCharacter& chi, long p, int k, int l, int m) {
    if (m < l + 1) throw std::invalid_argument("zonal_oracle: depth must be at least l + 1");
    Cyclotomic v = zonal_average(chi, p, k, l, m);
    if (v != zonal_average(chi, p, k, l, m + 1)) throw std::runtime_error("zonal_oracle: value not stable in depth");
    return v;
}

}  // namespace vvmf
