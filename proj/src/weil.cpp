#include "vvmf/weil.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace vvmf {

// ---------------------------------------------------------------- operators

namespace {

using GR = std::vector<Int>;

void add_rotated(GR& dst, const GR& src, long shift, int N) {
    if (src.empty()) return;
    if (dst.empty()) dst.assign(N, Int(0));
    for (int j = 0; j < N; ++j)
        if (src[j] != 0) dst[mod(j + shift, N)] += src[j];
}

void add_conv(GR& dst, const GR& a, const GR& b, int N) {
    if (a.empty() || b.empty()) return;
    if (dst.empty()) dst.assign(N, Int(0));
    for (int i = 0; i < N; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < N; ++j) {
            if (b[j] == 0) continue;
            mpz_addmul(dst[(i + j) % N].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
}

// Group-ring numerators and denominator of a cyclotomic number in conductor N (a multiple of its own).
std::pair<GR, Int> to_group_ring(const Cyclotomic& x, int N) {
    Cyclotomic y = x.embed(static_cast<int>(lcm(x.conductor(), N)));
    if (y.conductor() != N) throw std::logic_error("to_group_ring: conductor mismatch");
    auto c = y.coeffs();
    Int den = 1;
    for (auto& r : c) den = lcm(den, Int(r.get_den()));
    GR g(N, Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) g[i] = Int(c[i] * den);
    return {g, den};
}

}  // namespace

GroupRingOperator GroupRingOperator::zero(long n) {
    GroupRingOperator A;
    A.n_ = n;
    A.g_.assign(n * n, GR());
    return A;
}

GroupRingOperator GroupRingOperator::identity(long n) {
    GroupRingOperator A = zero(n);
    for (long i = 0; i < n; ++i) A.g_[i * n + i] = GR{Int(1)};
    return A;
}

GroupRingOperator GroupRingOperator::from_entries(long n, const std::vector<Cyclotomic>& m) {
    if (static_cast<long>(m.size()) != n * n) throw std::invalid_argument("from_entries: size mismatch");
    long N = 1;
    for (const auto& x : m) N = lcm(N, x.conductor());
    GroupRingOperator A = zero(n);
    A.N_ = static_cast<int>(N);
    std::vector<std::pair<GR, Int>> parts;
    for (const auto& x : m) {
        parts.push_back(to_group_ring(x, A.N_));
        A.den_ = lcm(A.den_, parts.back().second);
    }
    for (long i = 0; i < n * n; ++i) {
        if (m[i].is_zero()) continue;
        GR g = parts[i].first;
        Int f = A.den_ / parts[i].second;
        for (auto& v : g) v *= f;
        A.g_[i] = g;
    }
    A.canonicalize();
    return A;
}

GroupRingOperator GroupRingOperator::monomial(const std::vector<long>& perm, const std::vector<Cyclotomic>& c) {
    const long n = static_cast<long>(perm.size());
    std::vector<Cyclotomic> m(n * n, Cyclotomic(0L));
    for (long j = 0; j < n; ++j) m[perm[j] * n + j] += c[j];
    return from_entries(n, m);
}

void GroupRingOperator::retarget(int N) {
    if (N == N_) return;
    if (N % N_ != 0) throw std::logic_error("retarget: not a multiple");
    const int k = N / N_;
    for (auto& g : g_) {
        if (g.empty()) continue;
        GR h(N, Int(0));
        for (std::size_t j = 0; j < g.size(); ++j) h[j * k] = g[j];
        g.swap(h);
    }
    N_ = N;
}

void GroupRingOperator::canonicalize() {
    Int common = den_;
    for (auto& g : g_) {
        if (g.empty()) continue;
        if (static_cast<int>(g.size()) != N_) g.resize(N_, Int(0));
        GR r = cyclotomic_reduce(N_, g);
        bool zero = true;
        for (auto& v : r)
            if (v != 0) zero = false;
        if (zero) {
            g.clear();
            continue;
        }
        r.resize(N_, Int(0));
        g.swap(r);
        for (auto& v : g)
            if (v != 0 && common != 1) common = gcd(common, v);
    }
    if (common != 1) {
        for (auto& g : g_)
            for (auto& v : g) v /= common;
        den_ /= common;
    }
}

GroupRingOperator GroupRingOperator::folded() const {
    if (scalar_ == Cyclotomic(1L)) return *this;
    GroupRingOperator A = *this;
    int N = static_cast<int>(lcm(N_, scalar_.conductor()));
    A.retarget(N);
    auto [s, sden] = to_group_ring(scalar_, N);
    for (auto& g : A.g_) {
        if (g.empty()) continue;
        GR h;
        add_conv(h, g, s, N);
        g.swap(h);
    }
    A.den_ *= sden;
    A.scalar_ = Cyclotomic(1L);
    A.canonicalize();
    return A;
}

Cyclotomic GroupRingOperator::entry(long i, long j) const {
    const GR& g = g_.at(i * n_ + j);
    if (g.empty()) return Cyclotomic(0L);
    return scalar_ * Cyclotomic::from_group_ring(N_, g, den_);
}

std::vector<Cyclotomic> GroupRingOperator::column(long j) const {
    std::vector<Cyclotomic> c;
    for (long i = 0; i < n_; ++i) c.push_back(entry(i, j));
    return c;
}

std::vector<Cyclotomic> GroupRingOperator::entries() const {
    std::vector<Cyclotomic> c;
    for (long i = 0; i < n_; ++i)
        for (long j = 0; j < n_; ++j) c.push_back(entry(i, j));
    return c;
}

GroupRingOperator GroupRingOperator::operator*(const GroupRingOperator& o) const {
    if (o.n_ != n_) throw std::invalid_argument("operator product: dimension mismatch");
    GroupRingOperator A = *this, B = o;
    int N = static_cast<int>(lcm(N_, o.N_));
    A.retarget(N);
    B.retarget(N);
    GroupRingOperator C = zero(n_);
    C.N_ = N;
    C.den_ = A.den_ * B.den_;
    C.scalar_ = A.scalar_ * B.scalar_;
    for (long i = 0; i < n_; ++i)
        for (long k = 0; k < n_; ++k) {
            const GR& a = A.g_[i * n_ + k];
            if (a.empty()) continue;
            for (long j = 0; j < n_; ++j) add_conv(C.g_[i * n_ + j], a, B.g_[k * n_ + j], N);
        }
    C.canonicalize();
    return C;
}

GroupRingOperator GroupRingOperator::operator+(const GroupRingOperator& o) const {
    if (o.n_ != n_) throw std::invalid_argument("operator sum: dimension mismatch");
    GroupRingOperator A = folded(), B = o.folded();
    int N = static_cast<int>(lcm(A.N_, B.N_));
    A.retarget(N);
    B.retarget(N);
    GroupRingOperator C = zero(n_);
    C.N_ = N;
    C.den_ = A.den_ * B.den_;
    for (long i = 0; i < n_ * n_; ++i) {
        GR& c = C.g_[i];
        if (!A.g_[i].empty()) {
            c.assign(N, Int(0));
            for (int j = 0; j < N; ++j) c[j] += A.g_[i][j] * B.den_;
        }
        if (!B.g_[i].empty()) {
            if (c.empty()) c.assign(N, Int(0));
            for (int j = 0; j < N; ++j) c[j] += B.g_[i][j] * A.den_;
        }
    }
    C.canonicalize();
    return C;
}

GroupRingOperator GroupRingOperator::operator-(const GroupRingOperator& o) const {
    return *this + o.scaled(Cyclotomic(-1L));
}

GroupRingOperator GroupRingOperator::scaled(const Cyclotomic& c) const {
    GroupRingOperator A = *this;
    A.scalar_ *= c;
    return A;
}

GroupRingOperator GroupRingOperator::adjoint() const {
    GroupRingOperator A = zero(n_);
    A.N_ = N_;
    A.den_ = den_;
    A.scalar_ = scalar_.conj();
    for (long i = 0; i < n_; ++i)
        for (long j = 0; j < n_; ++j) {
            const GR& g = g_[i * n_ + j];
            if (g.empty()) continue;
            GR h(N_, Int(0));
            for (int k = 0; k < N_; ++k) h[mod(-k, N_)] = g[k];
            A.g_[j * n_ + i] = h;
        }
    A.canonicalize();
    return A;
}

bool GroupRingOperator::is_zero() const {
    if (scalar_.is_zero()) return true;
    for (const auto& g : g_)
        if (!g.empty()) return false;
    return true;
}

bool GroupRingOperator::operator==(const GroupRingOperator& o) const {
    if (o.n_ != n_) return false;
    for (long i = 0; i < n_; ++i)
        for (long j = 0; j < n_; ++j)
            if (entry(i, j) != o.entry(i, j)) return false;
    return true;
}

void GroupRingOperator::mul_right_diag_roots(int N, const std::vector<long>& k) {
    retarget(static_cast<int>(lcm(N_, N)));
    const long f = N_ / N;
    for (long i = 0; i < n_; ++i)
        for (long j = 0; j < n_; ++j) {
            GR& g = g_[i * n_ + j];
            if (g.empty() || k[j] % N == 0) continue;
            GR h;
            add_rotated(h, g, k[j] * f, N_);
            g.swap(h);
        }
}

void GroupRingOperator::mul_right_root_matrix(int N, const std::vector<std::vector<long>>& k) {
    retarget(static_cast<int>(lcm(N_, N)));
    const long f = N_ / N;
    std::vector<GR> out(n_ * n_);
    for (long i = 0; i < n_; ++i)
        for (long l = 0; l < n_; ++l) {
            const GR& a = g_[i * n_ + l];
            if (a.empty()) continue;
            for (long j = 0; j < n_; ++j) add_rotated(out[i * n_ + j], a, k[l][j] * f, N_);
        }
    g_.swap(out);
    canonicalize();
}

std::ostream& operator<<(std::ostream& os, const GroupRingOperator& A) {
    os << "[";
    for (long i = 0; i < A.dim(); ++i) {
        os << (i ? ",[" : "[");
        for (long j = 0; j < A.dim(); ++j) os << (j ? ", " : "") << A.entry(i, j).minimized();
        os << "]";
    }
    return os << "]";
}

// ---------------------------------------------------------------- words

SL2Word sl2_word(const Mat2& g) {
    if (g.det() != 1) throw std::invalid_argument("sl2_word: matrix not in SL2(Z)");
    SL2Word w;
    long a = g.a, b = g.b, c = g.c, d = g.d;
    while (c != 0) {
        // nearest integer to a / c
        long q = (2 * a + c) / (2 * c);
        while (std::labs(a - q * c) * 2 > std::labs(c)) q += ((a - q * c > 0) == (c > 0)) ? 1 : -1;
        if (q) w.tokens.push_back({'T', q});
        w.tokens.push_back({'S', 1});
        long na = c, nb = d, nc = -(a - q * c), nd = -(b - q * d);
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    if (a == 1) {
        if (b) w.tokens.push_back({'T', b});
    } else {
        w.negate = true;
        if (b) w.tokens.push_back({'T', -b});
    }
    return w;
}

Mat2 evaluate(const SL2Word& w) {
    Mat2 m;
    for (const auto& t : w.tokens) m = m * (t.gen == 'S' ? S_MAT : Mat2{1, t.power, 0, 1});
    return w.negate ? -m : m;
}

std::string to_string(const SL2Word& w) {
    std::ostringstream os;
    if (w.negate) os << "-";
    for (std::size_t i = 0; i < w.tokens.size(); ++i) {
        if (i) os << " ";
        if (w.tokens[i].gen == 'S')
            os << "S";
        else
            os << "T^" << w.tokens[i].power;
    }
    if (w.tokens.empty()) os << "1";
    return os.str();
}

// ---------------------------------------------------------------- global representation

namespace {

std::vector<long> t_exponents(const FQM& D, long k) {
    const long N = D.level();
    std::vector<long> e(D.order());
    for (long x = 0; x < D.order(); ++x) {
        Rat v = D.q(x).value() * N * k;
        e[x] = mod(Int(v.get_num()).get_si(), N);
    }
    return e;
}

std::vector<std::vector<long>> s_exponents(const FQM& D) {
    const long N = D.level(), n = D.order();
    std::vector<std::vector<long>> k(n, std::vector<long>(n));
    for (long x = 0; x < n; ++x)
        for (long y = 0; y < n; ++y) {
            Rat v = D.bil(x, y).value() * N;
            k[x][y] = mod(-Int(v.get_num()).get_si(), N);
        }
    return k;
}

Cyclotomic s_scalar(const FQM& D) {
    return e(Rat(-D.signature(), 8)) * sqrt_int(D.order()) * Cyclotomic(Rat(1, D.order()));
}

}  // namespace

GroupRingOperator rho_T(const FQM& D, long k) {
    GroupRingOperator A = GroupRingOperator::identity(D.order());
    A.mul_right_diag_roots(static_cast<int>(D.level()), t_exponents(D, k));
    return A;
}

GroupRingOperator rho_S(const FQM& D) {
    GroupRingOperator A = GroupRingOperator::identity(D.order());
    A.mul_right_root_matrix(static_cast<int>(D.level()), s_exponents(D));
    A.mul_scalar(s_scalar(D));
    return A;
}

GroupRingOperator rho_Z(const FQM& D) {
    std::vector<long> perm(D.order());
    for (long x = 0; x < D.order(); ++x) perm[x] = D.neg(x);
    return GroupRingOperator::monomial(perm, std::vector<Cyclotomic>(D.order(), e(Rat(-D.signature(), 4))));
}

GroupRingOperator rho(const FQM& D, const Mat2& g) {
    SL2Word w = sl2_word(g);
    const int N = static_cast<int>(D.level());
    GroupRingOperator A = GroupRingOperator::identity(D.order());
    std::vector<std::vector<long>> sk;
    long s_count = 0;
    for (const auto& t : w.tokens) {
        if (t.gen == 'T') {
            A.mul_right_diag_roots(N, t_exponents(D, t.power));
        } else {
            if (sk.empty()) sk = s_exponents(D);
            A.mul_right_root_matrix(N, sk);
            ++s_count;
        }
    }
    if (s_count) A.mul_scalar(s_scalar(D).pow(s_count));
    if (w.negate) A = rho_Z(D) * A;
    return A;
}

GroupRingOperator rho_cached(const FQM& D, const Mat2& g) {
    using Key = std::tuple<std::string, long, long, long, long>;
    static std::mutex mu;
    static std::map<Key, GroupRingOperator> memo;
    Key key{D.key(), g.a, g.b, g.c, g.d};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    GroupRingOperator A = rho(D, g);
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(key, A);
    return A;
}

GroupRingOperator rho_inv(const FQM& D, const Mat2& g) { return rho_cached(D, g.inv()); }

// ---------------------------------------------------------------- extension to G^N

namespace {

Cyclotomic gauss_ratio(const FQM& D, long p, int k) {
    Cyclotomic gk = D.gauss_sum(ipow(p, static_cast<unsigned>(k)));
    if (gk.is_zero()) throw std::domain_error("extension: vanishing Gauss sum");
    return D.gauss_sum(1) / gk;
}

}  // namespace

GroupRingOperator rho_inv_scalar(const FQM& D, long p, int k) {
    if (k < 0) throw std::invalid_argument("rho_inv_scalar: negative exponent");
    return GroupRingOperator::identity(D.order()).scaled(gauss_ratio(D, p, k));
}

GroupRingOperator rho_inv_diag(const FQM& D, long p, int k, int l) {
    if (l < k) throw std::invalid_argument("rho_inv_diag: need k <= l");
    if ((k + l) % 2 != 0) throw std::domain_error("rho_inv_diag: k + l must be even");
    if (k < 0 && D.order() % p == 0) throw std::domain_error("rho_inv_diag: negative exponents need p prime to |D|");
    Cyclotomic c = gauss_ratio(D, p, k < 0 ? static_cast<int>(mod(l, 2)) : l);
    long h = ipow(p, static_cast<unsigned>((l - k) / 2));
    std::vector<long> perm(D.order());
    for (long x = 0; x < D.order(); ++x) perm[x] = D.smul(h, x);
    return GroupRingOperator::monomial(perm, std::vector<Cyclotomic>(D.order(), c));
}

GroupRingOperator rho_inv_product(const FQM& D, const Mat2& g1, long p, int k, int l, const Mat2& g2) {
    return rho_inv(D, g2) * rho_inv_diag(D, p, k, l) * rho_inv(D, g1);
}

GroupRingOperator rho_inv_extended(const FQM& D, long p, const QMat2& x) {
    Rat det = x.det();
    if (det <= 0) throw std::domain_error("rho_inv_extended: determinant must be positive");
    int e = ord_p(det, p);
    if (e % 2 != 0 || det != rat_pow(Rat(p), e)) throw std::domain_error("rho_inv_extended: det must be an even power of p");
    // smallest s with p^s x integral
    int s = 0;
    for (const Rat* r : {&x.a, &x.b, &x.c, &x.d}) {
        if (*r == 0) continue;
        Int den = r->get_den();
        int v = 0;
        while (den % p == 0) {
            den /= p;
            ++v;
        }
        if (den != 1) throw std::domain_error("rho_inv_extended: entries must lie in Z[1/p]");
        s = std::max(s, v);
    }
    Rat ps = rat_pow(Rat(p), s);
    auto toi = [&](const Rat& r) { return Int(r * ps).get_si(); };
    IntMatrix X = {{toi(x.a), toi(x.b)}, {toi(x.c), toi(x.d)}};
    SmithForm F = smith_normal_form(X);
    Mat2 U{F.U[0][0], F.U[0][1], F.U[1][0], F.U[1][1]};
    Mat2 V{F.V[0][0], F.V[0][1], F.V[1][0], F.V[1][1]};
    long d1 = F.d[0], d2 = F.d[1];
    if (U.det() == -1) {
        U = Mat2{-U.a, -U.b, U.c, U.d};
        d1 = -d1;
    }
    if (V.det() == -1) {
        V = Mat2{-V.a, V.b, -V.c, V.d};
        d1 = -d1;
    }
    if (d1 < 0 || d2 < 0) throw std::logic_error("rho_inv_extended: sign normalization failed");
    // X = U^{-1} diag(d1, d2) V^{-1} = (U^{-1} w^{-1}) diag(d2, d1) (w V^{-1})
    const Mat2 W{0, 1, -1, 0};
    Mat2 g1 = U.inv() * W.inv(), g2 = W * V.inv();
    int k = s - static_cast<int>(ord_p_of(d2, p)), l = s - static_cast<int>(ord_p_of(d1, p));
    return rho_inv_product(D, g1, p, k, l, g2);
}

// ---------------------------------------------------------------- local representation

Mat2 lift_sl2(long a, long b, long c, long d, long M) {
    if (M == 1) return Mat2{};
    a = mod(a, M);
    b = mod(b, M);
    c = mod(c, M);
    d = mod(d, M);
    if (mod(a * d - b * c, M) != 1) throw std::domain_error("lift_sl2: determinant is not 1 modulo M");
    long dd = d == 0 ? M : d;
    long cc = c;
    while (gcd(cc, dd) != 1) cc += M;
    // a0 * dd - b0 * cc = 1
    long r0 = dd, r1 = cc, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        long q = r0 / r1, tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    if (r0 != 1) throw std::logic_error("lift_sl2: coprimality failed");
    long a0 = s0, b0 = -t0;
    for (long t = 0; t < M; ++t) {
        long A = a0 + t * cc, B = b0 + t * dd;
        if (mod(A - a, M) == 0 && mod(B - b, M) == 0) return Mat2{A, B, cc, dd};
    }
    throw std::logic_error("lift_sl2: no lift found");
}

namespace {

void require_p_group(const FQM& Dp, long p) {
    long n = Dp.order();
    while (n % p == 0) n /= p;
    if (n != 1) throw std::invalid_argument("local Weil representation needs a p-group");
}

long unit_mod(const Rat& a, long p, long N) {
    if (a == 0 || ord_p(a, p) != 0) throw std::domain_error("argument must be a p-adic unit");
    return reduce_mod(a, N);
}

}  // namespace

GroupRingOperator omega_n(const FQM& Dp, long p, const Rat& b) {
    require_p_group(Dp, p);
    if (Dp.order() == 1) return GroupRingOperator::identity(1);
    return rho_T(Dp, reduce_mod(b, Dp.level()));
}

GroupRingOperator omega_w(const FQM& Dp) {
    const long N = Dp.level(), n = Dp.order();
    std::vector<std::vector<long>> k(n, std::vector<long>(n));
    for (long x = 0; x < n; ++x)
        for (long y = 0; y < n; ++y) k[x][y] = mod(Int(Rat(Dp.bil(x, y).value() * N).get_num()).get_si(), N);
    GroupRingOperator A = GroupRingOperator::identity(n);
    A.mul_right_root_matrix(static_cast<int>(N), k);
    A.mul_scalar(Dp.weil_index() / sqrt_int(n));
    return A;
}

GroupRingOperator omega_m(const FQM& Dp, long p, const Rat& a) {
    require_p_group(Dp, p);
    if (Dp.order() == 1) {
        unit_mod(a, p, p);
        return GroupRingOperator::identity(1);
    }
    const long N = Dp.level();
    long u = unit_mod(a, p, N);
    long uinv = invmod(u, N);
    Cyclotomic chi(static_cast<long>(Dp.chi(u)));
    std::vector<long> perm(Dp.order());
    for (long x = 0; x < Dp.order(); ++x) perm[x] = Dp.smul(uinv, x);
    return GroupRingOperator::monomial(perm, std::vector<Cyclotomic>(Dp.order(), chi));
}

GroupRingOperator omega_nlow(const FQM& Dp, long p, const Rat& c) {
    require_p_group(Dp, p);
    unit_mod(c, p, p);
    return omega_n(Dp, p, 1 / c) * omega_w(Dp) * omega_n(Dp, p, c) * omega_m(Dp, p, -c);
}

GroupRingOperator omega_sl2(const FQM& Dp, long p, const QMat2& g) {
    require_p_group(Dp, p);
    if (Dp.order() == 1) return GroupRingOperator::identity(1);
    const long N = Dp.level();
    Mat2 L = lift_sl2(reduce_mod(g.a, N), reduce_mod(g.b, N), reduce_mod(g.c, N), reduce_mod(g.d, N), N);
    return rho_cached(Dp, L);
}

GroupRingOperator omega_k(const FQM& Dp, long p, const QMat2& k) {
    require_p_group(Dp, p);
    Rat det = k.det();
    if (det == 0 || ord_p(det, p) != 0) throw std::domain_error("omega_k: matrix not in K_p");
    if (Dp.order() == 1) return GroupRingOperator::identity(1);
    const long N = Dp.level();
    long u = reduce_mod(det, N);
    long t = 0;
    for (long x = 1; x < N; ++x)
        if (x % p != 0 && mod(x * x, N) == u) {
            t = x;
            break;
        }
    if (!t) throw std::domain_error("omega_k: determinant is not a square unit");
    long tinv = invmod(t, N);
    auto r = [&](const Rat& v) { return mod(reduce_mod(v, N) * tinv, N); };
    Mat2 L = lift_sl2(r(k.a), r(k.b), r(k.c), r(k.d), N);
    return rho_cached(Dp, L).scaled(Cyclotomic(static_cast<long>(Dp.chi(t))));
}

}  // namespace vvmf
