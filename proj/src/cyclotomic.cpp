#include "vvmf/cyclotomic.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "vvmf/linalg.hpp"

namespace vvmf {

QmodZ::QmodZ(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    v_ = r - Rat(q);
}

std::ostream& operator<<(std::ostream& os, const QmodZ& x) { return os << x.value().get_str(); }

namespace {

struct Field {
    int M;
    int phi;
    std::vector<long> cyclo;               // Phi_M, low degree first, monic
    std::vector<std::vector<long>> red;    // z^j in the power basis, 0 <= j < M
};

std::vector<long> poly_divexact(std::vector<long> a, const std::vector<long>& b) {
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    std::vector<long> q(da - db + 1, 0);
    for (int i = da; i >= db; --i) {
        long c = a[i] / b[db];
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

std::vector<long> cyclotomic_poly(int M) {
    static std::map<int, std::vector<long>> memo;
    auto it = memo.find(M);
    if (it != memo.end()) return it->second;
    std::vector<long> p(M + 1, 0);
    p[0] = -1;
    p[M] = 1;
    for (long d : divisors(M))
        if (d < M) p = poly_divexact(p, cyclotomic_poly(static_cast<int>(d)));
    memo[M] = p;
    return p;
}

const Field& field(int M) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return *it->second;
    auto f = std::make_unique<Field>();
    f->M = M;
    f->cyclo = cyclotomic_poly(M);
    f->phi = static_cast<int>(f->cyclo.size()) - 1;
    f->red.assign(M, std::vector<long>(f->phi, 0));
    std::vector<long> v(f->phi, 0);
    v[0] = 1;
    for (int j = 0; j < M; ++j) {
        f->red[j] = v;
        long top = v[f->phi - 1];
        for (int i = f->phi - 1; i > 0; --i) v[i] = v[i - 1];
        v[0] = 0;
        for (int i = 0; i < f->phi; ++i) v[i] -= top * f->cyclo[i];
    }
    const Field& ref = *f;
    cache[M] = std::move(f);
    return ref;
}

}  // namespace

std::vector<Int> cyclotomic_reduce(int M, const std::vector<Int>& g) {
    const Field& f = field(M);
    std::vector<Int> r(f.phi, Int(0));
    for (int j = 0; j < M; ++j) {
        if (g[j] == 0) continue;
        if (j < f.phi) {
            r[j] += g[j];
            continue;
        }
        const auto& row = f.red[j];
        for (int i = 0; i < f.phi; ++i)
            if (row[i]) r[i] += g[j] * row[i];
    }
    return r;
}

int cyclotomic_degree(int M) { return field(M).phi; }

Cyclotomic::Cyclotomic() : M_(1), num_{Int(0)}, den_(1) {}

Cyclotomic::Cyclotomic(long n) : M_(1), num_{Int(n)}, den_(1) {}

Cyclotomic::Cyclotomic(const Rat& r) : M_(1), num_{Int(r.get_num())}, den_(r.get_den()) {}

Cyclotomic::Cyclotomic(int conductor, const std::vector<Rat>& coeffs) : M_(conductor) {
    if (conductor < 1) throw std::invalid_argument("Cyclotomic: conductor must be positive");
    const Field& f = field(conductor);
    if (static_cast<int>(coeffs.size()) != f.phi)
        throw std::invalid_argument("Cyclotomic: coefficient vector must have length phi(M)");
    den_ = 1;
    for (const Rat& c : coeffs) den_ = lcm(den_, Int(c.get_den()));
    num_.resize(f.phi);
    for (int i = 0; i < f.phi; ++i) num_[i] = Int(coeffs[i] * den_);
    normalize();
}

Cyclotomic Cyclotomic::zero(int conductor) {
    Cyclotomic z;
    z.M_ = conductor;
    z.num_.assign(field(conductor).phi, Int(0));
    return z;
}

Cyclotomic Cyclotomic::from_group_ring(int M, const std::vector<Int>& g, const Int& den) {
    Cyclotomic r;
    r.M_ = M;
    r.num_ = cyclotomic_reduce(M, g);
    r.den_ = den;
    r.normalize();
    return r;
}

Cyclotomic Cyclotomic::zeta(long conductor, long k) {
    if (conductor < 1) throw std::invalid_argument("zeta: conductor must be positive");
    std::vector<Int> g(conductor, Int(0));
    g[mod(k, conductor)] = 1;
    return from_group_ring(static_cast<int>(conductor), g, Int(1));
}

void Cyclotomic::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    Int g = den_;
    for (const auto& c : num_) {
        if (g == 1) break;
        if (c != 0) g = gcd(g, c);
    }
    bool zero = true;
    for (const auto& c : num_)
        if (c != 0) zero = false;
    if (zero) {
        den_ = 1;
        return;
    }
    if (g != 1) {
        for (auto& c : num_) c /= g;
        den_ /= g;
    }
}

int Cyclotomic::degree() const { return field(M_).phi; }

std::vector<Rat> Cyclotomic::coeffs() const {
    std::vector<Rat> out;
    out.reserve(num_.size());
    for (const auto& c : num_) {
        Rat q(c, den_);
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

Rat Cyclotomic::coeff(int i) const {
    Rat q(num_.at(i), den_);
    q.canonicalize();
    return q;
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : num_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (std::size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0) return false;
    return true;
}

std::optional<Rat> Cyclotomic::as_rational() const {
    if (!is_rational()) return std::nullopt;
    return coeff(0);
}

Cyclotomic Cyclotomic::embed(int M) const {
    if (M == M_) return *this;
    if (M % M_ != 0) throw std::invalid_argument("embed: target conductor must be a multiple");
    const int k = M / M_;
    std::vector<Int> g(M, Int(0));
    for (std::size_t i = 0; i < num_.size(); ++i)
        if (num_[i] != 0) g[(static_cast<long>(i) * k) % M] += num_[i];
    return from_group_ring(M, g, den_);
}

Cyclotomic Cyclotomic::galois(long a) const {
    if (gcd(a, M_) != 1) throw std::invalid_argument("galois: exponent must be a unit");
    std::vector<Int> g(M_, Int(0));
    for (std::size_t i = 0; i < num_.size(); ++i)
        if (num_[i] != 0) g[mod(a * static_cast<long>(i), M_)] += num_[i];
    return from_group_ring(M_, g, den_);
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (o.M_ != M_ && o.is_rational()) {
        Cyclotomic t = *this;
        t.num_[0] = num_[0] * o.den_ + o.num_[0] * den_;
        for (std::size_t i = 1; i < t.num_.size(); ++i) t.num_[i] *= o.den_;
        t.den_ = den_ * o.den_;
        t.normalize();
        return *this = t;
    }
    if (o.M_ != M_ && is_rational()) {
        Cyclotomic t = o;
        return *this = t += *this;
    }
    if (o.M_ != M_) {
        int L = static_cast<int>(lcm(M_, o.M_));
        if (L != M_) *this = embed(L);
        if (L != o.M_) return *this += o.embed(L);
    }
    if (den_ == o.den_) {
        for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
    } else {
        Int L = lcm(den_, o.den_);
        Int a = L / den_, b = L / o.den_;
        for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * a + o.num_[i] * b;
        den_ = L;
    }
    normalize();
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    if (o.is_rational()) {
        for (auto& c : num_) c *= o.num_[0];
        den_ *= o.den_;
        normalize();
        return *this;
    }
    if (is_rational()) {
        Int c = num_[0], d = den_;
        *this = o;
        for (auto& x : num_) x *= c;
        den_ *= d;
        normalize();
        return *this;
    }
    if (o.M_ != M_) {
        int L = static_cast<int>(lcm(M_, o.M_));
        if (L != M_) *this = embed(L);
        if (L != o.M_) return *this *= o.embed(L);
    }
    const int n = static_cast<int>(num_.size());
    std::vector<Int> g(M_, Int(0));
    for (int i = 0; i < n; ++i) {
        if (num_[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (o.num_[j] == 0) continue;
            mpz_addmul(g[(i + j) % M_].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
        }
    }
    *this = from_group_ring(M_, g, den_ * o.den_);
    return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.M_ != b.M_) {
        int L = static_cast<int>(lcm(a.M_, b.M_));
        return a.embed(L) == b.embed(L);
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw std::domain_error("Cyclotomic: division by zero");
    if (is_rational()) return Cyclotomic(Rat(1) / coeff(0));
    const int n = degree();
    RatMatrix A(n, std::vector<Rat>(n));
    for (int j = 0; j < n; ++j) {
        std::vector<Int> g(M_, Int(0));
        g[j] = 1;
        Cyclotomic col = *this * from_group_ring(M_, g, Int(1));
        for (int i = 0; i < n; ++i) A[i][j] = col.coeff(i);
    }
    std::vector<Rat> rhs(n, Rat(0));
    rhs[0] = 1;
    auto x = solve_rational(A, rhs);
    if (!x) throw std::domain_error("Cyclotomic: singular element");
    return Cyclotomic(M_, *x);
}

Cyclotomic Cyclotomic::pow(long e) const {
    Cyclotomic base = e < 0 ? inverse() : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Cyclotomic r(1L);
    while (k) {
        if (k & 1) r *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return r;
}

Cyclotomic Cyclotomic::minimized() const {
    if (is_rational()) return Cyclotomic(coeff(0));
    const int n = degree();
    std::vector<Rat> target = coeffs();
    for (long d : divisors(M_)) {
        if (d == 1 || d % 4 == 2) continue;
        if (d == M_) return *this;
        int nd = field(static_cast<int>(d)).phi;
        RatMatrix E(n, std::vector<Rat>(nd));
        for (int j = 0; j < nd; ++j) {
            Cyclotomic col = zeta(d, j).embed(M_);
            for (int i = 0; i < n; ++i) E[i][j] = col.coeff(i);
        }
        auto y = solve_rational(E, target);
        if (y) return Cyclotomic(static_cast<int>(d), *y);
    }
    return *this;
}

std::complex<double> Cyclotomic::to_complex() const {
    std::complex<double> s = 0;
    const double den = den_.get_d();
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        double ang = 2.0 * M_PI * static_cast<double>(i) / M_;
        s += (num_[i].get_d() / den) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

std::string Cyclotomic::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        Rat c(num_[i], den_);
        c.canonicalize();
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (i == 0) {
            os << c.get_str();
            continue;
        }
        if (c != 1) os << c.get_str() << "*";
        os << "z";
        if (i > 1) os << "^" << i;
    }
    if (first) os << "0";
    os << " @" << M_;
    return os.str();
}

Cyclotomic Cyclotomic::parse(const std::string& s) {
    auto at = s.rfind('@');
    if (at == std::string::npos) throw std::invalid_argument("parse: missing conductor");
    int M;
    try {
        std::size_t used = 0;
        M = std::stoi(s.substr(at + 1), &used);
        if (s.find_first_not_of(" \t", at + 1 + used) != std::string::npos)
            throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw std::invalid_argument("parse: bad conductor in '" + s + "'");
    }
    if (M < 1) throw std::invalid_argument("parse: conductor must be positive");
    std::string body;
    for (char ch : s.substr(0, at))
        if (!std::isspace(static_cast<unsigned char>(ch))) body += ch;
    if (body.empty()) throw std::invalid_argument("parse: empty value");
    std::vector<Int> g(M, Int(0));
    Int den = 1;
    std::vector<std::pair<Rat, long>> terms;
    std::size_t pos = 0;
    while (pos < body.size()) {
        int sign = 1;
        if (body[pos] == '+' || body[pos] == '-') {
            if (body[pos] == '-') sign = -1;
            ++pos;
        } else if (pos != 0) {
            throw std::invalid_argument("parse: expected sign in '" + s + "'");
        }
        std::size_t end = body.find_first_of("+-", pos);
        std::string term = body.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? body.size() : end;
        if (term.empty()) throw std::invalid_argument("parse: empty term in '" + s + "'");
        Rat c = 1;
        long k = 0;
        auto zpos = term.find('z');
        std::string cs = zpos == std::string::npos ? term : term.substr(0, zpos);
        if (zpos != std::string::npos) {
            if (!cs.empty()) {
                if (cs.back() != '*') throw std::invalid_argument("parse: expected '*' in '" + s + "'");
                cs.pop_back();
            }
            std::string rest = term.substr(zpos + 1);
            k = 1;
            if (!rest.empty()) {
                if (rest[0] != '^' || rest.size() < 2) throw std::invalid_argument("parse: bad exponent in '" + s + "'");
                try {
                    std::size_t used = 0;
                    k = std::stol(rest.substr(1), &used);
                    if (used != rest.size() - 1) throw std::invalid_argument("x");
                } catch (const std::exception&) {
                    throw std::invalid_argument("parse: bad exponent in '" + s + "'");
                }
            }
        }
        if (!cs.empty()) {
            for (char ch : cs)
                if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '/')
                    throw std::invalid_argument("parse: bad coefficient in '" + s + "'");
            try {
                c = Rat(cs);
            } catch (const std::exception&) {
                throw std::invalid_argument("parse: bad coefficient in '" + s + "'");
            }
            if (c.get_den() == 0) throw std::invalid_argument("parse: zero denominator");
            c.canonicalize();
        }
        terms.emplace_back(sign * c, k);
        den = lcm(den, Int(c.get_den()));
    }
    for (auto& [c, k] : terms) g[mod(k, M)] += Int(c * den);
    return from_group_ring(M, g, den);
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) { return os << x.str(); }

Cyclotomic root_of_unity(const QmodZ& r) {
    const Rat& v = r.value();
    return Cyclotomic::zeta(Int(v.get_den()).get_si(), Int(v.get_num()).get_si());
}

namespace {

Cyclotomic sqrt_prime(long p) {
    if (p == 2) return e(Rat(1, 8)) + e(Rat(-1, 8));
    Cyclotomic g = Cyclotomic::zero(static_cast<int>(p));
    for (long x = 0; x < p; ++x) g += Cyclotomic::zeta(p, x * x % p);
    if (p % 4 == 1) return g;
    return -(e(Rat(1, 4)) * g);
}

}  // namespace

Cyclotomic sqrt_int(long n) {
    if (n == 0) return Cyclotomic(0L);
    Cyclotomic r(1L);
    long a = n < 0 ? -n : n;
    for (auto [p, k] : factor(a)) {
        r *= Cyclotomic(ipow(p, static_cast<unsigned>(k / 2)));
        if (k % 2) r *= sqrt_prime(p);
    }
    if (n < 0) r *= e(Rat(1, 4));
    return r;
}

}  // namespace vvmf
