#include "vvmf/numtheory.hpp"

#include <algorithm>
#include <stdexcept>

namespace vvmf {

long gcd(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long lcm(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd(a, b) * b;
}

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long powmod(long a, long e, long m) {
    __int128 r = 1 % m, b = mod(a, m);
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<long>(r);
}

long invmod(long a, long m) {
    long g = m, x = 0, y = 1, r = mod(a, m);
    while (r) {
        long q = g / r;
        long t = g - q * r;
        g = r;
        r = t;
        t = x - q * y;
        x = y;
        y = t;
    }
    if (g != 1) throw std::domain_error("invmod: not invertible");
    return mod(x, m);
}

long ipow(long b, unsigned e) {
    long r = 1;
    while (e--) r *= b;
    return r;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<long, int>> factor(long n) {
    if (n <= 0) throw std::domain_error("factor: nonpositive argument");
    std::vector<std::pair<long, int>> out;
    for (long d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_squarefree(long n) {
    for (auto [p, e] : factor(n))
        if (e > 1) return false;
    return true;
}

long totient(long n) {
    long r = n;
    for (auto [p, e] : factor(n)) r = r / p * (p - 1);
    return r;
}

std::vector<long> divisors(long n) {
    std::vector<long> out{1};
    for (auto [p, e] : factor(n)) {
        std::size_t k = out.size();
        long pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < k; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int jacobi(long a, long n) {
    if (n <= 0 || n % 2 == 0) throw std::domain_error("jacobi: modulus must be odd and positive");
    a = mod(a, n);
    int s = 1;
    while (a) {
        while (a % 2 == 0) {
            a /= 2;
            long r = n % 8;
            if (r == 3 || r == 5) s = -s;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) s = -s;
        a %= n;
    }
    return n == 1 ? s : 0;
}

int ord_p(const Int& a, long p) {
    if (a == 0) throw std::domain_error("ord_p: zero");
    Int x = abs(a);
    int e = 0;
    while (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p))) {
        x /= p;
        ++e;
    }
    return e;
}

int ord_p(const Rat& a, long p) {
    return ord_p(Int(a.get_num()), p) - ord_p(Int(a.get_den()), p);
}

Rat unit_part(const Rat& a, long p) {
    int e = ord_p(a, p);
    return a / rat_pow(Rat(p), e);
}

long reduce_mod(const Rat& a, long m) {
    Int den = a.get_den();
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(m));
    long d = r.get_si();
    if (gcd(d, m) != 1) throw std::domain_error("reduce_mod: denominator not invertible");
    Int n;
    mpz_fdiv_r_ui(n.get_mpz_t(), Int(a.get_num()).get_mpz_t(), static_cast<unsigned long>(m));
    return static_cast<long>((static_cast<__int128>(n.get_si()) * invmod(d, m)) % m);
}

Rat rat_pow(const Rat& a, long e) {
    Rat base = e < 0 ? Rat(1) / a : a;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat r = 1;
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

}  // namespace vvmf
