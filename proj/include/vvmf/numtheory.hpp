#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace vvmf {

using Int = mpz_class;
using Rat = mpq_class;

long gcd(long a, long b);
long lcm(long a, long b);
long mod(long a, long m);
long powmod(long a, long e, long m);
long invmod(long a, long m);
long ipow(long b, unsigned e);
bool is_prime(long n);
bool is_squarefree(long n);
long totient(long n);
std::vector<std::pair<long, int>> factor(long n);
std::vector<long> divisors(long n);

// (a/n) for odd positive n.
int jacobi(long a, long n);

// p-adic valuation; zero has no valuation.
int ord_p(const Int& a, long p);
int ord_p(const Rat& a, long p);

// a/p^ord_p(a)
Rat unit_part(const Rat& a, long p);

// Reduction of a p-integral rational modulo m = p^e.
long reduce_mod(const Rat& a, long m);

Rat rat_pow(const Rat& a, long e);

}  // namespace vvmf
