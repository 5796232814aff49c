#include "vvmf/fqm.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "vvmf/linalg.hpp"

namespace vvmf {

LatticeInput LatticeInput::from_gram(const IntMatrix& gram) {
    LatticeInput L;
    const std::size_t n = gram.size();
    if (n == 0) throw std::invalid_argument("Gram matrix must be nonempty");
    for (const auto& row : gram)
        if (row.size() != n) throw std::invalid_argument("Gram matrix must be square");
    for (std::size_t i = 0; i < n; ++i) {
        if (gram[i][i] % 2 != 0) throw std::invalid_argument("Gram matrix must have even diagonal");
        for (std::size_t j = 0; j < n; ++j)
            if (gram[i][j] != gram[j][i]) throw std::invalid_argument("Gram matrix must be symmetric");
    }
    RatMatrix A(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = gram[i][j];
    Rat d = det_rational(A);
    if (d == 0) throw std::invalid_argument("Gram matrix must be nondegenerate");
    L.gram = gram;
    L.rank = static_cast<int>(n);
    L.det = Int(d.get_num()).get_si();
    auto [pos, neg] = inertia(A);
    L.b_plus = pos;
    L.b_minus = neg;
    return L;
}

SmithForm smith_normal_form(const IntMatrix& G) {
    const std::size_t n = G.size();
    IntMatrix A = G, U(n, std::vector<long>(n, 0)), V(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) U[i][i] = V[i][i] = 1;
    auto row_op = [&](std::size_t dst, std::size_t src, long q) {  // row_dst -= q row_src
        for (std::size_t j = 0; j < n; ++j) {
            A[dst][j] -= q * A[src][j];
            U[dst][j] -= q * U[src][j];
        }
    };
    auto col_op = [&](std::size_t dst, std::size_t src, long q) {
        for (std::size_t i = 0; i < n; ++i) {
            A[i][dst] -= q * A[i][src];
            V[i][dst] -= q * V[i][src];
        }
    };
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            std::size_t pi = n, pj = n;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (A[i][j] != 0 && (pi == n || std::labs(A[i][j]) < std::labs(A[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == n) break;
            std::swap(A[t], A[pi]);
            std::swap(U[t], U[pi]);
            for (std::size_t i = 0; i < n; ++i) {
                std::swap(A[i][t], A[i][pj]);
                std::swap(V[i][t], V[i][pj]);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                row_op(i, t, A[i][t] / A[t][t]);
                if (A[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                col_op(j, t, A[t][j] / A[t][t]);
                if (A[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            std::size_t bad = n;
            for (std::size_t i = t + 1; i < n && bad == n; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (A[i][j] % A[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == n) break;
            row_op(t, bad, -1);
        }
        if (A[t][t] < 0) {
            for (std::size_t j = 0; j < n; ++j) {
                A[t][j] = -A[t][j];
                U[t][j] = -U[t][j];
            }
        }
    }
    SmithForm S;
    S.U = U;
    S.V = V;
    for (std::size_t i = 0; i < n; ++i) S.d.push_back(A[i][i]);
    return S;
}

FQM::FQM(std::vector<long> orders, std::vector<Rat> qvals, std::vector<std::vector<Rat>> bil)
    : orders_(std::move(orders)), qgen_(std::move(qvals)), bgen_(std::move(bil)) {
    if (qgen_.size() != orders_.size() || bgen_.size() != orders_.size())
        throw std::invalid_argument("FQM: inconsistent generator data");
    for (long n : orders_)
        if (n < 2) throw std::invalid_argument("FQM: component orders must exceed 1");
    finish();
}

FQM FQM::from_gram(const IntMatrix& gram) {
    LatticeInput L = LatticeInput::from_gram(gram);
    SmithForm S = smith_normal_form(gram);
    const std::size_t n = gram.size();
    std::vector<long> orders;
    std::vector<int> kept;
    for (std::size_t i = 0; i < n; ++i)
        if (S.d[i] > 1) {
            orders.push_back(S.d[i]);
            kept.push_back(static_cast<int>(i));
        }
    auto pair = [&](int a, int b) {
        long s = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s += S.V[i][a] * gram[i][j] * S.V[j][b];
        return s;
    };
    std::vector<Rat> q;
    std::vector<std::vector<Rat>> b(kept.size(), std::vector<Rat>(kept.size()));
    for (std::size_t i = 0; i < kept.size(); ++i) {
        Rat v(pair(kept[i], kept[i]), 2 * orders[i] * orders[i]);
        v.canonicalize();
        q.push_back(QmodZ(v).value());
        for (std::size_t j = 0; j < kept.size(); ++j) {
            Rat w(pair(kept[i], kept[j]), orders[i] * orders[j]);
            w.canonicalize();
            b[i][j] = QmodZ(w).value();
        }
    }
    FQM D(orders, q, b);
    D.gram_ = L.gram;
    D.smithU_ = S.U;
    D.smith_d_ = S.d;
    D.kept_ = kept;
    return D;
}

void FQM::finish() {
    size_ = 1;
    for (long n : orders_) size_ *= n;
    const std::size_t r = orders_.size();
    qtab_.resize(size_);
    std::vector<long> c(r, 0);
    level_ = 1;
    for (long x = 0; x < size_; ++x) {
        Rat s = 0;
        for (std::size_t i = 0; i < r; ++i) {
            if (!c[i]) continue;
            s += qgen_[i] * (c[i] * c[i]);
            for (std::size_t j = i + 1; j < r; ++j) s += bgen_[i][j] * (c[i] * c[j]);
        }
        qtab_[x] = QmodZ(s);
        level_ = lcm(level_, Int(qtab_[x].value().get_den()).get_si());
        for (std::size_t i = 0; i < r; ++i) {
            if (++c[i] < orders_[i]) break;
            c[i] = 0;
        }
    }
    Cyclotomic w = weil_index();
    sig_ = -1;
    for (int j = 0; j < 8; ++j)
        if (w == e(Rat(j, 8))) sig_ = j;
    if (sig_ < 0) throw std::logic_error("FQM: Gauss sum is not of Milgram type");
    std::ostringstream os;
    for (std::size_t i = 0; i < r; ++i) {
        os << orders_[i] << ":" << qgen_[i].get_str();
        for (std::size_t j = 0; j < r; ++j) os << "," << bgen_[i][j].get_str();
        os << ";";
    }
    key_ = os.str();
}

std::vector<long> FQM::elementary_divisors() const { return orders_; }

std::vector<long> FQM::coords(long x) const {
    std::vector<long> c(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        c[i] = x % orders_[i];
        x /= orders_[i];
    }
    return c;
}

long FQM::index(const std::vector<long>& c) const {
    long x = 0;
    for (std::size_t i = orders_.size(); i-- > 0;) x = x * orders_[i] + mod(c[i], orders_[i]);
    return x;
}

long FQM::add(long x, long y) const {
    auto a = coords(x), b = coords(y);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return index(a);
}

long FQM::neg(long x) const {
    auto a = coords(x);
    for (auto& v : a) v = -v;
    return index(a);
}

long FQM::smul(long k, long x) const {
    auto a = coords(x);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = mod(k % orders_[i] * a[i], orders_[i]);
    return index(a);
}

long FQM::element_order(long x) const {
    long o = 1;
    auto a = coords(x);
    for (std::size_t i = 0; i < a.size(); ++i) o = lcm(o, orders_[i] / gcd(a[i], orders_[i]));
    return o;
}

QmodZ FQM::bil(long x, long y) const {
    auto a = coords(x), b = coords(y);
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!b[j]) continue;
            s += (i == j ? 2 * qgen_[i] : bgen_[i][j]) * (a[i] * b[j]);
        }
    }
    return QmodZ(s);
}

Cyclotomic FQM::gauss_sum(long d) const {
    std::vector<Int> g(level_, Int(0));
    for (long x = 0; x < size_; ++x) {
        Rat v = qtab_[x].value() * d * level_;
        g[mod(Int(v.get_num()).get_si(), level_)] += 1;
    }
    return Cyclotomic::from_group_ring(static_cast<int>(level_), g);
}

int FQM::chi(long n) const {
    if (size_ % 2 == 0) throw std::domain_error("chi: discriminant group of even order");
    if (gcd(n, level_) != 1) throw std::domain_error("chi: argument not coprime to the level");
    Cyclotomic g = gauss_sum(1), gn = gauss_sum(n);
    if (gn == g) return 1;
    if (gn == -g) return -1;
    throw std::logic_error("chi: quotient of Gauss sums is not a sign");
}

bool FQM::is_anisotropic() const {
    for (long x = 1; x < size_; ++x)
        if (qtab_[x].value() == 0) return false;
    return true;
}

Cyclotomic FQM::weil_index() const { return gauss_sum(1) * sqrt_int(size_) * Cyclotomic(Rat(1, size_)); }

long FQM::class_of_dual(const std::vector<long>& z) const {
    if (!has_lattice()) throw std::logic_error("class_of_dual: module has no lattice");
    std::vector<long> c;
    for (int i : kept_) {
        long s = 0;
        for (std::size_t j = 0; j < z.size(); ++j) s += smithU_[i][j] * z[j];
        c.push_back(s);
    }
    return index(c);
}

long ord_p_of(long n, long p) {
    long e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

PrimarySplit p_part(const FQM& D, long p) {
    if (!is_prime(p)) throw std::invalid_argument("p_part: p must be prime");
    PrimarySplit S;
    S.p = p;
    const auto& ord = D.orders();
    std::vector<long> po, co, pscale, cscale;
    std::vector<std::size_t> pi, ci;
    for (std::size_t i = 0; i < ord.size(); ++i) {
        long pv = ipow(p, static_cast<unsigned>(ord_p_of(ord[i], p)));
        if (pv > 1) {
            po.push_back(pv);
            pscale.push_back(ord[i] / pv);
            pi.push_back(i);
        }
        if (ord[i] / pv > 1) {
            co.push_back(ord[i] / pv);
            cscale.push_back(pv);
            ci.push_back(i);
        }
    }
    auto build = [&](const std::vector<long>& o, const std::vector<long>& sc, const std::vector<std::size_t>& idx,
                     std::vector<long>& to_D) {
        std::vector<Rat> q;
        std::vector<std::vector<Rat>> b(o.size(), std::vector<Rat>(o.size()));
        std::vector<long> gens;
        for (std::size_t a = 0; a < o.size(); ++a) {
            std::vector<long> c(ord.size(), 0);
            c[idx[a]] = sc[a];
            gens.push_back(D.index(c));
        }
        for (std::size_t a = 0; a < o.size(); ++a) {
            q.push_back(D.q(gens[a]).value());
            for (std::size_t b2 = 0; b2 < o.size(); ++b2) b[a][b2] = D.bil(gens[a], gens[b2]).value();
        }
        auto M = std::make_shared<FQM>(o, q, b);
        to_D.assign(M->order(), 0);
        for (long x = 0; x < M->order(); ++x) {
            auto c = M->coords(x);
            std::vector<long> d(ord.size(), 0);
            for (std::size_t a = 0; a < o.size(); ++a) d[idx[a]] = c[a] * sc[a];
            to_D[x] = D.index(d);
        }
        return M;
    };
    S.part = build(po, pscale, pi, S.part_to_D);
    S.complement = build(co, cscale, ci, S.complement_to_D);
    S.D_to_pair.assign(D.order(), {-1, -1});
    for (long a = 0; a < S.part->order(); ++a)
        for (long b = 0; b < S.complement->order(); ++b)
            S.D_to_pair[D.add(S.part_to_D[a], S.complement_to_D[b])] = {a, b};
    return S;
}

}  // namespace vvmf
