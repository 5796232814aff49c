#include "vvmf/linalg.hpp"

#include <stdexcept>

namespace vvmf {

std::optional<std::vector<Rat>> solve_rational(RatMatrix A, std::vector<Rat> b) {
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : 0;
    if (b.size() != m) throw std::invalid_argument("solve_rational: shape mismatch");
    std::vector<std::size_t> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t piv = r;
        while (piv < m && A[piv][c] == 0) ++piv;
        if (piv == m) continue;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        Rat inv = 1 / A[r][c];
        for (std::size_t j = c; j < n; ++j) A[r][j] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rat f = A[i][c];
            for (std::size_t j = c; j < n; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivcol.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rat> x(n, Rat(0));
    for (std::size_t i = 0; i < r; ++i) x[pivcol[i]] = b[i];
    return x;
}

Rat det_rational(RatMatrix A) {
    const std::size_t n = A.size();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && A[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(A[piv], A[c]);
            d = -d;
        }
        d *= A[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (A[i][c] == 0) continue;
            Rat f = A[i][c] / A[c][c];
            for (std::size_t j = c; j < n; ++j) A[i][j] -= f * A[c][j];
        }
    }
    return d;
}

std::pair<int, int> inertia(RatMatrix A) {
    const std::size_t n = A.size();
    int pos = 0, neg = 0;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && A[i][i] != 0) {
                piv = i;
                break;
            }
        if (piv == n) {
            // all remaining diagonal entries vanish: fold a nonzero off-diagonal entry into the diagonal
            std::size_t a = n, b = n;
            for (std::size_t i = 0; i < n && a == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && A[i][j] != 0) {
                        a = i;
                        b = j;
                        break;
                    }
            if (a == n) break;
            for (std::size_t k = 0; k < n; ++k) A[a][k] += A[b][k];
            for (std::size_t k = 0; k < n; ++k) A[k][a] += A[k][b];
            piv = a;
        }
        done[piv] = true;
        Rat d = A[piv][piv];
        (d > 0 ? pos : neg)++;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || A[i][piv] == 0) continue;
            Rat f = A[i][piv] / d;
            for (std::size_t j = 0; j < n; ++j) A[i][j] -= f * A[piv][j];
        }
        for (std::size_t j = 0; j < n; ++j)
            if (!done[j]) A[piv][j] = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i]) A[i][piv] = 0;
    }
    return {pos, neg};
}

}  // namespace vvmf
