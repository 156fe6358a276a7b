#include "algapprox/error.hpp"
#include "algapprox/tnspace.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <thread>

namespace algapprox {

namespace {

constexpr std::int64_t kPrime = 2147483629;  // below 2^31

std::int64_t mod_p(const BigInt& v) {
    BigInt r = v % kPrime;
    if (r < 0) r += kPrime;
    return r.get_si();
}

std::int64_t inv_mod(std::int64_t a) {
    std::int64_t r = 1, e = kPrime - 2;
    a %= kPrime;
    while (e) {
        if (e & 1) r = r * a % kPrime;
        a = a * a % kPrime;
        e >>= 1;
    }
    return r;
}

// For mu' = f(conj xi) = sum f_k g(xi)^k the reality condition on h = sum h_j X^j
// reads sum_{k,j} f_k h_j A[k][j] = 0 with A[k][j] = xi^k g^j - g^k xi^j in Q^d.
// mu' is a positive real multiple of 1/f(xi), so it has the same space.
struct Precomputed {
    int d = 0, n = 0;
    std::vector<std::vector<RatVec>> A;
    // A scaled to integers, reduced mod kPrime; index [k][r * (n+1) + j]
    std::vector<std::vector<std::int64_t>> Ap;
    bool modular_ok = true;
};

Precomputed precompute(const FieldInvariants& inv, int n) {
    Precomputed P;
    P.d = inv.field->degree();
    P.n = n;
    const FieldElem x = inv.field->gen();
    const FieldElem g = inv.field->elem(*inv.conjugation.g);
    std::vector<FieldElem> xp{inv.field->one()}, gp{inv.field->one()};
    for (int k = 1; k <= n; ++k) {
        xp.push_back(xp.back() * x);
        gp.push_back(gp.back() * g);
    }
    P.A.assign(n + 1, std::vector<RatVec>(n + 1));
    BigInt l = 1;
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j) {
            P.A[k][j] = (xp[k] * gp[j] - gp[k] * xp[j]).coords();
            for (const auto& c : P.A[k][j]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        }
    P.modular_ok = l % kPrime != 0;
    P.Ap.assign(n + 1, std::vector<std::int64_t>(P.d * (n + 1)));
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j)
            for (int r = 0; r < P.d; ++r) {
                const Rat& c = P.A[k][j][r];
                P.Ap[k][r * (n + 1) + j] = mod_p(c.get_num() * (l / c.get_den()));
            }
    return P;
}

int rank_mod_p(std::vector<std::int64_t>& m, int rows, int cols) {
    int rk = 0;
    for (int c = 0; c < cols && rk < rows; ++c) {
        int piv = -1;
        for (int r = rk; r < rows; ++r)
            if (m[r * cols + c]) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rk)
            for (int j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[rk * cols + j]);
        const std::int64_t iv = inv_mod(m[rk * cols + c]);
        for (int r = rk + 1; r < rows; ++r) {
            std::int64_t f = m[r * cols + c];
            if (!f) continue;
            f = f * iv % kPrime;
            for (int j = c; j < cols; ++j) {
                m[r * cols + j] = (m[r * cols + j] - f * m[rk * cols + j]) % kPrime;
                if (m[r * cols + j] < 0) m[r * cols + j] += kPrime;
            }
        }
        ++rk;
    }
    return rk;
}

std::size_t exact_dim(const Precomputed& P, const int* f) {
    RatMatrix m(P.d, P.n + 1);
    for (int k = 0; k <= P.n; ++k) {
        if (!f[k]) continue;
        for (int j = 0; j <= P.n; ++j)
            for (int r = 0; r < P.d; ++r) m(r, j) += f[k] * P.A[k][j][r];
    }
    return P.n + 1 - rank(std::move(m));
}

std::size_t dim_mod_p(const Precomputed& P, const int* f, std::vector<std::int64_t>& buf) {
    const int cols = P.n + 1, sz = P.d * cols;
    std::fill(buf.begin(), buf.end(), 0);
    for (int k = 0; k <= P.n; ++k) {
        if (!f[k]) continue;
        const std::int64_t fk = f[k] < 0 ? f[k] + kPrime : f[k];
        const auto& a = P.Ap[k];
        for (int i = 0; i < sz; ++i) buf[i] = (buf[i] + fk * a[i]) % kPrime;
    }
    return cols - rank_mod_p(buf, P.d, cols);
}

// all f of height exactly h, in (degree, c_deg, ..., c_0) order, stored with
// stride n+1 and index = degree; at most `limit` of them
std::vector<int> shell(int n, int h, std::uint64_t limit, bool& truncated) {
    std::vector<int> out;
    truncated = false;
    std::vector<int> c(n + 1);
    for (int deg = 0; deg <= n; ++deg) {
        // odometer over (c_deg, ..., c_0): c_deg in [1, h], others in [-h, h]
        std::fill(c.begin(), c.end(), 0);
        c[deg] = 1;
        for (int j = 0; j < deg; ++j) c[j] = -h;
        while (true) {
            int g = 0;
            bool top = false;
            for (int j = 0; j <= deg; ++j) {
                g = std::gcd(g, std::abs(c[j]));
                top = top || std::abs(c[j]) == h;
            }
            if (top && g == 1) {
                if (out.size() / (n + 1) >= limit) {
                    truncated = true;
                    return out;
                }
                out.insert(out.end(), c.begin(), c.end());
            }
            // increment, least significant = c_0
            int j = 0;
            for (; j < deg; ++j) {
                if (c[j] < h) {
                    ++c[j];
                    break;
                }
                c[j] = -h;
            }
            if (j == deg) {
                if (c[deg] == h) break;
                ++c[deg];
            }
        }
    }
    return out;
}

struct Best {
    std::size_t dim;
    std::size_t index;  // position in the shell, SIZE_MAX for none
};

Best scan(const Precomputed& P, const std::vector<int>& cand, std::size_t lo, std::size_t hi, std::size_t floor_dim,
          std::size_t max_dim) {
    Best b{floor_dim, SIZE_MAX};
    std::vector<std::int64_t> buf(P.d * (P.n + 1));
    const int stride = P.n + 1;
    for (std::size_t i = lo; i < hi && b.dim < max_dim; ++i) {
        const int* f = cand.data() + i * stride;
        if (P.modular_ok && dim_mod_p(P, f, buf) <= b.dim) continue;
        const std::size_t dm = exact_dim(P, f);
        if (dm > b.dim) b = {dm, i};
    }
    return b;
}

IntPoly to_poly(const int* f, int n) {
    IntVec c(f, f + n + 1);
    return IntPoly(c);
}

FieldElem inverse_at(const FieldInvariants& inv, const IntPoly& f) { return inv.field->elem(to_rat(f)).inverse(); }

}  // namespace

TnSearchResult tn_lower_bound_search(const FieldInvariants& inv, int n, const TnSearchOptions& opts) {
    if (inv.real || !inv.conjugation.present())
        throw Error(ErrorCode::IndexNotTwo, "t_n search needs conj(xi) in Q(xi)");
    if (n < 0 || inv.field->degree() <= n) throw Error(ErrorCode::DegenerateInput, "search needs n < deg xi");
    const Precomputed P = precompute(inv, n);
    const std::size_t max_dim = static_cast<std::size_t>(n % 2 ? (n + 1) / 2 : (n + 2) / 2);

    TnSearchResult res;
    res.space = dim_V(inv, inv.field->one(), n);
    res.dim = res.space.dim();
    const unsigned workers = std::max(1u, opts.workers);

    for (long h = 1; h <= opts.height_bound && res.dim < max_dim; ++h) {
        bool truncated = false;
        const std::uint64_t left = opts.budget - res.examined;
        std::vector<int> cand = shell(n, static_cast<int>(h), left, truncated);
        const std::size_t count = cand.size() / (n + 1);
        res.examined += count;

        std::vector<Best> part(workers, Best{res.dim, SIZE_MAX});
        if (workers == 1 || count < 4096) {
            part[0] = scan(P, cand, 0, count, res.dim, max_dim);
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (count + workers - 1) / workers;
            for (unsigned w = 0; w < workers; ++w) {
                const std::size_t lo = std::min(count, w * chunk), hi = std::min(count, lo + chunk);
                pool.emplace_back([&, w, lo, hi] { part[w] = scan(P, cand, lo, hi, res.dim, max_dim); });
            }
            for (auto& t : pool) t.join();
        }
        Best best{res.dim, SIZE_MAX};
        for (const auto& b : part)
            if (b.index != SIZE_MAX && (b.dim > best.dim || (b.dim == best.dim && b.index < best.index))) best = b;
        if (best.index != SIZE_MAX) {
            res.f = to_poly(cand.data() + best.index * (n + 1), n);
            res.space = dim_V(inv, inverse_at(inv, res.f), n);
            res.dim = res.space.dim();
        }
        if (truncated) {
            res.exhausted = true;
            break;
        }
    }

    // closure: re-seed with the lowest-height integer polynomial of the space
    for (int step = 0; step < 8; ++step) {
        IntPoly seed;
        BigInt best_h = -1;
        for (const auto& v : res.space.integer_vectors()) {
            IntPoly p(v);
            if (p.leading() < 0) p = -p;
            BigInt hp = poly_height(p);
            if (best_h < 0 || hp < best_h) {
                best_h = hp;
                seed = p;
            }
        }
        if (seed.is_zero() || seed == res.f) break;
        ++res.closure_steps;
        IsotropicSpace s = dim_V(inv, inverse_at(inv, seed), n);
        if (s.dim() <= res.dim) break;
        res.f = seed;
        res.space = std::move(s);
        res.dim = res.space.dim();
    }
    return res;
}

}  // namespace algapprox
