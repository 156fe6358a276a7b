#include "algapprox/linalg.hpp"

#include "algapprox/error.hpp"

#include <utility>

namespace algapprox {

RatVec RatMatrix::row(std::size_t r) const {
    return RatVec(a_.begin() + static_cast<long>(r * cols_), a_.begin() + static_cast<long>((r + 1) * cols_));
}

RatVec RatMatrix::col(std::size_t c) const {
    RatVec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

void RatMatrix::set_col(std::size_t c, const RatVec& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows) {
    if (rows.empty()) return RatMatrix();
    RatMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    return m;
}

RatMatrix RatMatrix::from_cols(const std::vector<RatVec>& cols) { return from_rows(cols).transposed(); }

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += a(i, k) * b(k, j);
        }
    return m;
}

RatVec RatMatrix::operator*(const RatVec& v) const {
    RatVec r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
        std::size_t p = row;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Rat inv = 1 / m(row, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, c) == 0) continue;
            Rat f = m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }

std::size_t rank(const std::vector<RatVec>& rows) {
    if (rows.empty()) return 0;
    return rank(RatMatrix::from_rows(rows));
}

std::vector<RatVec> kernel(const RatMatrix& m0) {
    RatMatrix m = m0;
    auto piv = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVec v(m.cols(), Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

Rat determinant(RatMatrix m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::DegenerateInput, "determinant of a non-square matrix");
    Rat det = 1;
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            Rat f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

RatVec solve(RatMatrix m, RatVec b) {
    const std::size_t n = m.rows();
    if (n != m.cols() || b.size() != n) throw Error(ErrorCode::SystemSingular, "shape mismatch");
    RatMatrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n) = b[i];
    }
    auto piv = rref(aug);
    if (piv.size() != n || piv.back() != n - 1) throw Error(ErrorCode::SystemSingular, "singular linear system");
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
    return x;
}

bool in_span(const std::vector<RatVec>& rows, const RatVec& v) {
    std::vector<RatVec> ext = rows;
    ext.push_back(v);
    return rank(ext) == rank(rows);
}

IntVec primitive_integer_vector(const RatVec& v) {
    BigInt l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntVec r;
    BigInt g = 0;
    for (const auto& x : v) {
        r.emplace_back(x.get_num() * (l / x.get_den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.back().get_mpz_t());
    }
    if (g == 0) throw Error(ErrorCode::DegenerateInput, "zero vector has no primitive form");
    int s = 0;
    for (const auto& x : r)
        if (x != 0) {
            s = sgn(x);
            break;
        }
    if (s < 0) g = -g;
    for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return r;
}

namespace {

BigInt dot(const IntVec& a, const IntVec& b) {
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void axpy(IntVec& a, const BigInt& q, const IntVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= q * b[i];
}

// nearest integer to num/den, den > 0, ties toward +inf
BigInt round_div(const BigInt& num, const BigInt& den) {
    BigInt t = 2 * num + den;
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), BigInt(2 * den).get_mpz_t());
    return q;
}

}  // namespace

LllResult lll_reduce(const std::vector<IntVec>& input, long delta_num, long delta_den) {
    const std::size_t m = input.size();
    LllResult res;
    res.basis = input;
    res.transform.assign(m, IntVec(m, BigInt(0)));
    for (std::size_t i = 0; i < m; ++i) res.transform[i][i] = 1;
    if (m == 0) return res;

    auto& b = res.basis;
    auto& h = res.transform;
    // 1-based d with d[0] = 1; lambda stored 0-based
    std::vector<BigInt> d(m + 1, BigInt(0));
    std::vector<std::vector<BigInt>> lam(m, std::vector<BigInt>(m, BigInt(0)));
    d[0] = 1;
    d[1] = dot(b[0], b[0]);
    if (d[1] == 0) throw Error(ErrorCode::DegenerateInput, "LLL input rows are dependent");

    auto red = [&](std::size_t k, std::size_t l) {
        // k, l are 0-based; d index l+1
        BigInt twice = 2 * lam[k][l];
        if (abs(twice) > d[l + 1]) {
            BigInt q = round_div(lam[k][l], d[l + 1]);
            axpy(b[k], q, b[l]);
            axpy(h[k], q, h[l]);
            lam[k][l] -= q * d[l + 1];
            for (std::size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
        }
    };

    std::size_t kmax = 0;
    std::size_t k = 1;
    while (k < m) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 0; j <= k; ++j) {
                BigInt u = dot(b[k], b[j]);
                for (std::size_t i = 0; i < j; ++i) {
                    u = d[i + 1] * u - lam[k][i] * lam[j][i];
                    mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d[i].get_mpz_t());
                }
                if (j < k) {
                    lam[k][j] = u;
                } else {
                    d[k + 1] = u;
                    if (u == 0) throw Error(ErrorCode::DegenerateInput, "LLL input rows are dependent");
                }
            }
        }
        red(k, k - 1);
        // Lovasz: den * d_k * d_{k-2} < num * d_{k-1}^2 - den * lambda^2 triggers a swap
        BigInt lhs = delta_den * d[k + 1] * d[k - 1];
        BigInt rhs = delta_num * d[k] * d[k] - delta_den * lam[k][k - 1] * lam[k][k - 1];
        if (lhs < rhs) {
            std::swap(b[k], b[k - 1]);
            std::swap(h[k], h[k - 1]);
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
            BigInt lm = lam[k][k - 1];
            BigInt B = d[k - 1] * d[k + 1] + lm * lm;
            mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), d[k].get_mpz_t());
            for (std::size_t i = k + 1; i <= kmax; ++i) {
                BigInt t = lam[i][k];
                BigInt nk = d[k + 1] * lam[i][k - 1] - lm * t;
                mpz_divexact(nk.get_mpz_t(), nk.get_mpz_t(), d[k].get_mpz_t());
                lam[i][k] = nk;
                BigInt nk1 = B * t + lm * lam[i][k];
                mpz_divexact(nk1.get_mpz_t(), nk1.get_mpz_t(), d[k + 1].get_mpz_t());
                lam[i][k - 1] = nk1;
            }
            d[k] = B;
            if (k > 1) --k;
        } else {
            for (std::size_t l = k - 1; l-- > 0;) red(k, l);
            ++k;
        }
    }
    res.gso_norms.resize(m);
    for (std::size_t i = 0; i < m; ++i) res.gso_norms[i] = Rat(d[i + 1], d[i]);
    for (auto& v : res.gso_norms) v.canonicalize();
    return res;
}

std::vector<Rat> gram_schmidt_norms(const std::vector<IntVec>& basis) {
    std::vector<RatVec> star;
    std::vector<Rat> norms;
    for (const auto& v : basis) {
        RatVec s(v.begin(), v.end());
        for (std::size_t j = 0; j < star.size(); ++j) {
            Rat num = 0;
            for (std::size_t i = 0; i < v.size(); ++i) num += Rat(v[i]) * star[j][i];
            Rat mu = num / norms[j];
            for (std::size_t i = 0; i < v.size(); ++i) s[i] -= mu * star[j][i];
        }
        Rat n2 = 0;
        for (const auto& x : s) n2 += x * x;
        if (n2 == 0) throw Error(ErrorCode::DegenerateInput, "dependent rows");
        star.push_back(std::move(s));
        norms.push_back(n2);
    }
    return norms;
}

}  // namespace algapprox
