#include "algapprox/algebraic.hpp"
#include "algapprox/error.hpp"

#include <algorithm>
#include <set>
#include <optional>
#include <sstream>
#include <tuple>

namespace algapprox {

std::string IrreducibilityCertificate::describe() const {
    std::ostringstream os;
    switch (method) {
        case Method::Linear: os << "linear"; break;
        case Method::RationalRootFree: os << "no rational root (degree <= 3)"; break;
        case Method::Eisenstein:
            os << "Eisenstein at " << prime;
            if (shift) os << " after X -> X" << (shift > 0 ? "+" : "") << shift;
            break;
        case Method::ModPrime: os << "irreducible modulo " << prime; break;
        case Method::DegreePattern: {
            os << "factor degree patterns modulo";
            for (long q : primes) os << " " << q;
            os << " are incompatible with a proper factor";
            break;
        }
        case Method::Assumed: os << "assumed irreducible (not certified)"; break;
    }
    return os.str();
}

namespace {

using ModPoly = std::vector<long>;  // coefficients in [0, p), trailing zeros stripped

void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long mod(const BigInt& v, long p) { return static_cast<long>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p))); }

long inv_mod(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    while (nr) {
        long q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    return (t % p + p) % p;
}

ModPoly reduce(const IntPoly& f, long p) {
    ModPoly r;
    for (const auto& c : f.coeffs()) r.push_back(mod(c, p));
    trim(r);
    return r;
}

ModPoly rem_mod(ModPoly a, const ModPoly& b, long p) {
    const int db = static_cast<int>(b.size()) - 1;
    long li = inv_mod(b.back(), p);
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
        long t = a[k] * li % p;
        if (!t) continue;
        for (int j = 0; j <= db; ++j) a[k - db + j] = ((a[k - db + j] - t * b[j]) % p + p) % p;
    }
    a.resize(std::min<std::size_t>(a.size(), static_cast<std::size_t>(db)));
    trim(a);
    return a;
}

ModPoly mul_mod(const ModPoly& a, const ModPoly& b, const ModPoly& m, long p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return rem_mod(r, m, p);
}

ModPoly gcd_mod(ModPoly a, ModPoly b, long p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        ModPoly r = rem_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        long li = inv_mod(a.back(), p);
        for (auto& c : a) c = c * li % p;
    }
    return a;
}

ModPoly pow_mod(ModPoly base, BigInt e, const ModPoly& m, long p) {
    ModPoly r{1};
    base = rem_mod(base, m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul_mod(r, base, m, p);
        e >>= 1;
        if (e > 0) base = mul_mod(base, base, m, p);
    }
    return r;
}

ModPoly sub_x(ModPoly a, long p) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] - 1 + p) % p;
    trim(a);
    return a;
}

ModPoly div_mod(ModPoly a, const ModPoly& b, long p) {
    const int db = static_cast<int>(b.size()) - 1;
    const int da = static_cast<int>(a.size()) - 1;
    if (da < db) return {};
    ModPoly q(da - db + 1, 0);
    long li = inv_mod(b.back(), p);
    for (int k = da; k >= db; --k) {
        long t = a[k] * li % p;
        q[k - db] = t;
        if (!t) continue;
        for (int j = 0; j <= db; ++j) a[k - db + j] = ((a[k - db + j] - t * b[j]) % p + p) % p;
    }
    trim(q);
    return q;
}

// degrees of the irreducible factors of a squarefree f over F_p (distinct-degree factorization)
std::vector<int> factor_degrees(ModPoly f, long p) {
    std::vector<int> degs;
    ModPoly h{0, 1};
    int i = 0;
    while (static_cast<int>(f.size()) - 1 >= 2 * (i + 1)) {
        ++i;
        h = pow_mod(h, BigInt(p), f, p);
        ModPoly g = gcd_mod(f, sub_x(h, p), p);
        int dg = static_cast<int>(g.size()) - 1;
        if (dg > 0) {
            for (int k = 0; k < dg / i; ++k) degs.push_back(i);
            f = div_mod(f, g, p);
            h = rem_mod(h, f, p);
        }
    }
    int df = static_cast<int>(f.size()) - 1;
    if (df > 0) degs.push_back(df);
    return degs;
}

std::vector<long> small_primes(long limit) {
    std::vector<long> ps;
    for (long n = 2; n <= limit; ++n) {
        bool prime = true;
        for (long q : ps) {
            if (q * q > n) break;
            if (n % q == 0) {
                prime = false;
                break;
            }
        }
        if (prime) ps.push_back(n);
    }
    return ps;
}

// positive divisors of |v| when v is fully factored by trial division up to 10^6
std::optional<std::vector<BigInt>> divisors(BigInt v) {
    v = abs(v);
    std::vector<std::pair<BigInt, int>> fac;
    for (unsigned long q = 2; q <= 1000000 && BigInt(q) * q <= v; ++q) {
        if (mpz_divisible_ui_p(v.get_mpz_t(), q)) {
            int e = 0;
            while (mpz_divisible_ui_p(v.get_mpz_t(), q)) {
                v /= q;
                ++e;
            }
            fac.emplace_back(BigInt(q), e);
        }
    }
    if (v > 1) {
        if (v > BigInt(1000000) * 1000000 && mpz_probab_prime_p(v.get_mpz_t(), 30) == 0) return std::nullopt;
        fac.emplace_back(v, 1);
    }
    std::vector<BigInt> ds{1};
    for (auto& [q, e] : fac) {
        std::size_t n = ds.size();
        BigInt pw = 1;
        for (int k = 1; k <= e; ++k) {
            pw *= q;
            for (std::size_t i = 0; i < n; ++i) ds.push_back(ds[i] * pw);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

bool eisenstein(const IntPoly& f, long q) {
    const int d = f.degree();
    if (mpz_divisible_ui_p(f.leading().get_mpz_t(), static_cast<unsigned long>(q))) return false;
    for (int i = 0; i < d; ++i)
        if (!mpz_divisible_ui_p(f[i].get_mpz_t(), static_cast<unsigned long>(q))) return false;
    return !mpz_divisible_ui_p(f[0].get_mpz_t(), static_cast<unsigned long>(q * q));
}

}  // namespace

std::optional<IrreducibilityCertificate> certify_irreducible(const IntPoly& p) {
    using Method = IrreducibilityCertificate::Method;
    const int d = p.degree();
    if (d < 1) throw Error(ErrorCode::DegenerateInput, "constant polynomial");
    IrreducibilityCertificate cert;
    if (d == 1) {
        cert.method = Method::Linear;
        return cert;
    }
    if (p[0] == 0) throw Error(ErrorCode::ReducibleInput, "X divides " + to_string(p));

    // rational roots r/s with r | c0, s | lc
    auto num = divisors(p[0]);
    auto den = divisors(p.leading());
    bool roots_excluded = false;
    if (num && den) {
        RatPoly pr = to_rat(p);
        for (const auto& r : *num)
            for (const auto& s : *den)
                for (int sign : {1, -1}) {
                    Rat x(sign * r, s);
                    x.canonicalize();
                    if (pr.eval(x) == 0)
                        throw Error(ErrorCode::ReducibleInput,
                                    "rational root " + x.get_str() + " of " + to_string(p));
                }
        roots_excluded = true;
    }
    if (d <= 3 && roots_excluded) {
        cert.method = Method::RationalRootFree;
        return cert;
    }

    const auto primes50 = small_primes(50);
    for (long c : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L}) {
        IntPoly g = c ? taylor_shift(p, BigInt(c)) : p;
        for (long q : primes50)
            if (eisenstein(g, q)) {
                cert.method = Method::Eisenstein;
                cert.prime = q;
                cert.shift = c;
                return cert;
            }
    }

    const BigInt disc = discriminant(p);
    const BigInt bad = disc * p.leading();
    std::vector<std::set<int>> sums;
    std::vector<long> used;
    for (long q : small_primes(200)) {
        if (mpz_divisible_ui_p(bad.get_mpz_t(), static_cast<unsigned long>(q))) continue;
        ModPoly f = reduce(p, q);
        auto degs = factor_degrees(f, q);
        if (degs.size() == 1) {
            cert.method = Method::ModPrime;
            cert.prime = q;
            return cert;
        }
        std::set<int> s{0};
        for (int k : degs) {
            std::set<int> next = s;
            for (int v : s) next.insert(v + k);
            s = std::move(next);
        }
        sums.push_back(std::move(s));
        used.push_back(q);
        // proper factor degrees still possible under every pattern seen so far
        bool possible = false;
        for (int k = 1; k < d && !possible; ++k) {
            bool all = true;
            for (const auto& st : sums)
                if (!st.count(k)) {
                    all = false;
                    break;
                }
            possible = all;
        }
        if (!possible) {
            cert.method = Method::DegreePattern;
            cert.primes = used;
            return cert;
        }
    }
    return std::nullopt;
}

// Sturm sequences

std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
    std::vector<RatPoly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        RatPoly r = -rem(seq[seq.size() - 2], seq.back());
        if (r.is_zero()) break;
        seq.push_back(r);
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

namespace {

int sign_changes(const std::vector<int>& s) {
    int changes = 0, last = 0;
    for (int v : s) {
        if (v == 0) continue;
        if (last && v != last) ++changes;
        last = v;
    }
    return changes;
}

int changes_at(const std::vector<RatPoly>& seq, const Rat& x) {
    std::vector<int> s;
    for (const auto& q : seq) s.push_back(sgn(q.eval(x)));
    return sign_changes(s);
}

}  // namespace

int sturm_count(const std::vector<RatPoly>& seq, const Rat& a, const Rat& b) {
    return changes_at(seq, a) - changes_at(seq, b);
}

int sturm_count_all(const std::vector<RatPoly>& seq) {
    std::vector<int> lo, hi;
    for (const auto& q : seq) {
        int s = sgn(q.leading());
        hi.push_back(s);
        lo.push_back(q.degree() % 2 ? -s : s);
    }
    return sign_changes(lo) - sign_changes(hi);
}

}  // namespace algapprox
