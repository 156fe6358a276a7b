#include "algapprox/poly.hpp"

#include "algapprox/error.hpp"

#include <sstream>

namespace algapprox {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::PrecisionError: return "PrecisionError";
        case ErrorCode::ReducibleInput: return "ReducibleInput";
        case ErrorCode::NotCertified: return "NotCertified";
        case ErrorCode::AmbiguousHint: return "AmbiguousHint";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::IndexNotTwo: return "IndexNotTwo";
        case ErrorCode::WrongDimension: return "WrongDimension";
        case ErrorCode::OutOfRegime: return "OutOfRegime";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::ZeroValue: return "ZeroValue";
        case ErrorCode::GapCase: return "GapCase";
        case ErrorCode::SystemSingular: return "SystemSingular";
        case ErrorCode::DerivativeZero: return "DerivativeZero";
    }
    return "Unknown";
}

RatPoly to_rat(const IntPoly& p) {
    std::vector<Rat> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return RatPoly(std::move(c));
}

BigInt content(const IntPoly& p) {
    if (p.is_zero()) return 0;
    BigInt g = 0;
    for (const auto& v : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    if (sgn(p.leading()) < 0) g = -g;
    return g;
}

IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return p;
    BigInt g = content(p);
    std::vector<BigInt> c(p.coeffs());
    for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(c));
}

IntPoly primitive_part(const RatPoly& p) {
    if (p.is_zero()) return IntPoly();
    BigInt l = 1;
    for (const auto& v : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    std::vector<BigInt> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) c.emplace_back(v.get_num() * (l / v.get_den()));
    return primitive_part(IntPoly(std::move(c)));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw Error(ErrorCode::DegenerateInput, "division by the zero polynomial");
    if (a.degree() < b.degree()) return {RatPoly(), a};
    std::vector<Rat> r(a.coeffs());
    std::vector<Rat> q(a.size() - b.size() + 1);
    const int db = b.degree();
    const Rat lc_inv = 1 / b.leading();
    for (int k = a.degree() - db; k >= 0; --k) {
        Rat t = r[k + db] * lc_inv;
        q[k] = t;
        if (t == 0) continue;
        for (int j = 0; j <= db; ++j) r[k + j] -= t * b[j];
    }
    r.resize(db);
    return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly rem(const RatPoly& a, const RatPoly& b) { return divmod(a, b).second; }

IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw Error(ErrorCode::DegenerateInput, "pseudo-remainder by zero");
    if (a.degree() < b.degree()) return a;
    std::vector<BigInt> r(a.coeffs());
    const int db = b.degree();
    const BigInt& lc = b.leading();
    int e = a.degree() - db + 1;
    for (int top = a.degree(); top >= db; --top) {
        BigInt t = r[top];
        for (auto& v : r) v *= lc;
        --e;
        for (int j = 0; j <= db; ++j) r[top - db + j] -= t * b[j];
    }
    // top coefficients are now zero; multiply out the unused lc powers
    for (; e > 0; --e)
        for (auto& v : r) v *= lc;
    r.resize(db);
    return IntPoly(std::move(r));
}

IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
    auto [q, r] = divmod(to_rat(a), to_rat(b));
    if (!r.is_zero()) throw Error(ErrorCode::DegenerateInput, "inexact polynomial division");
    std::vector<BigInt> c;
    for (const auto& v : q.coeffs()) {
        if (v.get_den() != 1) throw Error(ErrorCode::DegenerateInput, "quotient is not integral");
        c.push_back(v.get_num());
    }
    return IntPoly(std::move(c));
}

RatPoly monic(const RatPoly& a) {
    if (a.is_zero()) return a;
    return a * Rat(1 / a.leading());
}

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::DegenerateInput, "gcd(0, 0)");
    RatPoly x = a, y = b;
    while (!y.is_zero()) {
        RatPoly r = rem(x, y);
        x = std::move(y);
        y = monic(r);
    }
    return monic(x);
}

namespace {

BigInt ipow(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

// Subresultant PRS (Collins), integer coefficients throughout.
BigInt resultant(const IntPoly& a0, const IntPoly& b0) {
    if (a0.is_zero() || b0.is_zero()) throw Error(ErrorCode::DegenerateInput, "resultant of zero polynomial");
    IntPoly a = a0, b = b0;
    int sign = 1;
    if (a.degree() < b.degree()) {
        if ((a.degree() % 2) && (b.degree() % 2)) sign = -1;
        std::swap(a, b);
    }
    if (b.degree() == 0) return sign * ipow(b.leading(), a.degree());

    BigInt ca = content(a), cb = content(b);
    if (ca < 0) ca = -ca;
    if (cb < 0) cb = -cb;
    BigInt t = ipow(ca, b.degree()) * ipow(cb, a.degree());
    a = exact_div(a, IntPoly::constant(ca));
    b = exact_div(b, IntPoly::constant(cb));

    BigInt g = 1, h = 1;
    while (true) {
        const int delta = a.degree() - b.degree();
        if ((a.degree() % 2) && (b.degree() % 2)) sign = -sign;
        IntPoly r = pseudo_rem(a, b);
        a = b;
        if (r.is_zero()) return 0;
        BigInt div = g * ipow(h, delta);
        std::vector<BigInt> c(r.coeffs());
        for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), div.get_mpz_t());
        b = IntPoly(std::move(c));
        g = a.leading();
        if (delta == 0) {
            // h unchanged
        } else {
            BigInt num = ipow(g, delta);
            BigInt den = ipow(h, delta - 1);
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (b.degree() == 0) {
            const int da = a.degree();
            BigInt num = ipow(b.leading(), da);
            if (da == 0) return sign * t * num * h;
            BigInt den = ipow(h, da - 1);
            BigInt res;
            mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            return sign * t * res;
        }
    }
}

Rat resultant(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) throw Error(ErrorCode::DegenerateInput, "resultant of zero polynomial");
    // a = la * A, b = lb * B with A, B integral
    auto scale = [](const RatPoly& p, IntPoly& out) -> Rat {
        BigInt l = 1;
        for (const auto& v : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        std::vector<BigInt> c;
        for (const auto& v : p.coeffs()) c.emplace_back(v.get_num() * (l / v.get_den()));
        out = IntPoly(std::move(c));
        return Rat(1, 1) / Rat(l);
    };
    IntPoly A, B;
    Rat la = scale(a, A), lb = scale(b, B);
    Rat r(resultant(A, B));
    Rat f = 1;
    for (int i = 0; i < b.degree(); ++i) f *= la;
    for (int i = 0; i < a.degree(); ++i) f *= lb;
    r *= f;
    r.canonicalize();
    return r;
}

BigInt discriminant(const IntPoly& p) {
    const int d = p.degree();
    if (d < 1) throw Error(ErrorCode::DegenerateInput, "discriminant of a constant");
    BigInt r = resultant(p, p.derivative());
    BigInt q;
    mpz_divexact(q.get_mpz_t(), r.get_mpz_t(), p.leading().get_mpz_t());
    if ((static_cast<long>(d) * (d - 1) / 2) % 2) q = -q;
    return q;
}

RatPoly squarefree_part(const RatPoly& a) {
    if (a.is_zero()) throw Error(ErrorCode::DegenerateInput, "squarefree part of zero");
    if (a.degree() == 0) return RatPoly::constant(1);
    RatPoly g = poly_gcd(a, a.derivative());
    return monic(divmod(a, g).first);
}

BigInt poly_height(const IntPoly& p) {
    BigInt h = 0;
    for (const auto& v : p.coeffs()) {
        BigInt av = abs(v);
        if (av > h) h = av;
    }
    return h;
}

RatPoly compose(const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    for (std::size_t i = a.size(); i-- > 0;) r = r * b + RatPoly::constant(a[i]);
    return r;
}

IntPoly compose(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    for (std::size_t i = a.size(); i-- > 0;) r = r * b + IntPoly::constant(a[i]);
    return r;
}

RatPoly compose_mod(const RatPoly& a, const RatPoly& b, const RatPoly& m) {
    RatPoly bm = rem(b, m);
    RatPoly r;
    for (std::size_t i = a.size(); i-- > 0;) r = rem(r * bm + RatPoly::constant(a[i]), m);
    return r;
}

IntPoly taylor_shift(const IntPoly& a, const BigInt& c) {
    IntPoly xc(std::vector<BigInt>{c, BigInt(1)});
    return compose(a, xc);
}

namespace {

template <class T>
std::string poly_string(const Poly<T>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        const T& c = p[i];
        if (c == 0) continue;
        T mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || mag != 1) os << mag.get_str();
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace

std::string to_string(const IntPoly& p, const std::string& var) { return poly_string(p, var); }
std::string to_string(const RatPoly& p, const std::string& var) { return poly_string(p, var); }

}  // namespace algapprox
