#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace algapprox {

using BigInt = mpz_class;
using Rat = mpq_class;

// num/den in lowest terms
inline Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// degree of the zero polynomial
inline constexpr int kZeroDegree = -1;

// Dense univariate polynomial, c_[i] is the coefficient of X^i.
// Trailing zeros are always stripped, so the zero polynomial is empty.
template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
    static Poly monomial(const T& v, std::size_t k) {
        std::vector<T> c(k + 1, T(0));
        c[k] = v;
        return Poly(std::move(c));
    }
    static Poly x() { return monomial(T(1), 1); }

    int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }
    const std::vector<T>& coeffs() const { return c_; }
    const T& operator[](std::size_t i) const { return c_[i]; }
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    const T& leading() const { return c_.back(); }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const T& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend Poly operator*(const T& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T(static_cast<long>(i));
        return Poly(std::move(r));
    }

    // shift by X^k
    Poly shifted(std::size_t k) const {
        if (is_zero()) return Poly();
        std::vector<T> r(k, T(0));
        r.insert(r.end(), c_.begin(), c_.end());
        return Poly(std::move(r));
    }

    template <class V>
    V eval(const V& x) const {
        V acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + V(c_[i]);
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<T> c_;
};

using IntPoly = Poly<BigInt>;
using RatPoly = Poly<Rat>;

RatPoly to_rat(const IntPoly& p);

// content with the sign of the leading coefficient; content(0) = 0
BigInt content(const IntPoly& p);

// p / content, leading coefficient positive
IntPoly primitive_part(const IntPoly& p);

// clears denominators and normalizes to primitive with positive leading coefficient
IntPoly primitive_part(const RatPoly& p);

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly rem(const RatPoly& a, const RatPoly& b);

// pseudo-remainder: lc(b)^(deg a - deg b + 1) a mod b, over Z
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b);

// exact division over Z, throws if the remainder is nonzero
IntPoly exact_div(const IntPoly& a, const IntPoly& b);

RatPoly monic(const RatPoly& a);

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b);

// Res(a,b) = lc(a)^deg(b) * prod_{a(alpha)=0} b(alpha), subresultant PRS
Rat resultant(const RatPoly& a, const RatPoly& b);
BigInt resultant(const IntPoly& a, const IntPoly& b);

BigInt discriminant(const IntPoly& p);

RatPoly squarefree_part(const RatPoly& a);

BigInt poly_height(const IntPoly& p);

// a(b(X))
RatPoly compose(const RatPoly& a, const RatPoly& b);
IntPoly compose(const IntPoly& a, const IntPoly& b);

// a(b(X)) mod m
RatPoly compose_mod(const RatPoly& a, const RatPoly& b, const RatPoly& m);

// a(X + c)
IntPoly taylor_shift(const IntPoly& a, const BigInt& c);

std::string to_string(const IntPoly& p, const std::string& var = "X");
std::string to_string(const RatPoly& p, const std::string& var = "X");

}  // namespace algapprox
