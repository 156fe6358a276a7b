#pragma once

#include "algapprox/poly.hpp"

#include <mpfr.h>

#include <string>

namespace algapprox {

inline constexpr mpfr_prec_t kDefaultPrec = 128;
inline constexpr mpfr_prec_t kPrecCap = 8192;
// radii are carried at this precision, always rounded up
inline constexpr mpfr_prec_t kRadPrec = 64;

// Owning MPFR value. Operations take an explicit rounding mode so that
// upper and lower bounds can be produced deliberately.
class Real {
public:
    explicit Real(mpfr_prec_t prec = kDefaultPrec);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real from_int(long v, mpfr_prec_t prec);
    static Real from(const BigInt& v, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real from(const Rat& v, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real from_double(double v, mpfr_prec_t prec);
    // decimal string, e.g. "1.19" or "-3e-5"
    static Real from_string(const std::string& s, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // scientific notation with the given number of significant digits
    std::string to_string(int digits = 20) const;
    // exact dyadic value as a rational
    Rat to_rat() const;
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

Real add(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
Real sub(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
Real mul(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
Real div(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
Real sqrt(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd);
Real abs(const Real& a);
Real neg(const Real& a);
Real log(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd);
Real pow(const Real& a, const Real& e, mpfr_prec_t prec, mpfr_rnd_t rnd);
Real hypot(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
Real max(const Real& a, const Real& b);
// 2^e
Real pow2(long e, mpfr_prec_t prec);

// Closed real interval stored as midpoint and radius.
class RealBall {
public:
    explicit RealBall(mpfr_prec_t prec = kDefaultPrec);
    RealBall(Real mid, Real rad);
    // smallest ball (up to rounding) covering [lo, hi]
    static RealBall from_bounds(const Real& lo, const Real& hi);
    static RealBall exact(const Rat& v, mpfr_prec_t prec);

    const Real& mid() const { return mid_; }
    const Real& rad() const { return rad_; }
    mpfr_prec_t prec() const { return mid_.prec(); }
    Real lower() const;
    Real upper() const;
    bool contains_zero() const;
    bool contains(const Rat& v) const;
    bool contains(const RealBall& o) const;
    bool overlaps(const RealBall& o) const;

    friend RealBall operator+(const RealBall& a, const RealBall& b);
    friend RealBall operator-(const RealBall& a, const RealBall& b);
    friend RealBall operator*(const RealBall& a, const RealBall& b);

    std::string to_string(int digits = 20) const;

private:
    Real mid_;
    Real rad_;
};

// Closed disk {z : |z - center| <= radius}.
class ComplexBall {
public:
    explicit ComplexBall(mpfr_prec_t prec = kDefaultPrec);
    ComplexBall(Real re, Real im, Real rad);

    static ComplexBall exact(const Rat& re, const Rat& im, mpfr_prec_t prec);
    static ComplexBall point(const Real& re, const Real& im);
    static ComplexBall from_strings(const std::string& re, const std::string& im, const std::string& rad,
                                    mpfr_prec_t prec);

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    const Real& rad() const { return rad_; }
    mpfr_prec_t prec() const { return re_.prec(); }

    // center only, radius dropped
    ComplexBall midpoint() const;
    ComplexBall with_radius(const Real& r) const;
    ComplexBall conj() const;
    ComplexBall at_prec(mpfr_prec_t prec) const;

    // certified enclosure of |z|
    RealBall abs() const;
    Real abs_upper() const;
    Real abs_lower() const;
    RealBall real_part() const;
    RealBall imag_part() const;

    bool contains_zero() const;
    bool contains(const ComplexBall& o) const;
    bool overlaps(const ComplexBall& o) const;
    bool meets_real_axis() const;
    // lower bound on the distance between points of the two disks
    Real distance_lower(const ComplexBall& o) const;
    Real distance_upper(const ComplexBall& o) const;

    ComplexBall& operator+=(const ComplexBall& o);
    ComplexBall& operator-=(const ComplexBall& o);
    friend ComplexBall operator+(ComplexBall a, const ComplexBall& b) { return a += b; }
    friend ComplexBall operator-(ComplexBall a, const ComplexBall& b) { return a -= b; }
    friend ComplexBall operator-(const ComplexBall& a);
    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
    ComplexBall scaled(const Rat& s) const;
    ComplexBall scaled(const Real& s) const;
    // throws DegenerateInput when the disk contains 0
    ComplexBall inverse() const;
    ComplexBall pow(unsigned k) const;

    std::string to_string(int digits = 20) const;

private:
    Real re_;
    Real im_;
    Real rad_;
};

// Horner evaluation; the output disk contains p(w) for every w in z.
ComplexBall eval_ball(const RatPoly& p, const ComplexBall& z);
ComplexBall eval_ball(const IntPoly& p, const ComplexBall& z);
RealBall eval_ball(const RatPoly& p, const RealBall& x);

}  // namespace algapprox
