#include "algapprox/ball.hpp"

#include "algapprox/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>

namespace algapprox {

Real::Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

Real::Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::from_int(long v, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

Real Real::from(const BigInt& v, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_z(r.v_, v.get_mpz_t(), rnd);
    return r;
}

Real Real::from(const Rat& v, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_q(r.v_, v.get_mpq_t(), rnd);
    return r;
}

Real Real::from_double(double v, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}

Real Real::from_string(const std::string& s, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    char* end = nullptr;
    mpfr_strtofr(r.v_, s.c_str(), &end, 10, rnd);
    if (end == s.c_str() || *end != '\0')
        throw Error(ErrorCode::InvalidInput, "not a decimal number: '" + s + "'");
    return r;
}

std::string Real::to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    char* buf = nullptr;
    std::string fmt = "%." + std::to_string(std::max(1, digits - 1)) + "Re";
    mpfr_asprintf(&buf, fmt.c_str(), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

Rat Real::to_rat() const {
    if (!is_finite()) throw Error(ErrorCode::PrecisionError, "non-finite value");
    BigInt m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    Rat r(m);
    if (e >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
    } else {
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
    }
    return r;
}

Real add(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_add(r.get(), a.get(), b.get(), rnd);
    return r;
}

Real sub(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_sub(r.get(), a.get(), b.get(), rnd);
    return r;
}

Real mul(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_mul(r.get(), a.get(), b.get(), rnd);
    return r;
}

Real div(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_div(r.get(), a.get(), b.get(), rnd);
    return r;
}

Real sqrt(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_sqrt(r.get(), a.get(), rnd);
    return r;
}

Real abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real neg(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real log(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_log(r.get(), a.get(), rnd);
    return r;
}

Real pow(const Real& a, const Real& e, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_pow(r.get(), a.get(), e.get(), rnd);
    return r;
}

Real hypot(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_hypot(r.get(), a.get(), b.get(), rnd);
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real pow2(long e, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
    return r;
}

namespace {

// bound on the error of one correctly rounded operation with result magnitude <= m
Real ulp_bound(const Real& m, mpfr_prec_t prec) {
    Real r(kRadPrec);
    mpfr_mul_2si(r.get(), m.get(), -static_cast<long>(prec) + 1, MPFR_RNDU);
    mpfr_abs(r.get(), r.get(), MPFR_RNDU);
    return r;
}

Real rad_add(const Real& a, const Real& b) { return add(a, b, kRadPrec, MPFR_RNDU); }
Real rad_mul(const Real& a, const Real& b) { return mul(a, b, kRadPrec, MPFR_RNDU); }

Real abs_up(const Real& a) {
    Real r(kRadPrec);
    mpfr_abs(r.get(), a.get(), MPFR_RNDU);
    return r;
}

// covers the rounding of center differences
Real center_slack(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t p) {
    Real m = max(max(abs_up(a.re()), abs_up(a.im())), max(abs_up(b.re()), abs_up(b.im())));
    return ulp_bound(m, p - 3);
}

}  // namespace

// RealBall

RealBall::RealBall(mpfr_prec_t prec) : mid_(prec), rad_(kRadPrec) {}

RealBall::RealBall(Real mid, Real rad) : mid_(std::move(mid)), rad_(kRadPrec) {
    mpfr_set(rad_.get(), rad.get(), MPFR_RNDU);
}

RealBall RealBall::from_bounds(const Real& lo, const Real& hi) {
    mpfr_prec_t p = std::max(lo.prec(), hi.prec());
    Real mid = add(lo, hi, p, MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    Real r1 = sub(hi, mid, kRadPrec, MPFR_RNDU);
    Real r2 = sub(mid, lo, kRadPrec, MPFR_RNDU);
    return RealBall(mid, max(r1, r2));
}

RealBall RealBall::exact(const Rat& v, mpfr_prec_t prec) {
    Real mid = Real::from(v, prec, MPFR_RNDN);
    Real err(kRadPrec);
    if (mpfr_set_q(mid.get(), v.get_mpq_t(), MPFR_RNDN) != 0) err = ulp_bound(mid, prec);
    return RealBall(mid, err);
}

Real RealBall::lower() const { return sub(mid_, rad_, mid_.prec() + 2, MPFR_RNDD); }
Real RealBall::upper() const { return add(mid_, rad_, mid_.prec() + 2, MPFR_RNDU); }

bool RealBall::contains_zero() const { return abs(mid_) <= rad_; }

bool RealBall::contains(const Rat& v) const {
    Real lo = lower(), hi = upper();
    return mpfr_cmp_q(lo.get(), v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi.get(), v.get_mpq_t()) >= 0;
}

bool RealBall::contains(const RealBall& o) const { return lower() <= o.lower() && o.upper() <= upper(); }

bool RealBall::overlaps(const RealBall& o) const { return !(upper() < o.lower() || o.upper() < lower()); }

RealBall operator+(const RealBall& a, const RealBall& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Real m = add(a.mid_, b.mid_, p, MPFR_RNDN);
    Real r = rad_add(rad_add(a.rad_, b.rad_), ulp_bound(m, p));
    return RealBall(m, r);
}

RealBall operator-(const RealBall& a, const RealBall& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Real m = sub(a.mid_, b.mid_, p, MPFR_RNDN);
    Real r = rad_add(rad_add(a.rad_, b.rad_), ulp_bound(m, p));
    return RealBall(m, r);
}

RealBall operator*(const RealBall& a, const RealBall& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Real m = mul(a.mid_, b.mid_, p, MPFR_RNDN);
    Real r = rad_add(rad_mul(abs_up(a.mid_), b.rad_), rad_mul(abs_up(b.mid_), a.rad_));
    r = rad_add(r, rad_mul(a.rad_, b.rad_));
    r = rad_add(r, ulp_bound(m, p));
    return RealBall(m, r);
}

std::string RealBall::to_string(int digits) const {
    return "[" + mid_.to_string(digits) + " +/- " + rad_.to_string(3) + "]";
}

// ComplexBall

ComplexBall::ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec), rad_(kRadPrec) {}

ComplexBall::ComplexBall(Real re, Real im, Real rad) : re_(std::move(re)), im_(std::move(im)), rad_(kRadPrec) {
    mpfr_set(rad_.get(), rad.get(), MPFR_RNDU);
    if (im_.prec() != re_.prec()) {
        Real t(re_.prec());
        mpfr_set(t.get(), im_.get(), MPFR_RNDN);
        if (!(t == im_)) rad_ = rad_add(rad_, ulp_bound(im_, re_.prec()));
        im_ = std::move(t);
    }
}

ComplexBall ComplexBall::exact(const Rat& re, const Rat& im, mpfr_prec_t prec) {
    Real a(prec), b(prec);
    int ia = mpfr_set_q(a.get(), re.get_mpq_t(), MPFR_RNDN);
    int ib = mpfr_set_q(b.get(), im.get_mpq_t(), MPFR_RNDN);
    Real r(kRadPrec);
    if (ia) r = rad_add(r, ulp_bound(a, prec));
    if (ib) r = rad_add(r, ulp_bound(b, prec));
    return ComplexBall(a, b, r);
}

ComplexBall ComplexBall::point(const Real& re, const Real& im) { return ComplexBall(re, im, Real(kRadPrec)); }

ComplexBall ComplexBall::from_strings(const std::string& re, const std::string& im, const std::string& rad,
                                      mpfr_prec_t prec) {
    Real a(prec), b(prec);
    Real ra(kRadPrec);
    char* end = nullptr;
    int ia = mpfr_strtofr(a.get(), re.c_str(), &end, 10, MPFR_RNDN);
    if (end == re.c_str() || *end) throw Error(ErrorCode::InvalidInput, "bad decimal '" + re + "'");
    int ib = mpfr_strtofr(b.get(), im.c_str(), &end, 10, MPFR_RNDN);
    if (end == im.c_str() || *end) throw Error(ErrorCode::InvalidInput, "bad decimal '" + im + "'");
    mpfr_strtofr(ra.get(), rad.c_str(), &end, 10, MPFR_RNDU);
    if (end == rad.c_str() || *end) throw Error(ErrorCode::InvalidInput, "bad decimal '" + rad + "'");
    if (ia) ra = rad_add(ra, ulp_bound(a, prec));
    if (ib) ra = rad_add(ra, ulp_bound(b, prec));
    return ComplexBall(a, b, ra);
}

ComplexBall ComplexBall::midpoint() const { return ComplexBall(re_, im_, Real(kRadPrec)); }

ComplexBall ComplexBall::with_radius(const Real& r) const { return ComplexBall(re_, im_, r); }

ComplexBall ComplexBall::conj() const { return ComplexBall(re_, neg(im_), rad_); }

ComplexBall ComplexBall::at_prec(mpfr_prec_t prec) const {
    Real a(prec), b(prec);
    int ia = mpfr_set(a.get(), re_.get(), MPFR_RNDN);
    int ib = mpfr_set(b.get(), im_.get(), MPFR_RNDN);
    Real r = rad_;
    if (ia) r = rad_add(r, ulp_bound(a, prec));
    if (ib) r = rad_add(r, ulp_bound(b, prec));
    return ComplexBall(a, b, r);
}

RealBall ComplexBall::abs() const {
    mpfr_prec_t p = prec();
    Real lo = hypot(re_, im_, p, MPFR_RNDD);
    Real hi = hypot(re_, im_, p, MPFR_RNDU);
    lo = sub(lo, rad_, p, MPFR_RNDD);
    hi = add(hi, rad_, p, MPFR_RNDU);
    if (lo.sign() < 0) lo = Real(p);
    return RealBall::from_bounds(lo, hi);
}

Real ComplexBall::abs_upper() const { return add(hypot(re_, im_, prec(), MPFR_RNDU), rad_, prec(), MPFR_RNDU); }

Real ComplexBall::abs_lower() const {
    Real lo = sub(hypot(re_, im_, prec(), MPFR_RNDD), rad_, prec(), MPFR_RNDD);
    if (lo.sign() < 0) return Real(prec());
    return lo;
}

RealBall ComplexBall::real_part() const { return RealBall(re_, rad_); }
RealBall ComplexBall::imag_part() const { return RealBall(im_, rad_); }

bool ComplexBall::contains_zero() const { return hypot(re_, im_, prec(), MPFR_RNDD) <= rad_; }

namespace {

// exact squared center distance
Rat center_dist2(const ComplexBall& a, const ComplexBall& b) {
    Rat dx = a.re().to_rat() - b.re().to_rat();
    Rat dy = a.im().to_rat() - b.im().to_rat();
    return dx * dx + dy * dy;
}

}  // namespace

bool ComplexBall::contains(const ComplexBall& o) const {
    Rat gap = rad_.to_rat() - o.rad_.to_rat();
    if (gap < 0) return false;
    return center_dist2(*this, o) <= gap * gap;
}

Real ComplexBall::distance_lower(const ComplexBall& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec());
    Real dre = sub(re_, o.re_, p, MPFR_RNDN);
    Real dim = sub(im_, o.im_, p, MPFR_RNDN);
    Real slack = center_slack(*this, o, p);
    Real dist = hypot(dre, dim, p, MPFR_RNDD);
    dist = sub(dist, rad_add(rad_add(rad_, o.rad_), slack), p, MPFR_RNDD);
    if (dist.sign() < 0) return Real(p);
    return dist;
}

Real ComplexBall::distance_upper(const ComplexBall& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec());
    Real dre = sub(re_, o.re_, p, MPFR_RNDN);
    Real dim = sub(im_, o.im_, p, MPFR_RNDN);
    Real slack = center_slack(*this, o, p);
    Real dist = hypot(dre, dim, p, MPFR_RNDU);
    return add(dist, rad_add(rad_add(rad_, o.rad_), slack), p, MPFR_RNDU);
}

bool ComplexBall::overlaps(const ComplexBall& o) const {
    Rat r = rad_.to_rat() + o.rad_.to_rat();
    return center_dist2(*this, o) <= r * r;
}

bool ComplexBall::meets_real_axis() const { return algapprox::abs(im_) <= rad_; }

ComplexBall& ComplexBall::operator+=(const ComplexBall& o) {
    mpfr_prec_t p = std::max(prec(), o.prec());
    Real a(p), b(p);
    int ia = mpfr_add(a.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    int ib = mpfr_add(b.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    Real r = rad_add(rad_, o.rad_);
    if (ia) r = rad_add(r, ulp_bound(a, p));
    if (ib) r = rad_add(r, ulp_bound(b, p));
    *this = ComplexBall(a, b, r);
    return *this;
}

ComplexBall& ComplexBall::operator-=(const ComplexBall& o) {
    mpfr_prec_t p = std::max(prec(), o.prec());
    Real a(p), b(p);
    int ia = mpfr_sub(a.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    int ib = mpfr_sub(b.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    Real r = rad_add(rad_, o.rad_);
    if (ia) r = rad_add(r, ulp_bound(a, p));
    if (ib) r = rad_add(r, ulp_bound(b, p));
    *this = ComplexBall(a, b, r);
    return *this;
}

ComplexBall operator-(const ComplexBall& a) { return ComplexBall(neg(a.re_), neg(a.im_), a.rad_); }

ComplexBall operator*(const ComplexBall& x, const ComplexBall& y) {
    mpfr_prec_t p = std::max(x.prec(), y.prec());
    Real ac(p), bd(p), ad(p), bc(p), re(p), im(p);
    int inexact = 0;
    inexact |= mpfr_mul(ac.get(), x.re_.get(), y.re_.get(), MPFR_RNDN);
    inexact |= mpfr_mul(bd.get(), x.im_.get(), y.im_.get(), MPFR_RNDN);
    inexact |= mpfr_mul(ad.get(), x.re_.get(), y.im_.get(), MPFR_RNDN);
    inexact |= mpfr_mul(bc.get(), x.im_.get(), y.re_.get(), MPFR_RNDN);
    inexact |= mpfr_sub(re.get(), ac.get(), bd.get(), MPFR_RNDN);
    inexact |= mpfr_add(im.get(), ad.get(), bc.get(), MPFR_RNDN);
    Real r(kRadPrec);
    if (!x.rad_.is_zero() || !y.rad_.is_zero()) {
        Real mx = hypot(x.re_, x.im_, kRadPrec, MPFR_RNDU);
        Real my = hypot(y.re_, y.im_, kRadPrec, MPFR_RNDU);
        r = rad_add(rad_mul(mx, y.rad_), rad_mul(my, x.rad_));
        r = rad_add(r, rad_mul(x.rad_, y.rad_));
    }
    if (inexact) {
        // each of the six operations contributes at most one ulp of its magnitude
        Real s1 = rad_add(abs_up(x.re_), abs_up(x.im_));
        Real s2 = rad_add(abs_up(y.re_), abs_up(y.im_));
        r = rad_add(r, rad_mul(ulp_bound(rad_mul(s1, s2), p), Real::from_int(4, kRadPrec)));
    }
    return ComplexBall(re, im, r);
}

ComplexBall ComplexBall::scaled(const Rat& s) const { return *this * ComplexBall::exact(s, Rat(0), prec()); }

ComplexBall ComplexBall::scaled(const Real& s) const {
    return *this * ComplexBall(s, Real(s.prec()), Real(kRadPrec));
}

ComplexBall ComplexBall::inverse() const {
    if (contains_zero()) throw Error(ErrorCode::DegenerateInput, "inverse of a ball containing 0");
    mpfr_prec_t p = prec();
    // 1/z = conj(z)/|z|^2 at the center, then a radius bound r/(|c|(|c|-r))
    Real n2 = add(mul(re_, re_, p + 8, MPFR_RNDN), mul(im_, im_, p + 8, MPFR_RNDN), p + 8, MPFR_RNDN);
    Real a = div(re_, n2, p, MPFR_RNDN);
    Real b = div(neg(im_), n2, p, MPFR_RNDN);
    Real mlo = hypot(re_, im_, kRadPrec, MPFR_RNDD);
    Real gap = sub(mlo, rad_, kRadPrec, MPFR_RNDD);
    Real r = div(rad_, mul(mlo, gap, kRadPrec, MPFR_RNDD), kRadPrec, MPFR_RNDU);
    Real inv = div(Real::from_int(1, kRadPrec), mlo, kRadPrec, MPFR_RNDU);
    r = rad_add(r, rad_mul(ulp_bound(inv, p), Real::from_int(8, kRadPrec)));
    return ComplexBall(a, b, r);
}

ComplexBall ComplexBall::pow(unsigned k) const {
    ComplexBall result = ComplexBall::exact(Rat(1), Rat(0), prec());
    ComplexBall base = *this;
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return result;
}

std::string ComplexBall::to_string(int digits) const {
    return "(" + re_.to_string(digits) + ", " + im_.to_string(digits) + ") +/- " + rad_.to_string(3);
}

namespace {

void check_finite(const ComplexBall& b) {
    if (!b.re().is_finite() || !b.im().is_finite() || !b.rad().is_finite())
        throw Error(ErrorCode::PrecisionError, "ball evaluation overflowed");
}

}  // namespace

ComplexBall eval_ball(const RatPoly& p, const ComplexBall& z) {
    const mpfr_prec_t prec = z.prec();
    if (!z.re().is_finite() || !z.im().is_finite() || !z.rad().is_finite())
        throw Error(ErrorCode::PrecisionError, "non-finite input ball");
    if (p.is_zero()) return ComplexBall(prec);
    ComplexBall acc = ComplexBall::exact(p.leading(), Rat(0), prec);
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        acc = acc * z;
        if (p[i] != 0) acc += ComplexBall::exact(p[i], Rat(0), prec);
    }
    check_finite(acc);
    return acc;
}

ComplexBall eval_ball(const IntPoly& p, const ComplexBall& z) { return eval_ball(to_rat(p), z); }

RealBall eval_ball(const RatPoly& p, const RealBall& x) {
    const mpfr_prec_t prec = x.prec();
    if (p.is_zero()) return RealBall(prec);
    RealBall acc = RealBall::exact(p.leading(), prec);
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        acc = acc * x;
        if (p[i] != 0) acc = acc + RealBall::exact(p[i], prec);
    }
    if (!acc.mid().is_finite() || !acc.rad().is_finite())
        throw Error(ErrorCode::PrecisionError, "ball evaluation overflowed");
    return acc;
}

}  // namespace algapprox
