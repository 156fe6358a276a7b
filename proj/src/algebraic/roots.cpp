#include "algapprox/algebraic.hpp"
#include "algapprox/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace algapprox {

namespace {

using cld = std::complex<long double>;

// Aberth-Ehrlich in long double, used only for starting points.
std::vector<cld> aberth_start(const IntPoly& p) {
    const int d = p.degree();
    std::vector<long double> a(d + 1);
    for (int i = 0; i <= d; ++i) a[i] = static_cast<long double>(mpz_get_d(p[i].get_mpz_t()));
    // Fujiwara-style radius
    long double R = 0;
    for (int i = 0; i < d; ++i)
        R = std::max(R, std::pow(std::fabs(a[i] / a[d]), 1.0L / static_cast<long double>(d - i)));
    R = std::max(2 * R, 1e-3L);
    cld center(-a[d - 1] / (d * a[d]), 0);
    std::vector<cld> z(d);
    const long double pi = 3.14159265358979323846264338327950288L;
    for (int k = 0; k < d; ++k) z[k] = center + std::polar(R * 0.5L, 2 * pi * k / d + 0.4L);
    for (int it = 0; it < 800; ++it) {
        long double worst = 0;
        for (int k = 0; k < d; ++k) {
            cld v = a[d], dv = 0;
            for (int i = d - 1; i >= 0; --i) {
                dv = dv * z[k] + v;
                v = v * z[k] + a[i];
            }
            if (dv == cld(0)) dv = cld(1e-30L, 0);
            cld ratio = v / dv;
            cld s = 0;
            for (int j = 0; j < d; ++j)
                if (j != k) s += 1.0L / (z[k] - z[j]);
            cld w = ratio / (1.0L - ratio * s);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[k])));
        }
        if (worst < 1e-18L) break;
    }
    return z;
}

ComplexBall to_point(const cld& z, mpfr_prec_t prec) {
    Real re(prec), im(prec);
    mpfr_set_ld(re.get(), z.real(), MPFR_RNDN);
    mpfr_set_ld(im.get(), z.imag(), MPFR_RNDN);
    return ComplexBall::point(re, im);
}

// Aberth iterations at working precision, centers only.
void aberth_refine(const IntPoly& p, std::vector<ComplexBall>& z, mpfr_prec_t prec) {
    const std::size_t d = z.size();
    const IntPoly dp = p.derivative();
    ComplexBall one = ComplexBall::exact(Rat(1), Rat(0), prec);
    for (int it = 0; it < 60; ++it) {
        bool converged = true;
        for (std::size_t k = 0; k < d; ++k) {
            ComplexBall v = eval_ball(p, z[k]).midpoint();
            ComplexBall dv = eval_ball(dp, z[k]).midpoint();
            if (v.contains_zero()) continue;
            if (dv.contains_zero()) continue;
            ComplexBall ratio = (v * dv.inverse()).midpoint();
            ComplexBall s(prec);
            bool clash = false;
            for (std::size_t j = 0; j < d; ++j) {
                if (j == k) continue;
                ComplexBall diff = (z[k] - z[j]).midpoint();
                if (diff.contains_zero()) {
                    clash = true;
                    break;
                }
                s += diff.inverse().midpoint();
            }
            if (clash) continue;
            ComplexBall den = (one - ratio * s).midpoint();
            if (den.contains_zero()) continue;
            ComplexBall w = (ratio * den.inverse()).midpoint();
            z[k] = (z[k] - w).midpoint();
            // converged when |w| <= 2^(8-prec) max(1, |z|)
            Real scale = max(Real::from_int(1, kRadPrec), z[k].abs_upper());
            Real tol = mul(scale, pow2(8 - static_cast<long>(prec), kRadPrec), kRadPrec, MPFR_RNDU);
            if (w.abs_upper() > tol) converged = false;
        }
        if (converged) break;
    }
}

Real certified_radius(const IntPoly& p, const IntPoly& dp, const ComplexBall& z, bool& ok) {
    const int d = p.degree();
    ComplexBall v = eval_ball(p, z);
    ComplexBall dv = eval_ball(dp, z);
    Real lo = dv.abs_lower();
    if (lo.sign() <= 0) {
        ok = false;
        return Real(kRadPrec);
    }
    Real r = div(v.abs_upper(), lo, kRadPrec, MPFR_RNDU);
    r = mul(r, Real::from_int(d, kRadPrec), kRadPrec, MPFR_RNDU);
    ok = true;
    return r;
}

enum class RealVerdict { Real, NonReal, Unknown };

RealVerdict classify_real(const ComplexBall& b, const std::vector<RatPoly>& sturm) {
    if (!b.meets_real_axis()) return RealVerdict::NonReal;
    const mpfr_prec_t p = b.prec();
    Real y2 = mul(b.im(), b.im(), p, MPFR_RNDD);
    Real r2 = mul(b.rad(), b.rad(), p, MPFR_RNDU);
    Real h_up = sqrt(sub(r2, y2, p, MPFR_RNDU), p, MPFR_RNDU);
    Real y2u = mul(b.im(), b.im(), p, MPFR_RNDU);
    Real r2d = mul(b.rad(), b.rad(), p, MPFR_RNDD);
    Real diff = sub(r2d, y2u, p, MPFR_RNDD);
    Rat x = b.re().to_rat();
    // outer interval covers every real point of the disk
    Rat hu = h_up.to_rat();
    hu += hu / Rat(1 << 20) + Rat(1, 1) / Rat(BigInt(1) << 2000);
    if (sturm_count(sturm, x - hu, x + hu) == 0) return RealVerdict::NonReal;
    if (diff.sign() > 0) {
        Rat hd = sqrt(diff, p, MPFR_RNDD).to_rat();
        if (hd > 0 && sturm_count(sturm, x - hd, x + hd) >= 1) return RealVerdict::Real;
    }
    return RealVerdict::Unknown;
}

bool pairwise_disjoint(const std::vector<RootBall>& r) {
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j)
            if (r[i].ball.overlaps(r[j].ball)) return false;
    return true;
}

// one attempt at a given precision; empty on failure
std::vector<RootBall> certify_at(const IntPoly& p, std::vector<ComplexBall>& z, mpfr_prec_t prec,
                                 const std::vector<RatPoly>& sturm) {
    aberth_refine(p, z, prec);
    const IntPoly dp = p.derivative();
    std::vector<RootBall> out;
    for (auto& c : z) {
        bool ok = false;
        Real r = certified_radius(p, dp, c, ok);
        if (!ok) return {};
        out.push_back({c.with_radius(r), false});
    }
    if (!pairwise_disjoint(out)) return {};
    int nreal = 0;
    for (auto& rb : out) {
        RealVerdict v = classify_real(rb.ball, sturm);
        if (v == RealVerdict::Unknown) return {};
        if (v == RealVerdict::Real) {
            rb.real = true;
            rb.ball = ComplexBall(rb.ball.re(), Real(prec), rb.ball.rad());
            ++nreal;
        }
    }
    if (nreal != sturm_count_all(sturm)) return {};
    if (!pairwise_disjoint(out)) return {};
    return out;
}

// -1, 0, +1 on a certified interval comparison, nullopt when the intervals overlap
std::optional<int> cmp_interval(const RealBall& a, const RealBall& b) {
    if (a.upper() < b.lower()) return -1;
    if (b.upper() < a.lower()) return 1;
    return std::nullopt;
}

bool is_mirror_pair(const std::vector<RootBall>& roots, std::size_t i, std::size_t j) {
    if (roots[i].real || roots[j].real) return false;
    ComplexBall m = roots[i].ball.conj();
    if (!m.overlaps(roots[j].ball)) return false;
    for (std::size_t k = 0; k < roots.size(); ++k)
        if (k != j && m.overlaps(roots[k].ball)) return false;
    return true;
}

}  // namespace

RootBall refine_root(const IntPoly& p, const RootBall& root, mpfr_prec_t prec) {
    const IntPoly dp = p.derivative();
    ComplexBall z = root.ball.at_prec(prec).midpoint();
    ComplexBall best = root.ball;
    for (mpfr_prec_t w = std::max<mpfr_prec_t>(prec, root.ball.prec()); w <= std::max(prec, kPrecCap) * 2; w *= 2) {
        z = z.at_prec(w).midpoint();
        for (int it = 0; it < 200; ++it) {
            ComplexBall v = eval_ball(p, z).midpoint();
            ComplexBall dv = eval_ball(dp, z).midpoint();
            if (v.contains_zero() || dv.contains_zero()) break;
            ComplexBall step = (v * dv.inverse()).midpoint();
            z = (z - step).midpoint();
            Real scale = max(Real::from_int(1, kRadPrec), z.abs_upper());
            if (step.abs_upper() <= mul(scale, pow2(4 - static_cast<long>(w), kRadPrec), kRadPrec, MPFR_RNDU)) break;
        }
        if (root.real) z = ComplexBall(z.re(), Real(w), Real(kRadPrec));
        bool ok = false;
        Real r = certified_radius(p, dp, z, ok);
        if (ok) {
            ComplexBall cand = z.with_radius(r);
            if (root.ball.contains(cand)) return {cand, root.real};
        }
    }
    throw Error(ErrorCode::PrecisionError, "root refinement did not nest");
}

std::vector<RootBall> isolate_roots(const IntPoly& p, mpfr_prec_t prec, mpfr_prec_t cap) {
    const int d = p.degree();
    if (d < 1) return {};
    if (d == 1) {
        Rat r = -Rat(p.coeff(0)) / Rat(p.coeff(1));
        r.canonicalize();
        return {{ComplexBall::exact(r, Rat(0), prec), true}};
    }
    RatPoly pr = to_rat(p);
    if (poly_gcd(pr, pr.derivative()).degree() > 0)
        throw Error(ErrorCode::DegenerateInput, "root isolation needs a squarefree polynomial");
    auto sturm = sturm_sequence(pr);
    auto start = aberth_start(p);
    std::vector<ComplexBall> z;
    for (const auto& s : start) z.push_back(to_point(s, prec));

    std::vector<RootBall> roots;
    mpfr_prec_t w = prec;
    for (;; w *= 2) {
        for (auto& c : z) c = c.at_prec(w).midpoint();
        roots = certify_at(p, z, w, sturm);
        if (!roots.empty()) break;
        if (w >= cap) throw Error(ErrorCode::PrecisionError, "root isolation failed at the precision cap");
    }

    // canonical order; pairs whose real parts cannot be separated are refined,
    // up to the cap, after which the real parts are treated as equal
    std::vector<RootBall> fine = roots;
    std::vector<mpfr_prec_t> fine_prec(roots.size(), w);
    auto compare = [&](std::size_t i, std::size_t j) -> bool {
        for (;;) {
            auto c = cmp_interval(fine[i].ball.real_part(), fine[j].ball.real_part());
            bool equal_re = false;
            if (c) return *c < 0;
            if (is_mirror_pair(fine, i, j)) {
                equal_re = true;
            } else if (fine_prec[i] >= cap && fine_prec[j] >= cap) {
                equal_re = true;
            }
            if (equal_re) {
                for (;;) {
                    auto ci = cmp_interval(fine[i].ball.imag_part(), fine[j].ball.imag_part());
                    if (ci) return *ci < 0;
                    if (fine_prec[i] >= 4 * cap && fine_prec[j] >= 4 * cap)
                        throw Error(ErrorCode::PrecisionError, "cannot order roots");
                    fine[i] = refine_root(p, fine[i], fine_prec[i] * 2);
                    fine_prec[i] *= 2;
                    fine[j] = refine_root(p, fine[j], fine_prec[j] * 2);
                    fine_prec[j] *= 2;
                }
            }
            if (fine_prec[i] < cap) {
                fine[i] = refine_root(p, fine[i], std::min(cap, fine_prec[i] * 2));
                fine_prec[i] = std::min(cap, fine_prec[i] * 2);
            }
            if (fine_prec[j] < cap) {
                fine[j] = refine_root(p, fine[j], std::min(cap, fine_prec[j] * 2));
                fine_prec[j] = std::min(cap, fine_prec[j] * 2);
            }
        }
    };
    std::vector<std::size_t> order(roots.size());
    std::iota(order.begin(), order.end(), 0);
    // insertion sort keeps the number of refinements small and needs only a strict comparator
    for (std::size_t a = 1; a < order.size(); ++a) {
        std::size_t b = a;
        while (b > 0 && compare(order[b], order[b - 1])) {
            std::swap(order[b], order[b - 1]);
            --b;
        }
    }
    std::vector<RootBall> sorted;
    for (auto k : order) sorted.push_back(roots[k]);
    return sorted;
}

AlgebraicComplex::AlgebraicComplex(IntPoly min_poly, RootBall root, std::size_t index,
                                   IrreducibilityCertificate cert, mpfr_prec_t cap)
    : min_poly_(std::move(min_poly)), root_(std::move(root)), index_(index), cert_(std::move(cert)), cap_(cap) {}

AlgebraicComplex AlgebraicComplex::refined(mpfr_prec_t prec) const {
    if (prec <= precision()) return *this;
    AlgebraicComplex r = *this;
    r.root_ = refine_root(min_poly_, root_, prec);
    return r;
}

ComplexBall AlgebraicComplex::approx(mpfr_prec_t prec) const {
    if (prec <= precision()) return root_.ball;
    return refine_root(min_poly_, root_, prec).ball;
}

bool is_real(const AlgebraicComplex& a) { return a.real(); }

AlgebraicComplex select_root(const IntPoly& p0, const RootSelector& sel, const SelectOptions& opts) {
    if (p0.degree() < 1) throw Error(ErrorCode::DegenerateInput, "need a nonconstant polynomial");
    IntPoly p = primitive_part(p0);
    RatPoly pr = to_rat(p);
    if (poly_gcd(pr, pr.derivative()).degree() > 0)
        throw Error(ErrorCode::ReducibleInput, "polynomial has a repeated factor");
    auto cert = certify_irreducible(p);
    if (!cert) {
        if (!opts.assume_irreducible)
            throw Error(ErrorCode::NotCertified,
                        "irreducibility of " + to_string(p) + " not certified; pass --assume-irreducible");
        cert = IrreducibilityCertificate{};
    }
    auto roots = isolate_roots(p, opts.prec, opts.cap);
    if (const auto* idx = std::get_if<std::size_t>(&sel)) {
        if (*idx >= roots.size())
            throw Error(ErrorCode::NotFound, "root index " + std::to_string(*idx) + " out of range");
        return AlgebraicComplex(p, roots[*idx], *idx, *cert, opts.cap);
    }
    const auto& hint = std::get<RootHint>(sel);
    for (mpfr_prec_t w = opts.prec;; w *= 2) {
        ComplexBall h = ComplexBall::from_strings(hint.re, hint.im, "0", w);
        std::vector<Real> lo, hi;
        for (const auto& r : roots) {
            lo.push_back(h.distance_lower(r.ball));
            hi.push_back(h.distance_upper(r.ball));
        }
        std::size_t best = 0;
        for (std::size_t k = 1; k < roots.size(); ++k)
            if (hi[k] < hi[best]) best = k;
        bool unique = true;
        for (std::size_t k = 0; k < roots.size(); ++k)
            if (k != best && !(hi[best] < lo[k])) unique = false;
        if (unique) return AlgebraicComplex(p, roots[best], best, *cert, opts.cap);
        if (w >= opts.cap) throw Error(ErrorCode::AmbiguousHint, "two roots are equidistant from the hint");
        for (auto& r : roots) r = refine_root(p, r, w * 2);
    }
}

}  // namespace algapprox
