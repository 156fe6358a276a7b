#include "algapprox/error.hpp"
#include "algapprox/lattice.hpp"
#include "lattice_internal.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace algapprox {

using namespace lab;

bool eisenstein_pattern(const IntPoly& P) {
    const int n = P.degree();
    if (n < 1) return false;
    if (mpz_even_p(P.coeff(n).get_mpz_t())) return false;
    for (int i = 0; i < n; ++i)
        if (mpz_odd_p(P.coeff(i).get_mpz_t())) return false;
    return !mpz_divisible_ui_p(P.coeff(0).get_mpz_t(), 4);
}

bool monic_eisenstein(const IntPoly& P, int degree) {
    return P.degree() == degree && P.coeff(degree) == 1 && eisenstein_pattern(P);
}

namespace {

struct Scored {
    IntPoly P;
    double value = std::numeric_limits<double>::infinity();
    double deriv = 0;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

bool next_combo(std::vector<long>& a, long r) {
    for (auto& x : a) {
        if (x < r) {
            ++x;
            return true;
        }
        x = -r;
    }
    return false;
}

// keep the smallest |P(xi)| among those meeting the derivative target, else the smallest overall
struct Chooser {
    double dtarget;
    Scored with, any;

    void offer(const IntPoly& P, const std::vector<std::complex<double>>& pw) {
        std::complex<double> v(0, 0), dv(0, 0);
        for (int j = 0; j <= P.degree(); ++j) {
            v += P.coeff(j).get_d() * pw[j];
            if (j > 0) dv += static_cast<double>(j) * P.coeff(j).get_d() * pw[j - 1];
        }
        Scored s{P, std::abs(v), std::abs(dv)};
        auto better = [](const Scored& a, const Scored& b) {
            return a.value < b.value || (a.value == b.value && key_less(a.P, b.P));
        };
        if (s.deriv >= dtarget && better(s, with)) with = s;
        if (better(s, any)) any = s;
    }
    const Scored& best() const { return with.P.is_zero() ? any : with; }
};

Rat exponent_u(const FieldInvariants& inv, int n, const TnSearchOptions& tn_opts, TnVerdict& tn, bool want_u) {
    if (inv.real) throw Error(ErrorCode::DegenerateInput, "xi is real");
    if (inv.xi.degree() <= n) throw Error(ErrorCode::OutOfRegime, "needs deg xi > n");
    tn = tn_from_theorems(inv, n, tn_opts);
    UvValues uv = u_v_values(n, tn);
    const ExponentValue& e = want_u ? uv.u : uv.v;
    if (!e.determined()) throw Error(ErrorCode::GapCase, "t_n is not determined");
    return e.value();
}

double hpow(const Real& H, double e) { return std::exp(e * std::log(H.to_double())); }

}  // namespace

SearchRecord eisenstein_sieve_search(const FieldInvariants& inv, int n, const Real& H, double eps, mpfr_prec_t prec,
                                     const TnSearchOptions& tn_opts) {
    TnVerdict tn;
    const Rat u = exponent_u(inv, n, tn_opts, tn, true);
    const double ud = mpq_get_d(u.get_mpq_t());
    const double ptarget = hpow(H, -ud + eps), dtarget = n >= 2 ? hpow(H, 1 - eps) : 0;
    ReducedBasis rb = reduced_basis(body_matrix(ConvexBodySpec::make(inv.xi, n, u, H, prec)));
    auto pw = double_powers(inv.xi, n);

    const bool split = tn.value && 2 * *tn.value == n + 2;
    std::string branch;
    Scored chosen;
    if (!split) {
        // combinations obeying the 2-adic pattern
        branch = "eisenstein_pattern";
        Chooser pat{dtarget, {}, {}};
        std::vector<long> a(n + 1, -2);
        do {
            IntVec x(n + 1, BigInt(0));
            for (int i = 0; i <= n; ++i)
                if (a[i])
                    for (int j = 0; j <= n; ++j) x[j] += a[i] * rb.vectors[i][j];
            IntPoly P = canonical_sign(from_vec(x));
            if (P.degree() != n || !eisenstein_pattern(P)) continue;
            pat.offer(P, pw);
        } while (next_combo(a, 2));
        chosen = pat.best();
    } else {
        // t_n = (n+2)/2: combinations inside U_0 without the congruences,
        // certified irreducible of degree n
        branch = "u0_combination";
        if (!tn.witness) throw Error(ErrorCode::NotFound, "no U_0 witness for t_n = (n+2)/2");
        FieldElem mu = inv.field->elem(to_rat(*tn.witness)).inverse();
        IsotropicSpace U0 = dim_V(inv, mu, n);
        std::vector<IntVec> inside;
        auto mem = u0_membership(rb.vectors, U0);
        for (std::size_t i = 0; i < rb.vectors.size(); ++i)
            if (mem[i]) inside.push_back(rb.vectors[i]);
        if (inside.size() < U0.dim()) inside = U0.integer_vectors();
        Chooser uc{dtarget, {}, {}};
        std::vector<long> b(inside.size(), -2);
        do {
            IntVec x(n + 1, BigInt(0));
            for (std::size_t i = 0; i < inside.size(); ++i)
                if (b[i])
                    for (int j = 0; j <= n; ++j) x[j] += b[i] * inside[i][j];
            IntPoly P = from_vec(x);
            if (P.degree() != n) continue;
            P = canonical_sign(primitive_part(P));
            try {
                if (!certify_irreducible(P)) continue;
            } catch (const Error&) {
                continue;
            }
            uc.offer(P, pw);
        } while (next_combo(b, 2));
        chosen = uc.best();
    }
    if (chosen.P.is_zero()) throw Error(ErrorCode::NotFound, "no admissible combination");

    SearchRecord r = make_record(inv, chosen.P, "eisenstein", prec);
    r.meta["branch"] = branch;
    r.meta["u"] = u.get_str();
    r.meta["H"] = H.to_string(12);
    r.meta["target_value"] = fmt(ptarget);
    r.meta["target_derivative"] = fmt(dtarget);
    r.meta["value_met"] = r.value.upper().to_double() <= ptarget ? "true" : "false";
    r.meta["derivative_met"] = r.derivative.lower().to_double() >= dtarget ? "true" : "false";
    r.meta["height_met"] = r.height.get_d() <= 2 * (n + 1) * H.to_double() ? "true" : "false";
    return r;
}

SearchRecord monic_construct(const FieldInvariants& inv, int n, const Real& H, double eps, mpfr_prec_t prec,
                             const TnSearchOptions& tn_opts) {
    TnVerdict tn;
    const Rat v = exponent_u(inv, n, tn_opts, tn, false);
    const double vd = mpq_get_d(v.get_mpq_t());
    ReducedBasis rb = reduced_basis(body_matrix(ConvexBodySpec::make(inv.xi, n, v, H, prec)));

    // Q = X^(n+1) + y_0 + y_1 X + y_2 X^2 with prescribed Re Q(xi), Im Q(xi), Im Q'(xi)
    ComplexBall x = inv.xi.approx(prec);
    std::vector<ComplexBall> p;
    ComplexBall acc = ComplexBall::exact(Rat(1), Rat(0), prec);
    for (int j = 0; j <= n + 1; ++j) {
        p.push_back(acc);
        acc = acc * x;
    }
    auto re = [&](int j) { return p[j].re().to_rat(); };
    auto im = [&](int j) { return p[j].im().to_rat(); };
    const Rat c = Real::from_double(hpow(H, -vd + 2 * eps), 64).to_rat();
    const Rat cd = Real::from_double(hpow(H, 1 + 2 * eps), 64).to_rat();
    if (im(1) == 0) throw Error(ErrorCode::SystemSingular, "Im xi = 0");
    RatVec y(n + 1, Rat(0));
    if (n >= 2) {
        Rat y2 = (cd - Rat(n + 1) * im(n)) / (2 * im(1));
        Rat y1 = (c - im(n + 1) - y2 * im(2)) / im(1);
        Rat y0 = c - re(n + 1) - y1 * re(1) - y2 * re(2);
        y[0] = y0;
        y[1] = y1;
        y[2] = y2;
    } else {
        Rat y1 = (c - im(2)) / im(1);
        Rat y0 = c - re(2) - y1 * re(1);
        y[0] = y0;
        y[1] = y1;
    }

    // theta = B^-1 y / 2 over the reduced basis
    std::vector<RatVec> cols;
    for (const auto& b : rb.vectors) cols.push_back(RatVec(b.begin(), b.end()));
    RatVec half(n + 1);
    for (int j = 0; j <= n; ++j) half[j] = y[j] / 2;
    RatVec theta = solve(RatMatrix::from_cols(cols), half);
    std::vector<BigInt> fl(n + 1);
    for (int i = 0; i <= n; ++i) {
        mpz_fdiv_q(fl[i].get_mpz_t(), theta[i].get_num_mpz_t(), theta[i].get_den_mpz_t());
    }

    auto pw = double_powers(inv.xi, n + 1);
    IntPoly best;
    double bestv = std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
        BigInt par(0);
        std::vector<BigInt> t(n + 1);
        for (int i = 0; i <= n; ++i) {
            t[i] = fl[i] + ((mask >> i) & 1u);
            par += t[i] * rb.vectors[i][0];
        }
        if (mpz_even_p(par.get_mpz_t())) continue;
        std::vector<BigInt> cf(n + 2, BigInt(0));
        cf[n + 1] = 1;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) cf[j] += 2 * t[i] * rb.vectors[i][j];
        IntPoly P(cf);
        std::complex<double> z(0, 0);
        for (int j = 0; j <= n + 1; ++j) z += P.coeff(j).get_d() * pw[j];
        if (std::abs(z) < bestv) {
            bestv = std::abs(z);
            best = P;
        }
    }
    if (best.is_zero()) throw Error(ErrorCode::NotFound, "no rounding with odd constant parity");

    SearchRecord r = make_record(inv, best, "monic", prec);
    const double tv = hpow(H, -vd + 3 * eps), th = hpow(H, 1 + 3 * eps), td = hpow(H, 1 + eps);
    r.meta["v"] = v.get_str();
    r.meta["H"] = H.to_string(12);
    r.meta["target_value"] = fmt(tv);
    r.meta["target_height"] = fmt(th);
    r.meta["target_derivative"] = fmt(td);
    r.meta["value_met"] = r.value.upper().to_double() <= tv ? "true" : "false";
    r.meta["height_met"] = r.height.get_d() <= th ? "true" : "false";
    r.meta["derivative_met"] = r.derivative.lower().to_double() >= td ? "true" : "false";
    r.meta["eisenstein"] = monic_eisenstein(best, n + 1) ? "true" : "false";
    return r;
}

Approximant approximant_extract(const FieldInvariants& inv, const IntPoly& P, mpfr_prec_t prec) {
    if (P.degree() < 1 || vanishes_at(inv, P.derivative())) throw Error(ErrorCode::DerivativeZero, "P'(xi) = 0");
    if (vanishes_at(inv, P)) throw Error(ErrorCode::ZeroValue, "P(xi) = 0");
    IntPoly sq = canonical_sign(primitive_part(squarefree_part(to_rat(P))));
    auto roots = isolate_roots(sq, prec, inv.xi.cap());
    for (mpfr_prec_t p = prec;; p *= 2) {
        ComplexBall x = inv.xi.approx(p);
        std::size_t arg = 0;
        for (std::size_t i = 1; i < roots.size(); ++i)
            if (x.distance_upper(roots[i].ball) < x.distance_upper(roots[arg].ball)) arg = i;
        bool separated = true;
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (i != arg && !(x.distance_upper(roots[arg].ball) < x.distance_lower(roots[i].ball))) separated = false;
        if (separated) {
            Approximant a;
            a.alpha = roots[arg].ball;
            a.poly = sq;
            a.distance = RealBall::from_bounds(x.distance_lower(a.alpha), x.distance_upper(a.alpha));
            RealBall num = eval_ball(P, x).abs(), den = eval_ball(P.derivative(), x).abs();
            a.ratio = RealBall::from_bounds(div(num.lower(), den.upper(), p, MPFR_RNDD),
                                            div(num.upper(), den.lower(), p, MPFR_RNDU));
            a.height_proxy = poly_height(P);
            return a;
        }
        if (2 * p > inv.xi.cap()) throw Error(ErrorCode::PrecisionError, "nearest root not separated at the cap");
        for (auto& r : roots) r = refine_root(sq, r, 2 * p);
    }
}

}  // namespace algapprox
