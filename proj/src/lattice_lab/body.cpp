#include "algapprox/error.hpp"
#include "algapprox/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace algapprox {

namespace {

// H^w as a ball, for H >= 1
RealBall power_ball(const Real& H, const Rat& w, mpfr_prec_t prec) {
    Real wl = Real::from(w, prec, MPFR_RNDD), wu = Real::from(w, prec, MPFR_RNDU);
    return RealBall::from_bounds(pow(H, wl, prec, MPFR_RNDD), pow(H, wu, prec, MPFR_RNDU));
}

RealBall abs_ball(const RealBall& v) {
    Real lo = v.lower(), hi = v.upper();
    if (lo.sign() >= 0) return v;
    if (hi.sign() <= 0) return RealBall::from_bounds(neg(hi), neg(lo));
    return RealBall::from_bounds(Real(kRadPrec), max(neg(lo), hi));
}

double mid_d(const RealBall& b) { return b.mid().to_double(); }

void normalize_sign(IntVec& v) {
    for (std::size_t i = v.size(); i-- > 0;)
        if (v[i] != 0) {
            if (v[i] < 0)
                for (auto& x : v) x = -x;
            return;
        }
}

}  // namespace

ConvexBodySpec ConvexBodySpec::make(const AlgebraicComplex& xi, int n, const Rat& w, const Real& H,
                                    mpfr_prec_t prec) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be positive");
    if (H < Real::from_int(1, prec)) throw Error(ErrorCode::InvalidInput, "H must be at least 1");
    ConvexBodySpec s;
    s.n = n;
    s.w = w;
    s.H = Real(prec);
    mpfr_set(s.H.get(), H.get(), MPFR_RNDN);
    ComplexBall x = xi.approx(prec).at_prec(prec);
    ComplexBall p = ComplexBall::exact(Rat(1), Rat(0), prec);
    for (int j = 0; j <= n; ++j) {
        s.powers.push_back(p);
        p = p * x;
    }
    return s;
}

BodyMatrix body_matrix(const ConvexBodySpec& spec) {
    const int n = spec.n;
    const mpfr_prec_t prec = spec.H.prec();
    RealBall hw = power_ball(spec.H, spec.w, prec);
    Real one = Real::from_int(1, prec);
    RealBall inv_h = RealBall::from_bounds(div(one, spec.H, prec, MPFR_RNDD), div(one, spec.H, prec, MPFR_RNDU));
    BodyMatrix m(n + 3, std::vector<RealBall>(n + 1, RealBall::exact(Rat(0), prec)));
    for (int j = 0; j <= n; ++j) {
        m[0][j] = hw * spec.powers[j].real_part();
        m[1][j] = hw * spec.powers[j].imag_part();
        m[2 + j][j] = inv_h;
    }
    return m;
}

RealBall body_norm(const BodyMatrix& m, const IntVec& x) {
    const mpfr_prec_t prec = m[0][0].prec();
    Real lo(kRadPrec), hi(kRadPrec);
    for (const auto& row : m) {
        RealBall acc = RealBall::exact(Rat(0), prec);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (x[j] == 0) continue;
            acc = acc + row[j] * RealBall::exact(Rat(x[j]), prec);
        }
        RealBall a = abs_ball(acc);
        lo = max(lo, a.lower());
        hi = max(hi, a.upper());
    }
    return RealBall::from_bounds(lo, hi);
}

ReducedBasis reduced_basis(const BodyMatrix& m) {
    const std::size_t rows = m.size(), cols = m[0].size();
    // scale so that the smallest nonzero entry carries about 60 bits
    long emin = std::numeric_limits<long>::max();
    for (const auto& r : m)
        for (const auto& e : r)
            if (!e.mid().is_zero()) emin = std::min<long>(emin, mpfr_get_exp(e.mid().get()));
    if (emin == std::numeric_limits<long>::max()) throw Error(ErrorCode::DegenerateInput, "zero body matrix");
    const long shift = 60 - emin;
    std::vector<IntVec> gens(cols, IntVec(rows));
    Real t(m[0][0].prec() + 64);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t r = 0; r < rows; ++r) {
            mpfr_mul_2si(t.get(), m[r][j].mid().get(), shift, MPFR_RNDN);
            mpfr_get_z(gens[j][r].get_mpz_t(), t.get(), MPFR_RNDN);
        }
    LllResult red = lll_reduce(gens);

    ReducedBasis out;
    out.vectors = red.transform;
    std::vector<double> nrm;
    for (auto& v : out.vectors) {
        normalize_sign(v);
        nrm.push_back(mid_d(body_norm(m, v)));
    }
    // pairwise improvement in the sup norm; b_i -> b_i +- b_j keeps a basis
    for (int sweep = 0; sweep < 16; ++sweep) {
        bool changed = false;
        for (std::size_t i = 0; i < cols; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                if (i == j) continue;
                for (int sgn : {1, -1}) {
                    IntVec c = out.vectors[i];
                    for (std::size_t k = 0; k < cols; ++k) c[k] += sgn * out.vectors[j][k];
                    double cn = mid_d(body_norm(m, c));
                    if (cn < nrm[i] * (1 - 1e-9)) {
                        normalize_sign(c);
                        out.vectors[i] = std::move(c);
                        nrm[i] = cn;
                        changed = true;
                    }
                }
            }
        if (!changed) break;
    }
    std::vector<std::size_t> order(cols);
    for (std::size_t i = 0; i < cols; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nrm[a] < nrm[b]; });
    ReducedBasis sorted;
    for (std::size_t i : order) {
        sorted.vectors.push_back(out.vectors[i]);
        sorted.norms.push_back(body_norm(m, out.vectors[i]));
    }
    return sorted;
}

VolumeBounds body_volume(const ConvexBodySpec& spec) {
    const int n = spec.n;
    const double H = spec.H.to_double();
    const double t = std::pow(H, -mpq_get_d(spec.w.get_mpq_t()));
    std::vector<double> a(n + 1), b(n + 1);
    for (int j = 0; j <= n; ++j) {
        a[j] = spec.powers[j].re().to_double();
        b[j] = spec.powers[j].im().to_double();
    }
    VolumeBounds vb;
    vb.upper = std::numeric_limits<double>::infinity();
    double best_det = 0;
    int bp = -1, bq = -1;
    for (int p = 0; p <= n; ++p)
        for (int q = p + 1; q <= n; ++q) {
            double D = std::fabs(a[p] * b[q] - a[q] * b[p]);
            if (D <= 0) continue;
            vb.upper = std::min(vb.upper, 4 * t * t / D * std::pow(2 * H, n - 1));
            if (D > best_det) {
                best_det = D;
                bp = p;
                bq = q;
            }
        }
    if (bp < 0) return vb;
    // x_p, x_q solved from (s1, s2) - L_others(x_o): |x_p|, |x_q| <= N (t + r H S)
    const double det = a[bp] * b[bq] - a[bq] * b[bp];
    const double N = std::max(std::fabs(b[bq]) + std::fabs(a[bq]), std::fabs(b[bp]) + std::fabs(a[bp])) / std::fabs(det);
    double S = 0, Sa = 0, Sb = 0;
    for (int o = 0; o <= n; ++o)
        if (o != bp && o != bq) {
            Sa += std::fabs(a[o]);
            Sb += std::fabs(b[o]);
        }
    S = std::max(Sa, Sb);
    double r = 1;
    if (S > 0) r = std::min(1.0, (H / N - t) / (H * S));
    if (H / N - t <= 0 || r <= 0) return vb;
    vb.lower = 4 * t * t / best_det * std::pow(2 * r * H, n - 1);
    return vb;
}

std::optional<std::vector<Rat>> predicted_minima_slopes(int n, const Rat& w, const TnVerdict& tn) {
    std::vector<Rat> out;
    if (tn.value && 2 * *tn.value == n + 2) {
        Rat lo = (2 * w - n) / Rat(n + 2), hi = (2 * w - n + 2) / Rat(n);
        lo.canonicalize();
        hi.canonicalize();
        for (int i = 0; i <= n; ++i) out.push_back(i < (n + 2) / 2 ? lo : hi);
        return out;
    }
    if (2 * tn.upper_bound <= n + 1) {
        Rat s = (2 * w - n + 1) / Rat(n + 1);
        s.canonicalize();
        out.assign(n + 1, s);
        return out;
    }
    return std::nullopt;
}

std::vector<bool> u0_membership(const std::vector<IntVec>& vectors, const IsotropicSpace& space) {
    if (space.n % 2 || static_cast<int>(space.dim()) != (space.n + 2) / 2)
        throw Error(ErrorCode::WrongDimension, "U_0 membership needs dim = (n+2)/2");
    std::vector<RatVec> rows;
    for (const auto& b : space.basis) {
        RatVec v(space.n + 1, Rat(0));
        for (std::size_t j = 0; j < b.size(); ++j) v[j] = b[j];
        rows.push_back(std::move(v));
    }
    std::vector<bool> out;
    for (const auto& x : vectors) {
        if (static_cast<int>(x.size()) != space.n + 1) throw Error(ErrorCode::InvalidInput, "vector length");
        RatVec v(x.begin(), x.end());
        out.push_back(in_span(rows, v));
    }
    return out;
}

std::vector<Real> log_grid(double lo, double hi, double step, mpfr_prec_t prec) {
    if (step <= 0 || hi < lo) throw Error(ErrorCode::InvalidInput, "bad grid");
    std::vector<Real> g;
    Real ten = Real::from_int(10, prec);
    for (int k = 0;; ++k) {
        double e = lo + k * step;
        if (e > hi + 1e-9) break;
        g.push_back(pow(ten, Real::from_double(e, prec), prec, MPFR_RNDN));
    }
    return g;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::InvalidInput, "fit needs two points");
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw Error(ErrorCode::InvalidInput, "fit needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) f.band = std::max(f.band, std::fabs(y[i] - f.slope * x[i] - f.intercept));
    return f;
}

MinimaProfile minima_profile(const FieldInvariants& inv, int n, const Rat& w, const std::vector<Real>& grid,
                             mpfr_prec_t prec, const TnSearchOptions& opts) {
    if (grid.size() < 4) throw Error(ErrorCode::InvalidInput, "minima profile needs at least 4 grid points");
    MinimaProfile mp;
    mp.n = n;
    mp.w = w;
    for (const auto& H : grid) {
        ConvexBodySpec spec = ConvexBodySpec::make(inv.xi, n, w, H, prec);
        ReducedBasis rb = reduced_basis(body_matrix(spec));
        MinimaRow row{H, rb.norms, rb.vectors};
        // enforce the nondecreasing order on the midpoints (ties from the stable sort)
        mp.rows.push_back(std::move(row));
    }
    std::vector<double> x;
    for (const auto& H : grid) x.push_back(std::log(H.to_double()));
    for (int i = 0; i <= n; ++i) {
        std::vector<double> y;
        for (const auto& r : mp.rows) y.push_back(std::log(mid_d(r.lambda[i])));
        LineFit f = fit_line(x, y);
        mp.slopes.push_back(f.slope);
        mp.residuals.push_back(f.band);
    }
    if (!inv.real && inv.xi.degree() > n) {
        TnVerdict tn = tn_from_theorems(inv, n, opts);
        mp.predicted = predicted_minima_slopes(n, w, tn);
        if (mp.predicted)
            mp.prediction_rule = tn.value && 2 * *tn.value == n + 2
                                     ? "t_n = (n+2)/2: (2w-n)/(n+2) for the first (n+2)/2, (2w-n+2)/n after"
                                     : "t_n <= (n+1)/2: all (2w-n+1)/(n+1)";
        else
            mp.prediction_rule = "t_n undetermined: no prediction";
    } else {
        mp.prediction_rule = "deg xi <= n: no prediction";
    }
    return mp;
}

}  // namespace algapprox
