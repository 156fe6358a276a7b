#include "algapprox/error.hpp"
#include "algapprox/lattice.hpp"
#include "lattice_internal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace algapprox {

std::string to_string(SearchMode m) { return m == SearchMode::Enumerate ? "enumerate" : "reduce"; }

namespace lab {

bool vanishes_at(const FieldInvariants& inv, const IntPoly& P) {
    if (P.is_zero()) return true;
    if (P.degree() < inv.xi.degree()) return false;
    return rem(to_rat(P), to_rat(inv.xi.min_poly())).is_zero();
}

bool key_less(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
}

IntPoly canonical_sign(IntPoly P) {
    if (!P.is_zero() && P.coeff(P.degree()) < 0) P = P * IntPoly{-1};
    return P;
}

std::vector<std::complex<double>> double_powers(const AlgebraicComplex& xi, int n) {
    ComplexBall x = xi.approx(kDefaultPrec);
    std::complex<double> z(x.re().to_double(), x.im().to_double()), p(1, 0);
    std::vector<std::complex<double>> out;
    for (int j = 0; j <= n; ++j) {
        out.push_back(p);
        p *= z;
    }
    return out;
}

double rounding_slack(const std::vector<std::complex<double>>& pw, double H) {
    double s = 0;
    for (const auto& p : pw) s += std::abs(p);
    return 64.0 * (pw.size() + 2) * std::numeric_limits<double>::epsilon() * (H + 1) * s + 1e-300;
}

namespace {

RealBall scaled_value(const IntPoly& P, const ComplexBall& xi, double weight_exp, mpfr_prec_t prec) {
    RealBall v = eval_ball(P, xi).abs();
    if (weight_exp == 0) return v;
    // |P|^2 H^e
    Real h = Real::from(poly_height(P), prec);
    Real e = Real::from_double(weight_exp, prec);
    RealBall he = RealBall::from_bounds(pow(h, e, prec, MPFR_RNDD), pow(h, e, prec, MPFR_RNDU));
    return v * v * he;
}

}  // namespace

// -1, 0, 1 for the objective of a against b; 0 only when the values could not be separated
int compare_values(const FieldInvariants& inv, const IntPoly& a, const IntPoly& b, double weight_exp,
                   mpfr_prec_t prec) {
    bool checked_equal = false;
    for (mpfr_prec_t p = prec; p <= inv.xi.cap(); p *= 2) {
        ComplexBall x = inv.xi.approx(p);
        RealBall va = scaled_value(a, x, weight_exp, p), vb = scaled_value(b, x, weight_exp, p);
        if (va.upper() < vb.lower()) return -1;
        if (vb.upper() < va.lower()) return 1;
        // exact tie test on |P(xi)|^2 H^e = P(xi) P(conj xi) H^e when conj is a polynomial in xi
        if (!checked_equal && inv.conjugation.present()) {
            checked_equal = true;
            auto weighted = [&](const IntPoly& P) {
                FieldElem e = inv.field->elem(to_rat(P));
                Rat h(1);
                for (long k = 0; k < std::lround(weight_exp); ++k) h *= poly_height(P);
                return h * (e * apply_conjugation(inv.conjugation, e));
            };
            if (weighted(a) == weighted(b)) return 0;
        }
    }
    return 0;
}

IntPoly pick_best(const FieldInvariants& inv, const std::vector<IntPoly>& cands, double weight_exp, mpfr_prec_t prec) {
    if (cands.empty()) throw Error(ErrorCode::NotFound, "no candidate polynomial");
    IntPoly best = cands[0];
    for (std::size_t i = 1; i < cands.size(); ++i) {
        int c = compare_values(inv, cands[i], best, weight_exp, prec);
        if (c < 0 || (c == 0 && key_less(cands[i], best))) best = cands[i];
    }
    return best;
}

SearchRecord make_record(const FieldInvariants& inv, const IntPoly& P, const std::string& mode, mpfr_prec_t prec) {
    ComplexBall x = inv.xi.approx(prec);
    SearchRecord r;
    r.P = P;
    r.height = poly_height(P);
    r.value = eval_ball(P, x).abs();
    r.derivative = eval_ball(P.derivative(), x).abs();
    r.mode = mode;
    return r;
}

IntPoly from_coeffs(const std::vector<long>& c) {
    std::vector<BigInt> v(c.begin(), c.end());
    return IntPoly(std::move(v));
}

IntPoly from_vec(const IntVec& v) { return IntPoly(std::vector<BigInt>(v.begin(), v.end())); }

}  // namespace lab

using namespace lab;

namespace {

// Collects candidates whose double value may tie with the running minimum.
class Shortlist {
public:
    explicit Shortlist(double slack) : slack_(slack) {}

    void offer(double v, const std::vector<long>& c) {
        if (v > best_ + 2 * slack_) return;
        if (v < best_) best_ = v;
        items_.emplace_back(v, c);
        if (items_.size() > 4096) prune();
    }
    void offer(double v, IntPoly P) {
        if (v > best_ + 2 * slack_) return;
        if (v < best_) best_ = v;
        polys_.emplace_back(v, std::move(P));
        if (polys_.size() > 4096) prune();
    }

    std::vector<IntPoly> finish() {
        prune();
        std::vector<IntPoly> out;
        for (auto& [v, c] : items_) out.push_back(from_coeffs(c));
        for (auto& [v, P] : polys_) out.push_back(P);
        return out;
    }

private:
    void prune() {
        auto far = [&](const auto& it) { return it.first > best_ + 2 * slack_; };
        items_.erase(std::remove_if(items_.begin(), items_.end(), far), items_.end());
        polys_.erase(std::remove_if(polys_.begin(), polys_.end(), far), polys_.end());
    }

    double slack_;
    double best_ = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, std::vector<long>>> items_;
    std::vector<std::pair<double, IntPoly>> polys_;
};

// next point of [-H, H]^k; false after the last one
bool odometer(std::vector<long>& c, long lo, long hi) {
    for (auto& x : c) {
        if (x < hi) {
            ++x;
            return true;
        }
        x = lo;
    }
    return false;
}

std::uint64_t box_count(long H, int k, std::uint64_t cap) {
    double total = std::pow(2.0 * H + 1, k);
    if (total > static_cast<double>(cap)) return cap + 1;
    return static_cast<std::uint64_t>(total);
}

SearchRecord enumerate_search(const FieldInvariants& inv, int n, long H, const SearchOptions& opts) {
    if (box_count(H, n + 1, opts.budget) > opts.budget)
        throw Error(ErrorCode::BudgetExceeded, "(2H+1)^(n+1) exceeds the enumeration budget");
    auto pw = double_powers(inv.xi, n);
    Shortlist sl(rounding_slack(pw, static_cast<double>(H)));
    const int d = inv.xi.degree();
    std::vector<long> hi(n, -H);  // c_1 .. c_n
    std::vector<long> full(n + 1);
    do {
        int lead = n - 1;
        while (lead >= 0 && hi[lead] == 0) --lead;
        if (lead >= 0 && hi[lead] < 0) continue;
        std::complex<double> z(0, 0);
        for (int i = 0; i < n; ++i) z += static_cast<double>(hi[i]) * pw[i + 1];
        for (int i = 0; i < n; ++i) full[i + 1] = hi[i];
        long c0s[2];
        int m = 0;
        if (lead < 0) {
            c0s[m++] = 1;
        } else {
            double r = -z.real();
            long f = static_cast<long>(std::floor(r));
            for (long c : {f, f + 1}) {
                c = std::clamp(c, -H, H);
                if (m == 0 || c0s[m - 1] != c) c0s[m++] = c;
            }
        }
        for (int k = 0; k < m; ++k) {
            full[0] = c0s[k];
            double v = std::abs(z + static_cast<double>(c0s[k]));
            if (n + 1 > d - 1 && v < 1e-6) {
                IntPoly P = from_coeffs(full);
                if (vanishes_at(inv, P)) continue;
            }
            sl.offer(v, full);
        }
    } while (odometer(hi, -H, H));
    IntPoly best = pick_best(inv, sl.finish(), 0, opts.prec);
    SearchRecord r = make_record(inv, best, "enumerate", opts.prec);
    r.meta["H"] = std::to_string(H);
    r.meta["candidates"] = std::to_string(box_count(H, n + 1, opts.budget));
    return r;
}

SearchRecord reduce_search(const FieldInvariants& inv, int n, const Real& H, const SearchOptions& opts) {
    std::vector<Rat> ws;
    if (opts.w)
        ws.push_back(*opts.w);
    else
        for (int k = 0; k <= 2 * n; ++k) ws.push_back(make_rat(k, 2));
    BigInt hcap;
    {
        Real f(H.prec());
        mpfr_floor(f.get(), H.get());
        mpfr_get_z(hcap.get_mpz_t(), f.get(), MPFR_RNDN);
    }
    auto pw = double_powers(inv.xi, n);
    Shortlist sl(rounding_slack(pw, H.to_double()));
    std::uint64_t tried = 0;
    for (const Rat& w : ws)
        for (int s = 0; s < 3; ++s) {
            Real Hs = div(H, Real::from_int(1L << s, H.prec()), H.prec(), MPFR_RNDN);
            if (Hs < Real::from_int(1, H.prec())) break;
            ReducedBasis rb = reduced_basis(body_matrix(ConvexBodySpec::make(inv.xi, n, w, Hs, opts.prec)));
            std::vector<long> a(n + 1, -opts.combo);
            do {
                IntVec x(n + 1, BigInt(0));
                for (int i = 0; i <= n; ++i)
                    if (a[i])
                        for (int j = 0; j <= n; ++j) x[j] += a[i] * rb.vectors[i][j];
                IntPoly P = from_vec(x);
                if (P.is_zero() || P.coeff(P.degree()) < 0) continue;
                if (poly_height(P) > hcap) continue;
                ++tried;
                std::complex<double> z(0, 0);
                for (int j = 0; j <= n; ++j) z += x[j].get_d() * pw[j];
                double v = std::abs(z);
                if (v < 1e-6 && vanishes_at(inv, P)) continue;
                sl.offer(v, std::move(P));
            } while (odometer(a, -opts.combo, opts.combo));
        }
    auto cands = sl.finish();
    if (cands.empty()) throw Error(ErrorCode::NotFound, "no reduced combination within the height bound");
    IntPoly best = pick_best(inv, cands, 0, opts.prec);
    SearchRecord r = make_record(inv, best, "reduce", opts.prec);
    r.meta["H"] = H.to_string(12);
    std::string wl;
    for (const Rat& w : ws) wl += (wl.empty() ? "" : ",") + w.get_str();
    r.meta["body_w"] = wl;
    r.meta["candidates"] = std::to_string(tried);
    return r;
}

}  // namespace

SearchRecord best_poly_search(const FieldInvariants& inv, int n, const Real& H, SearchMode mode,
                              const SearchOptions& opts) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be positive");
    if (H < Real::from_int(1, H.prec())) throw Error(ErrorCode::InvalidInput, "H must be at least 1");
    if (mode == SearchMode::Enumerate) {
        if (H > Real::from_int(1L << 40, H.prec())) throw Error(ErrorCode::BudgetExceeded, "H too large to enumerate");
        Real f(H.prec());
        mpfr_floor(f.get(), H.get());
        return enumerate_search(inv, n, mpfr_get_si(f.get(), MPFR_RNDN), opts);
    }
    return reduce_search(inv, n, H, opts);
}

RealBall liouville_check(const FieldInvariants& inv, const IntPoly& P, mpfr_prec_t prec) {
    if (vanishes_at(inv, P)) throw Error(ErrorCode::ZeroValue, "P(xi) = 0");
    RealBall v = eval_ball(P, inv.xi.approx(prec)).abs();
    BigInt h = poly_height(P);
    Rat w(1);
    for (int k = 0; k < inv.xi.degree() - 2; ++k) w *= h;
    return v * v * RealBall::exact(w, prec);
}

LiouvilleScan liouville_scan(const FieldInvariants& inv, int n, long H, long min_height, const SearchOptions& opts) {
    if (n < 1 || H < 1) throw Error(ErrorCode::InvalidInput, "n and H must be positive");
    if (box_count(H, n + 1, opts.budget) > opts.budget)
        throw Error(ErrorCode::BudgetExceeded, "(2H+1)^(n+1) exceeds the enumeration budget");
    const int d = inv.xi.degree();
    const int e = std::max(d - 2, 0);
    auto pw = double_powers(inv.xi, n);
    const double err = rounding_slack(pw, static_cast<double>(H));
    double best_upper = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, std::vector<long>>> keep;
    std::vector<long> c(n + 1, -H);
    LiouvilleScan out;
    do {
        int lead = n;
        while (lead >= 0 && c[lead] == 0) --lead;
        if (lead < 0 || c[lead] < 0) continue;
        long h = 0;
        for (long x : c) h = std::max(h, std::labs(x));
        if (h < min_height) continue;
        ++out.count;
        std::complex<double> z(0, 0);
        for (int i = 0; i <= n; ++i) z += static_cast<double>(c[i]) * pw[i];
        const double v = std::abs(z), w = std::pow(static_cast<double>(h), e);
        const double lo = std::pow(std::max(0.0, v - err), 2) * w * (1 - 1e-12);
        const double up = std::pow(v + err, 2) * w * (1 + 1e-12);
        if (lo > best_upper) continue;
        if (v - err <= 0 && vanishes_at(inv, from_coeffs(c))) continue;
        best_upper = std::min(best_upper, up);
        keep.emplace_back(lo, c);
        if (keep.size() > 4096)
            keep.erase(std::remove_if(keep.begin(), keep.end(), [&](const auto& k) { return k.first > best_upper; }),
                       keep.end());
    } while (odometer(c, -H, H));
    std::vector<IntPoly> cands;
    for (auto& [lo, cc] : keep)
        if (lo <= best_upper) cands.push_back(from_coeffs(cc));
    out.argmin = pick_best(inv, cands, e, opts.prec);
    out.minimum = liouville_check(inv, out.argmin, opts.prec);
    return out;
}

EmpiricalExponent empirical_exponent(const FieldInvariants& inv, int n, const std::vector<GridPoint>& grid,
                                     const SearchOptions& opts) {
    EmpiricalExponent ee;
    ee.grid = grid;
    std::vector<double> x, y;
    for (const auto& g : grid) {
        SearchRecord r = best_poly_search(inv, n, g.H, g.mode, opts);
        x.push_back(std::log(g.H.to_double()));
        y.push_back(-std::log(r.value.mid().to_double()));
        ee.records.push_back(std::move(r));
    }
    ee.fit = fit_line(x, y);
    return ee;
}

RecordConstants record_constant_tracker(const FieldInvariants& inv, int n, const std::vector<GridPoint>& grid,
                                        const SearchOptions& opts, const TnSearchOptions& tn_opts) {
    ExponentVerdict v = classify_w(inv, n, tn_opts);
    if (v.status == VerdictStatus::Gap) throw Error(ErrorCode::GapCase, "w_n is not determined");
    RecordConstants rc;
    rc.w = v.value.value();
    const double w = mpq_get_d(rc.w.get_mpq_t());
    std::vector<double> x, y;
    double sup = 0;
    for (const auto& g : grid) {
        SearchRecord r = best_poly_search(inv, n, g.H, g.mode, opts);
        const double prod = std::exp(w * std::log(r.height.get_d())) * r.value.mid().to_double();
        sup = std::max(sup, prod);
        rc.grid.push_back(g.H);
        rc.products.push_back(prod);
        rc.running_sup.push_back(sup);
        x.push_back(std::log(g.H.to_double()));
        y.push_back(std::log(prod));
        rc.records.push_back(std::move(r));
    }
    if (x.size() >= 2) rc.fit = fit_line(x, y);
    return rc;
}

}  // namespace algapprox
