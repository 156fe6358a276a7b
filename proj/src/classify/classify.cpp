#include "algapprox/classify.hpp"
#include "algapprox/error.hpp"

namespace algapprox {

std::string to_string(ExponentKind k) { return k == ExponentKind::AlgebraicApprox ? "w" : "w_tilde"; }

std::string to_string(VerdictStatus s) { return s == VerdictStatus::Determined ? "determined" : "gap"; }

namespace {

class Trail {
public:
    explicit Trail(ExponentVerdict& v) : v_(v) {}

    // records the rule and returns whether it fired
    bool check(const std::string& rule, const std::string& cond, bool met) {
        v_.provenance.push_back({rule, cond, met});
        return met;
    }

private:
    ExponentVerdict& v_;
};

ExponentVerdict start(const FieldInvariants& inv, int n, ExponentKind kind) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be positive");
    ExponentVerdict v;
    v.n = n;
    v.d = inv.xi.degree();
    v.kind = kind;
    return v;
}

void set(ExponentVerdict& v, const Rat& r) {
    v.value = ExponentValue{{r}};
    v.status = VerdictStatus::Determined;
}

}  // namespace

ExponentVerdict classify_w(const FieldInvariants& inv, int n, const TnSearchOptions& opts) {
    ExponentVerdict v = start(inv, n, ExponentKind::AlgebraicApprox);
    const int d = v.d;
    Trail t(v);
    if (t.check("real_number", "xi is real: min{d-1, n}", inv.real)) {
        set(v, Rat(std::min(d - 1, n)));
        return v;
    }
    if (t.check("degree_at_most_n_plus_1", "d <= n+1: (d-2)/2", d <= n + 1)) {
        set(v, make_rat(d - 2, 2));
        return v;
    }
    if (t.check("odd_n", "d >= n+2 and n odd: (n-1)/2", n % 2 == 1)) {
        set(v, make_rat(n - 1, 2));
        return v;
    }
    const bool two = inv.conjugation.present();
    const bool dep = inv.dependence.dependent;
    if (t.check("trace_norm_dependent", "1, xi + conj(xi), xi conj(xi) dependent over Q: n/2", dep)) {
        set(v, make_rat(n, 2));
        return v;
    }
    if (t.check("degree_n_plus_2", "d = n+2 and real subfield of index 2: n/2", d == n + 2 && two)) {
        set(v, make_rat(n, 2));
        return v;
    }
    if (t.check("index_at_least_three", "real subfield of index >= 3: (n-1)/2", !two)) {
        set(v, make_rat(n - 1, 2));
        return v;
    }
    if (t.check("large_degree", "d > 2n-2: (n-1)/2", d > 2 * n - 2)) {
        set(v, make_rat(n - 1, 2));
        return v;
    }
    t.check("tn_formula", "max{(n-1)/2, t_n - 1}", true);
    TnVerdict tn = tn_from_theorems(inv, n, opts);
    for (const auto& [rule, cond] : tn.provenance) v.notes.push_back("t_n " + rule + ": " + cond);
    UvValues uv = u_v_values(n, tn);
    v.value = uv.u;
    v.status = uv.u.determined() ? VerdictStatus::Determined : VerdictStatus::Gap;
    if (v.status == VerdictStatus::Gap)
        v.notes.push_back("t_n in [" + std::to_string(tn.lower_bound) + ", " + std::to_string(tn.upper_bound) +
                          "]; the two candidates are (n-1)/2 and n/2");
    return v;
}

ExponentVerdict classify_wtilde(const FieldInvariants& inv, int n, const TnSearchOptions& opts) {
    ExponentVerdict v = start(inv, n, ExponentKind::IntegerApprox);
    const int d = v.d;
    Trail t(v);
    if (t.check("real_number", "xi is real: min{d-1, n}", inv.real)) {
        set(v, Rat(std::min(d - 1, n)));
        return v;
    }
    if (t.check("degree_at_most_n_plus_1", "d <= n+1: (d-2)/2", d <= n + 1)) {
        set(v, make_rat(d - 2, 2));
        return v;
    }
    if (t.check("odd_n", "d >= n+2 and n odd: (n-1)/2", n % 2 == 1)) {
        set(v, make_rat(n - 1, 2));
        return v;
    }
    t.check("dual_of_w", "n even: (n-2)/2 iff w_n = n/2, else (n-1)/2", true);
    ExponentVerdict w = classify_w(inv, n, opts);
    for (const auto& s : w.provenance)
        if (s.met) v.notes.push_back("w_n by " + s.rule + ": " + s.condition);
    for (const auto& s : w.notes) v.notes.push_back(s);
    if (w.status == VerdictStatus::Gap) {
        v.value = ExponentValue{{make_rat(n - 2, 2), make_rat(n - 1, 2)}};
        v.status = VerdictStatus::Gap;
    } else {
        set(v, w.value.value() == make_rat(n, 2) ? make_rat(n - 2, 2) : make_rat(n - 1, 2));
    }
    return v;
}

Rat liouville_exponent(const AlgebraicComplex& xi, int n) {
    const int d = xi.degree();
    if (d > n + 1) throw Error(ErrorCode::OutOfRegime, "the Liouville bound caps w_n only for d <= n+1");
    return make_rat(d - 2, 2);
}

}  // namespace algapprox
