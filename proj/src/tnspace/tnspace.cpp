#include "algapprox/tnspace.hpp"
#include "algapprox/error.hpp"

namespace algapprox {

namespace {

void require_index_two(const FieldInvariants& inv) {
    if (inv.real) throw Error(ErrorCode::DegenerateInput, "xi is real");
    if (!inv.conjugation.present())
        throw Error(ErrorCode::IndexNotTwo, "conj(xi) is not in Q(xi); V_n(mu, xi) is not computed");
}

// rows are coefficient vectors (index = degree); returns the canonical basis
std::vector<RatPoly> canonical_basis(const std::vector<RatVec>& vecs, int n) {
    if (vecs.empty()) return {};
    RatMatrix m(vecs.size(), n + 1);
    for (std::size_t r = 0; r < vecs.size(); ++r)
        for (int j = 0; j <= n; ++j) m(r, n - j) = vecs[r][j];
    const auto piv = rref(m);
    std::vector<RatPoly> out;
    for (std::size_t r = piv.size(); r-- > 0;) {
        std::vector<Rat> c(n + 1);
        for (int j = 0; j <= n; ++j) c[j] = m(r, n - j);
        out.emplace_back(std::move(c));
    }
    return out;
}

}  // namespace

std::vector<IntVec> IsotropicSpace::integer_vectors() const {
    std::vector<IntVec> out;
    for (const auto& b : basis) {
        RatVec v(n + 1, Rat(0));
        for (std::size_t j = 0; j < b.size(); ++j) v[j] = b[j];
        out.push_back(primitive_integer_vector(v));
    }
    return out;
}

IsotropicSpace dim_V(const FieldInvariants& inv, const FieldElem& mu, int n) {
    require_index_two(inv);
    if (mu.is_zero()) throw Error(ErrorCode::DegenerateInput, "mu = 0");
    const int d = inv.field->degree();
    if (n < 0 || d <= n) throw Error(ErrorCode::DegenerateInput, "dim_V needs 0 <= n < deg xi");
    RatMatrix m(d, n + 1);
    FieldElem e = mu;
    const FieldElem x = inv.field->gen();
    for (int j = 0; j <= n; ++j) {
        FieldElem c = apply_conjugation(inv.conjugation, e) - e;
        for (int i = 0; i < d; ++i) m(i, j) = c.coords()[i];
        e = e * x;
    }
    return IsotropicSpace{n, mu, canonical_basis(kernel(m), n)};
}

bool verify_reality(const FieldInvariants& inv, const IsotropicSpace& space) {
    require_index_two(inv);
    for (const auto& f : space.basis) {
        FieldElem v = space.mu * inv.field->elem(f);
        if (apply_conjugation(inv.conjugation, v) != v) return false;
    }
    return true;
}

bool direct_sum_check(const IsotropicSpace& space) {
    const int n = space.n;
    if (n % 2 || static_cast<int>(space.dim()) != (n + 2) / 2)
        throw Error(ErrorCode::WrongDimension, "direct sum check needs n even and dim = (n+2)/2");
    std::vector<RatVec> rows;
    for (const auto& b : space.basis) {
        RatVec v(n + 2, Rat(0)), w(n + 2, Rat(0));
        for (std::size_t j = 0; j < b.size(); ++j) {
            v[j] = b[j];
            w[j + 1] = b[j];
        }
        rows.push_back(std::move(v));
        rows.push_back(std::move(w));
    }
    return static_cast<int>(rank(rows)) == n + 2;
}

const Rat& ExponentValue::value() const {
    if (!determined()) throw Error(ErrorCode::GapCase, "exponent is not determined");
    return candidates.front();
}

UvValues u_v_values(int n, const TnVerdict& tn) {
    const Rat lo = make_rat(n - 1, 2), hi = make_rat(n, 2);
    UvValues out;
    auto single = [](const Rat& r) { return ExponentValue{{r}}; };
    if (tn.value) {
        Rat t1(*tn.value - 1);
        Rat u = t1 > lo ? t1 : lo;
        out.u = single(u);
        out.v = single(Rat(n - 1) - u);
    } else if (tn.u_fixed) {
        out.u = single(lo);
        out.v = single(Rat(n - 1) - lo);
    } else {
        out.u = ExponentValue{{lo, hi}};
        out.v = ExponentValue{{Rat(n - 1) - hi, Rat(n - 1) - lo}};
    }
    return out;
}

TnVerdict tn_from_theorems(const FieldInvariants& inv, int n, const TnSearchOptions& opts) {
    if (inv.real) throw Error(ErrorCode::DegenerateInput, "t_n is defined for non-real xi");
    const int d = inv.xi.degree();
    if (n < 1 || d <= n) throw Error(ErrorCode::OutOfRegime, "t_n needs 1 <= n < deg xi");
    TnVerdict v;
    v.n = n;
    v.lower_bound = 1;
    v.provenance.emplace_back("constants_real", "mu = 1 makes every rational constant real, so t_n >= 1");
    const bool two = inv.conjugation.present();
    if (two) {
        IsotropicSpace s = dim_V(inv, inv.field->one(), n);
        v.lower_bound = static_cast<long>(s.dim());
        v.witness = IntPoly{1};
        v.provenance.emplace_back("dim_at_mu_one", "dim V_n(1, xi) = " + std::to_string(s.dim()));
    }
    auto settle = [&v] {
        if (v.lower_bound == v.upper_bound) v.value = v.lower_bound;
    };
    auto search = [&] {
        TnSearchResult r = tn_lower_bound_search(inv, n, opts);
        if (static_cast<long>(r.dim) > v.lower_bound) {
            v.lower_bound = static_cast<long>(r.dim);
            v.witness = r.f;
        }
        v.provenance.emplace_back("search_lower_bound", "mu = 1/f(xi) with f = " + to_string(r.f) + " gives dim " +
                                                            std::to_string(r.dim) + " (height <= " +
                                                            std::to_string(opts.height_bound) + ")");
        return r;
    };
    const long half_up = (n + 2) / 2;

    if (n % 2) {
        v.upper_bound = (n + 1) / 2;
        v.u_fixed = true;
        v.provenance.emplace_back("odd_n_bound", "n is odd, so no V_n(mu, xi) exceeds (n+1)/2");
        settle();
        return v;
    }
    if (!two) {
        v.upper_bound = n / 2;
        v.u_fixed = true;
        v.provenance.emplace_back("index_at_least_three", "Q(xi) has real subfield of index >= 3, which forces t_n <= (n+1)/2");
        settle();
        return v;
    }
    if (inv.dependence.dependent) {
        v.provenance.emplace_back("trace_norm_dependent", "1, xi + conj(xi), xi conj(xi) are dependent over Q");
        v.lower_bound = v.upper_bound = half_up;
        v.value = half_up;
        TnSearchResult r = tn_lower_bound_search(inv, n, opts);
        if (static_cast<long>(r.dim) == half_up) v.witness = r.f;
        return v;
    }
    if (d == n + 2) {
        v.provenance.emplace_back("degree_n_plus_2", "deg xi = n + 2 and the real subfield of Q(xi) has index 2");
        v.lower_bound = v.upper_bound = half_up;
        v.value = half_up;
        TnSearchResult r = tn_lower_bound_search(inv, n, opts);
        if (static_cast<long>(r.dim) == half_up) v.witness = r.f;
        return v;
    }
    if (d > 2 * n - 2) {
        v.provenance.emplace_back("large_degree_independent", "deg xi > 2n - 2 and 1, beta, gamma independent");
        v.upper_bound = n / 2;
        v.u_fixed = true;
        if (v.lower_bound < v.upper_bound) search();
        settle();
        return v;
    }
    v.provenance.emplace_back("exceptional_configuration",
                              "n even, n + 2 < deg xi <= 2n - 2, index 2, 1, beta, gamma independent");
    v.upper_bound = half_up;
    search();
    if (v.lower_bound == half_up)
        v.provenance.emplace_back("search_attains_maximum", "a computed space has dimension (n+2)/2");
    settle();
    return v;
}

}  // namespace algapprox
