#include "algapprox/algebraic.hpp"
#include "algapprox/error.hpp"

#include <cmath>

namespace algapprox {

namespace {

BigInt ceil_real(const Real& x) {
    Real c(x.prec());
    mpfr_ceil(c.get(), x.get());
    BigInt r;
    mpfr_get_z(r.get_mpz_t(), c.get(), MPFR_RNDU);
    return r;
}

BigInt round_real(const Real& x) {
    BigInt r;
    mpfr_get_z(r.get_mpz_t(), x.get(), MPFR_RNDN);
    return r;
}

long bit_length(const BigInt& v) { return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)); }

// exact identities plus box identification of g(xi)
bool confirm(const AlgebraicComplex& xi, const RatPoly& g, mpfr_prec_t prec) {
    const RatPoly f = monic(to_rat(xi.min_poly()));
    if (!compose_mod(f, g, f).is_zero()) return false;
    if (compose_mod(g, g, f) != RatPoly::x()) return false;
    // the isolating box of xi mirrored isolates conj(xi); g(xi) is a root, so
    // containment in the mirrored box pins it to conj(xi)
    ComplexBall mirror = xi.box().conj();
    for (mpfr_prec_t w = std::max(prec, 2 * xi.precision()); w <= 4 * xi.cap(); w *= 2) {
        ComplexBall val = eval_ball(g, xi.approx(w));
        if (mirror.contains(val)) return true;
        if (!mirror.overlaps(val)) return false;
    }
    return false;
}

}  // namespace

ConjugationMap find_conjugation(const AlgebraicComplex& xi) {
    if (xi.real()) throw Error(ErrorCode::DegenerateInput, "conjugation map requested for a real number");
    ConjugationMap out;
    const int d = xi.degree();
    if (d % 2) {
        out.certificate = "odd degree: no automorphism of order 2";
        return out;
    }

    const IntPoly& f = xi.min_poly();
    const BigInt lc = abs(f.leading());
    BigInt D0 = abs(discriminant(f));
    for (int i = 0; i < (d - 1) * (d - 2) + 1; ++i) D0 *= lc;

    // coefficient bound for g from the conjugates: g = sum_k conj-image * Lagrange basis
    auto roots = isolate_roots(f, 128, xi.cap());
    const mpfr_prec_t bp = 128;
    Real R(bp);
    for (const auto& r : roots) R = max(R, r.ball.abs_upper());
    Real M(bp);
    {
        BigInt binom = 1;
        for (int i = 0; i < d; ++i) {
            // binom(d-1, i) R^(d-1-i)
            Real term = Real::from(binom, bp, MPFR_RNDU);
            for (int k = 0; k < d - 1 - i; ++k) term = mul(term, R, bp, MPFR_RNDU);
            M = max(M, term);
            binom = binom * (d - 1 - i) / (i + 1);
        }
    }
    Real G(bp);
    for (std::size_t k = 0; k < roots.size(); ++k) {
        Real prod = Real::from_int(1, bp);
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (j == k) continue;
            prod = mul(prod, roots[k].ball.distance_lower(roots[j].ball), bp, MPFR_RNDD);
        }
        if (prod.sign() <= 0) throw Error(ErrorCode::PrecisionError, "conjugate separation not certified");
        G = add(G, div(mul(R, M, bp, MPFR_RNDU), prod, bp, MPFR_RNDU), bp, MPFR_RNDU);
    }
    BigInt B = ceil_real(mul(G, Real::from(D0, bp, MPFR_RNDU), bp, MPFR_RNDU));
    BigInt Rrel = B > D0 ? B : D0;
    out.relation_bound = Rrel.get_str();

    // scale so that a lattice without small relations has Gram-Schmidt norms well above the bound
    const long bound_bits = bit_length(Rrel) + 4;
    long s = static_cast<long>(std::ceil((d + 1) / 2.0 * static_cast<double>(bound_bits + (d + 1) / 2 + 8)));
    s = std::max(s, 64L);
    long Rbits = std::max(1L, static_cast<long>(mpfr_get_exp(R.get())));
    for (int attempt = 0; attempt < 6; ++attempt, s *= 2) {
        const mpfr_prec_t w = static_cast<mpfr_prec_t>(s + 64 + d * Rbits);
        if (w > 4 * xi.cap()) break;
        ComplexBall x = xi.approx(w);
        std::vector<ComplexBall> z;
        ComplexBall pw = ComplexBall::exact(Rat(1), Rat(0), w);
        for (int k = 0; k < d; ++k) {
            z.push_back(pw);
            pw = pw * x;
        }
        z.push_back(x.conj());
        Real C = pow2(s, w);
        Real err(kRadPrec);
        std::vector<IntVec> rows;
        for (int k = 0; k <= d; ++k) {
            IntVec row(d + 3, BigInt(0));
            row[k] = 1;
            row[d + 1] = round_real(mul(z[k].re(), C, w, MPFR_RNDN));
            row[d + 2] = round_real(mul(z[k].im(), C, w, MPFR_RNDN));
            err = max(err, mul(z[k].rad(), C, kRadPrec, MPFR_RNDU));
            rows.push_back(std::move(row));
        }
        LllResult red = lll_reduce(rows);
        for (const auto& b : red.basis) {
            if (b[d] == 0) continue;
            std::vector<Rat> gc(d);
            for (int k = 0; k < d; ++k) {
                gc[k] = Rat(-b[k], b[d]);
                gc[k].canonicalize();
            }
            RatPoly g(gc);
            if (confirm(xi, g, w)) {
                out.g = g;
                out.precision = w;
                out.certificate = "integer relation confirmed by exact identities and box identification";
                return out;
            }
        }
        // absence: every true relation has norm at most sqrt((d+1) R^2 + 2 ((d+1) R E)^2)
        Real E = add(err, Real::from_string("0.5", kRadPrec), kRadPrec, MPFR_RNDU);
        Real Rr = Real::from(Rrel, bp, MPFR_RNDU);
        Real t1 = mul(mul(Rr, Rr, bp, MPFR_RNDU), Real::from_int(d + 1, bp), bp, MPFR_RNDU);
        Real t2 = mul(mul(Rr, Real::from_int(d + 1, bp), bp, MPFR_RNDU), E, bp, MPFR_RNDU);
        t2 = mul(mul(t2, t2, bp, MPFR_RNDU), Real::from_int(2, bp), bp, MPFR_RNDU);
        Rat bound2 = add(t1, t2, bp, MPFR_RNDU).to_rat();
        Rat min_gso = red.gso_norms[0];
        for (const auto& v : red.gso_norms) min_gso = v < min_gso ? v : min_gso;
        if (min_gso > bound2) {
            out.precision = w;
            out.certificate = "no integer relation with coefficients up to the completeness bound "
                              "(reduced lattice Gram-Schmidt minimum exceeds it)";
            return out;
        }
    }
    throw Error(ErrorCode::PrecisionError, "conjugation search inconclusive at the precision cap");
}

FieldElem apply_conjugation(const ConjugationMap& c, const FieldElem& x) {
    if (!c.present()) throw Error(ErrorCode::IndexNotTwo, "no conjugation map");
    return x.field()->elem(compose_mod(x.to_poly(), *c.g, x.field()->modulus()));
}

SubfieldIndex real_subfield_index(const AlgebraicComplex& xi, const ConjugationMap& conj) {
    SubfieldIndex out;
    if (!conj.present()) return out;
    // dimension of the fixed space of sigma
    FieldPtr K = NumberField::create(xi.min_poly());
    const int d = K->degree();
    RatMatrix S(d, d);
    for (int j = 0; j < d; ++j) {
        FieldElem e = K->gen().pow(static_cast<unsigned>(j));
        FieldElem se = apply_conjugation(conj, e);
        for (int i = 0; i < d; ++i) S(i, j) = se.coords()[i] - (i == j ? 1 : 0);
    }
    const int fixed = static_cast<int>(kernel(S).size());
    if (2 * fixed != d) throw Error(ErrorCode::DegenerateInput, "conjugation map has unexpected fixed field");
    out.index_two = true;
    out.real_subfield_degree = fixed;
    return out;
}

std::optional<BetaGamma> beta_gamma(const AlgebraicComplex& xi, const ConjugationMap& conj) {
    if (!conj.present()) return std::nullopt;
    FieldPtr K = NumberField::create(xi.min_poly());
    FieldElem x = K->gen();
    FieldElem gx = K->elem(*conj.g);
    BetaGamma bg{x + gx, x * gx};
    if (apply_conjugation(conj, bg.beta) != bg.beta || apply_conjugation(conj, bg.gamma) != bg.gamma)
        throw Error(ErrorCode::DegenerateInput, "beta/gamma not fixed by conjugation");
    return bg;
}

Dependence dependence_1_beta_gamma(const AlgebraicComplex& xi, const ConjugationMap& conj,
                                   const std::optional<BetaGamma>& bg) {
    Dependence out;
    if (!conj.present() || !bg) {
        out.dependent = false;
        out.justification =
            "index at least 3: a relation a + b*beta + c*gamma = 0 would put conj(xi) = -(a + b*xi)/(b + c*xi) "
            "in Q(xi)";
        return out;
    }
    const int d = xi.degree();
    RatMatrix m(d, 3);
    FieldElem one = bg->beta.field()->one();
    for (int i = 0; i < d; ++i) {
        m(i, 0) = one.coords()[i];
        m(i, 1) = bg->beta.coords()[i];
        m(i, 2) = bg->gamma.coords()[i];
    }
    auto ker = kernel(m);
    if (ker.empty()) {
        out.justification = "rank of {1, beta, gamma} in the power basis is 3";
        return out;
    }
    out.dependent = true;
    out.witness = primitive_integer_vector(ker.front());
    out.justification = "rank of {1, beta, gamma} in the power basis is " + std::to_string(3 - ker.size());
    return out;
}

FieldInvariants analyze(const AlgebraicComplex& xi) {
    FieldInvariants inv{xi, NumberField::create(xi.min_poly()), xi.real(), {}, {}, std::nullopt, {}};
    if (inv.real) return inv;
    inv.conjugation = find_conjugation(xi);
    inv.index = real_subfield_index(xi, inv.conjugation);
    inv.bg = beta_gamma(xi, inv.conjugation);
    inv.dependence = dependence_1_beta_gamma(xi, inv.conjugation, inv.bg);
    return inv;
}

}  // namespace algapprox
