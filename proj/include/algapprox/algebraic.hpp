#pragma once

#include "algapprox/ball.hpp"
#include "algapprox/linalg.hpp"
#include "algapprox/poly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace algapprox {

// ---- irreducibility -------------------------------------------------------

struct IrreducibilityCertificate {
    enum class Method { Linear, RationalRootFree, Eisenstein, ModPrime, DegreePattern, Assumed };
    Method method = Method::Assumed;
    long prime = 0;
    long shift = 0;
    std::vector<long> primes;  // DegreePattern only

    std::string describe() const;
};

// Returns a certificate, or nullopt when no certificate was found (not a proof
// of reducibility). Throws ReducibleInput on a rational root or a linear factor.
std::optional<IrreducibilityCertificate> certify_irreducible(const IntPoly& p);

// ---- real roots -----------------------------------------------------------

std::vector<RatPoly> sturm_sequence(const RatPoly& p);
// number of distinct real roots in (a, b]
int sturm_count(const std::vector<RatPoly>& seq, const Rat& a, const Rat& b);
// number of distinct real roots on the whole line
int sturm_count_all(const std::vector<RatPoly>& seq);

// ---- root isolation -------------------------------------------------------

struct RootBall {
    ComplexBall ball;
    bool real = false;
};

// Certified isolating disks for all roots of a squarefree p, in canonical
// (Re, Im) ascending order. Real roots carry an exactly zero imaginary center.
std::vector<RootBall> isolate_roots(const IntPoly& p, mpfr_prec_t prec = kDefaultPrec,
                                    mpfr_prec_t cap = kPrecCap);

// refine a disk known to isolate one root of p (Newton plus recertification);
// the returned disk is contained in the input disk
RootBall refine_root(const IntPoly& p, const RootBall& root, mpfr_prec_t prec);

class AlgebraicComplex {
public:
    AlgebraicComplex(IntPoly min_poly, RootBall root, std::size_t index, IrreducibilityCertificate cert,
                     mpfr_prec_t cap = kPrecCap);

    const IntPoly& min_poly() const { return min_poly_; }
    int degree() const { return min_poly_.degree(); }
    const ComplexBall& box() const { return root_.ball; }
    bool real() const { return root_.real; }
    std::size_t index() const { return index_; }
    const IrreducibilityCertificate& certificate() const { return cert_; }
    mpfr_prec_t precision() const { return root_.ball.prec(); }
    mpfr_prec_t cap() const { return cap_; }

    // new value with a nested box at the given precision
    AlgebraicComplex refined(mpfr_prec_t prec) const;
    // the isolating box at (at least) the given precision
    ComplexBall approx(mpfr_prec_t prec) const;

private:
    IntPoly min_poly_;
    RootBall root_;
    std::size_t index_;
    IrreducibilityCertificate cert_;
    mpfr_prec_t cap_;
};

struct RootHint {
    std::string re, im;
};

using RootSelector = std::variant<RootHint, std::size_t>;

struct SelectOptions {
    mpfr_prec_t prec = kDefaultPrec;
    mpfr_prec_t cap = kPrecCap;
    bool assume_irreducible = false;
};

// primitive-normalizes p, certifies irreducibility and picks one root
AlgebraicComplex select_root(const IntPoly& p, const RootSelector& sel, const SelectOptions& opts = {});

bool is_real(const AlgebraicComplex& a);

// ---- the field Q(xi) -------------------------------------------------------

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Element of Q(xi) in the power basis 1, xi, ..., xi^(d-1).
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(FieldPtr field, RatVec coords);

    const RatVec& coords() const { return coords_; }
    const FieldPtr& field() const { return field_; }
    RatPoly to_poly() const { return RatPoly(coords_); }
    bool is_zero() const;
    bool is_rational() const;

    FieldElem& operator+=(const FieldElem& o);
    FieldElem& operator-=(const FieldElem& o);
    friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
    friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
    friend FieldElem operator-(const FieldElem& a);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const Rat& s, const FieldElem& a);
    friend bool operator==(const FieldElem& a, const FieldElem& b);
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    FieldElem inverse() const;
    FieldElem pow(unsigned k) const;
    // numeric value given an enclosure of xi
    ComplexBall evaluate(const ComplexBall& xi) const;

private:
    FieldPtr field_;
    RatVec coords_;
};

class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    static FieldPtr create(const IntPoly& min_poly);

    int degree() const { return modulus_.degree(); }
    // monic defining polynomial over Q
    const RatPoly& modulus() const { return modulus_; }
    const IntPoly& min_poly() const { return min_poly_; }

    FieldElem elem(const RatPoly& h) const;
    FieldElem from_rat(const Rat& v) const;
    FieldElem one() const { return from_rat(Rat(1)); }
    FieldElem gen() const;
    // h(x) for a polynomial h and element x
    FieldElem apply(const RatPoly& h, const FieldElem& x) const;

private:
    explicit NumberField(const IntPoly& min_poly);
    IntPoly min_poly_;
    RatPoly modulus_;
};

// ---- conjugation ----------------------------------------------------------

struct ConjugationMap {
    // g with g(xi) = conj(xi), when conj(xi) lies in Q(xi)
    std::optional<RatPoly> g;
    // how the answer was certified
    std::string certificate;
    mpfr_prec_t precision = 0;
    // coefficient bound used for the absence certificate (decimal)
    std::string relation_bound;

    bool present() const { return g.has_value(); }
};

ConjugationMap find_conjugation(const AlgebraicComplex& xi);

// sigma(x) = x.to_poly()(g) reduced modulo min_poly
FieldElem apply_conjugation(const ConjugationMap& c, const FieldElem& x);

struct SubfieldIndex {
    bool index_two = false;
    int real_subfield_degree = 0;  // d/2 when index_two
};

SubfieldIndex real_subfield_index(const AlgebraicComplex& xi, const ConjugationMap& conj);

struct BetaGamma {
    FieldElem beta;
    FieldElem gamma;
};

std::optional<BetaGamma> beta_gamma(const AlgebraicComplex& xi, const ConjugationMap& conj);

struct Dependence {
    bool dependent = false;
    // primitive integer (a, b, c) with a + b*beta + c*gamma = 0
    std::optional<IntVec> witness;
    std::string justification;
};

Dependence dependence_1_beta_gamma(const AlgebraicComplex& xi, const ConjugationMap& conj,
                                   const std::optional<BetaGamma>& bg);

// Everything the classification needs about xi, computed once.
struct FieldInvariants {
    AlgebraicComplex xi;
    FieldPtr field;
    bool real = false;
    ConjugationMap conjugation;
    SubfieldIndex index;
    std::optional<BetaGamma> bg;
    Dependence dependence;
};

FieldInvariants analyze(const AlgebraicComplex& xi);

}  // namespace algapprox
