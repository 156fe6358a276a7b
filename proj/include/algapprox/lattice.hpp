#pragma once

#include "algapprox/classify.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace algapprox {

inline constexpr mpfr_prec_t kLabPrec = 256;

// ---- convex bodies --------------------------------------------------------

// K(xi, n, w, H): |Re P(xi)|, |Im P(xi)| <= H^-w and |x_i| <= H for
// P = x_0 + ... + x_n X^n.
struct ConvexBodySpec {
    std::vector<ComplexBall> powers;  // xi^0 .. xi^n
    int n = 0;
    Rat w;
    Real H;

    static ConvexBodySpec make(const AlgebraicComplex& xi, int n, const Rat& w, const Real& H,
                               mpfr_prec_t prec = kLabPrec);
};

// (n+3) x (n+1): rows H^w Re xi^j, H^w Im xi^j, then H^-1 e_j.
// x lies in the body iff the image of x has sup norm <= 1.
using BodyMatrix = std::vector<std::vector<RealBall>>;

BodyMatrix body_matrix(const ConvexBodySpec& spec);

// certified enclosure of the sup norm of m x
RealBall body_norm(const BodyMatrix& m, const IntVec& x);

struct ReducedBasis {
    std::vector<IntVec> vectors;  // a basis of Z^{n+1}, sorted by body norm
    std::vector<RealBall> norms;
};

// Integral LLL (delta 0.99) on the scaled image lattice followed by a pairwise
// sup-norm improvement pass. Deterministic for a fixed matrix.
ReducedBasis reduced_basis(const BodyMatrix& m);

// lower and upper bounds for Vol(K) from inscribed and circumscribed parallelepipeds
struct VolumeBounds {
    double lower = 0, upper = 0;
};
VolumeBounds body_volume(const ConvexBodySpec& spec);

// ---- successive minima ----------------------------------------------------

struct MinimaRow {
    Real H;
    std::vector<RealBall> lambda;  // estimates, nondecreasing
    std::vector<IntVec> vectors;
};

struct MinimaProfile {
    int n = 0;
    Rat w;
    std::vector<MinimaRow> rows;
    std::vector<double> slopes;     // fitted d log(lambda_i) / d log H
    std::vector<double> residuals;  // max absolute residual per index
    std::optional<std::vector<Rat>> predicted;
    std::string prediction_rule;
};

MinimaProfile minima_profile(const FieldInvariants& inv, int n, const Rat& w, const std::vector<Real>& grid,
                             mpfr_prec_t prec = kLabPrec, const TnSearchOptions& opts = {});

// predicted slopes from t_n; nullopt when t_n is not known well enough
std::optional<std::vector<Rat>> predicted_minima_slopes(int n, const Rat& w, const TnVerdict& tn);

// exact membership of integer vectors in the Q-span of the space's coefficient vectors;
// throws WrongDimension unless dim = (n+2)/2
std::vector<bool> u0_membership(const std::vector<IntVec>& vectors, const IsotropicSpace& space);

// ---- searches -------------------------------------------------------------

enum class SearchMode { Enumerate, Reduce };
std::string to_string(SearchMode m);

struct SearchRecord {
    IntPoly P;
    BigInt height;
    RealBall value;       // |P(xi)|
    RealBall derivative;  // |P'(xi)|
    std::string mode;
    std::map<std::string, std::string> meta;
};

struct SearchOptions {
    mpfr_prec_t prec = kLabPrec;
    // enumeration allowed while (2H+1)^(n+1) <= budget
    std::uint64_t budget = 100'000'000;
    // body exponent for reduce mode; unset scans 0, 1/2, ..., n
    std::optional<Rat> w;
    // coefficient range for combinations of reduced vectors
    int combo = 2;
};

// enumerate: exact argmin of |P(xi)| over nonzero P, deg P <= n, H(P) <= H, ties to the
// smallest (degree, c_deg, ..., c_0) with positive leading coefficient.
// reduce: best over small combinations of reduced bases of K at H, H/2, H/4.
SearchRecord best_poly_search(const FieldInvariants& inv, int n, const Real& H, SearchMode mode,
                              const SearchOptions& opts = {});

// |P(xi)|^2 H(P)^(d-2); throws ZeroValue when P(xi) = 0
RealBall liouville_check(const FieldInvariants& inv, const IntPoly& P, mpfr_prec_t prec = kLabPrec);

struct LiouvilleScan {
    IntPoly argmin;
    RealBall minimum;
    std::uint64_t count = 0;
};

// minimum of |P(xi)|^2 H(P)^(d-2) over all nonzero P, deg P <= n, min_height <= H(P) <= H
LiouvilleScan liouville_scan(const FieldInvariants& inv, int n, long H, long min_height = 1,
                             const SearchOptions& opts = {});

struct GridPoint {
    Real H;
    SearchMode mode;
};

// 10^lo, 10^(lo+step), ..., 10^hi
std::vector<Real> log_grid(double lo, double hi, double step, mpfr_prec_t prec = kLabPrec);

struct LineFit {
    double slope = 0, intercept = 0, band = 0;
};
// least squares y = slope x + intercept; band = max |residual|
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct EmpiricalExponent {
    LineFit fit;
    std::vector<GridPoint> grid;
    std::vector<SearchRecord> records;
};

// slope of -log min|P(xi)| against log H
EmpiricalExponent empirical_exponent(const FieldInvariants& inv, int n, const std::vector<GridPoint>& grid,
                                     const SearchOptions& opts = {});

struct RecordConstants {
    Rat w;
    std::vector<Real> grid;
    std::vector<SearchRecord> records;
    std::vector<double> products;  // H(P)^w |P(xi)|
    std::vector<double> running_sup;
    LineFit fit;  // log product against log H
};

// throws GapCase when w_n is not determined
RecordConstants record_constant_tracker(const FieldInvariants& inv, int n, const std::vector<GridPoint>& grid,
                                        const SearchOptions& opts = {}, const TnSearchOptions& tn_opts = {});

// ---- constructions --------------------------------------------------------

struct ConstructionTargets {
    double eps = 0.2;
};

// Degree-n irreducible P from small combinations of a reduced basis of
// K(xi, n, u_n, H). For t_n <= (n+1)/2 the 2-adic Eisenstein pattern is imposed
// (leading odd, others even, 4 not dividing the constant); for t_n = (n+2)/2 the
// combinations are taken inside U_0 and carry an irreducibility certificate.
// meta records the branch and the target checks.
SearchRecord eisenstein_sieve_search(const FieldInvariants& inv, int n, const Real& H, double eps = 0.2,
                                     mpfr_prec_t prec = kLabPrec, const TnSearchOptions& tn_opts = {});

// Monic P of degree n+1, Eisenstein at 2, from rounding the real auxiliary Q over
// a reduced basis of K(xi, n, v_n, H).
SearchRecord monic_construct(const FieldInvariants& inv, int n, const Real& H, double eps = 0.2,
                             mpfr_prec_t prec = kLabPrec, const TnSearchOptions& tn_opts = {});

struct Approximant {
    ComplexBall alpha;
    IntPoly poly;            // squarefree part of P, alpha is one of its roots
    RealBall distance;       // |xi - alpha|
    RealBall ratio;          // |P(xi) / P'(xi)|
    BigInt height_proxy;     // H(P)
};

// root of P nearest to xi; throws DerivativeZero when P'(xi) = 0
Approximant approximant_extract(const FieldInvariants& inv, const IntPoly& P, mpfr_prec_t prec = kLabPrec);

// exact post-checks
bool eisenstein_pattern(const IntPoly& P);  // leading odd, others even, 4 does not divide the constant
bool monic_eisenstein(const IntPoly& P, int degree);

}  // namespace algapprox
