#pragma once

#include "algapprox/algebraic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace algapprox {

// Rational polynomials f, deg f <= n, with mu * f(xi) real, as an explicit basis.
// Basis is in reduced echelon form: each element has a monic leading term at a
// pivot degree that no other element touches; sorted by ascending pivot degree.
struct IsotropicSpace {
    int n = 0;
    FieldElem mu;
    std::vector<RatPoly> basis;

    std::size_t dim() const { return basis.size(); }
    // coefficient vectors (length n+1), each scaled to a primitive integer vector
    std::vector<IntVec> integer_vectors() const;
};

// Throws IndexNotTwo without a conjugation map, DegenerateInput for mu = 0 or
// deg xi <= n.
IsotropicSpace dim_V(const FieldInvariants& inv, const FieldElem& mu, int n);

// exact recheck of sigma(mu f(xi)) = mu f(xi) for every basis element
bool verify_reality(const FieldInvariants& inv, const IsotropicSpace& space);

// {basis} together with {X * basis} spans W_{n+1}; throws WrongDimension unless
// n is even and dim = (n+2)/2
bool direct_sum_check(const IsotropicSpace& space);

struct TnSearchOptions {
    long height_bound = 2;
    // maximal number of candidate polynomials examined
    std::uint64_t budget = 20'000'000;
    unsigned workers = 1;
};

struct TnSearchResult {
    std::size_t dim = 1;
    // mu = 1 / f(xi)
    IntPoly f = IntPoly{1};
    IsotropicSpace space;
    std::uint64_t examined = 0;
    bool exhausted = false;
    int closure_steps = 0;
};

// Lower bound for t_n over mu = 1/f(xi), f primitive with positive leading
// coefficient, enumerated by (height, degree, c_deg, ..., c_0) ascending.
// Deterministic for any worker count.
TnSearchResult tn_lower_bound_search(const FieldInvariants& inv, int n, const TnSearchOptions& opts = {});

struct TnVerdict {
    int n = 0;
    std::optional<long> value;
    long lower_bound = 1;
    long upper_bound = 1;
    // true when t_n - 1 <= (n-1)/2 is certain, so u_n is known even if t_n is not
    bool u_fixed = false;
    // rule id followed by the condition that fired
    std::vector<std::pair<std::string, std::string>> provenance;
    // f with mu = 1/f(xi) realizing lower_bound, when a space was computed
    std::optional<IntPoly> witness;
};

// Throws OutOfRegime when deg xi <= n and DegenerateInput for real xi.
TnVerdict tn_from_theorems(const FieldInvariants& inv, int n, const TnSearchOptions& opts = {});

// One exact rational, or the two candidates of an undetermined case.
struct ExponentValue {
    std::vector<Rat> candidates;

    bool determined() const { return candidates.size() == 1; }
    const Rat& value() const;
    friend bool operator==(const ExponentValue& a, const ExponentValue& b) { return a.candidates == b.candidates; }
};

struct UvValues {
    ExponentValue u;
    ExponentValue v;
};

// u_n = max{(n-1)/2, t_n - 1}, v_n = n - 1 - u_n
UvValues u_v_values(int n, const TnVerdict& tn);

}  // namespace algapprox
