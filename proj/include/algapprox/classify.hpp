#pragma once

#include "algapprox/tnspace.hpp"

#include <string>
#include <vector>

namespace algapprox {

enum class ExponentKind { AlgebraicApprox, IntegerApprox };
enum class VerdictStatus { Determined, Gap };

std::string to_string(ExponentKind k);
std::string to_string(VerdictStatus s);

// one evaluated rule: its id, the condition it tests, and whether it fired
struct ProvenanceStep {
    std::string rule;
    std::string condition;
    bool met = false;
};

struct ExponentVerdict {
    int n = 0;
    int d = 0;
    ExponentKind kind = ExponentKind::AlgebraicApprox;
    ExponentValue value;
    VerdictStatus status = VerdictStatus::Determined;
    // every rule evaluated, in order; the last entry is the one that fired
    std::vector<ProvenanceStep> provenance;
    std::vector<std::string> notes;
};

// w_n = w_n* = hat w_n
ExponentVerdict classify_w(const FieldInvariants& inv, int n, const TnSearchOptions& opts = {});
// the same exponents for algebraic integers of degree <= n+1
ExponentVerdict classify_wtilde(const FieldInvariants& inv, int n, const TnSearchOptions& opts = {});

// (d-2)/2 for d <= n+1; OutOfRegime otherwise
Rat liouville_exponent(const AlgebraicComplex& xi, int n);

}  // namespace algapprox
