#pragma once

#include "algapprox/lattice.hpp"

#include <complex>
#include <string>
#include <vector>

namespace algapprox::lab {

// P(xi) = 0 exactly
bool vanishes_at(const FieldInvariants& inv, const IntPoly& P);
// (degree, c_deg, ..., c_0) lexicographic
bool key_less(const IntPoly& a, const IntPoly& b);
IntPoly canonical_sign(IntPoly P);

std::vector<std::complex<double>> double_powers(const AlgebraicComplex& xi, int n);
// bound on the double rounding error of sum c_i xi^i with |c_i| <= H
double rounding_slack(const std::vector<std::complex<double>>& pw, double H);

// compares |P(xi)|^2 H(P)^e (or |P(xi)| when e = 0) with certified balls, then
// exactly through the conjugation map; 0 means not separated
int compare_values(const FieldInvariants& inv, const IntPoly& a, const IntPoly& b, double weight_exp,
                   mpfr_prec_t prec);
// certified argmin, ties to key_less
IntPoly pick_best(const FieldInvariants& inv, const std::vector<IntPoly>& cands, double weight_exp, mpfr_prec_t prec);

SearchRecord make_record(const FieldInvariants& inv, const IntPoly& P, const std::string& mode, mpfr_prec_t prec);

IntPoly from_coeffs(const std::vector<long>& c);
IntPoly from_vec(const IntVec& v);

}  // namespace algapprox::lab
