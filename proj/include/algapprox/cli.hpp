#pragma once

#include "algapprox/error.hpp"
#include "algapprox/lattice.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace algapprox::cli {

using Json = nlohmann::json;

// An expected verdict attached to a corpus entry; values are exact fractions,
// two values mean an undetermined case.
struct Expectation {
    int n = 0;
    std::optional<std::vector<Rat>> w, wtilde;
};

struct NumberSpec {
    std::string name;
    IntPoly coefficients;  // primitive, positive leading coefficient
    RootSelector selector;
    bool assume_irreducible = false;
    std::vector<int> n;  // degrees to classify; may be empty
    std::vector<Expectation> expect;
};

struct Config {
    mpfr_prec_t prec = kLabPrec;
    long height_bound = 2;
    double grid_lo = 2, grid_hi = 5, grid_step = 0.5;
    std::uint64_t budget = 100'000'000;
    unsigned workers = 1;
    // reduce, enumerate, or auto (enumerate while within budget)
    std::string mode = "reduce";
    // failing checks turn into exit code 2
    bool strict = false;
};

// Parsed report plus the exit code it implies.
struct Outcome {
    Json report;
    int exit_code = 0;
};

// exit codes
inline constexpr int kExitOk = 0, kExitInput = 1, kExitAcceptance = 2, kExitBudget = 3;
int exit_code_for(ErrorCode code);

// Field errors carry a JSON pointer, syntax errors a line and column.
// `where` prefixes the messages (usually the file name).
NumberSpec parse_spec(const Json& j, const std::string& where);
Json load_json_file(const std::string& path);
NumberSpec load_spec(const std::string& path);
// a corpus file holds {"entries": [spec, ...]}
std::vector<NumberSpec> load_corpus(const std::string& path);
Json spec_to_json(const NumberSpec& s);

// exact values
Json big_json(const BigInt& v);
Json rat_json(const Rat& v);
Json poly_json(const IntPoly& p);
// empirical values: decimal strings tagged with their digit count
Json decimal_json(double v, int digits = 10);
Json ball_json(const RealBall& b);

std::vector<Real> config_grid(const Config& cfg);
Json config_json(const Config& cfg);
Json versions_json();

Outcome run_classify(const NumberSpec& spec, const std::vector<int>& n_list, const Config& cfg);
Outcome run_verify(const NumberSpec& spec, int n, const std::optional<Rat>& w, const Config& cfg);
// mu = h(xi), or 1/h(xi) with invert; unset uses the witness of the t_n verdict
Outcome run_tn(const NumberSpec& spec, int n, const std::optional<RatPoly>& mu_poly, bool invert,
               const Config& cfg);
Outcome run_search(const NumberSpec& spec, int n, const Real& H, SearchMode mode, const Config& cfg);
Outcome run_minima(const NumberSpec& spec, int n, const std::optional<Rat>& w, const Config& cfg);
// one failing or erroring entry never stops the others
Outcome run_corpus(const std::vector<NumberSpec>& entries, const Config& cfg);

enum class Format { Json, Csv, Text };
Format parse_format(const std::string& s);
std::string render(const Json& report, Format f);

// "3", "-1/2"
Rat parse_rat(const std::string& s);

}  // namespace algapprox::cli
