// algapprox: classification and empirical verification of approximation
// exponents for complex algebraic numbers.

#include "algapprox/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#ifndef ALGAPPROX_DATA_DIR
#define ALGAPPROX_DATA_DIR "data"
#endif

using namespace algapprox;
using namespace algapprox::cli;

namespace {

struct NumberArgs {
    std::string spec_file, entry, corpus = std::string(ALGAPPROX_DATA_DIR) + "/corpus.json";
    std::string poly, hint;
    std::optional<std::size_t> index;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        out.push_back(item);
    }
    return out;
}

NumberSpec number_from(const NumberArgs& a, bool assume) {
    const int given = !a.spec_file.empty() + !a.entry.empty() + !a.poly.empty();
    if (given != 1) throw Error(ErrorCode::InvalidInput, "give exactly one of --spec, --entry, --poly");
    NumberSpec s;
    if (!a.spec_file.empty()) {
        s = load_spec(a.spec_file);
    } else if (!a.entry.empty()) {
        bool found = false;
        for (auto& e : load_corpus(a.corpus))
            if (e.name == a.entry) {
                s = std::move(e);
                found = true;
                break;
            }
        if (!found) throw Error(ErrorCode::InvalidInput, "no entry " + a.entry + " in " + a.corpus);
    } else {
        Json j;
        j["name"] = "command line";
        Json cs = Json::array();
        for (const auto& c : split(a.poly, ',')) cs.push_back(c);
        j["coefficients"] = cs;
        if (a.index) {
            j["root"] = Json{{"index", *a.index}};
        } else {
            auto h = split(a.hint, ',');
            if (h.size() != 2) throw Error(ErrorCode::InvalidInput, "--hint expects re,im");
            j["root"] = Json{{"hint", {{"re", h[0]}, {"im", h[1]}}}};
        }
        s = parse_spec(j, "command line");
    }
    s.assume_irreducible = s.assume_irreducible || assume;
    return s;
}

void add_number_options(CLI::App* sub, NumberArgs& a) {
    sub->add_option("--spec", a.spec_file, "number spec file (JSON)");
    sub->add_option("--entry", a.entry, "entry name in the corpus file");
    sub->add_option("--corpus", a.corpus, "corpus file for --entry")->capture_default_str();
    sub->add_option("--poly", a.poly, "coefficients c0,c1,...,cd");
    sub->add_option("--hint", a.hint, "root hint re,im as decimal strings");
    sub->add_option("--index", a.index, "root index in (Re, Im) ascending order");
}

void parse_grid(const std::string& g, Config& cfg) {
    auto parts = split(g, ':');
    if (parts.size() != 3) throw Error(ErrorCode::InvalidInput, "--grid expects lo:hi:step (log10 H)");
    try {
        cfg.grid_lo = std::stod(parts[0]);
        cfg.grid_hi = std::stod(parts[1]);
        cfg.grid_step = std::stod(parts[2]);
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidInput, "--grid expects numbers: " + g);
    }
    if (!(cfg.grid_step > 0) || cfg.grid_hi < cfg.grid_lo) throw Error(ErrorCode::InvalidInput, "bad grid " + g);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximation exponents of complex algebraic numbers"};
    app.require_subcommand(1);

    Config cfg;
    std::string grid, out_path, format = "json";
    bool assume = false;
    long prec = cfg.prec;
    app.add_option("--prec", prec, "working precision in bits")->capture_default_str();
    app.add_option("--height-bound", cfg.height_bound, "height bound for the t_n search")->capture_default_str();
    app.add_option("--grid", grid, "log10 H grid lo:hi:step (default 2:5:0.5)");
    app.add_option("--budget", cfg.budget, "enumeration budget")->capture_default_str();
    app.add_flag("--assume-irreducible", assume, "accept polynomials without an irreducibility certificate");
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
    app.add_option("--mode", cfg.mode, "search mode: reduce, enumerate or auto")
        ->check(CLI::IsMember({"reduce", "enumerate", "auto"}))
        ->capture_default_str();
    app.add_flag("--strict", cfg.strict, "treat empirical checks as hard (exit 2 on failure)");

    NumberArgs num;
    int n = 0;
    std::vector<int> n_list;
    std::string w_str, mu_str, height_str, corpus_file = std::string(ALGAPPROX_DATA_DIR) + "/corpus.json";
    bool invert = false;

    auto* c_classify = app.add_subcommand("classify", "w and w_tilde for each n");
    add_number_options(c_classify, num);
    c_classify->add_option("--n", n_list, "degrees, e.g. --n 2,4")->delimiter(',');

    auto* c_verify = app.add_subcommand("verify", "empirical exponent, minima and record constants over the grid");
    add_number_options(c_verify, num);
    c_verify->add_option("--n", n, "degree")->required();
    c_verify->add_option("--w", w_str, "exponent to test (default: classified)");

    auto* c_tn = app.add_subcommand("tn", "t_n verdict and the space V for mu");
    add_number_options(c_tn, num);
    c_tn->add_option("--n", n, "degree")->required();
    c_tn->add_option("--mu", mu_str, "mu = h(xi) with h given as rationals c0,c1,...");
    c_tn->add_flag("--invert", invert, "use mu = 1/h(xi)");

    auto* c_search = app.add_subcommand("search", "best polynomial of degree <= n and height <= H");
    add_number_options(c_search, num);
    c_search->add_option("--n", n, "degree")->required();
    c_search->add_option("--H", height_str, "height bound (decimal)")->required();

    auto* c_minima = app.add_subcommand("minima", "successive minima profile over the grid");
    add_number_options(c_minima, num);
    c_minima->add_option("--n", n, "degree")->required();
    c_minima->add_option("--w", w_str, "body exponent (default: classified w)");

    auto* c_corpus = app.add_subcommand("corpus", "classify every entry of a corpus file");
    c_corpus->add_option("file", corpus_file, "corpus file")->capture_default_str();

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (prec < 64 || prec > kPrecCap) throw Error(ErrorCode::InvalidInput, "--prec must lie in [64, 8192]");
        cfg.prec = static_cast<mpfr_prec_t>(prec);
        if (!grid.empty()) parse_grid(grid, cfg);
        const Format fmt = parse_format(format);
        std::optional<Rat> w;
        if (!w_str.empty()) w = parse_rat(w_str);

        Outcome res;
        if (c_corpus->parsed()) {
            res = run_corpus(load_corpus(corpus_file), cfg);
        } else {
            NumberSpec spec = number_from(num, assume);
            if (c_classify->parsed()) {
                if (n_list.empty()) n_list = spec.n;
                if (n_list.empty()) throw Error(ErrorCode::InvalidInput, "no degrees: pass --n or list them in the spec");
                res = run_classify(spec, n_list, cfg);
            } else if (c_verify->parsed()) {
                res = run_verify(spec, n, w, cfg);
            } else if (c_tn->parsed()) {
                std::optional<RatPoly> mu;
                if (!mu_str.empty()) {
                    std::vector<Rat> cs;
                    for (const auto& c : split(mu_str, ',')) cs.push_back(parse_rat(c));
                    mu = RatPoly(std::move(cs));
                }
                res = run_tn(spec, n, mu, invert, cfg);
            } else if (c_search->parsed()) {
                const Real H = Real::from_string(height_str, cfg.prec);
                SearchMode mode = cfg.mode == "enumerate" ? SearchMode::Enumerate : SearchMode::Reduce;
                if (cfg.mode == "auto") {
                    const double boxes = std::pow(2 * std::floor(H.to_double()) + 1, n + 1);
                    mode = boxes <= static_cast<double>(cfg.budget) ? SearchMode::Enumerate : SearchMode::Reduce;
                }
                res = run_search(spec, n, H, mode, cfg);
            } else {
                res = run_minima(spec, n, w, cfg);
            }
        }

        const std::string text = render(res.report, fmt);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path);
            if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + out_path);
            out << text;
        }
        return res.exit_code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
}
