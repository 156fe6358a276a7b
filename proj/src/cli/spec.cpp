#include "algapprox/cli.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#ifndef ALGAPPROX_VERSION
#define ALGAPPROX_VERSION "0.0.0"
#endif

namespace algapprox::cli {

namespace {

[[noreturn]] void field_error(const std::string& where, const std::string& ptr, const std::string& msg) {
    throw Error(ErrorCode::InvalidInput, where + ": " + (ptr.empty() ? "/" : ptr) + ": " + msg);
}

BigInt parse_big(const Json& v, const std::string& where, const std::string& ptr) {
    if (v.is_number_integer()) return BigInt(std::to_string(v.get<long long>()));
    if (v.is_string()) {
        static const std::regex re(R"([+-]?[0-9]+)");
        const auto& s = v.get_ref<const std::string&>();
        if (!std::regex_match(s, re)) field_error(where, ptr, "not an integer: \"" + s + "\"");
        return BigInt(s[0] == '+' ? s.substr(1) : s);
    }
    field_error(where, ptr, "expected an integer");
}

bool is_decimal(const std::string& s) {
    static const std::regex re(R"([+-]?([0-9]+\.?[0-9]*|\.[0-9]+)([eE][+-]?[0-9]+)?)");
    return std::regex_match(s, re);
}

std::vector<Rat> parse_expected(const Json& v, const std::string& where, const std::string& ptr) {
    std::vector<Rat> out;
    auto one = [&](const Json& x, const std::string& p) {
        if (!x.is_string()) field_error(where, p, "expected a fraction string such as \"1/2\"");
        try {
            out.push_back(parse_rat(x.get<std::string>()));
        } catch (const Error&) {
            field_error(where, p, "not a fraction: \"" + x.get<std::string>() + "\"");
        }
    };
    if (v.is_array()) {
        if (v.empty() || v.size() > 2) field_error(where, ptr, "expected one or two values");
        for (std::size_t i = 0; i < v.size(); ++i) one(v[i], ptr + "/" + std::to_string(i));
    } else {
        one(v, ptr);
    }
    return out;
}

const std::vector<std::string>& spec_keys() {
    static const std::vector<std::string> k = {"name", "coefficients", "root", "assume_irreducible", "n", "expect"};
    return k;
}

}  // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::BudgetExceeded:
        case ErrorCode::PrecisionError:
            return kExitBudget;
        default:
            return kExitInput;
    }
}

Rat parse_rat(const std::string& s) {
    static const std::regex re(R"(([+-]?[0-9]+)(/([0-9]+))?)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw Error(ErrorCode::InvalidInput, "not a fraction: " + s);
    std::string num = m[1].str();
    if (num[0] == '+') num = num.substr(1);
    BigInt den = m[3].matched ? BigInt(m[3].str()) : BigInt(1);
    if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator: " + s);
    Rat r(BigInt(num), den);
    r.canonicalize();
    return r;
}

NumberSpec parse_spec(const Json& j, const std::string& where) {
    if (!j.is_object()) field_error(where, "", "a number spec must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(spec_keys().begin(), spec_keys().end(), it.key()) == spec_keys().end())
            field_error(where, "/" + it.key(), "unknown field");

    NumberSpec s;
    if (j.contains("name")) {
        if (!j["name"].is_string()) field_error(where, "/name", "expected a string");
        s.name = j["name"].get<std::string>();
    }

    if (!j.contains("coefficients")) field_error(where, "/coefficients", "missing");
    const Json& cs = j["coefficients"];
    if (!cs.is_array() || cs.size() < 2) field_error(where, "/coefficients", "expected at least two integers c0..cd");
    std::vector<BigInt> c;
    for (std::size_t i = 0; i < cs.size(); ++i) c.push_back(parse_big(cs[i], where, "/coefficients/" + std::to_string(i)));
    IntPoly p(std::move(c));
    if (p.degree() < 1) field_error(where, "/coefficients", "degree must be at least 1");
    s.coefficients = primitive_part(p);

    if (!j.contains("root")) field_error(where, "/root", "missing (give {\"hint\": {\"re\", \"im\"}} or {\"index\"})");
    const Json& r = j["root"];
    if (!r.is_object() || r.size() != 1) field_error(where, "/root", "expected exactly one of hint, index");
    if (r.contains("hint")) {
        const Json& h = r["hint"];
        if (!h.is_object() || !h.contains("re") || !h.contains("im"))
            field_error(where, "/root/hint", "expected {\"re\": string, \"im\": string}");
        RootHint hint;
        for (const char* k : {"re", "im"}) {
            const std::string ptr = std::string("/root/hint/") + k;
            if (!h[k].is_string()) field_error(where, ptr, "decimal hints are strings");
            const auto& v = h[k].get_ref<const std::string&>();
            if (!is_decimal(v)) field_error(where, ptr, "not a decimal: \"" + v + "\"");
            (k[0] == 'r' ? hint.re : hint.im) = v;
        }
        s.selector = hint;
    } else if (r.contains("index")) {
        if (!r["index"].is_number_integer() || r["index"].get<long long>() < 0) field_error(where, "/root/index", "expected a nonnegative integer");
        s.selector = r["index"].get<std::size_t>();
    } else {
        field_error(where, "/root", "expected exactly one of hint, index");
    }

    if (j.contains("assume_irreducible")) {
        if (!j["assume_irreducible"].is_boolean()) field_error(where, "/assume_irreducible", "expected a boolean");
        s.assume_irreducible = j["assume_irreducible"].get<bool>();
    }
    if (j.contains("n")) {
        const Json& ns = j["n"];
        if (!ns.is_array()) field_error(where, "/n", "expected a list of degrees");
        for (std::size_t i = 0; i < ns.size(); ++i) {
            if (!ns[i].is_number_integer() || ns[i].get<long long>() < 1 || ns[i].get<long long>() > 64)
                field_error(where, "/n/" + std::to_string(i), "expected a positive integer");
            s.n.push_back(ns[i].get<int>());
        }
    }
    if (j.contains("expect")) {
        const Json& ex = j["expect"];
        if (!ex.is_array()) field_error(where, "/expect", "expected a list");
        for (std::size_t i = 0; i < ex.size(); ++i) {
            const std::string ptr = "/expect/" + std::to_string(i);
            if (!ex[i].is_object() || !ex[i].contains("n") || !ex[i]["n"].is_number_integer() ||
                ex[i]["n"].get<long long>() < 1)
                field_error(where, ptr, "expected {\"n\": degree, \"w\"?: value, \"wtilde\"?: value}");
            Expectation e;
            e.n = ex[i]["n"].get<int>();
            if (ex[i].contains("w")) e.w = parse_expected(ex[i]["w"], where, ptr + "/w");
            if (ex[i].contains("wtilde")) e.wtilde = parse_expected(ex[i]["wtilde"], where, ptr + "/wtilde");
            s.expect.push_back(std::move(e));
        }
    }
    return s;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::InvalidInput,
                    path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
    }
}

NumberSpec load_spec(const std::string& path) { return parse_spec(load_json_file(path), path); }

std::vector<NumberSpec> load_corpus(const std::string& path) {
    Json j = load_json_file(path);
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        field_error(path, "/entries", "a corpus is {\"entries\": [...]}");
    std::vector<NumberSpec> out;
    for (std::size_t i = 0; i < j["entries"].size(); ++i) {
        NumberSpec s = parse_spec(j["entries"][i], path + " /entries/" + std::to_string(i));
        if (s.name.empty()) s.name = "#" + std::to_string(i);
        out.push_back(std::move(s));
    }
    return out;
}

Json big_json(const BigInt& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

Json rat_json(const Rat& v) { return Json{{"num", big_json(v.get_num())}, {"den", big_json(v.get_den())}}; }

Json poly_json(const IntPoly& p) {
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(big_json(c));
    return a;
}

Json decimal_json(double v, int digits) {
    char buf[64];
    if (!std::isfinite(v)) return Json{{"decimal", v > 0 ? "inf" : (v < 0 ? "-inf" : "nan")}, {"digits", 0}};
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return Json{{"decimal", buf}, {"digits", digits}};
}

Json ball_json(const RealBall& b) {
    return Json{{"mid", b.mid().to_string(20)}, {"rad", b.rad().to_string(6)}, {"prec", b.prec()}};
}

Json spec_to_json(const NumberSpec& s) {
    Json j;
    j["name"] = s.name;
    j["coefficients"] = poly_json(s.coefficients);
    if (const auto* h = std::get_if<RootHint>(&s.selector))
        j["root"] = Json{{"hint", {{"re", h->re}, {"im", h->im}}}};
    else
        j["root"] = Json{{"index", std::get<std::size_t>(s.selector)}};
    j["assume_irreducible"] = s.assume_irreducible;
    j["n"] = s.n;
    if (!s.expect.empty()) {
        Json ex = Json::array();
        for (const auto& e : s.expect) {
            Json x{{"n", e.n}};
            auto vals = [](const std::vector<Rat>& v) {
                Json a = Json::array();
                for (const auto& r : v) a.push_back(r.get_str());
                return a.size() == 1 ? a[0] : a;
            };
            if (e.w) x["w"] = vals(*e.w);
            if (e.wtilde) x["wtilde"] = vals(*e.wtilde);
            ex.push_back(x);
        }
        j["expect"] = ex;
    }
    return j;
}

std::vector<Real> config_grid(const Config& cfg) { return log_grid(cfg.grid_lo, cfg.grid_hi, cfg.grid_step, cfg.prec); }

Json config_json(const Config& cfg) {
    Json g{{"log10_lo", decimal_json(cfg.grid_lo, 6)},
           {"log10_hi", decimal_json(cfg.grid_hi, 6)},
           {"log10_step", decimal_json(cfg.grid_step, 6)},
           {"tag", "calibration"}};
    // workers are deliberately absent: reports do not depend on them
    return Json{{"precision_bits", cfg.prec}, {"height_bound", cfg.height_bound}, {"grid", g},
                {"budget", cfg.budget},       {"mode", cfg.mode},                 {"strict", cfg.strict},
                {"seeds", Json::object()}};
}

Json versions_json() {
    return Json{{"algapprox", ALGAPPROX_VERSION}, {"gmp", gmp_version}, {"mpfr", mpfr_get_version()},
                {"report_format", 1}};
}

}  // namespace algapprox::cli
