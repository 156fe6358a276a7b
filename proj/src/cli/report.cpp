#include "algapprox/cli.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace algapprox::cli {

namespace {

Json error_json(const Error& e) { return Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}}; }

Json ratpoly_json(const RatPoly& p) {
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(rat_json(c));
    return a;
}

Json intvec_json(const IntVec& v) {
    Json a = Json::array();
    for (const auto& c : v) a.push_back(big_json(c));
    return a;
}

Rat rat_from_json(const Json& j) {
    auto part = [](const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
    return parse_rat(part(j["num"]) + "/" + part(j["den"]));
}

std::string value_string(const ExponentValue& v) {
    if (v.determined()) return v.value().get_str();
    std::string s = "gap{";
    for (std::size_t i = 0; i < v.candidates.size(); ++i) s += (i ? "," : "") + v.candidates[i].get_str();
    return s + "}";
}

Json candidates_json(const ExponentValue& v) {
    Json a = Json::array();
    for (const auto& c : v.candidates) a.push_back(rat_json(c));
    return a;
}

TnSearchOptions tn_options(const Config& cfg) {
    TnSearchOptions o;
    o.height_bound = cfg.height_bound;
    o.workers = std::max(1u, cfg.workers);
    return o;
}

SearchOptions search_options(const Config& cfg) {
    SearchOptions o;
    o.prec = cfg.prec;
    o.budget = cfg.budget;
    return o;
}

FieldInvariants resolve(const NumberSpec& spec, const Config& cfg) {
    SelectOptions so;
    so.prec = cfg.prec;
    so.assume_irreducible = spec.assume_irreducible;
    return analyze(select_root(spec.coefficients, spec.selector, so));
}

Json number_json(const FieldInvariants& I) {
    const auto& xi = I.xi;
    const ComplexBall& b = xi.box();
    Json conj{{"present", I.conjugation.present()}, {"certificate", I.conjugation.certificate}};
    if (I.conjugation.g) conj["g"] = ratpoly_json(*I.conjugation.g);
    Json dep{{"dependent", I.dependence.dependent}, {"justification", I.dependence.justification}};
    if (I.dependence.witness) dep["witness"] = intvec_json(*I.dependence.witness);
    return Json{{"degree", xi.degree()},
                {"min_poly", poly_json(xi.min_poly())},
                {"root_index", xi.index()},
                {"real", I.real},
                {"box", {{"re", b.re().to_string(20)}, {"im", b.im().to_string(20)}, {"rad", b.rad().to_string(6)}}},
                {"irreducibility", xi.certificate().describe()},
                {"assumed_irreducible", xi.certificate().method == IrreducibilityCertificate::Method::Assumed},
                {"conjugation", conj},
                {"index_two", I.index.index_two},
                {"dependence", dep}};
}

Json verdict_json(const ExponentVerdict& v) {
    Json prov = Json::array();
    for (const auto& p : v.provenance) prov.push_back(Json{{"rule", p.rule}, {"condition", p.condition}, {"met", p.met}});
    Json j{{"n", v.n},
           {"kind", to_string(v.kind)},
           {"status", to_string(v.status)},
           {"candidates", candidates_json(v.value)},
           {"provenance", prov},
           {"notes", v.notes}};
    if (v.value.determined()) j["value"] = rat_json(v.value.value());
    return j;
}

Json tn_json(const TnVerdict& t) {
    Json prov = Json::array();
    for (const auto& [rule, cond] : t.provenance) prov.push_back(Json{{"rule", rule}, {"condition", cond}});
    Json j{{"n", t.n}, {"lower_bound", t.lower_bound}, {"upper_bound", t.upper_bound}, {"u_fixed", t.u_fixed},
           {"provenance", prov}};
    j["value"] = t.value ? Json(*t.value) : Json(nullptr);
    if (t.witness) j["witness"] = poly_json(*t.witness);
    return j;
}

Json record_json(const SearchRecord& r) {
    return Json{{"P", poly_json(r.P)},       {"height", big_json(r.height)}, {"value", ball_json(r.value)},
                {"derivative", ball_json(r.derivative)}, {"mode", r.mode}, {"meta", r.meta}};
}

struct Checks {
    Json list = Json::array();
    bool hard_failure = false;

    void add(const std::string& name, bool passed, bool hard, const std::string& detail) {
        list.push_back(Json{{"name", name}, {"passed", passed}, {"hard", hard}, {"detail", detail}});
        if (!passed && hard) hard_failure = true;
    }
    void skip(const std::string& name, const std::string& why) {
        list.push_back(Json{{"name", name}, {"passed", nullptr}, {"hard", false}, {"detail", why}});
    }
};

Json envelope(const std::string& kind, const NumberSpec& spec, const Config& cfg) {
    return Json{{"kind", kind}, {"input", spec_to_json(spec)}, {"config", config_json(cfg)}, {"versions", versions_json()}};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

bool matches(const std::optional<std::vector<Rat>>& want, const ExponentValue& got) {
    return !want || *want == got.candidates;
}

std::string show(const std::vector<Rat>& v) {
    ExponentValue e;
    e.candidates = v;
    return value_string(e);
}

std::vector<GridPoint> grid_points(const std::vector<Real>& grid, int n, const Config& cfg) {
    std::vector<GridPoint> out;
    for (const auto& H : grid) {
        SearchMode m = SearchMode::Reduce;
        if (cfg.mode == "enumerate") {
            m = SearchMode::Enumerate;
        } else if (cfg.mode == "auto") {
            const double boxes = std::pow(2 * std::floor(H.to_double()) + 1, n + 1);
            if (boxes <= static_cast<double>(cfg.budget)) m = SearchMode::Enumerate;
        }
        out.push_back({H, m});
    }
    return out;
}

// keeps the worst exit code seen: acceptance failures outrank budget, budget outranks input
int worse(int a, int b) {
    auto rank = [](int c) { return c == kExitAcceptance ? 3 : c == kExitBudget ? 2 : c == kExitInput ? 1 : 0; };
    return rank(b) > rank(a) ? b : a;
}

}  // namespace

Outcome run_classify(const NumberSpec& spec, const std::vector<int>& n_list, const Config& cfg) {
    Outcome out;
    Json& r = out.report = envelope("classify", spec, cfg);
    const FieldInvariants I = resolve(spec, cfg);
    r["number"] = number_json(I);
    const int d = I.xi.degree();
    const auto tno = tn_options(cfg);

    std::vector<int> ns = n_list;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    Checks checks;
    Json verdicts = Json::array();
    std::optional<Rat> prev;
    int prev_n = 0;
    for (int n : ns) {
        Json row{{"n", n}};
        std::optional<ExponentVerdict> w, wt;
        try {
            w = classify_w(I, n, tno);
            row["w"] = verdict_json(*w);
        } catch (const Error& e) {
            row["w"] = Json{{"error", error_json(e)}};
            out.exit_code = worse(out.exit_code, exit_code_for(e.code()));
        }
        try {
            wt = classify_wtilde(I, n, tno);
            row["wtilde"] = verdict_json(*wt);
        } catch (const Error& e) {
            row["wtilde"] = Json{{"error", error_json(e)}};
            out.exit_code = worse(out.exit_code, exit_code_for(e.code()));
        }
        verdicts.push_back(row);
        const std::string tag = " n=" + std::to_string(n);

        if (w && w->value.determined() && d >= n + 2 && !I.real) {
            const Rat wn = w->value.value();
            try {
                UvValues uv = u_v_values(n, tn_from_theorems(I, n, tno));
                const bool ok = uv.u.determined() && uv.u.value() == wn && uv.v.determined() &&
                                uv.v.value() == Rat(n - 1) - wn;
                checks.add("agreement with max{(n-1)/2, t_n-1}" + tag, ok, true,
                           "w = " + wn.get_str() + ", u = " + value_string(uv.u));
            } catch (const Error& e) {
                checks.skip("agreement with max{(n-1)/2, t_n-1}" + tag, e.what());
            }
            const bool in_range = wn == make_rat(n - 1, 2) || wn == make_rat(n, 2);
            checks.add("w range" + tag, in_range, true, "w = " + wn.get_str());
            if (wt && wt->value.determined()) {
                const Rat wtn = wt->value.value();
                const bool wt_range = wtn == make_rat(n - 2, 2) || wtn == make_rat(n - 1, 2);
                checks.add("w_tilde range" + tag, wt_range, true, "w_tilde = " + wtn.get_str());
                checks.add("w = n/2 iff w_tilde = (n-2)/2" + tag,
                           (wtn == make_rat(n - 2, 2)) == (wn == make_rat(n, 2)), true,
                           "w = " + wn.get_str() + ", w_tilde = " + wtn.get_str());
            }
        }
        if (w && w->value.determined()) {
            if (prev)
                checks.add("monotone in n" + tag, *prev <= w->value.value(), true,
                           "w_" + std::to_string(prev_n) + " = " + prev->get_str() + ", w" + tag.substr(2) + " = " +
                               w->value.value().get_str());
            prev = w->value.value();
            prev_n = n;
        }
        for (const auto& e : spec.expect) {
            if (e.n != n) continue;
            if (e.w)
                checks.add("expected w" + tag, w && matches(e.w, w->value), true,
                           "want " + show(*e.w) + ", got " + (w ? value_string(w->value) : std::string("error")));
            if (e.wtilde)
                checks.add("expected w_tilde" + tag, wt && matches(e.wtilde, wt->value), true,
                           "want " + show(*e.wtilde) + ", got " + (wt ? value_string(wt->value) : std::string("error")));
        }
    }

    r["verdicts"] = verdicts;
    r["checks"] = checks.list;
    if (checks.hard_failure) out.exit_code = worse(out.exit_code, kExitAcceptance);
    return out;
}

Outcome run_verify(const NumberSpec& spec, int n, const std::optional<Rat>& w_opt, const Config& cfg) {
    Outcome out;
    Json& r = out.report = envelope("verify", spec, cfg);
    const FieldInvariants I = resolve(spec, cfg);
    r["number"] = number_json(I);
    r["n"] = n;
    const auto tno = tn_options(cfg);
    const auto so = search_options(cfg);

    Rat w;
    if (w_opt) {
        w = *w_opt;
        r["w_source"] = "given";
    } else {
        ExponentVerdict v = classify_w(I, n, tno);
        if (!v.value.determined())
            throw Error(ErrorCode::GapCase, "w_" + std::to_string(n) + " is " + value_string(v.value) + "; pass --w");
        w = v.value.value();
        r["w_source"] = "classified";
    }
    r["w"] = rat_json(w);

    const std::vector<Real> grid = config_grid(cfg);
    const std::vector<GridPoint> points = grid_points(grid, n, cfg);
    Checks checks;
    const bool hard = cfg.strict;
    auto fail_section = [&](const char* name, const Error& e) {
        r[name] = Json{{"error", error_json(e)}};
        out.exit_code = worse(out.exit_code, exit_code_for(e.code()));
    };

    try {
        EmpiricalExponent ex = empirical_exponent(I, n, points, so);
        Json pts = Json::array();
        for (std::size_t i = 0; i < ex.records.size(); ++i) {
            Json p = record_json(ex.records[i]);
            p["H"] = ex.grid[i].H.to_string(8);
            pts.push_back(p);
        }
        r["exponent"] = Json{{"slope", decimal_json(ex.fit.slope)},
                             {"intercept", decimal_json(ex.fit.intercept)},
                             {"band", decimal_json(ex.fit.band)},
                             {"records", pts}};
        const double target = w.get_d();
        checks.add("exponent slope within 0.15 of w", std::abs(ex.fit.slope - target) <= 0.15, hard,
                   "slope " + fmt(ex.fit.slope) + ", w " + w.get_str());

        // running minimum of |P|^2 H(P)^(d-2) over the records
        std::vector<double> x, y;
        Json run = Json::array();
        double m = HUGE_VAL;
        for (std::size_t i = 0; i < ex.records.size(); ++i) {
            const double v = liouville_check(I, ex.records[i].P, cfg.prec).mid().to_double();
            m = std::min(m, v);
            run.push_back(decimal_json(m));
            x.push_back(std::log(ex.grid[i].H.to_double()));
            y.push_back(std::log(m));
        }
        const LineFit lf = fit_line(x, y);
        r["liouville"] = Json{{"running_min", run}, {"slope", decimal_json(lf.slope)}};
        checks.add("Liouville running minimum positive and flat", m > 0 && std::abs(lf.slope) <= 0.1, hard,
                   "min " + fmt(m) + ", slope " + fmt(lf.slope));
    } catch (const Error& e) {
        fail_section("exponent", e);
    }

    try {
        MinimaProfile mp = minima_profile(I, n, w, grid, cfg.prec, tno);
        Json rows = Json::array();
        for (const auto& row : mp.rows) {
            Json lam = Json::array();
            for (const auto& l : row.lambda) lam.push_back(l.mid().to_string(10));
            rows.push_back(Json{{"H", row.H.to_string(8)}, {"lambda", lam}});
        }
        Json slopes = Json::array(), res = Json::array();
        for (double s : mp.slopes) slopes.push_back(decimal_json(s));
        for (double s : mp.residuals) res.push_back(decimal_json(s));
        Json pred = nullptr;
        if (mp.predicted) {
            pred = Json::array();
            for (const auto& p : *mp.predicted) pred.push_back(rat_json(p));
            double worst = 0;
            for (std::size_t i = 0; i < mp.slopes.size(); ++i)
                worst = std::max(worst, std::abs(mp.slopes[i] - (*mp.predicted)[i].get_d()));
            checks.add("minima slopes within 0.15 of prediction", worst <= 0.15, hard, "max deviation " + fmt(worst));
        } else {
            checks.skip("minima slopes within 0.15 of prediction", "no prediction for this t_n");
        }
        r["minima"] = Json{{"slopes", slopes}, {"residuals", res}, {"predicted", pred},
                           {"prediction_rule", mp.prediction_rule}, {"rows", rows}};
    } catch (const Error& e) {
        fail_section("minima", e);
    }

    try {
        RecordConstants rc = record_constant_tracker(I, n, points, so, tno);
        Json prod = Json::array(), sup = Json::array();
        for (double p : rc.products) prod.push_back(decimal_json(p));
        for (double p : rc.running_sup) sup.push_back(decimal_json(p));
        r["record_constants"] = Json{{"w", rat_json(rc.w)}, {"products", prod}, {"running_sup", sup},
                                     {"slope", decimal_json(rc.fit.slope)}, {"band", decimal_json(rc.fit.band)}};
        checks.add("record product slope within 0.1 of 0", std::abs(rc.fit.slope) <= 0.1, hard,
                   "slope " + fmt(rc.fit.slope));
    } catch (const Error& e) {
        fail_section("record_constants", e);
    }

    r["checks"] = checks.list;
    if (checks.hard_failure) out.exit_code = worse(out.exit_code, kExitAcceptance);
    return out;
}

Outcome run_tn(const NumberSpec& spec, int n, const std::optional<RatPoly>& mu_poly, bool invert, const Config& cfg) {
    Outcome out;
    Json& r = out.report = envelope("tn", spec, cfg);
    const FieldInvariants I = resolve(spec, cfg);
    r["number"] = number_json(I);
    r["n"] = n;
    const auto tno = tn_options(cfg);

    TnVerdict t = tn_from_theorems(I, n, tno);
    r["t_n"] = tn_json(t);
    UvValues uv = u_v_values(n, t);
    r["u"] = candidates_json(uv.u);
    r["v"] = candidates_json(uv.v);

    TnSearchResult s = tn_lower_bound_search(I, n, tno);
    r["search"] = Json{{"dim", s.dim}, {"f", poly_json(s.f)}, {"examined", s.examined}, {"exhausted", s.exhausted}};

    FieldElem mu;
    if (mu_poly) {
        mu = I.field->elem(*mu_poly);
        if (invert) mu = mu.inverse();
        r["mu"] = Json{{"poly", ratpoly_json(*mu_poly)}, {"inverted", invert}};
    } else {
        const IntPoly f = t.witness ? *t.witness : s.f;
        mu = I.field->elem(to_rat(f)).inverse();
        r["mu"] = Json{{"poly", ratpoly_json(to_rat(f))}, {"inverted", true}};
    }
    IsotropicSpace sp = dim_V(I, mu, n);
    Json basis = Json::array();
    for (const auto& b : sp.basis) basis.push_back(ratpoly_json(b));
    r["space"] = Json{{"dim", sp.dim()}, {"basis", basis}};

    Checks checks;
    checks.add("reality of the basis", verify_reality(I, sp), true, "sigma(mu f(xi)) = mu f(xi)");
    checks.add("dim <= d/2", 2 * static_cast<int>(sp.dim()) <= I.xi.degree(), true,
               "dim " + std::to_string(sp.dim()) + ", d " + std::to_string(I.xi.degree()));
    if (n % 2 == 0 && 2 * static_cast<int>(sp.dim()) == n + 2)
        checks.add("direct sum at dim (n+2)/2", direct_sum_check(sp), true, "basis + X basis spans W_{n+1}");
    r["checks"] = checks.list;
    if (checks.hard_failure) out.exit_code = kExitAcceptance;
    return out;
}

Outcome run_search(const NumberSpec& spec, int n, const Real& H, SearchMode mode, const Config& cfg) {
    Outcome out;
    Json& r = out.report = envelope("search", spec, cfg);
    const FieldInvariants I = resolve(spec, cfg);
    r["number"] = number_json(I);
    r["n"] = n;
    r["H"] = H.to_string(8);
    r["mode"] = to_string(mode);
    SearchRecord rec = best_poly_search(I, n, H, mode, search_options(cfg));
    r["record"] = record_json(rec);
    try {
        r["liouville"] = ball_json(liouville_check(I, rec.P, cfg.prec));
    } catch (const Error& e) {
        r["liouville"] = Json{{"error", error_json(e)}};
    }
    try {
        Approximant a = approximant_extract(I, rec.P, cfg.prec);
        r["approximant"] = Json{{"poly", poly_json(a.poly)},
                                {"alpha", {{"re", a.alpha.re().to_string(20)}, {"im", a.alpha.im().to_string(20)}}},
                                {"distance", ball_json(a.distance)},
                                {"ratio", ball_json(a.ratio)},
                                {"height", big_json(a.height_proxy)}};
    } catch (const Error& e) {
        r["approximant"] = Json{{"error", error_json(e)}};
    }
    return out;
}

Outcome run_minima(const NumberSpec& spec, int n, const std::optional<Rat>& w_opt, const Config& cfg) {
    Outcome out;
    Json& r = out.report = envelope("minima", spec, cfg);
    const FieldInvariants I = resolve(spec, cfg);
    r["number"] = number_json(I);
    r["n"] = n;
    const auto tno = tn_options(cfg);
    Rat w;
    if (w_opt) {
        w = *w_opt;
    } else {
        ExponentVerdict v = classify_w(I, n, tno);
        if (!v.value.determined())
            throw Error(ErrorCode::GapCase, "w_" + std::to_string(n) + " is " + value_string(v.value) + "; pass --w");
        w = v.value.value();
    }
    r["w"] = rat_json(w);
    MinimaProfile mp = minima_profile(I, n, w, config_grid(cfg), cfg.prec, tno);
    Json rows = Json::array();
    for (const auto& row : mp.rows) {
        Json lam = Json::array(), vecs = Json::array();
        for (const auto& l : row.lambda) lam.push_back(ball_json(l));
        for (const auto& v : row.vectors) vecs.push_back(intvec_json(v));
        rows.push_back(Json{{"H", row.H.to_string(8)}, {"lambda", lam}, {"vectors", vecs}});
    }
    Json slopes = Json::array(), res = Json::array();
    for (double s : mp.slopes) slopes.push_back(decimal_json(s));
    for (double s : mp.residuals) res.push_back(decimal_json(s));
    Json pred = nullptr;
    if (mp.predicted) {
        pred = Json::array();
        for (const auto& p : *mp.predicted) pred.push_back(rat_json(p));
    }
    r["profile"] = Json{{"slopes", slopes}, {"residuals", res}, {"predicted", pred},
                        {"prediction_rule", mp.prediction_rule}, {"rows", rows}};
    return out;
}

Outcome run_corpus(const std::vector<NumberSpec>& entries, const Config& cfg) {
    std::vector<Outcome> results(entries.size());
    Config inner = cfg;
    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(entries.size())));
    if (workers > 1) inner.workers = 1;

    auto one = [&](std::size_t i) {
        try {
            results[i] = run_classify(entries[i], entries[i].n, inner);
        } catch (const Error& e) {
            results[i].report = envelope("classify", entries[i], inner);
            results[i].report["error"] = error_json(e);
            results[i].exit_code = exit_code_for(e.code());
        }
    };
    if (workers == 1) {
        for (std::size_t i = 0; i < entries.size(); ++i) one(i);
    } else {
        // static striping; results land by index so the merge order is fixed
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < entries.size(); i += workers) one(i);
            });
        for (auto& th : pool) th.join();
    }

    Outcome out;
    Json& r = out.report;
    r["kind"] = "corpus";
    r["config"] = config_json(cfg);
    r["versions"] = versions_json();
    Json table = Json::array(), reports = Json::array();
    std::size_t passed = 0, failed = 0, errors = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Json& rep = results[i].report;
        reports.push_back(rep);
        out.exit_code = worse(out.exit_code, results[i].exit_code);
        if (rep.contains("error")) {
            ++errors;
            table.push_back(Json{{"entry", entries[i].name}, {"n", nullptr}, {"w", nullptr}, {"wtilde", nullptr},
                                 {"status", "error: " + rep["error"]["code"].get<std::string>()}});
            continue;
        }
        for (const auto& c : rep["checks"]) {
            if (c["passed"].is_null()) continue;
            c["passed"].get<bool>() ? ++passed : ++failed;
        }
        for (const auto& v : rep["verdicts"]) {
            auto cell = [](const Json& x) -> Json {
                if (x.contains("error")) return "error: " + x["error"]["code"].get<std::string>();
                std::string s = x["status"] == "gap" ? "gap{" : "";
                const auto& cs = x["candidates"];
                for (std::size_t k = 0; k < cs.size(); ++k) {
                    Rat q = rat_from_json(cs[k]);
                    s += (k ? "," : "") + q.get_str();
                }
                return x["status"] == "gap" ? s + "}" : s;
            };
            const bool gap = (v["w"].contains("status") && v["w"]["status"] == "gap") ||
                             (v["wtilde"].contains("status") && v["wtilde"]["status"] == "gap");
            const bool err = v["w"].contains("error") || v["wtilde"].contains("error");
            table.push_back(Json{{"entry", entries[i].name}, {"n", v["n"]}, {"w", cell(v["w"])},
                                 {"wtilde", cell(v["wtilde"])}, {"status", err ? "error" : gap ? "gap" : "determined"}});
        }
    }
    r["summary"] = Json{{"entries", entries.size()}, {"errors", errors}, {"checks_passed", passed},
                        {"checks_failed", failed}, {"table", table}};
    r["reports"] = reports;
    return out;
}

}  // namespace algapprox::cli
