#include "algapprox/cli.hpp"

#include <sstream>

namespace algapprox::cli {

namespace {

std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_object() && v.contains("num") && v.contains("den") && v.size() == 2) {
        auto part = [](const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
        const std::string den = part(v["den"]);
        return den == "1" ? part(v["num"]) : part(v["num"]) + "/" + den;
    }
    if (v.is_object() && v.contains("decimal") && v.contains("digits")) return v["decimal"].get<std::string>();
    if (v.is_object() && v.contains("mid") && v.contains("rad")) return v["mid"].get<std::string>() + " +/- " + v["rad"].get<std::string>();
    return v.dump();
}

bool is_leaf(const Json& v) {
    if (!v.is_structured() || v.empty()) return true;
    if (v.is_object() && ((v.contains("num") && v.size() == 2) || (v.contains("decimal") && v.contains("digits")) ||
                          (v.contains("mid") && v.contains("rad"))))
        return true;
    // short arrays of plain values print on one line
    if (v.is_array() && v.size() <= 12) {
        for (const auto& x : v)
            if (!is_leaf(x) || x.is_array()) return false;
        return true;
    }
    return false;
}

std::string leaf(const Json& v) {
    if (!v.is_array()) return scalar(v);
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar(v[i]);
    return s + "]";
}

void walk(std::ostream& os, const Json& v, int indent) {
    const std::string pad(indent, ' ');
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (is_leaf(it.value())) {
                os << pad << it.key() << ": " << leaf(it.value()) << "\n";
            } else {
                os << pad << it.key() << ":\n";
                walk(os, it.value(), indent + 2);
            }
        }
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (is_leaf(v[i])) {
                os << pad << "- " << leaf(v[i]) << "\n";
            } else {
                os << pad << "-\n";
                walk(os, v[i], indent + 2);
            }
        }
    } else {
        os << pad << leaf(v) << "\n";
    }
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void csv_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
    os << "\n";
}

std::string poly_cell(const Json& coeffs) {
    std::string s;
    for (std::size_t i = 0; i < coeffs.size(); ++i) s += (i ? " " : "") + scalar(coeffs[i]);
    return s;
}

std::string verdict_cell(const Json& v) {
    if (v.contains("error")) return "error: " + v["error"]["code"].get<std::string>();
    std::string s;
    for (std::size_t i = 0; i < v["candidates"].size(); ++i) s += (i ? " " : "") + scalar(v["candidates"][i]);
    return v["status"] == "gap" ? "gap{" + s + "}" : s;
}

void render_csv(std::ostream& os, const Json& r) {
    const std::string kind = r.value("kind", "");
    if (kind == "corpus") {
        csv_row(os, {"entry", "n", "w", "wtilde", "status"});
        for (const auto& row : r["summary"]["table"])
            csv_row(os, {row["entry"].get<std::string>(), row["n"].is_null() ? "" : row["n"].dump(),
                         row["w"].is_null() ? "" : row["w"].get<std::string>(),
                         row["wtilde"].is_null() ? "" : row["wtilde"].get<std::string>(), row["status"].get<std::string>()});
    } else if (kind == "classify") {
        csv_row(os, {"n", "w", "wtilde"});
        for (const auto& v : r["verdicts"]) csv_row(os, {v["n"].dump(), verdict_cell(v["w"]), verdict_cell(v["wtilde"])});
    } else if (kind == "minima" || kind == "verify") {
        const Json& prof = kind == "minima" ? r["profile"] : r["minima"];
        if (!prof.contains("rows")) return;
        const std::size_t k = prof["rows"].empty() ? 0 : prof["rows"][0]["lambda"].size();
        std::vector<std::string> head{"H"};
        for (std::size_t i = 0; i < k; ++i) head.push_back("lambda_" + std::to_string(i));
        csv_row(os, head);
        for (const auto& row : prof["rows"]) {
            std::vector<std::string> cells{row["H"].get<std::string>()};
            for (const auto& l : row["lambda"]) cells.push_back(l.is_string() ? l.get<std::string>() : l["mid"].get<std::string>());
            csv_row(os, cells);
        }
    } else if (kind == "search") {
        csv_row(os, {"n", "H", "mode", "height", "value", "P"});
        const Json& rec = r["record"];
        csv_row(os, {r["n"].dump(), r["H"].get<std::string>(), r["mode"].get<std::string>(), scalar(rec["height"]),
                     rec["value"]["mid"].get<std::string>(), poly_cell(rec["P"])});
    } else if (kind == "tn") {
        csv_row(os, {"n", "lower_bound", "upper_bound", "value", "dim"});
        const Json& t = r["t_n"];
        csv_row(os, {t["n"].dump(), t["lower_bound"].dump(), t["upper_bound"].dump(),
                     t["value"].is_null() ? "" : t["value"].dump(), r["space"]["dim"].dump()});
    }
}

}  // namespace

Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    if (s == "text") return Format::Text;
    throw Error(ErrorCode::InvalidInput, "unknown format: " + s);
}

std::string render(const Json& report, Format f) {
    std::ostringstream os;
    switch (f) {
        case Format::Json:
            os << report.dump(2) << "\n";
            break;
        case Format::Csv:
            render_csv(os, report);
            break;
        case Format::Text:
            walk(os, report, 0);
            break;
    }
    return os.str();
}

}  // namespace algapprox::cli
