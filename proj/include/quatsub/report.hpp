#ifndef QUATSUB_REPORT_HPP
#define QUATSUB_REPORT_HPP

// Deterministic JSON emission: object keys sorted (std::map), floats printed
// with 17 significant digits, no locale dependence. Byte-identical output for
// identical inputs is a hard requirement, so no timestamps live in this tree.

#include "quatsub/classify.hpp"
#include "quatsub/fixtures.hpp"
#include "quatsub/theorems.hpp"

#include <cstdio>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace quatsub {

inline constexpr const char* kToolVersion = "1.0.0";

class Json;
using JsonArray = std::vector<Json>;
using JsonObject = std::map<std::string, Json>;

class Json {
public:
    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, JsonArray, JsonObject> v;

    Json() : v(nullptr) {}
    Json(bool b) : v(b) {}
    Json(int i) : v(static_cast<std::int64_t>(i)) {}
    Json(std::int64_t i) : v(i) {}
    Json(std::uint64_t i) : v(static_cast<std::int64_t>(i)) {}
    Json(double d) : v(d) {}
    Json(const char* s) : v(std::string(s)) {}
    Json(std::string s) : v(std::move(s)) {}
    Json(JsonArray a) : v(std::move(a)) {}
    Json(JsonObject o) : v(std::move(o)) {}

    Json& operator[](const std::string& key) {
        if (!std::holds_alternative<JsonObject>(v)) v = JsonObject{};
        return std::get<JsonObject>(v)[key];
    }
};

namespace detail {

inline void json_escape(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

inline void json_write(std::string& out, const Json& j, int indent) {
    const std::string pad(2 * indent, ' ');
    const std::string pad1(2 * (indent + 1), ' ');
    if (std::holds_alternative<std::nullptr_t>(j.v)) {
        out += "null";
    } else if (const bool* b = std::get_if<bool>(&j.v)) {
        out += *b ? "true" : "false";
    } else if (const std::int64_t* i = std::get_if<std::int64_t>(&j.v)) {
        out += std::to_string(*i);
    } else if (const double* d = std::get_if<double>(&j.v)) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", *d);
        out += buf;
    } else if (const std::string* s = std::get_if<std::string>(&j.v)) {
        json_escape(out, *s);
    } else if (const JsonArray* a = std::get_if<JsonArray>(&j.v)) {
        if (a->empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t k = 0; k < a->size(); ++k) {
            out += pad1;
            json_write(out, (*a)[k], indent + 1);
            if (k + 1 < a->size()) out += ",";
            out += "\n";
        }
        out += pad + "]";
    } else {
        const JsonObject& o = std::get<JsonObject>(j.v);
        if (o.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t k = 0;
        for (const auto& [key, val] : o) {
            out += pad1;
            json_escape(out, key);
            out += ": ";
            json_write(out, val, indent + 1);
            if (++k < o.size()) out += ",";
            out += "\n";
        }
        out += pad + "}";
    }
}

}  // namespace detail

inline std::string to_json(const Json& j) {
    std::string out;
    detail::json_write(out, j, 0);
    out += "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Report assembly

inline Json json_vector(const VectorXd& v) {
    JsonArray a;
    for (int i = 0; i < v.size(); ++i) a.emplace_back(v(i));
    return Json(std::move(a));
}

inline Json theorem_json(const TheoremReport& r) {
    Json j;
    j["id"] = r.id;
    j["applicable"] = r.applicable;
    j["variant"] = r.variant;
    j["condition_residual"] = r.condition_residual;
    j["direct_residual"] = r.direct_residual;
    j["condition_pass"] = r.condition_pass;
    j["direct_pass"] = r.direct_pass;
    j["equivalent"] = r.equivalent;
    j["pass"] = r.pass;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline Json foliation_json(const FoliationFlags& f) {
    Json j;
    j["totally_geodesic"] = f.totally_geodesic;
    j["umbilic"] = f.umbilic;
    j["spheric_checked"] = f.spheric_checked;
    j["spheric"] = f.spheric;
    j["tg_residual"] = f.tg_residual;
    j["umbilic_residual"] = f.umbilic_residual;
    j["spheric_residual"] = f.spheric_residual;
    return j;
}

inline Json classification_json(const ClassificationVerdict& c) {
    Json j;
    j["overall"] = overall_name(c.overall);
    j["uniform"] = c.uniform;
    j["worst_angle"] = c.worst_angle;
    JsonObject per;
    for (RTag r : kRTags) per[rtag_name(r)] = per_r_name(c.per_r[static_cast<int>(r)]);
    j["per_structure"] = Json(per);
    Json obs;
    obs["equal_dims"] = c.obstruction.equal_dims;
    obs["note"] = c.obstruction.note;
    j["dimension_obstruction"] = obs;
    return j;
}

inline Json validation_json(const ValidationReport& v) {
    Json j;
    j["rank_ok"] = v.rank_ok;
    j["isometry_ok"] = v.isometry_ok;
    j["worst_isometry_residual"] = v.worst_isometry_residual;
    j["worst_point"] = json_vector(v.worst_point);
    if (!v.message.empty()) j["message"] = v.message;
    return j;
}

// The full `report --all` tree for one loaded fixture. When all_pass is given,
// it is AND-ed with every verdict that counts toward the exit code: validation,
// structure axioms, and each applicable theorem check. Descriptive results
// (harmonic or not, product type) are reported but are not verdicts.
inline Json run_report(const LoadedFixture& lf, double tol = kDefaultTol,
                       bool* all_pass = nullptr, ProductReport* product_out = nullptr) {
    auto verdict = [&](bool ok) {
        if (all_pass) *all_pass = *all_pass && ok;
        return ok;
    };
    auto theorem_verdict = [&](const TheoremReport& r) {
        verdict(!r.applicable || r.pass);
        return theorem_json(r);
    };
    Json root;
    root["tool_version"] = kToolVersion;
    root["fixture"] = lf.manifest.name;
    char digest[32];
    std::snprintf(digest, sizeof(digest), "%016llx",
                  static_cast<unsigned long long>(lf.digest));
    root["manifest_digest"] = std::string(digest);
    root["samples"] = static_cast<std::int64_t>(lf.points.size());
    root["tolerance"] = tol;

    ValidationReport vr = validate_submersion(lf.fix, lf.points);
    verdict(vr.rank_ok && vr.isometry_ok);
    root["validation"] = validation_json(vr);

    if (lf.triple) {
        root["classification"] = classification_json(classify(lf.fix, *lf.triple, lf.points));
        StructureReport sr =
            validate_structure(*lf.triple, lf.fix.total, lf.points,
                               lf.manifest.structure == StructureKind::Explicit);
        Json sj;
        sj["worst_square"] = sr.worst_square;
        sj["worst_anticommute"] = sr.worst_anticommute;
        sj["worst_cyclic"] = sr.worst_cyclic;
        sj["worst_metric"] = sr.worst_metric;
        sj["parallel_checked"] = sr.parallel_checked;
        sj["worst_parallel"] = sr.worst_parallel;
        sj["pass"] = verdict(sr.pass());
        root["structure"] = sj;
    }

    JsonObject theorems;
    theorems["integrability"] =
        theorem_verdict(horizontal_integrability(lf.fix, lf.points, tol));
    if (lf.triple) {
        Thm31Report t31 = thm31_check(lf.fix, *lf.triple, lf.points, tol);
        Json j31 = theorem_verdict(t31.report);
        j31["identity_residual"] = t31.worst_identity_residual;
        j31["max_abs_term"] = t31.max_abs_term;
        theorems["thm31"] = j31;
        theorems["thm32"] = theorem_verdict(thm32_check(lf.fix, *lf.triple, lf.points, tol));
        theorems["thm33"] = theorem_verdict(thm33_check(lf.fix, *lf.triple, lf.points, tol));
        theorems["thm34"] = theorem_verdict(thm34_check(lf.fix, *lf.triple, lf.points, tol));
        theorems["thm35"] = theorem_verdict(thm35_check(lf.fix, *lf.triple, lf.points, tol));
        theorems["thm46"] = theorem_verdict(thm46_check(lf.fix, *lf.triple, lf.points, tol));
        Lemma36Report l36 = lemma36_check(lf.fix, *lf.triple, lf.points);
        Json lj;
        lj["applicable"] = l36.applicable;
        lj["worst"] = l36.worst;
        JsonArray res;
        for (double r : l36.residuals) res.emplace_back(r);
        lj["residuals"] = Json(res);
        lj["pass"] = verdict(!l36.applicable || l36.pass(tol));
        theorems["lemma36"] = lj;
    }
    theorems["thm44"] = theorem_verdict(thm44_check(lf.fix, lf.points, tol));
    root["theorems"] = Json(theorems);

    ProductReport pr = product_classification(lf.fix, lf.points, tol);
    if (product_out) *product_out = pr;
    Json pj;
    pj["type"] = product_name(pr.type);
    pj["note"] = std::string("flags consistent with ") + product_name(pr.type);
    pj["horizontal"] = foliation_json(pr.horizontal);
    pj["vertical"] = foliation_json(pr.vertical);
    root["product"] = pj;

    HarmonicityReport h = harmonicity(lf.fix, lf.points, tol);
    Json hj;
    hj["is_harmonic"] = h.is_harmonic;
    hj["worst_trace_residual"] = h.worst_trace_residual;
    hj["worst_consistency"] = h.worst_consistency;
    root["harmonicity"] = hj;

    return root;
}

}  // namespace quatsub

#endif  // QUATSUB_REPORT_HPP
