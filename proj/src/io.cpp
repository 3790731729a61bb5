#include "cubic/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cubic/errors.hpp"

using nlohmann::json;

namespace cubic {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file '" + path + "'");
    out << content;
    if (!out) throw Error("write failed for '" + path + "'");
}

namespace {

json parse_json_file(const std::string& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ValidationError("JSON parse error in '" + path + "': " + e.what());
    }
}

}  // namespace

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

double parse_real(const json& j, const std::string& what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        try {
            std::size_t pos = 0;
            double v = std::stod(j.get<std::string>(), &pos);
            if (pos != j.get<std::string>().size())
                throw ValidationError("trailing characters in real literal for " + what);
            return v;
        } catch (const std::invalid_argument&) {
            throw ValidationError("cannot parse real literal for " + what);
        }
    }
    throw ValidationError(what + " must be a number or a numeric string");
}

json point_to_json(const ProjectivePoint& p) {
    json arr = json::array();
    for (const auto& c : p.coords()) arr.push_back(c.get_str());
    return arr;
}

ProjectivePoint point_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ValidationError("point must be a coordinate array");
    std::vector<Integer> coords;
    for (const auto& c : j) {
        if (!c.is_string()) throw ValidationError("point coordinates must be strings");
        coords.push_back(parse_integer(c.get<std::string>()));
    }
    return ProjectivePoint(std::move(coords));
}

json form_to_json(const HomogeneousForm& f) {
    if (f.num_vars() < 2)
        throw ValidationError("form files describe hypersurfaces: need at least two variables");
    json monomials = json::array();
    for (const auto& [exps, coeff] : f.terms()) {
        json mono;
        mono["coeff"] = rational_to_string(coeff);
        mono["exps"] = exps;
        monomials.push_back(mono);
    }
    json out;
    out["n"] = f.num_vars() - 2;
    out["degree"] = f.degree();
    out["monomials"] = monomials;
    return out;
}

HomogeneousForm form_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("form file must hold a JSON object");
    if (!j.contains("n") || !j["n"].is_number_unsigned())
        throw ValidationError("form file needs an unsigned 'n' (hypersurface dimension)");
    if (!j.contains("degree") || !j["degree"].is_number_unsigned())
        throw ValidationError("form file needs an unsigned 'degree'");
    if (!j.contains("monomials") || !j["monomials"].is_array())
        throw ValidationError("form file needs a 'monomials' array");
    std::size_t num_vars = j["n"].get<std::size_t>() + 2;
    unsigned degree = j["degree"].get<unsigned>();
    if (degree < 1 || degree > 3) throw ValidationError("form degree must be 1, 2 or 3");

    HomogeneousForm f(num_vars, degree);
    std::size_t idx = 0;
    for (const auto& mono : j["monomials"]) {
        ++idx;
        if (!mono.contains("coeff") || !mono["coeff"].is_string())
            throw ValidationError("monomial #" + std::to_string(idx) + ": missing 'coeff' string");
        if (!mono.contains("exps") || !mono["exps"].is_array())
            throw ValidationError("monomial #" + std::to_string(idx) + ": missing 'exps' array");
        Rational coeff = parse_rational(mono["coeff"].get<std::string>());
        HomogeneousForm::ExponentVec exps;
        for (const auto& e : mono["exps"]) {
            if (!e.is_number_unsigned())
                throw ValidationError("monomial #" + std::to_string(idx) +
                                      ": exponents must be unsigned");
            exps.push_back(e.get<unsigned>());
        }
        if (exps.size() != num_vars)
            throw ValidationError("monomial #" + std::to_string(idx) +
                                  ": exponent vector length disagrees with n + 2");
        unsigned sum = 0;
        for (unsigned e : exps) sum += e;
        if (sum != degree)
            throw ValidationError("monomial #" + std::to_string(idx) +
                                  ": exponents sum to " + std::to_string(sum) +
                                  ", declared degree is " + std::to_string(degree));
        f.add_term(exps, coeff);
    }
    return f;
}

HomogeneousForm parse_form_file(const std::string& path) {
    return form_from_json(parse_json_file(path));
}

void write_form_file(const HomogeneousForm& f, const std::string& path) {
    write_text_file(path, form_to_json(f).dump(2) + "\n");
}

std::vector<ProjectivePoint> parse_points_file(const std::string& path) {
    json j = parse_json_file(path);
    if (!j.is_array()) throw ValidationError("points file must hold a JSON array");
    std::vector<ProjectivePoint> out;
    for (const auto& p : j) out.push_back(point_from_json(p));
    return out;
}

void write_points_file(const std::vector<ProjectivePoint>& pts, const std::string& path) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(point_to_json(p));
    write_text_file(path, arr.dump(2) + "\n");
}

// ---------------------------------------------------------------------
// span state
// ---------------------------------------------------------------------

namespace {

json step_to_json(const SpanStep& step) {
    json out;
    out["kind"] = step.kind == SpanStep::Kind::Secant ? "secant" : "tangent";
    out["point"] = point_to_json(step.result);
    out["p"] = point_to_json(step.parent_p);
    out["q"] = point_to_json(step.parent_q);
    out["line"] = json::array({point_to_json(step.line.basis_a()),
                               point_to_json(step.line.basis_b())});
    out["generation"] = step.generation;
    return out;
}

SpanStep step_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind != "secant" && kind != "tangent")
        throw ValidationError("unknown provenance step kind '" + kind + "'");
    ProjectivePoint result = point_from_json(j.at("point"));
    ProjectivePoint p = point_from_json(j.at("p"));
    ProjectivePoint q = point_from_json(j.at("q"));
    json line = j.at("line");
    ProjectiveLine l =
        ProjectiveLine::through(point_from_json(line.at(0)), point_from_json(line.at(1)));
    unsigned gen = j.at("generation").get<unsigned>();
    return SpanStep{kind == "secant" ? SpanStep::Kind::Secant : SpanStep::Kind::Tangent,
                    std::move(result), std::move(p), std::move(q), std::move(l), gen};
}

}  // namespace

json span_state_to_json(const SpanState& state) {
    json out;
    json cfg;
    cfg["max_generations"] = state.config.max_generations;
    cfg["residual_height_cap"] = state.config.residual_height_cap.get_str();
    cfg["direction_height"] = state.config.direction_height;
    out["config"] = cfg;
    out["fixed_point"] = state.fixed_point_reached;
    json gens = json::array();
    for (const auto& gen : state.generations) {
        json g = json::array();
        for (const auto& p : gen) g.push_back(point_to_json(p));
        gens.push_back(g);
    }
    out["generations"] = gens;
    json prov = json::array();
    for (const auto& [pt, step] : state.provenance) prov.push_back(step_to_json(step));
    out["provenance"] = prov;
    return out;
}

SpanState span_state_from_json(const json& j) {
    SpanState state;
    const json& cfg = j.at("config");
    state.config.max_generations = cfg.at("max_generations").get<unsigned>();
    state.config.residual_height_cap =
        parse_integer(cfg.at("residual_height_cap").get<std::string>());
    state.config.direction_height = cfg.at("direction_height").get<unsigned>();
    state.fixed_point_reached = j.at("fixed_point").get<bool>();
    for (const auto& gen : j.at("generations")) {
        std::vector<ProjectivePoint> pts;
        for (const auto& p : gen) pts.push_back(point_from_json(p));
        state.generations.push_back(std::move(pts));
    }
    for (const auto& s : j.at("provenance")) {
        SpanStep step = step_from_json(s);
        state.provenance.emplace(step.result, std::move(step));
    }
    if (state.generations.empty()) throw ValidationError("span file has no generations");
    return state;
}

SpanState parse_span_file(const std::string& path) {
    return span_state_from_json(parse_json_file(path));
}

void write_span_file(const SpanState& state, const std::string& path) {
    write_text_file(path, span_state_to_json(state).dump(2) + "\n");
}

// ---------------------------------------------------------------------
// real systems and certificates
// ---------------------------------------------------------------------

RealSystem parse_system_file(const std::string& path) {
    json j = parse_json_file(path);
    if (!j.is_object() || !j.contains("vars") || !j.contains("polynomials"))
        throw ValidationError("system file needs 'vars' and 'polynomials'");
    std::size_t n = j["vars"].get<std::size_t>();
    std::vector<RealPoly> polys;
    for (const auto& pj : j["polynomials"]) {
        RealPoly poly(n);
        if (!pj.contains("terms") || !pj["terms"].is_array())
            throw ValidationError("polynomial needs a 'terms' array");
        for (const auto& term : pj["terms"]) {
            double coeff = parse_real(term.at("coeff"), "coefficient");
            RealPoly::ExponentVec exps;
            for (const auto& e : term.at("exps")) exps.push_back(e.get<unsigned>());
            if (exps.size() != n)
                throw ValidationError("term exponent vector length disagrees with 'vars'");
            poly.add_term(exps, coeff);
        }
        polys.push_back(std::move(poly));
    }
    if (polys.empty()) throw ValidationError("system file holds no polynomials");
    return RealSystem(std::move(polys));
}

json certificate_to_json(const KantorovichCertificate& cert) {
    json out;
    out["alpha"] = format_real(cert.alpha);
    out["beta"] = format_real(cert.beta);
    out["gamma"] = format_real(cert.gamma);
    out["h"] = format_real(cert.h);
    out["r"] = format_real(cert.r);
    out["accepted"] = cert.accepted;
    if (!cert.accepted) out["reason"] = cert.reason;
    if (cert.root) {
        json root = json::array();
        for (Eigen::Index i = 0; i < cert.root->size(); ++i)
            root.push_back(format_real((*cert.root)[i]));
        out["root"] = root;
        out["residual_norm"] = format_real(cert.residual_norm);
    }
    return out;
}

std::string RunReport::to_string() const {
    json out;
    out["command"] = command;
    out["config"] = config.is_null() ? json::object() : config;
    out["results"] = results.is_null() ? json::object() : results;
    out["truncation"] = truncation.is_null() ? json::object() : truncation;
    return out.dump(2) + "\n";
}

void write_report(const RunReport& report, const std::string& path) {
    write_text_file(path, report.to_string());
}

}  // namespace cubic
