// Command-line front end: exact analysis of rational points on cubic
// hypersurfaces, span closures, and certified real solving on the
// auxiliary Y_{B,D} systems.
//
// Exit codes: 0 success, 2 validation error, 3 rejected certification,
// 4 internal contract violation.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cubic/errors.hpp"
#include "cubic/geometry.hpp"
#include "cubic/io.hpp"
#include "cubic/newton.hpp"
#include "cubic/span.hpp"

using namespace cubic;
using nlohmann::json;

namespace {

std::vector<ProjectivePoint> parse_seed_list(const std::string& text) {
    std::vector<ProjectivePoint> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(ProjectivePoint::parse(item));
    }
    if (out.empty()) throw ValidationError("no points in seed list '" + text + "'");
    return out;
}

RealVector parse_real_list(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            vals.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ValidationError("cannot parse real literal '" + item + "'");
        }
    }
    if (vals.empty()) throw ValidationError("empty real vector literal");
    RealVector v(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
    return v;
}

json real_vector_to_json(const RealVector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(format_real(v[i]));
    return arr;
}

HomogeneousForm load_cubic(const std::string& path) {
    HomogeneousForm f = parse_form_file(path);
    if (f.degree() != 3)
        throw ValidationError("hypersurface commands need a degree-3 form file");
    return f;
}

void emit(const RunReport& report, const std::string& out_path) {
    std::string text = report.to_string();
    std::cout << text;
    if (!out_path.empty()) write_text_file(out_path, text);
}

json classify_point(const HomogeneousForm& f, const ProjectivePoint& p) {
    json entry;
    entry["point"] = point_to_json(p);
    auto [pi, sig] = second_fundamental_form(f, p);
    entry["eckardt"] = pi.is_zero();
    entry["inertia"] = json::array({sig.n_plus, sig.n_minus, sig.n_zero});
    entry["hessian_rank"] = hessian_rank_at(f, p);
    if (sig.n_zero == 0)
        entry["local_type"] = to_string(tangent_section_local_type(sig));
    else
        entry["local_type"] = "degenerate";
    return entry;
}

json span_config_to_json(const SpanConfig& cfg) {
    json out;
    out["max_generations"] = cfg.max_generations;
    out["residual_height_cap"] = cfg.residual_height_cap.get_str();
    out["direction_height"] = cfg.direction_height;
    return out;
}

int run_analyze(const std::string& form_path, const std::string& point_literal,
                const std::string& out_path) {
    HomogeneousForm f = load_cubic(form_path);
    ProjectivePoint p = ProjectivePoint::parse(point_literal);
    if (f.evaluate(p) != 0)
        throw ValidationError("point not on hypersurface: " + p.to_string());

    RunReport report;
    report.command = "analyze";
    report.config["form"] = form_path;
    report.results = classify_point(f, p);
    report.results["on_surface"] = true;
    json tp = json::array();
    for (const auto& c : tangent_plane(f, p).linear_coefficients())
        tp.push_back(rational_to_string(c));
    report.results["tangent_plane"] = tp;
    emit(report, out_path);
    return 0;
}

int run_eckardt_scan(const std::string& form_path, long height, const std::string& out_path) {
    HomogeneousForm f = load_cubic(form_path);
    PointSet pts = enumerate_points(f, HeightBound(Integer(height)));

    RunReport report;
    report.command = "eckardt-scan";
    report.config["form"] = form_path;
    report.config["height"] = height;
    json list = json::array();
    std::size_t eckardt_count = 0;
    for (const auto& p : pts.sorted()) {
        json entry = classify_point(f, p);
        if (entry["eckardt"].get<bool>()) ++eckardt_count;
        list.push_back(entry);
    }
    report.results["points"] = list;
    report.results["total"] = pts.size();
    report.results["eckardt_count"] = eckardt_count;
    emit(report, out_path);
    return 0;
}

int run_span(const std::string& form_path, const std::string& seeds,
             const std::string& seeds_file, long height, const SpanConfig& cfg,
             const std::string& verify_path, const std::string& span_out,
             const std::string& out_path) {
    HomogeneousForm f = load_cubic(form_path);

    if (!verify_path.empty()) {
        SpanState state = parse_span_file(verify_path);
        bool ok = verify_provenance(f, state);
        RunReport report;
        report.command = "span-verify";
        report.config["form"] = form_path;
        report.config["span_file"] = verify_path;
        report.results["steps"] = state.provenance.size();
        report.results["all_replayed"] = ok;
        emit(report, out_path);
        if (!ok) throw ContractViolation("provenance replay failed");
        return 0;
    }

    std::vector<ProjectivePoint> seed_points;
    if (!seeds.empty()) seed_points = parse_seed_list(seeds);
    if (!seeds_file.empty())
        for (const auto& p : parse_points_file(seeds_file)) seed_points.push_back(p);
    if (height > 0) {
        PointSet enumerated = enumerate_points(f, HeightBound(Integer(height)));
        for (const auto& p : enumerated.sorted()) seed_points.push_back(p);
    }
    if (seed_points.empty())
        throw ValidationError("span needs --seeds, --seeds-file or --height for seed points");

    SpanState state = span_closure(f, seed_points, cfg);

    RunReport report;
    report.command = "span";
    report.config["form"] = form_path;
    report.config["span"] = span_config_to_json(cfg);
    if (height > 0) report.config["seed_height"] = height;
    json gens = json::array();
    for (const auto& gen : state.generations) gens.push_back(gen.size());
    report.results["generation_sizes"] = gens;
    json members = json::array();
    for (const auto& p : state.members()) members.push_back(point_to_json(p));
    report.results["members"] = members;
    report.results["steps"] = state.provenance.size();
    report.truncation["fixed_point_reached"] = state.fixed_point_reached;
    emit(report, out_path);
    if (!span_out.empty()) write_span_file(state, span_out);
    return 0;
}

int run_section(const std::string& form_path, const std::string& point_literal, long height,
                const SpanConfig& cfg, const std::string& out_path) {
    HomogeneousForm f = load_cubic(form_path);
    ProjectivePoint p = ProjectivePoint::parse(point_literal);
    if (f.evaluate(p) != 0)
        throw ValidationError("point not on hypersurface: " + p.to_string());

    PointSet section = tangent_section_points(f, p, HeightBound(Integer(height)));
    SpanState state = span_closure(f, {p}, cfg);

    RunReport report;
    report.command = "section";
    report.config["form"] = form_path;
    report.config["height"] = height;
    report.config["span"] = span_config_to_json(cfg);
    json list = json::array();
    std::size_t in_span = 0, inconclusive = 0;
    for (const auto& q : section.sorted()) {
        json entry;
        entry["point"] = point_to_json(q);
        SpanMembership member = is_in_span(q, state);
        if (member.member) {
            entry["status"] = "in-span";
            ++in_span;
        } else {
            // absence inside a truncated closure is never a violation
            entry["status"] = "inconclusive";
            ++inconclusive;
        }
        list.push_back(entry);
    }
    report.results["base_point"] = point_to_json(p);
    report.results["eckardt"] = is_eckardt(f, p);
    report.results["section_points"] = list;
    report.results["in_span"] = in_span;
    report.results["inconclusive"] = inconclusive;
    report.results["violations"] = 0;
    report.truncation["fixed_point_reached"] = state.fixed_point_reached;
    emit(report, out_path);
    return 0;
}

int run_solve_ybd(const std::string& form_path, const std::string& b_literal,
                  const std::string& d_literal, const std::string& seed_literal, double radius,
                  double tol, const std::string& out_path) {
    HomogeneousForm f = load_cubic(form_path);
    ProjectivePoint b = ProjectivePoint::parse(b_literal);
    RealVector d = parse_real_list(d_literal);
    RealVector seed = parse_real_list(seed_literal);

    YbdSolveResult res = find_smooth_point_ybd(f, b, d, seed, radius, tol);

    RunReport report;
    report.command = "solve-ybd";
    report.config["form"] = form_path;
    report.config["B"] = b.to_string();
    report.config["D"] = real_vector_to_json(d);
    report.config["seed"] = real_vector_to_json(seed);
    report.config["radius"] = format_real(radius);
    report.config["tol"] = format_real(tol);
    report.config["safety_inflation"] = format_real(kCertSafety);
    report.config["sv_threshold"] = format_real(kSingularValueThreshold);
    report.results["point"] = real_vector_to_json(res.point);
    report.results["certificate"] = certificate_to_json(res.certificate);
    report.results["residual_norm"] = format_real(res.residual_norm);
    report.results["jacobian_min_sv"] = format_real(res.jacobian_min_sv);
    report.results["jacobian_rank"] = res.jacobian_rank;
    report.results["smooth"] = res.smooth;

    // round the float point to small-denominator rationals and re-check
    // exactly; report the candidate if it is an exact zero
    {
        std::vector<Rational> coords{Rational(1)};
        for (Eigen::Index i = 0; i < res.point.size(); ++i)
            coords.push_back(rationalize(res.point[i], 1000000));
        ProjectivePoint candidate = ProjectivePoint::from_rationals(coords);
        bool exact = f.evaluate(candidate) == 0;
        if (exact) report.results["rational_candidate"] = point_to_json(candidate);
        report.results["exact_rational_zero"] = exact;
    }
    emit(report, out_path);
    return 0;
}

int run_certify(const std::string& system_path, const std::string& center_literal, double radius,
                double tol, const std::string& out_path) {
    RealSystem system = parse_system_file(system_path);
    RealVector center = parse_real_list(center_literal);
    KantorovichCertificate cert = certify_and_solve(system, BallSpec(center, radius), tol);

    RunReport report;
    report.command = "certify";
    report.config["system"] = system_path;
    report.config["center"] = real_vector_to_json(center);
    report.config["radius"] = format_real(radius);
    report.config["tol"] = format_real(tol);
    report.config["safety_inflation"] = format_real(kCertSafety);
    report.results["certificate"] = certificate_to_json(cert);
    emit(report, out_path);
    if (!cert.accepted) throw CertificationRejected(cert.reason);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact secant/tangent machinery for cubic hypersurfaces"};
    app.require_subcommand(1);

    std::string form_path, point_literal, out_path;

    auto* analyze = app.add_subcommand("analyze", "classify one rational point");
    analyze->add_option("form", form_path)->required();
    analyze->add_option("point", point_literal)->required();
    analyze->add_option("--out", out_path);

    long height = 1;
    auto* scan = app.add_subcommand("eckardt-scan", "enumerate and classify points");
    scan->add_option("form", form_path)->required();
    scan->add_option("--height", height)->required();
    scan->add_option("--out", out_path);

    std::string seeds, seeds_file, verify_path, span_out;
    long seed_height = 0;
    unsigned gens = 6, hdir = 3;
    std::string hmax = "1000000";
    unsigned threads = 0;
    auto* span = app.add_subcommand("span", "secant/tangent closure of seed points");
    span->add_option("form", form_path)->required();
    span->add_option("--seeds", seeds);
    span->add_option("--seeds-file", seeds_file);
    span->add_option("--height", seed_height);
    span->add_option("--gens", gens);
    span->add_option("--hdir", hdir);
    span->add_option("--hmax", hmax);
    span->add_option("--threads", threads);
    span->add_option("--verify", verify_path);
    span->add_option("--span-out", span_out);
    span->add_option("--out", out_path);

    long sec_height = 1;
    unsigned sec_gens = 2, sec_hdir = 3;
    std::string sec_hmax = "1000000";
    auto* section = app.add_subcommand("section", "tangent plane section and span containment");
    section->add_option("form", form_path)->required();
    section->add_option("point", point_literal)->required();
    section->add_option("--height", sec_height)->required();
    section->add_option("--gens", sec_gens);
    section->add_option("--hdir", sec_hdir);
    section->add_option("--hmax", sec_hmax);
    section->add_option("--out", out_path);

    std::string b_literal, d_literal, seed_literal;
    double radius = 0.5, tol = 1e-12;
    auto* ybd = app.add_subcommand("solve-ybd", "certified smooth point on Y_{B,D}");
    ybd->add_option("form", form_path)->required();
    ybd->add_option("--B", b_literal)->required();
    ybd->add_option("--D", d_literal)->required();
    ybd->add_option("--seed", seed_literal)->required();
    ybd->add_option("--radius", radius);
    ybd->add_option("--tol", tol);
    ybd->add_option("--out", out_path);

    std::string system_path, center_literal;
    double c_radius = 0.25, c_tol = 1e-12;
    auto* certify = app.add_subcommand("certify", "Kantorovich certificate for a system file");
    certify->add_option("system", system_path)->required();
    certify->add_option("--center", center_literal)->required();
    certify->add_option("--radius", c_radius)->required();
    certify->add_option("--tol", c_tol);
    certify->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) return run_analyze(form_path, point_literal, out_path);
        if (app.got_subcommand(scan)) return run_eckardt_scan(form_path, height, out_path);
        if (app.got_subcommand(span)) {
            SpanConfig cfg;
            cfg.max_generations = gens;
            cfg.residual_height_cap = parse_integer(hmax);
            cfg.direction_height = hdir;
            cfg.num_threads = threads;
            return run_span(form_path, seeds, seeds_file, seed_height, cfg, verify_path,
                            span_out, out_path);
        }
        if (app.got_subcommand(section)) {
            SpanConfig cfg;
            cfg.max_generations = sec_gens;
            cfg.residual_height_cap = parse_integer(sec_hmax);
            cfg.direction_height = sec_hdir;
            return run_section(form_path, point_literal, sec_height, cfg, out_path);
        }
        if (app.got_subcommand(ybd))
            return run_solve_ybd(form_path, b_literal, d_literal, seed_literal, radius, tol,
                                 out_path);
        if (app.got_subcommand(certify))
            return run_certify(system_path, center_literal, c_radius, c_tol, out_path);
        std::cerr << "unknown subcommand\n";
        return 2;
    } catch (const CertificationRejected& e) {
        std::cerr << "certification rejected: " << e.what() << "\n";
        return 3;
    } catch (const ContractViolation& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 4;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
