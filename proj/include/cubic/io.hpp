#ifndef CUBIC_IO_HPP
#define CUBIC_IO_HPP

#include <string>
#include <vector>

#include "cubic/form.hpp"
#include "cubic/newton.hpp"
#include "cubic/point.hpp"
#include "cubic/realpoly.hpp"
#include "cubic/span.hpp"

// nlohmann/json single header, vendored
#include "json.hpp"

namespace cubic {

// All numbers in files are strings: rationals as "p/q", reals printed with
// 17 significant digits. Keys are emitted sorted, so identical runs write
// byte-identical files.

std::string format_real(double x);
double parse_real(const nlohmann::json& j, const std::string& what);

nlohmann::json point_to_json(const ProjectivePoint& p);
ProjectivePoint point_from_json(const nlohmann::json& j);

nlohmann::json form_to_json(const HomogeneousForm& f);
HomogeneousForm form_from_json(const nlohmann::json& j);
HomogeneousForm parse_form_file(const std::string& path);
void write_form_file(const HomogeneousForm& f, const std::string& path);

std::vector<ProjectivePoint> parse_points_file(const std::string& path);
void write_points_file(const std::vector<ProjectivePoint>& pts, const std::string& path);

nlohmann::json span_state_to_json(const SpanState& state);
SpanState span_state_from_json(const nlohmann::json& j);
SpanState parse_span_file(const std::string& path);
void write_span_file(const SpanState& state, const std::string& path);

// Real polynomial system file for the certify subcommand.
RealSystem parse_system_file(const std::string& path);

nlohmann::json certificate_to_json(const KantorovichCertificate& cert);

struct RunReport {
    std::string command;
    nlohmann::json config;
    nlohmann::json results;
    nlohmann::json truncation;

    std::string to_string() const;  // deterministic serialization
};

void write_report(const RunReport& report, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace cubic

#endif
