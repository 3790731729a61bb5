#ifndef CUBIC_SPAN_HPP
#define CUBIC_SPAN_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "cubic/form.hpp"
#include "cubic/geometry.hpp"
#include "cubic/point.hpp"

namespace cubic {

struct HeightBound {
    Integer max_coord;
    explicit HeightBound(Integer h);
};

Integer naive_height(const ProjectivePoint& p);

// Set of canonical points with exact dedup; sorted views for output.
class PointSet {
 public:
    bool contains(const ProjectivePoint& p) const { return members_.count(p) != 0; }
    bool insert(const ProjectivePoint& p) { return members_.insert(p).second; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    std::vector<ProjectivePoint> sorted() const;

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

 private:
    std::unordered_set<ProjectivePoint, PointHash> members_;
};

// One secant or tangent construction step recorded for replay.
struct SpanStep {
    enum class Kind { Secant, Tangent };
    Kind kind;
    ProjectivePoint result;
    ProjectivePoint parent_p;
    ProjectivePoint parent_q;  // secant: second set member; tangent: the direction
    ProjectiveLine line;
    unsigned generation;

    // The full divisor this step claims: {P, Q, R} as a multiset for
    // secants, 2P + R (or 3P) for tangents.
    LineDivisor claimed_divisor() const;
};

struct SpanConfig {
    unsigned max_generations = 6;           // G
    Integer residual_height_cap{1000000};   // H_max, on coordinates
    unsigned direction_height = 3;          // H_dir, tangent direction scan bound
    unsigned num_threads = 0;               // 0 = CUBIC_SPAN_THREADS or hardware
};

struct SpanState {
    std::vector<std::vector<ProjectivePoint>> generations;  // cumulative, sorted
    std::map<ProjectivePoint, SpanStep> provenance;
    SpanConfig config;
    bool fixed_point_reached = false;

    const std::vector<ProjectivePoint>& members() const { return generations.back(); }
    bool contains(const ProjectivePoint& p) const;
};

struct SpanMembership {
    bool member = false;
    std::vector<SpanStep> chain;  // dependency order, seeds carry no steps
};

// ---- operations ----

// All canonical rational points on F = 0 with naive height <= bound,
// by exhaustive primitive-tuple scan. The last coordinate is sieved by
// admissible residues modulo small primes before exact evaluation.
PointSet enumerate_points(const HomogeneousForm& f, const HeightBound& bound);

// Secant/tangent closure of the seeds: every unordered pair of distinct
// members contributes its rational residual, every member contributes the
// residuals of its tangent lines with direction height <= H_dir (for plane
// curves the unique tangent line is always used). Residuals are admitted
// while their height stays within H_max. Stops at a fixed point or after
// max_generations.
SpanState span_closure(const HomogeneousForm& f, const std::vector<ProjectivePoint>& seeds,
                       const SpanConfig& config);

SpanMembership is_in_span(const ProjectivePoint& r, const SpanState& state);

// Rational points of X cut by the tangent plane at p, up to the height
// bound; the enumeration runs inside the hyperplane grad F(p) . x = 0.
PointSet tangent_section_points(const HomogeneousForm& f, const ProjectivePoint& p,
                                const HeightBound& bound);

// Tangent lines through p whose direction has height <= direction_height
// (all of them deduplicated by canonical line form); for plane curves the
// unique tangent line, independent of the bound.
struct TangentLine {
    ProjectiveLine line;
    ProjectivePoint direction;
};
std::vector<TangentLine> tangent_lines_at(const HomogeneousForm& f, const ProjectivePoint& p,
                                          unsigned direction_height);

// Replays one recorded step: the recorded line must cut X exactly in the
// claimed divisor.
bool replay_step(const HomogeneousForm& f, const SpanStep& step);

// Replays every provenance record in the state.
bool verify_provenance(const HomogeneousForm& f, const SpanState& state);

unsigned resolve_thread_count(unsigned requested);

}  // namespace cubic

#endif
