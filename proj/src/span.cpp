#include "cubic/span.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <set>
#include <thread>

#include "cubic/errors.hpp"

namespace cubic {

HeightBound::HeightBound(Integer h) : max_coord(std::move(h)) {
    if (max_coord < 1) throw ValidationError("height bound must be at least 1");
}

Integer naive_height(const ProjectivePoint& p) { return p.naive_height(); }

std::vector<ProjectivePoint> PointSet::sorted() const {
    std::vector<ProjectivePoint> out(members_.begin(), members_.end());
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------
// exhaustive point enumeration
// ---------------------------------------------------------------------

namespace {

// F as a univariate cubic in the last variable: F = sum_k G_k * z^k with
// G_k of degree 3 - k in the remaining variables. Coefficients are cleared
// to integers once up front.
struct LastVarSplit {
    std::vector<HomogeneousForm> g;  // g[k], k = 0..deg, in m - 1 variables

    explicit LastVarSplit(const HomogeneousForm& f) {
        std::size_t m = f.num_vars();
        Integer lcm = 1;
        for (const auto& [exps, coeff] : f.terms())
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), coeff.get_den().get_mpz_t());
        for (unsigned k = 0; k <= f.degree(); ++k)
            g.emplace_back(m - 1, f.degree() - k);
        for (const auto& [exps, coeff] : f.terms()) {
            unsigned k = exps.back();
            HomogeneousForm::ExponentVec rest(exps.begin(), exps.end() - 1);
            g[k].add_term(rest, coeff * Rational(lcm));
        }
    }

    // integer coefficients of the univariate in z at an integer prefix
    std::vector<Integer> at(const std::vector<Rational>& prefix) const {
        std::vector<Integer> out;
        out.reserve(g.size());
        for (const auto& form : g) out.push_back(form.evaluate(prefix).get_num());
        return out;
    }
};

Integer eval_univariate(const std::vector<Integer>& c, const Integer& z) {
    Integer acc = 0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

// Residue classes r mod p with c(r) = 0 mod p.
std::vector<bool> admissible_residues(const std::vector<Integer>& c, unsigned long p) {
    std::vector<bool> ok(p, false);
    for (unsigned long r = 0; r < p; ++r) {
        Integer v = eval_univariate(c, Integer(r));
        ok[r] = mpz_divisible_ui_p(v.get_mpz_t(), p) != 0;
    }
    return ok;
}

constexpr unsigned long kSievePrimes[] = {2, 3, 5, 7};

// Odometer over all tuples in [-h, h]^len.
template <typename Fn>
void for_each_tuple(std::size_t len, long h, Fn&& fn) {
    if (len == 0) {
        fn(std::vector<long>{});
        return;
    }
    std::vector<long> tuple(len, -h);
    while (true) {
        fn(tuple);
        std::size_t i = len;
        while (i-- > 0) {
            if (tuple[i] < h) { ++tuple[i]; break; }
            tuple[i] = -h;
            if (i == 0) return;
        }
    }
}

// Walks all prefixes (first m - 1 coordinates) with |x_i| <= H whose first
// nonzero coordinate is positive, plus the all-zero prefix.
template <typename Fn>
void for_each_prefix(std::size_t len, long h, Fn&& fn) {
    for_each_tuple(len, h, [&](const std::vector<long>& prefix) {
        int lead = 0;
        for (std::size_t i = 0; i < len; ++i) {
            if (prefix[i] != 0) { lead = prefix[i] > 0 ? 1 : -1; break; }
        }
        if (lead >= 0) fn(prefix, lead == 0);
    });
}

}  // namespace

PointSet enumerate_points(const HomogeneousForm& f, const HeightBound& bound) {
    std::size_t m = f.num_vars();
    if (m < 2) throw ValidationError("enumeration needs at least two coordinates");
    if (!bound.max_coord.fits_slong_p())
        throw ValidationError("height bound too large for exhaustive enumeration");
    long h = bound.max_coord.get_si();

    LastVarSplit split(f);
    PointSet out;
    bool sieve = (2 * h + 1) > 30;

    for_each_prefix(m - 1, h, [&](const std::vector<long>& prefix, bool all_zero) {
        std::vector<Rational> pref;
        pref.reserve(prefix.size());
        for (long v : prefix) pref.emplace_back(v);
        std::vector<Integer> uni = split.at(pref);

        Integer gcd_prefix = 0;
        for (long v : prefix) {
            Integer z(v);
            mpz_gcd(gcd_prefix.get_mpz_t(), gcd_prefix.get_mpz_t(), z.get_mpz_t());
        }

        std::vector<std::vector<bool>> residues;
        if (sieve)
            for (unsigned long p : kSievePrimes) residues.push_back(admissible_residues(uni, p));

        long z_lo = all_zero ? 1 : -h;
        for (long z = z_lo; z <= h; ++z) {
            if (sieve) {
                bool pass = true;
                for (std::size_t pi = 0; pi < residues.size() && pass; ++pi) {
                    long p = static_cast<long>(kSievePrimes[pi]);
                    pass = residues[pi][((z % p) + p) % p];
                }
                if (!pass) continue;
            }
            if (eval_univariate(uni, Integer(z)) != 0) continue;
            Integer g = gcd_prefix;
            Integer zz(z);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), zz.get_mpz_t());
            if (g != 1) continue;
            std::vector<Integer> coords;
            coords.reserve(m);
            for (long v : prefix) coords.emplace_back(v);
            coords.emplace_back(z);
            out.insert(ProjectivePoint(std::move(coords)));
        }
    });
    return out;
}

PointSet tangent_section_points(const HomogeneousForm& f, const ProjectivePoint& p,
                                const HeightBound& bound) {
    HomogeneousForm tp = tangent_plane(f, p);  // validates smoothness
    std::vector<Rational> coeffs = tp.linear_coefficients();
    std::size_t m = f.num_vars();
    std::vector<Integer> gz(m);
    for (std::size_t i = 0; i < m; ++i) gz[i] = coeffs[i].get_num();

    std::size_t pivot = 0;
    Integer best = 0;
    for (std::size_t i = 0; i < m; ++i) {
        Integer mag = abs(gz[i]);
        if (mag > best) { best = mag; pivot = i; }
    }
    if (!bound.max_coord.fits_slong_p())
        throw ValidationError("height bound too large for exhaustive enumeration");
    long h = bound.max_coord.get_si();

    PointSet out;
    for_each_tuple(m - 1, h, [&](const std::vector<long>& free_coords) {
        // free_coords fill every slot except the pivot, in order
        Integer num = 0;
        std::vector<Integer> coords(m);
        std::size_t fi = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == pivot) continue;
            coords[i] = free_coords[fi++];
            num += gz[i] * coords[i];
        }
        if (!mpz_divisible_p(num.get_mpz_t(), gz[pivot].get_mpz_t())) return;
        Integer xk = -num / gz[pivot];
        if (abs(xk) > h) return;
        coords[pivot] = xk;
        // canonical: nonzero, first nonzero positive, primitive
        Integer g = 0;
        int lead = 0;
        for (const auto& cval : coords) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cval.get_mpz_t());
            if (lead == 0 && cval != 0) lead = sgn(cval);
        }
        if (lead <= 0 || g != 1) return;
        ProjectivePoint candidate(coords);
        if (f.evaluate(candidate) != 0) return;
        out.insert(std::move(candidate));
    });
    return out;
}

// ---------------------------------------------------------------------
// tangent line enumeration
// ---------------------------------------------------------------------

std::vector<TangentLine> tangent_lines_at(const HomogeneousForm& f, const ProjectivePoint& p,
                                          unsigned direction_height) {
    HomogeneousForm tp = tangent_plane(f, p);
    std::vector<Rational> coeffs = tp.linear_coefficients();
    std::size_t m = f.num_vars();
    std::vector<Integer> gz(m);
    for (std::size_t i = 0; i < m; ++i) gz[i] = coeffs[i].get_num();

    std::size_t pivot = 0;
    Integer best = 0;
    for (std::size_t i = 0; i < m; ++i) {
        Integer mag = abs(gz[i]);
        if (mag > best) { best = mag; pivot = i; }
    }

    std::vector<TangentLine> out;
    std::set<std::pair<ProjectivePoint, ProjectivePoint>> seen;

    auto try_direction = [&](std::vector<Integer> d) {
        Integer g = 0;
        for (const auto& v : d) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 0) return;
        canonicalize_primitive(d);
        ProjectivePoint dir(std::move(d));
        if (dir == p) return;
        ProjectiveLine line = ProjectiveLine::through(p, dir);
        auto key = std::make_pair(line.basis_a(), line.basis_b());
        if (!seen.insert(key).second) return;
        out.push_back(TangentLine{line, dir});
    };

    if (m == 3) {
        // plane curve: the tangent plane is the tangent line itself; any
        // second basis vector of it yields the unique line
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<Integer> d(m, 0);
            if (gz[j] == 0) {
                d[j] = 1;
            } else if (j != pivot) {
                d[j] = gz[pivot];
                d[pivot] = -gz[j];
            } else {
                continue;
            }
            if (proportional(d, p.coords())) continue;
            try_direction(std::move(d));
            break;
        }
        return out;
    }

    long h = static_cast<long>(direction_height);
    for_each_tuple(m - 1, h, [&](const std::vector<long>& free_coords) {
        Integer num = 0;
        std::vector<Integer> d(m);
        std::size_t fi = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == pivot) continue;
            d[i] = free_coords[fi++];
            num += gz[i] * d[i];
        }
        if (!mpz_divisible_p(num.get_mpz_t(), gz[pivot].get_mpz_t())) return;
        Integer xk = -num / gz[pivot];
        if (abs(xk) > h) return;
        d[pivot] = xk;
        try_direction(std::move(d));
    });
    return out;
}

// ---------------------------------------------------------------------
// span closure
// ---------------------------------------------------------------------

LineDivisor SpanStep::claimed_divisor() const {
    std::map<ProjectivePoint, unsigned> mult;
    if (kind == Kind::Secant) {
        mult[parent_p] += 1;
        mult[parent_q] += 1;
        mult[result] += 1;
    } else {
        mult[parent_p] += 2;
        mult[result] += 1;
    }
    LineDivisor div;
    for (const auto& [pt, k] : mult) div.rational_points.emplace_back(pt, k);
    return div;
}

bool replay_step(const HomogeneousForm& f, const SpanStep& step) {
    return verify_line_divisor(f, step.line, step.claimed_divisor());
}

bool verify_provenance(const HomogeneousForm& f, const SpanState& state) {
    for (const auto& [pt, step] : state.provenance) {
        if (!(pt == step.result)) return false;
        if (!replay_step(f, step)) return false;
    }
    return true;
}

bool SpanState::contains(const ProjectivePoint& p) const {
    const auto& last = generations.back();
    return std::binary_search(last.begin(), last.end(), p);
}

unsigned resolve_thread_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CUBIC_SPAN_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

struct Task {
    enum class Kind { Pair, Tangent };
    Kind kind;
    std::size_t i = 0, j = 0;
};

struct Candidate {
    ProjectivePoint result;
    SpanStep step;
};

// Deterministic precedence for first-writer-wins provenance merging.
bool candidate_key_less(const Candidate& a, const Candidate& b) {
    if (a.result != b.result) return a.result < b.result;
    if (a.step.kind != b.step.kind)
        return a.step.kind == SpanStep::Kind::Secant;
    if (a.step.parent_p != b.step.parent_p) return a.step.parent_p < b.step.parent_p;
    return a.step.parent_q < b.step.parent_q;
}

}  // namespace

SpanState span_closure(const HomogeneousForm& f, const std::vector<ProjectivePoint>& seeds,
                       const SpanConfig& config) {
    for (const auto& s : seeds)
        if (f.evaluate(s) != 0)
            throw ValidationError("seed " + s.to_string() + " is not on the hypersurface");

    SpanState state;
    state.config = config;

    PointSet current;
    for (const auto& s : seeds) current.insert(s);
    state.generations.push_back(current.sorted());
    if (current.empty()) {
        state.fixed_point_reached = true;
        return state;
    }

    unsigned nthreads = resolve_thread_count(config.num_threads);

    for (unsigned gen = 1; gen <= config.max_generations; ++gen) {
        const std::vector<ProjectivePoint> pts = state.generations.back();

        std::vector<Task> tasks;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                tasks.push_back(Task{Task::Kind::Pair, i, j});
            tasks.push_back(Task{Task::Kind::Tangent, i, 0});
        }

        auto run_task = [&](const Task& t, std::vector<Candidate>& sink) {
            if (t.kind == Task::Kind::Pair) {
                const ProjectivePoint& p = pts[t.i];
                const ProjectivePoint& q = pts[t.j];
                try {
                    ProjectivePoint r = third_point(f, p, q);
                    if (r.naive_height() > config.residual_height_cap) return;
                    SpanStep step{SpanStep::Kind::Secant, r, p, q,
                                  ProjectiveLine::through(p, q), gen};
                    sink.push_back(Candidate{r, std::move(step)});
                } catch (const LineContainedError&) {
                }
            } else {
                const ProjectivePoint& p = pts[t.i];
                std::vector<TangentLine> lines;
                try {
                    lines = tangent_lines_at(f, p, config.direction_height);
                } catch (const ValidationError&) {
                    return;  // singular point: no tangent constructions
                }
                for (const auto& tl : lines) {
                    try {
                        LineDivisor div = tangent_residual(f, p, tl.direction);
                        // residual = the multiplicity-1 point of 2P + R; the
                        // inflection divisor 3P contributes nothing new
                        for (const auto& [r, mult] : div.rational_points) {
                            if (mult != 1 || r == p) continue;
                            if (r.naive_height() > config.residual_height_cap) continue;
                            SpanStep step{SpanStep::Kind::Tangent, r, p, tl.direction,
                                          tl.line, gen};
                            sink.push_back(Candidate{r, std::move(step)});
                        }
                    } catch (const LineContainedError&) {
                    } catch (const ValidationError&) {
                    }
                }
            }
        };

        std::vector<Candidate> candidates;
        unsigned workers = std::min<std::size_t>(nthreads, tasks.size() == 0 ? 1 : tasks.size());
        if (workers <= 1 || tasks.size() < 64) {
            for (const auto& t : tasks) run_task(t, candidates);
        } else {
            std::vector<std::vector<Candidate>> sinks(workers);
            std::vector<std::thread> pool;
            std::exception_ptr fail;
            std::atomic<std::size_t> next{0};
            std::mutex fail_mutex;
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        std::size_t idx;
                        while ((idx = next.fetch_add(1)) < tasks.size())
                            run_task(tasks[idx], sinks[w]);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(fail_mutex);
                        if (!fail) fail = std::current_exception();
                    }
                });
            }
            for (auto& t : pool) t.join();
            if (fail) std::rethrow_exception(fail);
            for (auto& sink : sinks)
                for (auto& c : sink) candidates.push_back(std::move(c));
        }

        // single deterministic merger: sort by canonical key, first writer wins
        std::sort(candidates.begin(), candidates.end(), candidate_key_less);
        bool grew = false;
        for (auto& c : candidates) {
            if (current.contains(c.result)) continue;
            current.insert(c.result);
            state.provenance.emplace(c.result, std::move(c.step));
            grew = true;
        }

        if (!grew) {
            state.fixed_point_reached = true;
            break;
        }
        state.generations.push_back(current.sorted());
    }
    return state;
}

SpanMembership is_in_span(const ProjectivePoint& r, const SpanState& state) {
    SpanMembership out;
    if (!state.contains(r)) return out;
    out.member = true;

    // collect the steps this point depends on, parents first
    std::set<ProjectivePoint> visited;
    std::vector<ProjectivePoint> stack{r};
    std::vector<SpanStep> steps;
    while (!stack.empty()) {
        ProjectivePoint p = stack.back();
        stack.pop_back();
        if (visited.count(p)) continue;
        visited.insert(p);
        auto it = state.provenance.find(p);
        if (it == state.provenance.end()) continue;  // seed
        steps.push_back(it->second);
        stack.push_back(it->second.parent_p);
        if (it->second.kind == SpanStep::Kind::Secant) stack.push_back(it->second.parent_q);
    }
    std::sort(steps.begin(), steps.end(), [](const SpanStep& a, const SpanStep& b) {
        if (a.generation != b.generation) return a.generation < b.generation;
        return a.result < b.result;
    });
    out.chain = std::move(steps);
    return out;
}

}  // namespace cubic
