#include "iris/privacy.hpp"

#include <algorithm>
#include <stdexcept>

namespace iris {

PrivacyReport analyze_trace(const QueryTrace& trace, const IrisParams& params,
                            const ColluderModel& model, RingParams ring) {
    params.validate(ring);
    PrivacyReport report;
    report.alpha = params.alpha;
    report.delta = params.delta;
    if (params.delta == 0)
        return report; // no candidate range to reason about

    // First colluder whose range estimate actually contains the target; only
    // such a node can usefully seed later colluders' bounds — the rest know
    // their own estimate overshot.
    bool have_anchor = false;
    Id anchor = 0;

    for (const TraceStep& step : trace.steps) {
        PrivacyObservation obs;
        obs.node = step.queried;
        obs.is_colluder = model.colluders.count(step.queried) > 0;

        obs.upper_bound = (step.queried + params.delta) & ring.mask();
        obs.prior = params.delta;

        if (obs.is_colluder && model.link_queries && have_anchor) {
            std::uint64_t gap = cw_distance(anchor, step.queried, ring);
            if (gap > 0 && gap < params.delta) {
                // Inherit the first colluder's bound; the shared range shrinks
                // by the ground this query has already covered.
                obs.upper_bound = (anchor + params.delta) & ring.mask();
                obs.prior = params.delta - gap;
            }
        }

        std::uint64_t to_target = cw_distance(step.queried, trace.target, ring);
        std::uint64_t to_bound = cw_distance(step.queried, obs.upper_bound, ring);
        obs.correct_estimate = to_target <= to_bound;

        obs.posterior = cw_distance(step.queried_id, obs.upper_bound, ring);
        if (obs.posterior > obs.prior)
            obs.posterior = obs.prior; // estimate already wrong; cap the range
        if (obs.posterior == 0)
            obs.posterior = 1;
        obs.ratio = static_cast<double>(obs.posterior) / static_cast<double>(obs.prior);

        if (obs.is_colluder && !have_anchor && to_target <= params.delta) {
            have_anchor = true;
            anchor = step.queried;
        }

        report.observations.push_back(obs);
    }

    for (const PrivacyObservation& obs : report.observations) {
        if (!obs.correct_estimate)
            continue;
        if (!report.min_ratio || obs.ratio < *report.min_ratio)
            report.min_ratio = obs.ratio;
    }
    return report;
}

double min_privacy_ratio(const std::vector<PrivacyReport>& reports) {
    if (reports.empty())
        throw std::invalid_argument("min_privacy_ratio over an empty report list");
    std::optional<double> best;
    for (const PrivacyReport& r : reports) {
        if (!r.min_ratio)
            continue;
        if (!best || *r.min_ratio < *best)
            best = *r.min_ratio;
    }
    if (!best)
        throw std::invalid_argument("no report contains a correct-estimate observation");
    return *best;
}

double analytic_probability(Cond target_cond, Cond ref_cond, std::uint64_t o,
                            std::uint64_t x, std::uint64_t delta) {
    if (x >= o || o > delta)
        throw std::domain_error("require 0 <= x < o <= delta");
    auto od = static_cast<double>(o);
    auto xd = static_cast<double>(x);
    auto dd = static_cast<double>(delta);
    if (ref_cond == Cond::eq) {
        if (target_cond == Cond::eq)
            return 1.0 / (dd - xd);
        return (od - xd) / (dd - xd);
    }
    if (target_cond == Cond::eq)
        return 2.0 / (2.0 * dd - xd - 1.0);
    return (2.0 * od - xd - 1.0) / (2.0 * dd - xd - 1.0);
}

std::optional<double>
empirical_probability(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& samples,
                      Cond target_cond, Cond ref_cond, std::uint64_t o, std::uint64_t x) {
    std::uint64_t conditioned = 0;
    std::uint64_t matched = 0;
    for (const auto& [target_off, ref_off] : samples) {
        bool cond = ref_cond == Cond::eq ? ref_off == x : ref_off <= x;
        if (!cond)
            continue;
        ++conditioned;
        bool hit = target_cond == Cond::eq ? target_off == o : target_off <= o;
        if (hit)
            ++matched;
    }
    if (conditioned == 0)
        return std::nullopt;
    return static_cast<double>(matched) / static_cast<double>(conditioned);
}

} // namespace iris
