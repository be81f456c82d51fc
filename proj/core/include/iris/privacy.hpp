#pragma once

#include "iris/chord.hpp"
#include "iris/iris.hpp"
#include "iris/ring.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace iris {

// What one queried node (alone or sharing notes with colluders) can conclude
// about the requester's target from the identifier it was asked for.
struct PrivacyObservation {
    Id node = 0;
    bool is_colluder = false;
    Id upper_bound = 0;            // top of the node's estimated target range
    std::uint64_t prior = 0;       // candidate addresses before the query
    std::uint64_t posterior = 0;   // candidate addresses after the query
    double ratio = 1.0;            // posterior / prior
    bool correct_estimate = false; // true target actually lies in the range
};

struct ColluderModel {
    std::set<Id> colluders;
    // Worst case for the requester: colluders attribute every observed query
    // to the same search.
    bool link_queries = true;
    bool delta_known = true;
    bool alpha_known = true;
};

struct PrivacyReport {
    std::vector<PrivacyObservation> observations;
    // Minimum ratio over correct-estimate observations; empty when none.
    std::optional<double> min_ratio;
    double alpha = 0.0;
    std::uint64_t delta = 0;
};

PrivacyReport analyze_trace(const QueryTrace& trace, const IrisParams& params,
                            const ColluderModel& model, RingParams ring);

// Minimum over all reports' min_ratio; reports with no qualifying
// observation are skipped.
double min_privacy_ratio(const std::vector<PrivacyReport>& reports);

enum class Cond { eq, le };

// Closed-form attacker advantage at a queried node sitting at offset 0:
// probability the target offset satisfies target_cond o, given that the
// reference-point offset satisfies ref_cond x, with the target at most
// delta away. Requires 0 <= x < o <= delta.
double analytic_probability(Cond target_cond, Cond ref_cond, std::uint64_t o,
                            std::uint64_t x, std::uint64_t delta);

// Frequency estimate of the same conditional over observed
// (target_offset, reference_offset) samples; empty when nothing matches the
// conditioning event.
std::optional<double>
empirical_probability(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& samples,
                      Cond target_cond, Cond ref_cond, std::uint64_t o, std::uint64_t x);

} // namespace iris
