#pragma once

#include "iris/chord.hpp"
#include "iris/random.hpp"
#include "iris/ring.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace iris {

struct IrisParams {
    double alpha = 0.0;
    std::uint64_t delta = 0;
    bool bound_check_enabled = false;
    double gamma = 0.0; // threshold multiplier when the bound check is on
    // Optional per-iteration alpha; defaults to the constant alpha above.
    std::function<double(std::size_t iteration)> alpha_schedule;

    double alpha_at(std::size_t iteration) const {
        return alpha_schedule ? alpha_schedule(iteration) : alpha;
    }
    void validate(RingParams ring) const {
        if (!(alpha >= 0.0 && alpha < 1.0))
            throw std::invalid_argument("alpha must lie in [0, 1)");
        if (delta > ring.mask())
            throw std::invalid_argument("delta exceeds address space");
        if (bound_check_enabled && !(gamma > 0.0))
            throw std::invalid_argument("bound check requires a positive gamma");
    }
};

// Raised when the terminal hop fails the secure-routing bound check.
struct RoutingAttackError : std::runtime_error {
    std::size_t hop_index;
    Id offending_node;
    RoutingAttackError(std::size_t hop, Id node)
        : std::runtime_error("bound check failed at hop " + std::to_string(hop) +
                             ": node " + std::to_string(node) +
                             " is suspiciously close to its referrer"),
          hop_index(hop), offending_node(node) {}
};

// Routing-table entry that most closely succeeds S = target - delta while
// preceding target; falls back to the entry most closely preceding S.
Id select_start_node(const RoutingTable& rt, Id target, std::uint64_t delta, RingParams ring);

// Privacy-preserving retrieval: walk toward the target by querying each hop
// for an interpolated identifier short of a random reference point, stopping
// as soon as a relayed node succeeds the target.
std::pair<std::optional<std::string>, QueryTrace>
iris_retrieve(const Network& net, Id requester, Id target, const IrisParams& params,
              RandomSource& rng);

// True iff d_x >= d_r / f; vacuously true when f == 0 (check disabled).
bool bound_check(std::uint64_t d_x, std::uint64_t d_r, double f);

// Expected remaining distance after n iterations: d0 * ((alpha + 1) / 2)^n.
double predicted_distance(double d0, double alpha, unsigned n);

// Expected iterations to shrink d0 to the node-gap floor nu:
// (log d0 - log nu) / (log 2 - log(alpha + 1)); 0 when d0 < nu.
double predicted_hops(double d0, double nu, double alpha);

} // namespace iris
