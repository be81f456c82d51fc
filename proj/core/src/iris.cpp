#include "iris/iris.hpp"

#include <cmath>

namespace iris {

Id select_start_node(const RoutingTable& rt, Id target, std::uint64_t delta, RingParams ring) {
    if (delta > ring.mask())
        throw std::invalid_argument("delta exceeds address space");
    Id s = offset_back(target, delta, ring);
    std::uint64_t span = cw_distance(s, target, ring); // == delta

    bool found = false;
    Id best = 0;
    std::uint64_t best_d = 0;
    for (Id e : rt.entries) {
        std::uint64_t d = cw_distance(s, e, ring); // 0 means e == s, inside [s, target)
        if (d < span) {
            if (!found || d < best_d) {
                best = e;
                best_d = d;
                found = true;
            }
        }
    }
    if (found)
        return best;

    // No entry inside [s, target): take the entry most closely preceding s.
    found = false;
    for (Id e : rt.entries) {
        std::uint64_t d = cw_distance(e, s, ring);
        if (!found || d < best_d) {
            best = e;
            best_d = d;
            found = true;
        }
    }
    return best;
}

std::pair<std::optional<std::string>, QueryTrace>
iris_retrieve(const Network& net, Id requester, Id target, const IrisParams& params,
              RandomSource& rng) {
    if (!net.is_member(requester))
        throw std::invalid_argument("requester is not a member node");
    params.validate(net.ring);
    RingParams ring = net.ring;

    QueryTrace trace;
    trace.requester = requester;
    trace.target = target;

    auto finish = [&](Id terminal) {
        trace.terminal = terminal;
        return std::make_pair(fetch(net, terminal, target), trace);
    };

    // The requester resolves targets in its own range or its successor's
    // without any remote queries.
    Id pred = predecessor_of(net, requester);
    if (in_cw_interval(target, pred, requester, Bound::open, Bound::closed, ring))
        return finish(requester);
    Id succ = successor_of(net, requester);
    if (in_cw_interval(target, requester, succ, Bound::open, Bound::closed, ring))
        return finish(succ);

    std::uint64_t d_r = cw_distance(pred, requester, ring);

    Id n = select_start_node(routing_table(net, requester), target, params.delta, ring);
    bool have_prev = false;
    Id prev = 0;
    const std::size_t max_iters = 10 * net.nodes.size() + 200;
    for (std::size_t iter = 0;; ++iter) {
        if (iter > max_iters)
            throw std::runtime_error("iris_retrieve failed to converge");
        // A relayed node that succeeds the target is the responsible node;
        // this check never applies to the start node, which may legitimately
        // lie past the target when the fallback selection fired.
        if (have_prev && in_cw_interval(target, prev, n, Bound::open, Bound::closed, ring))
            return finish(n);
        std::uint64_t arc = cw_distance(n, target, ring);
        if (arc == 0)
            return finish(n);

        double alpha = params.alpha_at(trace.steps.size());
        if (!(alpha >= 0.0 && alpha < 1.0))
            throw std::invalid_argument("alpha schedule produced a value outside [0, 1)");

        // Draw R on [n, target); redraw the rare degenerate case where
        // rounding would make the queried identifier equal the queried node.
        Id r = n;
        Id qid = n;
        for (int attempt = 0; attempt < 64; ++attempt) {
            r = (n + rng.uniform_below(arc)) & ring.mask();
            qid = lerp_toward(n, r, alpha, ring);
            if (qid != n)
                break;
        }
        if (qid == n) {
            // Every reachable identifier collapses onto n (arc of one or two
            // addresses at high alpha); fall back to a plain lookup step.
            r = target;
            qid = target;
        }

        LookupResult res = lookup_step(net, n, qid);
        // The requester will accept a returned node that succeeds the target
        // as responsible; when enabled, screen that claim first.
        if (params.bound_check_enabled &&
            in_cw_interval(target, n, res.next, Bound::open, Bound::closed, ring)) {
            std::uint64_t d_x = cw_distance(n, res.next, ring);
            if (static_cast<double>(d_x) < params.gamma * static_cast<double>(d_r))
                throw RoutingAttackError(trace.steps.size(), res.next);
        }
        trace.steps.push_back({n, r, qid, res.next, arc});
        have_prev = true;
        prev = n;
        n = res.next;
    }
}

bool bound_check(std::uint64_t d_x, std::uint64_t d_r, double f) {
    if (d_r == 0)
        throw std::invalid_argument("bound_check needs a positive range estimate");
    if (f == 0.0)
        return true; // no adversaries: check vacuous
    if (f < 0.0 || f > 1.0)
        throw std::invalid_argument("adversary fraction must lie in (0, 1]");
    double threshold = static_cast<double>(d_r) / f;
    return static_cast<double>(d_x) >= threshold;
}

double predicted_distance(double d0, double alpha, unsigned n) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in [0, 1)");
    return d0 * std::pow((alpha + 1.0) / 2.0, static_cast<double>(n));
}

double predicted_hops(double d0, double nu, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in [0, 1)");
    if (!(nu > 0.0))
        throw std::invalid_argument("nu must be positive");
    if (d0 < nu)
        return 0.0;
    return (std::log(d0) - std::log(nu)) / (std::log(2.0) - std::log(alpha + 1.0));
}

} // namespace iris
