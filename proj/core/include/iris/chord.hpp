#pragma once

#include "iris/random.hpp"
#include "iris/ring.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace iris {

// A generated overlay: sorted node identifiers, an adversary subset and the
// per-node object tables. Immutable after generation except the object map.
struct Network {
    RingParams ring;
    std::vector<Id> nodes;       // sorted, distinct
    std::vector<Id> adversaries; // sorted subset of nodes
    double adversary_fraction = 0.0;
    std::uint64_t seed = 0;
    std::unordered_map<Id, std::string> objects; // keyed by object id

    std::size_t node_count() const { return nodes.size(); }
    double nu() const {
        return static_cast<double>(ring.mask()) / static_cast<double>(nodes.size());
    }
    // Mean gap between consecutive adversaries; infinite when there are none.
    double adversary_spacing() const;
    bool is_member(Id node) const;
    bool is_adversary(Id node) const;
};

struct RoutingTable {
    Id owner = 0;
    std::vector<Id> entries; // entry j (0-based) = responsible(owner + 2^j)
    Id predecessor = 0;
};

struct LookupResult {
    Id next = 0;
    bool is_final = false;
};

// One queried node in a retrieval: who was asked, the reference point and
// identifier used, who they pointed to, and the queried node's distance to
// the true target. Vanilla Chord steps degenerate reference/queried_id to the
// target itself.
struct TraceStep {
    Id queried = 0;
    Id reference = 0;
    Id queried_id = 0;
    Id returned = 0;
    std::uint64_t distance = 0;
};

struct QueryTrace {
    Id requester = 0;
    Id target = 0;
    Id terminal = 0;
    std::vector<TraceStep> steps;

    // Contacted nodes: every queried node plus the terminal responsible node.
    std::size_t contacted() const { return steps.size() + 1; }
};

Network generate_network(RingParams ring, std::size_t n, double f, std::uint64_t seed);

// Re-draws the adversary subset of an existing topology; used when one
// topology is analyzed under several adversary fractions.
void select_adversaries(Network& net, double f, std::uint64_t seed);

Id responsible_node(const Network& net, Id id);
Id successor_of(const Network& net, Id node);
Id predecessor_of(const Network& net, Id node);

RoutingTable routing_table(const Network& net, Id owner);

// Routing-table entry with maximal clockwise distance from the owner that
// still precedes target; the owner's successor when none does.
Id closest_preceding(const RoutingTable& rt, Id target, RingParams ring);

// One protocol round trip: final if the queried node or its successor is
// responsible for target, otherwise a referral to the best table entry.
LookupResult lookup_step(const Network& net, Id queried, Id target);

std::pair<std::optional<std::string>, QueryTrace>
chord_retrieve(const Network& net, Id requester, Id target);

bool chord_store(Network& net, Id holder, Id target, std::string data);

std::optional<std::string> fetch(const Network& net, Id node, Id id);
bool push(Network& net, Id node, Id id, std::string data);

// Versioned flat-file persistence; see README for the format.
void save_network(const Network& net, const std::filesystem::path& file);
Network load_network(const std::filesystem::path& file);

} // namespace iris
