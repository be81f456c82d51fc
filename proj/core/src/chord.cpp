#include "iris/chord.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace iris {

double Network::adversary_spacing() const {
    if (adversaries.empty())
        return std::numeric_limits<double>::infinity();
    return static_cast<double>(ring.mask()) / static_cast<double>(adversaries.size());
}

bool Network::is_member(Id node) const {
    return std::binary_search(nodes.begin(), nodes.end(), node);
}

bool Network::is_adversary(Id node) const {
    return std::binary_search(adversaries.begin(), adversaries.end(), node);
}

Network generate_network(RingParams ring, std::size_t n, double f, std::uint64_t seed) {
    ring.validate();
    if (n == 0)
        throw std::invalid_argument("network needs at least one node");
    if (ring.m < 64 && n > ring.size())
        throw std::invalid_argument("more nodes than addresses");
    if (f < 0.0 || f > 1.0)
        throw std::invalid_argument("adversary fraction must lie in [0, 1]");

    Network net;
    net.ring = ring;
    net.adversary_fraction = f;
    net.seed = seed;

    SeededSource rng(derive_seed(seed, 0, 0));
    if (ring.m <= 20 && n * 2 >= ring.size()) {
        // Dense ring: partial Fisher-Yates over the whole address space avoids
        // quadratic rejection when most addresses are occupied.
        std::vector<Id> all(ring.size());
        for (std::uint64_t i = 0; i < ring.size(); ++i)
            all[i] = i;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(all.size() - i));
            std::swap(all[i], all[j]);
        }
        net.nodes.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
    } else {
        std::set<Id> picked;
        while (picked.size() < n)
            picked.insert(rng.uniform_below(ring.size()));
        net.nodes.assign(picked.begin(), picked.end());
    }
    std::sort(net.nodes.begin(), net.nodes.end());

    select_adversaries(net, f, derive_seed(seed, 0, 1));
    return net;
}

void select_adversaries(Network& net, double f, std::uint64_t seed) {
    if (f < 0.0 || f > 1.0)
        throw std::invalid_argument("adversary fraction must lie in [0, 1]");
    net.adversary_fraction = f;
    auto count = static_cast<std::size_t>(std::llround(f * static_cast<double>(net.nodes.size())));
    net.adversaries.clear();
    if (count == 0)
        return;
    SeededSource rng(seed);
    std::vector<Id> pool = net.nodes;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    net.adversaries.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
    std::sort(net.adversaries.begin(), net.adversaries.end());
}

Id responsible_node(const Network& net, Id id) {
    if (net.nodes.empty())
        throw std::logic_error("responsible_node on empty network");
    auto it = std::lower_bound(net.nodes.begin(), net.nodes.end(), id);
    if (it == net.nodes.end())
        return net.nodes.front();
    return *it;
}

Id successor_of(const Network& net, Id node) {
    auto it = std::upper_bound(net.nodes.begin(), net.nodes.end(), node);
    if (it == net.nodes.end())
        return net.nodes.front();
    return *it;
}

Id predecessor_of(const Network& net, Id node) {
    auto it = std::lower_bound(net.nodes.begin(), net.nodes.end(), node);
    if (it == net.nodes.begin())
        return net.nodes.back();
    return *(it - 1);
}

RoutingTable routing_table(const Network& net, Id owner) {
    if (!net.is_member(owner))
        throw std::invalid_argument("routing table requested for a non-member node");
    RoutingTable rt;
    rt.owner = owner;
    rt.predecessor = predecessor_of(net, owner);
    rt.entries.reserve(net.ring.m);
    for (unsigned j = 0; j < net.ring.m; ++j)
        rt.entries.push_back(responsible_node(net, (owner + (std::uint64_t{1} << j)) & net.ring.mask()));
    return rt;
}

Id closest_preceding(const RoutingTable& rt, Id target, RingParams ring) {
    std::uint64_t dt = cw_distance(rt.owner, target, ring);
    Id best = rt.entries.front(); // successor fallback
    std::uint64_t best_d = 0;
    bool found = false;
    for (Id e : rt.entries) {
        std::uint64_t d = cw_distance(rt.owner, e, ring);
        if (d > 0 && d < dt && (!found || d > best_d)) {
            best = e;
            best_d = d;
            found = true;
        }
    }
    return best;
}

LookupResult lookup_step(const Network& net, Id queried, Id target) {
    if (!net.is_member(queried))
        throw std::invalid_argument("lookup_step queried a non-member node");
    Id pred = predecessor_of(net, queried);
    if (in_cw_interval(target, pred, queried, Bound::open, Bound::closed, net.ring))
        return {queried, true};
    Id succ = successor_of(net, queried);
    if (in_cw_interval(target, queried, succ, Bound::open, Bound::closed, net.ring))
        return {succ, true};
    return {closest_preceding(routing_table(net, queried), target, net.ring), false};
}

std::pair<std::optional<std::string>, QueryTrace>
chord_retrieve(const Network& net, Id requester, Id target) {
    if (!net.is_member(requester))
        throw std::invalid_argument("requester is not a member node");
    QueryTrace trace;
    trace.requester = requester;
    trace.target = target;

    Id pred = predecessor_of(net, requester);
    if (in_cw_interval(target, pred, requester, Bound::open, Bound::closed, net.ring)) {
        trace.terminal = requester;
        return {fetch(net, requester, target), trace};
    }
    Id n = closest_preceding(routing_table(net, requester), target, net.ring);
    for (std::size_t guard = 0; guard <= net.nodes.size() + 1; ++guard) {
        LookupResult res = lookup_step(net, n, target);
        trace.steps.push_back({n, target, target, res.next, cw_distance(n, target, net.ring)});
        if (res.is_final) {
            trace.terminal = res.next;
            return {fetch(net, trace.terminal, target), trace};
        }
        n = res.next;
    }
    throw std::runtime_error("chord_retrieve failed to converge");
}

bool chord_store(Network& net, Id holder, Id target, std::string data) {
    if (!net.is_member(holder))
        return false;
    auto [ignored, trace] = chord_retrieve(net, holder, target);
    (void)ignored;
    return push(net, trace.terminal, target, std::move(data));
}

std::optional<std::string> fetch(const Network& net, Id node, Id id) {
    if (!net.is_member(node))
        return std::nullopt;
    if (responsible_node(net, id) != node)
        return std::nullopt;
    auto it = net.objects.find(id);
    if (it == net.objects.end())
        return std::nullopt;
    return it->second;
}

bool push(Network& net, Id node, Id id, std::string data) {
    if (!net.is_member(node) || responsible_node(net, id) != node)
        return false;
    net.objects[id] = std::move(data);
    return true;
}

void save_network(const Network& net, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write network file: " + file.string());
    out << "irisnet 1\n";
    out << "m " << net.ring.m << "\n";
    out << "n " << net.nodes.size() << "\n";
    out << "f " << net.adversary_fraction << "\n";
    out << "seed " << net.seed << "\n";
    out << "nodes\n";
    for (Id id : net.nodes)
        out << id << "\n";
    out << "adversaries\n";
    for (Id id : net.adversaries)
        out << id << "\n";
    out << "end\n";
    if (!out)
        throw std::runtime_error("failed writing network file: " + file.string());
}

Network load_network(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open network file: " + file.string());
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "irisnet" || version != 1)
        throw std::runtime_error("unrecognized network file format: " + file.string());

    Network net;
    std::string key;
    std::size_t n = 0;
    in >> key >> net.ring.m;
    if (key != "m")
        throw std::runtime_error("malformed network file: " + file.string());
    in >> key >> n;
    if (key != "n")
        throw std::runtime_error("malformed network file: " + file.string());
    in >> key >> net.adversary_fraction;
    if (key != "f")
        throw std::runtime_error("malformed network file: " + file.string());
    in >> key >> net.seed;
    if (key != "seed")
        throw std::runtime_error("malformed network file: " + file.string());
    in >> key;
    if (key != "nodes")
        throw std::runtime_error("malformed network file: " + file.string());
    net.nodes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Id id;
        if (!(in >> id))
            throw std::runtime_error("truncated node list: " + file.string());
        net.nodes.push_back(id);
    }
    in >> key;
    if (key != "adversaries")
        throw std::runtime_error("malformed network file: " + file.string());
    while (in >> key && key != "end")
        net.adversaries.push_back(std::stoull(key));
    if (key != "end")
        throw std::runtime_error("truncated network file: " + file.string());
    net.ring.validate();
    if (!std::is_sorted(net.nodes.begin(), net.nodes.end()))
        throw std::runtime_error("network file nodes not sorted: " + file.string());
    return net;
}

} // namespace iris
