#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mecsim/config.hpp"

namespace mecsim {

struct Point {
    double x = 0;
    double y = 0;
};

inline double distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

struct EmptyTopology : std::runtime_error {
    EmptyTopology() : std::runtime_error("sampled topology has zero users") {}
};

// Geometry plus derived coverage sets. Edge e covers user u iff
// distance(u, e) <= cell radius.
struct NetworkTopology {
    std::vector<Point> edge_positions;
    std::vector<Point> user_positions;
    std::vector<std::vector<int>> covering_edges;  // per user: E^u
    std::vector<std::vector<int>> covered_users;   // per edge: U^e

    int num_users() const { return static_cast<int>(user_positions.size()); }
    int num_edges() const { return static_cast<int>(edge_positions.size()); }
    bool covers(int e, int u) const {
        for (int c : covering_edges[u])
            if (c == e) return true;
        return false;
    }
    bool multi_covered(int u) const { return covering_edges[u].size() >= 2; }
};

// Binary caching matrix x plus per-slot metadata used by the fixed policies.
struct CacheState {
    int num_files = 0;
    // slots[e] holds the file ids (1-based) currently cached at edge e
    std::vector<std::vector<int>> slots;
    // per (e, slot) metadata for LRU/LFU/FIFO
    std::vector<std::vector<std::uint64_t>> last_used;
    std::vector<std::vector<std::uint64_t>> use_count;
    std::vector<std::vector<std::uint64_t>> inserted_at;

    static CacheState init(int num_edges, int num_files, int cache_slots,
                           const std::vector<std::vector<int>>& initial_files);

    bool cached(int e, int file) const {
        for (int f : slots[e])
            if (f == file) return true;
        return false;
    }
    int slot_of(int e, int file) const {
        for (std::size_t s = 0; s < slots[e].size(); ++s)
            if (slots[e][s] == file) return static_cast<int>(s);
        return -1;
    }
    int num_edges() const { return static_cast<int>(slots.size()); }
};

// One requested file per user per step.
struct RequestState {
    std::vector<int> requested_file;  // per user, 1-based file id

    int num_users() const { return static_cast<int>(requested_file.size()); }
};

enum class TransmissionMode { St, Jt, Cloud };

// Association matrix y and the per-user mode it realizes.
struct AssociationState {
    std::vector<std::vector<std::uint8_t>> y;  // E x U
    std::vector<TransmissionMode> mode;        // per user

    int serving_count(int u) const {
        int n = 0;
        for (const auto& row : y) n += row[u];
        return n;
    }
};

// Gains, powers and SIC decode order for one step.
struct ChannelSnapshot {
    std::vector<std::vector<double>> h_edge;  // E x U, |h_{e,u}|
    std::vector<double> h_cloud;              // U, |h_{c,u}|
    std::vector<std::vector<double>> p_edge;  // E x U watts
    std::vector<double> p_cloud;              // U watts
    // per edge: covered users sorted by descending |h_{e,u}|
    std::vector<std::vector<int>> sic_order;
};

struct DelayReport {
    double edge_delay_s = 0;   // D^{E2U}
    double cloud_delay_s = 0;  // D^{C2U}
    double total_s = 0;
    std::vector<double> per_edge_delay_s;  // reward denominators
    std::vector<double> per_user_delay_s;
    int hit_count = 0;
    int miss_count = 0;
};

struct InconsistentAssociation : std::runtime_error {
    explicit InconsistentAssociation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mecsim
