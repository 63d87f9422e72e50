// geometry.hpp — circuit locations and schedules: the Loc/All spacetime
// integration domains

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnt/json_util.hpp"

namespace gnt {

// One circuit location: a gate/preparation/measurement/idle step occupying a
// qubit set (size 1 or 2) and a half-open time window [start, end).
struct Location {
    int id = 0;
    std::vector<int> qubits;
    double start = 0.0;
    double end = 0.0;
};

class Schedule {
public:
    Schedule(std::vector<Location> locations, int num_qubits, double gate_time,
             double total_duration, int spatial_dimension = 1,
             std::vector<std::vector<double>> qubit_positions = {})
        : locations_(std::move(locations)),
          num_qubits_(num_qubits),
          gate_time_(gate_time),
          total_duration_(total_duration),
          spatial_dimension_(spatial_dimension),
          qubit_positions_(std::move(qubit_positions)) {
        validate();
    }

    const std::vector<Location>& locations() const noexcept { return locations_; }
    int num_qubits() const noexcept { return num_qubits_; }
    double gate_time() const noexcept { return gate_time_; }
    double total_duration() const noexcept { return total_duration_; }
    int spatial_dimension() const noexcept { return spatial_dimension_; }
    const std::vector<std::vector<double>>& qubit_positions() const noexcept { return qubit_positions_; }

    const Location& location(int id) const {
        for (const auto& loc : locations_)
            if (loc.id == id) return loc;
        throw std::out_of_range("Schedule: no location with id " + std::to_string(id));
    }

private:
    void validate() const {
        if (num_qubits_ < 1) throw std::invalid_argument("Schedule: need at least one qubit");
        if (!(gate_time_ > 0.0)) throw std::invalid_argument("Schedule: gate time must be positive");
        double max_end = 0.0;
        for (const auto& loc : locations_) {
            if (!(loc.end > loc.start))
                throw std::invalid_argument("Schedule: location window must have positive width");
            if (loc.qubits.empty() || loc.qubits.size() > 2)
                throw std::invalid_argument("Schedule: location qubit set must have size 1 or 2");
            for (int q : loc.qubits)
                if (q < 0 || q >= num_qubits_)
                    throw std::invalid_argument("Schedule: qubit index out of range");
            if (loc.qubits.size() == 2 && loc.qubits[0] == loc.qubits[1])
                throw std::invalid_argument("Schedule: two-qubit location must name distinct qubits");
            max_end = std::max(max_end, loc.end);
        }
        if (total_duration_ < max_end)
            throw std::invalid_argument("Schedule: total duration shorter than the last window");
        // Parallel gates act on disjoint qubit sets: windows that overlap in
        // time may not share a qubit.
        for (std::size_t i = 0; i < locations_.size(); ++i)
            for (std::size_t j = i + 1; j < locations_.size(); ++j) {
                const auto& a = locations_[i];
                const auto& b = locations_[j];
                if (a.start < b.end && b.start < a.end)
                    for (int qa : a.qubits)
                        for (int qb : b.qubits)
                            if (qa == qb)
                                throw std::invalid_argument(
                                    "Schedule: qubit " + std::to_string(qa) +
                                    " appears in two overlapping locations");
            }
    }

    std::vector<Location> locations_;
    int num_qubits_;
    double gate_time_;
    double total_duration_;
    int spatial_dimension_;
    std::vector<std::vector<double>> qubit_positions_;
};

// depth time steps of width t0, each step packing all qubits into gates of
// the given arity. Idle qubits never arise: every qubit sits in some location
// at every step.
inline Schedule build_uniform_schedule(int num_qubits, int depth, double t0, int arity) {
    if (num_qubits < 1 || depth < 1)
        throw std::invalid_argument("build_uniform_schedule: need num_qubits >= 1 and depth >= 1");
    if (!(t0 > 0.0)) throw std::invalid_argument("build_uniform_schedule: gate time must be positive");
    if (arity != 1 && arity != 2)
        throw std::invalid_argument("build_uniform_schedule: arity must be 1 or 2");
    if (arity == 2 && num_qubits % 2 != 0)
        throw std::domain_error("build_uniform_schedule: pairing gates require an even qubit count");

    std::vector<Location> locs;
    int id = 0;
    for (int step = 0; step < depth; ++step) {
        const double start = step * t0;
        const double end = (step + 1) * t0;
        if (arity == 1) {
            for (int q = 0; q < num_qubits; ++q) locs.push_back({id++, {q}, start, end});
        } else {
            for (int q = 0; q < num_qubits; q += 2) locs.push_back({id++, {q, q + 1}, start, end});
        }
    }
    return Schedule(std::move(locs), num_qubits, t0, depth * t0);
}

inline const Location& location_domain(const Schedule& s, int id) { return s.location(id); }

// ---------------------------- JSON interface --------------------------------
// {"num_qubits":..,"depth":..,"t0":..,"arity":..} |
// {"locations":[{"qubits":[..],"start":..,"end":..},...],"num_qubits":..?,
//  "t0":..?,"total_duration":..?}

inline Schedule schedule_from_json(const nlohmann::json& j, const std::string& ptr = "/schedule") {
    using namespace jsonu;
    require_object(j, ptr);
    if (j.contains("locations")) {
        reject_unknown_keys(j, {"locations", "num_qubits", "t0", "total_duration"}, ptr);
        const auto& arr = j.at("locations");
        if (!arr.is_array() || arr.empty())
            throw config_error("\"locations\" must be a non-empty array", ptr + "/locations");
        std::vector<Location> locs;
        int max_qubit = -1;
        double max_end = 0.0;
        double min_width = 0.0;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string lptr = ptr + "/locations/" + std::to_string(i);
            reject_unknown_keys(arr[i], {"qubits", "start", "end"}, lptr);
            const auto& q = require_key(arr[i], "qubits", lptr);
            if (!q.is_array()) throw config_error("\"qubits\" must be an array", lptr + "/qubits");
            Location loc;
            loc.id = static_cast<int>(i);
            loc.qubits = q.get<std::vector<int>>();
            loc.start = get_number(arr[i], "start", lptr);
            loc.end = get_number(arr[i], "end", lptr);
            for (int qi : loc.qubits) max_qubit = std::max(max_qubit, qi);
            max_end = std::max(max_end, loc.end);
            const double w = loc.end - loc.start;
            if (min_width == 0.0 || w < min_width) min_width = w;
            locs.push_back(std::move(loc));
        }
        const int nq = static_cast<int>(get_number_or(j, "num_qubits", max_qubit + 1, ptr));
        const double t0 = get_number_or(j, "t0", min_width, ptr);
        const double total = get_number_or(j, "total_duration", max_end, ptr);
        try {
            return Schedule(std::move(locs), nq, t0, total);
        } catch (const std::invalid_argument& e) {
            throw config_error(e.what(), ptr);
        }
    }
    reject_unknown_keys(j, {"num_qubits", "depth", "t0", "arity"}, ptr);
    try {
        return build_uniform_schedule(static_cast<int>(get_integer(j, "num_qubits", ptr)),
                                      static_cast<int>(get_integer(j, "depth", ptr)),
                                      get_number(j, "t0", ptr),
                                      static_cast<int>(get_integer(j, "arity", ptr)));
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what(), ptr);
    }
}

} // namespace gnt
