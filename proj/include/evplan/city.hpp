#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "evplan/common.hpp"
#include "evplan/geo.hpp"

namespace evplan {

enum class CityRole { kSource, kTarget };

/// The eight POI categories, in canonical order.
enum class PoiCategory : int {
    kCompany = 0,
    kSchool,
    kHotel,
    kFastFood,
    kSpot,
    kCommunity,
    kHospital,
    kLifeService,
};

inline constexpr int kPoiCategoryCount = 8;

inline const char* poi_category_name(PoiCategory c) {
    static const char* names[kPoiCategoryCount] = {"company",   "school",   "hotel",
                                                   "fast food", "spot",     "community",
                                                   "hospital",  "life service"};
    return names[static_cast<int>(c)];
}

inline std::optional<PoiCategory> parse_poi_category(const std::string& s) {
    for (int i = 0; i < kPoiCategoryCount; ++i) {
        if (s == poi_category_name(static_cast<PoiCategory>(i))) {
            return static_cast<PoiCategory>(i);
        }
    }
    return std::nullopt;
}

enum class TransportKind : int { kSubway = 0, kBus, kParking };

inline constexpr int kTransportKindCount = 3;

inline const char* transport_kind_name(TransportKind k) {
    static const char* names[kTransportKindCount] = {"subway", "bus", "parking"};
    return names[static_cast<int>(k)];
}

inline std::optional<TransportKind> parse_transport_kind(const std::string& s) {
    for (int i = 0; i < kTransportKindCount; ++i) {
        if (s == transport_kind_name(static_cast<TransportKind>(i))) {
            return static_cast<TransportKind>(i);
        }
    }
    return std::nullopt;
}

struct Poi {
    GeoPoint pos;
    PoiCategory category;
};

struct TransportFacility {
    GeoPoint pos;
    TransportKind kind;
};

/// A geolocated mass (parking-session count or resident count).
struct WeightedPoint {
    GeoPoint pos;
    double weight = 0.0;
};

struct RoadNode {
    std::string id;
    GeoPoint pos;
};

struct RoadEdge {
    std::size_t u = 0;  // index into RoadNetwork::nodes
    std::size_t v = 0;
    double length_m = 0.0;
};

/// Undirected street graph. Parallel edges are kept (they matter for length
/// statistics) but collapse to one link for degree computations.
struct RoadNetwork {
    std::vector<RoadNode> nodes;
    std::vector<RoadEdge> edges;
};

/// Per-interval unit service prices of one charger, length T.
using PriceSchedule = std::vector<double>;

/// Per-interval utilization rates in [0, 1], length T.
using DemandSeries = std::vector<double>;

struct ChargingStation {
    std::string id;
    GeoPoint location;
    int n_slow = 0;
    int n_fast = 0;
    Money cost_slow = 0;
    Money cost_fast = 0;
    PriceSchedule price_slow;
    PriceSchedule price_fast;
    std::optional<DemandSeries> demand_slow;
    std::optional<DemandSeries> demand_fast;
};

/// Charger counts assigned to one station by a plan.
struct StationCounts {
    int n_slow = 0;
    int n_fast = 0;

    bool operator==(const StationCounts&) const = default;
};

/// A full charger plan: one (slow, fast) pair per station of a city.
struct ChargerPlan {
    std::map<std::string, StationCounts> entries;

    const StationCounts& at(const std::string& station_id) const {
        auto it = entries.find(station_id);
        if (it == entries.end()) {
            throw ValidationError("plan has no entry for station '" + station_id + "'");
        }
        return it->second;
    }

    bool operator==(const ChargerPlan&) const = default;
};

/**
 * Uniform lat/lon bucket grid for radius queries over large point tables.
 * Cells are sized in degrees; a radius query gathers candidate cells and
 * exact-filters by haversine distance.
 */
class GridIndex {
public:
    GridIndex() = default;

    template <typename Item, typename GetPos>
    void build(const std::vector<Item>& items, GetPos get_pos, double cell_deg = 0.01) {
        cell_deg_ = cell_deg;
        cells_.clear();
        for (std::size_t i = 0; i < items.size(); ++i) {
            cells_[key(get_pos(items[i]))].push_back(i);
        }
    }

    /// Indices of items whose position may be within `radius_m` of `center`;
    /// callers must still distance-filter.
    std::vector<std::size_t> candidates(const GeoPoint& center, double radius_m) const {
        // 1 degree of latitude is ~111.2 km; pad longitude by the same factor
        // (over-approximates away from the equator's widest cells, never under).
        const double pad_deg = radius_m / 111194.9 + cell_deg_;
        const double coslat = std::max(0.01, std::cos(center.lat * 0.017453292519943295));
        const double pad_lon = pad_deg / coslat;
        std::vector<std::size_t> out;
        const long klat0 = static_cast<long>(std::floor((center.lat - pad_deg) / cell_deg_));
        const long klat1 = static_cast<long>(std::floor((center.lat + pad_deg) / cell_deg_));
        const long klon0 = static_cast<long>(std::floor((center.lon - pad_lon) / cell_deg_));
        const long klon1 = static_cast<long>(std::floor((center.lon + pad_lon) / cell_deg_));
        for (long a = klat0; a <= klat1; ++a) {
            for (long b = klon0; b <= klon1; ++b) {
                auto it = cells_.find({a, b});
                if (it == cells_.end()) continue;
                out.insert(out.end(), it->second.begin(), it->second.end());
            }
        }
        return out;
    }

private:
    using Key = std::pair<long, long>;

    Key key(const GeoPoint& p) const {
        return {static_cast<long>(std::floor(p.lat / cell_deg_)),
                static_cast<long>(std::floor(p.lon / cell_deg_))};
    }

    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return std::hash<long>()(k.first) * 1000003u ^ std::hash<long>()(k.second);
        }
    };

    double cell_deg_ = 0.01;
    std::unordered_map<Key, std::vector<std::size_t>, KeyHash> cells_;
};

/**
 * One city's worth of data: stations plus the context tables used for
 * feature extraction. Immutable after construction; all queries are const.
 */
class CityDataset {
public:
    CityRole role = CityRole::kTarget;
    int T = 0;  // number of daily time intervals
    std::vector<ChargingStation> stations;
    std::vector<Poi> pois;
    std::vector<TransportFacility> transport;
    RoadNetwork roads;
    std::optional<std::vector<WeightedPoint>> parking_sessions;
    std::optional<std::vector<WeightedPoint>> population;

    /// Rebuilds the id map and the spatial indexes; call once after filling.
    void finalize() {
        station_by_id_.clear();
        for (std::size_t i = 0; i < stations.size(); ++i) {
            if (!station_by_id_.emplace(stations[i].id, i).second) {
                throw ValidationError("duplicate station id '" + stations[i].id + "'");
            }
        }
        poi_index_.build(pois, [](const Poi& p) { return p.pos; });
        transport_index_.build(transport, [](const TransportFacility& t) { return t.pos; });
        node_index_.build(roads.nodes, [](const RoadNode& n) { return n.pos; });
    }

    std::size_t station_index(const std::string& id) const {
        auto it = station_by_id_.find(id);
        if (it == station_by_id_.end()) throw ValidationError("unknown station id '" + id + "'");
        return it->second;
    }

    bool has_station(const std::string& id) const { return station_by_id_.count(id) > 0; }

    const GridIndex& poi_index() const { return poi_index_; }
    const GridIndex& transport_index() const { return transport_index_; }
    const GridIndex& node_index() const { return node_index_; }

    /// The deployed plan of a source city (charger counts as recorded).
    ChargerPlan deployed_plan() const {
        ChargerPlan plan;
        for (const auto& s : stations) plan.entries[s.id] = {s.n_slow, s.n_fast};
        return plan;
    }

private:
    std::unordered_map<std::string, std::size_t> station_by_id_;
    GridIndex poi_index_;
    GridIndex transport_index_;
    GridIndex node_index_;
};

/**
 * Stations whose great-circle distance to `center` is <= radius_m, ordered by
 * ascending distance with ties broken by ascending id. A station located
 * exactly at `center` is excluded (radius queries originate at a station and
 * must not report the station itself).
 */
inline std::vector<std::size_t> stations_within_radius(const CityDataset& ds,
                                                       const GeoPoint& center, double radius_m) {
    if (!(radius_m > 0.0)) throw ValidationError("stations_within_radius: radius must be > 0");
    std::vector<std::pair<double, std::size_t>> hits;
    for (std::size_t i = 0; i < ds.stations.size(); ++i) {
        if (ds.stations[i].location == center) continue;
        const double d = haversine_m(ds.stations[i].location, center);
        if (d <= radius_m) hits.emplace_back(d, i);
    }
    std::sort(hits.begin(), hits.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return ds.stations[a.second].id < ds.stations[b.second].id;
    });
    std::vector<std::size_t> out;
    out.reserve(hits.size());
    for (const auto& [d, i] : hits) out.push_back(i);
    return out;
}

/**
 * Neighbor set NS(c_i): stations other than `station_idx` within radius_m.
 * Unlike the point query above, exclusion is by identity, so a co-located
 * station still counts as a neighbor.
 */
inline std::vector<std::size_t> station_neighbors(const CityDataset& ds, std::size_t station_idx,
                                                  double radius_m) {
    const GeoPoint center = ds.stations[station_idx].location;
    std::vector<std::pair<double, std::size_t>> hits;
    for (std::size_t i = 0; i < ds.stations.size(); ++i) {
        if (i == station_idx) continue;
        const double d = haversine_m(ds.stations[i].location, center);
        if (d <= radius_m) hits.emplace_back(d, i);
    }
    std::sort(hits.begin(), hits.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return ds.stations[a.second].id < ds.stations[b.second].id;
    });
    std::vector<std::size_t> out;
    out.reserve(hits.size());
    for (const auto& [d, i] : hits) out.push_back(i);
    return out;
}

struct KNearestResult {
    std::vector<std::size_t> indices;  // always exactly k entries
    bool padded = false;               // true when the city had fewer than k stations
};

/**
 * The station itself first, then its k-1 nearest neighbors (ascending
 * distance, ties by id). Cities with fewer than k stations repeat the last
 * entry so the result always has length k.
 */
inline KNearestResult k_nearest_stations(const CityDataset& ds, const std::string& station_id,
                                         std::size_t k) {
    if (k < 1) throw ValidationError("k_nearest_stations: k must be >= 1");
    const std::size_t self = ds.station_index(station_id);
    const GeoPoint center = ds.stations[self].location;
    std::vector<std::pair<double, std::size_t>> others;
    for (std::size_t i = 0; i < ds.stations.size(); ++i) {
        if (i == self) continue;
        others.emplace_back(haversine_m(ds.stations[i].location, center), i);
    }
    std::sort(others.begin(), others.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return ds.stations[a.second].id < ds.stations[b.second].id;
    });
    KNearestResult res;
    res.indices.push_back(self);
    for (const auto& [d, i] : others) {
        if (res.indices.size() == k) break;
        res.indices.push_back(i);
    }
    while (res.indices.size() < k) {
        res.indices.push_back(res.indices.back());
        res.padded = true;
    }
    return res;
}

/// Total deployment cost of a plan over the given stations.
inline Money plan_cost(const ChargerPlan& plan, const std::vector<ChargingStation>& stations) {
    Money total = 0;
    for (const auto& s : stations) {
        const StationCounts& c = plan.at(s.id);
        total += s.cost_slow * c.n_slow + s.cost_fast * c.n_fast;
    }
    return total;
}

}  // namespace evplan
