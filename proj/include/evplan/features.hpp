#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "evplan/city.hpp"

namespace evplan {

/// Context feature layout: 8 POI fractions, 8 POI counts, POI entropy,
/// 4 road features, 3 transport counts.
inline constexpr int kContextDim = 24;
inline constexpr int kProfileDim = 5;

inline const std::vector<std::string>& context_feature_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (int c = 0; c < kPoiCategoryCount; ++c) {
            n.push_back(std::string("poi_fraction_") + poi_category_name(static_cast<PoiCategory>(c)));
        }
        for (int c = 0; c < kPoiCategoryCount; ++c) {
            n.push_back(std::string("poi_count_") + poi_category_name(static_cast<PoiCategory>(c)));
        }
        n.push_back("poi_entropy");
        n.push_back("avg_street_length");
        n.push_back("intersection_density");
        n.push_back("street_density");
        n.push_back("degree_centrality");
        n.push_back("n_subway");
        n.push_back("n_bus");
        n.push_back("n_parking");
        return n;
    }();
    return names;
}

inline const std::vector<std::string>& profile_feature_names() {
    static const std::vector<std::string> names = {"n_nearby_stations", "n_nearby_chargers",
                                                   "n_slow", "n_fast", "n_all_chargers"};
    return names;
}

using ContextFeatures = std::array<double, kContextDim>;
using ProfileFeatures = std::array<double, kProfileDim>;

/**
 * Context features of one station over the disc of radius r around it.
 *
 * POI entropy is Shannon entropy (natural log) of the category fractions.
 * Densities divide by the disc area pi*r^2 in km^2; street density counts
 * summed street length in km. A street belongs to the disc when both of its
 * endpoints do. Degree centrality is degree/(N-1) on the simple undirected
 * subgraph induced by the in-disc intersections, averaged over them.
 */
inline ContextFeatures extract_context_features(const CityDataset& ds, std::size_t station_idx,
                                                double radius_m) {
    if (!(radius_m > 0.0)) throw ValidationError("extract_context_features: radius must be > 0");
    const GeoPoint center = ds.stations[station_idx].location;
    ContextFeatures f{};
    const double area_km2 = M_PI * radius_m * radius_m / 1e6;

    // POIs
    double poi_total = 0.0;
    for (std::size_t i : ds.poi_index().candidates(center, radius_m)) {
        const Poi& p = ds.pois[i];
        if (haversine_m(p.pos, center) <= radius_m) {
            f[8 + static_cast<int>(p.category)] += 1.0;
            poi_total += 1.0;
        }
    }
    if (poi_total > 0.0) {
        double entropy = 0.0;
        for (int c = 0; c < kPoiCategoryCount; ++c) {
            const double frac = f[8 + c] / poi_total;
            f[c] = frac;
            if (frac > 0.0) entropy -= frac * std::log(frac);
        }
        f[16] = entropy;
    }

    // Roads: nodes in the disc, then edges with both endpoints inside.
    std::vector<char> inside(ds.roads.nodes.size(), 0);
    std::vector<std::size_t> in_nodes;
    for (std::size_t i : ds.node_index().candidates(center, radius_m)) {
        if (haversine_m(ds.roads.nodes[i].pos, center) <= radius_m) {
            inside[i] = 1;
            in_nodes.push_back(i);
        }
    }
    double total_len_m = 0.0;
    std::size_t n_edges = 0;
    std::vector<std::vector<std::size_t>> adj;  // simple-graph adjacency among in-disc nodes
    std::unordered_map<std::size_t, std::size_t> local;
    for (std::size_t k = 0; k < in_nodes.size(); ++k) local[in_nodes[k]] = k;
    adj.resize(in_nodes.size());
    for (const RoadEdge& e : ds.roads.edges) {
        if (e.u >= inside.size() || e.v >= inside.size()) continue;
        if (!inside[e.u] || !inside[e.v]) continue;
        total_len_m += e.length_m;
        ++n_edges;
        if (e.u == e.v) continue;  // self-loops count for length, not degree
        const std::size_t a = local[e.u];
        const std::size_t b = local[e.v];
        auto& na = adj[a];
        if (std::find(na.begin(), na.end(), b) == na.end()) {
            na.push_back(b);
            adj[b].push_back(a);
        }
    }
    if (n_edges > 0) f[17] = total_len_m / static_cast<double>(n_edges);
    f[18] = static_cast<double>(in_nodes.size()) / area_km2;
    f[19] = (total_len_m / 1000.0) / area_km2;
    if (in_nodes.size() > 1) {
        double sum_centrality = 0.0;
        for (const auto& neighbors : adj) {
            sum_centrality += static_cast<double>(neighbors.size()) /
                              static_cast<double>(in_nodes.size() - 1);
        }
        f[20] = sum_centrality / static_cast<double>(in_nodes.size());
    }

    // Transport
    for (std::size_t i : ds.transport_index().candidates(center, radius_m)) {
        const TransportFacility& t = ds.transport[i];
        if (haversine_m(t.pos, center) <= radius_m) {
            f[21 + static_cast<int>(t.kind)] += 1.0;
        }
    }
    return f;
}

/**
 * Profile features of one station under a plan:
 * [#nearby stations, total chargers at nearby stations, own slow, own fast, own total].
 * Charger counts come from `plan`, never from the dataset's deployed counts.
 */
inline ProfileFeatures extract_profile_features(const CityDataset& ds, const ChargerPlan& plan,
                                                std::size_t station_idx, double radius_m) {
    const ChargingStation& self = ds.stations[station_idx];
    const StationCounts& own = plan.at(self.id);
    ProfileFeatures f{};
    const std::vector<std::size_t> ns = station_neighbors(ds, station_idx, radius_m);
    f[0] = static_cast<double>(ns.size());
    double nearby = 0.0;
    for (std::size_t j : ns) {
        const StationCounts& c = plan.at(ds.stations[j].id);
        nearby += c.n_slow + c.n_fast;
    }
    f[1] = nearby;
    f[2] = own.n_slow;
    f[3] = own.n_fast;
    f[4] = own.n_slow + own.n_fast;
    return f;
}

/**
 * Per-dimension min-max scaler. Fitted dimensions map their fit range onto
 * [0,1]; degenerate dimensions (max == min) map to 0. Values outside the fit
 * range extrapolate past [0,1] on purpose — fine-tuned plans probe slightly
 * beyond the fitted charger counts.
 */
class Normalizer {
public:
    Normalizer() = default;

    template <typename Row>
    static Normalizer fit(const std::vector<Row>& samples) {
        if (samples.empty()) throw ValidationError("Normalizer::fit: empty sample set");
        Normalizer n;
        const std::size_t dim = samples.front().size();
        n.lo_.assign(dim, 0.0);
        n.hi_.assign(dim, 0.0);
        for (std::size_t d = 0; d < dim; ++d) {
            double lo = samples[0][d], hi = samples[0][d];
            for (const auto& s : samples) {
                lo = std::min(lo, s[d]);
                hi = std::max(hi, s[d]);
            }
            n.lo_[d] = lo;
            n.hi_[d] = hi;
        }
        return n;
    }

    std::size_t dim() const { return lo_.size(); }
    bool fitted() const { return !lo_.empty(); }

    double apply_one(std::size_t d, double v) const {
        const double span = hi_[d] - lo_[d];
        if (span <= 0.0) return 0.0;
        return (v - lo_[d]) / span;
    }

    template <typename Row>
    std::vector<double> apply(const Row& v) const {
        std::vector<double> out(v.size());
        for (std::size_t d = 0; d < v.size(); ++d) out[d] = apply_one(d, v[d]);
        return out;
    }

    const std::vector<double>& lo() const { return lo_; }
    const std::vector<double>& hi() const { return hi_; }

    void set(std::vector<double> lo, std::vector<double> hi) {
        lo_ = std::move(lo);
        hi_ = std::move(hi);
    }

private:
    std::vector<double> lo_, hi_;
};

/// lambda x kContextDim matrix, row-major; row 0 is the station itself.
struct ContextFeatureMap {
    int rows = 0;
    std::vector<double> values;  // rows * kContextDim

    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * kContextDim + c]; }
};

/// Plan-independent context features of every station, computed once per
/// (dataset, radius) and reused by map building and prediction.
struct ContextFeatureTable {
    double radius_m = 0.0;
    std::vector<ContextFeatures> rows;

    static ContextFeatureTable build(const CityDataset& ds, double radius_m) {
        ContextFeatureTable t;
        t.radius_m = radius_m;
        t.rows.reserve(ds.stations.size());
        for (std::size_t i = 0; i < ds.stations.size(); ++i) {
            t.rows.push_back(extract_context_features(ds, i, radius_m));
        }
        return t;
    }
};

/**
 * Builds the lambda x d context map of one station: its own normalized context
 * features first, then those of its lambda-1 nearest neighbors in query order.
 */
inline ContextFeatureMap build_context_map(const CityDataset& ds, const ContextFeatureTable& table,
                                           const std::string& station_id, int lambda,
                                           const Normalizer& norm) {
    if (lambda < 1) throw ValidationError("build_context_map: lambda must be >= 1");
    if (!norm.fitted()) throw ValidationError("build_context_map: normalizer not fitted");
    const KNearestResult knn = k_nearest_stations(ds, station_id, static_cast<std::size_t>(lambda));
    ContextFeatureMap map;
    map.rows = lambda;
    map.values.reserve(static_cast<std::size_t>(lambda) * kContextDim);
    for (std::size_t idx : knn.indices) {
        const std::vector<double> row = norm.apply(table.rows[idx]);
        map.values.insert(map.values.end(), row.begin(), row.end());
    }
    return map;
}

}  // namespace evplan
