#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "evplan/city.hpp"
#include "evplan/csv.hpp"

namespace evplan {

/**
 * File set of one city. All tables are UTF-8 CSV with a header row:
 *
 *   stations.csv          id, lat, lon, n_slow, n_fast, cost_slow, cost_fast,
 *                         price_slow_1..T, price_fast_1..T,
 *                         [demand_slow_1..T, demand_fast_1..T]   (source cities only)
 *   pois.csv              lat, lon, category
 *   transport.csv         lat, lon, kind
 *   roads_nodes.csv       node_id, lat, lon
 *   roads_edges.csv       u, v, length_m
 *   parking_sessions.csv  lat, lon, count      (optional)
 *   population.csv        lat, lon, persons    (optional)
 */
struct CityPaths {
    std::string stations;
    std::string pois;
    std::string transport;
    std::string roads_nodes;
    std::string roads_edges;
    std::string parking_sessions;  // empty = absent
    std::string population;        // empty = absent

    static CityPaths in_directory(const std::string& dir) {
        namespace fs = std::filesystem;
        CityPaths p;
        p.stations = dir + "/stations.csv";
        p.pois = dir + "/pois.csv";
        p.transport = dir + "/transport.csv";
        p.roads_nodes = dir + "/roads_nodes.csv";
        p.roads_edges = dir + "/roads_edges.csv";
        if (fs::exists(dir + "/parking_sessions.csv")) p.parking_sessions = dir + "/parking_sessions.csv";
        if (fs::exists(dir + "/population.csv")) p.population = dir + "/population.csv";
        return p;
    }
};

namespace detail {

inline GeoPoint read_point(const CsvTable& t, std::size_t row, const char* where) {
    GeoPoint p{t.number(row, "lat"), t.number(row, "lon")};
    validate_geo_point(p, where);
    return p;
}

inline std::vector<double> read_series(const CsvTable& t, std::size_t row, const std::string& prefix,
                                       int T) {
    std::vector<double> v;
    v.reserve(T);
    for (int k = 1; k <= T; ++k) v.push_back(t.number(row, prefix + std::to_string(k)));
    return v;
}

inline void check_series_columns(const CsvTable& t, const std::string& prefix, int T) {
    for (int k = 1; k <= T; ++k) {
        const std::string name = prefix + std::to_string(k);
        if (!t.has_column(name)) {
            throw ValidationError(t.path() + ": missing column '" + name +
                                  "' (T=" + std::to_string(T) + " declared in the run config)");
        }
    }
    // a column one past T means the file was produced with a different T
    const std::string extra = prefix + std::to_string(T + 1);
    if (t.has_column(extra)) {
        throw ValidationError(t.path() + ": unexpected column '" + extra + "' (T=" +
                              std::to_string(T) + " declared in the run config)");
    }
}

}  // namespace detail

/**
 * Loads and validates one city. T (intervals per day) comes from the run
 * configuration and is checked against the column layout. Source cities must
 * carry demand series for every station; target cities must not carry any.
 */
inline CityDataset load_city_dataset(const CityPaths& paths, CityRole role, int T) {
    if (T < 1) throw ValidationError("T must be >= 1");
    CityDataset ds;
    ds.role = role;
    ds.T = T;

    // --- stations ---
    const CsvTable st = CsvTable::read_file(paths.stations);
    for (const char* col : {"id", "lat", "lon", "n_slow", "n_fast", "cost_slow", "cost_fast"}) {
        (void)st.column(col);
    }
    detail::check_series_columns(st, "price_slow_", T);
    detail::check_series_columns(st, "price_fast_", T);
    const bool has_demand = st.has_column("demand_slow_1");
    if (role == CityRole::kSource && !has_demand) {
        throw ValidationError(paths.stations + ": source city requires demand_slow_*/demand_fast_* columns");
    }
    if (role == CityRole::kTarget && has_demand) {
        throw ValidationError(paths.stations + ": target city must not carry demand columns");
    }
    if (has_demand) {
        detail::check_series_columns(st, "demand_slow_", T);
        detail::check_series_columns(st, "demand_fast_", T);
    }
    for (std::size_t r = 0; r < st.row_count(); ++r) {
        ChargingStation s;
        s.id = st.cell(r, "id");
        if (s.id.empty()) throw ValidationError(paths.stations + ": empty station id, row " + std::to_string(r + 2));
        s.location = detail::read_point(st, r, "stations.csv");
        s.n_slow = static_cast<int>(st.integer(r, "n_slow"));
        s.n_fast = static_cast<int>(st.integer(r, "n_fast"));
        if (s.n_slow < 0 || s.n_fast < 0) {
            throw ValidationError(paths.stations + ": negative charger count for station '" + s.id + "'");
        }
        s.cost_slow = st.integer(r, "cost_slow");
        s.cost_fast = st.integer(r, "cost_fast");
        if (s.cost_slow <= 0 || s.cost_fast <= 0) {
            throw ValidationError(paths.stations + ": non-positive charger cost for station '" + s.id + "'");
        }
        s.price_slow = detail::read_series(st, r, "price_slow_", T);
        s.price_fast = detail::read_series(st, r, "price_fast_", T);
        for (double p : s.price_slow) {
            if (p < 0) throw ValidationError(paths.stations + ": negative price for station '" + s.id + "'");
        }
        for (double p : s.price_fast) {
            if (p < 0) throw ValidationError(paths.stations + ": negative price for station '" + s.id + "'");
        }
        if (has_demand) {
            s.demand_slow = detail::read_series(st, r, "demand_slow_", T);
            s.demand_fast = detail::read_series(st, r, "demand_fast_", T);
            for (const auto* series : {&*s.demand_slow, &*s.demand_fast}) {
                for (double y : *series) {
                    if (!(y >= 0.0 && y <= 1.0)) {
                        throw ValidationError(paths.stations + ": demand out of range [0,1] for station '" +
                                              s.id + "' (value " + std::to_string(y) + ")");
                    }
                }
            }
        }
        ds.stations.push_back(std::move(s));
    }

    // --- POIs ---
    const CsvTable poi = CsvTable::read_file(paths.pois);
    for (std::size_t r = 0; r < poi.row_count(); ++r) {
        const std::string& cat = poi.cell(r, "category");
        auto parsed = parse_poi_category(cat);
        if (!parsed) {
            throw ValidationError(paths.pois + ": column 'category' row " + std::to_string(r + 2) +
                                  ": unknown category '" + cat + "'");
        }
        ds.pois.push_back({detail::read_point(poi, r, "pois.csv"), *parsed});
    }

    // --- transport ---
    const CsvTable tr = CsvTable::read_file(paths.transport);
    for (std::size_t r = 0; r < tr.row_count(); ++r) {
        const std::string& kind = tr.cell(r, "kind");
        auto parsed = parse_transport_kind(kind);
        if (!parsed) {
            throw ValidationError(paths.transport + ": column 'kind' row " + std::to_string(r + 2) +
                                  ": unknown kind '" + kind + "'");
        }
        ds.transport.push_back({detail::read_point(tr, r, "transport.csv"), *parsed});
    }

    // --- roads ---
    const CsvTable rn = CsvTable::read_file(paths.roads_nodes);
    std::unordered_map<std::string, std::size_t> node_idx;
    for (std::size_t r = 0; r < rn.row_count(); ++r) {
        RoadNode n{rn.cell(r, "node_id"), detail::read_point(rn, r, "roads_nodes.csv")};
        if (!node_idx.emplace(n.id, ds.roads.nodes.size()).second) {
            throw ValidationError(paths.roads_nodes + ": duplicate node_id '" + n.id + "'");
        }
        ds.roads.nodes.push_back(std::move(n));
    }
    const CsvTable re = CsvTable::read_file(paths.roads_edges);
    for (std::size_t r = 0; r < re.row_count(); ++r) {
        RoadEdge e;
        auto find = [&](const std::string& col) {
            const std::string& id = re.cell(r, col);
            auto it = node_idx.find(id);
            if (it == node_idx.end()) {
                throw ValidationError(paths.roads_edges + ": column '" + col + "' row " +
                                      std::to_string(r + 2) + ": unknown node '" + id + "'");
            }
            return it->second;
        };
        e.u = find("u");
        e.v = find("v");
        e.length_m = re.number(r, "length_m");
        if (!(e.length_m > 0.0)) {
            throw ValidationError(paths.roads_edges + ": column 'length_m' row " + std::to_string(r + 2) +
                                  ": edge length must be > 0");
        }
        ds.roads.edges.push_back(e);
    }

    // --- optional proxies ---
    auto read_weighted = [](const std::string& path, const char* value_col) {
        std::vector<WeightedPoint> out;
        const CsvTable t = CsvTable::read_file(path);
        for (std::size_t r = 0; r < t.row_count(); ++r) {
            WeightedPoint w{detail::read_point(t, r, path.c_str()), t.number(r, value_col)};
            if (w.weight < 0) {
                throw ValidationError(path + ": column '" + std::string(value_col) + "' row " +
                                      std::to_string(r + 2) + ": negative value");
            }
            out.push_back(w);
        }
        return out;
    };
    if (!paths.parking_sessions.empty()) {
        ds.parking_sessions = read_weighted(paths.parking_sessions, "count");
    }
    if (!paths.population.empty()) {
        ds.population = read_weighted(paths.population, "persons");
    }

    ds.finalize();
    return ds;
}

inline CityDataset load_city_dataset(const std::string& dir, CityRole role, int T) {
    return load_city_dataset(CityPaths::in_directory(dir), role, T);
}

/// Writes a dataset back out in the ingestion schemas (lossless round trip).
inline void save_city_dataset(const CityDataset& ds, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const bool demand = ds.role == CityRole::kSource;

    {
        CsvWriter w(dir + "/stations.csv");
        std::vector<std::string> head = {"id", "lat", "lon", "n_slow", "n_fast", "cost_slow", "cost_fast"};
        auto series_cols = [&](const std::string& prefix) {
            for (int k = 1; k <= ds.T; ++k) head.push_back(prefix + std::to_string(k));
        };
        series_cols("price_slow_");
        series_cols("price_fast_");
        if (demand) {
            series_cols("demand_slow_");
            series_cols("demand_fast_");
        }
        w.row(head);
        for (const auto& s : ds.stations) {
            std::vector<std::string> row = {s.id,
                                            CsvWriter::num(s.location.lat),
                                            CsvWriter::num(s.location.lon),
                                            std::to_string(s.n_slow),
                                            std::to_string(s.n_fast),
                                            std::to_string(s.cost_slow),
                                            std::to_string(s.cost_fast)};
            for (double p : s.price_slow) row.push_back(CsvWriter::num(p));
            for (double p : s.price_fast) row.push_back(CsvWriter::num(p));
            if (demand) {
                for (double y : *s.demand_slow) row.push_back(CsvWriter::num(y));
                for (double y : *s.demand_fast) row.push_back(CsvWriter::num(y));
            }
            w.row(row);
        }
    }
    {
        CsvWriter w(dir + "/pois.csv");
        w.row({"lat", "lon", "category"});
        for (const auto& p : ds.pois) {
            w.row({CsvWriter::num(p.pos.lat), CsvWriter::num(p.pos.lon), poi_category_name(p.category)});
        }
    }
    {
        CsvWriter w(dir + "/transport.csv");
        w.row({"lat", "lon", "kind"});
        for (const auto& t : ds.transport) {
            w.row({CsvWriter::num(t.pos.lat), CsvWriter::num(t.pos.lon), transport_kind_name(t.kind)});
        }
    }
    {
        CsvWriter w(dir + "/roads_nodes.csv");
        w.row({"node_id", "lat", "lon"});
        for (const auto& n : ds.roads.nodes) {
            w.row({n.id, CsvWriter::num(n.pos.lat), CsvWriter::num(n.pos.lon)});
        }
    }
    {
        CsvWriter w(dir + "/roads_edges.csv");
        w.row({"u", "v", "length_m"});
        for (const auto& e : ds.roads.edges) {
            w.row({ds.roads.nodes[e.u].id, ds.roads.nodes[e.v].id, CsvWriter::num(e.length_m)});
        }
    }
    auto write_weighted = [&](const std::vector<WeightedPoint>& pts, const std::string& path,
                              const char* value_col) {
        CsvWriter w(path);
        w.row({"lat", "lon", value_col});
        for (const auto& p : pts) {
            w.row({CsvWriter::num(p.pos.lat), CsvWriter::num(p.pos.lon), CsvWriter::num(p.weight)});
        }
    };
    if (ds.parking_sessions) write_weighted(*ds.parking_sessions, dir + "/parking_sessions.csv", "count");
    if (ds.population) write_weighted(*ds.population, dir + "/population.csv", "persons");
}

}  // namespace evplan
