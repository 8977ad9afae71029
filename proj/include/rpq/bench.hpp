#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpq/baseline.hpp"
#include "rpq/generators.hpp"
#include "rpq/oracle.hpp"
#include "rpq/ospg.hpp"

namespace rpq {

/// Least-squares slope of log(work) against log(size). Needs at least three
/// points with strictly increasing sizes and positive work values.
inline double fit_exponent(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_exponent needs at least 3 points");
    double mean_x = 0, mean_y = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& [size, work] = points[i];
        if (size <= 0 || work <= 0)
            throw std::invalid_argument("fit_exponent needs positive sizes and work");
        if (i > 0 && size <= points[i - 1].first)
            throw std::invalid_argument("fit_exponent needs strictly increasing sizes");
        mean_x += std::log(size);
        mean_y += std::log(work);
    }
    mean_x /= static_cast<double>(points.size());
    mean_y /= static_cast<double>(points.size());
    double num = 0, den = 0;
    for (const auto& [size, work] : points) {
        const double dx = std::log(size) - mean_x;
        num += dx * (std::log(work) - mean_y);
        den += dx * dx;
    }
    return num / den;
}

struct BenchRow {
    std::string family;
    std::size_t size = 0;
    std::string engine;
    std::uint64_t out = 0;
    std::string counter;
    std::uint64_t value = 0;
    std::uint64_t wall_ns = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;

    void to_csv(std::ostream& os) const {
        os << "family,size,engine,out,counter_name,value,wall_ns\n";
        for (const BenchRow& r : rows) {
            os << r.family << ',' << r.size << ',' << r.engine << ',' << r.out << ','
               << r.counter << ',' << r.value << ',' << r.wall_ns << '\n';
        }
    }

    /// (size, value) series for one family/engine/counter combination.
    std::vector<std::pair<double, double>> series(const std::string& family,
                                                  const std::string& engine,
                                                  const std::string& counter) const {
        std::vector<std::pair<double, double>> pts;
        for (const BenchRow& r : rows) {
            if (r.family == family && r.engine == engine && r.counter == counter) {
                pts.push_back({static_cast<double>(r.size), static_cast<double>(r.value)});
            }
        }
        return pts;
    }
};

namespace detail {

struct CellResult {
    std::uint64_t out = 0;
    std::vector<std::pair<std::string, std::uint64_t>> counters;
};

inline CellResult run_engine_once(const std::string& engine, const LabeledGraph& g,
                                  const Nfa& m, const AstPtr& ast) {
    CellResult res;
    if (engine == "ospg") {
        const OspgReport r = eval_rpq_detailed(g, m);
        res.out = r.pairs.size();
        res.counters = {{"step1_edge_checks", r.counters.step1_edge_checks},
                        {"light_join_lookups", r.counters.light_join_lookups},
                        {"heavy_sources", r.counters.heavy_sources},
                        {"heavy_bfs_edge_visits", r.counters.heavy_bfs_edge_visits},
                        {"work_total", r.counters.total()}};
    } else if (engine == "pg") {
        const PgReport r = eval_pg(g, m);
        res.out = r.pairs.size();
        res.counters = {{"bfs_edge_visits", r.bfs_edge_visits},
                        {"work_total", r.bfs_edge_visits}};
    } else if (engine == "pg-bidi") {
        const BidiReport r = eval_pg_bidirectional(g, m);
        res.out = r.pairs.size();
        res.counters = {{"fwd_bfs_edge_visits", r.forward_visits},
                        {"bwd_bfs_edge_visits", r.backward_visits},
                        {"work_total", r.forward_visits + r.backward_visits}};
    } else if (engine == "oracle") {
        const PairSet r = eval_matrix(g, ast);
        res.out = r.size();
        res.counters = {{"work_total", 0}};
    } else {
        throw std::invalid_argument("unknown engine '" + engine + "'");
    }
    return res;
}

inline LabeledGraph make_family_instance(const std::string& family, std::size_t size) {
    if (family == "path") return gen_path(size);
    if (family == "two-cycles") return gen_two_cycles(size);
    if (family == "random") {
        return gen_random(size, 4 * size, {"a", "b", "c"}, 0x5eedull + size);
    }
    throw std::invalid_argument("unknown family '" + family + "'");
}

}  // namespace detail

/// Runs every (family, size, engine) cell, collecting output size, work
/// counters, and the median wall time over `repeats` runs. Cell failures are
/// recorded as `error` rows and the grid continues.
inline BenchReport run_grid(const std::vector<std::string>& families,
                            const std::vector<std::size_t>& sizes,
                            const std::vector<std::string>& engines, const std::string& query,
                            std::size_t repeats, std::ostream* diagnostics = nullptr) {
    BenchReport report;
    const std::size_t effective_repeats = std::max<std::size_t>(repeats, 1);
    for (const std::string& family : families) {
        for (const std::size_t size : sizes) {
            for (const std::string& engine : engines) {
                try {
                    const LabeledGraph g = detail::make_family_instance(family, size);
                    const AstPtr ast = parse(query);
                    const Nfa m = compile(*ast);
                    detail::CellResult cell;
                    std::vector<std::uint64_t> walls;
                    for (std::size_t rep = 0; rep < effective_repeats; ++rep) {
                        const auto t0 = std::chrono::steady_clock::now();
                        cell = detail::run_engine_once(engine, g, m, ast);
                        const auto t1 = std::chrono::steady_clock::now();
                        walls.push_back(static_cast<std::uint64_t>(
                            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0)
                                .count()));
                    }
                    std::sort(walls.begin(), walls.end());
                    const std::uint64_t wall = walls[walls.size() / 2];
                    for (const auto& [name, value] : cell.counters) {
                        report.rows.push_back(
                            {family, size, engine, cell.out, name, value, wall});
                    }
                } catch (const std::exception& e) {
                    if (diagnostics) {
                        *diagnostics << "cell " << family << '/' << size << '/' << engine
                                     << " failed: " << e.what() << '\n';
                    }
                    report.rows.push_back({family, size, engine, 0, "error", 1, 0});
                }
            }
        }
    }
    return report;
}

}  // namespace rpq
