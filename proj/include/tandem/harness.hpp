#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tandem/episode.hpp"
#include "tandem/instances.hpp"

namespace tandem {

// How each episode's instance is produced.
struct InstanceSpec {
    enum class Kind { Random, Fixed, Hard } kind = Kind::Random;
    CubePoint fixed;
    double hard_eps = 0.2;

    static InstanceSpec random() { return {}; }

    static InstanceSpec fixed_p(double p1, double p2, double p3) {
        InstanceSpec s;
        s.kind = Kind::Fixed;
        s.fixed = CubePoint{{p1, p2, p3}};
        (void)Instance(s.fixed);  // validate now
        return s;
    }

    static InstanceSpec hard(double eps) {
        InstanceSpec s;
        s.kind = Kind::Hard;
        s.hard_eps = eps;
        return s;
    }

    // CLI syntax: random | fixed:p1,p2,p3 | hard:eps
    static InstanceSpec parse(const std::string& text) {
        if (text == "random") return random();
        if (text.rfind("fixed:", 0) == 0) {
            double p1, p2, p3;
            if (std::sscanf(text.c_str() + 6, "%lf,%lf,%lf", &p1, &p2, &p3) != 3)
                throw std::invalid_argument("instance: expected fixed:p1,p2,p3");
            return fixed_p(p1, p2, p3);
        }
        if (text.rfind("hard:", 0) == 0) {
            double eps;
            if (std::sscanf(text.c_str() + 5, "%lf", &eps) != 1)
                throw std::invalid_argument("instance: expected hard:eps");
            return hard(eps);
        }
        throw std::invalid_argument("instance: unknown spec '" + text + "'");
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::Random: return "random";
            case Kind::Fixed: {
                char buf[96];
                std::snprintf(buf, sizeof buf, "fixed:%g,%g,%g", fixed[0], fixed[1],
                              fixed[2]);
                return buf;
            }
            case Kind::Hard: {
                char buf[48];
                std::snprintf(buf, sizeof buf, "hard:%g", hard_eps);
                return buf;
            }
        }
        return "random";
    }

    Instance make(long long T, EpisodeStreams& streams) const {
        switch (kind) {
            case Kind::Random: return random_instance(streams.instance);
            case Kind::Fixed: return Instance(fixed);
            case Kind::Hard: {
                HardInstanceConfig cfg(T, hard_eps);
                return hard_instance(sample_hard_theta(cfg, streams.instance), cfg);
            }
        }
        return Instance(CubePoint{{0.5, 0.5, 0.5}});
    }
};

struct SweepConfig {
    std::vector<long long> horizons;
    long long episodes = 1;
    StrategyKind strategy = StrategyKind::Partition;
    FeedbackModel model = FeedbackModel::IndependentFullInfo;
    StrategyParams params;
    InstanceSpec instance;
    std::uint64_t master_seed = 1;
    unsigned parallelism = 1;

    void validate() const {
        if (horizons.empty()) throw std::invalid_argument("sweep: empty horizon grid");
        if (episodes < 1) throw std::invalid_argument("sweep: episodes must be >= 1");
        if (parallelism < 1) throw std::invalid_argument("sweep: parallelism must be >= 1");
        for (long long T : horizons) {
            if (T < 1) throw std::invalid_argument("sweep: horizons must be >= 1");
            if (instance.kind == InstanceSpec::Kind::Hard)
                HardInstanceConfig(T, instance.hard_eps);  // throws if incompatible
        }
        validate_pairing(strategy, model);
    }
};

struct CellSummary {
    long long horizon = 0;
    double mean_regret = 0.0;
    double stddev_regret = 0.0;
    double collision_rate = 0.0;   // mean collisions per episode
    double omega_rate = 0.0;       // fraction of episodes with a violation
    long long episodes = 0;
};

struct SweepResult {
    std::vector<EpisodeResult> rows;   // sorted by (T, episode)
    std::vector<CellSummary> cells;    // one per horizon, grid order
};

// One episode of one cell. The global episode index keys the substreams, so
// results do not depend on scheduling.
inline EpisodeResult run_indexed_episode(const SweepConfig& cfg, long long T,
                                         std::uint64_t global_index) {
    EpisodeStreams streams = EpisodeStreams::make(cfg.master_seed, global_index);
    const Instance inst = cfg.instance.make(T, streams);
    return run_episode(cfg.strategy, cfg.params, inst, cfg.model, T, cfg.master_seed,
                       global_index, streams);
}

inline CellSummary summarize_cell(long long T,
                                  const std::vector<const EpisodeResult*>& rows) {
    CellSummary cell;
    cell.horizon = T;
    cell.episodes = static_cast<long long>(rows.size());
    if (rows.empty()) return cell;
    double sum = 0.0, sumsq = 0.0, coll = 0.0, omega = 0.0;
    for (const EpisodeResult* r : rows) {
        sum += r->pseudo_regret;
        sumsq += r->pseudo_regret * r->pseudo_regret;
        coll += static_cast<double>(r->collision_count);
        omega += r->omega_violation ? 1.0 : 0.0;
    }
    const double n = static_cast<double>(rows.size());
    cell.mean_regret = sum / n;
    const double var = std::max(0.0, sumsq / n - cell.mean_regret * cell.mean_regret);
    cell.stddev_regret = std::sqrt(var);
    cell.collision_rate = coll / n;
    cell.omega_rate = omega / n;
    return cell;
}

// Monte Carlo over the grid: episodes are independent jobs pulled off an
// atomic counter; every job writes its own slot, so aggregation order never
// depends on the parallelism width.
inline SweepResult monte_carlo(const SweepConfig& cfg) {
    cfg.validate();
    struct Job {
        std::size_t cell;
        long long T;
        std::uint64_t global_index;
    };
    std::vector<Job> jobs;
    for (std::size_t c = 0; c < cfg.horizons.size(); ++c)
        for (long long e = 0; e < cfg.episodes; ++e)
            jobs.push_back({c, cfg.horizons[c],
                            static_cast<std::uint64_t>(c) *
                                    static_cast<std::uint64_t>(cfg.episodes) +
                                static_cast<std::uint64_t>(e)});

    std::vector<EpisodeResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            results[i] = run_indexed_episode(cfg, jobs[i].T, jobs[i].global_index);
        }
    };
    if (cfg.parallelism <= 1 || jobs.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const unsigned width = std::min<unsigned>(
            cfg.parallelism, static_cast<unsigned>(jobs.size()));
        pool.reserve(width);
        for (unsigned i = 0; i < width; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SweepResult out;
    out.cells.reserve(cfg.horizons.size());
    for (std::size_t c = 0; c < cfg.horizons.size(); ++c) {
        std::vector<const EpisodeResult*> cell_rows;
        cell_rows.reserve(static_cast<std::size_t>(cfg.episodes));
        for (std::size_t i = 0; i < jobs.size(); ++i)
            if (jobs[i].cell == c) cell_rows.push_back(&results[i]);
        out.cells.push_back(summarize_cell(cfg.horizons[c], cell_rows));
    }

    out.rows = std::move(results);
    std::stable_sort(out.rows.begin(), out.rows.end(),
                     [](const EpisodeResult& x, const EpisodeResult& y) {
                         if (x.horizon != y.horizon) return x.horizon < y.horizon;
                         return x.episode_index < y.episode_index;
                     });
    return out;
}

// Least-squares slope of log(regret) against log(T).
inline double fit_exponent(const std::vector<std::pair<long long, double>>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_exponent: need at least 3 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [T, regret] : points) {
        if (!(regret > 0.0) || T < 1)
            throw std::invalid_argument("fit_exponent: points must be positive");
        const double x = std::log(static_cast<double>(T));
        const double y = std::log(regret);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(points.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_exponent: degenerate horizons");
    return (n * sxy - sx * sy) / denom;
}

inline constexpr std::string_view kCsvHeader =
    "model,strategy,T,seed,episode,theta,p1,p2,p3,regret,collisions,"
    "omega_violation,fixate_t,restart_t";

namespace detail {
inline void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}
}  // namespace detail

inline std::string csv_row(const EpisodeResult& r) {
    std::string line;
    line.reserve(256);
    line += r.model;
    line += ',';
    line += r.strategy;
    line += ',';
    line += std::to_string(r.horizon);
    line += ',';
    line += std::to_string(r.seed);
    line += ',';
    line += std::to_string(r.episode_index);
    line += ',';
    if (r.has_theta()) detail::append_double(line, r.theta);
    line += ',';
    detail::append_double(line, r.p[0]);
    line += ',';
    detail::append_double(line, r.p[1]);
    line += ',';
    detail::append_double(line, r.p[2]);
    line += ',';
    detail::append_double(line, r.pseudo_regret);
    line += ',';
    line += std::to_string(r.collision_count);
    line += ',';
    line += r.omega_violation ? '1' : '0';
    line += ',';
    line += std::to_string(r.fixate_t);
    line += ',';
    line += std::to_string(r.restart_t);
    return line;
}

inline std::string csv_text(const std::vector<EpisodeResult>& rows) {
    std::string out{kCsvHeader};
    out += '\n';
    for (const EpisodeResult& r : rows) {
        out += csv_row(r);
        out += '\n';
    }
    return out;
}

inline void emit_csv(const std::vector<EpisodeResult>& rows, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_csv: cannot open " + path);
    f << csv_text(rows);
    if (!f) throw std::runtime_error("emit_csv: write failed for " + path);
}

// Self-contained SVG with a log-log mean-regret curve per strategy and
// collision-rate bars per horizon cell.
inline std::string svg_text(const std::vector<EpisodeResult>& rows) {
    // aggregate per (strategy, T)
    struct Agg {
        double regret_sum = 0.0;
        long long episodes = 0;
        long long collisions = 0;
    };
    std::map<std::pair<std::string, long long>, Agg> agg;
    for (const EpisodeResult& r : rows) {
        Agg& a = agg[{r.strategy, r.horizon}];
        a.regret_sum += r.pseudo_regret;
        a.episodes += 1;
        a.collisions += r.collision_count;
    }

    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (const auto& [key, a] : agg) {
        const double x = std::log10(static_cast<double>(key.second));
        const double mean = a.regret_sum / static_cast<double>(a.episodes);
        const double y = std::log10(std::max(mean, 1e-12));
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    }
    if (agg.empty()) {
        min_x = 0.0;
        max_x = 1.0;
        min_y = 0.0;
        max_y = 1.0;
    }
    if (max_x - min_x < 1e-9) max_x = min_x + 1.0;
    if (max_y - min_y < 1e-9) max_y = min_y + 1.0;

    const double W = 640.0, H = 400.0;
    const double plot_x0 = 60.0, plot_x1 = 400.0, plot_y0 = 40.0, plot_y1 = 340.0;
    const double bars_x0 = 440.0, bars_x1 = 610.0;
    auto sx = [&](double x) {
        return plot_x0 + (x - min_x) / (max_x - min_x) * (plot_x1 - plot_x0);
    };
    auto sy = [&](double y) {
        return plot_y1 - (y - min_y) / (max_y - min_y) * (plot_y1 - plot_y0);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
        << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << plot_x0 << "\" y1=\"" << plot_y1 << "\" x2=\"" << plot_x1
        << "\" y2=\"" << plot_y1 << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << plot_x0 << "\" y1=\"" << plot_y0 << "\" x2=\"" << plot_x0
        << "\" y2=\"" << plot_y1 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << (plot_x0 + plot_x1) / 2.0 << "\" y=\"" << plot_y1 + 34.0
        << "\" text-anchor=\"middle\" font-size=\"12\">log10 T</text>\n";
    svg << "<text x=\"18\" y=\"" << (plot_y0 + plot_y1) / 2.0
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 "
        << (plot_y0 + plot_y1) / 2.0 << ")\">log10 mean regret</text>\n";

    // curves, one color per strategy
    const std::array<std::string, 5> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e"};
    std::map<std::string, std::vector<std::pair<long long, Agg>>> by_strategy;
    for (const auto& [key, a] : agg) by_strategy[key.first].push_back({key.second, a});
    std::size_t color = 0;
    for (auto& [name, pts] : by_strategy) {
        std::sort(pts.begin(), pts.end(),
                  [](const auto& u, const auto& v) { return u.first < v.first; });
        svg << "<polyline fill=\"none\" stroke=\"" << palette[color % palette.size()]
            << "\" stroke-width=\"2\" points=\"";
        for (const auto& [T, a] : pts) {
            const double mean = a.regret_sum / static_cast<double>(a.episodes);
            svg << sx(std::log10(static_cast<double>(T))) << ","
                << sy(std::log10(std::max(mean, 1e-12))) << " ";
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << plot_x0 + 8.0 << "\" y=\""
            << plot_y0 + 14.0 * static_cast<double>(color + 1) << "\" font-size=\"11\" fill=\""
            << palette[color % palette.size()] << "\">" << name << "</text>\n";
        ++color;
    }

    // collision-rate bars over all strategies pooled per horizon
    std::map<long long, std::pair<double, long long>> coll;  // T -> (collisions, episodes)
    for (const auto& [key, a] : agg) {
        coll[key.second].first += static_cast<double>(a.collisions);
        coll[key.second].second += a.episodes;
    }
    double max_rate = 0.0;
    for (const auto& [T, c] : coll)
        max_rate = std::max(max_rate, c.first / static_cast<double>(c.second));
    if (max_rate <= 0.0) max_rate = 1.0;
    const double bar_w =
        (bars_x1 - bars_x0) / std::max<double>(1.0, static_cast<double>(coll.size()));
    std::size_t bi = 0;
    for (const auto& [T, c] : coll) {
        const double rate = c.first / static_cast<double>(c.second);
        const double h = (plot_y1 - plot_y0) * rate / max_rate;
        svg << "<rect x=\"" << bars_x0 + bar_w * static_cast<double>(bi) << "\" y=\""
            << plot_y1 - h << "\" width=\"" << bar_w * 0.8 << "\" height=\"" << h
            << "\" fill=\"#888888\"/>\n";
        svg << "<text x=\"" << bars_x0 + bar_w * (static_cast<double>(bi) + 0.4)
            << "\" y=\"" << plot_y1 + 14.0
            << "\" text-anchor=\"middle\" font-size=\"9\">" << T << "</text>\n";
        ++bi;
    }
    svg << "<text x=\"" << (bars_x0 + bars_x1) / 2.0 << "\" y=\"" << plot_y1 + 34.0
        << "\" text-anchor=\"middle\" font-size=\"12\">collisions/episode</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

inline void emit_svg_summary(const std::vector<EpisodeResult>& rows,
                             const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_svg_summary: cannot open " + path);
    f << svg_text(rows);
    if (!f) throw std::runtime_error("emit_svg_summary: write failed for " + path);
}

}  // namespace tandem
