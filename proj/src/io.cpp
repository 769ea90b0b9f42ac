#include "prefatt/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "prefatt/errors.hpp"

namespace prefatt {

using nlohmann::json;

namespace {

struct RawEdge {
    std::uint64_t src;
    std::uint64_t dst;
    std::int64_t ts;
    std::uint64_t line;  // 1-based file line, for stable re-sorts and errors
};

bool is_comment_or_blank(const std::string& line, std::size_t& first) {
    first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) return true;
    return line[first] == '#' || line[first] == '%';
}

// "key: value" or "key = value" pairs inside comment lines
void parse_metadata(const std::string& line, std::size_t first,
                    std::map<std::string, std::string>& meta) {
    std::string body = line.substr(first + 1);
    const auto sep = body.find_first_of(":=");
    if (sep == std::string::npos) return;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(body.substr(0, sep));
    const std::string value = trim(body.substr(sep + 1));
    if (!key.empty() && !value.empty() && meta.find(key) == meta.end()) meta[key] = value;
}

std::vector<RawEdge> read_raw_edges(const std::string& path, bool want_timestamps,
                                    IoInfo& info) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "' for reading");
    std::vector<RawEdge> edges;
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first;
        if (is_comment_or_blank(line, first)) {
            if (first != std::string::npos) parse_metadata(line, first, info.metadata);
            continue;
        }
        std::istringstream row(line);
        std::uint64_t src, dst;
        if (!(row >> src >> dst))
            throw data_error(path + ":" + std::to_string(lineno) + ": malformed edge line");
        std::int64_t a = 0, b = 0;
        int extra = 0;
        if (row >> a) ++extra;
        if (row >> b) ++extra;
        std::string rest;
        if (row >> rest)
            throw data_error(path + ":" + std::to_string(lineno) + ": too many columns");
        std::int64_t ts = 0;
        if (want_timestamps) {
            if (extra == 0)
                throw data_error(path + ":" + std::to_string(lineno) +
                                 ": timestamp column missing");
            ts = extra == 1 ? a : b;  // KONECT: src dst weight timestamp
        }
        if (src == 0 || dst == 0)
            throw data_error(path + ":" + std::to_string(lineno) + ": node ids must be >= 1");
        edges.push_back({src, dst, ts, lineno});
    }
    return edges;
}

// consecutive-id remapping by first appearance in the given order
std::uint64_t remap_ids(std::vector<RawEdge>& edges) {
    std::unordered_map<std::uint64_t, std::uint64_t> ids;
    ids.reserve(edges.size() * 2);
    auto lookup = [&](std::uint64_t raw) {
        auto [it, inserted] = ids.emplace(raw, ids.size() + 1);
        return it->second;
    };
    for (RawEdge& e : edges) {
        e.src = lookup(e.src);
        e.dst = lookup(e.dst);
    }
    return ids.size();
}

std::uint64_t meta_uint(const IoInfo& info, const std::string& key, std::uint64_t fallback) {
    const auto it = info.metadata.find(key);
    if (it == info.metadata.end()) return fallback;
    std::uint64_t v = 0;
    const auto* begin = it->second.data();
    const auto* end = begin + it->second.size();
    if (std::from_chars(begin, end, v).ec != std::errc())
        throw data_error("metadata '" + key + "' is not an integer: " + it->second);
    return v;
}

}  // namespace

Snapshot read_snapshot(const std::string& path, IoInfo* info_out) {
    IoInfo info;
    std::vector<RawEdge> raw = read_raw_edges(path, false, info);
    const std::uint64_t distinct = remap_ids(raw);
    Snapshot s;
    s.node_count = std::max(distinct, meta_uint(info, "nodes", 0));
    s.edges.reserve(raw.size());
    for (const RawEdge& e : raw)
        s.edges.push_back({static_cast<NodeId>(e.src), static_cast<NodeId>(e.dst)});
    if (info_out) *info_out = std::move(info);
    return s;
}

GrowthHistory history_from_ordered_edges(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& raw,
    const std::vector<std::int64_t>& timestamps) {
    GrowthHistory h;
    h.seed = Snapshot{0, {}};
    h.edges.reserve(raw.size());
    h.scenarios.reserve(raw.size());
    h.timestamps = timestamps;

    std::unordered_map<std::uint64_t, std::uint64_t> ids;
    ids.reserve(raw.size() * 2);
    std::uint64_t nodes = 0;
    for (const auto& [rs, rd] : raw) {
        const bool self = rs == rd;
        auto s_it = ids.find(rs);
        const bool src_new = s_it == ids.end();
        if (src_new) s_it = ids.emplace(rs, ++nodes).first;
        auto d_it = ids.find(rd);
        const bool dst_new = d_it == ids.end();
        if (dst_new) d_it = ids.emplace(rd, ++nodes).first;

        Scenario sc;
        if (self && src_new)
            sc = Scenario::self_loop;
        else if (src_new && dst_new)
            sc = Scenario::both_new;
        else if (src_new)
            sc = Scenario::alpha;
        else if (dst_new)
            sc = Scenario::gamma;
        else
            sc = Scenario::beta;
        h.edges.push_back({static_cast<NodeId>(s_it->second), static_cast<NodeId>(d_it->second)});
        h.scenarios.push_back(sc);
    }
    return h;
}

GrowthHistory read_history(const std::string& path, IoInfo* info_out) {
    IoInfo info;
    std::vector<RawEdge> raw = read_raw_edges(path, true, info);

    bool sorted = true;
    for (std::size_t i = 1; i < raw.size(); ++i)
        if (raw[i].ts < raw[i - 1].ts) {
            sorted = false;
            break;
        }
    if (!sorted) {
        info.warnings.push_back("timestamps not monotone: applied a stable re-sort");
        std::stable_sort(raw.begin(), raw.end(), [](const RawEdge& a, const RawEdge& b) {
            return a.ts < b.ts || (a.ts == b.ts && a.line < b.line);
        });
    }

    const std::uint64_t seed_nodes = meta_uint(info, "seed_nodes", 0);
    const std::uint64_t seed_edges = meta_uint(info, "seed_edges", 0);
    GrowthHistory h;
    if (seed_nodes > 0) {
        // ids are creation order; replay validates them against the labels
        if (seed_edges > raw.size())
            throw data_error("metadata declares more seed edges than the file contains");
        h.seed.node_count = seed_nodes;
        std::uint64_t nodes = seed_nodes;
        for (std::size_t k = 0; k < raw.size(); ++k) {
            const RawEdge& e = raw[k];
            if (k < seed_edges) {
                if (e.src > seed_nodes || e.dst > seed_nodes)
                    throw data_error("seed edge references a node beyond seed_nodes");
                h.seed.edges.push_back({static_cast<NodeId>(e.src), static_cast<NodeId>(e.dst)});
                continue;
            }
            const bool src_new = e.src > nodes;
            const bool dst_new = e.dst > nodes;
            Scenario sc;
            if (e.src == e.dst && src_new)
                sc = Scenario::self_loop;
            else if (src_new && dst_new)
                sc = Scenario::both_new;
            else if (src_new)
                sc = Scenario::alpha;
            else if (dst_new)
                sc = Scenario::gamma;
            else
                sc = Scenario::beta;
            switch (sc) {
                case Scenario::alpha:
                case Scenario::gamma:
                case Scenario::self_loop: nodes += 1; break;
                case Scenario::both_new: nodes += 2; break;
                case Scenario::beta: break;
            }
            if (e.src > nodes || e.dst > nodes)
                throw data_error("node ids are not consecutive in creation order (line " +
                                 std::to_string(e.line) + ")");
            h.edges.push_back({static_cast<NodeId>(e.src), static_cast<NodeId>(e.dst)});
            h.scenarios.push_back(sc);
            h.timestamps.push_back(e.ts);
        }
    } else {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
        std::vector<std::int64_t> ts;
        pairs.reserve(raw.size());
        ts.reserve(raw.size());
        for (const RawEdge& e : raw) {
            pairs.emplace_back(e.src, e.dst);
            ts.push_back(e.ts);
        }
        h = history_from_ordered_edges(pairs, ts);
    }
    if (info_out) *info_out = std::move(info);
    return h;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw data_error("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

void write_meta_lines(std::ostream& out, const std::map<std::string, std::string>& metadata) {
    for (const auto& [k, v] : metadata) out << "# " << k << ": " << v << "\n";
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& s,
                    const std::map<std::string, std::string>& metadata) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open '" + path + "' for writing");
    auto meta = metadata;
    meta["nodes"] = std::to_string(s.node_count);
    meta["edges"] = std::to_string(s.edges.size());
    write_meta_lines(out, meta);
    for (const Edge& e : s.edges) out << e.src << "\t" << e.dst << "\n";
    if (!out) throw data_error("write to '" + path + "' failed");
}

void write_history(const std::string& path, const GrowthHistory& h,
                   const std::map<std::string, std::string>& metadata) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open '" + path + "' for writing");
    auto meta = metadata;
    meta["seed_nodes"] = std::to_string(h.seed_node_count());
    meta["seed_edges"] = std::to_string(h.seed_edge_count());
    meta["nodes"] = std::to_string(h.node_count());
    meta["edges"] = std::to_string(h.edge_count());
    write_meta_lines(out, meta);
    std::uint64_t t = 0;
    for (const Edge& e : h.seed.edges) out << e.src << "\t" << e.dst << "\t" << ++t << "\n";
    const bool own_ts = h.timestamps.size() == h.edges.size();
    for (std::size_t k = 0; k < h.edges.size(); ++k) {
        const std::int64_t ts = own_ts ? h.timestamps[k] : static_cast<std::int64_t>(++t);
        out << h.edges[k].src << "\t" << h.edges[k].dst << "\t" << ts << "\n";
    }
    if (!out) throw data_error("write to '" + path + "' failed");
}

CleanResult clean_broadcasts(const GrowthHistory& h, std::uint64_t run_threshold) {
    if (run_threshold < 1) throw std::invalid_argument("run_threshold must be >= 1");
    CleanResult res;

    // run-length scan over the edge order
    std::unordered_map<NodeId, std::uint64_t> best_run;
    NodeId run_src = 0;
    std::uint64_t run_len = 0;
    for (const Edge& e : h.edges) {
        if (e.src == run_src) {
            ++run_len;
        } else {
            run_src = e.src;
            run_len = 1;
        }
        auto& best = best_run[e.src];
        best = std::max(best, run_len);
    }
    for (const auto& [src, len] : best_run)
        if (len >= run_threshold) res.removed_accounts.push_back(src);
    std::sort(res.removed_accounts.begin(), res.removed_accounts.end());

    auto is_removed = [&](NodeId v) {
        return std::binary_search(res.removed_accounts.begin(), res.removed_accounts.end(), v);
    };

    std::vector<std::pair<std::uint64_t, std::uint64_t>> kept;
    std::vector<std::int64_t> kept_ts;
    const bool has_ts = h.timestamps.size() == h.edges.size();
    kept.reserve(h.edges.size());
    for (std::size_t k = 0; k < h.edges.size(); ++k) {
        if (is_removed(h.edges[k].src)) {
            ++res.removed_edges;
            continue;
        }
        kept.emplace_back(h.edges[k].src, h.edges[k].dst);
        if (has_ts) kept_ts.push_back(h.timestamps[k]);
    }
    res.history = history_from_ordered_edges(kept, kept_ts);
    return res;
}

namespace {

std::vector<std::uint64_t> tail_diff(const std::vector<std::uint64_t>& end,
                                     const std::vector<std::uint64_t>& start) {
    std::vector<std::uint64_t> d(end.size());
    for (std::size_t i = 0; i < end.size(); ++i)
        d[i] = end[i] - (i < start.size() ? start[i] : 0);
    while (!d.empty() && d.back() == 0) d.pop_back();
    return d;
}

}  // namespace

std::vector<WindowFit> windowed_fit(const GrowthHistory& h, std::uint64_t window_edges,
                                    const DeltaBracket& bracket) {
    if (window_edges < 1) throw std::invalid_argument("window size must be >= 1");
    const std::uint64_t windows = window_count(h.edges.size(), window_edges);
    std::vector<WindowFit> out;
    if (windows == 0) return out;

    // One global replay. Each window's statistics are seeded with the exact
    // degree state at its start; the state seen when the next window opens
    // is exactly the previous window's end state.
    std::vector<SufficientStats> stats(windows);
    std::vector<std::uint64_t> start_in, start_out;
    std::uint64_t closed = 0;
    auto close_window = [&](std::uint64_t w, const DegreeTracker& tracker) {
        stats[w].in_tail_diff = tail_diff(tracker.in_tails(), start_in);
        stats[w].out_tail_diff = tail_diff(tracker.out_tails(), start_out);
        stats[w].end_stats = tracker.stats();
        stats[w].extended = stats[w].scenario_counts[3] + stats[w].scenario_counts[4] > 0;
        ++closed;
    };
    const DegreeTracker final_state = replay_history(
        h, [&](std::size_t k, std::uint64_t t_minus_1, const Edge&, Scenario s,
               const DegreeTracker& tracker) {
            const std::uint64_t w = k / window_edges;
            if (k % window_edges == 0) {
                if (w > 0 && closed < w) close_window(w - 1, tracker);
                if (w < windows) {
                    stats[w].n0 = t_minus_1;
                    stats[w].n = t_minus_1 + window_edges;
                    stats[w].seed_node_count = tracker.node_count();
                    start_in = tracker.in_tails();
                    start_out = tracker.out_tails();
                }
            }
            if (w >= windows) return;  // trailing partial window
            ++stats[w].scenario_counts[scenario_index(s)];
            const double time = static_cast<double>(t_minus_1);
            const double nodes = static_cast<double>(tracker.node_count());
            if (s == Scenario::alpha || s == Scenario::beta) {
                stats[w].in_steps.time.push_back(time);
                stats[w].in_steps.nodes.push_back(nodes);
            }
            if (s == Scenario::beta || s == Scenario::gamma) {
                stats[w].out_steps.time.push_back(time);
                stats[w].out_steps.nodes.push_back(nodes);
            }
        });
    if (closed < windows) close_window(windows - 1, final_state);

    const bool any_extended = std::any_of(stats.begin(), stats.end(),
                                          [](const SufficientStats& s) { return s.extended; });
    out.reserve(windows);
    for (std::uint64_t w = 0; w < windows; ++w) {
        WindowFit wf;
        wf.index = w;
        wf.t_begin = stats[w].n0;
        wf.t_end = stats[w].n;
        try {
            MleOptions opt;
            opt.bracket = bracket;
            opt.force_extended = any_extended;
            const FitResult fr = fit_mle(stats[w], opt);
            wf.params = fr.params;
            wf.extended = fr.extended;
            wf.in_solver = fr.in_solver;
            wf.out_solver = fr.out_solver;
            wf.ok = true;
        } catch (const std::exception& e) {
            wf.ok = false;
            wf.message = e.what();
        }
        out.push_back(std::move(wf));
    }
    return out;
}

namespace {

json params_json(const Params& p) {
    return json{{"alpha", p.alpha},       {"beta", p.beta},
                {"gamma", p.gamma},       {"xi", p.xi},
                {"rho", p.rho},           {"delta_in", p.delta_in},
                {"delta_out", p.delta_out}};
}

Params params_from(const json& j) {
    return Params(j.at("alpha").get<double>(), j.at("beta").get<double>(),
                  j.at("gamma").get<double>(), j.value("xi", 0.0), j.value("rho", 0.0),
                  j.at("delta_in").get<double>(), j.at("delta_out").get<double>());
}

json solver_json(const SolverInfo& s) {
    return json{{"iterations", s.iterations},
                {"residual", s.residual},
                {"bracket", {s.bracket_lo, s.bracket_hi}},
                {"boundary", s.boundary},
                {"multiple_roots", s.multiple_roots}};
}

SolverInfo solver_from(const json& j) {
    SolverInfo s;
    s.iterations = j.value("iterations", 0);
    s.residual = j.value("residual", 0.0);
    if (j.contains("bracket")) {
        s.bracket_lo = j["bracket"][0].get<double>();
        s.bracket_hi = j["bracket"][1].get<double>();
    }
    s.boundary = j.value("boundary", false);
    s.multiple_roots = j.value("multiple_roots", false);
    return s;
}

}  // namespace

std::string params_to_json(const Params& p) { return params_json(p).dump(2); }

Params params_from_json(const std::string& text) {
    try {
        return params_from(json::parse(text));
    } catch (const json::exception& e) {
        throw data_error(std::string("bad params JSON: ") + e.what());
    }
}

std::string fit_result_to_json(const FitResult& fr,
                               const std::map<std::string, std::string>& meta) {
    json j;
    j["method"] = fr.method == FitMethod::full_mle ? "full_mle" : "snapshot";
    j["extended"] = fr.extended;
    j["n"] = fr.n;
    j["params"] = params_json(fr.params);
    if (fr.covariance_kind != CovKind::none && !fr.covariance.empty()) {
        json rows = json::array();
        for (std::size_t i = 0; i < fr.covariance.dim; ++i) {
            json row = json::array();
            for (std::size_t c = 0; c < fr.covariance.dim; ++c) {
                const double v = fr.covariance.at(i, c);
                row.push_back(std::isfinite(v) ? json(v) : json());
            }
            rows.push_back(row);
        }
        j["covariance"] = rows;
        j["covariance_kind"] =
            fr.covariance_kind == CovKind::asymptotic ? "asymptotic" : "bootstrap";
        j["coordinates"] = fr.coordinate_names();
    }
    if (!fr.conf_intervals.empty()) {
        j["level"] = fr.conf_level;
        json rows = json::array();
        for (const IntervalRow& row : fr.conf_intervals) {
            json r{{"name", row.name}, {"estimate", row.estimate}, {"valid", row.valid}};
            if (row.valid) {
                r["lo"] = row.lo;
                r["hi"] = row.hi;
            }
            rows.push_back(r);
        }
        j["intervals"] = rows;
    }
    j["solver"] = json{{"delta_in", solver_json(fr.in_solver)},
                       {"delta_out", solver_json(fr.out_solver)}};
    json pb = json::array();
    for (bool b : fr.prob_boundary) pb.push_back(b);
    j["prob_boundary"] = pb;
    if (!fr.warnings.empty()) j["warnings"] = fr.warnings;
    if (fr.rng_seed != 0) j["bootstrap_seed"] = fr.rng_seed;
    if (!meta.empty()) {
        json m;
        for (const auto& [k, v] : meta) m[k] = v;
        j["meta"] = m;
    }
    return j.dump(2);
}

FitResult fit_result_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw data_error(std::string("bad fit JSON: ") + e.what());
    }
    try {
        FitResult fr;
        fr.method = j.at("method").get<std::string>() == "snapshot" ? FitMethod::snapshot
                                                                    : FitMethod::full_mle;
        fr.extended = j.value("extended", false);
        fr.n = j.value("n", std::uint64_t{0});
        fr.params = params_from(j.at("params"));
        if (j.contains("covariance")) {
            const auto& rows = j["covariance"];
            const std::size_t dim = rows.size();
            fr.covariance = CovMatrix::zeros(dim);
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c)
                    fr.covariance.at(r, c) =
                        rows[r][c].is_null() ? std::nan("") : rows[r][c].get<double>();
            fr.covariance_kind = j.value("covariance_kind", std::string("asymptotic")) ==
                                         std::string("bootstrap")
                                     ? CovKind::bootstrap
                                     : CovKind::asymptotic;
        }
        if (j.contains("intervals")) {
            fr.conf_level = j.value("level", 0.0);
            for (const auto& r : j["intervals"]) {
                IntervalRow row;
                row.name = r.at("name").get<std::string>();
                row.estimate = r.at("estimate").get<double>();
                row.valid = r.value("valid", false);
                if (row.valid) {
                    row.lo = r.at("lo").get<double>();
                    row.hi = r.at("hi").get<double>();
                } else {
                    row.lo = row.hi = std::nan("");
                }
                fr.conf_intervals.push_back(row);
            }
        }
        if (j.contains("solver")) {
            fr.in_solver = solver_from(j["solver"]["delta_in"]);
            fr.out_solver = solver_from(j["solver"]["delta_out"]);
        }
        if (j.contains("prob_boundary"))
            for (std::size_t i = 0; i < 5 && i < j["prob_boundary"].size(); ++i)
                fr.prob_boundary[i] = j["prob_boundary"][i].get<bool>();
        if (j.contains("warnings"))
            fr.warnings = j["warnings"].get<std::vector<std::string>>();
        fr.rng_seed = j.value("bootstrap_seed", std::uint64_t{0});
        return fr;
    } catch (const json::exception& e) {
        throw data_error(std::string("bad fit JSON: ") + e.what());
    }
}

StudyConfig parse_study_config(const std::string& text) {
    StudyConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first;
        if (is_comment_or_blank(line, first)) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw data_error("study config line " + std::to_string(lineno) +
                             ": expected 'key = value'");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "seed") {
            cfg.master_seed = std::stoull(value);
        } else if (key == "threads") {
            cfg.threads = static_cast<unsigned>(std::stoul(value));
        } else if (key == "delta_min") {
            cfg.bracket.lo = std::stod(value);
        } else if (key == "delta_max") {
            cfg.bracket.hi = std::stod(value);
        } else if (key == "row") {
            std::istringstream row(value);
            StudyRow r;
            double alpha, beta, din, dout;
            if (!(row >> r.n >> alpha >> beta >> din >> dout >> r.reps))
                throw data_error("study config line " + std::to_string(lineno) +
                                 ": row needs 'n alpha beta delta_in delta_out reps'");
            r.params = Params(alpha, beta, 1.0 - alpha - beta, din, dout);
            cfg.rows.push_back(r);
        } else {
            throw data_error("study config line " + std::to_string(lineno) +
                             ": unknown key '" + key + "'");
        }
    }
    if (cfg.rows.empty()) throw data_error("study config declares no rows");
    return cfg;
}

StudyConfig read_study_config(const std::string& path) {
    return parse_study_config(read_text_file(path));
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

namespace {

std::string meta_comment_lines(const std::map<std::string, std::string>& meta) {
    std::ostringstream out;
    for (const auto& [k, v] : meta) out << "# " << k << ": " << v << "\n";
    return out.str();
}

void append_number(std::ostringstream& out, double v) {
    out << json(v).dump();  // shortest round-trip representation
}

}  // namespace

std::string study_to_csv(const std::vector<StudyCell>& cells,
                         const std::map<std::string, std::string>& meta) {
    std::ostringstream out;
    out << meta_comment_lines(meta);
    out << "n,alpha,beta,delta_in,delta_out,reps,failures,ok,"
           "mean_mle_alpha,mean_mle_beta,mean_mle_delta_in,mean_mle_delta_out,"
           "mean_snap_alpha,mean_snap_beta,mean_snap_delta_in,mean_snap_delta_out,"
           "are_alpha,are_beta,are_delta_in,are_delta_out,message\n";
    for (const StudyCell& c : cells) {
        out << c.row.n << ',' << c.row.params.alpha << ',' << c.row.params.beta << ','
            << c.row.params.delta_in << ',' << c.row.params.delta_out << ',' << c.row.reps
            << ',' << c.failures << ',' << (c.ok ? 1 : 0);
        for (const auto& arr : {c.mean_mle, c.mean_snap, c.are})
            for (double v : arr) {
                out << ',';
                append_number(out, v);
            }
        out << ',' << csv_field(c.message) << "\n";
    }
    return out.str();
}

std::string windows_to_csv(const std::vector<WindowFit>& windows,
                           const std::map<std::string, std::string>& meta) {
    std::ostringstream out;
    out << meta_comment_lines(meta);
    out << "window,t_begin,t_end,ok,alpha,beta,gamma,xi,rho,delta_in,delta_out,"
           "din_boundary,dout_boundary,message\n";
    for (const WindowFit& w : windows) {
        out << w.index << ',' << w.t_begin << ',' << w.t_end << ',' << (w.ok ? 1 : 0);
        for (double v : {w.params.alpha, w.params.beta, w.params.gamma, w.params.xi,
                         w.params.rho, w.params.delta_in, w.params.delta_out}) {
            out << ',';
            append_number(out, v);
        }
        out << ',' << (w.in_solver.boundary ? 1 : 0) << ',' << (w.out_solver.boundary ? 1 : 0)
            << ',' << csv_field(w.message) << "\n";
    }
    return out.str();
}

std::string envelope_to_csv(const GofEnvelope& env,
                            const std::map<std::string, std::string>& meta) {
    std::ostringstream out;
    out << meta_comment_lines(meta);
    out << "# inside_fraction_in: " << env.in.inside_fraction << "\n";
    out << "# inside_fraction_out: " << env.out.inside_fraction << "\n";
    out << "side,series,sim,degree,freq_or_lo,hi\n";
    auto emit_side = [&](const GofSide& side, const char* name) {
        for (const DegreePoint& p : side.observed) {
            out << name << ",observed,," << p.degree << ',';
            append_number(out, p.freq);
            out << ",\n";
        }
        for (const EnvelopeBand& b : side.band) {
            out << name << ",band,," << b.degree << ',';
            append_number(out, b.lo);
            out << ',';
            append_number(out, b.hi);
            out << "\n";
        }
        for (std::size_t s = 0; s < side.sims.size(); ++s)
            for (const DegreePoint& p : side.sims[s]) {
                out << name << ",sim," << s << ',' << p.degree << ',';
                append_number(out, p.freq);
                out << ",\n";
            }
    };
    emit_side(env.in, "in");
    emit_side(env.out, "out");
    return out.str();
}

}  // namespace prefatt
