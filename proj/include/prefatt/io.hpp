#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "prefatt/experiments.hpp"
#include "prefatt/fit.hpp"
#include "prefatt/graph.hpp"
#include "prefatt/mle.hpp"

namespace prefatt {

/// Warnings and '#'-comment metadata collected while reading a file.
struct IoInfo {
    std::map<std::string, std::string> metadata;
    std::vector<std::string> warnings;
};

/// Plain edge list ("src dst" per line, '#'/'%' comments skipped). Raw node
/// ids may be arbitrary integers; they are remapped to consecutive ids by
/// first appearance. A "nodes:" metadata entry larger than the number of
/// distinct ids declares the remainder isolated.
Snapshot read_snapshot(const std::string& path, IoInfo* info = nullptr);

/// Timestamped edge list ("src dst timestamp"; a KONECT-style fourth column
/// is accepted with the last column as the timestamp). Edges are ordered by
/// timestamp (stable re-sort with a warning when out of order), node ids
/// remapped by first appearance, and scenario labels reconstructed from node
/// novelty, which determines them exactly for this model class. Files
/// written by write_history carry "seed_nodes:"/"seed_edges:" metadata, in
/// which case ids are taken as creation order and the seed graph is
/// restored, giving a lossless round-trip.
GrowthHistory read_history(const std::string& path, IoInfo* info = nullptr);

void write_snapshot(const std::string& path, const Snapshot& s,
                    const std::map<std::string, std::string>& metadata = {});
void write_history(const std::string& path, const GrowthHistory& h,
                   const std::map<std::string, std::string>& metadata = {});

/// Rebuilds a history from ordered raw edges: remap by first appearance and
/// reconstruct scenarios (new src + old dst -> 1, old+old -> 2, old+new -> 3,
/// new+new -> 4, new self loop -> 5).
GrowthHistory history_from_ordered_edges(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& raw,
                                         const std::vector<std::int64_t>& timestamps);

struct CleanResult {
    GrowthHistory history;
    std::vector<NodeId> removed_accounts;  // ids in the input history
    std::uint64_t removed_edges = 0;
};

/// Broadcast-account cleaning: sources with run_threshold or more
/// consecutive edges (in edge order) are removed along with all their
/// edges; nodes left without any edge disappear and the remaining ids are
/// compacted in order of first appearance.
CleanResult clean_broadcasts(const GrowthHistory& h, std::uint64_t run_threshold = 40);

struct WindowFit {
    std::uint64_t index = 0;
    std::uint64_t t_begin = 0;  // first edge count covered (exclusive start)
    std::uint64_t t_end = 0;    // last edge count covered
    Params params;
    bool extended = false;
    SolverInfo in_solver, out_solver;
    bool ok = false;
    std::string message;
};

/// Fits the model on consecutive blocks of window_edges edges, each block
/// treated as a history started at the block-start graph (exact seed-tail
/// corrections through the global degree state). A trailing partial window
/// is skipped.
std::vector<WindowFit> windowed_fit(const GrowthHistory& h, std::uint64_t window_edges = 10000,
                                    const DeltaBracket& bracket = {});

constexpr std::uint64_t window_count(std::uint64_t edges, std::uint64_t window_edges) {
    return window_edges == 0 ? 0 : edges / window_edges;
}

// JSON serialization (round-trip exact for doubles).
std::string params_to_json(const Params& p);
Params params_from_json(const std::string& text);
std::string fit_result_to_json(const FitResult& fr,
                               const std::map<std::string, std::string>& meta = {});
FitResult fit_result_from_json(const std::string& text);

// Flat "key = value" config text; '#' comments. Repeated "row" keys carry
// whitespace-separated "n alpha beta delta_in delta_out reps" study rows.
StudyConfig parse_study_config(const std::string& text);
StudyConfig read_study_config(const std::string& path);

// Minimal CSV quoting per RFC rules (quotes fields containing separators).
std::string csv_field(const std::string& value);

std::string study_to_csv(const std::vector<StudyCell>& cells,
                         const std::map<std::string, std::string>& meta = {});
std::string windows_to_csv(const std::vector<WindowFit>& windows,
                           const std::map<std::string, std::string>& meta = {});
std::string envelope_to_csv(const GofEnvelope& env,
                            const std::map<std::string, std::string>& meta = {});

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace prefatt
