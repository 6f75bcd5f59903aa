#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "attackpath/entity_id.hpp"
#include "attackpath/model.hpp"
#include "attackpath/path_record.hpp"

namespace attackpath {

struct RunConfig {
    EntityId start;
    EntityId end;
    /// Maximum traversals of each individual link within one path.
    int link_cap{1};
    /// Build PathRecords for every explored path (the trace).
    bool trace_enabled{false};
    /// Keep only counters: no trace, no final path bodies, and no rule
    /// evaluation (rule firing never gates traversal, so counts are
    /// unaffected). Bounds memory for large caps.
    bool count_only{false};
    /// Wall-clock budget; an exceeded run stops and reports completed=false.
    std::optional<std::chrono::duration<double>> timeout;
};

struct PathStep {
    EntityId container;             // container exited on this hop
    EntityId link;
    std::vector<EntityId> fired_rules;

    bool operator==(const PathStep&) const = default;
};

/// One explored traversal with its path-private copy of the world: variant
/// fact values for every visited container and per-link usage counts. The
/// originating model is never touched.
struct RealityPath {
    std::vector<PathStep> steps;
    EntityId terminal;
    std::map<EntityId, bool> variant_facts;        // facts of visited containers
    std::map<EntityId, std::uint32_t> link_usage;  // traversed links only
    std::vector<EntityId> first_visit_order;

    int depth() const { return static_cast<int>(steps.size()); }

    bool operator==(const RealityPath&) const = default;
};

struct EnumerationStats {
    std::uint64_t final_paths{0};
    /// Paths explored = trace lines a traced run would emit (root included).
    std::uint64_t trace_records{0};
    /// Non-final paths that had at least one available exit and were extended.
    std::uint64_t expansions{0};
    int max_depth{0};
    std::chrono::duration<double> elapsed{0};
    bool completed{true};
};

struct EnumerationResult {
    std::vector<RealityPath> final_paths;   // empty in count-only mode
    std::vector<PathRecord> trace;          // filled when tracing without a sink
    EnumerationStats stats;
};

using RecordSink = std::function<void(const PathRecord&)>;

/// Exhaustive breadth-first enumeration of every start-to-end path the link
/// cap admits, firing generic rules on each hop against per-path variant
/// state.
///
/// The root path is the start container alone and is emitted as the first
/// record. A path reaching the end container is final and never extended; a
/// path whose terminal has no available exits is a dead end (emitted, not
/// final). Expansion order is canonical: by depth, within a depth by parent
/// emission order, within a parent by ascending exit link id. Two runs over
/// the same inputs produce byte-identical traces.
///
/// When `sink` is given and tracing is on, records stream to the sink as they
/// are produced instead of accumulating in the result.
///
/// Throws std::invalid_argument for an unknown start/end container or a cap
/// below one. The model must have passed validate_model.
EnumerationResult enumerate_paths(const NetworkModel& model, const RunConfig& config,
                                  const RecordSink& sink = {});

/// The start container alone: no hops, variant facts seeded from the start
/// container's initial values.
RealityPath make_root_path(const NetworkModel& model, EntityId start);

/// Links leaving the path's terminal whose usage is still below the cap,
/// ascending by link number. Exactly what a record renders after 'U'.
std::vector<EntityId> available_exits(const NetworkModel& model, const RealityPath& path,
                                      int link_cap);

/// True when every pre-condition of `rule` is met for a traversal of `link`
/// and every post-condition names a property the written container holds a
/// fact for. A condition on a property with no fact in its container blocks
/// the rule. Reads the path's variant values; facts of unvisited containers
/// read as their initial values.
bool rule_eligible(const NetworkModel& model, const RealityPath& path, const GenericRule& rule,
                   EntityId link);

/// Writes the rule's post-conditions into the path's variant state: start
/// posts to the link's source container, end posts to its destination.
void apply_rule(const NetworkModel& model, RealityPath& path, const GenericRule& rule,
                EntityId link);

/// Evaluates every rule in ascending id order against the evolving variant
/// state, applying each eligible rule's posts before the next is evaluated.
/// Returns the rule ids that fired, in firing order.
std::vector<EntityId> fire_rules(const NetworkModel& model, RealityPath& path, EntityId link);

/// One hop: merges the destination's initial facts on first visit, fires
/// rules, bumps the link's usage and appends the step. Returns the fired
/// rule ids. Throws std::invalid_argument when `link` does not leave the
/// path's terminal.
std::vector<EntityId> advance_path(const NetworkModel& model, RealityPath& path, EntityId link);

/// The record a traced run emits for this path state.
PathRecord to_record(const NetworkModel& model, const RealityPath& path, int link_cap);

}  // namespace attackpath
