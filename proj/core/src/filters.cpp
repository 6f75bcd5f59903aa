#include "attackpath/filters.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace attackpath {

ValidationReport validate_filter_set(const std::vector<Filter>& filters,
                                     const NetworkModel& model) {
    ValidationReport report;
    auto error = [&](std::string message, std::optional<EntityId> subject) {
        report.issues.push_back({Severity::Error, std::move(message), subject});
    };

    std::set<EntityId> containers;
    for (const auto& filter : filters) {
        if (!containers.insert(filter.container).second) {
            error("container " + render(filter.container) + " referenced by multiple filters",
                  filter.container);
        }
        if (!model.find_container(filter.container)) {
            error("unknown filter container " + render(filter.container), filter.container);
        }
        std::set<EntityId> properties;
        for (const auto& constraint : filter.constraints) {
            if (!model.find_property(constraint.property)) {
                error("unknown filter property " + render(constraint.property) + " for " +
                          render(filter.container),
                      filter.container);
            }
            if (!properties.insert(constraint.property).second) {
                error("duplicate property " + render(constraint.property) + " in filter for " +
                          render(filter.container),
                      filter.container);
            }
        }
    }
    return report;
}

namespace {

bool snapshot_satisfies(const NetworkModel& model, const RealityPath& state,
                        const Filter& filter) {
    for (const auto& constraint : filter.constraints) {
        const Fact* fact = model.fact_for(filter.container, constraint.property);
        if (!fact) return false;
        auto it = state.variant_facts.find(fact->id);
        bool value = it != state.variant_facts.end() ? it->second : fact->initial_value;
        if (value != constraint.required) return false;
    }
    return true;
}

// Replays the path hop by hop and checks every filter against the occupancy
// snapshots of its container.
bool path_passes(const NetworkModel& model, const RealityPath& path,
                 const std::vector<Filter>& filters) {
    std::vector<bool> satisfied(filters.size(), false);
    std::size_t remaining = filters.size();

    EntityId start = path.steps.empty() ? path.terminal : path.steps.front().container;
    RealityPath replay = make_root_path(model, start);

    auto occupy = [&]() {
        for (std::size_t i = 0; i < filters.size(); ++i) {
            if (satisfied[i] || filters[i].container != replay.terminal) continue;
            if (snapshot_satisfies(model, replay, filters[i])) {
                satisfied[i] = true;
                --remaining;
            }
        }
    };

    occupy();
    for (const auto& step : path.steps) {
        if (remaining == 0) break;
        advance_path(model, replay, step.link);
        occupy();
    }
    return remaining == 0;
}

}  // namespace

std::vector<RealityPath> apply_filters(const std::vector<RealityPath>& paths,
                                       const std::vector<Filter>& filters,
                                       const NetworkModel& model) {
    ValidationReport report = validate_filter_set(filters, model);
    if (!report.ok()) {
        throw std::invalid_argument("invalid filter set: " + report.issues.front().message);
    }
    if (filters.empty()) return paths;

    std::vector<RealityPath> kept;
    for (const auto& path : paths) {
        if (path_passes(model, path, filters)) kept.push_back(path);
    }
    return kept;
}

}  // namespace attackpath
