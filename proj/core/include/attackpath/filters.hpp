#pragma once

#include <vector>

#include "attackpath/engine.hpp"
#include "attackpath/entity_id.hpp"
#include "attackpath/model.hpp"

namespace attackpath {

struct FilterConstraint {
    EntityId property;
    bool required{false};

    bool operator==(const FilterConstraint&) const = default;
};

/// Post-enumeration constraint set on one container. A path survives the
/// filter only if some occupancy snapshot of that container satisfies every
/// constraint.
struct Filter {
    EntityId container;
    std::vector<FilterConstraint> constraints;

    bool operator==(const Filter&) const = default;
};

/// Errors: duplicate container across the set, unknown container or property
/// ids, duplicate property within one filter.
ValidationReport validate_filter_set(const std::vector<Filter>& filters,
                                     const NetworkModel& model);

/// Keeps a path iff for every filter the filtered container is visited and at
/// least one occupancy snapshot of it satisfies all the filter's constraints.
/// A snapshot is the container's variant fact values at each moment the
/// path's terminal is that container, after that hop's rules were applied
/// (the root state is the start container's first snapshot). A constraint on
/// a property the container holds no fact for is never satisfied. Input order
/// is preserved. Throws std::invalid_argument when the filter set does not
/// validate against the model.
std::vector<RealityPath> apply_filters(const std::vector<RealityPath>& paths,
                                       const std::vector<Filter>& filters,
                                       const NetworkModel& model);

}  // namespace attackpath
