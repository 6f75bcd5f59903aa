#pragma once

#include "attackpath/entity_id.hpp"
#include "attackpath/model.hpp"

namespace attackpath::fixtures {

/// The built-in reference networks. Models 1-3 are the small meshes used by
/// the benchmark tables; the office example is a sample of a realistic
/// network and is illustrative only.
enum class FixtureId { Model1, Model2, Model3, OfficeExample };

NetworkModel builtin_model(FixtureId id);

/// Conventional start/end pair for each fixture (C001->C003 for model 1,
/// C001->C004 for models 2 and 3, terminal to workstation for the office).
EntityId fixture_start(FixtureId id);
EntityId fixture_end(FixtureId id);

}  // namespace attackpath::fixtures
