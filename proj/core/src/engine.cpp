#include "attackpath/engine.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <stdexcept>
#include <utility>

namespace attackpath {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint32_t kNoLink = 0xffffffffu;

// Index-based view of a validated model, built once per run.
struct CompiledModel {
    const NetworkModel* model;

    std::vector<EntityId> container_ids;
    std::vector<EntityId> link_ids;
    std::vector<EntityId> fact_ids;

    std::vector<std::uint32_t> link_source;
    std::vector<std::uint32_t> link_destination;

    // Exit links per container, each span sorted ascending by link number.
    std::vector<std::uint32_t> exit_links;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> exit_span;

    std::vector<std::vector<std::uint32_t>> container_facts;  // definition order
    std::vector<bool> fact_initial;

    // (container, property) -> fact index, -1 when the container holds none.
    std::vector<std::int32_t> fact_at;
    std::size_t property_count{0};

    struct Rule {
        EntityId id;
        std::vector<std::pair<std::uint32_t, bool>> start_pre, end_pre, start_post, end_post;
    };
    std::vector<Rule> rules;  // ascending by rule id

    std::int32_t fact_for(std::uint32_t container, std::uint32_t property) const {
        return fact_at[container * property_count + property];
    }
};

std::uint32_t require_container(const NetworkModel& model, EntityId id, const char* role) {
    const Container* c = model.find_container(id);
    if (!c) {
        throw std::invalid_argument(std::string(role) + " container " + render(id) +
                                    " not defined in model");
    }
    return static_cast<std::uint32_t>(c - model.containers().data());
}

CompiledModel compile(const NetworkModel& model) {
    CompiledModel cm;
    cm.model = &model;

    std::unordered_map<EntityId, std::uint32_t> container_index;
    std::unordered_map<EntityId, std::uint32_t> property_index;
    std::unordered_map<EntityId, std::uint32_t> fact_index;

    for (const auto& c : model.containers()) {
        container_index.emplace(c.id, static_cast<std::uint32_t>(cm.container_ids.size()));
        cm.container_ids.push_back(c.id);
    }
    for (const auto& p : model.properties()) {
        property_index.emplace(p.id, static_cast<std::uint32_t>(property_index.size()));
    }
    cm.property_count = model.properties().size();

    for (const auto& f : model.facts()) {
        fact_index.emplace(f.id, static_cast<std::uint32_t>(cm.fact_ids.size()));
        cm.fact_ids.push_back(f.id);
        cm.fact_initial.push_back(f.initial_value);
    }

    cm.fact_at.assign(cm.container_ids.size() * std::max<std::size_t>(cm.property_count, 1), -1);
    cm.container_facts.resize(cm.container_ids.size());
    for (std::size_t ci = 0; ci < model.containers().size(); ++ci) {
        for (EntityId fid : model.containers()[ci].facts) {
            auto fit = fact_index.find(fid);
            if (fit == fact_index.end()) throw std::invalid_argument("model not validated");
            cm.container_facts[ci].push_back(fit->second);
            const Fact& fact = model.facts()[fit->second];
            if (fact.property) {
                auto pit = property_index.find(*fact.property);
                if (pit == property_index.end()) throw std::invalid_argument("model not validated");
                cm.fact_at[ci * cm.property_count + pit->second] =
                    static_cast<std::int32_t>(fit->second);
            }
        }
    }

    for (const auto& l : model.links()) {
        auto s = container_index.find(l.source);
        auto d = container_index.find(l.destination);
        if (s == container_index.end() || d == container_index.end()) {
            throw std::invalid_argument("model not validated");
        }
        cm.link_ids.push_back(l.id);
        cm.link_source.push_back(s->second);
        cm.link_destination.push_back(d->second);
    }

    // Per-container exit spans, sorted by link number.
    std::vector<std::uint32_t> order(cm.link_ids.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (cm.link_source[a] != cm.link_source[b]) return cm.link_source[a] < cm.link_source[b];
        return cm.link_ids[a].number < cm.link_ids[b].number;
    });
    cm.exit_span.assign(cm.container_ids.size(), {0, 0});
    for (std::uint32_t i = 0; i < order.size();) {
        std::uint32_t src = cm.link_source[order[i]];
        std::uint32_t begin = static_cast<std::uint32_t>(cm.exit_links.size());
        while (i < order.size() && cm.link_source[order[i]] == src) {
            cm.exit_links.push_back(order[i]);
            ++i;
        }
        cm.exit_span[src] = {begin, static_cast<std::uint32_t>(cm.exit_links.size())};
    }

    auto compile_conditions = [&](const std::vector<Condition>& conditions) {
        std::vector<std::pair<std::uint32_t, bool>> out;
        out.reserve(conditions.size());
        for (const auto& c : conditions) {
            auto pit = property_index.find(c.property);
            if (pit == property_index.end()) throw std::invalid_argument("model not validated");
            out.emplace_back(pit->second, c.value);
        }
        return out;
    };
    for (const auto& r : model.rules()) {
        cm.rules.push_back({r.id, compile_conditions(r.start_pre), compile_conditions(r.end_pre),
                            compile_conditions(r.start_post), compile_conditions(r.end_post)});
    }
    std::sort(cm.rules.begin(), cm.rules.end(),
              [](const auto& a, const auto& b) { return a.id.number < b.id.number; });

    return cm;
}

// Per-path variant state over compiled indexes. Fact slots hold -1 until the
// owning container is first visited.
struct PathState {
    std::vector<std::int8_t> facts;
    std::vector<std::uint32_t> usage;
    std::vector<std::uint32_t> visits;  // container indexes, first-visit order
};

void merge_container(const CompiledModel& cm, PathState& state, std::uint32_t container) {
    if (std::find(state.visits.begin(), state.visits.end(), container) != state.visits.end()) {
        return;
    }
    for (std::uint32_t fi : cm.container_facts[container]) {
        if (state.facts[fi] < 0) state.facts[fi] = cm.fact_initial[fi] ? 1 : 0;
    }
    state.visits.push_back(container);
}

bool conditions_hold(const CompiledModel& cm, const PathState& state, std::uint32_t container,
                     const std::vector<std::pair<std::uint32_t, bool>>& conditions) {
    for (const auto& [property, required] : conditions) {
        std::int32_t fi = cm.fact_for(container, property);
        if (fi < 0) return false;
        std::int8_t value = state.facts[fi];
        if (value < 0) value = cm.fact_initial[fi] ? 1 : 0;
        if ((value == 1) != required) return false;
    }
    return true;
}

bool conditions_writable(const CompiledModel& cm, std::uint32_t container,
                         const std::vector<std::pair<std::uint32_t, bool>>& conditions) {
    for (const auto& [property, value] : conditions) {
        if (cm.fact_for(container, property) < 0) return false;
    }
    return true;
}

void write_conditions(const CompiledModel& cm, PathState& state, std::uint32_t container,
                      const std::vector<std::pair<std::uint32_t, bool>>& conditions) {
    for (const auto& [property, value] : conditions) {
        state.facts[cm.fact_for(container, property)] = value ? 1 : 0;
    }
}

// Sequential semantics: each eligible rule's posts are applied before the
// next rule is evaluated.
std::vector<EntityId> fire_rules_compiled(const CompiledModel& cm, PathState& state,
                                          std::uint32_t source, std::uint32_t destination) {
    std::vector<EntityId> fired;
    for (const auto& rule : cm.rules) {
        if (!conditions_hold(cm, state, source, rule.start_pre)) continue;
        if (!conditions_hold(cm, state, destination, rule.end_pre)) continue;
        if (!conditions_writable(cm, source, rule.start_post)) continue;
        if (!conditions_writable(cm, destination, rule.end_post)) continue;
        write_conditions(cm, state, source, rule.start_post);
        write_conditions(cm, state, destination, rule.end_post);
        fired.push_back(rule.id);
    }
    return fired;
}

// Ancestry for reconstructing hop chains; one entry per explored path.
struct ChainEntry {
    std::int64_t parent;  // -1 for the root
    std::uint32_t link;   // arrival link (kNoLink for the root)
    std::uint32_t container;
    std::uint32_t depth;
    std::vector<EntityId> fired;
};

struct BfsRun {
    const CompiledModel& cm;
    const RunConfig& config;
    const RecordSink& sink;
    EnumerationResult result;

    std::deque<ChainEntry> chain;
    std::deque<std::pair<std::int64_t, PathState>> frontier;

    std::optional<Clock::time_point> deadline;
    std::uint64_t ticks{0};

    bool out_of_time() {
        if (!deadline) return false;
        if ((++ticks & 0x1ff) != 0) return false;
        return Clock::now() >= *deadline;
    }

    std::vector<RecordHop> hops_of(std::int64_t node) const {
        std::vector<RecordHop> hops;
        for (std::int64_t i = node; chain[i].parent >= 0; i = chain[i].parent) {
            const ChainEntry& e = chain[i];
            hops.push_back({cm.container_ids[chain[e.parent].container], cm.link_ids[e.link],
                            e.fired});
        }
        std::reverse(hops.begin(), hops.end());
        return hops;
    }

    std::vector<EntityId> exits_of(const PathState& state, std::uint32_t container) const {
        std::vector<EntityId> exits;
        auto [begin, end] = cm.exit_span[container];
        for (std::uint32_t i = begin; i < end; ++i) {
            std::uint32_t link = cm.exit_links[i];
            if (state.usage[link] < static_cast<std::uint32_t>(config.link_cap)) {
                exits.push_back(cm.link_ids[link]);
            }
        }
        return exits;
    }

    bool has_exit(const PathState& state, std::uint32_t container) const {
        auto [begin, end] = cm.exit_span[container];
        for (std::uint32_t i = begin; i < end; ++i) {
            if (state.usage[cm.exit_links[i]] < static_cast<std::uint32_t>(config.link_cap)) {
                return true;
            }
        }
        return false;
    }

    void emit_record(std::int64_t node, const PathState& state) {
        if (!config.trace_enabled) return;
        PathRecord record;
        record.hops = hops_of(node);
        record.terminal = cm.container_ids[chain[node].container];
        record.available_exits = exits_of(state, chain[node].container);
        for (std::uint32_t ci : state.visits) {
            for (std::uint32_t fi : cm.container_facts[ci]) {
                record.fact_states.emplace_back(cm.fact_ids[fi], state.facts[fi] == 1);
            }
        }
        if (sink) {
            sink(record);
        } else {
            result.trace.push_back(std::move(record));
        }
    }

    RealityPath materialize(std::int64_t node, const PathState& state) const {
        RealityPath path;
        auto hops = hops_of(node);
        path.steps.reserve(hops.size());
        for (auto& hop : hops) {
            path.steps.push_back({hop.container, hop.link, std::move(hop.rules)});
        }
        path.terminal = cm.container_ids[chain[node].container];
        for (std::uint32_t ci : state.visits) {
            path.first_visit_order.push_back(cm.container_ids[ci]);
            for (std::uint32_t fi : cm.container_facts[ci]) {
                path.variant_facts.emplace(cm.fact_ids[fi], state.facts[fi] == 1);
            }
        }
        for (std::uint32_t li = 0; li < state.usage.size(); ++li) {
            if (state.usage[li] > 0) path.link_usage.emplace(cm.link_ids[li], state.usage[li]);
        }
        return path;
    }

    // Accounts for a freshly created path: record, final/dead-end/frontier.
    void admit(std::int64_t node, PathState&& state, std::uint32_t end_container) {
        ++result.stats.trace_records;
        result.stats.max_depth =
            std::max(result.stats.max_depth, static_cast<int>(chain[node].depth));
        emit_record(node, state);
        if (chain[node].container == end_container) {
            ++result.stats.final_paths;
            result.final_paths.push_back(materialize(node, state));
            return;
        }
        if (has_exit(state, chain[node].container)) {
            frontier.emplace_back(node, std::move(state));
        }
    }

    void run(std::uint32_t start, std::uint32_t end) {
        if (config.timeout) {
            deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(*config.timeout);
        }

        PathState root;
        root.facts.assign(cm.fact_ids.size(), -1);
        root.usage.assign(cm.link_ids.size(), 0);
        merge_container(cm, root, start);
        chain.push_back({-1, kNoLink, start, 0, {}});
        admit(0, std::move(root), end);

        while (!frontier.empty()) {
            if (out_of_time()) {
                result.stats.completed = false;
                return;
            }
            auto [node, state] = std::move(frontier.front());
            frontier.pop_front();
            ++result.stats.expansions;

            auto [begin, span_end] = cm.exit_span[chain[node].container];
            for (std::uint32_t i = begin; i < span_end; ++i) {
                std::uint32_t link = cm.exit_links[i];
                if (state.usage[link] >= static_cast<std::uint32_t>(config.link_cap)) continue;
                PathState child = state;
                std::uint32_t destination = cm.link_destination[link];
                merge_container(cm, child, destination);
                std::vector<EntityId> fired =
                    fire_rules_compiled(cm, child, chain[node].container, destination);
                ++child.usage[link];
                chain.push_back({node, link, destination, chain[node].depth + 1,
                                 std::move(fired)});
                admit(static_cast<std::int64_t>(chain.size()) - 1, std::move(child), end);
            }
        }
    }
};

// Count-only mode: iterative depth-first walk with usage undo. It visits the
// exact same path tree as the breadth-first run (rule firing never gates
// traversal), so every counter comes out identical; only the visiting order
// differs, which count-only mode is allowed to relax.
void run_count_only(const CompiledModel& cm, const RunConfig& config, std::uint32_t start,
                    std::uint32_t end, EnumerationStats& stats) {
    std::optional<Clock::time_point> deadline;
    if (config.timeout) {
        deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(*config.timeout);
    }
    const auto cap = static_cast<std::uint32_t>(config.link_cap);

    struct Frame {
        std::uint32_t container;
        std::uint32_t cursor;    // next exit candidate within the exit span
        std::uint32_t via_link;  // kNoLink for the root
        bool counted;            // contributed to stats.expansions
    };

    std::vector<std::uint32_t> usage(cm.link_ids.size(), 0);
    std::vector<Frame> stack;

    ++stats.trace_records;
    if (start == end) {
        ++stats.final_paths;
        return;
    }
    stack.push_back({start, cm.exit_span[start].first, kNoLink, false});

    std::uint64_t ticks = 0;
    while (!stack.empty()) {
        Frame& frame = stack.back();
        std::uint32_t span_end = cm.exit_span[frame.container].second;
        std::uint32_t i = frame.cursor;
        while (i < span_end && usage[cm.exit_links[i]] >= cap) ++i;
        if (i >= span_end) {
            if (frame.via_link != kNoLink) --usage[frame.via_link];
            stack.pop_back();
            continue;
        }
        frame.cursor = i + 1;
        if (!frame.counted) {
            frame.counted = true;
            ++stats.expansions;
        }

        std::uint32_t link = cm.exit_links[i];
        std::uint32_t destination = cm.link_destination[link];
        int depth = static_cast<int>(stack.size());
        ++stats.trace_records;
        stats.max_depth = std::max(stats.max_depth, depth);
        if (destination == end) {
            ++stats.final_paths;
        } else {
            ++usage[link];
            stack.push_back({destination, cm.exit_span[destination].first, link, false});
        }

        if (deadline && (++ticks & 0x3ff) == 0 && Clock::now() >= *deadline) {
            stats.completed = false;
            return;
        }
    }
}

}  // namespace

EnumerationResult enumerate_paths(const NetworkModel& model, const RunConfig& config,
                                  const RecordSink& sink) {
    if (config.link_cap < 1) {
        throw std::invalid_argument("link cap must be at least 1");
    }
    std::uint32_t start = require_container(model, config.start, "start");
    std::uint32_t end = require_container(model, config.end, "end");

    auto begin = Clock::now();
    CompiledModel cm = compile(model);
    EnumerationResult result;
    if (config.count_only) {
        run_count_only(cm, config, start, end, result.stats);
    } else {
        BfsRun bfs{cm, config, sink, {}, {}, {}, {}, {}};
        bfs.run(start, end);
        result = std::move(bfs.result);
    }
    result.stats.elapsed = Clock::now() - begin;
    return result;
}

RealityPath make_root_path(const NetworkModel& model, EntityId start) {
    const Container* container = model.find_container(start);
    if (!container) {
        throw std::invalid_argument("start container " + render(start) + " not defined in model");
    }
    RealityPath path;
    path.terminal = start;
    path.first_visit_order.push_back(start);
    for (EntityId fid : container->facts) {
        const Fact* fact = model.find_fact(fid);
        if (fact) path.variant_facts.emplace(fid, fact->initial_value);
    }
    return path;
}

std::vector<EntityId> available_exits(const NetworkModel& model, const RealityPath& path,
                                      int link_cap) {
    std::vector<EntityId> exits;
    for (const auto& link : model.links()) {
        if (link.source != path.terminal) continue;
        auto it = path.link_usage.find(link.id);
        std::uint32_t used = it == path.link_usage.end() ? 0 : it->second;
        if (used < static_cast<std::uint32_t>(link_cap)) exits.push_back(link.id);
    }
    std::sort(exits.begin(), exits.end(),
              [](EntityId a, EntityId b) { return a.number < b.number; });
    return exits;
}

namespace {

// Variant value when present, initial value otherwise; nullopt when the
// container holds no fact for the property.
std::optional<bool> variant_value(const NetworkModel& model, const RealityPath& path,
                                  EntityId container, EntityId property) {
    const Fact* fact = model.fact_for(container, property);
    if (!fact) return std::nullopt;
    auto it = path.variant_facts.find(fact->id);
    if (it != path.variant_facts.end()) return it->second;
    return fact->initial_value;
}

bool side_holds(const NetworkModel& model, const RealityPath& path, EntityId container,
                const std::vector<Condition>& conditions) {
    for (const auto& condition : conditions) {
        auto value = variant_value(model, path, container, condition.property);
        if (!value || *value != condition.value) return false;
    }
    return true;
}

bool side_writable(const NetworkModel& model, EntityId container,
                   const std::vector<Condition>& conditions) {
    for (const auto& condition : conditions) {
        if (!model.fact_for(container, condition.property)) return false;
    }
    return true;
}

const Link& require_link(const NetworkModel& model, EntityId link) {
    const Link* l = model.find_link(link);
    if (!l) throw std::invalid_argument("link " + render(link) + " not defined in model");
    return *l;
}

}  // namespace

bool rule_eligible(const NetworkModel& model, const RealityPath& path, const GenericRule& rule,
                   EntityId link) {
    const Link& l = require_link(model, link);
    return side_holds(model, path, l.source, rule.start_pre) &&
           side_holds(model, path, l.destination, rule.end_pre) &&
           side_writable(model, l.source, rule.start_post) &&
           side_writable(model, l.destination, rule.end_post);
}

void apply_rule(const NetworkModel& model, RealityPath& path, const GenericRule& rule,
                EntityId link) {
    const Link& l = require_link(model, link);
    for (const auto& condition : rule.start_post) {
        if (const Fact* fact = model.fact_for(l.source, condition.property)) {
            path.variant_facts[fact->id] = condition.value;
        }
    }
    for (const auto& condition : rule.end_post) {
        if (const Fact* fact = model.fact_for(l.destination, condition.property)) {
            path.variant_facts[fact->id] = condition.value;
        }
    }
}

std::vector<EntityId> fire_rules(const NetworkModel& model, RealityPath& path, EntityId link) {
    std::vector<const GenericRule*> ordered;
    ordered.reserve(model.rules().size());
    for (const auto& rule : model.rules()) ordered.push_back(&rule);
    std::sort(ordered.begin(), ordered.end(),
              [](const GenericRule* a, const GenericRule* b) { return a->id.number < b->id.number; });

    std::vector<EntityId> fired;
    for (const GenericRule* rule : ordered) {
        if (rule_eligible(model, path, *rule, link)) {
            apply_rule(model, path, *rule, link);
            fired.push_back(rule->id);
        }
    }
    return fired;
}

std::vector<EntityId> advance_path(const NetworkModel& model, RealityPath& path, EntityId link) {
    const Link& l = require_link(model, link);
    if (l.source != path.terminal) {
        throw std::invalid_argument("link " + render(link) + " does not leave " +
                                    render(path.terminal));
    }
    if (std::find(path.first_visit_order.begin(), path.first_visit_order.end(), l.destination) ==
        path.first_visit_order.end()) {
        if (const Container* destination = model.find_container(l.destination)) {
            for (EntityId fid : destination->facts) {
                if (const Fact* fact = model.find_fact(fid)) {
                    path.variant_facts.emplace(fid, fact->initial_value);
                }
            }
        }
        path.first_visit_order.push_back(l.destination);
    }
    std::vector<EntityId> fired = fire_rules(model, path, link);
    ++path.link_usage[link];
    path.steps.push_back({l.source, link, fired});
    path.terminal = l.destination;
    return fired;
}

PathRecord to_record(const NetworkModel& model, const RealityPath& path, int link_cap) {
    PathRecord record;
    record.hops.reserve(path.steps.size());
    for (const auto& step : path.steps) {
        record.hops.push_back({step.container, step.link, step.fired_rules});
    }
    record.terminal = path.terminal;
    record.available_exits = available_exits(model, path, link_cap);
    for (EntityId cid : path.first_visit_order) {
        const Container* container = model.find_container(cid);
        if (!container) continue;
        for (EntityId fid : container->facts) {
            auto it = path.variant_facts.find(fid);
            if (it != path.variant_facts.end()) {
                record.fact_states.emplace_back(fid, it->second);
            }
        }
    }
    return record;
}

}  // namespace attackpath
