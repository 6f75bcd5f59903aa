#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "attackpath/entity_id.hpp"

namespace attackpath {

/// Shared descriptor (e.g. "isAdmin") that lets one generic rule address
/// facts across many containers.
struct CommonProperty {
    EntityId id;
    std::string description;

    bool operator==(const CommonProperty&) const = default;
};

/// Boolean datum owned by one container. A fact without a property can never
/// satisfy or be altered by a rule; it only shows up in serialized fact lists.
struct Fact {
    EntityId id;
    EntityId owner;
    std::optional<EntityId> property;
    bool initial_value{false};
    std::string description;

    bool operator==(const Fact&) const = default;
};

struct Container {
    EntityId id;
    std::string description;
    /// Fact ids in definition order. This order is observable: path records
    /// list a container's facts exactly in this order.
    std::vector<EntityId> facts;

    bool operator==(const Container&) const = default;
};

/// Strictly unidirectional connection. A bidirectional connection is a pair
/// of links with swapped endpoints.
struct Link {
    EntityId id;
    std::string description;
    EntityId source;
    EntityId destination;

    bool operator==(const Link&) const = default;
};

/// One pre- or post-condition of a generic rule. For pre-conditions `value`
/// is the required fact value; for post-conditions it is the value written.
struct Condition {
    EntityId property;
    bool value{false};

    bool operator==(const Condition&) const = default;
};

/// Attack template that may fire on any traversed link whose endpoint
/// containers satisfy the conditions. "Start" addresses the link's source
/// container, "end" its destination.
struct GenericRule {
    EntityId id;
    std::string description;
    std::vector<Condition> start_pre;
    std::vector<Condition> end_pre;
    std::vector<Condition> start_post;
    std::vector<Condition> end_post;

    bool operator==(const GenericRule&) const = default;
};

enum class Severity { Error, Warning };

struct ValidationIssue {
    Severity severity{Severity::Error};
    std::string message;
    /// Entity the issue is attributed to, when one exists; parsers use it to
    /// point diagnostics at the declaring line.
    std::optional<EntityId> subject;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const;  // true when no errors (warnings allowed)
    std::size_t error_count() const;
    std::size_t warning_count() const;
};

/// The loaded system under test. Collections keep insertion order (which is
/// the declaration order when built by the parser). Treated as immutable once
/// validated: enumeration and filtering only ever read it.
class NetworkModel {
public:
    void add_property(CommonProperty property);
    void add_container(Container container);
    /// Appends the fact and, when the owner container exists, appends the
    /// fact id to the owner's fact list.
    void add_fact(Fact fact);
    void add_link(Link link);
    void add_rule(GenericRule rule);

    const std::vector<CommonProperty>& properties() const { return properties_; }
    const std::vector<Container>& containers() const { return containers_; }
    const std::vector<Fact>& facts() const { return facts_; }
    const std::vector<Link>& links() const { return links_; }
    const std::vector<GenericRule>& rules() const { return rules_; }

    const CommonProperty* find_property(EntityId id) const;
    const Container* find_container(EntityId id) const;
    const Fact* find_fact(EntityId id) const;
    const Link* find_link(EntityId id) const;
    const GenericRule* find_rule(EntityId id) const;

    /// The fact of `container` bound to `property`, or nullptr when the
    /// container holds no such fact. First declaration wins if a (not yet
    /// validated) model holds duplicates.
    const Fact* fact_for(EntityId container, EntityId property) const;

    bool empty() const;

    /// Entity-for-entity equality. Declaration order is irrelevant except for
    /// the fact order inside each container, which is observable in records.
    bool operator==(const NetworkModel& other) const;

private:
    std::vector<CommonProperty> properties_;
    std::vector<Container> containers_;
    std::vector<Fact> facts_;
    std::vector<Link> links_;
    std::vector<GenericRule> rules_;
    // First occurrence wins; duplicates stay in the vectors for validation.
    std::unordered_map<EntityId, std::size_t> index_;
    std::map<std::pair<EntityId, EntityId>, std::size_t> fact_by_owner_property_;
};

/// Pure whole-model check. Returns every invariant violation: unresolved
/// references, duplicate ids, duplicate (container, property) facts,
/// kind mismatches and malformed numbers as errors; self-loop links as
/// warnings. A model is fit for enumeration only when ok() holds.
ValidationReport validate_model(const NetworkModel& model);

}  // namespace attackpath
