#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace attackpath {

enum class EntityKind : std::uint8_t { Container, Link, Rule, Fact, Property };

char kind_letter(EntityKind kind);
std::string_view kind_name(EntityKind kind);

/// Identity of a model entity: a kind plus a positive number. The rendered
/// form is the kind letter followed by the number zero-padded to a minimum
/// width of three digits (C001, L012, F1000).
struct EntityId {
    EntityKind kind{EntityKind::Container};
    std::uint32_t number{0};

    auto operator<=>(const EntityId&) const = default;
};

/// Largest number an id may carry; rendering stays bijective below this.
inline constexpr std::uint32_t kMaxEntityNumber = 999'999'999;

std::string render(EntityId id);

/// Accepts any zero-padding width (C1, C01, C0001 all name container 1).
/// Rejects number 0, numbers above kMaxEntityNumber and unknown kind letters.
std::optional<EntityId> parse_entity_id(std::string_view text);

inline EntityId container_id(std::uint32_t n) { return {EntityKind::Container, n}; }
inline EntityId link_id(std::uint32_t n) { return {EntityKind::Link, n}; }
inline EntityId rule_id(std::uint32_t n) { return {EntityKind::Rule, n}; }
inline EntityId fact_id(std::uint32_t n) { return {EntityKind::Fact, n}; }
inline EntityId property_id(std::uint32_t n) { return {EntityKind::Property, n}; }

}  // namespace attackpath

template <>
struct std::hash<attackpath::EntityId> {
    std::size_t operator()(const attackpath::EntityId& id) const noexcept {
        return (static_cast<std::size_t>(id.kind) << 32) ^ id.number;
    }
};
