#include "attackpath/entity_id.hpp"

#include <cstdio>

namespace attackpath {

char kind_letter(EntityKind kind) {
    switch (kind) {
        case EntityKind::Container: return 'C';
        case EntityKind::Link: return 'L';
        case EntityKind::Rule: return 'R';
        case EntityKind::Fact: return 'F';
        case EntityKind::Property: return 'P';
    }
    return '?';
}

std::string_view kind_name(EntityKind kind) {
    switch (kind) {
        case EntityKind::Container: return "container";
        case EntityKind::Link: return "link";
        case EntityKind::Rule: return "rule";
        case EntityKind::Fact: return "fact";
        case EntityKind::Property: return "property";
    }
    return "unknown";
}

std::string render(EntityId id) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%c%03u", kind_letter(id.kind), id.number);
    return buf;
}

static std::optional<EntityKind> kind_from_letter(char letter) {
    switch (letter) {
        case 'C': return EntityKind::Container;
        case 'L': return EntityKind::Link;
        case 'R': return EntityKind::Rule;
        case 'F': return EntityKind::Fact;
        case 'P': return EntityKind::Property;
        default: return std::nullopt;
    }
}

std::optional<EntityId> parse_entity_id(std::string_view text) {
    if (text.size() < 2) return std::nullopt;
    auto kind = kind_from_letter(text[0]);
    if (!kind) return std::nullopt;
    std::uint64_t number = 0;
    for (std::size_t i = 1; i < text.size(); ++i) {
        char c = text[i];
        if (c < '0' || c > '9') return std::nullopt;
        number = number * 10 + static_cast<std::uint64_t>(c - '0');
        if (number > kMaxEntityNumber) return std::nullopt;
    }
    if (number == 0) return std::nullopt;
    return EntityId{*kind, static_cast<std::uint32_t>(number)};
}

}  // namespace attackpath
