#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "attackpath/entity_id.hpp"

namespace attackpath {

// One serialized line of enumeration output. Grammar (bit-exact):
//
//   record      = hop* terminal "|" factlist NEWLINE
//   hop         = containerId "," linkId ("," ruleId)* ";"
//   terminal    = containerId ("U" linkId)*
//   factlist    = [ factState ("," factState)* ]
//   factState   = factId ("T" | "F")
//
// Ids render as their kind letter plus the number zero-padded to a minimum
// width of three. Example:
//
//   C001,L002,R001;C002,L005,R002;C003UL004UL006|F001T,F002T,F003T

struct RecordHop {
    EntityId container;             // container exited on this hop
    EntityId link;                  // exit link traversed
    std::vector<EntityId> rules;    // rules fired on the hop, in firing order

    bool operator==(const RecordHop&) const = default;
};

struct PathRecord {
    std::vector<RecordHop> hops;
    EntityId terminal;
    /// Links still traversable from the terminal, ascending by link number.
    std::vector<EntityId> available_exits;
    /// Facts of every visited container, grouped by first-visit order of the
    /// containers, each group in the container's definition order.
    std::vector<std::pair<EntityId, bool>> fact_states;

    bool operator==(const PathRecord&) const = default;
};

/// Emits the record as one line, terminated by a newline character.
std::string serialize_record(const PathRecord& record);

struct RecordParseResult {
    std::optional<PathRecord> record;
    std::size_t error_offset{0};    // byte offset of the first offending char
    std::string error;              // empty on success

    bool ok() const { return record.has_value(); }
};

/// Inverse of serialize_record. The trailing newline is optional. Id padding
/// is checked strictly (L012 parses, L12 and L0012 do not), so serializing a
/// parsed line reproduces it byte for byte.
RecordParseResult parse_record(std::string_view line);

}  // namespace attackpath
