#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "attackpath/filters.hpp"
#include "attackpath/model.hpp"

namespace attackpath {

// Line-oriented model definition format. One directive per line; RULE blocks
// span until END. Lines starting with '#' and blank lines are ignored.
// Descriptions are double-quoted with backslash escapes for quote and
// backslash. Ids are written in rendered form; any zero-padding width is
// accepted on input.
//
//   PROPERTY  <Pid> "<description>"
//   CONTAINER <Cid> "<description>"
//   FACT      <Fid> OWNER <Cid> [PROP <Pid>] VALUE <true|false> "<description>"
//   LINK      <Lid> FROM <Cid> TO <Cid> "<description>"
//   BILINK    <Lid> <Lid> BETWEEN <Cid> <Cid> "<description>"
//   RULE      <Rid> "<description>"
//     PRE  START <Pid> <true|false>
//     PRE  END   <Pid> <true|false>
//     POST START <Pid> <true|false>
//     POST END   <Pid> <true|false>
//   END
//
// Filter files:
//
//   FILTER <Cid>
//     REQUIRE <Pid> <true|false>
//   END

struct Diagnostic {
    int line{0};
    int column{0};  // 1-based; 0 when the position is the whole line
    Severity severity{Severity::Error};
    std::string message;
};

std::string format_diagnostic(const Diagnostic& diagnostic);

struct ParseModelResult {
    /// Present when no error diagnostics were produced (warnings allowed).
    std::optional<NetworkModel> model;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return model.has_value(); }
};

/// Total over arbitrary input: every byte sequence yields either a model or
/// line-numbered diagnostics, never a crash. Semantic checks (unresolved
/// references, duplicates) run via validate_model and are reported at the
/// declaring line. `BILINK a b BETWEEN x y` expands to two links a: x->y and
/// b: y->x.
ParseModelResult parse_model(std::string_view text);

/// Canonical form: directives grouped by kind (properties, containers,
/// facts, links, rules), properties/containers/links/rules ascending by id.
/// Facts are grouped by owner container (containers ascending) keeping each
/// container's definition order, so reparsing reproduces the model exactly.
/// BILINK is never emitted. Requires a valid model.
std::string serialize_model(const NetworkModel& model);

struct ParseFiltersResult {
    std::optional<std::vector<Filter>> filters;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return filters.has_value(); }
};

/// Rejects two filters naming the same container and duplicate properties
/// within one filter. Ids are resolved against a model only when the set is
/// applied.
ParseFiltersResult parse_filters(std::string_view text);

}  // namespace attackpath
