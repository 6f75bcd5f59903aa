#include "attackpath/model_format.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace attackpath {

std::string format_diagnostic(const Diagnostic& diagnostic) {
    std::string out = "line " + std::to_string(diagnostic.line);
    if (diagnostic.column > 0) out += ", col " + std::to_string(diagnostic.column);
    out += diagnostic.severity == Severity::Error ? ": error: " : ": warning: ";
    out += diagnostic.message;
    return out;
}

namespace {

struct Token {
    std::string text;
    int column{0};
    bool quoted{false};
};

Diagnostic dig_error(int line, int column, std::string message) {
    return {line, column, Severity::Error, std::move(message)};
}

// Splits one line into tokens. Descriptions are double-quoted with backslash
// escapes for quote and backslash.
bool tokenize_line(std::string_view line, int line_no, std::vector<Token>& tokens,
                   std::vector<Diagnostic>& diagnostics) {
    tokens.clear();
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t') {
            ++i;
            continue;
        }
        int column = static_cast<int>(i) + 1;
        if (line[i] == '"') {
            std::string text;
            ++i;
            while (true) {
                if (i >= line.size()) {
                    diagnostics.push_back(dig_error(line_no, column, "unterminated string"));
                    return false;
                }
                char c = line[i++];
                if (c == '"') break;
                if (c == '\\') {
                    if (i >= line.size() || (line[i] != '"' && line[i] != '\\')) {
                        diagnostics.push_back(
                            dig_error(line_no, static_cast<int>(i), "invalid escape sequence"));
                        return false;
                    }
                    text += line[i++];
                } else {
                    text += c;
                }
            }
            tokens.push_back({std::move(text), column, true});
        } else {
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '"') ++i;
            tokens.push_back({std::string(line.substr(start, i - start)), column, false});
        }
    }
    return true;
}

struct ModelParser {
    std::vector<Diagnostic> diagnostics;
    NetworkModel model;
    bool failed{false};

    // Declaration lines per entity, for attributing semantic issues.
    std::map<EntityId, int> declared_at;

    GenericRule pending_rule;
    int pending_rule_line{0};
    bool in_rule{false};

    void error(int line, int column, std::string message) {
        failed = true;
        diagnostics.push_back(dig_error(line, column, std::move(message)));
    }

    std::optional<EntityId> expect_id(const std::vector<Token>& tokens, std::size_t index,
                                      EntityKind kind, int line, const char* what) {
        if (index >= tokens.size() || tokens[index].quoted) {
            error(line, index < tokens.size() ? tokens[index].column : 0,
                  std::string("expected ") + what);
            return std::nullopt;
        }
        auto id = parse_entity_id(tokens[index].text);
        if (!id || id->kind != kind) {
            error(line, tokens[index].column,
                  std::string("expected ") + what + ", got '" + tokens[index].text + "'");
            return std::nullopt;
        }
        return id;
    }

    std::optional<bool> expect_bool(const std::vector<Token>& tokens, std::size_t index,
                                    int line) {
        if (index < tokens.size() && !tokens[index].quoted) {
            if (tokens[index].text == "true") return true;
            if (tokens[index].text == "false") return false;
        }
        error(line, index < tokens.size() ? tokens[index].column : 0,
              "expected 'true' or 'false'");
        return std::nullopt;
    }

    std::optional<std::string> expect_description(const std::vector<Token>& tokens,
                                                  std::size_t index, int line) {
        if (index >= tokens.size() || !tokens[index].quoted) {
            error(line, index < tokens.size() ? tokens[index].column : 0,
                  "expected quoted description");
            return std::nullopt;
        }
        return tokens[index].text;
    }

    bool expect_keyword(const std::vector<Token>& tokens, std::size_t index,
                        std::string_view keyword, int line) {
        if (index >= tokens.size() || tokens[index].quoted || tokens[index].text != keyword) {
            error(line, index < tokens.size() ? tokens[index].column : 0,
                  "expected '" + std::string(keyword) + "'");
            return false;
        }
        return true;
    }

    void expect_end_of_line(const std::vector<Token>& tokens, std::size_t index, int line) {
        if (index < tokens.size()) {
            error(line, tokens[index].column, "unexpected trailing token");
        }
    }

    bool declare(EntityId id, int line, int column) {
        auto [it, inserted] = declared_at.emplace(id, line);
        if (!inserted) {
            error(line, column, "duplicate id " + render(id) + " (first declared on line " +
                                    std::to_string(it->second) + ")");
            return false;
        }
        return true;
    }

    void parse_rule_body_line(const std::vector<Token>& tokens, int line) {
        if (tokens[0].text == "END" && tokens.size() == 1) {
            model.add_rule(std::move(pending_rule));
            pending_rule = {};
            in_rule = false;
            return;
        }
        bool is_pre = tokens[0].text == "PRE";
        bool is_post = tokens[0].text == "POST";
        if (!is_pre && !is_post) {
            error(line, tokens[0].column, "expected 'PRE', 'POST' or 'END' inside rule block");
            return;
        }
        if (tokens.size() < 2 || (tokens[1].text != "START" && tokens[1].text != "END")) {
            error(line, tokens.size() > 1 ? tokens[1].column : 0,
                  "expected 'START' or 'END' scope");
            return;
        }
        bool start_side = tokens[1].text == "START";
        auto property = expect_id(tokens, 2, EntityKind::Property, line, "property id");
        auto value = expect_bool(tokens, 3, line);
        if (!property || !value) return;
        expect_end_of_line(tokens, 4, line);
        Condition condition{*property, *value};
        if (is_pre) {
            (start_side ? pending_rule.start_pre : pending_rule.end_pre).push_back(condition);
        } else {
            (start_side ? pending_rule.start_post : pending_rule.end_post).push_back(condition);
        }
    }

    void parse_directive(const std::vector<Token>& tokens, int line) {
        const std::string& keyword = tokens[0].text;
        if (keyword == "PROPERTY") {
            auto id = expect_id(tokens, 1, EntityKind::Property, line, "property id");
            auto description = expect_description(tokens, 2, line);
            if (!id || !description) return;
            expect_end_of_line(tokens, 3, line);
            if (declare(*id, line, tokens[1].column)) {
                model.add_property({*id, std::move(*description)});
            }
        } else if (keyword == "CONTAINER") {
            auto id = expect_id(tokens, 1, EntityKind::Container, line, "container id");
            auto description = expect_description(tokens, 2, line);
            if (!id || !description) return;
            expect_end_of_line(tokens, 3, line);
            if (declare(*id, line, tokens[1].column)) {
                model.add_container({*id, std::move(*description), {}});
            }
        } else if (keyword == "FACT") {
            auto id = expect_id(tokens, 1, EntityKind::Fact, line, "fact id");
            if (!id || !expect_keyword(tokens, 2, "OWNER", line)) return;
            auto owner = expect_id(tokens, 3, EntityKind::Container, line, "container id");
            if (!owner) return;
            std::size_t index = 4;
            std::optional<EntityId> property;
            if (index < tokens.size() && !tokens[index].quoted && tokens[index].text == "PROP") {
                property = expect_id(tokens, index + 1, EntityKind::Property, line, "property id");
                if (!property) return;
                index += 2;
            }
            if (!expect_keyword(tokens, index, "VALUE", line)) return;
            auto value = expect_bool(tokens, index + 1, line);
            auto description = expect_description(tokens, index + 2, line);
            if (!value || !description) return;
            expect_end_of_line(tokens, index + 3, line);
            if (declare(*id, line, tokens[1].column)) {
                model.add_fact({*id, *owner, property, *value, std::move(*description)});
            }
        } else if (keyword == "LINK") {
            auto id = expect_id(tokens, 1, EntityKind::Link, line, "link id");
            if (!id || !expect_keyword(tokens, 2, "FROM", line)) return;
            auto source = expect_id(tokens, 3, EntityKind::Container, line, "container id");
            if (!source || !expect_keyword(tokens, 4, "TO", line)) return;
            auto destination = expect_id(tokens, 5, EntityKind::Container, line, "container id");
            auto description = expect_description(tokens, 6, line);
            if (!destination || !description) return;
            expect_end_of_line(tokens, 7, line);
            if (declare(*id, line, tokens[1].column)) {
                model.add_link({*id, std::move(*description), *source, *destination});
            }
        } else if (keyword == "BILINK") {
            auto forward = expect_id(tokens, 1, EntityKind::Link, line, "link id");
            auto backward = expect_id(tokens, 2, EntityKind::Link, line, "link id");
            if (!forward || !backward || !expect_keyword(tokens, 3, "BETWEEN", line)) return;
            auto first = expect_id(tokens, 4, EntityKind::Container, line, "container id");
            auto second = expect_id(tokens, 5, EntityKind::Container, line, "container id");
            auto description = expect_description(tokens, 6, line);
            if (!first || !second || !description) return;
            expect_end_of_line(tokens, 7, line);
            if (*forward == *backward) {
                error(line, tokens[2].column, "BILINK needs two distinct link ids");
                return;
            }
            if (declare(*forward, line, tokens[1].column)) {
                model.add_link({*forward, *description, *first, *second});
            }
            if (declare(*backward, line, tokens[2].column)) {
                model.add_link({*backward, *description, *second, *first});
            }
        } else if (keyword == "RULE") {
            auto id = expect_id(tokens, 1, EntityKind::Rule, line, "rule id");
            auto description = expect_description(tokens, 2, line);
            if (!id || !description) return;
            expect_end_of_line(tokens, 3, line);
            if (declare(*id, line, tokens[1].column)) {
                pending_rule = GenericRule{*id, std::move(*description), {}, {}, {}, {}};
                pending_rule_line = line;
                in_rule = true;
            }
        } else {
            error(line, tokens[0].column, "unknown directive '" + keyword + "'");
        }
    }
};

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    for (auto& line : lines) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    }
    return lines;
}

bool is_blank_or_comment(std::string_view line) {
    for (char c : line) {
        if (c == ' ' || c == '\t') continue;
        return c == '#';
    }
    return true;
}

}  // namespace

ParseModelResult parse_model(std::string_view text) {
    ModelParser parser;
    std::vector<Token> tokens;

    int line_no = 0;
    for (std::string_view line : split_lines(text)) {
        ++line_no;
        if (is_blank_or_comment(line)) continue;
        if (!tokenize_line(line, line_no, tokens, parser.diagnostics)) {
            parser.failed = true;
            continue;
        }
        if (tokens.empty()) continue;
        if (parser.in_rule) {
            parser.parse_rule_body_line(tokens, line_no);
        } else {
            parser.parse_directive(tokens, line_no);
        }
    }
    if (parser.in_rule) {
        parser.error(line_no, 0,
                     "unterminated RULE block (opened on line " +
                         std::to_string(parser.pending_rule_line) + ")");
    }

    // Semantic checks, attributed to the declaring line.
    ValidationReport report = validate_model(parser.model);
    for (auto& issue : report.issues) {
        int at = 0;
        if (issue.subject) {
            auto it = parser.declared_at.find(*issue.subject);
            if (it != parser.declared_at.end()) at = it->second;
        }
        parser.diagnostics.push_back({at, 0, issue.severity, std::move(issue.message)});
        if (issue.severity == Severity::Error) parser.failed = true;
    }

    ParseModelResult result;
    result.diagnostics = std::move(parser.diagnostics);
    if (!parser.failed) result.model = std::move(parser.model);
    return result;
}

namespace {

std::string quote(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string bool_text(bool value) { return value ? "true" : "false"; }

template <typename T>
std::vector<const T*> by_id(const std::vector<T>& items) {
    std::vector<const T*> out;
    out.reserve(items.size());
    for (const auto& item : items) out.push_back(&item);
    std::sort(out.begin(), out.end(),
              [](const T* a, const T* b) { return a->id.number < b->id.number; });
    return out;
}

}  // namespace

std::string serialize_model(const NetworkModel& model) {
    std::string out;

    for (const auto* property : by_id(model.properties())) {
        out += "PROPERTY " + render(property->id) + " " + quote(property->description) + "\n";
    }
    for (const auto* container : by_id(model.containers())) {
        out += "CONTAINER " + render(container->id) + " " + quote(container->description) + "\n";
    }
    // Facts grouped by owner (containers ascending), keeping each container's
    // definition order so a reparse reproduces it.
    std::vector<const Fact*> ordered_facts;
    for (const auto* container : by_id(model.containers())) {
        for (EntityId fid : container->facts) {
            if (const Fact* fact = model.find_fact(fid)) ordered_facts.push_back(fact);
        }
    }
    for (const auto& fact : model.facts()) {
        if (std::find(ordered_facts.begin(), ordered_facts.end(), &fact) == ordered_facts.end()) {
            ordered_facts.push_back(&fact);  // orphans of not-yet-valid models
        }
    }
    for (const Fact* fact : ordered_facts) {
        out += "FACT " + render(fact->id) + " OWNER " + render(fact->owner);
        if (fact->property) out += " PROP " + render(*fact->property);
        out += " VALUE " + bool_text(fact->initial_value) + " " + quote(fact->description) + "\n";
    }
    for (const auto* link : by_id(model.links())) {
        out += "LINK " + render(link->id) + " FROM " + render(link->source) + " TO " +
               render(link->destination) + " " + quote(link->description) + "\n";
    }
    for (const auto* rule : by_id(model.rules())) {
        out += "RULE " + render(rule->id) + " " + quote(rule->description) + "\n";
        for (const auto& c : rule->start_pre) {
            out += "  PRE START " + render(c.property) + " " + bool_text(c.value) + "\n";
        }
        for (const auto& c : rule->end_pre) {
            out += "  PRE END " + render(c.property) + " " + bool_text(c.value) + "\n";
        }
        for (const auto& c : rule->start_post) {
            out += "  POST START " + render(c.property) + " " + bool_text(c.value) + "\n";
        }
        for (const auto& c : rule->end_post) {
            out += "  POST END " + render(c.property) + " " + bool_text(c.value) + "\n";
        }
        out += "END\n";
    }
    return out;
}

ParseFiltersResult parse_filters(std::string_view text) {
    std::vector<Diagnostic> diagnostics;
    std::vector<Filter> filters;
    std::map<EntityId, int> container_lines;
    bool failed = false;
    bool in_filter = false;
    Filter pending;
    int pending_line = 0;

    auto error = [&](int line, int column, std::string message) {
        failed = true;
        diagnostics.push_back(dig_error(line, column, std::move(message)));
    };

    std::vector<Token> tokens;
    int line_no = 0;
    for (std::string_view line : split_lines(text)) {
        ++line_no;
        if (is_blank_or_comment(line)) continue;
        if (!tokenize_line(line, line_no, tokens, diagnostics)) {
            failed = true;
            continue;
        }
        if (tokens.empty()) continue;

        if (!in_filter) {
            if (tokens[0].text != "FILTER") {
                error(line_no, tokens[0].column, "expected 'FILTER'");
                continue;
            }
            if (tokens.size() < 2 || tokens[1].quoted) {
                error(line_no, 0, "expected container id");
                continue;
            }
            auto id = parse_entity_id(tokens[1].text);
            if (!id || id->kind != EntityKind::Container) {
                error(line_no, tokens[1].column,
                      "expected container id, got '" + tokens[1].text + "'");
                continue;
            }
            if (tokens.size() > 2) {
                error(line_no, tokens[2].column, "unexpected trailing token");
                continue;
            }
            auto [it, inserted] = container_lines.emplace(*id, line_no);
            if (!inserted) {
                error(line_no, tokens[1].column,
                      "container " + render(*id) + " referenced by multiple filters (first on line " +
                          std::to_string(it->second) + ")");
            }
            pending = Filter{*id, {}};
            pending_line = line_no;
            in_filter = true;
            continue;
        }

        if (tokens[0].text == "END" && tokens.size() == 1) {
            filters.push_back(std::move(pending));
            in_filter = false;
            continue;
        }
        if (tokens[0].text != "REQUIRE" || tokens.size() != 3 || tokens[1].quoted ||
            tokens[2].quoted) {
            error(line_no, tokens[0].column, "expected 'REQUIRE <Pid> <true|false>' or 'END'");
            continue;
        }
        auto property = parse_entity_id(tokens[1].text);
        if (!property || property->kind != EntityKind::Property) {
            error(line_no, tokens[1].column, "expected property id, got '" + tokens[1].text + "'");
            continue;
        }
        std::optional<bool> value;
        if (tokens[2].text == "true") value = true;
        if (tokens[2].text == "false") value = false;
        if (!value) {
            error(line_no, tokens[2].column, "expected 'true' or 'false'");
            continue;
        }
        bool duplicate = std::any_of(pending.constraints.begin(), pending.constraints.end(),
                                     [&](const auto& c) { return c.property == *property; });
        if (duplicate) {
            error(line_no, tokens[1].column,
                  "duplicate property " + render(*property) + " in filter for " +
                      render(pending.container));
            continue;
        }
        pending.constraints.push_back({*property, *value});
    }

    if (in_filter) {
        error(line_no, 0,
              "unterminated FILTER block (opened on line " + std::to_string(pending_line) + ")");
    }

    ParseFiltersResult result;
    result.diagnostics = std::move(diagnostics);
    if (!failed) result.filters = std::move(filters);
    return result;
}

}  // namespace attackpath
