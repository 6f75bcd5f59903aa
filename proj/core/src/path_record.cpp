#include "attackpath/path_record.hpp"

namespace attackpath {

namespace {

void render_to(std::string& out, EntityId id) {
    out += kind_letter(id.kind);
    std::string digits = std::to_string(id.number);
    for (std::size_t i = digits.size(); i < 3; ++i) out += '0';
    out += digits;
}

}  // namespace

std::string serialize_record(const PathRecord& record) {
    std::string out;
    for (const auto& hop : record.hops) {
        render_to(out, hop.container);
        out += ',';
        render_to(out, hop.link);
        for (EntityId rule : hop.rules) {
            out += ',';
            render_to(out, rule);
        }
        out += ';';
    }
    render_to(out, record.terminal);
    for (EntityId exit : record.available_exits) {
        out += 'U';
        render_to(out, exit);
    }
    out += '|';
    bool first = true;
    for (const auto& [fact, value] : record.fact_states) {
        if (!first) out += ',';
        first = false;
        render_to(out, fact);
        out += value ? 'T' : 'F';
    }
    out += '\n';
    return out;
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos{0};
    std::string error;

    bool failed() const { return !error.empty(); }

    void fail(const std::string& message) {
        if (error.empty()) error = message;
    }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }

    // Strict render form: at least three digits, no leading zero when the
    // value needs more than three.
    std::optional<EntityId> id(EntityKind kind, char letter) {
        std::size_t start = pos;
        if (!eat(letter)) {
            fail(std::string("expected '") + letter + "'");
            return std::nullopt;
        }
        std::size_t digits_start = pos;
        std::uint64_t number = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            number = number * 10 + static_cast<std::uint64_t>(text[pos] - '0');
            if (number > kMaxEntityNumber) {
                pos = digits_start;
                fail("id number out of range");
                return std::nullopt;
            }
            ++pos;
        }
        std::size_t width = pos - digits_start;
        if (width < 3) {
            pos = start;
            fail("id must carry at least three digits");
            return std::nullopt;
        }
        if (width > 3 && text[digits_start] == '0') {
            pos = start;
            fail("id digits over-padded");
            return std::nullopt;
        }
        if (number == 0) {
            pos = start;
            fail("id number must be positive");
            return std::nullopt;
        }
        return EntityId{kind, static_cast<std::uint32_t>(number)};
    }
};

}  // namespace

RecordParseResult parse_record(std::string_view line) {
    Cursor cur{line, 0, {}};
    PathRecord record;

    // hop* terminal: a container id followed by ',' opens a hop, anything
    // else makes it the terminal.
    while (true) {
        auto container = cur.id(EntityKind::Container, 'C');
        if (!container) break;
        if (cur.eat(',')) {
            RecordHop hop;
            hop.container = *container;
            auto link = cur.id(EntityKind::Link, 'L');
            if (!link) break;
            hop.link = *link;
            while (cur.eat(',')) {
                auto rule = cur.id(EntityKind::Rule, 'R');
                if (!rule) break;
                hop.rules.push_back(*rule);
            }
            if (cur.failed()) break;
            if (!cur.eat(';')) {
                cur.fail("expected ';' after hop");
                break;
            }
            record.hops.push_back(std::move(hop));
            continue;
        }
        record.terminal = *container;
        while (cur.eat('U')) {
            auto exit = cur.id(EntityKind::Link, 'L');
            if (!exit) break;
            record.available_exits.push_back(*exit);
        }
        if (cur.failed()) break;
        if (!cur.eat('|')) {
            cur.fail("expected '|' after terminal");
            break;
        }
        if (cur.peek() == 'F') {
            while (true) {
                auto fact = cur.id(EntityKind::Fact, 'F');
                if (!fact) break;
                char value = cur.peek();
                if (value != 'T' && value != 'F') {
                    cur.fail("expected 'T' or 'F' after fact id");
                    break;
                }
                ++cur.pos;
                record.fact_states.emplace_back(*fact, value == 'T');
                if (!cur.eat(',')) break;
            }
        }
        if (cur.failed()) break;
        cur.eat('\n');
        if (cur.pos != line.size()) {
            cur.fail("trailing characters after record");
            break;
        }
        return {std::move(record), 0, {}};
    }

    return {std::nullopt, cur.pos, cur.error.empty() ? "malformed record" : cur.error};
}

}  // namespace attackpath
