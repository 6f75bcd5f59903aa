#include "attackpath/model_format.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "attackpath/fixtures.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace attackpath;

namespace {

bool has_diagnostic(const std::vector<Diagnostic>& diagnostics, std::string_view needle) {
    return std::any_of(diagnostics.begin(), diagnostics.end(), [&](const auto& d) {
        return d.message.find(needle) != std::string::npos;
    });
}

}  // namespace

TEST_CASE("parsing a minimal model-1 style document") {
    const char* text =
        "PROPERTY P001 \"P1\"\n"
        "PROPERTY P002 \"P2\"\n"
        "PROPERTY P003 \"P3\"\n"
        "CONTAINER C001 \"one\"\n"
        "CONTAINER C002 \"two\"\n"
        "CONTAINER C003 \"three\"\n"
        "FACT F001 OWNER C001 PROP P001 VALUE true \"f1\"\n"
        "FACT F002 OWNER C002 PROP P002 VALUE false \"f2\"\n"
        "FACT F003 OWNER C003 PROP P003 VALUE false \"f3\"\n"
        "BILINK L001 L002 BETWEEN C002 C001 \"pair a\"\n"
        "BILINK L003 L004 BETWEEN C001 C003 \"pair b\"\n"
        "BILINK L005 L006 BETWEEN C002 C003 \"pair c\"\n"
        "RULE R001 \"r1\"\n"
        "  PRE START P001 true\n"
        "  PRE END P002 false\n"
        "  POST END P002 true\n"
        "END\n"
        "RULE R002 \"r2\"\n"
        "  PRE START P002 true\n"
        "  PRE END P003 false\n"
        "  POST END P003 true\n"
        "END\n";
    auto result = parse_model(text);
    REQUIRE(result.ok());
    const auto& m = *result.model;
    CHECK(m.containers().size() == 3);
    CHECK(m.links().size() == 6);
    CHECK(m.facts().size() == 3);
    CHECK(m.rules().size() == 2);
    CHECK(m.properties().size() == 3);
}

TEST_CASE("empty document parses to an empty model") {
    auto result = parse_model("");
    REQUIRE(result.ok());
    CHECK(result.model->empty());

    auto commented = parse_model("# nothing here\n\n   \n");
    REQUIRE(commented.ok());
    CHECK(commented.model->empty());
}

TEST_CASE("bilink expands to two links with swapped endpoints") {
    auto result = parse_model(
        "CONTAINER C001 \"a\"\n"
        "CONTAINER C002 \"b\"\n"
        "BILINK L010 L020 BETWEEN C001 C002 \"pair\"\n");
    REQUIRE(result.ok());
    REQUIRE(result.model->links().size() == 2);
    const auto& forward = result.model->links()[0];
    const auto& backward = result.model->links()[1];
    CHECK(forward.id == link_id(10));
    CHECK(forward.source == container_id(1));
    CHECK(forward.destination == container_id(2));
    CHECK(backward.id == link_id(20));
    CHECK(backward.source == container_id(2));
    CHECK(backward.destination == container_id(1));
}

TEST_CASE("unresolved fact owner is reported at the declaring line") {
    auto result = parse_model(
        "CONTAINER C001 \"a\"\n"
        "FACT F001 OWNER C009 VALUE true \"orphan\"\n");
    CHECK(!result.ok());
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].line == 2);
    CHECK(has_diagnostic(result.diagnostics, "unresolved fact owner"));
}

TEST_CASE("syntax errors carry line and column") {
    auto result = parse_model("CONTAINER C001\n");
    CHECK(!result.ok());
    REQUIRE(!result.diagnostics.empty());
    CHECK(result.diagnostics[0].line == 1);

    auto bad_escape = parse_model("CONTAINER C001 \"a\\n\"\n");
    CHECK(!bad_escape.ok());
    CHECK(has_diagnostic(bad_escape.diagnostics, "invalid escape"));

    auto unterminated = parse_model("RULE R001 \"r\"\n  PRE START P001 true\n");
    CHECK(!unterminated.ok());
    CHECK(has_diagnostic(unterminated.diagnostics, "unterminated RULE block"));
}

TEST_CASE("duplicate ids are rejected with both lines named") {
    auto result = parse_model(
        "CONTAINER C001 \"a\"\n"
        "CONTAINER C001 \"b\"\n");
    CHECK(!result.ok());
    CHECK(result.diagnostics[0].line == 2);
    CHECK(has_diagnostic(result.diagnostics, "first declared on line 1"));
}

TEST_CASE("self-loop parses with a warning") {
    auto result = parse_model(
        "CONTAINER C001 \"a\"\n"
        "LINK L001 FROM C001 TO C001 \"loop\"\n");
    REQUIRE(result.ok());
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].severity == Severity::Warning);
    CHECK(result.diagnostics[0].line == 2);
}

TEST_CASE("arbitrary bytes never crash the parser") {
    std::mt19937 rng(19);
    for (int i = 0; i < 300; ++i) {
        std::string junk;
        int length = testgen::pick(rng, 0, 200);
        for (int j = 0; j < length; ++j) {
            junk += static_cast<char>(testgen::pick(rng, 1, 255));
        }
        auto result = parse_model(junk);
        if (!result.ok()) {
            CHECK(!result.diagnostics.empty());
        }
    }
}

TEST_CASE("canonical serialization of model 3 contains twelve LINK lines") {
    auto m = fixtures::builtin_model(fixtures::FixtureId::Model3);
    std::string text = serialize_model(m);
    std::size_t count = 0;
    std::size_t at = 0;
    while ((at = text.find("LINK ", at)) != std::string::npos) {
        if (at == 0 || text[at - 1] == '\n') ++count;
        at += 5;
    }
    CHECK(count == 12);
    CHECK(text.find("BILINK") == std::string::npos);
}

TEST_CASE("a property-less fact serializes without a PROP clause") {
    NetworkModel m;
    m.add_container({container_id(1), "c", {}});
    m.add_fact({fact_id(1), container_id(1), std::nullopt, true, "bare"});
    std::string text = serialize_model(m);
    CHECK(text.find("FACT F001 OWNER C001 VALUE true \"bare\"") != std::string::npos);
    auto reparsed = parse_model(text);
    REQUIRE(reparsed.ok());
    CHECK(*reparsed.model == m);
}

TEST_CASE("descriptions with quotes and backslashes survive the round trip") {
    NetworkModel m;
    m.add_container({container_id(1), "say \"hi\" \\ there", {}});
    auto reparsed = parse_model(serialize_model(m));
    REQUIRE(reparsed.ok());
    CHECK(reparsed.model->containers()[0].description == "say \"hi\" \\ there");
}

TEST_CASE("serialize then parse is the identity over generated models") {
    std::mt19937 rng(23);
    for (int i = 0; i < 1200; ++i) {
        NetworkModel m = testgen::random_model(rng, 5, 10, true);
        auto reparsed = parse_model(serialize_model(m));
        REQUIRE(reparsed.ok());
        REQUIRE(*reparsed.model == m);
    }
}

TEST_CASE("documents keep their meaning through a serialize cycle") {
    // Shuffled directive order, comments and BILINK sugar: the canonical
    // form of the parse must reparse to the identical model.
    std::mt19937 rng(29);
    for (int i = 0; i < 300; ++i) {
        int containers = testgen::pick(rng, 2, 5);
        std::vector<std::string> directives;
        directives.push_back("# generated case\n");
        for (int c = 1; c <= containers; ++c) {
            directives.push_back("CONTAINER C00" + std::to_string(c) + " \"c\"\n");
        }
        int links = testgen::pick(rng, 0, 3);
        for (int l = 0; l < links; ++l) {
            int a = testgen::pick(rng, 1, containers);
            int b = testgen::pick(rng, 1, containers);
            directives.push_back("BILINK L0" + std::to_string(10 + 2 * l) + " L0" +
                                 std::to_string(11 + 2 * l) + " BETWEEN C00" + std::to_string(a) +
                                 " C00" + std::to_string(b) + " \"pair\"\n");
        }
        std::shuffle(directives.begin(), directives.end(), rng);
        std::string text;
        for (const auto& d : directives) text += d;

        auto first = parse_model(text);
        REQUIRE(first.ok());
        auto second = parse_model(serialize_model(*first.model));
        REQUIRE(second.ok());
        REQUIRE(*second.model == *first.model);
    }
}

TEST_CASE("parsing a single filter") {
    auto result = parse_filters(
        "FILTER C002\n"
        "  REQUIRE P002 true\n"
        "END\n");
    REQUIRE(result.ok());
    REQUIRE(result.filters->size() == 1);
    CHECK((*result.filters)[0].container == container_id(2));
    REQUIRE((*result.filters)[0].constraints.size() == 1);
    CHECK((*result.filters)[0].constraints[0].property == property_id(2));
    CHECK((*result.filters)[0].constraints[0].required == true);
}

TEST_CASE("two filters on one container are rejected") {
    auto result = parse_filters(
        "FILTER C001\nEND\n"
        "FILTER C001\n  REQUIRE P001 true\nEND\n");
    CHECK(!result.ok());
    CHECK(has_diagnostic(result.diagnostics, "referenced by multiple filters"));
}

TEST_CASE("four client filters each with two constraints") {
    std::string text;
    for (int c = 1; c <= 4; ++c) {
        text += "FILTER C00" + std::to_string(c) + "\n";
        text += "  REQUIRE P001 true\n";   // Compromised
        text += "  REQUIRE P002 true\n";   // Administrator
        text += "END\n";
    }
    auto result = parse_filters(text);
    REQUIRE(result.ok());
    REQUIRE(result.filters->size() == 4);
    for (const auto& filter : *result.filters) {
        CHECK(filter.constraints.size() == 2);
        CHECK(filter.constraints[0].required);
        CHECK(filter.constraints[1].required);
    }
}

TEST_CASE("duplicate property within one filter is rejected") {
    auto result = parse_filters("FILTER C001\n  REQUIRE P001 true\n  REQUIRE P001 false\nEND\n");
    CHECK(!result.ok());
    CHECK(has_diagnostic(result.diagnostics, "duplicate property"));
}
