#include "attackpath/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "attackpath/model_format.hpp"
#include "doctest.h"

using namespace attackpath;
using fixtures::FixtureId;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open ", path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string model_path(const char* name) {
    return std::string(ATTACKPATH_MODELS_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("model 1 has three containers, six links and two rules") {
    auto m = fixtures::builtin_model(FixtureId::Model1);
    CHECK(m.containers().size() == 3);
    CHECK(m.links().size() == 6);
    CHECK(m.rules().size() == 2);
    CHECK(m.facts().size() == 3);
    CHECK(m.properties().size() == 3);
}

TEST_CASE("model 2 has four containers, eight links and four rules") {
    auto m = fixtures::builtin_model(FixtureId::Model2);
    CHECK(m.containers().size() == 4);
    CHECK(m.links().size() == 8);
    CHECK(m.rules().size() == 4);
    CHECK(m.facts().size() == 5);
}

TEST_CASE("model 3 has four containers, twelve links and six rules") {
    auto m = fixtures::builtin_model(FixtureId::Model3);
    CHECK(m.containers().size() == 4);
    CHECK(m.links().size() == 12);
    CHECK(m.rules().size() == 6);
    CHECK(m.facts().size() == 9);
}

TEST_CASE("every container in model 3 reaches every other directly") {
    auto m = fixtures::builtin_model(FixtureId::Model3);
    for (const auto& a : m.containers()) {
        for (const auto& b : m.containers()) {
            if (a.id == b.id) continue;
            bool connected = false;
            for (const auto& link : m.links()) {
                if (link.source == a.id && link.destination == b.id) connected = true;
            }
            CHECK_MESSAGE(connected, render(a.id), " -> ", render(b.id));
        }
    }
}

TEST_CASE("link endpoints match the reference wiring") {
    auto m1 = fixtures::builtin_model(FixtureId::Model1);
    CHECK(m1.find_link(link_id(1))->source == container_id(2));
    CHECK(m1.find_link(link_id(1))->destination == container_id(1));
    CHECK(m1.find_link(link_id(2))->source == container_id(1));
    CHECK(m1.find_link(link_id(3))->destination == container_id(3));
    CHECK(m1.find_link(link_id(5))->source == container_id(2));
    CHECK(m1.find_link(link_id(5))->destination == container_id(3));

    auto m2 = fixtures::builtin_model(FixtureId::Model2);
    CHECK(m2.find_link(link_id(1))->source == container_id(1));
    CHECK(m2.find_link(link_id(1))->destination == container_id(2));
    CHECK(m2.find_link(link_id(6))->source == container_id(2));
    CHECK(m2.find_link(link_id(6))->destination == container_id(4));
    CHECK(m2.find_link(link_id(8))->source == container_id(3));
    CHECK(m2.find_link(link_id(8))->destination == container_id(4));
}

TEST_CASE("built-in models equal their shipped model files") {
    const std::pair<FixtureId, const char*> files[] = {
        {FixtureId::Model1, "model1.apm"},
        {FixtureId::Model2, "model2.apm"},
        {FixtureId::Model3, "model3.apm"},
        {FixtureId::OfficeExample, "office.apm"},
    };
    for (const auto& [id, name] : files) {
        auto parsed = parse_model(read_file(model_path(name)));
        REQUIRE_MESSAGE(parsed.ok(), name);
        CHECK_MESSAGE(*parsed.model == fixtures::builtin_model(id), name);
    }
}

TEST_CASE("the canonical form of a shipped file reparses to the same model") {
    auto first = parse_model(read_file(model_path("model2.apm")));
    REQUIRE(first.ok());
    std::string canonical = serialize_model(*first.model);
    auto second = parse_model(canonical);
    REQUIRE(second.ok());
    CHECK(*second.model == *first.model);
    CHECK(serialize_model(*second.model) == canonical);
}

TEST_CASE("fixture start and end pairs") {
    CHECK(fixtures::fixture_start(FixtureId::Model1) == container_id(1));
    CHECK(fixtures::fixture_end(FixtureId::Model1) == container_id(3));
    CHECK(fixtures::fixture_end(FixtureId::Model2) == container_id(4));
    CHECK(fixtures::fixture_end(FixtureId::Model3) == container_id(4));
}
