#include "attackpath/fixtures.hpp"

namespace attackpath::fixtures {

namespace {

Condition cond(std::uint32_t property, bool value) { return {property_id(property), value}; }

void add_bilink(NetworkModel& model, std::uint32_t forward, std::uint32_t backward,
                std::uint32_t first, std::uint32_t second, std::string description) {
    model.add_link({link_id(forward), description, container_id(first), container_id(second)});
    model.add_link({link_id(backward), std::move(description), container_id(second),
                    container_id(first)});
}

// Three containers in a triangle, every pair linked both ways. Two rules
// chain P1 -> P2 -> P3 along traversed links.
NetworkModel model1() {
    NetworkModel m;
    m.add_property({property_id(1), "P1"});
    m.add_property({property_id(2), "P2"});
    m.add_property({property_id(3), "P3"});
    m.add_container({container_id(1), "Container 1", {}});
    m.add_container({container_id(2), "Container 2", {}});
    m.add_container({container_id(3), "Container 3", {}});
    m.add_fact({fact_id(1), container_id(1), property_id(1), true, "P1 on container 1"});
    m.add_fact({fact_id(2), container_id(2), property_id(2), false, "P2 on container 2"});
    m.add_fact({fact_id(3), container_id(3), property_id(3), false, "P3 on container 3"});
    add_bilink(m, 1, 2, 2, 1, "C002 <-> C001");
    add_bilink(m, 3, 4, 1, 3, "C001 <-> C003");
    add_bilink(m, 5, 6, 2, 3, "C002 <-> C003");
    m.add_rule({rule_id(1), "P1 enables P2 across a link",
                {cond(1, true)}, {cond(2, false)}, {}, {cond(2, true)}});
    m.add_rule({rule_id(2), "P2 enables P3 across a link",
                {cond(2, true)}, {cond(3, false)}, {}, {cond(3, true)}});
    return m;
}

// Four containers, each with two exits; rules chain P1 through P5.
NetworkModel model2() {
    NetworkModel m;
    for (std::uint32_t p = 1; p <= 5; ++p) {
        m.add_property({property_id(p), "P" + std::to_string(p)});
    }
    for (std::uint32_t c = 1; c <= 4; ++c) {
        m.add_container({container_id(c), "Container " + std::to_string(c), {}});
    }
    m.add_fact({fact_id(1), container_id(1), property_id(1), true, "P1 on container 1"});
    m.add_fact({fact_id(2), container_id(2), property_id(2), false, "P2 on container 2"});
    m.add_fact({fact_id(3), container_id(1), property_id(3), false, "P3 on container 1"});
    m.add_fact({fact_id(4), container_id(3), property_id(4), false, "P4 on container 3"});
    m.add_fact({fact_id(5), container_id(4), property_id(5), false, "P5 on container 4"});
    add_bilink(m, 1, 2, 1, 2, "C001 <-> C002");
    add_bilink(m, 3, 4, 1, 3, "C001 <-> C003");
    add_bilink(m, 5, 6, 4, 2, "C004 <-> C002");
    add_bilink(m, 7, 8, 4, 3, "C004 <-> C003");
    for (std::uint32_t r = 1; r <= 4; ++r) {
        m.add_rule({rule_id(r), "P" + std::to_string(r) + " enables P" + std::to_string(r + 1),
                    {cond(r, true)}, {cond(r + 1, false)}, {}, {cond(r + 1, true)}});
    }
    return m;
}

// Model 2 plus the two missing bidirectional pairs, making the mesh
// complete, with the six-rule set that needs looping to fire fully.
NetworkModel model3() {
    NetworkModel m;
    for (std::uint32_t p = 1; p <= 9; ++p) {
        m.add_property({property_id(p), "P" + std::to_string(p)});
    }
    for (std::uint32_t c = 1; c <= 4; ++c) {
        m.add_container({container_id(c), "Container " + std::to_string(c), {}});
    }
    m.add_fact({fact_id(1), container_id(1), property_id(1), true, "P1 on container 1"});
    m.add_fact({fact_id(2), container_id(1), property_id(2), true, "P2 on container 1"});
    m.add_fact({fact_id(3), container_id(1), property_id(3), false, "P3 on container 1"});
    m.add_fact({fact_id(4), container_id(1), property_id(4), false, "P4 on container 1"});
    m.add_fact({fact_id(5), container_id(2), property_id(5), false, "P5 on container 2"});
    m.add_fact({fact_id(6), container_id(2), property_id(6), true, "P6 on container 2"});
    m.add_fact({fact_id(7), container_id(3), property_id(7), false, "P7 on container 3"});
    m.add_fact({fact_id(8), container_id(3), property_id(8), false, "P8 on container 3"});
    m.add_fact({fact_id(9), container_id(4), property_id(9), false, "P9 on container 4"});
    add_bilink(m, 1, 2, 1, 2, "C001 <-> C002");
    add_bilink(m, 3, 4, 1, 3, "C001 <-> C003");
    add_bilink(m, 5, 6, 4, 2, "C004 <-> C002");
    add_bilink(m, 7, 8, 4, 3, "C004 <-> C003");
    add_bilink(m, 9, 10, 1, 4, "C001 <-> C004");
    add_bilink(m, 11, 12, 2, 3, "C002 <-> C003");
    m.add_rule({rule_id(1), "P1 and P2 enable P5",
                {cond(1, true), cond(2, true)}, {cond(5, false)}, {}, {cond(5, true)}});
    m.add_rule({rule_id(2), "P5 and P6 enable P3",
                {cond(5, true), cond(6, true)}, {cond(3, false)}, {}, {cond(3, true)}});
    m.add_rule({rule_id(3), "P3 enables P7",
                {cond(3, true)}, {cond(7, false)}, {}, {cond(7, true)}});
    m.add_rule({rule_id(4), "P7 marks P8 on departure when P5 and P6 hold ahead",
                {cond(7, true), cond(8, false)}, {cond(5, true), cond(6, true)},
                {cond(8, true)}, {}});
    m.add_rule({rule_id(5), "P7 and P8 enable P4",
                {cond(7, true), cond(8, true)}, {cond(4, false)}, {}, {cond(4, true)}});
    m.add_rule({rule_id(6), "P4 enables P9",
                {cond(4, true)}, {cond(9, false)}, {}, {cond(9, true)}});
    return m;
}

// Small office network: terminal -> switch -> router -> firewall -> wireless
// hub -> workstation, linked both ways, with rules that walk a compromise
// from the entry terminal to admin on the workstation.
NetworkModel office() {
    NetworkModel m;
    m.add_property({property_id(1), "EntryPoint"});
    m.add_property({property_id(2), "Compromised"});
    m.add_property({property_id(3), "CompTraversed"});
    m.add_property({property_id(4), "FirewallEnabled"});
    m.add_property({property_id(5), "Win10"});
    m.add_property({property_id(6), "MaliciousFile"});
    m.add_property({property_id(7), "IsAdmin"});
    m.add_property({property_id(8), "LocalNetwork"});
    m.add_container({container_id(1), "Terminal 4", {}});
    m.add_container({container_id(2), "Switch 2", {}});
    m.add_container({container_id(3), "Router", {}});
    m.add_container({container_id(4), "Firewall 2", {}});
    m.add_container({container_id(5), "Wireless Hub", {}});
    m.add_container({container_id(6), "Workstation 1", {}});
    m.add_fact({fact_id(1), container_id(1), property_id(1), true, "attacker entry point"});
    m.add_fact({fact_id(2), container_id(1), property_id(2), false, "terminal compromised"});
    m.add_fact({fact_id(3), container_id(1), property_id(5), true, "terminal runs Windows 10"});
    m.add_fact({fact_id(4), container_id(1), property_id(4), false, "terminal firewall"});
    m.add_fact({fact_id(5), container_id(2), property_id(8), true, "switch on local network"});
    m.add_fact({fact_id(6), container_id(2), property_id(3), false, "switch traversed"});
    m.add_fact({fact_id(7), container_id(3), property_id(8), true, "router on local network"});
    m.add_fact({fact_id(8), container_id(3), property_id(3), false, "router traversed"});
    m.add_fact({fact_id(9), container_id(4), property_id(4), true, "firewall enabled"});
    m.add_fact({fact_id(10), container_id(4), property_id(3), false, "firewall traversed"});
    m.add_fact({fact_id(11), container_id(5), property_id(8), true, "hub on local network"});
    m.add_fact({fact_id(12), container_id(5), property_id(3), false, "hub traversed"});
    m.add_fact({fact_id(13), container_id(6), property_id(5), true, "workstation runs Windows 10"});
    m.add_fact({fact_id(14), container_id(6), property_id(6), true, "malicious file present"});
    m.add_fact({fact_id(15), container_id(6), property_id(2), false, "workstation compromised"});
    m.add_fact({fact_id(16), container_id(6), property_id(7), false, "workstation admin"});
    add_bilink(m, 1, 2, 1, 2, "terminal <-> switch");
    add_bilink(m, 3, 4, 2, 3, "switch <-> router");
    add_bilink(m, 5, 6, 3, 4, "router <-> firewall");
    add_bilink(m, 7, 8, 4, 5, "firewall <-> hub");
    add_bilink(m, 9, 10, 5, 6, "hub <-> workstation");
    m.add_rule({rule_id(1), "entry-point compromise onto the local network",
                {cond(1, true), cond(5, true), cond(4, false), cond(2, false)},
                {cond(8, true)},
                {cond(2, true)},
                {cond(3, true)}});
    m.add_rule({rule_id(2), "lateral movement on the local network",
                {cond(3, true)}, {cond(8, true), cond(3, false)}, {}, {cond(3, true)}});
    m.add_rule({rule_id(3), "firewall passthrough",
                {cond(3, true)}, {cond(4, true), cond(3, false)}, {}, {cond(3, true)}});
    m.add_rule({rule_id(4), "workstation compromise via malicious file",
                {cond(3, true)}, {cond(5, true), cond(6, true), cond(2, false)}, {},
                {cond(2, true)}});
    m.add_rule({rule_id(5), "privilege escalation on the compromised workstation",
                {}, {cond(2, true), cond(6, true), cond(7, false)}, {}, {cond(7, true)}});
    return m;
}

}  // namespace

NetworkModel builtin_model(FixtureId id) {
    switch (id) {
        case FixtureId::Model1: return model1();
        case FixtureId::Model2: return model2();
        case FixtureId::Model3: return model3();
        case FixtureId::OfficeExample: return office();
    }
    return {};
}

EntityId fixture_start(FixtureId) { return container_id(1); }

EntityId fixture_end(FixtureId id) {
    switch (id) {
        case FixtureId::Model1: return container_id(3);
        case FixtureId::Model2:
        case FixtureId::Model3: return container_id(4);
        case FixtureId::OfficeExample: return container_id(6);
    }
    return container_id(1);
}

}  // namespace attackpath::fixtures
