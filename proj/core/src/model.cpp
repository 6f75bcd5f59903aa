#include "attackpath/model.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace attackpath {

bool ValidationReport::ok() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const {
    return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(), [](const auto& i) {
        return i.severity == Severity::Error;
    }));
}

std::size_t ValidationReport::warning_count() const {
    return issues.size() - error_count();
}

void NetworkModel::add_property(CommonProperty property) {
    index_.emplace(property.id, properties_.size());
    properties_.push_back(std::move(property));
}

void NetworkModel::add_container(Container container) {
    index_.emplace(container.id, containers_.size());
    containers_.push_back(std::move(container));
}

void NetworkModel::add_fact(Fact fact) {
    index_.emplace(fact.id, facts_.size());
    if (const Container* owner = find_container(fact.owner)) {
        auto idx = static_cast<std::size_t>(owner - containers_.data());
        containers_[idx].facts.push_back(fact.id);
    }
    if (fact.property) {
        fact_by_owner_property_.emplace(std::make_pair(fact.owner, *fact.property),
                                        facts_.size());
    }
    facts_.push_back(std::move(fact));
}

void NetworkModel::add_link(Link link) {
    index_.emplace(link.id, links_.size());
    links_.push_back(std::move(link));
}

void NetworkModel::add_rule(GenericRule rule) {
    index_.emplace(rule.id, rules_.size());
    rules_.push_back(std::move(rule));
}

namespace {

template <typename T>
const T* lookup(const std::vector<T>& items, const std::unordered_map<EntityId, std::size_t>& index,
                EntityId id, EntityKind kind) {
    if (id.kind != kind) return nullptr;
    auto it = index.find(id);
    if (it == index.end()) return nullptr;
    return &items[it->second];
}

}  // namespace

const CommonProperty* NetworkModel::find_property(EntityId id) const {
    return lookup(properties_, index_, id, EntityKind::Property);
}

const Container* NetworkModel::find_container(EntityId id) const {
    return lookup(containers_, index_, id, EntityKind::Container);
}

const Fact* NetworkModel::find_fact(EntityId id) const {
    return lookup(facts_, index_, id, EntityKind::Fact);
}

const Link* NetworkModel::find_link(EntityId id) const {
    return lookup(links_, index_, id, EntityKind::Link);
}

const GenericRule* NetworkModel::find_rule(EntityId id) const {
    return lookup(rules_, index_, id, EntityKind::Rule);
}

const Fact* NetworkModel::fact_for(EntityId container, EntityId property) const {
    auto it = fact_by_owner_property_.find(std::make_pair(container, property));
    if (it == fact_by_owner_property_.end()) return nullptr;
    return &facts_[it->second];
}

bool NetworkModel::empty() const {
    return properties_.empty() && containers_.empty() && facts_.empty() && links_.empty() &&
           rules_.empty();
}

namespace {

// Declaration order of whole entities is not observable (only the fact order
// inside each container is), so equality compares id-sorted views.
template <typename T>
bool same_entities(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) return false;
    auto sorted = [](const std::vector<T>& items) {
        std::vector<const T*> view;
        view.reserve(items.size());
        for (const auto& item : items) view.push_back(&item);
        std::stable_sort(view.begin(), view.end(), [](const T* x, const T* y) {
            return x->id.number < y->id.number;
        });
        return view;
    };
    auto va = sorted(a);
    auto vb = sorted(b);
    for (std::size_t i = 0; i < va.size(); ++i) {
        if (!(*va[i] == *vb[i])) return false;
    }
    return true;
}

}  // namespace

bool NetworkModel::operator==(const NetworkModel& other) const {
    return same_entities(properties_, other.properties_) &&
           same_entities(containers_, other.containers_) && same_entities(facts_, other.facts_) &&
           same_entities(links_, other.links_) && same_entities(rules_, other.rules_);
}

namespace {

struct Checker {
    const NetworkModel& model;
    ValidationReport report;

    void error(std::string message, std::optional<EntityId> subject) {
        report.issues.push_back({Severity::Error, std::move(message), subject});
    }

    void warning(std::string message, std::optional<EntityId> subject) {
        report.issues.push_back({Severity::Warning, std::move(message), subject});
    }

    void check_id(EntityId id, EntityKind expected) {
        if (id.kind != expected) {
            error("id " + render(id) + " is not a " + std::string(kind_name(expected)) + " id",
                  id);
        }
        if (id.number < 1 || id.number > kMaxEntityNumber) {
            error("id number out of range for " + render(id), id);
        }
    }

    void check_description(const std::string& text, EntityId subject) {
        if (text.find('\n') != std::string::npos || text.find('\r') != std::string::npos) {
            error("description of " + render(subject) + " contains a line break", subject);
        }
    }

    template <typename T>
    void check_unique_ids(const std::vector<T>& items) {
        std::set<EntityId> seen;
        for (const auto& item : items) {
            if (!seen.insert(item.id).second) {
                error("duplicate id " + render(item.id), item.id);
            }
        }
    }

    void check_condition_list(const GenericRule& rule, const std::vector<Condition>& conditions,
                              const char* list_name) {
        std::set<EntityId> seen;
        for (const auto& condition : conditions) {
            check_id(condition.property, EntityKind::Property);
            if (!model.find_property(condition.property)) {
                error("unresolved rule property " + render(condition.property) + " in " +
                          render(rule.id),
                      rule.id);
            }
            if (!seen.insert(condition.property).second) {
                error("duplicate property " + render(condition.property) + " in " + list_name +
                          " list of " + render(rule.id),
                      rule.id);
            }
        }
    }

    void run() {
        check_unique_ids(model.properties());
        check_unique_ids(model.containers());
        check_unique_ids(model.facts());
        check_unique_ids(model.links());
        check_unique_ids(model.rules());

        for (const auto& property : model.properties()) {
            check_id(property.id, EntityKind::Property);
            check_description(property.description, property.id);
        }

        for (const auto& container : model.containers()) {
            check_id(container.id, EntityKind::Container);
            check_description(container.description, container.id);
            for (EntityId fid : container.facts) {
                const Fact* fact = model.find_fact(fid);
                if (!fact) {
                    error("container " + render(container.id) + " lists undefined fact " +
                              render(fid),
                          container.id);
                } else if (fact->owner != container.id) {
                    error("container " + render(container.id) + " lists fact " + render(fid) +
                              " owned by " + render(fact->owner),
                          container.id);
                }
            }
        }

        for (const auto& fact : model.facts()) {
            check_id(fact.id, EntityKind::Fact);
            check_description(fact.description, fact.id);
            check_id(fact.owner, EntityKind::Container);
            const Container* owner = model.find_container(fact.owner);
            if (!owner) {
                error("unresolved fact owner " + render(fact.owner) + " in " + render(fact.id),
                      fact.id);
            } else if (std::count(owner->facts.begin(), owner->facts.end(), fact.id) != 1) {
                error("fact " + render(fact.id) + " not listed exactly once by its owner " +
                          render(fact.owner),
                      fact.id);
            }
            if (fact.property) {
                check_id(*fact.property, EntityKind::Property);
                if (!model.find_property(*fact.property)) {
                    error("unresolved fact property " + render(*fact.property) + " in " +
                              render(fact.id),
                          fact.id);
                }
            }
        }

        // One fact per (container, property): duplicates would make rule
        // pre-condition evaluation ambiguous.
        std::set<std::pair<EntityId, EntityId>> bindings;
        for (const auto& fact : model.facts()) {
            if (!fact.property) continue;
            if (!bindings.insert({fact.owner, *fact.property}).second) {
                error("duplicate property in container: " + render(fact.owner) +
                          " holds more than one fact bound to " + render(*fact.property),
                      fact.owner);
            }
        }

        for (const auto& link : model.links()) {
            check_id(link.id, EntityKind::Link);
            check_description(link.description, link.id);
            check_id(link.source, EntityKind::Container);
            check_id(link.destination, EntityKind::Container);
            if (!model.find_container(link.source)) {
                error("unresolved link endpoint " + render(link.source) + " in " + render(link.id),
                      link.id);
            }
            if (!model.find_container(link.destination)) {
                error("unresolved link endpoint " + render(link.destination) + " in " +
                          render(link.id),
                      link.id);
            }
            if (link.source == link.destination) {
                warning("self-loop link " + render(link.id) + " on " + render(link.source),
                        link.id);
            }
        }

        for (const auto& rule : model.rules()) {
            check_id(rule.id, EntityKind::Rule);
            check_description(rule.description, rule.id);
            check_condition_list(rule, rule.start_pre, "start pre");
            check_condition_list(rule, rule.end_pre, "end pre");
            check_condition_list(rule, rule.start_post, "start post");
            check_condition_list(rule, rule.end_post, "end post");
        }
    }
};

}  // namespace

ValidationReport validate_model(const NetworkModel& model) {
    Checker checker{model, {}};
    checker.run();
    return std::move(checker.report);
}

}  // namespace attackpath
