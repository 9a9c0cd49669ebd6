#include "wbspi/uvm/factory.hpp"

#include <set>

#include "wbspi/errors.hpp"

namespace wbspi::uvm {

bool path_matches(std::string_view full, std::string_view path) {
    if (path.empty()) return false;
    if (full == path) return true;
    if (full.size() <= path.size()) return false;
    return full.ends_with(path) && full[full.size() - path.size() - 1] == '.';
}

Factory::Factory() = default;

void Factory::register_component(std::string_view type, ComponentCreator creator) {
    components_.insert_or_assign(std::string(type), std::move(creator));
}

void Factory::register_dut(std::string_view type, DutConstructor constructor) {
    duts_.insert_or_assign(std::string(type), std::move(constructor));
}

const DutConstructor& Factory::dut_constructor(std::string_view type) const {
    auto it = duts_.find(type);
    if (it == duts_.end()) throw UnknownOverrideTarget("no DUT type '" + std::string(type) + "' registered");
    return it->second;
}

bool Factory::is_registered(std::string_view type) const {
    return components_.contains(type) || duts_.contains(type);
}

void Factory::require_registered(std::string_view type, std::string_view role) const {
    if (!is_registered(type)) {
        throw UnknownOverrideTarget(std::string(role) + " type '" + std::string(type) + "' is not registered");
    }
}

void Factory::set_type_override(std::string_view original, std::string_view replacement) {
    require_registered(original, "override target");
    require_registered(replacement, "replacement");
    if (components_.contains(original) != components_.contains(replacement)) {
        throw UnknownOverrideTarget("cannot override '" + std::string(original) + "' with '" +
                                    std::string(replacement) + "': one is a DUT, the other a component");
    }
    type_overrides_.insert_or_assign(std::string(original), std::string(replacement));
    // a cycle would never terminate in follow_type_overrides
    std::set<std::string> seen;
    std::string t(original);
    while (true) {
        if (!seen.insert(t).second) {
            type_overrides_.erase(std::string(original));
            throw UnknownOverrideTarget("override of '" + std::string(original) + "' forms a cycle");
        }
        auto it = type_overrides_.find(t);
        if (it == type_overrides_.end()) break;
        t = it->second;
    }
}

void Factory::set_inst_override(std::string_view path, std::string_view replacement) {
    require_registered(replacement, "replacement");
    if (!components_.contains(replacement)) {
        throw UnknownOverrideTarget("instance override needs a component type, got '" + std::string(replacement) + "'");
    }
    inst_overrides_.push_back({std::string(path), std::string(replacement), false});
}

void Factory::set_override(std::string_view target, std::string_view replacement) {
    if (is_registered(target)) {
        set_type_override(target, replacement);
    } else {
        set_inst_override(target, replacement);
    }
}

std::string Factory::follow_type_overrides(std::string type) const {
    for (auto it = type_overrides_.find(type); it != type_overrides_.end(); it = type_overrides_.find(type)) {
        type = it->second;
    }
    return type;
}

std::string Factory::resolve(std::string_view type, const std::string& path) const {
    // latest matching instance override wins, then type overrides
    for (auto it = inst_overrides_.rbegin(); it != inst_overrides_.rend(); ++it) {
        if (path_matches(path, it->path)) return follow_type_overrides(it->replacement);
    }
    return follow_type_overrides(std::string(type));
}

std::unique_ptr<Component> Factory::create_component(std::string_view type, const std::string& name,
                                                     Component* parent) {
    const std::string path = parent ? parent->full_name() + "." + name : name;
    for (auto it = inst_overrides_.rbegin(); it != inst_overrides_.rend(); ++it) {
        if (path_matches(path, it->path)) {
            it->used = true;
            break;
        }
    }
    const std::string resolved = resolve(type, path);
    auto it = components_.find(resolved);
    if (it == components_.end()) {
        throw UnknownOverrideTarget("component type '" + resolved + "' is not registered");
    }
    auto c = it->second(name, parent);
    c->type_ = resolved;
    return c;
}

std::unique_ptr<Component> Factory::create_root(std::string_view type, const std::string& name,
                                                TestbenchContext* ctx) {
    auto c = create_component(type, name, nullptr);
    c->ctx_ = ctx;
    return c;
}

std::unique_ptr<DutModel> Factory::create_dut() const {
    return dut_constructor(follow_type_overrides(std::string(kDutType)))();
}

void Factory::check_instance_overrides() const {
    for (const auto& o : inst_overrides_) {
        if (!o.used) {
            throw UnknownOverrideTarget("override target '" + o.path + "' matches no component");
        }
    }
}

}  // namespace wbspi::uvm
