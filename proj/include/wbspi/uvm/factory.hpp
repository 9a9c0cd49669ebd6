#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wbspi/bench.hpp"
#include "wbspi/uvm/component.hpp"

namespace wbspi::uvm {

inline constexpr std::string_view kDutType = "spi_master_core";

/// Type registry with type- and instance-level overrides. Components and
/// DUT models live in separate registries; overrides apply to both.
class Factory {
public:
    using ComponentCreator = std::function<std::unique_ptr<Component>(const std::string& name, Component* parent)>;

    Factory();

    /// Registry with the stock SPI testbench components and the real
    /// core under kDutType.
    static Factory with_defaults();

    void register_component(std::string_view type, ComponentCreator creator);

    template <class T>
    void register_component(std::string_view type) {
        register_component(type, [](const std::string& name, Component* parent) {
            return std::make_unique<T>(name, parent);
        });
    }

    void register_dut(std::string_view type, DutConstructor constructor);

    /// The constructor registered under `type`, overrides not applied.
    /// Throws UnknownOverrideTarget if unregistered.
    const DutConstructor& dut_constructor(std::string_view type) const;

    bool is_registered(std::string_view type) const;

    /// Every creation of `original` yields `replacement` instead. Both must
    /// be registered, else UnknownOverrideTarget.
    void set_type_override(std::string_view original, std::string_view replacement);

    /// The component at `path` (full path, or a trailing part of one on a
    /// '.' boundary) is created as `replacement`. A path that matches no
    /// component is reported by check_instance_overrides().
    void set_inst_override(std::string_view path, std::string_view replacement);

    /// Type override if `target` names a registered type, instance
    /// override otherwise.
    void set_override(std::string_view target, std::string_view replacement);

    /// Resolves overrides and builds the component.
    std::unique_ptr<Component> create_component(std::string_view type, const std::string& name, Component* parent);

    /// kDutType after type overrides.
    std::string dut_type() const { return follow_type_overrides(std::string(kDutType)); }

    /// Creates a parentless component bound to `ctx`.
    std::unique_ptr<Component> create_root(std::string_view type, const std::string& name, TestbenchContext* ctx);

    /// Builds the DUT, honouring a type override of kDutType.
    std::unique_ptr<DutModel> create_dut() const;

    /// Type that a creation of `type` at `path` resolves to.
    std::string resolve(std::string_view type, const std::string& path) const;

    /// Throws UnknownOverrideTarget for instance overrides that never
    /// matched a created component.
    void check_instance_overrides() const;

private:
    struct InstOverride {
        std::string path;
        std::string replacement;
        bool used = false;
    };

    std::string follow_type_overrides(std::string type) const;
    void require_registered(std::string_view type, std::string_view role) const;

    std::map<std::string, ComponentCreator, std::less<>> components_;
    std::map<std::string, DutConstructor, std::less<>> duts_;
    std::map<std::string, std::string, std::less<>> type_overrides_;
    std::vector<InstOverride> inst_overrides_;
};

/// True if `path` names `full` exactly or is a '.'-aligned suffix of it.
bool path_matches(std::string_view full, std::string_view path);

}  // namespace wbspi::uvm
