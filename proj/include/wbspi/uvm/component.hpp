#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wbspi/errors.hpp"

namespace wbspi::uvm {

class Component;
struct TestbenchContext;

/// A connection point checked during elaboration.
class PortBase {
public:
    PortBase(Component& owner, std::string name, bool required);
    virtual ~PortBase() = default;
    PortBase(const PortBase&) = delete;
    PortBase& operator=(const PortBase&) = delete;

    const std::string& name() const { return name_; }
    std::string full_name() const;
    bool required() const { return required_; }
    Component& owner() const { return owner_; }

    virtual std::vector<const Component*> peers() const = 0;

private:
    Component& owner_;
    std::string name_;
    bool required_;
};

/// One-to-many broadcast of transactions.
template <class T>
class AnalysisPort : public PortBase {
public:
    AnalysisPort(Component& owner, std::string name, bool required = true)
        : PortBase(owner, std::move(name), required) {}

    void connect(const Component& subscriber, std::function<void(const T&)> write) {
        subscribers_.push_back({&subscriber, std::move(write)});
    }

    void write(const T& t) const {
        for (const auto& s : subscribers_) s.write(t);
    }

    std::vector<const Component*> peers() const override {
        std::vector<const Component*> out;
        for (const auto& s : subscribers_) out.push_back(s.component);
        return out;
    }

private:
    struct Subscriber {
        const Component* component;
        std::function<void(const T&)> write;
    };
    std::vector<Subscriber> subscribers_;
};

/// Node of the testbench tree. Children are owned by their parent and
/// created through the factory so overrides apply.
class Component {
public:
    Component(std::string name, Component* parent);
    virtual ~Component() = default;
    Component(const Component&) = delete;
    Component& operator=(const Component&) = delete;

    const std::string& name() const { return name_; }
    std::string full_name() const;
    const std::string& type_name() const { return type_; }
    Component* parent() const { return parent_; }
    const std::vector<std::unique_ptr<Component>>& children() const { return children_; }
    const std::vector<PortBase*>& ports() const { return ports_; }

    TestbenchContext& context() const;

    virtual void build_phase() {}
    virtual void connect_phase() {}
    virtual void end_of_elaboration_phase() {}
    virtual void start_of_simulation_phase() {}
    virtual void run_phase() {}
    virtual void extract_phase() {}
    virtual void report_phase() {}

protected:
    /// Factory-creates a child. Throws Error if an override produced a
    /// type that is not a T.
    template <class T>
    T& create(std::string_view type, const std::string& name) {
        Component& c = create_child(type, name);
        if (auto* t = dynamic_cast<T*>(&c)) return *t;
        throw Error("factory produced '" + c.type_name() + "' for " + c.full_name() + ", which is not a " +
                    std::string(type));
    }

private:
    friend class PortBase;
    friend class Factory;

    Component& create_child(std::string_view type, const std::string& name);

    std::string name_;
    std::string type_;
    Component* parent_;
    TestbenchContext* ctx_ = nullptr;
    std::vector<std::unique_ptr<Component>> children_;
    std::vector<PortBase*> ports_;
};

}  // namespace wbspi::uvm
