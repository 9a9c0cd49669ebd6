#include "wbspi/uvm/component.hpp"

#include "wbspi/uvm/environment.hpp"

namespace wbspi::uvm {

PortBase::PortBase(Component& owner, std::string name, bool required)
    : owner_(owner), name_(std::move(name)), required_(required) {
    owner.ports_.push_back(this);
}

std::string PortBase::full_name() const { return owner_.full_name() + "." + name_; }

Component::Component(std::string name, Component* parent)
    : name_(std::move(name)), parent_(parent), ctx_(parent ? parent->ctx_ : nullptr) {}

std::string Component::full_name() const { return parent_ ? parent_->full_name() + "." + name_ : name_; }

TestbenchContext& Component::context() const {
    if (!ctx_) throw Error(full_name() + " is not attached to a testbench");
    return *ctx_;
}

Component& Component::create_child(std::string_view type, const std::string& name) {
    auto child = context().factory.create_component(type, name, this);
    children_.push_back(std::move(child));
    return *children_.back();
}

}  // namespace wbspi::uvm
