#include "wbspi/uvm/environment.hpp"

#include <algorithm>
#include <unordered_set>

#include "wbspi/errors.hpp"
#include "wbspi/uvm/spi_components.hpp"

namespace wbspi::uvm {

std::optional<std::size_t> RunReport::first_detection() const {
    std::optional<std::size_t> first;
    auto take = [&](std::size_t i) { first = first ? std::min(*first, i) : i; };
    for (const auto& m : mismatches) take(m.item);
    for (const auto& v : violations) take(v.frame);
    return first;
}

namespace {

void collect(Component* c, std::vector<Component*>& out) {
    out.push_back(c);
    for (const auto& child : c->children()) collect(child.get(), out);
}

void collect_post(Component* c, std::vector<Component*>& out) {
    for (const auto& child : c->children()) collect_post(child.get(), out);
    out.push_back(c);
}

std::uint64_t now(const ComponentTree& tree) { return tree.ctx->bench ? tree.ctx->bench->cycle() : 0; }

void build_recursive(ComponentTree& tree, Component* c) {
    tree.trace.push_back({Phase::Build, c->full_name(), now(tree)});
    c->build_phase();
    for (const auto& child : c->children()) build_recursive(tree, child.get());
}

}  // namespace

std::vector<Component*> ComponentTree::nodes() const {
    std::vector<Component*> out;
    if (root) collect(root.get(), out);
    return out;
}

Component* ComponentTree::find(const std::string& path) const {
    for (Component* c : nodes()) {
        if (c->full_name() == path) return c;
    }
    return nullptr;
}

ComponentTree build_env(EnvConfig config) {
    config.constraints.validate();
    for (const auto& item : config.directed_items) {
        if (item.char_len < 1 || item.char_len > 32) throw ConfigError("directed item char_len outside 1..32");
        if (item.slave_index > 7) throw ConfigError("directed item slave_index outside 0..7");
    }

    ComponentTree tree;
    tree.ctx = std::make_unique<TestbenchContext>();
    tree.ctx->factory = config.factory;
    tree.ctx->config = std::move(config);

    tree.root = tree.ctx->factory.create_root("spi_test", "test", tree.ctx.get());

    build_recursive(tree, tree.root.get());
    tree.ctx->factory.check_instance_overrides();
    return tree;
}

RunOutcome run_phases(ComponentTree& tree, StopCondition stop) {
    if (!tree.root) throw ElaborationError("tree was never built");
    if (tree.ran) throw Error("phases already ran on this tree");
    tree.ran = true;

    auto& ctx = *tree.ctx;
    if (!stop.items && !stop.cycle_budget && ctx.config.directed_items.empty()) {
        throw ConfigError("random stimulus needs an item count or a cycle budget to stop");
    }
    ctx.stop = stop;

    std::vector<Component*> post;
    collect_post(tree.root.get(), post);

    auto phase = [&](Phase p, void (Component::*fn)()) {
        for (Component* c : post) {
            tree.trace.push_back({p, c->full_name(), now(tree)});
            (c->*fn)();
        }
    };

    phase(Phase::Connect, &Component::connect_phase);

    std::unordered_set<const Component*> members(post.begin(), post.end());
    for (Component* c : post) {
        tree.trace.push_back({Phase::Elaboration, c->full_name(), now(tree)});
        c->end_of_elaboration_phase();
        for (const PortBase* port : c->ports()) {
            const auto peers = port->peers();
            if (port->required() && peers.empty()) {
                throw ElaborationError("dangling port " + port->full_name());
            }
            for (const Component* peer : peers) {
                if (!members.contains(peer)) {
                    throw ElaborationError("port " + port->full_name() + " connects outside the tree");
                }
            }
        }
    }

    phase(Phase::Simulation, &Component::start_of_simulation_phase);

    // every run task starts at time 0, then the kernel advances
    for (Component* c : post) tree.trace.push_back({Phase::Run, c->full_name(), now(tree)});
    for (Component* c : post) c->run_phase();

    phase(Phase::Extract, &Component::extract_phase);
    phase(Phase::Report, &Component::report_phase);

    return {tree.trace, ctx.report};
}

}  // namespace wbspi::uvm
