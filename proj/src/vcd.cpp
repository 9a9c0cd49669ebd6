#include "wbspi/vcd.hpp"

#include <sstream>
#include <stdexcept>

#include "wbspi/errors.hpp"

namespace wbspi::vcd {

namespace {

constexpr char kFirstId = '!';
constexpr unsigned kIdRadix = '~' - '!' + 1;  // 94 printable characters

std::vector<std::string> split_scope(const std::string& name) {
    std::vector<std::string> parts;
    std::string part;
    for (char c : name) {
        if (c == '.') {
            parts.push_back(std::move(part));
            part.clear();
        } else {
            part += c;
        }
    }
    parts.push_back(std::move(part));
    return parts;
}

void emit_value(std::ostream& out, const SignalDecl& d, const std::string& value) {
    if (d.width == 1) {
        out << value << d.id_code << '\n';
    } else {
        out << 'b' << value << ' ' << d.id_code << '\n';
    }
}

}  // namespace

std::string id_code_for(std::size_t index) {
    std::string id;
    do {
        id += static_cast<char>(kFirstId + index % kIdRadix);
        index /= kIdRadix;
    } while (index-- > 0);
    return id;
}

std::string bits(std::uint64_t value, unsigned width) {
    std::string s(width, '0');
    for (unsigned i = 0; i < width && i < 64; ++i) {
        if ((value >> i) & 1u) s[width - 1 - i] = '1';
    }
    return s;
}

SignalId VcdLog::declare(std::string name, unsigned width) {
    if (width == 0) throw std::invalid_argument("signal width must be at least 1");
    decls_.push_back({std::move(name), width, id_code_for(decls_.size())});
    last_.emplace_back(width, 'x');
    return decls_.size() - 1;
}

void VcdLog::record(std::uint64_t time, SignalId signal, std::string value) {
    if (time < last_time_) {
        throw TimeRegression("record at t=" + std::to_string(time) + " after t=" + std::to_string(last_time_));
    }
    const SignalDecl& d = decls_.at(signal);
    if (value.size() != d.width) throw std::invalid_argument("value width mismatch for " + d.name);
    if (value.find_first_not_of("01zx") != std::string::npos) {
        throw std::invalid_argument("value '" + value + "' for " + d.name + " is not made of 0/1/z/x");
    }
    last_time_ = time;
    if (last_[signal] == value) return;
    last_[signal] = value;
    events_.push_back({time, d.id_code, std::move(value)});
    event_signal_.push_back(signal);
}

void VcdLog::emit(std::ostream& out) const {
    out << "$date\n\tsimulation\n$end\n";
    out << "$version\n\twbspi value change dump\n$end\n";
    out << "$timescale 1ns $end\n";

    std::vector<std::string> open;
    for (const auto& d : decls_) {
        auto path = split_scope(d.name);
        const std::string leaf = path.back();
        path.pop_back();
        std::size_t common = 0;
        while (common < open.size() && common < path.size() && open[common] == path[common]) ++common;
        while (open.size() > common) {
            out << "$upscope $end\n";
            open.pop_back();
        }
        while (open.size() < path.size()) {
            out << "$scope module " << path[open.size()] << " $end\n";
            open.push_back(path[open.size()]);
        }
        out << "$var wire " << d.width << ' ' << d.id_code << ' ' << leaf;
        if (d.width > 1) out << " [" << d.width - 1 << ":0]";
        out << " $end\n";
    }
    while (!open.empty()) {
        out << "$upscope $end\n";
        open.pop_back();
    }
    out << "$enddefinitions $end\n";

    out << "$dumpvars\n";
    for (const auto& d : decls_) emit_value(out, d, std::string(d.width, 'x'));
    out << "$end\n";

    bool first = true;
    std::uint64_t current = 0;
    for (std::size_t i = 0; i < events_.size(); ++i) {
        const ChangeEvent& ev = events_[i];
        if (first || ev.time != current) {
            out << '#' << ev.time << '\n';
            current = ev.time;
            first = false;
        }
        emit_value(out, decls_[event_signal_[i]], ev.value);
    }
}

std::string VcdLog::emit() const {
    std::ostringstream out;
    emit(out);
    return out.str();
}

}  // namespace wbspi::vcd
