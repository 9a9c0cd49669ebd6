#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "wbspi/logic.hpp"

namespace wbspi::vcd {

using SignalId = std::size_t;

struct SignalDecl {
    std::string name;  // hierarchical, dot separated: "tb.spi.sclk"
    unsigned width = 1;
    std::string id_code;

    bool operator==(const SignalDecl&) const = default;
};

/// One value change. `value` holds one of 0/1/z/x per bit, MSB first.
struct ChangeEvent {
    std::uint64_t time = 0;
    std::string id_code;
    std::string value;

    bool operator==(const ChangeEvent&) const = default;
};

/// Short printable identifier for the n-th signal: "!", "\"", ... "~",
/// then two characters.
std::string id_code_for(std::size_t index);

std::string bits(std::uint64_t value, unsigned width);

/// In-memory value change log. Stores a change only when the value
/// differs from the signal's previous one; every signal starts as 'x'.
class VcdLog {
public:
    VcdLog() = default;

    SignalId declare(std::string name, unsigned width);

    /// Throws TimeRegression when `time` is before the last recorded
    /// time, std::invalid_argument on a value of the wrong width or
    /// with characters other than 0/1/z/x.
    void record(std::uint64_t time, SignalId signal, std::string value);
    void record(std::uint64_t time, SignalId signal, std::uint64_t value) {
        record(time, signal, bits(value, decls_.at(signal).width));
    }
    void record(std::uint64_t time, SignalId signal, Tri level) {
        record(time, signal, std::string(1, to_char(level)));
    }

    const std::vector<SignalDecl>& decls() const { return decls_; }
    const std::vector<ChangeEvent>& events() const { return events_; }

    /// IEEE 1364 text: header, scopes, $dumpvars with every signal at
    /// 'x', then one #time block per distinct time. Deterministic.
    void emit(std::ostream& out) const;
    std::string emit() const;

private:
    std::vector<SignalDecl> decls_;
    std::vector<std::string> last_;
    std::vector<ChangeEvent> events_;
    std::vector<SignalId> event_signal_;
    std::uint64_t last_time_ = 0;
};

}  // namespace wbspi::vcd
