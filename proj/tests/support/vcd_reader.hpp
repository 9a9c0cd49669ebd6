#pragma once

// Minimal VCD reader for round-trip checks. Knows only what a value
// change dump needs: $scope/$var/$upscope, $dumpvars, #time, scalar and
// vector changes.

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcdread {

struct Var {
    std::string path;
    unsigned width = 0;
    std::string id;
};

struct Change {
    std::uint64_t time = 0;
    std::string id;
    std::string value;
    bool operator==(const Change&) const = default;
};

struct File {
    std::string timescale;
    std::vector<Var> vars;
    std::map<std::string, std::string> initial;
    std::vector<Change> changes;
};

inline File parse(const std::string& text) {
    File f;
    std::istringstream in(text);
    std::vector<std::string> scope;
    std::string tok;
    bool defs_done = false;
    bool in_dump = false;
    std::uint64_t now = 0;

    auto skip_to_end = [&](std::string* body) {
        std::string w;
        while (in >> w && w != "$end") {
            if (body) *body += (body->empty() ? "" : " ") + w;
        }
    };

    auto value_line = [&](const std::string& t) {
        Change c;
        c.time = now;
        if (t[0] == 'b' || t[0] == 'B') {
            c.value = t.substr(1);
            if (!(in >> c.id)) throw std::runtime_error("vector change without id");
        } else {
            c.value = t.substr(0, 1);
            c.id = t.substr(1);
        }
        if (in_dump) {
            f.initial[c.id] = c.value;
        } else {
            f.changes.push_back(c);
        }
    };

    while (in >> tok) {
        if (!defs_done) {
            if (tok == "$scope") {
                std::string kind, name;
                in >> kind >> name;
                scope.push_back(name);
                skip_to_end(nullptr);
            } else if (tok == "$upscope") {
                if (scope.empty()) throw std::runtime_error("unbalanced $upscope");
                scope.pop_back();
                skip_to_end(nullptr);
            } else if (tok == "$var") {
                std::string kind, id, name;
                unsigned width = 0;
                in >> kind >> width >> id >> name;
                skip_to_end(nullptr);  // optional [msb:lsb]
                std::string path;
                for (const auto& s : scope) path += s + ".";
                f.vars.push_back({path + name, width, id});
            } else if (tok == "$timescale") {
                skip_to_end(&f.timescale);
            } else if (tok == "$enddefinitions") {
                skip_to_end(nullptr);
                if (!scope.empty()) throw std::runtime_error("scope left open");
                defs_done = true;
            } else if (tok[0] == '$') {
                skip_to_end(nullptr);
            } else {
                throw std::runtime_error("unexpected token in header: " + tok);
            }
            continue;
        }
        if (tok == "$dumpvars") {
            in_dump = true;
        } else if (tok == "$end") {
            in_dump = false;
        } else if (tok[0] == '#') {
            const std::uint64_t t = std::stoull(tok.substr(1));
            if (!f.changes.empty() && t < now) throw std::runtime_error("time went backwards");
            now = t;
        } else {
            value_line(tok);
        }
    }
    if (!defs_done) throw std::runtime_error("no $enddefinitions");
    return f;
}

}  // namespace vcdread
