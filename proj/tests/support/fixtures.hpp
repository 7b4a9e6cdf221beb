#pragma once

#include "tracecalc/json_io.hpp"
#include "tracecalc/spec_dsl.hpp"

#include <string>

namespace tcsupport {

inline const char* kFdTypes = R"(eventtype open(fd) matches {event:"func_post", name:"fs.open", res:fd};
eventtype close(fd) matches {event:"func_pre", name:"close", args:[fd]};
)";

inline std::string fd_spec() { return std::string(kFdTypes) + "Main = {let fd; open(fd) close(fd) Main};\n"; }
/// Same shape with an explicit way out, so complete sessions are accepted.
inline std::string fd_spec_nullable() {
    return std::string(kFdTypes) + "Main = empty \\/ {let fd; open(fd) close(fd) Main};\n";
}
inline std::string fd_pair_spec() { return std::string(kFdTypes) + "Main = {let fd; open(fd) close(fd)};\n"; }

inline std::string ab_decls() { return "eventtype a() matches {e:\"a\"};\neventtype b() matches {e:\"b\"};\n"; }

inline tracecalc::Event open_ev(long fd) {
    return tracecalc::parse_event_line(R"({"event":"func_post","name":"fs.open","res":)" + std::to_string(fd) + "}");
}
inline tracecalc::Event close_ev(long fd) {
    return tracecalc::parse_event_line(R"({"event":"func_pre","name":"close","args":[)" + std::to_string(fd) + "]}");
}

} // namespace tcsupport
