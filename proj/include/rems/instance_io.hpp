#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "rems/adapters.hpp"

namespace rems {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& reason)
        : std::runtime_error("line " + std::to_string(line_) + ": " + reason), line(line_) {}
};

struct UnsupportedFormat : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class InstanceFormat {
    OrLibraryGap,  // "m n" header, cost block, demand block, capacities
    BppConflict,   // "n capacity" header; per item: size then conflicting ids
    DimacsCol,     // "p edge n m" + "e u v" lines
    TaillardJssp,  // jobs/machines header, duration matrix, machine matrix
    SolomonVrptw,  // vehicle block + customer table, Euclidean travel times
    NativeJson,    // JSON with a "kind" discriminator, all five kinds
};

InstanceFormat format_from_string(const std::string& name); // throws UnsupportedFormat
const char* format_name(InstanceFormat f);

using ParsedInstance =
    std::variant<GapInstance, BppcInstance, GcInstance, JsspInstance, VrptwInstance>;

// Byte-exact parsers for the published conventions; malformed input raises
// ParseError with a 1-based line number.
GapInstance parse_gap(std::istream& in);
BppcInstance parse_bppc(std::istream& in);
GcInstance parse_gc(std::istream& in); // color count defaults to node count
JsspInstance parse_jssp(std::istream& in);
VrptwInstance parse_vrptw(std::istream& in);
ParsedInstance parse_native_json(std::istream& in);

ParsedInstance parse_instance(const std::string& path, InstanceFormat format);

// Writers for round-tripping fixtures. Solomon files carry coordinates the
// matrix form cannot reproduce, so VRPTW round-trips go through NativeJson.
void write_gap(std::ostream& out, const GapInstance& inst);
void write_bppc(std::ostream& out, const BppcInstance& inst);
void write_gc(std::ostream& out, const GcInstance& inst);
void write_jssp(std::ostream& out, const JsspInstance& inst);
void write_native_json(std::ostream& out, const ParsedInstance& inst);

// Build the matching ProblemModel for whichever instance kind is held.
ProblemModel build_model(const ParsedInstance& inst);
const char* instance_kind(const ParsedInstance& inst);

} // namespace rems
