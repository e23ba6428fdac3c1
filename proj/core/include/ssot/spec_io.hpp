#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ssot/model.hpp"

namespace ssot {

/// Parsed form of the line-oriented system description:
///
///   system <name>
///   fact <id> domain <K>
///   location <id> encodes <fact-id> value <token>
///   derive <derived-id> from <source-id>
///
/// '#' starts a comment; blank lines are ignored; keywords are lowercase.
struct SystemSpec {
    struct LocationDecl {
        std::string id;
        std::string fact;
        ValueToken value = 0;

        friend bool operator==(const LocationDecl&, const LocationDecl&) = default;
    };

    std::string name;
    std::vector<Fact> facts;
    std::vector<LocationDecl> locations;
    std::vector<Edge> edges;

    DerivationGraph graph() const;
    SystemState state() const;

    friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

/// Errors: ParseError with 1-based line — syntax_error, duplicate_id,
/// undeclared_id, cyclic_graph (reported at the derive line closing the
/// cycle).  Declared values and propagation discipline are not checked here;
/// building the state does that.
SystemSpec parse_spec(std::string_view text);

/// Canonical text: header, then facts, locations and derive lines each sorted
/// by id.  parse(serialize(s)) round-trips canonicalized specs byte for byte.
std::string serialize_spec(const SystemSpec& spec);

/// Edit scripts are lines of `edit <location-id> <token>`, same comment rules.
///
/// Errors: ParseError (syntax_error).
EditScript parse_edit_script(std::string_view text);

std::string serialize_edit_script(const EditScript& script);

} // namespace ssot
