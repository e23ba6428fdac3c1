#include "ssot/spec_io.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace ssot {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> tokenize(std::string_view line) {
    std::istringstream in{std::string(line)};
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

int parse_int(const std::string& tok, bool allow_zero, std::size_t line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || value < (allow_zero ? 0 : 1))
        throw ParseError(errc::syntax_error, "expected a " +
                             std::string(allow_zero ? "non-negative" : "positive") +
                             " integer, got '" + tok + "'", line);
    return value;
}

/// Strips comments and yields (1-based line number, trimmed content) pairs.
std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t line_no = 0;
    while (!text.empty() || line_no == 0) {
        std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) out.emplace_back(line_no, line);
        if (eol == std::string_view::npos) break;
    }
    return out;
}

} // namespace

SystemSpec parse_spec(std::string_view text) {
    SystemSpec spec;
    bool have_system = false;
    std::set<std::string> fact_ids;
    std::set<std::string> location_ids;
    std::set<Edge> unique_edges;

    // Referenced ids must be declared on an earlier line; derive cycles are
    // caught incrementally so the error names the line that closes the loop.
    std::map<std::string, std::set<std::string>> children;
    auto reaches = [&children](const std::string& from, const std::string& to) {
        std::vector<std::string> stack{from};
        std::set<std::string> seen{from};
        while (!stack.empty()) {
            std::string at = std::move(stack.back());
            stack.pop_back();
            if (at == to) return true;
            auto it = children.find(at);
            if (it == children.end()) continue;
            for (const std::string& next : it->second)
                if (seen.insert(next).second) stack.push_back(next);
        }
        return false;
    };

    for (const auto& [line_no, line] : content_lines(text)) {
        std::vector<std::string> tok = tokenize(line);
        const std::string& keyword = tok.front();

        if (keyword == "system") {
            if (tok.size() != 2)
                throw ParseError(errc::syntax_error, "expected: system <name>", line_no);
            if (have_system)
                throw ParseError(errc::syntax_error, "second system header", line_no);
            have_system = true;
            spec.name = tok[1];
        } else if (keyword == "fact") {
            if (tok.size() != 4 || tok[2] != "domain")
                throw ParseError(errc::syntax_error, "expected: fact <id> domain <k>", line_no);
            if (!fact_ids.insert(tok[1]).second)
                throw ParseError(errc::duplicate_id, "fact declared twice: " + tok[1], line_no);
            spec.facts.push_back({tok[1], parse_int(tok[3], false, line_no)});
        } else if (keyword == "location") {
            if (tok.size() != 6 || tok[2] != "encodes" || tok[4] != "value")
                throw ParseError(errc::syntax_error,
                                 "expected: location <id> encodes <fact> value <token>", line_no);
            if (!fact_ids.count(tok[3]))
                throw ParseError(errc::undeclared_id, "undeclared fact: " + tok[3], line_no);
            if (!location_ids.insert(tok[1]).second)
                throw ParseError(errc::duplicate_id, "location declared twice: " + tok[1],
                                 line_no);
            spec.locations.push_back({tok[1], tok[3], parse_int(tok[5], true, line_no)});
        } else if (keyword == "derive") {
            if (tok.size() != 4 || tok[2] != "from")
                throw ParseError(errc::syntax_error, "expected: derive <derived> from <source>",
                                 line_no);
            Edge edge{tok[3], tok[1]};
            if (!location_ids.count(edge.source))
                throw ParseError(errc::undeclared_id, "undeclared location: " + edge.source,
                                 line_no);
            if (!location_ids.count(edge.derived))
                throw ParseError(errc::undeclared_id, "undeclared location: " + edge.derived,
                                 line_no);
            if (edge.source == edge.derived || reaches(edge.derived, edge.source))
                throw ParseError(errc::cyclic_graph,
                                 "deriving " + edge.derived + " from " + edge.source +
                                     " closes a cycle",
                                 line_no);
            if (unique_edges.insert(edge).second) {
                children[edge.source].insert(edge.derived);
                spec.edges.push_back(std::move(edge));
            }
        } else {
            throw ParseError(errc::syntax_error, "unknown directive: " + keyword, line_no);
        }
    }

    if (!have_system)
        throw ParseError(errc::syntax_error, "missing system header", 1);

    return spec;
}

DerivationGraph SystemSpec::graph() const {
    std::vector<Location> locs;
    locs.reserve(locations.size());
    for (const LocationDecl& l : locations) locs.push_back({l.id, l.fact});
    return DerivationGraph::make(facts, std::move(locs), edges);
}

SystemState SystemSpec::state() const {
    std::map<std::string, ValueToken> values;
    for (const LocationDecl& l : locations) values[l.id] = l.value;
    return SystemState::make(graph(), values);
}

std::string serialize_spec(const SystemSpec& spec) {
    std::vector<Fact> facts = spec.facts;
    std::sort(facts.begin(), facts.end(),
              [](const Fact& a, const Fact& b) { return a.id < b.id; });

    std::vector<SystemSpec::LocationDecl> locations = spec.locations;
    std::sort(locations.begin(), locations.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });

    std::vector<Edge> edges = spec.edges;
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.derived, a.source) < std::tie(b.derived, b.source);
    });
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::ostringstream out;
    out << "system " << spec.name << "\n";
    for (const Fact& f : facts) out << "fact " << f.id << " domain " << f.domain_size << "\n";
    for (const auto& l : locations)
        out << "location " << l.id << " encodes " << l.fact << " value " << l.value << "\n";
    for (const Edge& e : edges) out << "derive " << e.derived << " from " << e.source << "\n";
    return out.str();
}

EditScript parse_edit_script(std::string_view text) {
    EditScript script;
    for (const auto& [line_no, line] : content_lines(text)) {
        std::vector<std::string> tok = tokenize(line);
        if (tok.size() != 3 || tok[0] != "edit")
            throw ParseError(errc::syntax_error, "expected: edit <location> <token>", line_no);
        script.push_back({tok[1], parse_int(tok[2], true, line_no)});
    }
    return script;
}

std::string serialize_edit_script(const EditScript& script) {
    std::ostringstream out;
    for (const EditEvent& e : script) out << "edit " << e.target << " " << e.value << "\n";
    return out.str();
}

} // namespace ssot
