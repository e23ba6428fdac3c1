#include "ssot/scanner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ssot/dof.hpp"
#include "ssot/error.hpp"

namespace ssot {

namespace fs = std::filesystem;

const std::vector<std::string>& default_config_extensions() {
    static const std::vector<std::string> exts = {".cfg",  ".conf",       ".ini",  ".json",
                                                  ".toml", ".properties", ".yaml", ".yml"};
    return exts;
}

namespace {

std::string trim(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

std::string strip_quotes(std::string s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        return s.substr(1, s.size() - 2);
    return s;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

/// Flat key/value pairs of one config file; later lines win on repeats.
std::map<std::string, std::string> parse_config(const std::string& text,
                                                const std::string& display_path) {
    std::map<std::string, std::string> pairs;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        std::size_t colon = line.find(':');
        std::size_t equals = line.find('=');
        std::size_t sep = std::min(colon, equals);
        if (sep == std::string::npos || sep == 0)
            throw ParseError(errc::syntax_error,
                             display_path + ": not a key/value line: '" + line + "'", line_no);
        std::string key = strip_quotes(trim(line.substr(0, sep)));
        std::string value = strip_quotes(trim(line.substr(sep + 1)));
        if (key.empty())
            throw ParseError(errc::syntax_error, display_path + ": empty key", line_no);
        pairs[key] = value;
    }
    return pairs;
}

std::string normalize(const std::string& path) {
    return fs::path(path).lexically_normal().generic_string();
}

std::vector<Edge> parse_manifest(const std::string& text, const std::string& display_path) {
    std::vector<Edge> edges;
    std::map<std::string, std::set<std::string>> children;
    auto reaches = [&children](const std::string& from, const std::string& to) {
        std::vector<std::string> stack{from};
        std::set<std::string> seen{from};
        while (!stack.empty()) {
            std::string at = stack.back();
            stack.pop_back();
            if (at == to) return true;
            for (const std::string& next : children[at])
                if (seen.insert(next).second) stack.push_back(next);
        }
        return false;
    };

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (std::size_t hash = line.find('#'); hash != std::string::npos)
            line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        std::istringstream tok(line);
        std::string kw, derived, from_kw, source;
        if (!(tok >> kw >> derived >> from_kw >> source) || kw != "derived" ||
            from_kw != "from" || (tok >> kw))
            throw ParseError(errc::syntax_error,
                             display_path + ": expected: derived <path> from <path>", line_no);
        derived = normalize(derived);
        source = normalize(source);
        if (derived == source || reaches(derived, source))
            throw ParseError(errc::cyclic_graph,
                             display_path + ": derivations form a cycle at " + derived, line_no);
        children[source].insert(derived);
        edges.push_back({source, derived});
    }
    return edges;
}

} // namespace

bool ScanReport::all_coherent() const {
    return std::all_of(records.begin(), records.end(),
                       [](const ScanRecord& r) { return r.coherent; });
}

ScanReport scan_directory(const fs::path& root, const ScanOptions& options) {
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        throw Error(errc::io_error, "not a directory: " + root.string());

    std::set<std::string> wanted;
    for (const std::string& e : options.extensions) wanted.insert(lower(e));

    std::vector<std::string> paths;
    for (auto it = fs::recursive_directory_iterator(root, ec);
         it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (ec) throw Error(errc::io_error, "cannot walk " + root.string() + ": " + ec.message());
        if (!it->is_regular_file()) continue;
        if (!wanted.count(lower(it->path().extension().string()))) continue;
        paths.push_back(it->path().lexically_relative(root).generic_string());
    }
    if (ec) throw Error(errc::io_error, "cannot walk " + root.string() + ": " + ec.message());
    std::sort(paths.begin(), paths.end());

    auto slurp = [&root](const std::string& rel) {
        std::ifstream in(root / fs::path(rel), std::ios::binary);
        if (!in) throw Error(errc::io_error, "cannot read " + rel);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };

    ScanReport report;
    std::map<std::string, std::map<std::string, std::string>> by_file;  // path -> key -> value
    for (const std::string& rel : paths) {
        try {
            by_file[rel] = parse_config(slurp(rel), rel);
            ++report.files_scanned;
        } catch (const ParseError&) {
            if (!options.lenient) throw;
            report.unparsed_files.push_back(rel);
        }
    }

    std::vector<Edge> manifest;
    if (fs::is_regular_file(root / "derivation.manifest"))
        manifest = parse_manifest(slurp("derivation.manifest"), "derivation.manifest");

    std::map<std::string, std::map<std::string, std::string>> by_key;  // key -> path -> value
    for (const auto& [path, pairs] : by_file)
        for (const auto& [key, value] : pairs) by_key[key][path] = value;

    for (const auto& [key, occurrences] : by_key) {
        if (occurrences.size() < 2) continue;

        ScanRecord record;
        record.key = key;
        std::set<std::string> values;
        std::vector<Location> locations;
        for (const auto& [path, value] : occurrences) {
            record.locations.push_back({path, value, false});
            values.insert(value);
            locations.push_back({path, key});
        }
        record.distinct_values = values.size();
        record.coherent = values.size() == 1;
        record.side_info_bits = std::log2(static_cast<double>(values.size()));
        record.domain_size = static_cast<int>(std::max<std::size_t>(2, values.size()));

        std::vector<Edge> edges;
        for (const Edge& e : manifest)
            if (occurrences.count(e.source) && occurrences.count(e.derived)) edges.push_back(e);
        DerivationGraph g = DerivationGraph::make({{key, record.domain_size}},
                                                  std::move(locations), std::move(edges));
        record.dof = compute_dof(g).dof;
        for (ScanEntry& entry : record.locations) entry.derived = g.in_degree(entry.path) > 0;

        report.records.push_back(std::move(record));
    }

    return report;
}

} // namespace ssot
