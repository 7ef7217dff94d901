#pragma once

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hcore/errors.hpp"
#include "hcore/profile.hpp"

namespace hcore {

/// One row of the CSV input format; line numbers are kept for error reports.
struct RawRecord {
    std::string scientist_id;
    std::string publication_id;
    long long citations = 0;
    std::size_t line = 0;
};

inline constexpr const char* kCsvHeader = "scientist_id,publication_id,citations";

namespace detail {

inline void strip_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
}

inline long long parse_citation_count(const std::string& field, std::size_t line) {
    long long value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty())
        throw NonIntegerCitations("citation count '" + field + "' is not an integer", line);
    if (value < 0)
        throw NegativeCitations("citation count " + field + " is negative", line);
    return value;
}

}  // namespace detail

/// Parse the `scientist_id,publication_id,citations` format. No quoting
/// dialect: ids must not contain commas.
inline std::vector<RawRecord> parse_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw MalformedRow("empty input, expected header row", 1);
    ++line_no;
    detail::strip_cr(line);
    if (line != kCsvHeader)
        throw MalformedRow("expected header '" + std::string(kCsvHeader) + "', got '" + line +
                           "'", line_no);

    std::vector<RawRecord> records;
    std::set<std::pair<std::string, std::string>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (line.empty()) continue;

        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                                       : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos ||
            line.find(',', c2 + 1) != std::string::npos)
            throw MalformedRow("expected exactly 3 comma-separated fields", line_no);

        RawRecord rec;
        rec.scientist_id = line.substr(0, c1);
        rec.publication_id = line.substr(c1 + 1, c2 - c1 - 1);
        rec.line = line_no;
        if (rec.scientist_id.empty() || rec.publication_id.empty())
            throw MalformedRow("empty id field", line_no);
        rec.citations = detail::parse_citation_count(line.substr(c2 + 1), line_no);
        if (!seen.emplace(rec.scientist_id, rec.publication_id).second)
            throw DuplicateKey("duplicate record for (" + rec.scientist_id + ", " +
                               rec.publication_id + ")", line_no);
        records.push_back(std::move(rec));
    }
    return records;
}

/// Group validated records into profiles, one per scientist, ordered by id.
inline std::vector<ScientistProfile> assemble_profiles(const std::vector<RawRecord>& records) {
    std::map<std::string, std::vector<long long>> by_scientist;
    for (const RawRecord& rec : records) by_scientist[rec.scientist_id].push_back(rec.citations);

    std::vector<ScientistProfile> profiles;
    profiles.reserve(by_scientist.size());
    for (auto& [id, counts] : by_scientist) profiles.emplace_back(id, std::move(counts));
    return profiles;
}

/// JSON input: { "scientists": [ { "id": str, "citations": [int, ...] } ] }.
/// Citations may arrive unsorted; profiles are normalized on load.
inline std::vector<ScientistProfile> parse_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedRow(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("scientists") || !doc["scientists"].is_array())
        throw MalformedRow("expected a top-level object with a 'scientists' array");

    std::vector<ScientistProfile> profiles;
    std::set<std::string> seen;
    for (const auto& entry : doc["scientists"]) {
        if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string() ||
            !entry.contains("citations") || !entry["citations"].is_array())
            throw MalformedRow("each scientist needs a string 'id' and a 'citations' array");
        const std::string id = entry["id"].get<std::string>();
        if (!seen.insert(id).second)
            throw DuplicateKey("duplicate scientist id '" + id + "'");
        std::vector<long long> counts;
        counts.reserve(entry["citations"].size());
        for (const auto& c : entry["citations"]) {
            if (!c.is_number_integer())
                throw NonIntegerCitations("citation count for '" + id + "' is not an integer");
            const long long v = c.get<long long>();
            if (v < 0)
                throw NegativeCitations("citation count for '" + id + "' is negative");
            counts.push_back(v);
        }
        profiles.emplace_back(id, std::move(counts));
    }
    std::sort(profiles.begin(), profiles.end(),
              [](const ScientistProfile& a, const ScientistProfile& b) { return a.id() < b.id(); });
    return profiles;
}

inline void write_csv(const std::vector<ScientistProfile>& profiles, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const ScientistProfile& p : profiles) {
        std::size_t pub = 0;
        for (long long c : p.citations())
            out << p.id() << ",p" << ++pub << ',' << c << '\n';
    }
}

inline void write_json(const std::vector<ScientistProfile>& profiles, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["scientists"] = nlohmann::ordered_json::array();
    for (const ScientistProfile& p : profiles) {
        nlohmann::ordered_json entry;
        entry["id"] = p.id();
        entry["citations"] = p.citations();
        doc["scientists"].push_back(std::move(entry));
    }
    out << doc.dump(2) << '\n';
}

}  // namespace hcore
