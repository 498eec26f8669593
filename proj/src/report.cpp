#include "mgonal/report.hpp"

#include <sstream>

#include <json.hpp>

namespace mgonal {

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["claim"] = claim;
    j["seed"] = seed;
    j["cells"] = cells;
    j["skipped"] = skipped;
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& f : failures) {
        fails.push_back({{"cell", f.cell}, {"detail", f.detail}});
    }
    j["failures"] = std::move(fails);
    j["notes"] = notes;
    j["params"] = params;
    j["runtime"] = {{"sieve_words", sieve_words}, {"search_nodes", search_nodes}};
    j["pass"] = pass();
    return j.dump(2);
}

namespace {

// RFC-4180 style quoting: wrap when the field contains a comma, quote, or
// newline, doubling embedded quotes.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string VerificationReport::to_csv() const {
    std::ostringstream os;
    os << "kind,cell,detail\n";
    {
        std::ostringstream sum;
        sum << "claim=" << claim << " cells=" << cells << " failures="
            << failures.size() << " skipped=" << skipped.size()
            << " pass=" << (pass() ? "true" : "false");
        os << "summary," << csv_field(sum.str()) << ",\n";
    }
    for (const auto& f : failures) {
        os << "failure," << csv_field(f.cell) << "," << csv_field(f.detail) << "\n";
    }
    for (const auto& s : skipped) {
        os << "skipped," << csv_field(s) << ",\n";
    }
    for (const auto& n : notes) {
        os << "note," << csv_field(n) << ",\n";
    }
    return os.str();
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << "claim:    " << claim << "\n";
    os << "cells:    " << cells << "\n";
    os << "failures: " << failures.size() << "\n";
    os << "skipped:  " << skipped.size() << "\n";
    for (const auto& [k, v] : params) {
        os << "param:    " << k << " = " << v << "\n";
    }
    os << "work:     " << sieve_words << " sieve words, " << search_nodes
       << " search nodes\n";
    for (const auto& f : failures) {
        os << "FAIL " << f.cell << ": " << f.detail << "\n";
    }
    for (const auto& s : skipped) {
        os << "skip " << s << "\n";
    }
    for (const auto& n : notes) {
        os << "note " << n << "\n";
    }
    os << (pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace mgonal
