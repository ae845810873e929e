#pragma once
#ifndef CFPROB_REPORT_IO_HPP
#define CFPROB_REPORT_IO_HPP

// Text and JSON renderings of check reports. Only this header depends on
// nlohmann/json.

#include <cfprob/checker.hpp>
#include <cfprob/format.hpp>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <string>

namespace cfprob {

/// Machine-readable tree:
///
///     {
///       "suite": "theorems", "seed": 7, "checks": N, "failures": F, "passed": true,
///       "claims": {
///         "<claim id>": {
///           "description": "...", "checks": n, "failures": f, "notes": k,
///           "records": [ {"instantiation": "...", "expected": "...", "actual": "...",
///                         "deviation": d, "passed": false, "note": "..."} ]
///         }
///       }
///     }
///
/// Records appear for failures and noted cases only, unless the report kept
/// passing checks. Keys are sorted, so output is deterministic.
inline nlohmann::ordered_json report_to_json(const CheckReport& report)
{
    nlohmann::ordered_json out;
    out["suite"] = report.suite();
    out["seed"] = report.seed();
    out["checks"] = report.checks();
    out["failures"] = report.failures();
    out["passed"] = report.passed();
    nlohmann::ordered_json claims = nlohmann::ordered_json::object();
    const auto& descriptions = claim_descriptions();
    for (const auto& [claim, tally] : report.tallies()) {
        nlohmann::ordered_json c;
        auto d = descriptions.find(claim);
        c["description"] = d == descriptions.end() ? "" : d->second;
        c["checks"] = tally.checks;
        c["failures"] = tally.failures;
        c["notes"] = tally.notes;
        c["records"] = nlohmann::ordered_json::array();
        claims[claim] = std::move(c);
    }
    for (const auto& r : report.records()) {
        nlohmann::ordered_json rec;
        rec["instantiation"] = r.instantiation;
        rec["expected"] = r.expected;
        rec["actual"] = r.actual;
        rec["deviation"] = r.deviation;
        rec["passed"] = r.passed;
        if (!r.note.empty()) rec["note"] = r.note;
        claims[r.claim]["records"].push_back(std::move(rec));
    }
    out["claims"] = std::move(claims);
    return out;
}

/// Fixed-width table of claims followed by one line per kept record.
inline std::string report_to_text(const CheckReport& report, std::size_t max_records = 50)
{
    std::string out = "suite " + report.suite() + "  seed " + std::to_string(report.seed()) + "\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-30s %10s %9s %6s\n", "claim", "checks", "failures", "notes");
    out += line;
    for (const auto& [claim, t] : report.tallies()) {
        std::snprintf(line, sizeof line, "%-30s %10zu %9zu %6zu\n", claim.c_str(), t.checks, t.failures, t.notes);
        out += line;
    }
    std::size_t shown = 0;
    for (const auto& r : report.records()) {
        if (shown++ == max_records) {
            out += "... " + std::to_string(report.records().size() - max_records) + " more records\n";
            break;
        }
        const char* label = !r.passed ? "FAIL " : r.note.empty() ? "PASS " : "NOTE ";
        out += label + r.claim + "  " + r.instantiation + "  expected " +
               r.expected + "  actual " + r.actual;
        if (r.deviation != 0.0) out += "  deviation " + format_number(r.deviation);
        if (!r.note.empty()) out += "  (" + r.note + ")";
        out += '\n';
    }
    out += std::string("result ") + (report.passed() ? "PASS" : "FAIL") + "  " + std::to_string(report.checks()) +
           " checks, " + std::to_string(report.failures()) + " failures\n";
    return out;
}

}  // namespace cfprob

#endif  // CFPROB_REPORT_IO_HPP
