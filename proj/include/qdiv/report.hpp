#ifndef QDIV_REPORT_HPP
#define QDIV_REPORT_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include <qdiv/catalog.hpp>

namespace qdiv
{

inline constexpr const char *tool_version = "1.0.0";

struct Totals {
    std::int64_t pass = 0;
    std::int64_t fail = 0;
    std::int64_t skipped = 0;

    friend bool operator==(const Totals &, const Totals &) = default;
};

// A sweep result. Rows are kept sorted by (identity, params); elapsed_ms is
// only serialized when timings is set, so default documents are byte-stable.
struct ReportDocument {
    std::string version = tool_version;
    std::int64_t order = 0;
    std::string suite;
    Totals totals;
    bool timings = false;
    std::vector<VerificationReport> rows;

    friend bool operator==(const ReportDocument &, const ReportDocument &) = default;
};

inline bool row_less(const VerificationReport &a, const VerificationReport &b)
{
    if (a.identity != b.identity) {
        return a.identity < b.identity;
    }
    return a.params < b.params;
}

inline ReportDocument make_document(std::vector<VerificationReport> rows, std::int64_t order, std::string suite,
                                    bool timings)
{
    ReportDocument doc;
    doc.order = order;
    doc.suite = std::move(suite);
    doc.timings = timings;
    std::sort(rows.begin(), rows.end(), row_less);
    for (auto &r : rows) {
        if (!timings) {
            r.elapsed_ms = 0;
        }
        switch (r.status) {
        case Status::pass:
            ++doc.totals.pass;
            break;
        case Status::fail:
            ++doc.totals.fail;
            break;
        case Status::skipped:
            ++doc.totals.skipped;
            break;
        }
    }
    doc.rows = std::move(rows);
    return doc;
}

inline nlohmann::json row_to_json(const VerificationReport &r, bool timings)
{
    nlohmann::json j;
    j["identity"] = r.identity;
    j["params"] = r.params;
    j["status"] = to_string(r.status);
    if (r.first_mismatch) {
        j["first_mismatch"] = {{"exponent", r.first_mismatch->exponent},
                               {"lhs", r.first_mismatch->lhs},
                               {"rhs", r.first_mismatch->rhs}};
    } else {
        j["first_mismatch"] = nullptr;
    }
    j["skip_reason"] = r.skip_reason ? nlohmann::json(*r.skip_reason) : nlohmann::json(nullptr);
    j["diagnostic"] = r.diagnostic ? nlohmann::json(*r.diagnostic) : nlohmann::json(nullptr);
    j["elapsed_ms"] = timings ? nlohmann::json(r.elapsed_ms) : nlohmann::json(nullptr);
    return j;
}

inline Status parse_status(const std::string &s)
{
    if (s == "pass") {
        return Status::pass;
    }
    if (s == "fail") {
        return Status::fail;
    }
    if (s == "skipped") {
        return Status::skipped;
    }
    throw std::invalid_argument("unknown status '" + s + "'");
}

inline VerificationReport row_from_json(const nlohmann::json &j, std::int64_t order)
{
    VerificationReport r;
    r.identity = j.at("identity").get<std::string>();
    r.params = j.at("params").get<std::string>();
    r.order = order;
    r.status = parse_status(j.at("status").get<std::string>());
    if (const auto &m = j.at("first_mismatch"); !m.is_null()) {
        r.first_mismatch = Mismatch{m.at("exponent").get<std::int64_t>(), m.at("lhs").get<std::string>(),
                                    m.at("rhs").get<std::string>()};
    }
    if (const auto &s = j.at("skip_reason"); !s.is_null()) {
        r.skip_reason = s.get<std::string>();
    }
    if (j.contains("diagnostic") && !j.at("diagnostic").is_null()) {
        r.diagnostic = j.at("diagnostic").get<std::string>();
    }
    if (const auto &e = j.at("elapsed_ms"); !e.is_null()) {
        r.elapsed_ms = e.get<std::int64_t>();
    }
    return r;
}

inline nlohmann::json to_json(const ReportDocument &doc)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : doc.rows) {
        rows.push_back(row_to_json(r, doc.timings));
    }
    return {{"header",
             {{"version", doc.version},
              {"order", doc.order},
              {"suite", doc.suite},
              {"totals", {{"pass", doc.totals.pass}, {"fail", doc.totals.fail}, {"skipped", doc.totals.skipped}}}}},
            {"rows", rows}};
}

// Keys are emitted in sorted order with two-space indentation.
inline std::string render(const ReportDocument &doc)
{
    return to_json(doc).dump(2) + "\n";
}

inline ReportDocument parse_document(const std::string &text)
{
    nlohmann::json j = nlohmann::json::parse(text);
    ReportDocument doc;
    const auto &h = j.at("header");
    doc.version = h.at("version").get<std::string>();
    doc.order = h.at("order").get<std::int64_t>();
    doc.suite = h.at("suite").get<std::string>();
    const auto &t = h.at("totals");
    doc.totals = Totals{t.at("pass").get<std::int64_t>(), t.at("fail").get<std::int64_t>(),
                        t.at("skipped").get<std::int64_t>()};
    doc.timings = false;
    for (const auto &row : j.at("rows")) {
        doc.rows.push_back(row_from_json(row, doc.order));
        doc.timings = doc.timings || !row.at("elapsed_ms").is_null();
    }
    return doc;
}

// Verifies every entry with `jobs` worker threads. Workers claim indices from
// a shared counter and write only their own slots, so the result does not
// depend on scheduling.
inline std::vector<VerificationReport> run_suite(const std::vector<SuiteEntry> &entries, std::int64_t order,
                                                 unsigned jobs)
{
    std::vector<VerificationReport> out(entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) {
            out[i] = verify(entries[i].id, entries[i].params, order);
        }
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        worker();
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back(worker);
    }
    for (auto &th : pool) {
        th.join();
    }
    return out;
}

// The full sweep: the series grid plus the rational checks.
inline ReportDocument sweep(std::int64_t max_n, std::int64_t order, unsigned jobs, int seed = 0, bool timings = false)
{
    std::vector<SuiteEntry> entries = default_suite(max_n, seed);
    std::vector<SuiteEntry> rational = rational_suite(max_n, seed);
    entries.insert(entries.end(), rational.begin(), rational.end());
    std::string name = "default(max_n=" + std::to_string(max_n) + ", seed=" + std::to_string(seed) + ")";
    return make_document(run_suite(entries, order, jobs), order, name, timings);
}

} // namespace qdiv

#endif
