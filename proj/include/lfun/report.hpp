#pragma once

// Reports: one record per check with {check, paper_anchor, value, threshold, status}.
// `records` output is line-delimited JSON; `table` output is aligned text.

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lfun/io.hpp"

namespace lfun {

enum class Status { pass, fail, inconclusive, info };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::pass:
            return "PASS";
        case Status::fail:
            return "FAIL";
        case Status::inconclusive:
            return "INCONCLUSIVE";
        case Status::info:
            return "INFO";
    }
    return "?";
}

struct Record {
    std::string check;
    std::string anchor;  ///< the statement the number addresses
    nlohmann::json value;
    nlohmann::json threshold;  ///< null when there is none
    Status status = Status::info;
};

enum class ReportFormat { table, records };

class Report {
public:
    void add(Record r) { records_.push_back(std::move(r)); }

    void add(std::string check, std::string anchor, nlohmann::json value,
             nlohmann::json threshold = nullptr, Status status = Status::info) {
        records_.push_back({std::move(check), std::move(anchor), std::move(value),
                            std::move(threshold), status});
    }

    bool any_failed() const {
        return std::any_of(records_.begin(), records_.end(),
                           [](const Record& r) { return r.status == Status::fail; });
    }

    const std::vector<Record>& records() const { return records_; }

    std::string render(ReportFormat format) const {
        return format == ReportFormat::records ? render_records() : render_table();
    }

private:
    static std::string cell(const nlohmann::json& j) {
        if (j.is_null()) return "-";
        if (j.is_string()) return j.get<std::string>();
        if (j.is_number_float()) return format_double(j.get<double>());
        return j.dump();
    }

    std::string render_records() const {
        std::string out;
        for (const auto& r : records_) {
            nlohmann::ordered_json j;
            j["check"] = r.check;
            j["paper_anchor"] = r.anchor;
            j["value"] = r.value;
            j["threshold"] = r.threshold;
            j["status"] = to_string(r.status);
            out += j.dump();
            out += '\n';
        }
        return out;
    }

    std::string render_table() const {
        std::vector<std::array<std::string, 5>> rows;
        rows.push_back({"check", "value", "threshold", "status", "statement"});
        for (const auto& r : records_)
            rows.push_back({r.check, cell(r.value), cell(r.threshold), to_string(r.status),
                            r.anchor});
        std::array<std::size_t, 5> width{};
        for (const auto& row : rows)
            for (std::size_t i = 0; i < 5; ++i) width[i] = std::max(width[i], row[i].size());
        std::string out;
        for (const auto& row : rows) {
            std::string line;
            for (std::size_t i = 0; i < 5; ++i) {
                line += row[i];
                if (i + 1 < 5) line += std::string(width[i] - row[i].size() + 2, ' ');
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out += line + '\n';
        }
        return out;
    }

    std::vector<Record> records_;
};

}  // namespace lfun
