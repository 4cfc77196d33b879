#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace symplab {

using Json = nlohmann::ordered_json;

// One numeric check: what was measured, the residual, and the verdict.
struct CheckRecord {
    std::string check_id;  // unique within a report; reports sort by it
    std::string anchor;    // which identity or quantity this exercises
    Json inputs;           // small digest of the inputs used
    double value = 0.0;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// Collects checks and serializes them as JSON Lines: one meta line, the
// records sorted by check id, one summary line. No timestamps and a fixed
// tool stamp, so identical inputs produce identical bytes.
class ReportWriter {
public:
    explicit ReportWriter(std::string suite, uint64_t seed);

    void set_meta(const std::string& key, const Json& value);
    void add(CheckRecord record);

    // Convenience: pass iff |residual| <= tol.
    void add_check(const std::string& check_id, const std::string& anchor, Json inputs,
                   double value, double residual, double tol);

    bool all_pass() const;
    int failures() const;
    std::string to_jsonl() const;
    void write_file(const std::string& path) const;

    const std::vector<CheckRecord>& records() const { return records_; }

private:
    Json meta_;
    std::vector<CheckRecord> records_;
};

}  // namespace symplab
