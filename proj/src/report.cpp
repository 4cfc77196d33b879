#include <symplab/report.hpp>
#include <symplab/types.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace symplab {

ReportWriter::ReportWriter(std::string suite, uint64_t seed)
{
    meta_["record"] = "meta";
    meta_["tool"] = "symplab 0.1.0";
    meta_["suite"] = std::move(suite);
    meta_["seed"] = seed;
}

void ReportWriter::set_meta(const std::string& key, const Json& value) { meta_[key] = value; }

void ReportWriter::add(CheckRecord record) { records_.push_back(std::move(record)); }

void ReportWriter::add_check(const std::string& check_id, const std::string& anchor, Json inputs,
                             double value, double residual, double tol)
{
    bool pass = std::isfinite(residual) && std::abs(residual) <= tol;
    records_.push_back({check_id, anchor, std::move(inputs), value, residual, tol, pass});
}

bool ReportWriter::all_pass() const { return failures() == 0; }

int ReportWriter::failures() const
{
    int n = 0;
    for (const auto& r : records_)
        if (!r.pass) ++n;
    return n;
}

std::string ReportWriter::to_jsonl() const
{
    std::vector<const CheckRecord*> order;
    order.reserve(records_.size());
    for (const auto& r : records_) order.push_back(&r);
    std::stable_sort(order.begin(), order.end(),
                     [](const CheckRecord* a, const CheckRecord* b) {
                         return a->check_id < b->check_id;
                     });

    std::string out = meta_.dump() + "\n";
    for (const CheckRecord* r : order) {
        Json line;
        line["record"] = "check";
        line["check_id"] = r->check_id;
        line["anchor"] = r->anchor;
        line["inputs"] = r->inputs.is_null() ? Json::object() : r->inputs;
        line["value"] = r->value;
        line["residual"] = r->residual;
        line["tol"] = r->tol;
        line["pass"] = r->pass;
        out += line.dump() + "\n";
    }
    Json summary;
    summary["record"] = "summary";
    summary["checks"] = records_.size();
    summary["failures"] = failures();
    summary["pass"] = all_pass();
    out += summary.dump() + "\n";
    return out;
}

void ReportWriter::write_file(const std::string& path) const
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw PreconditionError("cannot open report file: " + path);
    f << to_jsonl();
}

}  // namespace symplab
