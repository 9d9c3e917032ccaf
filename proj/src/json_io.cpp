#include "hamflow/json_io.hpp"

#include <fstream>

#include "json.hpp"

#include "hamflow/errors.hpp"

namespace hamflow {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json quotient_json(const QuotientDescriptor& q) {
    return ordered_json{{"free", q.free_rank}, {"torsion", q.torsion}};
}

ordered_json pair_json(const QuotientPair& p) {
    return ordered_json{{"fh", quotient_json(p.fh)}, {"eh", quotient_json(p.eh)}};
}

}  // namespace

std::string label_to_string(const ClassificationLabel& label) {
    std::string s = tag_name(label.tag);
    if (label.params.empty()) return s;
    s += "(";
    bool first = true;
    for (const auto& [key, value] : label.params) {
        if (!first) s += ",";
        s += key + "=" + std::to_string(value);
        first = false;
    }
    s += ")";
    return s;
}

std::string report_to_json(const SuiteReport& report, bool include_timing) {
    ordered_json j;
    j["config"] = ordered_json{{"max_order", report.config.max_order},
                               {"max_degree", report.config.max_degree},
                               {"jobs", report.config.jobs},
                               {"cycle_cap", report.config.cycle_cap},
                               {"out", report.config.out_path}};
    ordered_json verdicts = ordered_json::array();
    for (const Verdict& v : report.verdicts) {
        ordered_json row{{"group", v.group},
                         {"conn", v.conn},
                         {"label", v.label},
                         {"expected", pair_json(v.expected)},
                         {"computed", pair_json(v.computed)},
                         {"match", v.match},
                         {"truncated", v.truncated},
                         {"ham_count", v.ham_count}};
        if (include_timing) row["ms"] = v.ms;
        verdicts.push_back(std::move(row));
    }
    j["verdicts"] = std::move(verdicts);
    j["summary"] = ordered_json{{"total", report.summary.total},
                                {"matched", report.summary.matched},
                                {"mismatched", report.summary.mismatched},
                                {"truncated", report.summary.truncated}};
    return j.dump(2) + "\n";
}

void write_report_file(const SuiteReport& report, const std::string& path, bool include_timing) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::InvalidInput, "cannot open report file " + path);
    out << report_to_json(report, include_timing);
    if (!out) fail(ErrorCode::InvalidInput, "failed writing report file " + path);
}

}  // namespace hamflow
