#pragma once

#include <string>

#include "hamflow/verify.hpp"

namespace hamflow {

/*
 * Report serialization. Timing fields (per-verdict "ms") are omitted when
 * include_timing is false, making equal runs byte-identical.
 */
std::string report_to_json(const SuiteReport& report, bool include_timing = true);
void write_report_file(const SuiteReport& report, const std::string& path,
                       bool include_timing = true);

/** "MobiusLadder(n=3)": tag name plus the sorted parameter list. */
std::string label_to_string(const ClassificationLabel& label);

}  // namespace hamflow
