/*
 * Copyright 2026 AMPCS contributors
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

#include <ampcs/decision.hpp>

#include <cstdio>
#include <limits>

namespace ampcs {

ClassificationResult decide(std::span<const double> outputs,
                            std::span<const std::string> class_names,
                            double min_margin) {
    if (outputs.empty()) {
        throw EmptyOutputs("decision needs at least one output");
    }
    if (outputs.size() != class_names.size()) {
        throw LengthMismatch("output count does not match class name count");
    }

    // Sequential compare chain: update only on strictly greater, so the
    // first maximal index wins ties.
    std::size_t winner = 0;
    double best = outputs[0];
    for (std::size_t i = 1; i < outputs.size(); ++i) {
        if (outputs[i] > best) {
            best = outputs[i];
            winner = i;
        }
    }

    double runner_up = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (i != winner && outputs[i] > runner_up) {
            runner_up = outputs[i];
        }
    }

    ClassificationResult result;
    result.outputs.assign(outputs.begin(), outputs.end());
    result.winner = static_cast<int>(winner);
    result.margin = outputs.size() > 1 ? best - runner_up : 0.0;
    result.class_name = class_names[winner];
    result.rejected = min_margin > 0.0 && result.margin < min_margin;
    return result;
}

double accuracy(std::span<const std::pair<ClassificationResult, int>> results) {
    if (results.empty()) {
        throw EmptyResults("accuracy over an empty result set is undefined");
    }
    std::size_t correct = 0;
    for (const auto& [result, true_class] : results) {
        if (result.winner == true_class) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(results.size());
}

void write_result_csv_header(std::ostream& out) {
    out << "sample_id,true_class,winner,margin,correct\n";
}

void write_result_csv_row(std::ostream& out, const std::string& sample_id,
                          int true_class, const ClassificationResult& result) {
    char margin[32];
    std::snprintf(margin, sizeof margin, "%.17g", result.margin);
    out << sample_id << ',' << true_class << ',' << result.winner << ',' << margin << ','
        << (result.winner == true_class ? 1 : 0) << '\n';
}

} // namespace ampcs
