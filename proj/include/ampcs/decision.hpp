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

#pragma once

#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <ampcs/errors.hpp>

namespace ampcs {

/// Outcome of the final decision logic over the network outputs.
struct ClassificationResult {
    std::vector<double> outputs;
    int winner = 0;        // smallest index attaining the maximum
    double margin = 0.0;   // winner activation minus runner-up activation
    std::string class_name;
    bool rejected = false; // only with a positive minimum margin
};

/// Argmax with the semantics of a sequential compare chain that updates the
/// memorized maximum only on strictly-greater: the first maximal index wins
/// ties. margin is max minus second max (0 for a single output). A sample is
/// flagged rejected when min_margin > 0 and the margin falls below it; the
/// default never rejects.
ClassificationResult decide(std::span<const double> outputs,
                            std::span<const std::string> class_names,
                            double min_margin = 0.0);

/// Fraction of results whose winner equals the true class index.
double accuracy(std::span<const std::pair<ClassificationResult, int>> results);

/// CSV rows: sample_id,true_class,winner,margin,correct
void write_result_csv_header(std::ostream& out);
void write_result_csv_row(std::ostream& out, const std::string& sample_id,
                          int true_class, const ClassificationResult& result);

} // namespace ampcs
