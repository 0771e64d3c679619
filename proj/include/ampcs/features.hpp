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

#include <ampcs/image.hpp>
#include <ampcs/transforms.hpp>

namespace ampcs {

// Feature pipeline, one call from image to network input:
//   HIST  normalized histogram sampled every stride-th bin
//   DCT   DCT of the normalized histogram, max-abs normalized, same sampling
//   DWT   pyramid approximation at scale log2(stride), max-abs normalized
// The default stride of 8 yields the 32-component vectors the 32-50-10
// network consumes. For DWT the stride must be a power of two.

int feature_length(int stride); // 256 / stride

FeatureVector extract_features(const NormalizedHistogram& h, FeatureMethod method,
                               int stride = 8);
FeatureVector extract_features(const GrayImage& img, FeatureMethod method, int stride = 8);

} // namespace ampcs
