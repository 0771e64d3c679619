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

#include <ampcs/features.hpp>

namespace ampcs {

namespace {

int dwt_levels_for_stride(int stride) {
    int levels = 0;
    int s = stride;
    while (s > 1 && s % 2 == 0) {
        s /= 2;
        ++levels;
    }
    if (s != 1 || levels < 1 || levels > 8) {
        throw BadStride("DWT features need a power-of-two stride in [2, 256]");
    }
    return levels;
}

} // namespace

int feature_length(int stride) {
    if (stride <= 0 || 256 % stride != 0) {
        throw BadStride("stride must be a positive divisor of 256");
    }
    return 256 / stride;
}

FeatureVector extract_features(const NormalizedHistogram& h, FeatureMethod method,
                               int stride) {
    switch (method) {
    case FeatureMethod::Hist: {
        FeatureVector fv;
        fv.method = FeatureMethod::Hist;
        fv.components = sample_stride(h.values, stride);
        return fv;
    }
    case FeatureMethod::Dct: {
        const DctSpectrum spec = normalize_spectrum(dct(h.values));
        FeatureVector fv;
        fv.method = FeatureMethod::Dct;
        fv.components = sample_stride(spec.coefficients, stride);
        return fv;
    }
    case FeatureMethod::Dwt:
        return dwt_features_at_level(h.values, dwt_levels_for_stride(stride));
    }
    throw BadArgument("unknown feature method");
}

FeatureVector extract_features(const GrayImage& img, FeatureMethod method, int stride) {
    return extract_features(normalize(histogram(img)), method, stride);
}

} // namespace ampcs
