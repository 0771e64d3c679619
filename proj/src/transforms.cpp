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

#include <ampcs/transforms.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ampcs {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// 256x256 orthonormal DCT-II basis, built once. basis[w][t] includes the
// C_w normalization so both the forward and inverse transforms are plain
// matrix products with this table.
const std::vector<double>& dct_basis() {
    static const std::vector<double> table = [] {
        std::vector<double> b(kSignalLength * kSignalLength);
        const double n = static_cast<double>(kSignalLength);
        for (std::size_t w = 0; w < kSignalLength; ++w) {
            const double cw = (w == 0) ? 1.0 / std::sqrt(n) : std::sqrt(2.0 / n);
            for (std::size_t t = 0; t < kSignalLength; ++t) {
                b[w * kSignalLength + t] =
                    cw * std::cos((2.0 * t + 1.0) * kPi * w / (2.0 * n));
            }
        }
        return b;
    }();
    return table;
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

DctSpectrum dct(std::span<const double> signal) {
    if (signal.size() != kSignalLength) {
        throw BadLength("dct expects a length-256 signal");
    }
    const auto& basis = dct_basis();
    DctSpectrum spec;
    spec.coefficients.resize(kSignalLength);
    for (std::size_t w = 0; w < kSignalLength; ++w) {
        const double* row = &basis[w * kSignalLength];
        double acc = 0.0;
        for (std::size_t t = 0; t < kSignalLength; ++t) {
            acc += row[t] * signal[t];
        }
        spec.coefficients[w] = acc;
    }
    return spec;
}

std::vector<double> idct(const DctSpectrum& spec) {
    if (spec.coefficients.size() != kSignalLength) {
        throw BadLength("idct expects a length-256 spectrum");
    }
    const auto& basis = dct_basis();
    std::vector<double> signal(kSignalLength, 0.0);
    for (std::size_t w = 0; w < kSignalLength; ++w) {
        const double c = spec.coefficients[w];
        if (c == 0.0) continue;
        const double* row = &basis[w * kSignalLength];
        for (std::size_t t = 0; t < kSignalLength; ++t) {
            signal[t] += c * row[t];
        }
    }
    return signal;
}

DctSpectrum normalize_spectrum(const DctSpectrum& spec) {
    double peak = 0.0;
    for (double c : spec.coefficients) {
        peak = std::max(peak, std::abs(c));
    }
    if (peak == 0.0) {
        throw ZeroSpectrum("cannot normalize an all-zero spectrum");
    }
    DctSpectrum out;
    out.coefficients.reserve(spec.coefficients.size());
    for (double c : spec.coefficients) {
        out.coefficients.push_back(c / peak);
    }
    return out;
}

HaarFilter::HaarFilter(std::vector<double> scaling)
    : scaling_coeffs(std::move(scaling)) {
    const std::size_t n = scaling_coeffs.size();
    if (n == 0 || n % 2 != 0) {
        throw BadArgument("scaling filter needs a positive even tap count");
    }
    double sum = 0.0;
    for (double c : scaling_coeffs) sum += c;
    if (sum != 2.0) {
        throw BadArgument("scaling taps must sum to 2");
    }
    // Orthogonality to even shifts: sum_k C_k C_{k+2k'} = 2 iff k' = 0.
    for (std::size_t shift = 0; shift < n; shift += 2) {
        double dot = 0.0;
        for (std::size_t k = 0; k + shift < n; ++k) {
            dot += scaling_coeffs[k] * scaling_coeffs[k + shift];
        }
        const double want = (shift == 0) ? 2.0 : 0.0;
        if (dot != want) {
            throw BadArgument("scaling taps are not orthogonal to even shifts");
        }
    }
    wavelet_coeffs.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        wavelet_coeffs[k] = sign * scaling_coeffs[n - 1 - k];
    }
}

std::pair<std::vector<double>, std::vector<double>>
haar_step(std::span<const double> s_prev) {
    if (s_prev.empty() || s_prev.size() % 2 != 0) {
        throw OddLength("haar_step needs a nonzero even-length input");
    }
    const std::size_t half = s_prev.size() / 2;
    std::vector<double> approx(half);
    std::vector<double> detail(half);
    for (std::size_t n = 0; n < half; ++n) {
        approx[n] = (s_prev[2 * n] + s_prev[2 * n + 1]) * kInvSqrt2;
        detail[n] = (s_prev[2 * n] - s_prev[2 * n + 1]) * kInvSqrt2;
    }
    return {std::move(approx), std::move(detail)};
}

std::vector<double> inverse_haar_step(std::span<const double> approx,
                                      std::span<const double> detail) {
    if (approx.size() != detail.size()) {
        throw LengthMismatch("approximation/detail length mismatch");
    }
    std::vector<double> out(approx.size() * 2);
    for (std::size_t n = 0; n < approx.size(); ++n) {
        out[2 * n] = (approx[n] + detail[n]) * kInvSqrt2;
        out[2 * n + 1] = (approx[n] - detail[n]) * kInvSqrt2;
    }
    return out;
}

const std::vector<double>& WaveletDecomposition::approximation(int m) const {
    if (m < 1 || m > levels) {
        throw BadLevels("scale index out of range");
    }
    return approximations[static_cast<std::size_t>(m) - 1];
}

const std::vector<double>& WaveletDecomposition::detail(int m) const {
    if (m < 1 || m > levels) {
        throw BadLevels("scale index out of range");
    }
    return details[static_cast<std::size_t>(m) - 1];
}

WaveletDecomposition dwt_pyramid(std::span<const double> signal, int levels) {
    if (signal.size() != kSignalLength) {
        throw BadLength("dwt_pyramid expects a length-256 signal");
    }
    if (levels < 1 || levels > 8) {
        throw BadLevels("levels must lie in [1, 8] for a 256-sample signal");
    }
    WaveletDecomposition dec;
    dec.levels = levels;
    dec.approximations.reserve(static_cast<std::size_t>(levels));
    dec.details.reserve(static_cast<std::size_t>(levels));

    std::vector<double> current(signal.begin(), signal.end());
    for (int m = 1; m <= levels; ++m) {
        auto [approx, detail] = haar_step(current);
        current = approx;
        dec.approximations.push_back(std::move(approx));
        dec.details.push_back(std::move(detail));
    }
    return dec;
}

std::vector<double> reconstruct(const WaveletDecomposition& dec) {
    if (dec.levels < 1) {
        throw BadLevels("empty decomposition");
    }
    std::vector<double> current = dec.approximations.back();
    for (int m = dec.levels; m >= 1; --m) {
        current = inverse_haar_step(current, dec.detail(m));
    }
    return current;
}

FeatureVector dwt_features_at_level(std::span<const double> signal, int levels) {
    const auto dec = dwt_pyramid(signal, levels);
    const auto& s = dec.approximation(levels);
    double peak = 0.0;
    for (double v : s) {
        peak = std::max(peak, std::abs(v));
    }
    if (peak == 0.0) {
        throw ZeroSignal("all-zero signal has no wavelet features");
    }
    FeatureVector fv;
    fv.method = FeatureMethod::Dwt;
    fv.components.reserve(s.size());
    for (double v : s) {
        fv.components.push_back(v / peak);
    }
    return fv;
}

FeatureVector dwt_features(std::span<const double> signal) {
    return dwt_features_at_level(signal, 3);
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw LengthMismatch("pearson needs two equal-length nonempty vectors");
    }
    const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
    const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
    if (*amin == *amax || *bmin == *bmax) {
        throw ZeroVariance("constant input has no defined correlation");
    }
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    return cov / std::sqrt(va * vb);
}

double cross_correlation(const NormalizedHistogram& a, const NormalizedHistogram& b) {
    return pearson(a.values, b.values);
}

const char* to_string(MethodRecommendation r) {
    return r == MethodRecommendation::Dwt ? "DWT" : "HIST_OR_DCT";
}

MethodRecommendation recommend_method(std::span<const NormalizedHistogram> class_histograms,
                                      double threshold) {
    if (class_histograms.size() < 2) {
        throw BadArgument("method recommendation needs at least two class histograms");
    }
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw BadArgument("threshold must lie in (0, 1)");
    }
    double peak = -1.0;
    for (std::size_t i = 0; i < class_histograms.size(); ++i) {
        for (std::size_t j = i + 1; j < class_histograms.size(); ++j) {
            peak = std::max(peak, cross_correlation(class_histograms[i], class_histograms[j]));
        }
    }
    return peak > threshold ? MethodRecommendation::Dwt : MethodRecommendation::HistOrDct;
}

void write_features_csv_row(std::ostream& out, const FeatureVector& fv, int class_index) {
    out << to_string(fv.method) << ',' << class_index;
    for (double c : fv.components) {
        out << ',' << g17(c);
    }
    out << '\n';
}

} // namespace ampcs
