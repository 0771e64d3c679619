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
#include <utility>
#include <vector>

#include <ampcs/image.hpp>

namespace ampcs {

inline constexpr std::size_t kSignalLength = 256;

/// Orthonormal DCT-II coefficients of a length-256 signal.
struct DctSpectrum {
    std::vector<double> coefficients;
};

/// X[w] = C_w * sum_t x[t] cos((2t+1) pi w / (2N)), C_0 = 1/sqrt(N),
/// C_w = sqrt(2/N) for w > 0. The basis is orthonormal, so the inverse is
/// the transpose and Parseval holds exactly.
DctSpectrum dct(std::span<const double> signal);

/// Inverse (transpose) of dct(): reconstructs the signal from a spectrum.
std::vector<double> idct(const DctSpectrum& spec);

/// Divides every coefficient by max |coefficient|; throws ZeroSpectrum on an
/// all-zero spectrum.
DctSpectrum normalize_spectrum(const DctSpectrum& spec);

/// Two-tap orthogonal filter pair. The scaling taps C_k must sum to 2 and be
/// orthogonal to their even shifts; the wavelet taps are derived as
/// b_k = (-1)^k C_{n-1-k}. The Haar instance is C = (1, 1), b = (1, -1).
struct HaarFilter {
    std::vector<double> scaling_coeffs;
    std::vector<double> wavelet_coeffs;

    /// Builds from scaling taps, deriving the wavelet taps and validating
    /// the constraints (throws BadArgument if they fail).
    explicit HaarFilter(std::vector<double> scaling);
    static HaarFilter haar() { return HaarFilter({1.0, 1.0}); }
};

/// One analysis step of the Haar pyramid:
///   approx[n] = (s[2n] + s[2n+1]) / sqrt(2)
///   detail[n] = (s[2n] - s[2n+1]) / sqrt(2)
/// Input length must be even and nonzero.
std::pair<std::vector<double>, std::vector<double>>
haar_step(std::span<const double> s_prev);

/// Adjoint of haar_step; exact inverse of the orthonormal step.
std::vector<double> inverse_haar_step(std::span<const double> approx,
                                      std::span<const double> detail);

/// Dyadic multiresolution decomposition: approximations[m-1] and
/// details[m-1] hold the scale-m coefficients, each of length 256/2^m.
struct WaveletDecomposition {
    int levels = 0;
    std::vector<std::vector<double>> approximations;
    std::vector<std::vector<double>> details;

    const std::vector<double>& approximation(int m) const;
    const std::vector<double>& detail(int m) const;
};

/// Iterates haar_step on successive approximations of a length-256 signal.
/// levels must lie in [1, 8]; at levels == 3 the final approximation has 32
/// components.
WaveletDecomposition dwt_pyramid(std::span<const double> signal, int levels);

/// Inverse pyramid: recovers the original signal from a decomposition.
std::vector<double> reconstruct(const WaveletDecomposition& dec);

/// Scale-3 approximation coefficients scaled by 1/max|S3| so that the 32
/// components lie in [-1, 1]. Throws ZeroSignal on an all-zero input.
FeatureVector dwt_features(std::span<const double> signal);

/// Same, stopping at an arbitrary scale (length 256/2^levels).
FeatureVector dwt_features_at_level(std::span<const double> signal, int levels);

/// Pearson correlation coefficient of two equal-length vectors.
/// Throws ZeroVariance when either input is constant.
double pearson(std::span<const double> a, std::span<const double> b);

double cross_correlation(const NormalizedHistogram& a, const NormalizedHistogram& b);

enum class MethodRecommendation { Dwt, HistOrDct };

const char* to_string(MethodRecommendation r);

/// Returns Dwt when the maximum pairwise cross-correlation is strictly
/// greater than the threshold (default 0.65), otherwise HistOrDct.
MethodRecommendation recommend_method(std::span<const NormalizedHistogram> class_histograms,
                                      double threshold = 0.65);

/// One CSV row per feature vector: method,class_index,c0,...,c31 with
/// 17-significant-digit reals.
void write_features_csv_row(std::ostream& out, const FeatureVector& fv, int class_index);

} // namespace ampcs
