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

#include <stdexcept>
#include <string>

namespace ampcs {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define AMPCS_DEFINE_ERROR(Name)                                \
    class Name : public Error {                                 \
    public:                                                     \
        explicit Name(const std::string& msg) : Error(msg) {}   \
    }

// I/O and serialization
AMPCS_DEFINE_ERROR(IoError);
AMPCS_DEFINE_ERROR(FormatError);
AMPCS_DEFINE_ERROR(VersionError);

// Imaging
AMPCS_DEFINE_ERROR(EmptyHistogram);
AMPCS_DEFINE_ERROR(BadStride);
AMPCS_DEFINE_ERROR(BadExtent);
AMPCS_DEFINE_ERROR(BadFactor);

// Transforms
AMPCS_DEFINE_ERROR(BadLength);
AMPCS_DEFINE_ERROR(OddLength);
AMPCS_DEFINE_ERROR(BadLevels);
AMPCS_DEFINE_ERROR(ZeroSpectrum);
AMPCS_DEFINE_ERROR(ZeroSignal);
AMPCS_DEFINE_ERROR(ZeroVariance);

// Network
AMPCS_DEFINE_ERROR(BadTopology);
AMPCS_DEFINE_ERROR(DimensionMismatch);
AMPCS_DEFINE_ERROR(EmptyDataset);
AMPCS_DEFINE_ERROR(NonFinite);
AMPCS_DEFINE_ERROR(IndexOutOfRange);

// Decision logic
AMPCS_DEFINE_ERROR(EmptyOutputs);
AMPCS_DEFINE_ERROR(LengthMismatch);
AMPCS_DEFINE_ERROR(EmptyResults);

// Data generation
AMPCS_DEFINE_ERROR(BadSpec);

// Generic precondition violation (bad threshold, too few classes, ...)
AMPCS_DEFINE_ERROR(BadArgument);

#undef AMPCS_DEFINE_ERROR

} // namespace ampcs
