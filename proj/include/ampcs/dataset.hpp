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

#include <filesystem>
#include <string>
#include <vector>

#include <ampcs/errors.hpp>

namespace ampcs {

// Datasets live on disk as <root>/<class_name>/<sample>.pgm; the class
// index is the lexicographic rank of the class directory name.

struct DatasetEntry {
    std::string class_name;
    int class_index = 0;
    std::filesystem::path path;
};

struct DatasetIndex {
    std::vector<std::string> class_names; // sorted
    std::vector<DatasetEntry> entries;    // sorted by (class, filename)
};

/// Scans a class-directory layout. Throws IoError when the root is missing
/// or contains no samples.
DatasetIndex scan_dataset(const std::filesystem::path& root);

/// Returns root/split when that directory exists, otherwise root itself.
/// Lets commands accept either a generated dataset root (with train/ and
/// test/) or a bare split directory.
std::filesystem::path resolve_split(const std::filesystem::path& root, const char* split);

} // namespace ampcs
