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

#include <ampcs/dataset.hpp>

#include <algorithm>

namespace ampcs {

namespace fs = std::filesystem;

DatasetIndex scan_dataset(const fs::path& root) {
    if (!fs::is_directory(root)) {
        throw IoError("dataset directory not found: " + root.string());
    }
    DatasetIndex index;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) {
            index.class_names.push_back(entry.path().filename().string());
        }
    }
    std::sort(index.class_names.begin(), index.class_names.end());
    if (index.class_names.empty()) {
        throw IoError("dataset has no class directories: " + root.string());
    }

    for (std::size_t ci = 0; ci < index.class_names.size(); ++ci) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(root / index.class_names[ci])) {
            if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (auto& f : files) {
            index.entries.push_back(
                {index.class_names[ci], static_cast<int>(ci), std::move(f)});
        }
    }
    if (index.entries.empty()) {
        throw IoError("dataset contains no .pgm samples: " + root.string());
    }
    return index;
}

fs::path resolve_split(const fs::path& root, const char* split) {
    const fs::path candidate = root / split;
    return fs::is_directory(candidate) ? candidate : root;
}

} // namespace ampcs
