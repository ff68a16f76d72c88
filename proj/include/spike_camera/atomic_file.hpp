// Copyright 2026 The spike_camera Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPIKE_CAMERA_ATOMIC_FILE_HPP
#define SPIKE_CAMERA_ATOMIC_FILE_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace spike_camera
{
// Writes to a sibling temporary and renames it over path, so a failed write
// never leaves a partial file at the destination. Throws IoError.
void write_file_atomic(const std::filesystem::path & path, std::span<const uint8_t> bytes);

// Throws IoError if the file cannot be read.
std::vector<uint8_t> read_file(const std::filesystem::path & path);

}  // namespace spike_camera

#endif  // SPIKE_CAMERA_ATOMIC_FILE_HPP
