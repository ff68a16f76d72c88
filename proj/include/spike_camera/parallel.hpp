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

#ifndef SPIKE_CAMERA_PARALLEL_HPP
#define SPIKE_CAMERA_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace spike_camera
{
// Worker count from SPK_THREADS, falling back to hardware concurrency.
unsigned default_worker_count();

// Splits [0, pixels) into contiguous slices whose boundaries are multiples of
// 64, so that no two workers ever touch the same byte of a packed plane, and
// runs fn(begin, end) on each slice. workers == 0 means default_worker_count().
void for_each_pixel_slice(
  size_t pixels, unsigned workers, const std::function<void(size_t, size_t)> & fn);

}  // namespace spike_camera

#endif  // SPIKE_CAMERA_PARALLEL_HPP
