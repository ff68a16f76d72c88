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

#include "spike_camera/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace spike_camera
{
unsigned default_worker_count()
{
  if (const char * env = std::getenv("SPK_THREADS"); env != nullptr && *env != '\0') {
    try {
      const long n = std::stol(env);
      if (n >= 1) {
        return static_cast<unsigned>(std::min(n, 1024L));
      }
    } catch (const std::exception &) {
      // unparsable hint, ignore
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void for_each_pixel_slice(
  size_t pixels, unsigned workers, const std::function<void(size_t, size_t)> & fn)
{
  constexpr size_t align = 64;
  if (workers == 0) {
    workers = default_worker_count();
  }
  const size_t blocks = (pixels + align - 1) / align;
  const size_t n = std::max<size_t>(1, std::min<size_t>(workers, blocks));
  if (n == 1) {
    fn(0, pixels);
    return;
  }
  const size_t per = (blocks + n - 1) / n;
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> threads;
    threads.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      const size_t begin = std::min(pixels, i * per * align);
      const size_t end = std::min(pixels, (i + 1) * per * align);
      if (begin >= end) {
        break;
      }
      threads.emplace_back([&, i, begin, end] {
        try {
          fn(begin, end);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  for (auto & e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace spike_camera
