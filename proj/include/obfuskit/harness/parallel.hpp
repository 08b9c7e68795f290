// Copyright 2026 The Obfuskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OBFUSKIT_HARNESS_PARALLEL_HPP
#define OBFUSKIT_HARNESS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace obfuskit {

/// Worker cap: OBFUSKIT_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (minimum 1).
int max_workers();

/// Runs body(0..n-1) across up to max_workers() threads. Tasks must not
/// depend on execution order; callers get determinism by writing results
/// into per-index slots. The first exception thrown by a task is rethrown
/// after all workers finish.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

}  // namespace obfuskit

#endif  // OBFUSKIT_HARNESS_PARALLEL_HPP
