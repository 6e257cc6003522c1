// Copyright 2026 The Anonmine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANONMINE_PARALLEL_H_
#define ANONMINE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace anonmine {

// Number of workers used when a caller passes threads = 0.
unsigned default_thread_count();

// Runs fn(i) for every i in [0, n) on up to `threads` workers (0 = default).
// Callers must write results to per-index slots so the outcome does not
// depend on scheduling. The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace anonmine

#endif  // ANONMINE_PARALLEL_H_
