// Copyright 2026 The packmap Authors
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

#ifndef PACKMAP_PARALLEL_HPP_
#define PACKMAP_PARALLEL_HPP_

#include <cstddef>

namespace packmap {

// Worker threads for internal parallel loops: PACKMAP_THREADS when set to a
// positive integer, otherwise the hardware concurrency (at least 1).
unsigned worker_count();

}  // namespace packmap

#endif  // PACKMAP_PARALLEL_HPP_
