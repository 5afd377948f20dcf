// Copyright 2026 the bslab authors
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

#pragma once

#include <functional>

namespace bslab {

/// Worker count: explicit override, else the BSLAB_WORKERS environment
/// variable, else hardware concurrency.
int resolve_workers(int requested);

/// Runs fn(0..n-1) on a work-stealing pool. Results must be written to
/// index-addressed storage so scheduling cannot affect aggregates.
/// Exceptions are captured and rethrown on the caller thread.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace bslab
