// Copyright 2026 The ptp-toolkit Authors
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

#include "ptp/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ptp {

std::size_t effective_thread_count() {
    std::size_t count = 0;
    if (const char* env = std::getenv("PTP_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed > 0) count = static_cast<std::size_t>(parsed);
    }
    if (count == 0) {
        count = std::thread::hardware_concurrency();
        if (count == 0) count = 1;
    }
    return count;
}

}  // namespace ptp
