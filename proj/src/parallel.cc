// Copyright 2026 The spskit Authors
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

#include "spskit/parallel.h"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace spskit {

namespace {

int &thread_override() {
    static int value = [] {
        if (const char *env = std::getenv("SPSKIT_THREADS")) {
            try {
                int v = std::stoi(env);
                if (v > 0) {
                    return v;
                }
            } catch (...) {
            }
        }
        return 0;
    }();
    return value;
}

}  // namespace

int num_threads() {
    int v = thread_override();
    return v > 0 ? v : omp_get_max_threads();
}

int requested_threads() {
    return thread_override();
}

void set_num_threads(int threads) {
    thread_override() = threads > 0 ? threads : 0;
}

}  // namespace spskit
