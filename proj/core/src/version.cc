// Copyright 2026 The pqec Authors
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

#include "pqec/version.h"

#ifndef PQEC_VERSION
#define PQEC_VERSION "unknown"
#endif
#ifndef PQEC_BUILD_TYPE
#define PQEC_BUILD_TYPE "unknown"
#endif

namespace pqec {

std::string build_identifier() {
    return std::string("pqec ") + PQEC_VERSION + " (" + PQEC_BUILD_TYPE + ")";
}

}  // namespace pqec
