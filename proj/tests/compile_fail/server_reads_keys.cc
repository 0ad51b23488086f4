// Copyright 2026 The vfsynth Authors
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

// Built against the server's include path only. With VFSYNTH_EXPECT_FAIL the
// translation unit reaches for the parties' hash keys, which must not
// resolve.

#include "vfsynth/server/server.h"

#ifdef VFSYNTH_EXPECT_FAIL
#include "vfsynth/sketch/key_ring.h"

uint64_t StealKey() { return vfsynth::KeyRing::FromMasterSeed(1, 1).key(0); }
#endif

int ServerOnly() { return vfsynth::ServerConfig{}.max_cross_arity; }
