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

// Every released field of a message carries its mechanism, so a bare value
// cannot be stored into one.

#include "vfsynth/message/party_message.h"

void Fill(vfsynth::PartyMessage& msg) {
#ifdef VFSYNTH_EXPECT_FAIL
  msg.model_total = 3.0;
#else
  msg.model_total =
      vfsynth::Released<double>(3.0, vfsynth::Mechanism::kGaussianLocMrf);
#endif
}
