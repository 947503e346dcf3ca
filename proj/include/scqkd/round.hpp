// Copyright 2026 The scqkd Authors
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

#ifndef SCQKD_ROUND_HPP
#define SCQKD_ROUND_HPP

#include <optional>

#include "scqkd/adversary.hpp"
#include "scqkd/protocol.hpp"
#include "scqkd/rng.hpp"

namespace scqkd {

/// One executed round. Rejected rounds keep j, k and the announcement so
/// they still count toward the sift rate.
struct RoundTranscript {
    int signal = 0;
    int bob_outcome = 0;
    Announcement announcement;
    bool accepted = false;
    std::optional<int> alice_bit;
    std::optional<int> bob_bit;
    std::optional<EveRecord> eve;
};

/// Alice -> Eve -> channel -> Bob -> announcement -> sifting -> bits.
/// Deterministic in `stream`; see Variate for the slot each step reads.
RoundTranscript run_round(ProtocolKind protocol, const EveStrategy &eve, const ChannelModel &channel,
                          const RoundStream &stream);

}  // namespace scqkd

#endif  // SCQKD_ROUND_HPP
