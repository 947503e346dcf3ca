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

#include "scqkd/round.hpp"

namespace scqkd {

RoundTranscript run_round(ProtocolKind protocol, const EveStrategy &eve, const ChannelModel &channel,
                          const RoundStream &stream) {
    RoundTranscript t;
    t.signal = alice_pick(protocol, stream.uniform(Variate::AlicePick));
    const DensityMatrix sent = pure_from_bloch(alice_code(protocol).state(t.signal));

    Interception hop = intercept(protocol, eve, sent, stream);
    if (hop.record.intercepted) t.eve = hop.record;

    const DensityMatrix received =
        channel.depolarizing > 0.0 ? depolarize(hop.state, channel.depolarizing) : hop.state;
    t.bob_outcome =
        static_cast<int>(sample_outcome(received, bob_povm(protocol), stream.uniform(Variate::BobOutcome))) + 1;
    t.announcement = bob_announce(protocol, t.bob_outcome, stream.uniform(Variate::Announcement));
    t.accepted = sift_accept(protocol, t.signal, t.announcement);
    if (t.accepted) {
        const BitPair bits = derive_bits(protocol, t.signal, t.bob_outcome, t.announcement);
        t.alice_bit = bits.alice;
        t.bob_bit = bits.bob;
    }
    return t;
}

}  // namespace scqkd
